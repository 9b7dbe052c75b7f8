use thiserror::Error;

use crate::event::Event;
use crate::preference::AxiomId;
use crate::preference::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a scale needs at least two levels, got {0}")]
    ScaleTooSmall(usize),
    #[error("a scale has at most {max} levels, got {got}", max = crate::scale::MAX_LEVELS)]
    ScaleTooLarge { got: usize },
    #[error("rank {rank} is outside the scale 0..={top}")]
    LevelOutOfRange { rank: u16, top: u16 },
    #[error("median of an empty collection")]
    EmptyMedian,
    #[error("median of an even number ({0}) of levels is not defined")]
    EvenMedian(usize),

    #[error("state count {0} is outside the supported range 1..={max}", max = crate::event::MAX_STATES)]
    StateCount(usize),
    #[error("capacity table has {found} entries, expected 2^{states} = {expected}")]
    TableSize {
        states: usize,
        expected: usize,
        found: usize,
    },
    #[error("capacity boundary violated: sigma({event}) must be {expected}, got {found}")]
    Boundary { event: Event, expected: u16, found: u16 },
    #[error("capacity is not monotone: sigma({lower}) = {lower_level} > sigma({upper}) = {upper_level}")]
    NotMonotone {
        lower: Event,
        upper: Event,
        lower_level: u16,
        upper_level: u16,
    },
    #[error("possibility distribution is not normalized: its maximum is {max}, top is {top}")]
    Unnormalized { max: u16, top: u16 },
    #[error("possibility distribution has {found} entries for {expected} states")]
    DistributionSize { expected: usize, found: usize },
    #[error("probabilities must be non-negative and sum to 1 (sum = {sum})")]
    InvalidDistribution { sum: f64 },
    #[error("{probabilities} probabilities for {payoffs} payoffs")]
    LengthMismatch { probabilities: usize, payoffs: usize },

    #[error("a decision frame needs at least one outcome")]
    NoOutcomes,
    #[error("the utility image must contain the {which} level of the scale")]
    MissingExtreme { which: &'static str },
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("outcome index {index} is out of range for {count} outcomes")]
    OutcomeOutOfRange { index: usize, count: usize },
    #[error("the frame carries no possibility distribution")]
    NoPossibility,

    #[error("act space {outcomes}^{states} does not fit in memory")]
    ActSpaceTooLarge { outcomes: usize, states: usize },
    #[error("the relation does not rank act {0}")]
    MissingAct(String),
    #[error("act {0} is ranked twice")]
    DuplicateAct(String),
    #[error("{axiom} quantifies over all acts but the relation only ranks a subset")]
    PartialActSpace { axiom: AxiomId },
    #[error("quantifier space of {subject} has {required} tuples, budget is {limit}")]
    BudgetExceeded {
        subject: String,
        required: u128,
        limit: u128,
    },
    #[error("no strictly ordered pair of outcomes (Sav 5 fails), likelihood is undefined")]
    NoStrictPair,
    #[error("the likelihood relation leaves events {0} and {1} incomparable")]
    PartialLikelihood(Event, Event),
    #[error("pairwise preference is not a complete preorder: {0}")]
    NotAPreorder(Witness),

    #[error("{axiom} fails: {witness}")]
    Precondition { axiom: AxiomId, witness: Witness },
    #[error("no strict best/worst constant act")]
    MissingExtremeOutcomes,
    #[error("representation verification failed: {0}")]
    Verification(String),
}
