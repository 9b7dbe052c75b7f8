//! Qualitative decision making under uncertainty.
//!
//! Acts map states to outcomes; outcomes carry utilities on a finite ordinal
//! [`Scale`], and uncertainty is a [`Capacity`] on the same scale. The
//! utility of an act is its Sugeno integral. On top of that the crate checks
//! Savage-style axioms on explicit [`PreferenceRelation`]s by exhaustive
//! search, and rebuilds a Sugeno representation from any relation that
//! satisfies the characterizing axioms.
//!
//! ```
//! use qdt::{Capacity, DecisionFrame, Event, Level, Scale, sugeno_levelcut};
//!
//! let scale = Scale::with_top(2)?;
//! let sigma = Capacity::new(vec![Level(0), Level(1), Level(0), Level(2)], 2, scale)?;
//! let frame = DecisionFrame::new(vec![Level(0), Level(1), Level(2)], sigma)?;
//! // x2 on s0, x0 on s1: the bet on {s0}
//! let bet = frame.binary_act(2, Event::singleton(0), 0)?;
//! assert_eq!(sugeno_levelcut(&frame, &bet)?, Level(1));
//! # Ok::<(), qdt::Error>(())
//! ```

pub mod acts;
pub mod capacity;
pub mod error;
pub mod evaluate;
pub mod event;
pub mod preference;
pub mod scale;
pub mod synthesis;

pub use acts::{Act, ActSpace, Combine, DecisionFrame};
pub use capacity::{Capacity, Classification, PossibilityDistribution};
pub use error::{Error, Result};
pub use evaluate::{
    binary_act_median, binary_act_value, expected_utility, qu_optimistic, qu_pessimistic,
    sugeno_levelcut, sugeno_median, sugeno_outcome,
};
pub use event::{all_events, Event, MAX_STATES};
pub use preference::{
    check_axiom, check_axiom_within, check_axioms, induced_outcome_order, replay, AxiomId,
    AxiomVerdict, Budget, OutcomeOrder, PreferenceRelation, Witness,
};
pub use scale::{Level, Scale};
pub use synthesis::{
    eu_dominance_demo, find_sure_thing_violation, induce_eu_preorder, induce_preorder,
    synthesize_possibilistic, synthesize_representation, verify_representation, Mode,
    PossibilisticRepresentation, Representation, RepresentationCheck,
};
