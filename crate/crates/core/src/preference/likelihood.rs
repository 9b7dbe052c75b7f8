//! Event likelihood read off bets, null events, and the comparative
//! probability and possibility axioms.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::axioms::Ctx;
use super::{AxiomId, Budget, PreferenceRelation};
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::event::{all_events, check_states, Event};

/// A binary relation `A ≤_L B` on the events of `states` states, stored as a
/// dense `2^n × 2^n` matrix. It need not be complete or transitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LikelihoodRelation {
    states: usize,
    leq: Vec<bool>,
}

impl LikelihoodRelation {
    pub fn from_fn(states: usize, mut leq: impl FnMut(Event, Event) -> bool) -> Result<Self> {
        check_states(states)?;
        Budget::default().admit(|| "likelihood matrix".into(), 1u128 << (2 * states))?;
        let size = 1usize << states;
        let mut table = vec![false; size * size];
        for a in all_events(states) {
            for b in all_events(states) {
                table[a.index() * size + b.index()] = leq(a, b);
            }
        }
        Ok(LikelihoodRelation { states, leq: table })
    }

    /// `A ≤ B` iff `σ(A) ≤ σ(B)`.
    pub fn from_capacity(capacity: &Capacity) -> Result<Self> {
        Self::from_fn(capacity.states(), |a, b| capacity.get(a) <= capacity.get(b))
    }

    /// `A ≤ B` iff `|A| ≤ |B|`.
    pub fn counting(states: usize) -> Result<Self> {
        Self::from_fn(states, |a, b| a.len() <= b.len())
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn leq(&self, a: Event, b: Event) -> bool {
        self.leq[a.index() * (1 << self.states) + b.index()]
    }

    pub fn lt(&self, a: Event, b: Event) -> bool {
        self.leq(a, b) && !self.leq(b, a)
    }

    pub fn equivalent(&self, a: Event, b: Event) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// First incomparable pair.
    pub fn incomparable_pair(&self) -> Option<(Event, Event)> {
        let n = self.states;
        all_events(n)
            .flat_map(|a| all_events(n).map(move |b| (a, b)))
            .find(|&(a, b)| !self.leq(a, b) && !self.leq(b, a))
    }

    fn events(&self) -> impl Iterator<Item = Event> + Clone {
        all_events(self.states)
    }
}

/// Two bets on `a` versus `b` that compare differently: `agree` says
/// `xAy ⪯ xBy` and `disagree` does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LikelihoodDisagreement {
    pub a: Event,
    pub b: Event,
    pub agree: (usize, usize),
    pub disagree: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedLikelihood {
    pub relation: LikelihoodRelation,
    /// Event pairs whose comparison depends on the stakes, in event order.
    pub disagreements: Vec<LikelihoodDisagreement>,
}

/// `A ≤_L B` iff `xAy ⪯ xBy` for every strict pair `y <_P x`.
pub fn induced_likelihood(rel: &PreferenceRelation) -> Result<InducedLikelihood> {
    let n = rel.space().states();
    let k = rel.space().outcomes();
    Budget::default().admit(
        || "induced likelihood".into(),
        (1u128 << (2 * n)) * (k as u128).pow(2),
    )?;
    let ctx = Ctx::new(rel, AxiomId::Sav4)?;
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .filter(|&(x, y)| ctx.out_rank(y) < ctx.out_rank(x))
        .collect();
    if pairs.is_empty() {
        return Err(Error::NoStrictPair);
    }
    let mut disagreements = Vec::new();
    let relation = LikelihoodRelation::from_fn(n, |a, b| {
        let mut agree = None;
        let mut disagree = None;
        for &(x, y) in &pairs {
            let weak = ctx.r(ctx.binary(x, a, y)) <= ctx.r(ctx.binary(x, b, y));
            let slot = if weak { &mut agree } else { &mut disagree };
            slot.get_or_insert((x, y));
        }
        if let (Some(agree), Some(disagree)) = (agree, disagree) {
            disagreements.push(LikelihoodDisagreement { a, b, agree, disagree });
        }
        disagree.is_none()
    })?;
    Ok(InducedLikelihood {
        relation,
        disagreements,
    })
}

/// `fAh ~ gAh` for all acts `f, g, h`.
pub fn is_null_event(rel: &PreferenceRelation, event: Event) -> Result<bool> {
    let space = rel.space();
    if event.0 >> space.states() != 0 {
        return Err(Error::FrameMismatch(format!(
            "event {event} is not a subset of {} states",
            space.states()
        )));
    }
    Budget::default().admit(|| "null-event test".into(), Budget::space(space.len(), 2))?;
    Ok(Ctx::new(rel, AxiomId::Sav3)?.is_null(event))
}

/// All null events, in index order.
pub fn null_events(rel: &PreferenceRelation) -> Result<Vec<Event>> {
    let space = rel.space();
    Budget::default().admit(
        || "null-event test".into(),
        Budget::space(space.len(), 2) << space.states(),
    )?;
    let ctx = Ctx::new(rel, AxiomId::Sav3)?;
    Ok(all_events(space.states()).filter(|&a| ctx.is_null(a)).collect())
}

/// Why a likelihood relation is not a comparative possibility or
/// probability relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum ComparativeWitness {
    /// `a ≤ b ≤ c` but not `a ≤ c` (A1).
    Intransitive { a: Event, b: Event, c: Event },
    /// Not `∅ < S` (A2).
    Trivial,
    /// Not `∅ ≤ a` (A3).
    BelowEmpty { a: Event },
    /// `b ≤ c` but not `a ∪ b ≤ a ∪ c`.
    Possibility { a: Event, b: Event, c: Event },
    /// `a` disjoint from `b ∪ c`, and `b ≤ c` differs from `a ∪ b ≤ a ∪ c`.
    Additivity { a: Event, b: Event, c: Event },
}

impl ComparativeWitness {
    /// Re-checks the witness against `rel`.
    pub fn replays(&self, rel: &LikelihoodRelation) -> bool {
        let full = Event::full(rel.states());
        match *self {
            ComparativeWitness::Intransitive { a, b, c } => {
                rel.leq(a, b) && rel.leq(b, c) && !rel.leq(a, c)
            }
            ComparativeWitness::Trivial => !rel.lt(Event::EMPTY, full),
            ComparativeWitness::BelowEmpty { a } => !rel.leq(Event::EMPTY, a),
            ComparativeWitness::Possibility { a, b, c } => {
                rel.leq(b, c) && !rel.leq(a.union(b), a.union(c))
            }
            ComparativeWitness::Additivity { a, b, c } => {
                a.is_disjoint(b.union(c)) && rel.leq(b, c) != rel.leq(a.union(b), a.union(c))
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ComparativeWitness::Intransitive { .. } => "A1",
            ComparativeWitness::Trivial => "A2",
            ComparativeWitness::BelowEmpty { .. } => "A3",
            ComparativeWitness::Possibility { .. } => "Π",
            ComparativeWitness::Additivity { .. } => "P",
        }
    }
}

impl fmt::Display for ComparativeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails: ", self.label())?;
        match self {
            ComparativeWitness::Intransitive { a, b, c } => {
                write!(f, "{a} <= {b} <= {c} but not {a} <= {c}")
            }
            ComparativeWitness::Trivial => write!(f, "not {{}} < S"),
            ComparativeWitness::BelowEmpty { a } => write!(f, "not {{}} <= {a}"),
            ComparativeWitness::Possibility { a, b, c } | ComparativeWitness::Additivity { a, b, c } => {
                write!(f, "A={a} B={b} C={c}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparativeVerdict {
    pub holds: bool,
    pub witness: Option<ComparativeWitness>,
}

impl From<Option<ComparativeWitness>> for ComparativeVerdict {
    fn from(witness: Option<ComparativeWitness>) -> Self {
        ComparativeVerdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// A1, A2 and A3, in that order of reporting after completeness.
fn base_axioms(rel: &LikelihoodRelation) -> Result<Option<ComparativeWitness>> {
    Budget::default().admit(|| "event triples".into(), 1u128 << (3 * rel.states()))?;
    if let Some((a, b)) = rel.incomparable_pair() {
        return Err(Error::PartialLikelihood(a, b));
    }
    if !rel.lt(Event::EMPTY, Event::full(rel.states())) {
        return Ok(Some(ComparativeWitness::Trivial));
    }
    if let Some(a) = rel.events().find(|&a| !rel.leq(Event::EMPTY, a)) {
        return Ok(Some(ComparativeWitness::BelowEmpty { a }));
    }
    Ok(first_triple(rel, |a, b, c| {
        (rel.leq(a, b) && rel.leq(b, c) && !rel.leq(a, c))
            .then_some(ComparativeWitness::Intransitive { a, b, c })
    }))
}

fn first_triple(
    rel: &LikelihoodRelation,
    visit: impl Fn(Event, Event, Event) -> Option<ComparativeWitness>,
) -> Option<ComparativeWitness> {
    rel.events().find_map(|a| {
        rel.events()
            .find_map(|b| rel.events().find_map(|c| visit(a, b, c)))
    })
}

/// A1–A3 plus `B ≤ C ⇒ A ∪ B ≤ A ∪ C` over all triples.
pub fn is_comparative_possibility(rel: &LikelihoodRelation) -> Result<ComparativeVerdict> {
    if let Some(w) = base_axioms(rel)? {
        return Ok(Some(w).into());
    }
    Ok(first_triple(rel, |a, b, c| {
        (rel.leq(b, c) && !rel.leq(a.union(b), a.union(c)))
            .then_some(ComparativeWitness::Possibility { a, b, c })
    })
    .into())
}

/// A1–A3 plus additivity over triples with `A ∩ (B ∪ C) = ∅`.
pub fn is_comparative_probability(rel: &LikelihoodRelation) -> Result<ComparativeVerdict> {
    if let Some(w) = base_axioms(rel)? {
        return Ok(Some(w).into());
    }
    Ok(first_triple(rel, |a, b, c| {
        (a.is_disjoint(b.union(c)) && rel.leq(b, c) != rel.leq(a.union(b), a.union(c)))
            .then_some(ComparativeWitness::Additivity { a, b, c })
    })
    .into())
}
