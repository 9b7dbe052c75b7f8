//! Preference relations over acts and exhaustive axiom checking.
//!
//! A [`PreferenceRelation`] is a rank function on acts: a lower rank is less
//! preferred and equal ranks are indifferent, so the relation is a complete
//! preorder by construction. Axioms are checked by enumerating their full
//! quantifier space; spaces larger than the [`Budget`] are refused rather
//! than sampled.

mod axioms;
mod likelihood;

pub use axioms::{
    check_axiom, check_axiom_within, check_axioms, replay, sav4_prime_strict_violation, AxiomId,
    AxiomVerdict, Witness,
};
pub(crate) use axioms::strict_sure_thing_violation;
pub use likelihood::{
    induced_likelihood, is_comparative_possibility, is_comparative_probability, is_null_event,
    null_events, ComparativeVerdict, ComparativeWitness, InducedLikelihood,
    LikelihoodDisagreement, LikelihoodRelation,
};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::acts::{Act, ActSpace, DecisionFrame};
use crate::error::{Error, Result};
use crate::event::Event;

/// Upper bound on the number of act tuples an exhaustive check may visit.
///
/// The default of `2^24` admits 256 acts under a three-act quantifier and
/// 64 acts under a four-act one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub limit: u128,
}

impl Budget {
    pub const DEFAULT_LIMIT: u128 = 1 << 24;

    pub fn new(limit: u128) -> Self {
        Budget { limit }
    }

    pub fn unlimited() -> Self {
        Budget { limit: u128::MAX }
    }

    /// Size of a quantifier over `arity` acts drawn from `acts`.
    pub fn space(acts: usize, arity: u32) -> u128 {
        (acts as u128).checked_pow(arity).unwrap_or(u128::MAX)
    }

    pub fn admit(&self, subject: impl FnOnce() -> String, required: u128) -> Result<()> {
        if required > self.limit {
            return Err(Error::BudgetExceeded {
                subject: subject(),
                required,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limit: Self::DEFAULT_LIMIT,
        }
    }
}

/// A complete preorder on (a subset of) `X^S`, stored as dense ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreferenceRelation {
    space: ActSpace,
    ranks: Vec<Option<u32>>,
    frame: Option<DecisionFrame>,
}

impl PreferenceRelation {
    /// A relation over every act; `ranks[code]` ranks the act with that code.
    pub fn from_ranks(space: ActSpace, ranks: Vec<u32>) -> Result<Self> {
        if ranks.len() != space.len() {
            return Err(Error::FrameMismatch(format!(
                "{} ranks for {} acts",
                ranks.len(),
                space.len()
            )));
        }
        Ok(Self::normalized(space, ranks.into_iter().map(Some).collect()))
    }

    /// A relation over the listed acts only.
    pub fn from_entries<I>(space: ActSpace, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Act, u32)>,
    {
        let mut ranks = vec![None; space.len()];
        for (act, rank) in entries {
            let code = space.code(&act)?;
            if ranks[code].replace(rank).is_some() {
                return Err(Error::DuplicateAct(act.to_string()));
            }
        }
        Ok(Self::normalized(space, ranks))
    }

    /// Ranks acts by an ordered score, equal scores being indifferent.
    pub fn from_scores<T: Ord + Copy>(space: ActSpace, scores: &[T]) -> Result<Self> {
        let distinct: BTreeSet<T> = scores.iter().copied().collect();
        let index: BTreeMap<T, u32> = distinct
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();
        Self::from_ranks(space, scores.iter().map(|v| index[v]).collect())
    }

    /// Compresses an explicit pairwise relation `weakly(i, j)` ("act i is
    /// not preferred to act j") to ranks. Fails with an incomparable pair or
    /// a three-act cycle when the input is not a complete preorder.
    pub fn from_pairwise(
        space: ActSpace,
        acts: Vec<Act>,
        weakly: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = acts.len();
        for i in 0..n {
            for j in 0..n {
                if !weakly(i, j) && !weakly(j, i) {
                    return Err(Error::NotAPreorder(Witness::Incomplete {
                        f: acts[i].clone(),
                        g: acts[j].clone(),
                    }));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !weakly(i, j) {
                    continue;
                }
                for k in 0..n {
                    if weakly(j, k) && !weakly(i, k) {
                        return Err(Error::NotAPreorder(Witness::Cycle {
                            acts: vec![acts[i].clone(), acts[j].clone(), acts[k].clone()],
                        }));
                    }
                }
            }
        }
        let entries = (0..n)
            .map(|i| {
                let below = (0..n).filter(|&j| !weakly(i, j)).count() as u32;
                (acts[i].clone(), below)
            })
            .collect::<Vec<_>>();
        Self::from_entries(space, entries)
    }

    fn normalized(space: ActSpace, ranks: Vec<Option<u32>>) -> Self {
        let distinct: BTreeSet<u32> = ranks.iter().flatten().copied().collect();
        let dense: BTreeMap<u32, u32> = distinct
            .into_iter()
            .enumerate()
            .map(|(i, r)| (r, i as u32))
            .collect();
        let ranks = ranks.into_iter().map(|r| r.map(|r| dense[&r])).collect();
        PreferenceRelation {
            space,
            ranks,
            frame: None,
        }
    }

    /// Attaches the frame the relation was built from (or is read against).
    pub fn with_frame(mut self, frame: DecisionFrame) -> Result<Self> {
        if frame.space() != self.space {
            return Err(Error::FrameMismatch(
                "frame act space differs from the relation's".into(),
            ));
        }
        self.frame = Some(frame);
        Ok(self)
    }

    pub fn space(&self) -> ActSpace {
        self.space
    }

    pub fn frame(&self) -> Option<&DecisionFrame> {
        self.frame.as_ref()
    }

    pub fn is_full(&self) -> bool {
        self.ranks.iter().all(Option::is_some)
    }

    /// Number of indifference classes.
    pub fn classes(&self) -> usize {
        self.ranks
            .iter()
            .flatten()
            .max()
            .map_or(0, |&m| m as usize + 1)
    }

    pub fn rank(&self, act: &Act) -> Result<Option<u32>> {
        Ok(self.ranks[self.space.code(act)?])
    }

    pub fn rank_of_code(&self, code: usize) -> Option<u32> {
        self.ranks[code]
    }

    /// Ranked acts with their ranks, in enumeration order.
    pub fn entries(&self) -> impl Iterator<Item = (Act, u32)> + '_ {
        self.ranks
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (self.space.act(c), r)))
    }

    /// Dense rank vector of a full relation.
    pub(crate) fn full_ranks(&self, axiom: AxiomId) -> Result<Vec<u32>> {
        self.ranks
            .iter()
            .map(|r| r.ok_or(Error::PartialActSpace { axiom }))
            .collect()
    }

    fn ranked(&self, act: &Act) -> Result<u32> {
        self.rank(act)?
            .ok_or_else(|| Error::MissingAct(act.to_string()))
    }

    /// `f ⪯ g`.
    pub fn weakly_prefers(&self, f: &Act, g: &Act) -> Result<bool> {
        Ok(self.ranked(f)? <= self.ranked(g)?)
    }

    /// `f ≺ g`.
    pub fn strictly_prefers(&self, f: &Act, g: &Act) -> Result<bool> {
        Ok(self.ranked(f)? < self.ranked(g)?)
    }

    /// `(f ⪯ g)_A` read through one particular `h`: `fAh ⪯ gAh`.
    pub fn conditionally_prefers(&self, f: &Act, g: &Act, event: Event, h: &Act) -> Result<bool> {
        self.space.check(h)?;
        self.weakly_prefers(&f.compound(event, h), &g.compound(event, h))
    }

    /// Two completions `h, h'` on which `(f ⪯ g)_A` answers differently, or
    /// `None` when conditional preference of `f` and `g` on `A` does not
    /// depend on the completion.
    pub fn conditional_disagreement(&self, f: &Act, g: &Act, event: Event) -> Result<Option<(Act, Act)>> {
        self.space.check(f)?;
        self.space.check(g)?;
        let mut first: Option<(Act, bool)> = None;
        for h in self.space.iter() {
            let (fh, gh) = (f.compound(event, &h), g.compound(event, &h));
            let (Some(a), Some(b)) = (self.rank(&fh)?, self.rank(&gh)?) else {
                continue;
            };
            match &first {
                None => first = Some((h, a <= b)),
                Some((h0, v)) if *v != (a <= b) => return Ok(Some((h0.clone(), h))),
                _ => {}
            }
        }
        Ok(None)
    }

    /// Moves one act into indifference class `rank`; used to build perturbed
    /// relations.
    pub fn with_rank(&self, act: &Act, rank: u32) -> Result<Self> {
        let code = self.space.code(act)?;
        let mut ranks = self.ranks.clone();
        ranks[code] = Some(rank);
        let mut out = Self::normalized(self.space, ranks);
        out.frame = self.frame.clone();
        Ok(out)
    }
}

/// The complete preorder `≤_P` on outcomes read off the constant acts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutcomeOrder {
    ranks: Vec<u32>,
}

impl OutcomeOrder {
    pub fn rank(&self, outcome: usize) -> u32 {
        self.ranks[outcome]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.ranks[x] <= self.ranks[y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.ranks[x] < self.ranks[y]
    }

    /// Some strict pair exists (Sav 5).
    pub fn is_nontrivial(&self) -> bool {
        self.ranks.iter().any(|&r| r != self.ranks[0])
    }

    /// Least-index outcomes of maximal and minimal rank.
    pub fn extremes(&self) -> (usize, usize) {
        let max = *self.ranks.iter().max().expect("non-empty");
        let min = *self.ranks.iter().min().expect("non-empty");
        let best = self.ranks.iter().position(|&r| r == max).expect("present");
        let worst = self.ranks.iter().position(|&r| r == min).expect("present");
        (best, worst)
    }
}

/// `x ≤_P y` iff the constant act `x` is not preferred to the constant act `y`.
pub fn induced_outcome_order(rel: &PreferenceRelation) -> Result<OutcomeOrder> {
    let space = rel.space();
    let ranks = (0..space.outcomes())
        .map(|x| {
            let c = Act::constant(x, space.states());
            rel.rank(&c)?.ok_or_else(|| Error::MissingAct(c.to_string()))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(OutcomeOrder { ranks })
}
