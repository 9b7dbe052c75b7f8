//! Decision frames, acts and the act algebra.
//!
//! An act maps every state to an outcome index. Outcomes carry a utility level
//! through the frame's `mu`; acts themselves never store levels, so two
//! outcomes with the same utility stay distinguishable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::capacity::{Capacity, PossibilityDistribution};
use crate::error::{Error, Result};
use crate::event::{check_states, Event};
use crate::scale::{Level, Scale};

/// `f: S -> X`, one outcome index per state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Act(Vec<usize>);

impl Act {
    pub fn new(outcomes: Vec<usize>) -> Self {
        Act(outcomes)
    }

    pub fn constant(outcome: usize, states: usize) -> Self {
        Act(vec![outcome; states])
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, state: usize) -> usize {
        self.0[state]
    }

    pub fn states(&self) -> usize {
        self.0.len()
    }

    /// Some outcome is used on every state.
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// `fAg`: `self` on `event`, `other` elsewhere. Both acts must have the
    /// same length.
    pub fn compound(&self, event: Event, other: &Act) -> Act {
        debug_assert_eq!(self.0.len(), other.0.len());
        Act(self
            .0
            .iter()
            .zip(&other.0)
            .enumerate()
            .map(|(s, (&a, &b))| if event.contains(s) { a } else { b })
            .collect())
    }
}

impl fmt::Display for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{x}")?;
        }
        f.write_str(")")
    }
}

/// Statewise worst or best of two acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combine {
    Worst,
    Best,
}

/// The full act space `X^S`, enumerated lexicographically: state 0 is the
/// most significant digit, so act codes sort like outcome sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActSpace {
    states: usize,
    outcomes: usize,
}

impl ActSpace {
    pub fn new(states: usize, outcomes: usize) -> Result<Self> {
        check_states(states)?;
        if outcomes == 0 {
            return Err(Error::NoOutcomes);
        }
        let space = ActSpace { states, outcomes };
        space.checked_len()?;
        Ok(space)
    }

    fn checked_len(&self) -> Result<usize> {
        self.outcomes
            .checked_pow(self.states as u32)
            .filter(|&n| n <= u32::MAX as usize)
            .ok_or(Error::ActSpaceTooLarge {
                outcomes: self.outcomes,
                states: self.states,
            })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.pow(self.states as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn act(&self, mut code: usize) -> Act {
        let mut out = vec![0; self.states];
        for slot in out.iter_mut().rev() {
            *slot = code % self.outcomes;
            code /= self.outcomes;
        }
        Act(out)
    }

    pub fn code(&self, act: &Act) -> Result<usize> {
        self.check(act)?;
        Ok(act.0.iter().fold(0, |acc, &x| acc * self.outcomes + x))
    }

    pub fn check(&self, act: &Act) -> Result<()> {
        if act.0.len() != self.states {
            return Err(Error::FrameMismatch(format!(
                "act {act} has {} states, frame has {}",
                act.0.len(),
                self.states
            )));
        }
        if let Some(&bad) = act.0.iter().find(|&&x| x >= self.outcomes) {
            return Err(Error::OutcomeOutOfRange {
                index: bad,
                count: self.outcomes,
            });
        }
        Ok(())
    }

    pub fn check_outcome(&self, outcome: usize) -> Result<()> {
        if outcome >= self.outcomes {
            return Err(Error::OutcomeOutOfRange {
                index: outcome,
                count: self.outcomes,
            });
        }
        Ok(())
    }

    pub fn constant_code(&self, outcome: usize) -> usize {
        (0..self.states).fold(0, |acc, _| acc * self.outcomes + outcome)
    }

    pub fn iter(&self) -> impl Iterator<Item = Act> + '_ {
        (0..self.len()).map(|c| self.act(c))
    }
}

/// The evaluation context: states, outcomes with their utilities, and a
/// capacity on the same scale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionFrame {
    space: ActSpace,
    scale: Scale,
    mu: Vec<Level>,
    capacity: Capacity,
    possibility: Option<PossibilityDistribution>,
}

impl DecisionFrame {
    /// Requires both the bottom and the top of the scale among the utilities.
    pub fn new(mu: Vec<Level>, capacity: Capacity) -> Result<Self> {
        let scale = capacity.scale();
        let space = ActSpace::new(capacity.states(), mu.len())?;
        for &l in &mu {
            scale.check(l)?;
        }
        if !mu.contains(&scale.bottom()) {
            return Err(Error::MissingExtreme { which: "bottom" });
        }
        if !mu.contains(&scale.top()) {
            return Err(Error::MissingExtreme { which: "top" });
        }
        Ok(DecisionFrame {
            space,
            scale,
            mu,
            capacity,
            possibility: None,
        })
    }

    /// Like [`DecisionFrame::new`], but appends an ideal outcome (utility
    /// top) and/or a worst outcome (utility bottom) when they are missing.
    pub fn with_extremes(mut mu: Vec<Level>, capacity: Capacity) -> Result<Self> {
        let scale = capacity.scale();
        if !mu.contains(&scale.top()) {
            mu.push(scale.top());
        }
        if !mu.contains(&scale.bottom()) {
            mu.push(scale.bottom());
        }
        Self::new(mu, capacity)
    }

    /// A frame whose capacity is the possibility measure of `pi`.
    pub fn optimistic(mu: Vec<Level>, pi: PossibilityDistribution) -> Result<Self> {
        let mut frame = Self::new(mu, Capacity::possibility(&pi))?;
        frame.possibility = Some(pi);
        Ok(frame)
    }

    /// A frame whose capacity is the necessity measure of `pi`.
    pub fn pessimistic(mu: Vec<Level>, pi: PossibilityDistribution) -> Result<Self> {
        let mut frame = Self::new(mu, Capacity::necessity(&pi))?;
        frame.possibility = Some(pi);
        Ok(frame)
    }

    pub fn space(&self) -> ActSpace {
        self.space
    }

    pub fn states(&self) -> usize {
        self.space.states
    }

    pub fn outcomes(&self) -> usize {
        self.space.outcomes
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn mu(&self) -> &[Level] {
        &self.mu
    }

    pub fn utility(&self, outcome: usize) -> Level {
        self.mu[outcome]
    }

    pub fn capacity(&self) -> &Capacity {
        &self.capacity
    }

    pub fn possibility(&self) -> Option<&PossibilityDistribution> {
        self.possibility.as_ref()
    }

    /// Same outcomes and utilities, another capacity over the same states
    /// and scale.
    pub fn with_capacity(&self, capacity: Capacity) -> Result<Self> {
        if capacity.states() != self.states() || capacity.scale() != self.scale {
            return Err(Error::FrameMismatch(
                "capacity states or scale differ from the frame".into(),
            ));
        }
        Ok(DecisionFrame {
            capacity,
            possibility: None,
            ..self.clone()
        })
    }

    /// Least-index outcome of maximal utility (`x^*`).
    pub fn best_outcome(&self) -> usize {
        let top = self.scale.top();
        self.mu.iter().position(|&l| l == top).expect("top is in the image")
    }

    /// Least-index outcome of minimal utility (`x_*`).
    pub fn worst_outcome(&self) -> usize {
        let bottom = self.scale.bottom();
        self.mu
            .iter()
            .position(|&l| l == bottom)
            .expect("bottom is in the image")
    }

    pub fn check_act(&self, act: &Act) -> Result<()> {
        self.space.check(act)
    }

    pub(crate) fn check_event(&self, event: Event) -> Result<()> {
        if !event.is_subset(Event::full(self.states())) {
            return Err(Error::FrameMismatch(format!(
                "event {event} is not a subset of the {} states",
                self.states()
            )));
        }
        Ok(())
    }

    pub fn constant(&self, outcome: usize) -> Result<Act> {
        self.space.check_outcome(outcome)?;
        Ok(Act::constant(outcome, self.states()))
    }

    /// `fAg`.
    pub fn compound_act(&self, f: &Act, event: Event, g: &Act) -> Result<Act> {
        self.check_act(f)?;
        self.check_act(g)?;
        self.check_event(event)?;
        Ok(f.compound(event, g))
    }

    /// `xAy`: outcome `x` on `event`, `y` elsewhere.
    pub fn binary_act(&self, x: usize, event: Event, y: usize) -> Result<Act> {
        self.space.check_outcome(x)?;
        self.space.check_outcome(y)?;
        self.check_event(event)?;
        Ok(Act::constant(x, self.states()).compound(event, &Act::constant(y, self.states())))
    }

    /// Statewise `f ∧ g` or `f ∨ g` by utility; on a tie the outcome of `f`
    /// is kept.
    pub fn pointwise_combine(&self, f: &Act, g: &Act, mode: Combine) -> Result<Act> {
        self.check_act(f)?;
        self.check_act(g)?;
        Ok(combine_by(f, g, mode, |x| self.mu[x]))
    }

    pub fn meet(&self, f: &Act, g: &Act) -> Result<Act> {
        self.pointwise_combine(f, g, Combine::Worst)
    }

    pub fn join(&self, f: &Act, g: &Act) -> Result<Act> {
        self.pointwise_combine(f, g, Combine::Best)
    }

    /// `f ≤_P g`: `mu(f(s)) <= mu(g(s))` in every state.
    pub fn pointwise_leq(&self, f: &Act, g: &Act) -> Result<bool> {
        self.check_act(f)?;
        self.check_act(g)?;
        Ok(f.0.iter().zip(&g.0).all(|(&a, &b)| self.mu[a] <= self.mu[b]))
    }

    /// No two states are ordered strictly oppositely by `f` and `g`.
    pub fn is_comonotonic(&self, f: &Act, g: &Act) -> Result<bool> {
        self.check_act(f)?;
        self.check_act(g)?;
        Ok(comonotonic_by(f, g, |x| self.mu[x]))
    }

    /// `F_λ = {s : mu(f(s)) >= λ}`.
    pub fn level_set(&self, f: &Act, level: Level) -> Result<Event> {
        self.check_act(f)?;
        self.scale.check(level)?;
        Ok(self.level_set_unchecked(f, level))
    }

    pub(crate) fn level_set_unchecked(&self, f: &Act, level: Level) -> Event {
        Event::from_states(
            f.0.iter()
                .enumerate()
                .filter(|(_, &x)| self.mu[x] >= level)
                .map(|(s, _)| s),
        )
    }
}

pub(crate) fn combine_by<K: Ord>(f: &Act, g: &Act, mode: Combine, key: impl Fn(usize) -> K) -> Act {
    Act(f
        .0
        .iter()
        .zip(&g.0)
        .map(|(&a, &b)| match mode {
            Combine::Worst if key(b) < key(a) => b,
            Combine::Best if key(b) > key(a) => b,
            _ => a,
        })
        .collect())
}

pub(crate) fn comonotonic_by<K: Ord>(f: &Act, g: &Act, key: impl Fn(usize) -> K) -> bool {
    let n = f.0.len();
    (0..n).all(|s| {
        (0..n).all(|t| !(key(f.0[s]) > key(f.0[t]) && key(g.0[s]) < key(g.0[t])))
    })
}
