//! Events as bitmasks over at most [`MAX_STATES`] states.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Capacities store one level per subset, so the state space is capped.
pub const MAX_STATES: usize = 20;

/// A subset of the state space; bit `i` set means state `i` belongs to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Event(pub u32);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub fn full(states: usize) -> Event {
        debug_assert!(states <= MAX_STATES);
        Event((1u32 << states) - 1)
    }

    pub fn singleton(state: usize) -> Event {
        Event(1 << state)
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(states: I) -> Event {
        Event(states.into_iter().fold(0, |acc, s| acc | (1 << s)))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, state: usize) -> bool {
        self.0 >> state & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Event) -> Event {
        Event(self.0 | other.0)
    }

    pub fn intersection(self, other: Event) -> Event {
        Event(self.0 & other.0)
    }

    pub fn without(self, state: usize) -> Event {
        Event(self.0 & !(1 << state))
    }

    pub fn complement(self, states: usize) -> Event {
        Event(!self.0 & Event::full(states).0)
    }

    pub fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Event) -> bool {
        self.0 & other.0 == 0
    }

    /// Member states in increasing order.
    pub fn states(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |s| bits >> s & 1 == 1)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.states().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "s{s}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn check_states(states: usize) -> Result<()> {
    if states == 0 || states > MAX_STATES {
        return Err(Error::StateCount(states));
    }
    Ok(())
}

/// All `2^states` events in increasing index order.
pub fn all_events(states: usize) -> impl DoubleEndedIterator<Item = Event> + Clone {
    (0..1u32 << states).map(Event)
}
