//! Capacities (monotone set functions) and their possibilistic special cases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{all_events, check_states, Event};
use crate::scale::{Level, Scale};

/// A monotone set function `sigma: 2^S -> L` with `sigma(empty) = 0` and
/// `sigma(S) = 1`, stored densely by event index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Capacity {
    states: usize,
    scale: Scale,
    table: Vec<Level>,
}

/// Which lattice operation a capacity preserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// `sigma(A | B) = max(sigma(A), sigma(B))` for all events.
    pub maxitive: bool,
    /// `sigma(A & B) = min(sigma(A), sigma(B))` for all events.
    pub minitive: bool,
}

impl Capacity {
    /// Validates a full table indexed by event bitmask.
    ///
    /// Monotonicity is checked first, against each event's one-state-removed
    /// covers, so the error names the first offending cover pair; the
    /// boundary conditions are checked after that.
    pub fn new(table: Vec<Level>, states: usize, scale: Scale) -> Result<Self> {
        check_states(states)?;
        let expected = 1usize << states;
        if table.len() != expected {
            return Err(Error::TableSize {
                states,
                expected,
                found: table.len(),
            });
        }
        for &l in &table {
            scale.check(l)?;
        }
        for upper in all_events(states) {
            for s in upper.states() {
                let lower = upper.without(s);
                if table[lower.index()] > table[upper.index()] {
                    return Err(Error::NotMonotone {
                        lower,
                        upper,
                        lower_level: table[lower.index()].0,
                        upper_level: table[upper.index()].0,
                    });
                }
            }
        }
        let full = Event::full(states);
        if table[0] != scale.bottom() {
            return Err(Error::Boundary {
                event: Event::EMPTY,
                expected: scale.bottom().0,
                found: table[0].0,
            });
        }
        if table[full.index()] != scale.top() {
            return Err(Error::Boundary {
                event: full,
                expected: scale.top().0,
                found: table[full.index()].0,
            });
        }
        Ok(Capacity {
            states,
            scale,
            table,
        })
    }

    /// Wraps a table without validation, for deliberately broken probes.
    pub(crate) fn from_table_unchecked(table: Vec<Level>, states: usize, scale: Scale) -> Self {
        Capacity {
            states,
            scale,
            table,
        }
    }

    pub fn from_fn(states: usize, scale: Scale, f: impl FnMut(Event) -> Level) -> Result<Self> {
        check_states(states)?;
        Self::new(all_events(states).map(f).collect(), states, scale)
    }

    /// `Pi(A) = max_{s in A} pi(s)`.
    pub fn possibility(pi: &PossibilityDistribution) -> Capacity {
        let states = pi.states();
        let mut table = vec![Level::BOTTOM; 1 << states];
        for e in all_events(states).skip(1) {
            let low = e.0.trailing_zeros() as usize;
            table[e.index()] = table[e.without(low).index()].max(pi.values[low]);
        }
        Capacity {
            states,
            scale: pi.scale,
            table,
        }
    }

    /// `N(A) = n(Pi(complement A))`.
    pub fn necessity(pi: &PossibilityDistribution) -> Capacity {
        let poss = Capacity::possibility(pi);
        let states = pi.states();
        let table = all_events(states)
            .map(|e| pi.scale.rev(poss.get(e.complement(states))))
            .collect();
        Capacity {
            states,
            scale: pi.scale,
            table,
        }
    }

    /// Draws a capacity by visiting events in increasing cardinality and
    /// picking each value uniformly between the largest value of its covers
    /// and the top. Deterministic in `seed`.
    pub fn random(states: usize, scale: Scale, seed: u64) -> Result<Self> {
        check_states(states)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<Event> = all_events(states).collect();
        order.sort_by_key(|e| (e.len(), e.0));
        let full = Event::full(states);
        let mut table = vec![Level::BOTTOM; 1 << states];
        for e in order {
            table[e.index()] = if e.is_empty() {
                scale.bottom()
            } else if e == full {
                scale.top()
            } else {
                let lo = e
                    .states()
                    .map(|s| table[e.without(s).index()])
                    .max()
                    .unwrap_or(Level::BOTTOM);
                Level(rng.random_range(lo.0..=scale.top().0))
            };
        }
        Self::new(table, states, scale)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn table(&self) -> &[Level] {
        &self.table
    }

    pub fn get(&self, event: Event) -> Level {
        self.table[event.index()]
    }

    pub fn classify(&self) -> Classification {
        Classification {
            maxitive: self.maxitivity_violation().is_none(),
            minitive: self.minitivity_violation().is_none(),
        }
    }

    /// A pair `(A, B)` with `sigma(A | B) != max(sigma(A), sigma(B))`.
    ///
    /// Maxitivity over all pairs is equivalent to `sigma(A)` being the max of
    /// its singletons; the smallest event where that fails yields the pair
    /// `(A - {s}, {s})`.
    pub fn maxitivity_violation(&self) -> Option<(Event, Event)> {
        let mut events: Vec<Event> = all_events(self.states).collect();
        events.sort_by_key(|e| (e.len(), e.0));
        events.into_iter().filter(|e| e.len() >= 2).find_map(|e| {
            let s = e.0.trailing_zeros() as usize;
            let (a, b) = (e.without(s), Event::singleton(s));
            (self.get(e) != self.get(a).max(self.get(b))).then_some((a, b))
        })
    }

    /// A pair `(A, B)` with `sigma(A & B) != min(sigma(A), sigma(B))`, found
    /// dually from the largest event that is not the min of the co-singletons
    /// above it.
    pub fn minitivity_violation(&self) -> Option<(Event, Event)> {
        let n = self.states;
        let full = Event::full(n);
        let mut events: Vec<Event> = all_events(n).collect();
        events.sort_by_key(|e| (std::cmp::Reverse(e.len()), e.0));
        events.into_iter().filter(|e| e.len() + 2 <= n).find_map(|e| {
            let s = e.complement(n).0.trailing_zeros() as usize;
            let a = e.union(Event::singleton(s));
            let b = full.without(s);
            (self.get(e) != self.get(a).min(self.get(b))).then_some((a, b))
        })
    }
}

/// A normalized possibility distribution `pi: S -> L` (some state is fully
/// possible).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PossibilityDistribution {
    scale: Scale,
    values: Vec<Level>,
}

impl PossibilityDistribution {
    pub fn new(scale: Scale, values: Vec<Level>) -> Result<Self> {
        check_states(values.len())?;
        for &v in &values {
            scale.check(v)?;
        }
        let max = values.iter().copied().max().unwrap_or(Level::BOTTOM);
        if max != scale.top() {
            return Err(Error::Unnormalized {
                max: max.0,
                top: scale.top().0,
            });
        }
        Ok(PossibilityDistribution { scale, values })
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn states(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Level] {
        &self.values
    }

    pub fn get(&self, state: usize) -> Level {
        self.values[state]
    }

    /// Every normalized distribution over `states` states, in lexicographic
    /// order of the value vectors.
    pub fn enumerate(states: usize, scale: Scale) -> Vec<PossibilityDistribution> {
        let size = scale.size();
        let total = size.pow(states as u32);
        (0..total)
            .filter_map(|mut code| {
                let mut values = vec![Level::BOTTOM; states];
                for v in values.iter_mut().rev() {
                    *v = Level((code % size) as u16);
                    code /= size;
                }
                PossibilityDistribution::new(scale, values).ok()
            })
            .collect()
    }
}
