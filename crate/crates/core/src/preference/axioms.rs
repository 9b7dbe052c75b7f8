//! Exhaustive checkers for the preference axioms.
//!
//! Each axiom is a single violation predicate over a tuple of acts, outcomes
//! and events. The search enumerates the tuple space lexicographically (acts
//! by code, then events by index) and returns the first violating tuple;
//! [`replay`] feeds a witness back through the same predicate. The outermost
//! quantifier is split across rayon workers and `find_map_first` keeps the
//! globally least witness.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{induced_outcome_order, Budget, PreferenceRelation};
use crate::acts::{Act, ActSpace};
use crate::error::Result;
use crate::event::{all_events, Event};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AxiomId {
    /// The relation is a complete preorder.
    Sav1,
    /// Sure-thing principle.
    Sav2,
    /// Conditioning over constant acts, on non-null events.
    Sav3,
    /// Projection from acts over events.
    Sav4,
    /// The weakened projection property that Sugeno utilities satisfy.
    #[serde(rename = "SAV4P")]
    Sav4Prime,
    /// Non-triviality.
    Sav5,
    /// Weak compatibility with constant acts.
    Ws3,
    /// Restricted conjunctive dominance.
    Rcd,
    /// Restricted disjunctive (max-) dominance.
    Rdd,
    /// Conjunctive dominance.
    Cd,
    /// Disjunctive dominance.
    Dd,
    /// Max-min decomposability on comonotonic acts.
    Cod,
    Optimism,
    Pessimism,
}

impl AxiomId {
    pub const ALL: [AxiomId; 14] = [
        AxiomId::Sav1,
        AxiomId::Sav2,
        AxiomId::Sav3,
        AxiomId::Sav4,
        AxiomId::Sav4Prime,
        AxiomId::Sav5,
        AxiomId::Ws3,
        AxiomId::Rcd,
        AxiomId::Rdd,
        AxiomId::Cd,
        AxiomId::Dd,
        AxiomId::Cod,
        AxiomId::Optimism,
        AxiomId::Pessimism,
    ];

    /// Machine identifier, e.g. `SAV4P`.
    pub fn id(self) -> &'static str {
        match self {
            AxiomId::Sav1 => "SAV1",
            AxiomId::Sav2 => "SAV2",
            AxiomId::Sav3 => "SAV3",
            AxiomId::Sav4 => "SAV4",
            AxiomId::Sav4Prime => "SAV4P",
            AxiomId::Sav5 => "SAV5",
            AxiomId::Ws3 => "WS3",
            AxiomId::Rcd => "RCD",
            AxiomId::Rdd => "RDD",
            AxiomId::Cd => "CD",
            AxiomId::Dd => "DD",
            AxiomId::Cod => "COD",
            AxiomId::Optimism => "OPTIMISM",
            AxiomId::Pessimism => "PESSIMISM",
        }
    }

    /// Conventional label, e.g. `Sav 4'`.
    pub fn label(self) -> &'static str {
        match self {
            AxiomId::Sav1 => "Sav 1",
            AxiomId::Sav2 => "Sav 2",
            AxiomId::Sav3 => "Sav 3",
            AxiomId::Sav4 => "Sav 4",
            AxiomId::Sav4Prime => "Sav 4'",
            AxiomId::Sav5 => "Sav 5",
            AxiomId::Ws3 => "WS 3",
            AxiomId::Rcd => "RCD",
            AxiomId::Rdd => "RDD",
            AxiomId::Cd => "CD",
            AxiomId::Dd => "DD",
            AxiomId::Cod => "CoD",
            AxiomId::Optimism => "Optimism",
            AxiomId::Pessimism => "Pessimism",
        }
    }

    /// How many acts the axiom quantifies over (null-event tests count for
    /// Sav 3).
    pub fn act_arity(self) -> u32 {
        match self {
            AxiomId::Sav1 | AxiomId::Sav4 | AxiomId::Sav4Prime | AxiomId::Sav5 => 0,
            AxiomId::Ws3 => 1,
            AxiomId::Rcd | AxiomId::Rdd | AxiomId::Cod => 2,
            AxiomId::Optimism | AxiomId::Pessimism => 2,
            AxiomId::Sav3 | AxiomId::Cd | AxiomId::Dd => 3,
            AxiomId::Sav2 => 4,
        }
    }

    fn needs_full_space(self) -> bool {
        !matches!(self, AxiomId::Sav1 | AxiomId::Sav5)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    /// Accepts identifiers and labels, ignoring case, spaces and a trailing
    /// prime (`sav4'`, `Sav 4'`, `SAV4P` all parse).
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .map(|c| if c == '\'' { 'P' } else { c.to_ascii_uppercase() })
            .collect();
        AxiomId::ALL
            .into_iter()
            .find(|a| a.id() == key)
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

/// A tuple that violates an axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "UPPERCASE")]
pub enum Witness {
    /// Pairwise input with `f` and `g` incomparable.
    Incomplete { f: Act, g: Act },
    /// Pairwise input with `a ⪯ b ⪯ c` but `c ≺ a`.
    Cycle { acts: Vec<Act> },
    /// `fAh ⪯ gAh` but `fAh' ≻ gAh'`.
    Sav2 { f: Act, g: Act, h: Act, h_alt: Act, event: Event },
    /// `(x ⪯ y)_A` read through `h` disagrees with `x ≤_P y` on a non-null `A`.
    Sav3 { x: usize, y: usize, event: Event, h: Act },
    /// The bets on `a` and `b` compare differently for two stakes.
    Sav4 { x: usize, x_low: usize, y: usize, y_low: usize, a: Event, b: Event },
    #[serde(rename = "SAV4P")]
    Sav4Prime { clause: u8, x: usize, x_low: usize, y: usize, y_low: usize, a: Event, b: Event },
    /// Every constant act is indifferent to every other.
    Sav5,
    /// `x ≤_P y` but `xBh ≻ yBh`.
    Ws3 { x: usize, y: usize, event: Event, h: Act },
    /// `g ≻ f`, `y ≻ f`, but not `g ∧ y ≻ f`.
    Rcd { f: Act, g: Act, y: usize },
    /// `f ≻ g`, `f ≻ y`, but not `f ≻ g ∨ y`.
    Rdd { f: Act, g: Act, y: usize },
    /// `g ≻ f`, `h ≻ f`, but not `g ∧ h ≻ f`.
    Cd { f: Act, g: Act, h: Act },
    /// `f ≻ g`, `f ≻ h`, but not `f ≻ g ∨ h`.
    Dd { f: Act, g: Act, h: Act },
    /// Comonotonic `f, g` with clause 1 (join) or 2 (meet) failing.
    Cod { clause: u8, f: Act, g: Act },
    /// `fAg ≺ f` and `gAf ≺ f`.
    Optimism { f: Act, g: Act, event: Event },
    /// `fAg ≻ f` and `gAf ≻ f`.
    Pessimism { f: Act, g: Act, event: Event },
}

impl Witness {
    pub fn axiom(&self) -> AxiomId {
        match self {
            Witness::Incomplete { .. } | Witness::Cycle { .. } => AxiomId::Sav1,
            Witness::Sav2 { .. } => AxiomId::Sav2,
            Witness::Sav3 { .. } => AxiomId::Sav3,
            Witness::Sav4 { .. } => AxiomId::Sav4,
            Witness::Sav4Prime { .. } => AxiomId::Sav4Prime,
            Witness::Sav5 => AxiomId::Sav5,
            Witness::Ws3 { .. } => AxiomId::Ws3,
            Witness::Rcd { .. } => AxiomId::Rcd,
            Witness::Rdd { .. } => AxiomId::Rdd,
            Witness::Cd { .. } => AxiomId::Cd,
            Witness::Dd { .. } => AxiomId::Dd,
            Witness::Cod { .. } => AxiomId::Cod,
            Witness::Optimism { .. } => AxiomId::Optimism,
            Witness::Pessimism { .. } => AxiomId::Pessimism,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Incomplete { f, g } => write!(fm, "f={f} g={g} incomparable"),
            Witness::Cycle { acts } => {
                let names: Vec<String> = acts.iter().map(Act::to_string).collect();
                write!(fm, "cycle {}", names.join(" <= "))
            }
            Witness::Sav2 { f, g, h, h_alt, event } => {
                write!(fm, "f={f} g={g} h={h} h'={h_alt} A={event}")
            }
            Witness::Sav3 { x, y, event, h } | Witness::Ws3 { x, y, event, h } => {
                write!(fm, "x=x{x} y=x{y} A={event} h={h}")
            }
            Witness::Sav4 { x, x_low, y, y_low, a, b } => {
                write!(fm, "x=x{x} x'=x{x_low} y=x{y} y'=x{y_low} A={a} B={b}")
            }
            Witness::Sav4Prime { clause, x, x_low, y, y_low, a, b } => write!(
                fm,
                "clause {clause}: x=x{x} x'=x{x_low} y=x{y} y'=x{y_low} A={a} B={b}"
            ),
            Witness::Sav5 => write!(fm, "all constant acts are indifferent"),
            Witness::Rcd { f, g, y } | Witness::Rdd { f, g, y } => {
                write!(fm, "f={f} g={g} y=x{y}")
            }
            Witness::Cd { f, g, h } | Witness::Dd { f, g, h } => {
                write!(fm, "f={f} g={g} h={h}")
            }
            Witness::Cod { clause, f, g } => write!(fm, "clause {clause}: f={f} g={g}"),
            Witness::Optimism { f, g, event } | Witness::Pessimism { f, g, event } => {
                write!(fm, "f={f} g={g} A={event}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: AxiomId,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    fn from_search(axiom: AxiomId, witness: Option<Witness>) -> Self {
        AxiomVerdict {
            axiom,
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Precomputed view of a full relation: dense ranks per act code, the
/// outcome order, and per-act digits for building compound acts.
pub(crate) struct Ctx {
    space: ActSpace,
    n: usize,
    len: usize,
    ranks: Vec<u32>,
    out: Vec<u32>,
    digits: Vec<u32>,
    place: Vec<usize>,
}

impl Ctx {
    pub(crate) fn new(rel: &PreferenceRelation, axiom: AxiomId) -> Result<Self> {
        let space = rel.space();
        let ranks = rel.full_ranks(axiom)?;
        let out = induced_outcome_order(rel)?.ranks;
        let (n, k, len) = (space.states(), space.outcomes(), space.len());
        let mut place = vec![1usize; n];
        for s in (0..n.saturating_sub(1)).rev() {
            place[s] = place[s + 1] * k;
        }
        let mut digits = vec![0u32; len * n];
        for code in 0..len {
            for s in 0..n {
                digits[code * n + s] = ((code / place[s]) % k) as u32;
            }
        }
        Ok(Ctx {
            space,
            n,
            len,
            ranks,
            out,
            digits,
            place,
        })
    }

    #[inline]
    pub(crate) fn r(&self, code: usize) -> u32 {
        self.ranks[code]
    }

    #[inline]
    fn digit(&self, code: usize, s: usize) -> usize {
        self.digits[code * self.n + s] as usize
    }

    fn events(&self) -> impl Iterator<Item = Event> + Clone {
        all_events(self.n)
    }

    pub(crate) fn outcomes(&self) -> usize {
        self.space.outcomes()
    }

    pub(crate) fn out_rank(&self, x: usize) -> u32 {
        self.out[x]
    }

    #[inline]
    pub(crate) fn compound(&self, f: usize, a: Event, g: usize) -> usize {
        (0..self.n)
            .map(|s| {
                let d = if a.contains(s) {
                    self.digit(f, s)
                } else {
                    self.digit(g, s)
                };
                d * self.place[s]
            })
            .sum()
    }

    pub(crate) fn constant(&self, x: usize) -> usize {
        self.space.constant_code(x)
    }

    pub(crate) fn binary(&self, x: usize, a: Event, y: usize) -> usize {
        self.compound(self.constant(x), a, self.constant(y))
    }

    fn combine(&self, f: usize, g: usize, best: bool) -> usize {
        (0..self.n)
            .map(|s| {
                let (a, b) = (self.digit(f, s), self.digit(g, s));
                let pick_b = if best {
                    self.out[b] > self.out[a]
                } else {
                    self.out[b] < self.out[a]
                };
                (if pick_b { b } else { a }) * self.place[s]
            })
            .sum()
    }

    fn meet(&self, f: usize, g: usize) -> usize {
        self.combine(f, g, false)
    }

    fn join(&self, f: usize, g: usize) -> usize {
        self.combine(f, g, true)
    }

    fn comonotonic(&self, f: usize, g: usize) -> bool {
        (0..self.n).all(|s| {
            (0..self.n).all(|t| {
                let fs = self.out[self.digit(f, s)];
                let ft = self.out[self.digit(f, t)];
                let gs = self.out[self.digit(g, s)];
                let gt = self.out[self.digit(g, t)];
                !(fs > ft && gs < gt)
            })
        })
    }

    /// `fAh ~ gAh` for all `f, g, h`.
    pub(crate) fn is_null(&self, a: Event) -> bool {
        (0..self.len)
            .filter(|&h| self.compound(0, a, h) == h)
            .all(|h| {
                let base = self.r(h);
                (0..self.len).all(|f| self.r(self.compound(f, a, h)) == base)
            })
    }

    fn act(&self, code: usize) -> Act {
        self.space.act(code)
    }

    fn code(&self, act: &Act) -> Result<usize> {
        self.space.code(act)
    }

    // Violation predicates, one per axiom.

    fn sav2(&self, f: usize, g: usize, h: usize, h2: usize, a: Event) -> bool {
        self.r(self.compound(f, a, h)) <= self.r(self.compound(g, a, h))
            && self.r(self.compound(f, a, h2)) > self.r(self.compound(g, a, h2))
    }

    fn sav3(&self, x: usize, y: usize, a: Event, h: usize, null: bool) -> bool {
        let cx = self.constant(x);
        let cy = self.constant(y);
        let conditional = self.r(self.compound(cx, a, h)) <= self.r(self.compound(cy, a, h));
        !null && conditional != (self.out[x] <= self.out[y])
    }

    fn sav4(&self, x: usize, xl: usize, y: usize, yl: usize, a: Event, b: Event) -> bool {
        if !(self.out[xl] < self.out[x] && self.out[yl] < self.out[y]) {
            return false;
        }
        let lhs = self.r(self.binary(x, a, xl)) <= self.r(self.binary(x, b, xl));
        let rhs = self.r(self.binary(y, a, yl)) <= self.r(self.binary(y, b, yl));
        lhs != rhs
    }

    #[allow(clippy::too_many_arguments)]
    fn sav4_prime(&self, clause: u8, x: usize, xl: usize, y: usize, yl: usize, a: Event, b: Event) -> bool {
        let o = &self.out;
        if !(o[xl] < o[x] && o[yl] < o[y]) {
            return false;
        }
        let x_strict = self.r(self.binary(x, a, xl)) < self.r(self.binary(x, b, xl));
        let y_strict = self.r(self.binary(y, a, yl)) < self.r(self.binary(y, b, yl));
        let y_reverse = self.r(self.binary(y, b, yl)) < self.r(self.binary(y, a, yl));
        match clause {
            1 => x_strict && y_reverse,
            _ => o[x] >= o[y] && o[yl] >= o[xl] && y_strict && !x_strict,
        }
    }

    fn sav4_prime_strict(&self, x: usize, xl: usize, y: usize, yl: usize, a: Event, b: Event) -> bool {
        let o = &self.out;
        o[xl] < o[x]
            && o[yl] < o[y]
            && self.r(self.binary(x, a, xl)) < self.r(self.binary(x, b, xl))
            && self.r(self.binary(y, a, yl)) >= self.r(self.binary(y, b, yl))
    }

    fn ws3(&self, x: usize, y: usize, a: Event, h: usize) -> bool {
        self.out[x] <= self.out[y]
            && self.r(self.compound(self.constant(x), a, h))
                > self.r(self.compound(self.constant(y), a, h))
    }

    fn rcd(&self, f: usize, g: usize, y: usize) -> bool {
        let cy = self.constant(y);
        self.r(g) > self.r(f) && self.r(cy) > self.r(f) && self.r(self.meet(g, cy)) <= self.r(f)
    }

    fn rdd(&self, f: usize, g: usize, y: usize) -> bool {
        let cy = self.constant(y);
        self.r(f) > self.r(g) && self.r(f) > self.r(cy) && self.r(f) <= self.r(self.join(g, cy))
    }

    fn cd(&self, f: usize, g: usize, h: usize) -> bool {
        self.r(g) > self.r(f) && self.r(h) > self.r(f) && self.r(self.meet(g, h)) <= self.r(f)
    }

    fn dd(&self, f: usize, g: usize, h: usize) -> bool {
        self.r(f) > self.r(g) && self.r(f) > self.r(h) && self.r(f) <= self.r(self.join(g, h))
    }

    fn cod(&self, clause: u8, f: usize, g: usize) -> bool {
        if !self.comonotonic(f, g) {
            return false;
        }
        match clause {
            1 => {
                let j = self.r(self.join(f, g));
                j > self.r(f) && j != self.r(g)
            }
            _ => {
                let m = self.r(self.meet(f, g));
                m < self.r(f) && m != self.r(g)
            }
        }
    }

    fn optimism(&self, f: usize, g: usize, a: Event) -> bool {
        self.r(self.compound(f, a, g)) < self.r(f) && self.r(f) > self.r(self.compound(g, a, f))
    }

    fn pessimism(&self, f: usize, g: usize, a: Event) -> bool {
        self.r(self.compound(f, a, g)) > self.r(f) && self.r(f) < self.r(self.compound(g, a, f))
    }

    fn search(&self, axiom: AxiomId) -> Option<Witness> {
        let len = self.len;
        let k = self.outcomes();
        match axiom {
            AxiomId::Sav1 => None,
            AxiomId::Sav5 => {
                (!self.out.iter().any(|&r| r != self.out[0])).then_some(Witness::Sav5)
            }
            AxiomId::Sav2 => (0..len).into_par_iter().find_map_first(|f| {
                for g in 0..len {
                    for h in 0..len {
                        for h2 in 0..len {
                            for a in self.events() {
                                if self.sav2(f, g, h, h2, a) {
                                    return Some(Witness::Sav2 {
                                        f: self.act(f),
                                        g: self.act(g),
                                        h: self.act(h),
                                        h_alt: self.act(h2),
                                        event: a,
                                    });
                                }
                            }
                        }
                    }
                }
                None
            }),
            AxiomId::Sav3 => {
                let null: Vec<bool> = self
                    .events()
                    .collect::<Vec<_>>()
                    .par_iter()
                    .map(|&a| self.is_null(a))
                    .collect();
                (0..k).into_par_iter().find_map_first(|x| {
                    for y in 0..k {
                        for a in self.events() {
                            for h in 0..len {
                                if self.sav3(x, y, a, h, null[a.index()]) {
                                    return Some(Witness::Sav3 {
                                        x,
                                        y,
                                        event: a,
                                        h: self.act(h),
                                    });
                                }
                            }
                        }
                    }
                    None
                })
            }
            AxiomId::Sav4 => self.outcome_quad(|x, xl, y, yl, a, b| {
                self.sav4(x, xl, y, yl, a, b)
                    .then_some(Witness::Sav4 { x, x_low: xl, y, y_low: yl, a, b })
            }),
            AxiomId::Sav4Prime => self.outcome_quad(|x, xl, y, yl, a, b| {
                [1u8, 2].into_iter().find_map(|clause| {
                    self.sav4_prime(clause, x, xl, y, yl, a, b).then_some(Witness::Sav4Prime {
                        clause,
                        x,
                        x_low: xl,
                        y,
                        y_low: yl,
                        a,
                        b,
                    })
                })
            }),
            AxiomId::Ws3 => (0..k).into_par_iter().find_map_first(|x| {
                for y in 0..k {
                    for a in self.events() {
                        for h in 0..len {
                            if self.ws3(x, y, a, h) {
                                return Some(Witness::Ws3 { x, y, event: a, h: self.act(h) });
                            }
                        }
                    }
                }
                None
            }),
            AxiomId::Rcd | AxiomId::Rdd => (0..len).into_par_iter().find_map_first(|f| {
                for g in 0..len {
                    for y in 0..k {
                        if axiom == AxiomId::Rcd && self.rcd(f, g, y) {
                            return Some(Witness::Rcd { f: self.act(f), g: self.act(g), y });
                        }
                        if axiom == AxiomId::Rdd && self.rdd(f, g, y) {
                            return Some(Witness::Rdd { f: self.act(f), g: self.act(g), y });
                        }
                    }
                }
                None
            }),
            AxiomId::Cd | AxiomId::Dd => (0..len).into_par_iter().find_map_first(|f| {
                for g in 0..len {
                    for h in 0..len {
                        if axiom == AxiomId::Cd && self.cd(f, g, h) {
                            return Some(Witness::Cd {
                                f: self.act(f),
                                g: self.act(g),
                                h: self.act(h),
                            });
                        }
                        if axiom == AxiomId::Dd && self.dd(f, g, h) {
                            return Some(Witness::Dd {
                                f: self.act(f),
                                g: self.act(g),
                                h: self.act(h),
                            });
                        }
                    }
                }
                None
            }),
            AxiomId::Cod => (0..len).into_par_iter().find_map_first(|f| {
                for g in 0..len {
                    for clause in [1u8, 2] {
                        if self.cod(clause, f, g) {
                            return Some(Witness::Cod { clause, f: self.act(f), g: self.act(g) });
                        }
                    }
                }
                None
            }),
            AxiomId::Optimism | AxiomId::Pessimism => {
                (0..len).into_par_iter().find_map_first(|f| {
                    for g in 0..len {
                        for a in self.events() {
                            if axiom == AxiomId::Optimism && self.optimism(f, g, a) {
                                return Some(Witness::Optimism {
                                    f: self.act(f),
                                    g: self.act(g),
                                    event: a,
                                });
                            }
                            if axiom == AxiomId::Pessimism && self.pessimism(f, g, a) {
                                return Some(Witness::Pessimism {
                                    f: self.act(f),
                                    g: self.act(g),
                                    event: a,
                                });
                            }
                        }
                    }
                    None
                })
            }
        }
    }

    /// Enumerates `(x, x', y, y', A, B)` in lexicographic order.
    fn outcome_quad<T: Send>(
        &self,
        visit: impl Fn(usize, usize, usize, usize, Event, Event) -> Option<T> + Sync,
    ) -> Option<T> {
        let k = self.outcomes();
        (0..k).into_par_iter().find_map_first(|x| {
            for xl in 0..k {
                for y in 0..k {
                    for yl in 0..k {
                        for a in self.events() {
                            for b in self.events() {
                                if let Some(w) = visit(x, xl, y, yl, a, b) {
                                    return Some(w);
                                }
                            }
                        }
                    }
                }
            }
            None
        })
    }

    fn replay(&self, w: &Witness) -> Result<bool> {
        Ok(match w {
            Witness::Incomplete { .. } | Witness::Cycle { .. } => false,
            Witness::Sav2 { f, g, h, h_alt, event } => self.sav2(
                self.code(f)?,
                self.code(g)?,
                self.code(h)?,
                self.code(h_alt)?,
                *event,
            ),
            Witness::Sav3 { x, y, event, h } => {
                self.sav3(*x, *y, *event, self.code(h)?, self.is_null(*event))
            }
            Witness::Sav4 { x, x_low, y, y_low, a, b } => {
                self.sav4(*x, *x_low, *y, *y_low, *a, *b)
            }
            Witness::Sav4Prime { clause, x, x_low, y, y_low, a, b } => {
                self.sav4_prime(*clause, *x, *x_low, *y, *y_low, *a, *b)
            }
            Witness::Sav5 => !self.out.iter().any(|&r| r != self.out[0]),
            Witness::Ws3 { x, y, event, h } => self.ws3(*x, *y, *event, self.code(h)?),
            Witness::Rcd { f, g, y } => self.rcd(self.code(f)?, self.code(g)?, *y),
            Witness::Rdd { f, g, y } => self.rdd(self.code(f)?, self.code(g)?, *y),
            Witness::Cd { f, g, h } => self.cd(self.code(f)?, self.code(g)?, self.code(h)?),
            Witness::Dd { f, g, h } => self.dd(self.code(f)?, self.code(g)?, self.code(h)?),
            Witness::Cod { clause, f, g } => self.cod(*clause, self.code(f)?, self.code(g)?),
            Witness::Optimism { f, g, event } => {
                self.optimism(self.code(f)?, self.code(g)?, *event)
            }
            Witness::Pessimism { f, g, event } => {
                self.pessimism(self.code(f)?, self.code(g)?, *event)
            }
        })
    }
}

/// Checks one axiom within the default [`Budget`].
pub fn check_axiom(rel: &PreferenceRelation, axiom: AxiomId) -> Result<AxiomVerdict> {
    check_axiom_within(rel, axiom, Budget::default())
}

pub fn check_axiom_within(rel: &PreferenceRelation, axiom: AxiomId, budget: Budget) -> Result<AxiomVerdict> {
    budget.admit(|| axiom.label().to_string(), Budget::space(rel.space().len(), axiom.act_arity()))?;
    match axiom {
        AxiomId::Sav1 => return Ok(AxiomVerdict::from_search(axiom, None)),
        AxiomId::Sav5 => {
            let nontrivial = induced_outcome_order(rel)?.is_nontrivial();
            return Ok(AxiomVerdict::from_search(axiom, (!nontrivial).then_some(Witness::Sav5)));
        }
        _ => {}
    }
    debug_assert!(axiom.needs_full_space());
    let ctx = Ctx::new(rel, axiom)?;
    Ok(AxiomVerdict::from_search(axiom, ctx.search(axiom)))
}

/// Checks several axioms in order; stops at the first refusal.
pub fn check_axioms(rel: &PreferenceRelation, axioms: &[AxiomId], budget: Budget) -> Result<Vec<AxiomVerdict>> {
    axioms
        .iter()
        .map(|&a| check_axiom_within(rel, a, budget))
        .collect()
}

/// Re-evaluates the violation predicate of `witness.axiom()` on the witness
/// tuple; `true` means the witness is a genuine violation.
pub fn replay(rel: &PreferenceRelation, witness: &Witness) -> Result<bool> {
    let axiom = witness.axiom();
    if axiom == AxiomId::Sav1 {
        return Ok(false);
    }
    let ctx = Ctx::new(rel, axiom)?;
    ctx.replay(witness)
}

/// First `(f, g, h, h', A)` with `fAh ≺ gAh` and `fAh' ≻ gAh'`.
pub(crate) fn strict_sure_thing_violation(rel: &PreferenceRelation, budget: Budget) -> Result<Option<Witness>> {
    budget.admit(|| "sure-thing search".into(), Budget::space(rel.space().len(), 4))?;
    let ctx = Ctx::new(rel, AxiomId::Sav2)?;
    let len = ctx.len;
    Ok((0..len).into_par_iter().find_map_first(|f| {
        for g in 0..len {
            for h in 0..len {
                for h2 in 0..len {
                    for a in ctx.events() {
                        if ctx.sav2(f, g, h, h2, a)
                            && ctx.r(ctx.compound(f, a, h)) < ctx.r(ctx.compound(g, a, h))
                        {
                            return Some(Witness::Sav2 {
                                f: ctx.act(f),
                                g: ctx.act(g),
                                h: ctx.act(h),
                                h_alt: ctx.act(h2),
                                event: a,
                            });
                        }
                    }
                }
            }
        }
        None
    }))
}

/// First tuple violating the first clause of Sav 4' with a strict
/// consequent (`xAx' ≺ xBx' ⇒ yAy' ≺ yBy'`). Sugeno-represented relations
/// generally violate this reading; it is kept as a diagnostic.
pub fn sav4_prime_strict_violation(rel: &PreferenceRelation) -> Result<Option<Witness>> {
    let ctx = Ctx::new(rel, AxiomId::Sav4Prime)?;
    Ok(ctx.outcome_quad(|x, xl, y, yl, a, b| {
        ctx.sav4_prime_strict(x, xl, y, yl, a, b).then_some(Witness::Sav4Prime {
            clause: 1,
            x,
            x_low: xl,
            y,
            y_low: yl,
            a,
            b,
        })
    }))
}
