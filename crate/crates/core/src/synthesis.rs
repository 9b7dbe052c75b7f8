//! Constructive representation of preference relations by Sugeno
//! integrals, and generators for the classic counterexamples.
//!
//! [`synthesize_representation`] rebuilds `(L', mu', σ')` from a relation
//! that passes Sav 1, WS 3, Sav 5, RCD and RDD: the scale is the quotient by
//! indifference, utilities are the classes of constant acts and `σ'(A)` is
//! the class of the bet `x^*Ax_*`. Every intermediate identity is checked
//! and the final representation is verified against the relation; a failed
//! check is reported as [`Error::Verification`], never repaired.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acts::{Act, ActSpace, DecisionFrame};
use crate::capacity::{Capacity, PossibilityDistribution};
use crate::error::{Error, Result};
use crate::evaluate::{check_probabilities, expected_utility, levelcut};
use crate::event::{all_events, Event};
use crate::preference::{
    check_axiom_within, induced_outcome_order, strict_sure_thing_violation, AxiomId, Budget,
    PreferenceRelation, Witness,
};
use crate::scale::{Level, Scale};

/// A capacity on four states, with a three-level scale, whose Sugeno
/// utility violates the sure-thing principle: `σ({s0,s2}) < σ({s1,s2})`
/// while `σ({s0,s3}) > σ({s1,s3})`.
pub fn sure_thing_capacity() -> Capacity {
    let scale = Scale::with_top(2).expect("three levels");
    let pair = |a: usize, b: usize| Event::from_states([a, b]);
    let ones = [pair(1, 2), pair(0, 3)];
    Capacity::from_fn(4, scale, |e| match e.len() {
        0 | 1 => Level(0),
        2 if ones.contains(&e) => Level(1),
        2 => Level(0),
        _ => Level(2),
    })
    .expect("valid capacity")
}

/// Ranks every act of the frame by its Sugeno utility, within the default
/// budget.
pub fn induce_preorder(frame: &DecisionFrame) -> Result<PreferenceRelation> {
    induce_preorder_within(frame, Budget::default())
}

pub fn induce_preorder_within(frame: &DecisionFrame, budget: Budget) -> Result<PreferenceRelation> {
    let space = frame.space();
    budget.admit(|| "act space".into(), space.len() as u128)?;
    let utilities: Vec<u32> = (0..space.len())
        .into_par_iter()
        .map(|c| levelcut(frame, &space.act(c)).rank() as u32)
        .collect();
    PreferenceRelation::from_ranks(space, utilities)?.with_frame(frame.clone())
}

/// Ranks every act by expected utility, `payoffs[x]` being the value of
/// outcome `x`. Utilities within `1e-9` of each other are indifferent.
pub fn induce_eu_preorder(space: ActSpace, payoffs: &[f64], probabilities: &[f64]) -> Result<PreferenceRelation> {
    if payoffs.len() != space.outcomes() {
        return Err(Error::FrameMismatch(format!(
            "{} payoffs for {} outcomes",
            payoffs.len(),
            space.outcomes()
        )));
    }
    if probabilities.len() != space.states() {
        return Err(Error::LengthMismatch {
            probabilities: probabilities.len(),
            payoffs: space.states(),
        });
    }
    check_probabilities(probabilities)?;
    let eu: Vec<f64> = space
        .iter()
        .map(|f| {
            let values: Vec<f64> = f.outcomes().iter().map(|&x| payoffs[x]).collect();
            expected_utility(probabilities, &values)
        })
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..eu.len()).collect();
    order.sort_by(|&a, &b| eu[a].total_cmp(&eu[b]));
    let mut ranks = vec![0u32; eu.len()];
    let mut rank = 0;
    for w in 0..order.len() {
        if w > 0 && eu[order[w]] - eu[order[w - 1]] > 1e-9 {
            rank += 1;
        }
        ranks[order[w]] = rank;
    }
    PreferenceRelation::from_ranks(space, ranks)
}

/// A Sugeno representation `(L', mu', σ')` of a preference relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    scale: Scale,
    mu: Vec<Level>,
    capacity: Capacity,
    provenance: Vec<Act>,
}

impl Representation {
    /// Assembles a representation without checking that `mu` attains the
    /// extremes of the scale. Useful for probing [`verify_representation`].
    pub fn from_parts(mu: Vec<Level>, capacity: Capacity) -> Result<Self> {
        let scale = capacity.scale();
        for &l in &mu {
            scale.check(l)?;
        }
        Ok(Representation {
            scale,
            mu,
            capacity,
            provenance: Vec::new(),
        })
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn mu(&self) -> &[Level] {
        &self.mu
    }

    pub fn capacity(&self) -> &Capacity {
        &self.capacity
    }

    /// `provenance()[l]` is the least act (by code) in indifference class
    /// `l`; empty for hand-assembled representations.
    pub fn provenance(&self) -> &[Act] {
        &self.provenance
    }

    /// Sugeno utility `max_x min(mu'(x), σ'({s : mu'(f(s)) >= mu'(x)}))`.
    pub fn utility(&self, f: &Act) -> Level {
        self.mu
            .iter()
            .map(|&l| {
                let cut = Event::from_states(
                    f.outcomes()
                        .iter()
                        .enumerate()
                        .filter(|&(_, &x)| self.mu[x] >= l)
                        .map(|(s, _)| s),
                );
                l.min(self.capacity.get(cut))
            })
            .max()
            .unwrap_or(Level::BOTTOM)
    }

    /// Same representation with `σ'(event)` replaced; the result is not
    /// validated as a capacity.
    pub fn with_capacity_entry(&self, event: Event, level: Level) -> Result<Self> {
        let mut table = self.capacity.table().to_vec();
        *table
            .get_mut(event.index())
            .ok_or_else(|| Error::FrameMismatch(format!("event {event} out of range")))? =
            self.scale.check(level)?;
        let capacity = Capacity::from_table_unchecked(table, self.capacity.states(), self.scale);
        Ok(Representation {
            capacity,
            ..self.clone()
        })
    }

    fn check_shape(&self, space: ActSpace) -> Result<()> {
        if self.capacity.states() != space.states() || self.mu.len() != space.outcomes() {
            return Err(Error::FrameMismatch(format!(
                "representation has {} states and {} outcomes, relation has {} and {}",
                self.capacity.states(),
                self.mu.len(),
                space.states(),
                space.outcomes()
            )));
        }
        Ok(())
    }
}

/// Outcome of comparing a relation with a utility function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentationCheck {
    pub holds: bool,
    /// Two ranked acts on which the relation and the utility disagree.
    pub distinguishing: Option<(Act, Act)>,
}

impl From<Option<(Act, Act)>> for RepresentationCheck {
    fn from(distinguishing: Option<(Act, Act)>) -> Self {
        RepresentationCheck {
            holds: distinguishing.is_none(),
            distinguishing,
        }
    }
}

/// `f ⪯ g ⇔ u(f) <= u(g)` over the ranked acts. Returns the first pair
/// found in a scan by class: an act whose utility differs from its class
/// representative, or representatives of consecutive classes whose
/// utilities do not increase.
fn first_disagreement<U: Ord + Send>(rel: &PreferenceRelation, utility: impl Fn(&Act) -> U + Sync) -> Option<(Act, Act)> {
    let space = rel.space();
    let scored: Vec<Option<(u32, U)>> = (0..space.len())
        .into_par_iter()
        .map(|c| rel.rank_of_code(c).map(|r| (r, utility(&space.act(c)))))
        .collect();
    let mut reps: Vec<Option<usize>> = vec![None; rel.classes()];
    for (c, entry) in scored.iter().enumerate() {
        let Some((r, u)) = entry else { continue };
        match reps[*r as usize] {
            None => reps[*r as usize] = Some(c),
            Some(rep) => {
                if scored[rep].as_ref().map(|(_, v)| v) != Some(u) {
                    return Some((space.act(rep), space.act(c)));
                }
            }
        }
    }
    let reps: Vec<usize> = reps.into_iter().flatten().collect();
    reps.windows(2).find_map(|w| {
        let lo = &scored[w[0]].as_ref().expect("ranked").1;
        let hi = &scored[w[1]].as_ref().expect("ranked").1;
        (lo >= hi).then(|| (space.act(w[0]), space.act(w[1])))
    })
}

/// Checks that `rep` orders the ranked acts of `rel` exactly as `rel` does.
pub fn verify_representation(rel: &PreferenceRelation, rep: &Representation) -> Result<RepresentationCheck> {
    rep.check_shape(rel.space())?;
    Ok(first_disagreement(rel, |f| rep.utility(f)).into())
}

const PRECONDITIONS: [AxiomId; 5] = [
    AxiomId::Sav1,
    AxiomId::Ws3,
    AxiomId::Sav5,
    AxiomId::Rcd,
    AxiomId::Rdd,
];

fn require(rel: &PreferenceRelation, axioms: &[AxiomId], budget: Budget) -> Result<()> {
    for &axiom in axioms {
        let verdict = check_axiom_within(rel, axiom, budget)?;
        if let Some(witness) = verdict.witness {
            return Err(Error::Precondition { axiom, witness });
        }
    }
    Ok(())
}

/// Rebuilds a Sugeno representation of `rel` within the default budget.
pub fn synthesize_representation(rel: &PreferenceRelation) -> Result<Representation> {
    synthesize_representation_within(rel, Budget::default())
}

pub fn synthesize_representation_within(rel: &PreferenceRelation, budget: Budget) -> Result<Representation> {
    require(rel, &PRECONDITIONS, budget)?;
    construct(rel)
}

/// The construction proper, for relations already known to satisfy the
/// preconditions.
fn construct(rel: &PreferenceRelation) -> Result<Representation> {
    let space = rel.space();
    let (n, k) = (space.states(), space.outcomes());
    let classes = rel.classes();
    let scale = Scale::new(classes)?;
    let rank = |f: &Act| -> Result<Level> {
        let r = rel.rank(f)?.ok_or_else(|| Error::MissingAct(f.to_string()))?;
        Ok(Level(r as u16))
    };

    let mu: Vec<Level> = (0..k)
        .map(|x| rank(&Act::constant(x, n)))
        .collect::<Result<_>>()?;
    let (best, worst) = induced_outcome_order(rel)?.extremes();
    if mu[best] != scale.top() || mu[worst] != scale.bottom() {
        return Err(Error::MissingExtremeOutcomes);
    }

    let bet = |x: usize, a: Event, y: usize| {
        Act::constant(x, n).compound(a, &Act::constant(y, n))
    };
    let table: Vec<Level> = all_events(n)
        .map(|a| rank(&bet(best, a, worst)))
        .collect::<Result<_>>()?;
    let capacity = Capacity::new(table, n, scale)
        .map_err(|e| Error::Verification(format!("bet classes do not form a capacity: {e}")))?;

    for (x, &mux) in mu.iter().enumerate() {
        for a in all_events(n) {
            let got = rank(&bet(x, a, worst))?;
            let want = mux.min(capacity.get(a));
            if got != want {
                return Err(Error::Verification(format!(
                    "u(x{x} {a} x{worst}) = {got}, expected min(mu'(x{x}), sigma'({a})) = {want}"
                )));
            }
        }
    }

    let decomposition = (0..space.len()).into_par_iter().find_map_first(|c| {
        let f = space.act(c);
        let joined = (0..k)
            .map(|x| {
                let cut = Event::from_states((0..n).filter(|&s| mu[f.get(s)] >= mu[x]));
                rank(&bet(x, cut, worst))
            })
            .try_fold(Level::BOTTOM, |m, l| l.map(|l| m.max(l)));
        match (rank(&f), joined) {
            (Ok(u), Ok(j)) if u == j => None,
            (Ok(u), Ok(j)) => Some(Error::Verification(format!(
                "u({f}) = {u} but the join of its bets is {j}"
            ))),
            (Err(e), _) | (_, Err(e)) => Some(e),
        }
    });
    if let Some(e) = decomposition {
        return Err(e);
    }

    let mut provenance: Vec<Option<Act>> = vec![None; classes];
    for (act, r) in rel.entries() {
        provenance[r as usize].get_or_insert(act);
    }
    let rep = Representation {
        scale,
        mu,
        capacity,
        provenance: provenance.into_iter().flatten().collect(),
    };
    let check = verify_representation(rel, &rep)?;
    if let Some((f, g)) = check.distinguishing {
        return Err(Error::Verification(format!(
            "synthesized utility disagrees with the relation on {f} and {g}"
        )));
    }
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Optimistic,
    Pessimistic,
}

impl Mode {
    pub fn preconditions(self) -> [AxiomId; 5] {
        match self {
            Mode::Optimistic => [AxiomId::Sav1, AxiomId::Ws3, AxiomId::Sav5, AxiomId::Rcd, AxiomId::Dd],
            Mode::Pessimistic => [AxiomId::Sav1, AxiomId::Ws3, AxiomId::Sav5, AxiomId::Rdd, AxiomId::Cd],
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Optimistic => "optimistic",
            Mode::Pessimistic => "pessimistic",
        })
    }
}

/// A possibility distribution on the quotient scale together with the
/// representation it was read from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PossibilisticRepresentation {
    pub mode: Mode,
    pub representation: Representation,
    pub possibility: PossibilityDistribution,
    /// Pessimistic mode only: whether `min_s max(π(s), mu'(f(s)))`, without
    /// the order reversal on `π`, also represents the relation.
    pub unreversed_reading: Option<RepresentationCheck>,
}

impl PossibilisticRepresentation {
    /// `QU*(f)` in optimistic mode, `QU_*(f)` in pessimistic mode.
    pub fn utility(&self, f: &Act) -> Level {
        let rep = &self.representation;
        let pi = &self.possibility;
        let per_state = f.outcomes().iter().enumerate();
        match self.mode {
            Mode::Optimistic => per_state
                .map(|(s, &x)| pi.get(s).min(rep.mu[x]))
                .max()
                .unwrap_or(Level::BOTTOM),
            Mode::Pessimistic => per_state
                .map(|(s, &x)| rep.scale.rev(pi.get(s)).max(rep.mu[x]))
                .min()
                .unwrap_or(rep.scale.top()),
        }
    }
}

pub fn synthesize_possibilistic(rel: &PreferenceRelation, mode: Mode) -> Result<PossibilisticRepresentation> {
    synthesize_possibilistic_within(rel, mode, Budget::default())
}

pub fn synthesize_possibilistic_within(
    rel: &PreferenceRelation,
    mode: Mode,
    budget: Budget,
) -> Result<PossibilisticRepresentation> {
    require(rel, &mode.preconditions(), budget)?;
    let representation = construct(rel)?;
    let sigma = representation.capacity();
    let scale = representation.scale();
    let n = sigma.states();
    let values: Vec<Level> = match mode {
        Mode::Optimistic => {
            if let Some((a, b)) = sigma.maxitivity_violation() {
                return Err(Error::Verification(format!(
                    "sigma' is not maxitive on {a} and {b}"
                )));
            }
            (0..n).map(|s| sigma.get(Event::singleton(s))).collect()
        }
        Mode::Pessimistic => {
            if let Some((a, b)) = sigma.minitivity_violation() {
                return Err(Error::Verification(format!(
                    "sigma' is not minitive on {a} and {b}"
                )));
            }
            (0..n)
                .map(|s| scale.rev(sigma.get(Event::full(n).without(s))))
                .collect()
        }
    };
    let possibility = PossibilityDistribution::new(scale, values)
        .map_err(|e| Error::Verification(format!("recovered distribution: {e}")))?;
    let mut out = PossibilisticRepresentation {
        mode,
        representation,
        possibility,
        unreversed_reading: None,
    };
    if let Some((f, g)) = first_disagreement(rel, |f| out.utility(f)) {
        return Err(Error::Verification(format!(
            "{mode} utility disagrees with the relation on {f} and {g}"
        )));
    }
    if mode == Mode::Pessimistic {
        let rep = &out.representation;
        let pi = &out.possibility;
        let unreversed = first_disagreement(rel, |f| {
            f.outcomes()
                .iter()
                .enumerate()
                .map(|(s, &x)| pi.get(s).max(rep.mu[x]))
                .min()
                .unwrap_or(rep.scale.top())
        });
        out.unreversed_reading = Some(unreversed.into());
    }
    Ok(out)
}

/// The first `(f, g, h, h', A)` in enumeration order with `fAh ≺ gAh` and
/// `fAh' ≻ gAh'` under the frame's Sugeno utility.
pub fn find_sure_thing_violation(frame: &DecisionFrame, budget: Budget) -> Result<Option<Witness>> {
    budget.admit(|| "sure-thing search".into(), Budget::space(frame.space().len(), 4))?;
    let rel = induce_preorder_within(frame, budget)?;
    strict_sure_thing_violation(&rel, budget)
}

/// One side of the dominance demonstration: the act preferred to both
/// others, or dominated by both, and what their pointwise combination does.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceCase {
    /// Payoffs of the two acts under states `(s0, s1)`.
    pub f: [f64; 2],
    pub g: [f64; 2],
    /// The constant act.
    pub c: f64,
    /// Pointwise min (conjunctive case) or max (disjunctive case) of `g` and `c`.
    pub combined: [f64; 2],
    pub eu_f: f64,
    pub eu_g: f64,
    pub eu_combined: f64,
    pub violation: bool,
}

/// Expected utility violates restricted conjunctive dominance, and its
/// mirror image violates restricted disjunctive dominance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EuDominanceReport {
    pub alpha: f64,
    /// `f ≻ g`, `c ≻ g`, yet `f ∧ c ≺ g`.
    pub conjunctive: DominanceCase,
    /// Payoffs negated: `f ≻ g`, `f ≻ c`, yet `f ≺ g ∨ c`.
    pub disjunctive: DominanceCase,
}

/// Two states with probabilities `(0.93, 0.07)`, acts `f = (1000, 2)` and
/// `g = (3, 100)`, constant `c = 10`.
pub fn eu_dominance_demo() -> EuDominanceReport {
    eu_dominance_with(0.93, [1000.0, 2.0], [3.0, 100.0], 10.0)
}

/// The demonstration for arbitrary parameters.
pub fn eu_dominance_with(alpha: f64, f: [f64; 2], g: [f64; 2], c: f64) -> EuDominanceReport {
    let eu = |v: [f64; 2]| alpha * v[0] + (1.0 - alpha) * v[1];
    let meet = [f[0].min(c), f[1].min(c)];
    let conjunctive = DominanceCase {
        f,
        g,
        c,
        combined: meet,
        eu_f: eu(f),
        eu_g: eu(g),
        eu_combined: eu(meet),
        violation: eu(f) > eu(g) && c > eu(g) && eu(meet) <= eu(g),
    };
    let (nf, ng, nc) = ([-g[0], -g[1]], [-f[0], -f[1]], -c);
    let join = [ng[0].max(nc), ng[1].max(nc)];
    let disjunctive = DominanceCase {
        f: nf,
        g: ng,
        c: nc,
        combined: join,
        eu_f: eu(nf),
        eu_g: eu(ng),
        eu_combined: eu(join),
        violation: eu(nf) > eu(ng) && eu(nf) > nc && eu(nf) <= eu(join),
    };
    EuDominanceReport {
        alpha,
        conjunctive,
        disjunctive,
    }
}
