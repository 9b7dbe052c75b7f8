//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use qdt::capacity::PossibilityDistribution;
use qdt::preference::{
    induced_likelihood, is_comparative_possibility, is_comparative_probability,
    ComparativeWitness,
};
use qdt::synthesis::sure_thing_capacity;
use qdt::{
    all_events, binary_act_value, check_axiom, eu_dominance_demo, find_sure_thing_violation,
    induce_preorder, qu_optimistic, qu_pessimistic, replay, sugeno_levelcut, sugeno_median,
    sugeno_outcome, synthesize_possibilistic, synthesize_representation, verify_representation,
    Act, AxiomId, Budget, Capacity, DecisionFrame, Error, Level, Mode, PreferenceRelation,
    Scale, Witness,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lv(v: &[u16]) -> Vec<Level> {
    v.iter().copied().map(Level).collect()
}

fn m2() -> Scale {
    Scale::with_top(2).unwrap()
}

/// Utilities for `outcomes` outcomes on `0..=top`, containing both extremes,
/// the rest drawn from the seed.
fn random_mu(rng: &mut ChaCha8Rng, outcomes: usize, top: u16) -> Vec<Level> {
    let mut mu: Vec<Level> = (0..outcomes).map(|_| Level(rng.random_range(0..=top))).collect();
    let i = rng.random_range(0..outcomes);
    let j = (i + 1 + rng.random_range(0..outcomes - 1)) % outcomes;
    mu[i] = Level(top);
    mu[j] = Level(0);
    mu
}

fn standard_frame(seed: u64) -> DecisionFrame {
    DecisionFrame::new(lv(&[0, 1, 2]), Capacity::random(3, m2(), seed).unwrap()).unwrap()
}

fn same_order(a: &Capacity, b: &Capacity) -> bool {
    let n = a.states();
    all_events(n).all(|x| all_events(n).all(|y| (a.get(x) <= a.get(y)) == (b.get(x) <= b.get(y))))
}

fn same_pi_order(a: &PossibilityDistribution, b: &PossibilityDistribution) -> bool {
    let n = a.states();
    (0..n).all(|s| (0..n).all(|t| (a.get(s) <= a.get(t)) == (b.get(s) <= b.get(t))))
}

fn criterion_1() -> String {
    let mut acts = 0usize;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for states in 1..=3 {
            for top in 1..=4u16 {
                let cap = Capacity::random(states, Scale::with_top(top).unwrap(), seed).unwrap();
                for outcomes in 2..=3 {
                    let frame = DecisionFrame::new(random_mu(&mut rng, outcomes, top), cap.clone()).unwrap();
                    for f in frame.space().iter() {
                        let a = sugeno_levelcut(&frame, &f).unwrap();
                        assert_eq!(a, sugeno_outcome(&frame, &f).unwrap(), "seed {seed} {f}");
                        assert_eq!(a, sugeno_median(&frame, &f).unwrap(), "seed {seed} {f}");
                        acts += 1;
                    }
                }
            }
        }
    }
    format!("{acts} act evaluations agree")
}

fn criterion_2() -> String {
    let r = eu_dominance_demo();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9;
    let c = &r.conjunctive;
    assert!(close(c.eu_f, 930.14), "{}", c.eu_f);
    assert!(close(c.eu_g, 9.79), "{}", c.eu_g);
    assert!(close(c.eu_combined, 9.44), "{}", c.eu_combined);
    assert!(c.violation);
    assert!(r.disjunctive.violation);
    format!(
        "EU(f)={:.2} EU(g)={:.2} EU(f^c)={:.2}, RCD violated; mirrored RDD violated",
        c.eu_f, c.eu_g, c.eu_combined
    )
}

fn criterion_3() -> String {
    let mut checks = 0usize;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        for states in 1..=4 {
            let top = rng.random_range(1..=4u16);
            let cap = Capacity::random(states, Scale::with_top(top).unwrap(), seed).unwrap();
            let frame = DecisionFrame::new(random_mu(&mut rng, 4, top), cap).unwrap();
            let (best, worst) = (frame.best_outcome(), frame.worst_outcome());
            for x in 0..frame.outcomes() {
                let c = frame.constant(x).unwrap();
                assert_eq!(sugeno_levelcut(&frame, &c).unwrap(), frame.utility(x));
                for a in all_events(states) {
                    let bet = frame.binary_act(best, a, worst).unwrap();
                    assert_eq!(sugeno_levelcut(&frame, &bet).unwrap(), frame.capacity().get(a));
                    for y in 0..frame.outcomes() {
                        let act = frame.binary_act(x, a, y).unwrap();
                        let direct = sugeno_levelcut(&frame, &act).unwrap();
                        assert_eq!(binary_act_value(&frame, x, a, y).unwrap(), direct);
                        checks += 1;
                    }
                }
            }
        }
    }
    format!("{checks} binary acts match the closed form")
}

fn criterion_4() -> String {
    let (mut pairs, mut join_break, mut meet_break) = (0usize, false, false);
    for seed in 0..20u64 {
        let frame = standard_frame(seed);
        let u = |f: &Act| sugeno_levelcut(&frame, f).unwrap();
        for f in frame.space().iter() {
            for g in frame.space().iter() {
                let join = u(&frame.join(&f, &g).unwrap()) == u(&f).max(u(&g));
                let meet = u(&frame.meet(&f, &g).unwrap()) == u(&f).min(u(&g));
                if frame.is_comonotonic(&f, &g).unwrap() {
                    assert!(join && meet, "seed {seed} f={f} g={g}");
                    pairs += 1;
                } else {
                    join_break |= !join;
                    meet_break |= !meet;
                }
            }
        }
    }
    assert!(join_break, "no non-comonotonic pair breaks the join equality");
    assert!(meet_break, "no non-comonotonic pair breaks the meet equality");
    format!("{pairs} comonotonic pairs decompose; both equalities fail off comonotonic pairs")
}

fn criterion_5() -> String {
    let mut count = 0;
    for pi in PossibilityDistribution::enumerate(3, m2()) {
        let opt = DecisionFrame::optimistic(lv(&[0, 1, 2]), pi.clone()).unwrap();
        let pes = DecisionFrame::pessimistic(lv(&[0, 1, 2]), pi.clone()).unwrap();
        for f in opt.space().iter() {
            assert_eq!(qu_optimistic(&opt, &f).unwrap(), sugeno_levelcut(&opt, &f).unwrap());
            assert_eq!(qu_pessimistic(&pes, &f).unwrap(), sugeno_levelcut(&pes, &f).unwrap());
        }
        count += 1;
    }
    format!("{count} distributions, all 27 acts each")
}

fn criterion_6() -> String {
    let profile = [
        AxiomId::Sav1,
        AxiomId::Sav5,
        AxiomId::Ws3,
        AxiomId::Sav4Prime,
        AxiomId::Rcd,
        AxiomId::Rdd,
        AxiomId::Cod,
    ];
    let mut frames: Vec<DecisionFrame> = (0..50).map(standard_frame).collect();
    for seed in 0..10u64 {
        let scale = Scale::with_top(4).unwrap();
        frames.push(DecisionFrame::new(lv(&[0, 4, 2]), Capacity::random(3, scale, seed).unwrap()).unwrap());
    }
    for pi in PossibilityDistribution::enumerate(3, m2()) {
        frames.push(DecisionFrame::optimistic(lv(&[0, 1, 2]), pi.clone()).unwrap());
        frames.push(DecisionFrame::pessimistic(lv(&[0, 1, 2]), pi).unwrap());
    }
    for frame in &frames {
        let rel = induce_preorder(frame).unwrap();
        for axiom in profile {
            let v = check_axiom(&rel, axiom).unwrap();
            assert!(v.holds, "{axiom}: {:?}", v.witness);
        }
    }
    // best and worst outcomes suffice for the bets; 16 acts fit the budget
    let frame = DecisionFrame::new(lv(&[0, 2]), sure_thing_capacity()).unwrap();
    let w = find_sure_thing_violation(&frame, Budget::default()).unwrap().expect("witness");
    let rel = induce_preorder(&frame).unwrap();
    assert!(replay(&rel, &w).unwrap());
    let Witness::Sav2 { f, g, h, event, .. } = &w else { panic!("{w:?}") };
    assert!(rel.strictly_prefers(&f.compound(*event, h), &g.compound(*event, h)).unwrap());
    format!("{} induced relations pass the profile; Sav 2 witness {w}", frames.len())
}

fn criterion_7() -> String {
    for seed in 0..50u64 {
        let frame = standard_frame(seed);
        let rel = induce_preorder(&frame).unwrap();
        let rep = synthesize_representation(&rel).unwrap();
        assert!(verify_representation(&rel, &rep).unwrap().holds);
        assert!(same_order(rep.capacity(), frame.capacity()), "seed {seed}");
    }
    "50 frames synthesized, verified, order-isomorphic".into()
}

fn criterion_8() -> String {
    let mut recovered = 0;
    for pi in PossibilityDistribution::enumerate(3, m2()) {
        let opt = induce_preorder(&DecisionFrame::optimistic(lv(&[0, 1, 2]), pi.clone()).unwrap()).unwrap();
        let got = synthesize_possibilistic(&opt, Mode::Optimistic).unwrap();
        assert!(same_pi_order(&got.possibility, &pi));
        let pes = induce_preorder(&DecisionFrame::pessimistic(lv(&[0, 1, 2]), pi.clone()).unwrap()).unwrap();
        let got = synthesize_possibilistic(&pes, Mode::Pessimistic).unwrap();
        assert!(same_pi_order(&got.possibility, &pi));
        recovered += 2;
    }
    let mut refused = 0;
    let mut capacities: Vec<Capacity> = (0..200)
        .map(|s| Capacity::random(3, m2(), s).unwrap())
        .collect();
    capacities.push(sure_thing_capacity());
    for cap in capacities {
        let class = cap.classify();
        let rel = induce_preorder(&DecisionFrame::new(lv(&[0, 1, 2]), cap).unwrap()).unwrap();
        for (mode, axiom, applies) in [
            (Mode::Optimistic, AxiomId::Dd, !class.maxitive),
            (Mode::Pessimistic, AxiomId::Cd, !class.minitive),
        ] {
            if !applies {
                continue;
            }
            match synthesize_possibilistic(&rel, mode) {
                Err(Error::Precondition { axiom: got, witness }) => {
                    assert_eq!(got, axiom);
                    assert!(replay(&rel, &witness).unwrap());
                    refused += 1;
                }
                other => panic!("{mode}: expected {axiom} refusal, got {other:?}"),
            }
        }
    }
    format!("{recovered} distributions recovered; {refused} refusals with replayed DD/CD witnesses")
}

/// Moves one act to another indifference class.
fn mutate(rel: &PreferenceRelation, seed: u64) -> PreferenceRelation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = rel.space();
    let act = space.act(rng.random_range(0..space.len()));
    let current = rel.rank(&act).unwrap().unwrap();
    let classes = rel.classes() as u32;
    let target = (current + 1 + rng.random_range(0..classes - 1)) % classes;
    rel.with_rank(&act, target).unwrap()
}

/// DD, Optimism, CD and Pessimism verdicts by direct enumeration, with
/// pointwise max and min taken in the order of the constant acts.
fn naive_attitudes(rel: &PreferenceRelation) -> [bool; 4] {
    let space = rel.space();
    let n = space.states();
    let acts: Vec<Act> = space.iter().collect();
    let r = |f: &Act| rel.rank(f).unwrap().unwrap();
    let o: Vec<u32> = (0..space.outcomes()).map(|x| r(&Act::constant(x, n))).collect();
    let pick = |f: &Act, g: &Act, better: bool| {
        Act::new(
            (0..n)
                .map(|s| {
                    let (x, y) = (f.get(s), g.get(s));
                    let take_y = if better { o[y] > o[x] } else { o[y] < o[x] };
                    if take_y { y } else { x }
                })
                .collect(),
        )
    };
    let mut dd = true;
    let mut cd = true;
    for f in &acts {
        for g in &acts {
            for h in &acts {
                if r(f) > r(g) && r(f) > r(h) && r(f) <= r(&pick(g, h, true)) {
                    dd = false;
                }
                if r(g) > r(f) && r(h) > r(f) && r(&pick(g, h, false)) <= r(f) {
                    cd = false;
                }
            }
        }
    }
    let mut optimism = true;
    let mut pessimism = true;
    for f in &acts {
        for g in &acts {
            for a in all_events(n) {
                let (fag, gaf) = (f.compound(a, g), g.compound(a, f));
                if r(&fag) < r(f) && r(&gaf) < r(f) {
                    optimism = false;
                }
                if r(&fag) > r(f) && r(&gaf) > r(f) {
                    pessimism = false;
                }
            }
        }
    }
    [dd, optimism, cd, pessimism]
}

fn criterion_9() -> String {
    let induced: Vec<PreferenceRelation> = (0..50)
        .map(|s| induce_preorder(&standard_frame(s)).unwrap())
        .collect();
    let mutated: Vec<PreferenceRelation> = induced
        .iter()
        .enumerate()
        .map(|(i, r)| mutate(r, 5000 + i as u64))
        .collect();
    let mut mismatches = Vec::new();
    let mut tally = [0usize; 4];
    for (i, rel) in induced.iter().chain(&mutated).enumerate() {
        for (k, (a, b)) in [(AxiomId::Dd, AxiomId::Optimism), (AxiomId::Cd, AxiomId::Pessimism)]
            .into_iter()
            .enumerate()
        {
            let va = check_axiom(rel, a).unwrap();
            let vb = check_axiom(rel, b).unwrap();
            let naive = naive_attitudes(rel);
            assert_eq!([va.holds, vb.holds], [naive[2 * k], naive[2 * k + 1]], "relation {i} {a}/{b} oracle");
            for v in [&va, &vb] {
                if let Some(w) = &v.witness {
                    assert!(replay(rel, w).unwrap());
                }
            }
            tally[2 * k] += usize::from(va.holds);
            tally[2 * k + 1] += usize::from(!va.holds);
            if va.holds != vb.holds {
                let kind = if i < 50 { "induced" } else { "mutated" };
                let ws3 = check_axiom(rel, AxiomId::Ws3).unwrap().holds;
                mismatches.push(format!(
                    "{kind} #{} {a}={} {b}={} (WS 3 {})",
                    i % 50,
                    va.holds,
                    vb.holds,
                    if ws3 { "holds" } else { "fails" }
                ));
            }
        }
    }
    assert!(mismatches.is_empty(), "{} mismatches: {}", mismatches.len(), mismatches.join("; "));
    format!(
        "100 relations agree (DD holds {}, fails {}; CD holds {}, fails {})",
        tally[0], tally[1], tally[2], tally[3]
    )
}

fn criterion_10() -> String {
    let mut possibility = 0;
    for pi in PossibilityDistribution::enumerate(3, m2()) {
        let rel = induce_preorder(&DecisionFrame::optimistic(lv(&[0, 1, 2]), pi).unwrap()).unwrap();
        let lik = induced_likelihood(&rel).unwrap().relation;
        assert!(is_comparative_possibility(&lik).unwrap().holds);
        possibility += 1;
    }
    let mut additivity = 0;
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let pi = PossibilityDistribution::new(m2(), lv(&perm)).unwrap();
        let rel = induce_preorder(&DecisionFrame::optimistic(lv(&[0, 1, 2]), pi).unwrap()).unwrap();
        let lik = induced_likelihood(&rel).unwrap().relation;
        let w = is_comparative_probability(&lik).unwrap().witness.expect("P fails");
        assert!(matches!(w, ComparativeWitness::Additivity { .. }), "{w}");
        assert!(w.replays(&lik));
        additivity += 1;
    }
    format!("{possibility} possibility likelihoods pass; {additivity} distinct-π likelihoods fail P with replayed witnesses")
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("three formulations agree", criterion_1),
        ("expected-utility dominance example", criterion_2),
        ("closed forms for constant and binary acts", criterion_3),
        ("comonotonic max/min decomposition", criterion_4),
        ("possibilistic utilities as Sugeno integrals", criterion_5),
        ("axiom profile of Sugeno utilities", criterion_6),
        ("representation round trip", criterion_7),
        ("possibilistic round trip and refusals", criterion_8),
        ("DD ~ Optimism, CD ~ Pessimism", criterion_9),
        ("comparative possibility and probability", criterion_10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:.1}s] {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} FAIL [{secs:.1}s] {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
