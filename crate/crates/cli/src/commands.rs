use std::path::Path;

use anyhow::{bail, Context, Result};
use indexmap::IndexMap;
use qdt::preference::check_axiom_within;
use qdt::synthesis::{
    eu_dominance_demo, synthesize_possibilistic_within, synthesize_representation_within,
    verify_representation, DominanceCase, Mode,
};
use qdt::{
    find_sure_thing_violation, induce_eu_preorder, sugeno_levelcut, sugeno_median, sugeno_outcome,
    Act, AxiomId, Budget, Capacity, Error, PreferenceRelation, Scale,
};
use serde::Serialize;

use crate::document::{read_json, Frame, FrameDocument, Labels, Relation};
use crate::report::{capacity_error, capacity_table, witness_fields, witness_text, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Levelcut,
    Outcome,
    Median,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SynthesisMode {
    General,
    Optimistic,
    Pessimistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Surething,
    EuRcd,
}

/// The acts a command reports on: explicit ones, all acts, or the declared
/// ones (all acts when none are declared).
fn selected_acts(frame: &Frame, explicit: &[String], all: bool) -> Result<Vec<(String, Act)>> {
    let labelled = |a: Act| (frame.labels.act(&a), a);
    if !explicit.is_empty() {
        return explicit
            .iter()
            .map(|t| {
                let act = frame.parse_act(t)?;
                Ok(match frame.acts.get(t) {
                    Some(_) => (t.clone(), act),
                    None => labelled(act),
                })
            })
            .collect();
    }
    if all || frame.acts.is_empty() {
        return Ok(frame.frame.space().iter().map(labelled).collect());
    }
    Ok(frame.acts.iter().map(|(n, a)| (n.clone(), a.clone())).collect())
}

#[derive(Serialize)]
struct Evaluation {
    act: String,
    outcomes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    levelcut: Option<u16>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outcome: Option<u16>,
    #[serde(skip_serializing_if = "Option::is_none")]
    median: Option<u16>,
}

pub fn eval(path: &Path, acts: &[String], all: bool, method: Method) -> Result<Report> {
    let frame = Frame::load(path)?;
    let f = &frame.frame;
    let want = |m: Method| method == m || method == Method::All;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut agree = true;
    for (name, act) in selected_acts(&frame, acts, all)? {
        let row = Evaluation {
            outcomes: frame.labels.act(&act),
            levelcut: want(Method::Levelcut).then(|| sugeno_levelcut(f, &act)).transpose()?.map(|l| l.rank()),
            outcome: want(Method::Outcome).then(|| sugeno_outcome(f, &act)).transpose()?.map(|l| l.rank()),
            median: want(Method::Median).then(|| sugeno_median(f, &act)).transpose()?.map(|l| l.rank()),
            act: name,
        };
        let values: Vec<String> = [("levelcut", row.levelcut), ("outcome", row.outcome), ("median", row.median)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
            .collect();
        let present: Vec<u16> = [row.levelcut, row.outcome, row.median].into_iter().flatten().collect();
        let same = present.windows(2).all(|w| w[0] == w[1]);
        agree &= same;
        let mut line = if row.act == row.outcomes {
            format!("{}: {}", row.act, values.join(" "))
        } else {
            format!("{} {}: {}", row.act, row.outcomes, values.join(" "))
        };
        if !same {
            line.push_str(" DISAGREE");
        }
        lines.push(line);
        rows.push(row);
    }
    if method == Method::All {
        lines.push(format!("formulations agree: {}", if agree { "yes" } else { "no" }));
    }
    let status = if agree { Status::Holds } else { Status::Violation };
    #[derive(Serialize)]
    struct Out {
        acts: Vec<Evaluation>,
        agree: bool,
    }
    Ok(Report::new(lines, Out { acts: rows, agree }, status))
}

pub fn check_capacity(path: &Path) -> Result<Report> {
    let doc: FrameDocument = read_json(path)?;
    let labels = doc.labels()?;
    let capacity = match &doc.capacity {
        crate::document::CapacitySpec::Table { .. } => {
            let table = doc.raw_table(&labels)?;
            let scale: Scale = doc.scale()?;
            Capacity::new(table, labels.states.len(), scale)
        }
        _ => Ok(doc.frame_with(&doc.capacity)?.capacity().clone()),
    };
    #[derive(Serialize)]
    struct Out {
        valid: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        error: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        maxitive: Option<Classified>,
        #[serde(skip_serializing_if = "Option::is_none")]
        minitive: Option<Classified>,
    }
    #[derive(Serialize)]
    struct Classified {
        holds: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<[String; 2]>,
    }
    let capacity = match capacity {
        Ok(c) => c,
        Err(e @ (Error::NotMonotone { .. } | Error::Boundary { .. } | Error::LevelOutOfRange { .. })) => {
            let msg = capacity_error(&e, &labels);
            let out = Out {
                valid: false,
                error: Some(msg.clone()),
                maxitive: None,
                minitive: None,
            };
            return Ok(Report::new(vec![format!("capacity: invalid: {msg}")], out, Status::Violation));
        }
        Err(e) => return Err(e.into()),
    };
    let classify = |v: Option<(qdt::Event, qdt::Event)>| Classified {
        holds: v.is_none(),
        witness: v.map(|(a, b)| [labels.event(a), labels.event(b)]),
    };
    let maxitive = classify(capacity.maxitivity_violation());
    let minitive = classify(capacity.minitivity_violation());
    let level = |e: qdt::Event| capacity.get(e).rank();
    let detail = |v: Option<(qdt::Event, qdt::Event)>, maxitive: bool| match v {
        None => "yes".to_string(),
        Some((a, b)) => {
            let (joined, op, agg, bound) = if maxitive {
                (a.union(b), "u", "max", level(a).max(level(b)))
            } else {
                (a.intersection(b), "n", "min", level(a).min(level(b)))
            };
            format!(
                "no, sigma({} {op} {}) = {} but {agg}(sigma({}), sigma({})) = {bound}",
                labels.event(a),
                labels.event(b),
                level(joined),
                labels.event(a),
                labels.event(b)
            )
        }
    };
    let lines = vec![
        "capacity: valid".to_string(),
        format!("maxitive: {}", detail(capacity.maxitivity_violation(), true)),
        format!("minitive: {}", detail(capacity.minitivity_violation(), false)),
    ];
    let out = Out {
        valid: true,
        error: None,
        maxitive: Some(maxitive),
        minitive: Some(minitive),
    };
    Ok(Report::new(lines, out, Status::Holds))
}

pub fn parse_axioms(list: &str) -> Result<Vec<AxiomId>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(AxiomId::ALL.to_vec());
    }
    list.split(',')
        .map(|s| s.trim().parse::<AxiomId>().map_err(anyhow::Error::msg))
        .collect()
}

#[derive(Serialize)]
struct Verdict {
    axiom: &'static str,
    id: &'static str,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<IndexMap<&'static str, String>>,
}

fn verdict_line(v: &Verdict) -> String {
    match &v.witness {
        None => format!("{}: holds", v.axiom),
        Some(w) => {
            let fields: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{}: fails {}", v.axiom, fields.join(" "))
        }
    }
}

fn verdicts(rel: &PreferenceRelation, labels: &Labels, axioms: &[AxiomId], budget: Budget) -> Result<Vec<Verdict>> {
    axioms
        .iter()
        .map(|&a| {
            let v = check_axiom_within(rel, a, budget)?;
            Ok(Verdict {
                axiom: a.label(),
                id: a.id(),
                holds: v.holds,
                witness: v.witness.as_ref().map(|w| witness_fields(w, labels)),
            })
        })
        .collect()
}

pub fn check_axioms(path: &Path, axioms: &str, budget: Budget) -> Result<Report> {
    let axioms = parse_axioms(axioms)?;
    let rel = Relation::load(path, budget)?;
    let out = verdicts(&rel.relation, &rel.frame.labels, &axioms, budget)?;
    let lines = out.iter().map(verdict_line).collect();
    let status = if out.iter().all(|v| v.holds) {
        Status::Holds
    } else {
        Status::Violation
    };
    Ok(Report::new(lines, out, status))
}

#[derive(Serialize)]
struct Synthesis {
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    refused: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<IndexMap<String, u16>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<IndexMap<String, u16>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi: Option<IndexMap<String, u16>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unreversed_reading: Option<bool>,
}

pub fn synthesize(path: &Path, mode: SynthesisMode, budget: Budget) -> Result<Report> {
    let Relation { frame, relation } = Relation::load(path, budget)?;
    let labels = &frame.labels;
    let mode_name = match mode {
        SynthesisMode::General => "general",
        SynthesisMode::Optimistic => "optimistic",
        SynthesisMode::Pessimistic => "pessimistic",
    };
    let result = match mode {
        SynthesisMode::General => synthesize_representation_within(&relation, budget).map(|r| (r, None)),
        SynthesisMode::Optimistic | SynthesisMode::Pessimistic => {
            let m = if mode == SynthesisMode::Optimistic {
                Mode::Optimistic
            } else {
                Mode::Pessimistic
            };
            synthesize_possibilistic_within(&relation, m, budget).map(|p| (p.representation.clone(), Some(p)))
        }
    };
    let mut out = Synthesis {
        mode: mode_name,
        refused: None,
        levels: None,
        mu: None,
        sigma: None,
        pi: None,
        classes: None,
        verified: None,
        unreversed_reading: None,
    };
    let mut lines = vec![format!("mode: {mode_name}")];
    let (rep, possibilistic) = match result {
        Ok(r) => r,
        Err(Error::Precondition { axiom, witness }) => {
            let v = Verdict {
                axiom: axiom.label(),
                id: axiom.id(),
                holds: false,
                witness: Some(witness_fields(&witness, labels)),
            };
            lines.push(format!("refused: {}", verdict_line(&v)));
            out.refused = Some(v);
            return Ok(Report::new(lines, out, Status::Violation));
        }
        Err(e) => return Err(e.into()),
    };
    let check = verify_representation(&relation, &rep)?;
    let mu: IndexMap<String, u16> = rep
        .mu()
        .iter()
        .enumerate()
        .map(|(x, l)| (labels.outcome(x), l.rank()))
        .collect();
    let sigma = capacity_table(rep.capacity(), labels);
    let classes: Vec<String> = rep.provenance().iter().map(|a| labels.act(a)).collect();
    let joined = |m: &IndexMap<String, u16>| {
        m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    };
    lines.push(format!("levels: {}", rep.scale().size()));
    lines.push(format!("mu': {}", joined(&mu)));
    lines.push(format!("sigma': {}", joined(&sigma)));
    if let Some(p) = &possibilistic {
        let pi: IndexMap<String, u16> = p
            .possibility
            .values()
            .iter()
            .enumerate()
            .map(|(s, l)| (labels.states[s].clone(), l.rank()))
            .collect();
        lines.push(format!("pi: {}", joined(&pi)));
        out.pi = Some(pi);
        if let Some(u) = &p.unreversed_reading {
            lines.push(format!(
                "unreversed pi reading represents the relation: {}",
                if u.holds { "yes" } else { "no" }
            ));
            out.unreversed_reading = Some(u.holds);
        }
    }
    for (l, act) in classes.iter().enumerate() {
        lines.push(format!("class {l}: {act}"));
    }
    lines.push(format!("verification: {}", if check.holds { "holds" } else { "fails" }));
    out.levels = Some(rep.scale().size());
    out.mu = Some(mu);
    out.sigma = Some(sigma);
    out.classes = Some(classes);
    out.verified = Some(check.holds);
    let status = if check.holds { Status::Holds } else { Status::Violation };
    Ok(Report::new(lines, out, status))
}

pub fn counterexample(kind: Kind, frame: Option<&Path>, budget: Budget) -> Result<Report> {
    match kind {
        Kind::EuRcd => {
            if frame.is_some() {
                bail!("--kind eu-rcd takes no frame");
            }
            let r = eu_dominance_demo();
            let case = |name: &str, c: &DominanceCase, combined: &str| {
                format!(
                    "{name}: EU(f)={:.2} EU(g)={:.2} c={:.2} EU({combined})={:.2} violation={}",
                    c.eu_f, c.eu_g, c.c, c.eu_combined, c.violation
                )
            };
            let lines = vec![
                format!("alpha: {}", r.alpha),
                case("RCD", &r.conjunctive, "f^c"),
                case("RDD", &r.disjunctive, "gvc"),
            ];
            let status = if r.conjunctive.violation || r.disjunctive.violation {
                Status::Violation
            } else {
                Status::Holds
            };
            Ok(Report::new(lines, r, status))
        }
        Kind::Surething => {
            let path = frame.context("--kind surething needs a FRAME")?;
            let frame = Frame::load(path)?;
            let w = find_sure_thing_violation(&frame.frame, budget)?;
            let fields = w.as_ref().map(|w| witness_fields(w, &frame.labels));
            let (line, status) = match &w {
                Some(w) => (
                    format!("Sav 2: fails {}", witness_text(w, &frame.labels)),
                    Status::Violation,
                ),
                None => ("Sav 2: no strict sure-thing violation".to_string(), Status::Holds),
            };
            #[derive(Serialize)]
            struct Out {
                axiom: &'static str,
                found: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<IndexMap<&'static str, String>>,
            }
            let out = Out {
                axiom: AxiomId::Sav2.label(),
                found: fields.is_some(),
                witness: fields,
            };
            Ok(Report::new(vec![line], out, status))
        }
    }
}

fn parse_floats(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("{what}: `{s}` is not a number")))
        .collect()
}

pub fn compare(path: &Path, probabilities: &str, payoffs: Option<&str>, budget: Budget) -> Result<Report> {
    let frame = Frame::load(path)?;
    let f = &frame.frame;
    let probabilities = parse_floats(probabilities, "--probabilities")?;
    let payoffs = match payoffs {
        Some(p) => parse_floats(p, "--payoffs")?,
        None => f.mu().iter().map(|l| f64::from(l.rank())).collect(),
    };
    let space = f.space();
    let eu_rel = induce_eu_preorder(space, &payoffs, &probabilities)?;
    let sugeno_rel = qdt::synthesis::induce_preorder_within(f, budget)?;

    #[derive(Serialize)]
    struct Row {
        act: String,
        sugeno: u16,
        sugeno_rank: u32,
        expected_utility: f64,
        eu_rank: u32,
    }
    let mut rows = Vec::new();
    let mut lines = vec!["act: sugeno (rank) | expected utility (rank)".to_string()];
    for (name, act) in selected_acts(&frame, &[], false)? {
        let u = sugeno_levelcut(f, &act)?.rank();
        let values: Vec<f64> = act.outcomes().iter().map(|&x| payoffs[x]).collect();
        let eu = qdt::expected_utility(&probabilities, &values)?;
        let row = Row {
            act: name,
            sugeno: u,
            sugeno_rank: sugeno_rel.rank(&act)?.unwrap_or_default(),
            expected_utility: eu,
            eu_rank: eu_rel.rank(&act)?.unwrap_or_default(),
        };
        lines.push(format!(
            "{}: {} ({}) | {:.4} ({})",
            row.act, row.sugeno, row.sugeno_rank, row.expected_utility, row.eu_rank
        ));
        rows.push(row);
    }
    let dominance = [AxiomId::Rcd, AxiomId::Rdd];
    let sugeno = verdicts(&sugeno_rel, &frame.labels, &dominance, budget)?;
    let eu = verdicts(&eu_rel, &frame.labels, &dominance, budget)?;
    for v in &sugeno {
        lines.push(format!("sugeno {}", verdict_line(v)));
    }
    for v in &eu {
        lines.push(format!("expected utility {}", verdict_line(v)));
    }
    let diverges = sugeno.iter().zip(&eu).any(|(a, b)| a.holds != b.holds);
    lines.push(format!("divergence: {}", if diverges { "yes" } else { "no" }));
    #[derive(Serialize)]
    struct Out {
        acts: Vec<Row>,
        sugeno: Vec<Verdict>,
        expected_utility: Vec<Verdict>,
        divergence: bool,
    }
    let status = if diverges { Status::Violation } else { Status::Holds };
    Ok(Report::new(
        lines,
        Out {
            acts: rows,
            sugeno,
            expected_utility: eu,
            divergence: diverges,
        },
        status,
    ))
}
