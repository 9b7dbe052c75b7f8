use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn qdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdt"))
        .args(args)
        .env_remove("QDT_BUDGET")
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = qdt(args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut args = args.to_vec();
    args.push("--json");
    let (code, stdout, _) = run(&args);
    (code, serde_json::from_str(&stdout).expect("json report"))
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

/// Sugeno integral by its outcome-indexed definition, written out for the
/// two-state frame in `frame.json`.
fn weather_sugeno(rain: usize, sun: usize) -> u16 {
    let mu = [0u16, 1, 2];
    let sigma = |r: bool, s: bool| match (r, s) {
        (false, false) => 0u16,
        (true, false) => 1,
        (false, true) => 0,
        (true, true) => 2,
    };
    let outcomes = [rain, sun];
    outcomes
        .iter()
        .map(|&x| {
            let at_least = |o: usize| mu[o] >= mu[x];
            mu[x].min(sigma(at_least(outcomes[0]), at_least(outcomes[1])))
        })
        .max()
        .unwrap()
}

#[test]
fn eval_matches_the_integral_for_every_act() {
    let (code, v) = json(&["eval", &path("frame.json"), "--all"]);
    assert_eq!(code, 0);
    let acts = v["acts"].as_array().unwrap();
    assert_eq!(acts.len(), 9);
    let names = ["wet", "dry", "picnic"];
    for a in acts {
        let text = a["outcomes"].as_str().unwrap();
        let parts: Vec<usize> = text
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| names.iter().position(|n| *n == p).unwrap())
            .collect();
        let expected = weather_sugeno(parts[0], parts[1]);
        for method in ["levelcut", "outcome", "median"] {
            assert_eq!(a[method], expected, "{text} {method}");
        }
    }
    assert_eq!(v["agree"], true);
}

#[test]
fn eval_of_a_constant_act_is_its_utility() {
    for (act, mu) in [("wet,wet", "0"), ("dry,dry", "1"), ("picnic,picnic", "2")] {
        let (code, out, _) = run(&["eval", &path("frame.json"), "--act", act]);
        assert_eq!(code, 0);
        let first = out.lines().next().unwrap();
        assert_eq!(first, format!("({act}): levelcut={mu} outcome={mu} median={mu}"));
    }
}

#[test]
fn eval_uses_declared_names() {
    let (code, out, _) = run(&["eval", &path("frame.json"), "--method", "levelcut"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "stay (dry,dry): levelcut=1\ngo (wet,picnic): levelcut=0\ngamble (picnic,wet): levelcut=1\n"
    );
}

#[test]
fn check_capacity_classifies_and_rejects() {
    let (code, out, _) = run(&["check-capacity", &path("frame.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("capacity: valid"));
    assert!(out.contains("minitive: yes"));
    assert!(out.contains("maxitive: no, sigma({sun} u {rain}) = 2"));

    let (code, v) = json(&["check-capacity", &path("possibility.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["maxitive"]["holds"], true);
    assert_eq!(v["minitive"]["holds"], false);

    let (code, v) = json(&["check-capacity", &path("necessity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["minitive"]["holds"], true);

    let (code, out, _) = run(&["check-capacity", &path("not_monotone.json")]);
    assert_eq!(code, 1);
    assert_eq!(
        out.trim(),
        "capacity: invalid: not monotone: sigma({rain}) = 2 > sigma({rain,sun}) = 1"
    );
}

#[test]
fn check_axioms_on_an_optimistic_relation() {
    let (code, out, _) = run(&["check-axioms", &path("optimistic.json"), "--axioms", "DD,OPTIMISM"]);
    assert_eq!(code, 0);
    assert_eq!(out, "DD: holds\nOptimism: holds\n");
}

#[test]
fn check_axioms_on_a_pessimistic_relation() {
    let (code, out, _) = run(&["check-axioms", &path("pessimistic.json"), "--axioms", "cd,pessimism,dd"]);
    assert_eq!(code, 1);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "CD: holds");
    assert_eq!(lines[1], "Pessimism: holds");
    assert!(lines[2].starts_with("DD: fails f="), "{}", lines[2]);
}

#[test]
fn check_axioms_reports_every_axiom_with_labels() {
    let (code, v) = json(&["check-axioms", &path("induced.json")]);
    assert_eq!(code, 1);
    let verdicts = v.as_array().unwrap();
    let labels: Vec<&str> = verdicts.iter().map(|x| x["axiom"].as_str().unwrap()).collect();
    assert_eq!(
        labels,
        [
            "Sav 1", "Sav 2", "Sav 3", "Sav 4", "Sav 4'", "Sav 5", "WS 3", "RCD", "RDD", "CD", "DD",
            "CoD", "Optimism", "Pessimism"
        ]
    );
    let holds = |l: &str| verdicts.iter().find(|x| x["axiom"] == l).unwrap()["holds"].as_bool().unwrap();
    for l in ["Sav 1", "Sav 5", "WS 3", "RCD", "RDD", "CoD"] {
        assert!(holds(l), "{l}");
    }
    for l in ["Sav 2", "Sav 3"] {
        assert!(!holds(l), "{l}");
    }
    let sav2 = verdicts.iter().find(|x| x["axiom"] == "Sav 2").unwrap();
    for k in ["f", "g", "h", "h'", "A"] {
        assert!(sav2["witness"][k].is_string(), "{k}");
    }
}

#[test]
fn human_and_json_verdicts_agree() {
    let (_, text, _) = run(&["check-axioms", &path("induced.json")]);
    let (_, v) = json(&["check-axioms", &path("induced.json")]);
    for (line, verdict) in text.lines().zip(v.as_array().unwrap()) {
        let label = verdict["axiom"].as_str().unwrap();
        let expected = if verdict["holds"].as_bool().unwrap() {
            format!("{label}: holds")
        } else {
            let fields: Vec<String> = verdict["witness"]
                .as_object()
                .unwrap()
                .iter()
                .map(|(k, v)| format!("{k}={}", v.as_str().unwrap()))
                .collect();
            format!("{label}: fails {}", fields.join(" "))
        };
        assert_eq!(line, expected);
    }
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        vec!["check-axioms", "induced.json"],
        vec!["synthesize", "induced.json"],
        vec!["eval", "frame.json", "--all"],
    ] {
        let mut args: Vec<String> = args.into_iter().map(String::from).collect();
        args[1] = path(&args[1]);
        args.push("--json".into());
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = qdt(&args).stdout;
        let b = qdt(&args).stdout;
        assert_eq!(a, b);
    }
}

#[test]
fn synthesis_recovers_the_frame() {
    let (code, v) = json(&["synthesize", &path("induced.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(v["levels"], 3);
    assert_eq!(v["mu"]["wet"], 0);
    assert_eq!(v["mu"]["dry"], 1);
    assert_eq!(v["mu"]["picnic"], 2);
    assert_eq!(v["sigma"]["{rain}"], 1);
    assert_eq!(v["sigma"]["{sun}"], 0);
    assert_eq!(v["sigma"]["{rain,sun}"], 2);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn possibilistic_synthesis_recovers_pi() {
    for (rel, mode) in [("optimistic.json", "optimistic"), ("pessimistic.json", "pessimistic")] {
        let (code, v) = json(&["synthesize", &path(rel), "--mode", mode]);
        assert_eq!(code, 0, "{mode}");
        assert_eq!(v["verified"], true);
        assert_eq!(v["pi"]["s0"], 2);
        assert_eq!(v["pi"]["s1"], 1);
        assert_eq!(v["pi"]["s2"], 0);
    }
}

#[test]
fn synthesis_refusal_names_the_axiom() {
    let (code, out, _) = run(&["synthesize", &path("induced.json"), "--mode", "optimistic"]);
    assert_eq!(code, 1);
    assert!(out.contains("refused: DD: fails f="), "{out}");
}

#[test]
fn eu_dominance_demo_numbers() {
    let (code, out, _) = run(&["counterexample", "--kind", "eu-rcd"]);
    assert_eq!(code, 1);
    let rcd = out.lines().find(|l| l.starts_with("RCD")).unwrap();
    assert!(rcd.contains("EU(f)=930.14"));
    assert!(rcd.contains("EU(g)=9.79"));
    assert!(rcd.contains("EU(f^c)=9.44"));
}

#[test]
fn sure_thing_counterexample() {
    let (code, v) = json(&["counterexample", "--kind", "surething", &path("sure_thing.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["axiom"], "Sav 2");
    assert_eq!(v["found"], true);
    let (code, _, _) = run(&["counterexample", "--kind", "surething", &path("possibility.json")]);
    assert_eq!(code, 0);
}

#[test]
fn compare_flags_expected_utility_divergence() {
    let (code, v) = json(&["compare", &path("frame.json"), "--probabilities", "0.5,0.5"]);
    assert_eq!(code, 1);
    assert_eq!(v["divergence"], true);
    for verdict in v["sugeno"].as_array().unwrap() {
        assert_eq!(verdict["holds"], true);
    }
    assert!(v["expected_utility"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["holds"] == false));
    let stay = &v["acts"][0];
    assert_eq!(stay["act"], "stay");
    assert_eq!(stay["expected_utility"], 1.0);
}

#[test]
fn ranked_relation_document() {
    let (code, out, _) = run(&["synthesize", &path("ranked.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("mu': bad=0 good=1"));
}

#[test]
fn malformed_documents_exit_2_with_field_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        "{\"scale\": 3,\n \"states\": [\"a\"], \"outcomes\": [\"x\"], \"mu\": {\"x\": 0},\n \"capacity\": {\"kind\": \"table\", \"table\": [{\"event\": [], \"levle\": 0}]}}",
    )
    .unwrap();
    let (code, out, err) = run(&["eval", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("levle"), "{err}");
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("capacity"), "{err}");

    std::fs::write(&file, "{\"scale\": 3, \"states\": [\"a\"], \"outcomes\": [\"x\"], \"mu\": {\"y\": 0}, \"capacity\": {\"kind\": \"possibility\", \"pi\": {\"a\": 2}}}").unwrap();
    let (code, _, err) = run(&["eval", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("mu"), "{err}");
}

#[test]
fn unreferenced_labels_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rel.json");
    std::fs::write(
        &file,
        format!(
            "{{\"frame\": {:?}, \"ranks\": [{{\"act\": \"nowhere\", \"rank\": 0}}]}}",
            path("frame.json")
        ),
    )
    .unwrap();
    let (code, _, err) = run(&["check-axioms", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("nowhere"), "{err}");
}

#[test]
fn budget_overflow_reports_the_space_size() {
    let out = Command::new(env!("CARGO_BIN_EXE_qdt"))
        .args(["check-axioms", &path("induced.json"), "--axioms", "Sav2"])
        .env("QDT_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("6561"), "{err}");

    let (code, _, err) = run(&["--budget", "10", "synthesize", &path("induced.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("budget is 10"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["eval"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check-axioms", &path("induced.json"), "--axioms", "Sav9"]).0, 2);
    assert_eq!(run(&["counterexample", "--kind", "eu-rcd", &path("frame.json")]).0, 2);
}
