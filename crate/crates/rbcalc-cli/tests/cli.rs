use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbcalc")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("report is JSON");
    (out.status.code().unwrap(), v)
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn expand_prints_the_differential() {
    let (code, v) = json(&["expand", "m2"]);
    assert_eq!((code, v["result"]["expansion"].as_str()), (0, Some("0")));
    let (_, v) = json(&["expand", "T1"]);
    assert_eq!(v["result"]["expansion"], "0");
    let (_, v) = json(&["expand", "m3"]);
    // the general m_n formula; see the notes on the sign of ∂m3
    assert_eq!(v["result"]["expansion"], "−m2∘1 m2 + m2∘2 m2");
    let (_, v) = json(&["expand", "T2"]);
    let t2 = v["result"]["expansion"].as_str().unwrap();
    assert!(t2.contains("l*T1∘1 m2") && t2.contains("− (m2∘1 T1)∘2 T1"), "{t2}");
    let (code, v) = json(&["expand", "m1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn d2_and_minimal_model() {
    for a in ["2", "4"] {
        let (code, v) = json(&["verify-d2", "--max-arity", a]);
        assert_eq!(code, 0);
        assert_eq!(v["passed"], true);
    }
    assert_eq!(run(&["verify-d2", "--max-arity", "1"]).status.code(), Some(2));
    for (a, w) in [("4", "3"), ("3", "5")] {
        let (code, v) = json(&["verify-minimal", "--max-arity", a, "--max-weight", w]);
        assert_eq!(code, 0, "{v}");
        assert!(check(&v, "dH_plus_Hd_is_identity")["checked"].as_u64().unwrap() > 0);
    }
}

/// Betti numbers of `k` with `T = 0`, `λ = 0`, from the scalar differentials:
/// `δ^n = (n odd)`, `∂^n = 0`, `Φ^0 = id`, `Φ^n = 0` for `n ≥ 1`.
fn k_zero_oracle(max: usize) -> [Vec<u64>; 3] {
    let delta = |n: usize| u64::from(n % 2 == 1);
    let alg: Vec<u64> = (0..=max).map(|n| 1 - delta(n) - if n > 0 { delta(n - 1) } else { 0 }).collect();
    let rbo = vec![1; max + 1];
    // cone: C^0 = k, C^n = k², d^0 has rank 1 (through Φ^0), d^n has rank δ^n
    let rank = |n: usize| if n == 0 { 1 } else { delta(n) };
    let rba = (0..=max)
        .map(|n| {
            let dim = if n == 0 { 1 } else { 2 };
            dim - rank(n) - if n > 0 { rank(n - 1) } else { 0 }
        })
        .collect();
    [alg, rbo, rba]
}

#[test]
fn cohomology_table_matches_the_hand_oracle() {
    let (code, v) = json(&["cohomology", &data("k_zero.json"), "--max-degree", "4"]);
    assert_eq!(code, 0);
    let [alg, rbo, rba] = k_zero_oracle(4);
    let got = |k: &str| -> Vec<u64> { v["result"]["betti"][k].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect() };
    assert_eq!(got("ALG"), alg);
    assert_eq!(got("RBO"), rbo);
    assert_eq!(got("RBA"), rba);

    // weight 1 makes the operator complex acyclic above degree 0
    let (_, v) = json(&["cohomology", &data("k_zero.json"), "--complex", "rbo", "--lambda", "1", "--max-degree", "4"]);
    assert_eq!(v["result"]["betti"]["RBO"], serde_json::json!([1, 0, 0, 0, 0]));
    assert!(v["result"]["betti"].get("ALG").is_none());
}

#[test]
fn cohomology_input_errors() {
    let (code, v) = json(&["cohomology", &data("malformed.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    let (code, v) = json(&["cohomology", &data("nonassociative.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "invalid");
    assert!(v["error"]["message"].as_str().unwrap().contains("associativity"));
    let (code, _) = json(&["cohomology", &data("k_zero.json"), "--complex", "xyz"]);
    assert_eq!(code, 2);
    let (code, v) = json(&["cohomology", &data("missing.json")]);
    assert_eq!((code, &v["error"]["kind"]), (2, &Value::from("io")));
    let (code, _) = json(&["cohomology", &data("k_zero.json"), "--lambda", "1/0"]);
    assert_eq!(code, 2);
}

#[test]
fn maurer_cartan_verdicts() {
    let (code, v) = json(&["mc-check", &data("minus_lambda.json")]);
    assert_eq!(code, 0, "{v}");
    assert!(check(&v, "twisted_l1_is_minus_cone_differential")["checked"].as_u64().unwrap() > 0);
    let (code, v) = json(&["mc-check", &data("k_zero.json")]);
    assert_eq!(code, 0, "{v}");

    let (code, v) = json(&["mc-check", &data("identity_weight_zero.json")]);
    assert_eq!(code, 1);
    let mc = check(&v, "maurer_cartan");
    assert_eq!(mc["failed"], 1);
    assert!(mc["first_counterexample"].as_str().unwrap().contains("e0⊗e0"));
    assert_eq!(check(&v, "agrees_with_direct_check")["failed"], 0);
    assert_eq!(v["result"]["rota_baxter"], false);
}

#[test]
fn homotopy_rota_baxter_checks() {
    for arity in ["1", "2", "3", "4"] {
        let (code, v) = json(&["check-hrb", &data("minus_lambda.json"), "--max-arity", arity]);
        assert_eq!(code, 0, "{v}");
    }
    let (code, _) = json(&["check-hrb", &data("zero_hrb.json"), "--max-arity", "4"]);
    assert_eq!(code, 0);
    let (code, v) = json(&["check-hrb", &data("dual_numbers_hrb.json"), "--max-arity", "2"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["check-hrb", &data("dual_numbers_no_homotopy.json"), "--max-arity", "2"]);
    assert_eq!(code, 1);
    assert_eq!(check(&v, "rota_baxter_identity")["failed"], 1);
    assert_eq!(check(&v, "identities_match_morphism_condition")["failed"], 0);
    let (code, _) = json(&["check-hrb", &data("malformed.json")]);
    assert_eq!(code, 2);
}

#[test]
fn reports_are_reproducible() {
    let args = ["linfty-sweep", "--samples", "6", "--max-arity", "3", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("seed: 11"));
    let (_, v) = json(&args);
    assert_eq!(v["seed"], 11);
    assert!(v.get("wall_time_ms").is_none());
    let mut timed = args.to_vec();
    timed.push("--timing");
    let (_, v) = json(&timed);
    assert!(v["wall_time_ms"].is_u64());

    let text = |args: &[&str]| run(args).stdout;
    let e = ["expand", "T3", "--seed", "5"];
    assert_eq!(text(&e), text(&e));
}
