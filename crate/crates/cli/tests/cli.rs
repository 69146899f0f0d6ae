use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperappell")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperappell-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// `[(blade, coeff)]` of a serialized multivector.
fn terms(mv: &Value) -> Vec<(Vec<u64>, String)> {
    mv["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let blade = t["blade"].as_array().unwrap().iter().map(|b| b.as_u64().unwrap()).collect();
            (blade, t["coeff"].as_str().unwrap().to_string())
        })
        .collect()
}

fn blade(ix: &[u64], c: &str) -> (Vec<u64>, String) {
    (ix.to_vec(), c.to_string())
}

#[test]
fn gen_then_verify_round_trip() {
    let families: &[&[&str]] = &[
        &["--family", "canonical"],
        &["--family", "bernoulli"],
        &["--family", "euler"],
        &["--family", "hermite"],
        &["--family", "frobenius-euler", "--lambda", "-2/3"],
    ];
    for fam in families {
        let path = scratch(&format!("{}.json", fam[1]));
        let mut args = vec!["gen", "--n", "3", "--m", "6", "--output", path.to_str().unwrap()];
        args.extend_from_slice(fam);
        let out = run(&args);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());

        let report = json(&run(&["verify", "--input", path.to_str().unwrap()]));
        assert!(report["family"].as_str().unwrap().starts_with(fam[1]));
        assert_eq!(report["intertwining"], true);
        let results = report["results"].as_array().unwrap();
        assert_eq!(results.len(), 7);
        assert!(results.iter().all(|r| r["monogenic"] == true && r["ladder"] == true));
    }
}

#[test]
fn corrupted_input_fails_with_witness() {
    let seq = json(&run(&["gen", "--n", "2", "--m", "5"]));
    let mut bad = seq.clone();
    // phi_3 = x0^3 + 3/2 x0^2 x + 3/2 x0 x^2 + 3/8 x^3; nudge the x^3 term.
    let terms = bad["polys"][3]["terms"].as_array_mut().unwrap();
    let t = terms.iter_mut().find(|t| t["i"] == 0 && t["j"] == 3).unwrap();
    assert_eq!(t["a"], "3/8");
    t["a"] = "1/2".into();
    let path = scratch("corrupt.json");
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();

    let out = run(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let results = report["results"].as_array().unwrap();
    let first_bad = results.iter().position(|r| r["monogenic"] == false).unwrap();
    assert_eq!(first_bad, 3);
    assert_eq!(results[3]["witness"]["check"], "monogenic");
    assert!(results[..3].iter().all(|r| r["witness"].is_null()));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gen", "--n", "2", "--m", "3"]).status.code(), Some(0));
    assert_eq!(run(&["gen", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--n", "0", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--n", "2", "--m", "3", "--family", "frobenius-euler"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen", "--n", "2", "--m", "3", "--family", "frobenius-euler", "--lambda", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["gen", "--n", "2", "--m", "3", "--family", "laguerre"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--input", "/nonexistent/seq.json"]).status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_hyperappell"))
        .args(["gen", "--n", "2", "--m", "2"])
        .env("HYPERAPPELL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shifted_verify_reports_intertwining_only() {
    let report = json(&run(&["verify", "--n", "4", "--m", "8", "--shift", "2"]));
    assert_eq!(report["intertwining"], true);
    assert!(report["results"].as_array().unwrap().is_empty());
}

#[test]
fn eval_examples() {
    let v = json(&run(&["eval", "--n", "2", "--m", "3", "--point", "1,2,0"]));
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 4);
    assert_eq!(terms(&values[0]["value"]), vec![blade(&[], "1")]);
    assert_eq!(terms(&values[1]["value"]), vec![blade(&[], "1"), blade(&[1], "1")]);

    let v = json(&run(&["eval", "--n", "3", "--m", "4", "--point", "0,0,0,0"]));
    let values = v["values"].as_array().unwrap();
    assert_eq!(terms(&values[0]["value"]), vec![blade(&[], "1")]);
    assert!(values[1..].iter().all(|x| terms(&x["value"]).is_empty()));

    // n = 1: phi_k(1, 1) = (1 + e1)^k.
    let v = json(&run(&["eval", "--n", "1", "--m", "4", "--point", "1,1"]));
    let values = v["values"].as_array().unwrap();
    assert_eq!(terms(&values[2]["value"]), vec![blade(&[1], "2")]);
    assert_eq!(terms(&values[3]["value"]), vec![blade(&[], "-2"), blade(&[1], "2")]);
    assert_eq!(terms(&values[4]["value"]), vec![blade(&[], "-4")]);
}

#[test]
fn eval_rejects_bad_points() {
    assert_eq!(run(&["eval", "--n", "2", "--m", "2", "--point", "0.5,1,0"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--n", "2", "--m", "2", "--point", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--n", "2", "--m", "2", "--point", "1/0,2,0"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--n", "2", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn eval_float_rendering() {
    let v = json(&run(&["eval", "--n", "2", "--m", "2", "--point", "1/3,1,0", "--float"]));
    let v1 = &v["values"][1];
    assert_eq!(terms(&v1["value"]), vec![blade(&[], "1/3"), blade(&[1], "1/2")]);
    let f = v1["float"].as_array().unwrap();
    assert!((f[0]["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn matrices_examples() {
    let v = json(&run(&["matrices", "--m", "3", "--family", "bernoulli"]));
    let rows = |name: &str| -> Vec<Vec<String>> {
        v[name]["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
            .collect()
    };
    assert_eq!(rows("creation")[3], vec!["0", "0", "3", "0"]);
    assert_eq!(rows("pascal")[3], vec!["1", "3", "3", "1"]);
    assert_eq!(rows("transfer")[2], vec!["1/6", "-1", "1"]);
    assert!(v.get("derivation").is_none());

    let v = json(&run(&["matrices", "--n", "3", "--m", "3", "--tilde"]));
    let sub: Vec<&str> = (1..=3).map(|i| v["derivation"]["rows"][i][i - 1].as_str().unwrap()).collect();
    assert_eq!(sub, vec!["-3", "-2", "-5"]);
    assert_eq!(run(&["matrices", "--m", "3", "--tilde"]).status.code(), Some(2));

    let v = json(&run(&["matrices", "--m", "2", "--x0", "-1/2"]));
    assert_eq!(v["pascal"]["rows"][2], serde_json::json!(["1/4", "-1", "1"]));
}

#[test]
fn exp_examples() {
    let v = json(&run(&["exp", "--point", "0,0", "--order", "6"]));
    assert_eq!(terms(&v["value"]), vec![blade(&[], "1")]);
    let v = json(&run(&["exp", "--point", "1,0,0", "--order", "3"]));
    assert_eq!(terms(&v["value"]), vec![blade(&[], "8/3")]);
    assert_eq!(run(&["exp", "--point", "1", "--order", "3"]).status.code(), Some(2));
}

#[test]
fn csv_and_pretty_formats() {
    let out = run(&["gen", "--n", "2", "--m", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "k,i,j,a\n0,0,0,1\n1,1,0,1\n1,0,1,1/2\n2,2,0,1\n2,1,1,1\n2,0,2,1/2\n");

    let out = run(&["verify", "--n", "2", "--m", "3", "--format", "pretty"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("PASS\n"));
}
