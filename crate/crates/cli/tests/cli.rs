use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mascheroni"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "invalid JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn eval_gamma_one_is_exactly_one() {
    let out = run(&["eval", "--seq", "gamma", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rows"][0]["value"], "1");
    assert_eq!(v["metadata"]["precision"], 128);
    assert!(v["metadata"]["version"]
        .as_str()
        .unwrap()
        .starts_with("mascheroni "));
}

#[test]
fn eval_range_uses_exact_split() {
    let out = run(&[
        "eval", "--seq", "vfam", "--a", "3/2", "--b", "-5/12", "--from", "3", "--to", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    // H_1 + (3/2*3 - 5/12)/(3*2) = 1 + 49/72
    assert_eq!(rows[0]["rational_part"], "121/72");
    assert_eq!(rows[0]["log_argument"], "3");
}

#[test]
fn optimize_reports_best_constants() {
    let out = run(&["optimize", "--order", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json(&out)["rows"][0];
    assert_eq!(row["a_star"], "3/2");
    assert_eq!(row["b_star"], "-5/12");
    assert_eq!(row["next_coeff"], "1/4");
    assert_eq!(row["sequence_limit"], "1/12");
}

#[test]
fn theorem_sweep_passes() {
    let out = run(&[
        "sweep-bounds",
        "--entry",
        "theorem22",
        "--from",
        "9",
        "--to",
        "100",
        "--precision",
        "192",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 92);
    assert!(rows.iter().all(|r| r["verdict"] == "certified-true"));
    assert_eq!(v["summary"]["undecided"], 0);
}

#[test]
fn sweep_csv_columns() {
    let out = run(&[
        "sweep-bounds",
        "--entry",
        "young",
        "--to",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,lower,value_lo,value_hi,upper,verdict,margin")
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    assert_eq!(first[5], "certified-true");
    assert!(first[2].contains('.') && !first[2].contains(';'));
}

#[test]
fn expand_json_round_trips_byte_for_byte() {
    for args in [
        &["expand", "--order", "8"][..],
        &["expand", "--a", "3/2", "--order", "6"][..],
        &[
            "expand",
            "--deviation",
            "--a",
            "2",
            "--b",
            "-1",
            "--order",
            "5",
        ][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&reparsed).unwrap();
        assert_eq!(again, text.trim_end_matches('\n'));
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "rate",
        "--seq",
        "r",
        "--grid-start",
        "8",
        "--grid-stop",
        "64",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["enclose", "--precision", "96"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn certify_targets() {
    let p = json(&run(&["certify", "--target", "P"]));
    let shifted: Vec<&str> = p["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["shifted"].as_str().unwrap())
        .collect();
    assert_eq!(shifted, ["160", "1200", "2348", "2055", "875", "150"]);
    let g = run(&["certify", "--target", "g"]);
    assert_eq!(g.status.code(), Some(0));
    let g = json(&g);
    assert_eq!(
        g["summary"]["conclusion"],
        "t_n strictly increasing for n >= 9"
    );
    assert_eq!(g["summary"]["identity_holds"], true);
}

#[test]
fn enclose_default_and_bootstrap() {
    let v = json(&run(&["enclose", "--precision", "64"]));
    assert_eq!(v["rows"][0]["method"], "bootstrap");
    let v = json(&run(&["enclose", "--precision", "200"]));
    assert_eq!(v["rows"][0]["method"], "series");
    let out = run(&["enclose", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn falsified_fixture_exits_one() {
    let out = run(&[
        "sweep-bounds",
        "--entry",
        "fixture-falsified",
        "--from",
        "1",
        "--to",
        "5",
        "--precision",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["summary"]["certified_false"], 5);
}

#[test]
fn equality_fixture_exits_three() {
    let out = run(&[
        "sweep-bounds",
        "--entry",
        "fixture-equality",
        "--from",
        "1",
        "--to",
        "2",
        "--precision",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["rows"][0]["verdict"], "undecided");
    assert_eq!(v["rows"][1]["verdict"], "certified-true");
    assert_eq!(v["summary"]["max_precision"], 1024);
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["sweep-bounds", "--entry", "nobody", "--to", "10"][..],
        &["eval", "--seq", "delta", "--n", "3"][..],
        &["eval", "--seq", "gamma", "--n", "3", "--precision", "many"][..],
        &["expand", "--a", "1.5"][..],
        &["eval", "--seq", "vfam", "--n", "3"][..],
        &[
            "sweep-bounds",
            "--entry",
            "theorem22",
            "--from",
            "8",
            "--to",
            "10",
        ][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
