use std::process::{Command, Output};

use serde_json::Value;

fn racah(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_racah"))
        .args(args)
        .env_remove("RACAH_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn hahn_convolution_json_report() {
    let o = racah(&["verify", "hahn-convolution", "--N", "4", "--params", "1/2,3/2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["suite", "params", "scope", "seed", "checks"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["suite"], "hahn-convolution");
    assert_eq!(v["params"], serde_json::json!(["1/2", "3/2"]));
    assert_eq!(v["scope"]["N"], 4);
    assert_eq!(v["seed"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["name"].is_string());
        assert_eq!(c["pass"], true);
    }
    assert!(v["elapsed_ms"].is_null());
}

#[test]
fn inadmissible_parameters_exit_3() {
    let o = racah(&["verify", "hahn-convolution", "--N", "3", "--params", "-1,2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("λ₁ ∈ {0,…,−(N−1)}"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn pair_violation_is_listed() {
    let o = racah(&["table", "--family", "hahn", "--N", "3", "--params", "1/2,-5/2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("λ₁+λ₂"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "no-such-suite"][..],
        &["verify", "hahn-convolution", "--N", "x"],
        &["frobnicate"],
        &["verify", "racah-convolution", "--params", "1,2"],
        &["verify", "hahn-convolution", "--params", "1/0,2"],
        &["schemes", "eigencheck", "--scheme", "1|2|3 -> 123"],
        &["schemes", "enumerate", "--n", "9"],
    ] {
        let o = racah(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn enumerate_n4_with_families() {
    let o = racah(&["schemes", "enumerate", "--n", "4", "--dedupe"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("18 schemes"), "{out}");
    assert!(out.contains("15 families"), "{out}");

    let o = racah(&["schemes", "enumerate", "--n", "4", "--dedupe", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schemes"].as_array().unwrap().len(), 18);
    assert_eq!(v["families"].as_array().unwrap().len(), 15);
    assert_eq!(v["schemes"][0], "1|2|3|4 -> 12|3|4 -> 123|4 -> 1234");
}

#[test]
fn output_is_deterministic() {
    for format in ["text", "json", "csv"] {
        let args = ["verify", "racah-convolution", "--N", "3", "--seed", "5", "--format", format];
        let a = racah(&args);
        let b = racah(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{format}");
        assert_eq!(a.stderr, b.stderr, "{format}");
    }
}

#[test]
fn output_does_not_depend_on_jobs() {
    let base = ["schemes", "eigencheck", "--n", "3", "--D", "4", "--K", "3", "--format", "json"];
    let one = racah(&[&base[..], &["--jobs", "1"]].concat());
    let four = racah(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn sampled_parameters_are_echoed() {
    let o = racah(&["verify", "gamma-sums", "--family", "racah", "--N", "3", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let err = stderr(&o);
    let sampled = err
        .lines()
        .find_map(|l| l.strip_prefix("params sampled from seed 2: "))
        .expect("echo line");
    assert!(stdout(&o).contains(&format!("params: {sampled}")));
    assert!(stdout(&o).contains("seed: 2"));
}

#[test]
fn text_and_json_agree() {
    let args = ["verify", "tridiagonal", "--side", "hahn-y", "--N", "5", "--params", "2/3,5/4"];
    let text = stdout(&racah(&args));
    let json = stdout(&racah(&[&args[..], &["--format", "json"]].concat()));
    let v: Value = serde_json::from_str(&json).unwrap();
    for c in v["checks"].as_array().unwrap() {
        let status = if c["pass"] == true { "PASS" } else { "FAIL" };
        let line = format!("{status}  {}", c["name"].as_str().unwrap());
        assert!(text.contains(&line), "{line} not in {text}");
    }
}

#[test]
fn csv_has_one_header() {
    let o = racah(&["verify", "tridiagonal", "--family", "hahn", "--N", "3", "--format", "csv"]);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("suite,")).count(), 1);
    assert_eq!(out.lines().count(), 1 + 8);
}

#[test]
fn expand_matches_closed_form() {
    for family in ["hahn", "racah"] {
        for direction in ["forward", "inverse"] {
            let o = racah(&["expand", direction, "--family", family, "--N", "3", "--format", "json"]);
            assert_eq!(o.status.code(), Some(0), "{family} {direction}");
            let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
            assert_eq!(v["matches_closed_form"], true);
            assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
        }
    }
}

#[test]
fn hahn_expansion_example() {
    let o = racah(&["expand", "--N", "1", "--params", "1,2"]);
    let out = stdout(&o);
    assert!(out.contains("w_0 = (1) v_0 + (1) v_1"), "{out}");
    assert!(out.contains("w_1 = (1) v_0 + (-2) v_1"), "{out}");
}

#[test]
fn table_json_and_out_file() {
    let dir = std::env::temp_dir().join(format!("racah-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let o = racah(&[
        "table", "--family", "hahn", "--N", "3", "--params", "1,2", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["gamma"], "5/2");
    assert_eq!(v["N"], 3);
    assert_eq!(v["values"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_adds_elapsed() {
    let o = racah(&["verify", "counting", "--n", "4", "--timing", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn every_suite_passes_at_small_size() {
    for suite in [
        "hahn-algebra",
        "racah-algebra",
        "hahn-convolution",
        "racah-convolution",
        "orthogonality",
        "gamma-sums",
        "tridiagonal",
        "conjugation",
        "cross-family",
        "counting",
    ] {
        let o = racah(&["verify", suite, "--N", "2", "--D", "4"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}
