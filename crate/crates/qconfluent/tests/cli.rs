use std::fs;
use std::path::PathBuf;

use qconfluent::cli::{run_from, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use qconfluent::equations::{random_params, Family};
use qconfluent::runner::trial_rng;
use qconfluent::solutions::catalog_ids;

fn run(args: &[&str]) -> i32 {
    run_from(std::iter::once("qconfluent").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qconfluent-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run_to(args: &[&str], name: &str) -> (i32, String) {
    let path = scratch(name);
    let p = path.to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["-o", p]);
    let code = run(&full);
    (code, fs::read_to_string(&path).unwrap_or_default())
}

#[test]
fn catalog_lists_exactly_the_solution_ids() {
    let (code, text) = run_to(&["catalog"], "catalog.json");
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let listed: Vec<String> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["id"].as_str().unwrap().to_string())
        .collect();
    let ids: Vec<String> = catalog_ids().iter().map(ToString::to_string).collect();
    assert_eq!(listed, ids);
    let (code, csv) = run_to(&["catalog", "--format", "csv"], "catalog.csv");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(csv.lines().count(), ids.len() + 1);
}

#[test]
fn verify_single_id_with_a_params_file() {
    let p = random_params(Family::C12, &mut trial_rng(1, "cli", 0));
    let path = scratch("c12.json");
    fs::write(&path, p.to_json()).unwrap();
    let (code, text) = run_to(
        &["verify", "--id", "C12:T31-ii", "--params", path.to_str().unwrap()],
        "one.json",
    );
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["command"], "verify");
}

#[test]
fn malformed_params_are_usage_errors() {
    let text = random_params(Family::C12, &mut trial_rng(1, "cli", 1)).to_json();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let q = v["q"].as_str().unwrap().to_string();
    let path = scratch("bad.json");
    fs::write(&path, text.replacen(&format!("\"{q}\""), "\"1/0\"", 1)).unwrap();
    assert_eq!(
        run(&["verify", "--id", "C12:T31-ii", "--params", path.to_str().unwrap()]),
        EXIT_USAGE
    );
    assert_eq!(run(&["verify", "--id", "C12:T99"]), EXIT_USAGE);
    assert_eq!(run(&["verify"]), EXIT_USAGE);
    assert_eq!(run(&["verify", "--all", "--window", "0"]), EXIT_USAGE);
    assert_eq!(run(&["no-such-command"]), EXIT_USAGE);
}

#[test]
fn degenerate_exit_codes() {
    let (code, text) = run_to(&["degenerate", "--arrow", "D2-C12", "--trials", "5"], "deg1.json");
    assert_eq!(code, EXIT_PASS, "{text}");
    let (code, text) = run_to(&["degenerate", "--arrow", "all", "--trials", "2"], "deg4.json");
    assert_eq!(code, EXIT_PASS);
    for name in ["D2-C12", "C12-B02", "D2-C21", "C21-B20"] {
        assert!(text.contains(name), "{name}");
    }
    assert_eq!(run(&["degenerate", "--arrow", "B02-D2"]), EXIT_USAGE);
    assert_eq!(run(&["degenerate", "--u0", "1/0"]), EXIT_USAGE);
}

#[test]
fn limit_exit_codes() {
    let (code, csv) = run_to(&["limit", "kummer", "--format", "csv"], "kummer.csv");
    assert_eq!(code, EXIT_PASS);
    assert!(csv.starts_with("eps,max_abs_diff,max_abs_diff_decimal"));
    assert_eq!(
        run(&["limit", "kummer-c21", "-o", scratch("k21.json").to_str().unwrap()]),
        EXIT_PASS
    );
    // increasing differences fail the gate
    let (code, _) = run_to(&["limit", "kummer", "--eps", "1/1000,1/100,1/10"], "kummer-rev.json");
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(run(&["limit", "kummer", "--al1", "1/3"]), EXIT_USAGE);
    let (code, csv) = run_to(
        &["limit", "hermite", "--B", "2", "--m", "10,100", "--format", "csv"],
        "hermite.csv",
    );
    assert_eq!(code, EXIT_PASS);
    assert!(csv.lines().count() > 1);
    let (code, text) = run_to(&["limit", "hermite-b20"], "b20.json");
    assert_eq!(code, EXIT_PASS);
    assert!(text.contains("\"matches\": true"));
}

#[test]
fn fixed_seed_gives_identical_reports() {
    let args = [
        "verify",
        "--id",
        "C21:T51-i:12",
        "--id",
        "B20:T53-i:12",
        "--trials",
        "3",
        "--order",
        "10",
        "--seed",
        "42",
    ];
    let (c1, a) = run_to(&args, "det-a.json");
    let (c2, b) = run_to(&args, "det-b.json");
    assert_eq!((c1, c2), (EXIT_PASS, EXIT_PASS));
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let (_, c) = run_to(
        &[
            "verify",
            "--id",
            "C21:T51-i:12",
            "--id",
            "B20:T53-i:12",
            "--trials",
            "3",
            "--order",
            "10",
            "--seed",
            "43",
        ],
        "det-c.json",
    );
    assert_ne!(a, c);
}

#[test]
fn gauge_check_passes() {
    let (code, text) = run_to(&["gauge-check", "--trials", "5", "--order", "10"], "gauge.json");
    assert_eq!(code, EXIT_PASS, "{text}");
}
