//! End-to-end checks of the `congr` binary: exit codes, report schema, and
//! determinism of non-timing content.

use std::process::{Command, Output};

fn congr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_congr"))
        .args(args)
        .env_remove("CONGR_OUT")
        .env_remove("CONGR_JOBS")
        .output()
        .expect("spawn congr")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_small_range_clean() {
    let out = congr(&[
        "verify",
        "--primes",
        "7..13",
        "--claims",
        "C-T1,C-EQ23,C-MHS-A",
        "--backend",
        "both",
        "--jobs",
        "1",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // 3 claims x 3 primes x 2 backends + summary
    assert_eq!(lines.len(), 19);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    for key in [
        "claim",
        "prime",
        "status",
        "achieved_valuation",
        "required_valuation",
        "backend",
        "status_tag",
        "millis",
    ] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(last["record_type"], "summary");
    assert_eq!(last["refuted"], 0);
}

#[test]
fn verify_single_prime_t5() {
    let out = congr(&["verify", "--primes", "7..7", "--claims", "C-T5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["claim"], "C-T5");
    assert_eq!(first["status"], "Proven");
}

#[test]
fn non_prime_single_point_is_usage_error() {
    let out = congr(&["verify", "--primes", "4..4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_claim_is_usage_error() {
    let out = congr(&["verify", "--primes", "7..11", "--claims", "C-NOPE"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn refuted_mutant_exits_1() {
    let out = congr(&[
        "verify",
        "--primes",
        "11..11",
        "--claims",
        "C-T1-MUT",
        "--backend",
        "rational",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("\"status\":\"Refuted\""));
}

#[test]
fn csv_and_json_carry_identical_data() {
    let args_base = [
        "verify",
        "--primes",
        "7..11",
        "--claims",
        "C-T1,C-L4",
        "--backend",
        "rational",
        "--jobs",
        "1",
    ];
    let json_out = congr(&args_base);
    let mut csv_args = args_base.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv_out = congr(&csv_args);
    assert!(json_out.status.success() && csv_out.status.success());
    let json_text = stdout(&json_out);
    let csv_text = stdout(&csv_out);
    let json_rows: Vec<serde_json::Value> = json_text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|v: &serde_json::Value| v["record_type"] == "result")
        .collect();
    let csv_rows: Vec<Vec<String>> = csv_text
        .lines()
        .skip(1)
        .filter(|l| l.starts_with("result"))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(json_rows.len(), csv_rows.len());
    for (j, c) in json_rows.iter().zip(&csv_rows) {
        assert_eq!(j["claim"].as_str().unwrap(), c[1]);
        assert_eq!(j["prime"].as_u64().unwrap().to_string(), c[2]);
        assert_eq!(j["status"].as_str().unwrap(), c[3]);
        assert_eq!(j["achieved_valuation"].as_str().unwrap(), c[4]);
    }
}

#[test]
fn reruns_are_deterministic_modulo_timing() {
    let args = [
        "verify",
        "--primes",
        "5..13",
        "--claims",
        "C-EQ23,C-DUAL,C-HPK",
        "--backend",
        "padic",
        "--jobs",
        "4",
    ];
    let strip = |text: String| -> Vec<serde_json::Value> {
        text.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("millis");
                v
            })
            .collect()
    };
    let a = strip(stdout(&congr(&args)));
    let b = strip(stdout(&congr(&args)));
    assert_eq!(a, b);
}

#[test]
fn env_overrides_output_path() {
    let dir = std::env::temp_dir().join("congr-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_congr"))
        .args(["verify", "--primes", "7..7", "--claims", "C-T1"])
        .env("CONGR_OUT", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.contains("\"claim\":\"C-T1\""));
    std::fs::remove_file(&path).ok();
}

#[test]
fn identities_single_set() {
    let out = congr(&["identities", "--set", "I-EQ26", "--max-n", "200"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("I-EQ26: ok"));
}

#[test]
fn identities_pair_set() {
    let out = congr(&["identities", "--set", "PAIR-T5", "--max-n", "25"]);
    assert!(out.status.success());
}

#[test]
fn identities_unknown_set() {
    let out = congr(&["identities", "--set", "NOPE"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_outputs() {
    let out = congr(&["table", "bernoulli", "--max", "12"]);
    assert!(stdout(&out).contains("12, -691/2730"));

    let out = congr(&["table", "mhs", "--n", "4", "--index", "1"]);
    assert!(stdout(&out).trim_end().ends_with("4, 25/12"));

    let out = congr(&["table", "b", "--m", "1", "--k", "1"]);
    assert_eq!(stdout(&out).trim(), "-2");

    let out = congr(&["table", "lucas", "--max", "7"]);
    assert!(stdout(&out).trim_end().ends_with("7, 29"));
}

#[test]
fn exclude_conjectural_filters() {
    let out = congr(&[
        "verify",
        "--primes",
        "7..7",
        "--claims",
        "C-SUN-Z4,C-T1",
        "--exclude-conjectural",
        "--backend",
        "rational",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("C-T1"));
    assert!(!text.contains("C-SUN-Z4"));
}
