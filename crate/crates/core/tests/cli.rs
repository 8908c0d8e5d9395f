use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn wordseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordseries")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = wordseries(args);
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn rows(csv: &str) -> Vec<String> {
    csv.lines().skip(1).map(str::to_owned).collect()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", &path("averaging.json")]).0, 0);
    assert_eq!(run(&["validate", &path("example1.json")]).0, 0);
    assert_eq!(run(&["validate", &path("example2.json")]).0, 0);
    let (code, stdout) = run(&["validate", &path("resonant.json")]);
    assert_eq!(code, 4);
    assert!(stdout.contains("resonance"), "{stdout}");
}

#[test]
fn malformed_input_exits_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"quasiperiodic\"").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["validate", "/nonexistent/problem.json"]).0, 2);
    assert_eq!(run(&["coeffs", &path("averaging.json"), "--what", "nonsense"]).0, 2);
}

#[test]
fn broken_hypothesis_exits_with_code_three() {
    let text = std::fs::read_to_string(fixture("example1.json")).unwrap();
    // A projector that is not idempotent.
    let broken = text.replacen("[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]", "[[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]", 1);
    assert_ne!(text, broken);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(&file, broken).unwrap();
    assert_eq!(run(&["validate", file.to_str().unwrap()]).0, 3);
}

#[test]
fn betabar_rows() {
    let (code, out) = run(&["coeffs", &path("averaging.json"), "--what", "betabar"]);
    assert_eq!(code, 0);
    let rows = rows(&out);
    assert!(rows.iter().any(|r| r == "0,1,0"), "{out}");
    assert!(!rows.iter().any(|r| r.starts_with("e,")), "{out}");
    assert!(out.starts_with("word,re,im"));
}

#[test]
fn tables_at_the_initial_instant_are_the_unit() {
    let (code, out) = run(&["coeffs", &path("averaging.json"), "--what", "alpha", "--t", "0"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out), ["e,1,0"]);
    let (code, out) = run(&["coeffs", &path("averaging.json"), "--what", "kappa", "--theta", "0"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out), ["e,1,0"]);
}

#[test]
fn json_tables() {
    let (code, out) = run(&["coeffs", &path("example1.json"), "--what", "rho", "--format", "json"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let entries = value.as_array().expect("array of entries");
    assert!(!entries.is_empty());
    for e in entries {
        assert!(e["word"].is_string() && e["re"].is_f64() && e["im"].is_f64(), "{e}");
    }
}

#[test]
fn verify_suites() {
    for suite in ["algebra", "transport", "grouplaw"] {
        let (code, out) = run(&["verify", &path("averaging.json"), "--suite", suite, "--order", "3"]);
        assert_eq!(code, 0, "{suite}: {out}");
    }
    let (code, out) = run(&["verify", &path("example2.json"), "--suite", "normalform"]);
    assert_eq!(code, 0, "{out}");
    // The averaged solution error over 1/eps gains eps^N, short of the
    // half-power margin this suite demands.
    let (code, out) = run(&["verify", &path("averaging.json"), "--suite", "scaling"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn averaged_trajectories_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let args = |p: &PathBuf| {
        vec!["average".to_owned(), path("averaging.json"), "--eps".into(), "0.05".into(), "--samples".into(), "10".into(), "--out".into(), p.to_string_lossy().into_owned()]
    };
    for p in [&a, &b] {
        let out = wordseries(&args(p).iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(out.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ta, tb);
    assert_eq!(ta.lines().count(), 12);
    assert!(ta.starts_with("t,y0_re,y0_im,ref0_re,ref0_im,error"));
    let worst = rows(&ta).iter().map(|r| r.rsplit(',').next().unwrap().parse::<f64>().unwrap()).fold(0.0, f64::max);
    assert!(worst < 10.0 * 0.05f64.powi(3), "{worst}");
}

#[test]
fn zero_eps_averages_to_the_unperturbed_state() {
    let (code, out) = run(&["average", &path("averaging.json"), "--eps", "0", "--samples", "4"]);
    assert_eq!(code, 0);
    for row in rows(&out) {
        let err: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(err < 1e-12, "{row}");
    }
}
