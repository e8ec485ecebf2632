use std::path::Path;
use std::process::{Command, Output};

use conconic_core::io::{MorleyReport, PonceletReport, VerifyReport};

fn conconic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conconic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scene(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const ISOGONAL: &str = r#"{"triangle": [[0, 0], [4, 0], [0, 3]], "feet": {"isogonal": ["1/2", "1/2", "1/2"]}}"#;
const EXPLICIT: &str =
    r#"{"triangle": [[0, 0], [4, 0], [0, 3]], "feet": {"params": ["1/3", "2/5", "3/7", "1/2", "1/2", "1/2"]}}"#;
const GENERIC: &str =
    r#"{"triangle": [[0, 0], [4, 0], [0, 3]], "feet": {"params": ["1/3", "2/5", "3/7", "1/4", "3/5", "5/6"]}}"#;

#[test]
fn verify_isogonal_scene() {
    let dir = tempfile::tempdir().unwrap();
    let path = scene(dir.path(), "iso.json", ISOGONAL);
    let out = conconic(&["verify", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerifyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.verdicts.iter().all(|v| v.holds));
    assert!(report.agree && report.consistent);
    let chart = report.chart;
    assert_eq!(chart.p, chart.q);
    assert_eq!(chart.p.as_deref(), Some("-9/16"));
    assert_eq!(chart.p_equals_q, Some(true));
}

#[test]
fn verify_explicit_and_generic_feet() {
    let dir = tempfile::tempdir().unwrap();
    let path = scene(dir.path(), "explicit.json", EXPLICIT);
    let out = conconic(&["verify", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerifyReport = serde_json::from_str(&stdout(&out)).unwrap();
    let holds: Vec<(String, bool, bool)> =
        report.verdicts.iter().map(|v| (v.name.clone(), v.holds, v.degenerate)).collect();
    // The medians form the second triple, so the inner points repeat
    // and the tangent verdict loses its witness too.
    assert_eq!(
        holds,
        [
            ("outer6".to_owned(), false, false),
            ("inner6".to_owned(), true, true),
            ("tangent6".to_owned(), false, true),
            ("concurrent".to_owned(), false, false),
        ]
    );
    assert!(report.consistent && !report.agree);

    let path = scene(dir.path(), "generic.json", GENERIC);
    let out = conconic(&["verify", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerifyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.verdicts.iter().all(|v| !v.holds && v.residual != "0"));
    assert!(report.agree);
    assert_eq!(report.chart.p_equals_q, Some(false));
}

#[test]
fn malformed_scene_exits_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = scene(dir.path(), "bad.json", "{\n  \"triangle\": [[0, 0],\n  oops");
    let out = conconic(&["verify", &path]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    let path = scene(dir.path(), "vertex.json", r#"{"triangle": [[0, 0], [4, 0], [0, 3]], "feet": {"params": [0, "1/2", "1/2", "1/2", "1/2", "1/2"]}}"#);
    assert_eq!(conconic(&["verify", &path]).status.code(), Some(1));
    assert_eq!(conconic(&["verify", "/nonexistent/scene.json"]).status.code(), Some(1));
}

#[test]
fn verify_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [("iso.json", ISOGONAL), ("explicit.json", EXPLICIT), ("generic.json", GENERIC)] {
        let path = scene(dir.path(), name, body);
        let text = stdout(&conconic(&["verify", &path, "--json"]));
        let report: VerifyReport = serde_json::from_str(&text).unwrap();
        let again: VerifyReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(again, report);
        assert_eq!(serde_json::to_string_pretty(&report).unwrap().trim(), text.trim());
    }
}

#[test]
fn float_mode_scene() {
    let dir = tempfile::tempdir().unwrap();
    let path = scene(dir.path(), "iso.json", ISOGONAL);
    let out = conconic(&["verify", &path, "--mode", "float", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerifyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.verdicts.iter().all(|v| v.holds));
    assert_eq!(report.provenance.mode, conconic_core::io::Mode::Float);
}

#[test]
fn svg_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = scene(dir.path(), "iso.json", ISOGONAL);
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let status = conconic(&["verify", &path, "--svg", out.to_str().unwrap()]).status;
        assert_eq!(status.code(), Some(0));
    }
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().contains("<svg xmlns"));

    let m1 = dir.path().join("m1.svg");
    let m2 = dir.path().join("m2.svg");
    for out in [&m1, &m2] {
        let args = ["morley", "--triangle", "0,0 4,0 0,3", "--poncelet-samples", "5", "--svg", out.to_str().unwrap()];
        assert_eq!(conconic(&args).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&m1).unwrap(), std::fs::read(&m2).unwrap());
}

#[test]
fn morley_demo() {
    let out = conconic(&["morley", "--triangle", "0,0 4,0 0,3", "--poncelet-samples", "25", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: MorleyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.equilateral_spread.parse::<f64>().unwrap() < 1e-12);
    assert!(report.porism.all_closed);
    assert_eq!(report.porism.samples, 25);
    assert!(report.verdicts.iter().all(|v| v.holds));

    let h = 3f64.sqrt() / 2.0;
    let tri = format!("0,0 1,0 0.5,{h}");
    let out = conconic(&["morley", "--triangle", &tri, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: MorleyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.concentric, Some(true));
    let text = stdout(&conconic(&["morley", "--triangle", &tri]));
    assert!(text.contains("concentric"), "{text}");

    assert_eq!(conconic(&["morley", "--triangle", "0,0 1,0 2,0"]).status.code(), Some(1));
    assert_eq!(conconic(&["morley", "--triangle", "0,0 4,0 0,3", "--mode", "rational"]).status.code(), Some(1));
}

#[test]
fn poncelet_demo() {
    let circle = |r: f64| format!("1,0,1,0,0,{}", -r * r);
    let out = conconic(&[
        "poncelet", "--outer", &circle(2.0), "--inner", &circle(1.0), "--expected-n", "3", "--samples", "50", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: PonceletReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.porism.unwrap().all_closed);
    assert_eq!(report.chain.closure_step, Some(3));

    let out = conconic(&["poncelet", "--outer", &circle(2.0), "--inner", &circle(1.3), "--json"]);
    let report: PonceletReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.chain.closure_step, None);
    assert_eq!(report.chain.points.len(), 101);

    let out = conconic(&["poncelet", "--outer", &circle(2.0), "--inner", &circle(1.0), "--start", "0.5,0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = conconic(&["poncelet", "--outer", "1,0,1", "--inner", &circle(1.0)]);
    assert_eq!(out.status.code(), Some(1));
}
