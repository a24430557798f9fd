use std::process::{Command, Output};

use hosoya_core::{ReportDocument, ReportResult};

fn hosoya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hosoya"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn render_formats() {
    let csv = hosoya(&["render", "--rows", "3", "--format", "csv"]);
    assert!(csv.status.success());
    assert_eq!(stdout(&csv), "0\n0,0\n0,1,0\n0,1,1,0\n");

    let json = hosoya(&["render", "--rows", "3", "--format", "json"]);
    let rows: Vec<Vec<String>> = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(rows[3], ["0", "1", "1", "0"]);

    let ascii = hosoya(&["render", "--rows", "4", "--highlight", "diagonal:d=2,len=3"]);
    let text = stdout(&ascii);
    assert_eq!(text.matches('[').count(), 3);
}

#[test]
fn render_writes_svg_file() {
    let path = std::env::temp_dir().join(format!("hosoya-{}.svg", std::process::id()));
    let p = path.to_str().unwrap();
    let out = hosoya(&["render", "--rows", "5", "--format", "svg", "--out", p]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"entry\"").count(), 21);
}

#[test]
fn render_rejects_bad_input() {
    assert_eq!(hosoya(&["render", "--rows", "0"]).status.code(), Some(2));
    assert_eq!(
        hosoya(&["render", "--rows", "3", "--highlight", "rhombus:n=1,r=5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_single_instance() {
    let out = hosoya(&["verify", "cassini", "--k", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = ReportDocument::from_json(&stdout(&out)).unwrap();
    assert_eq!(doc.command, "verify");
    assert_eq!(doc.inputs["k"], "5");
    match &doc.results[..] {
        [ReportResult::Identity(r)] => {
            assert!(r.holds);
            assert_eq!(r.lhs.value, 1.into());
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn verify_sweep_and_text() {
    let out = hosoya(&[
        "verify",
        "RHOMBUS_DET",
        "--n",
        "1..30",
        "--r",
        "0..29",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).contains("465 checked, 0 failures"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn verify_paper_form_sets_status() {
    let verified = hosoya(&["verify", "BRAID_CLOSED", "--m", "2..12", "--l", "1..6"]);
    assert_eq!(verified.status.code(), Some(0));
    let doc = ReportDocument::from_json(&stdout(&verified)).unwrap();
    let ReportResult::Sweep(s) = &doc.results[0] else {
        panic!("expected a sweep");
    };
    assert!(s.alternate.as_ref().unwrap().failure_count > 0);

    let paper = hosoya(&[
        "verify",
        "BRAID_CLOSED",
        "--paper-form",
        "--m",
        "2..12",
        "--l",
        "1..6",
    ]);
    assert_eq!(paper.status.code(), Some(1));
}

#[test]
fn verify_usage_errors() {
    let unknown = hosoya(&["verify", "FOO", "--k", "1"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("CASSINI"));

    for args in [
        &["verify", "CASSINI"][..],
        &["verify", "CASSINI", "--k", "x"],
        &["verify", "CASSINI", "--k", "0"],
        &["verify", "CATALAN", "--k", "3", "--j", "4"],
        &["verify", "CASSINI", "--k", "1", "--format", "yaml"],
    ] {
        assert_eq!(hosoya(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn config_formats() {
    let json = hosoya(&["config", "hockey_stick:k=3,n=2,side=left"]);
    assert!(json.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["config"], "hockey_stick:k=3,n=2,side=left");
    assert_eq!(v["points"]["points"].as_array().unwrap().len(), 3);

    let csv = hosoya(&["config", "rhombus:n=5,r=2", "--format", "csv"]);
    let text = stdout(&csv);
    assert_eq!(text.lines().next(), Some("r,k,value,role"));
    assert_eq!(text.lines().count(), 5);

    assert_eq!(hosoya(&["config", "spiral:n=1"]).status.code(), Some(2));
}

#[test]
fn sequence_and_oracle() {
    let seq = hosoya(&["sequence", "--d", "3", "--count", "6", "--format", "json"]);
    let terms: Vec<String> = serde_json::from_str(&stdout(&seq)).unwrap();
    assert_eq!(terms, ["3", "2", "5", "7", "12", "19"]);

    let oracle = hosoya(&["oracle-check", "--rows", "40"]);
    assert!(oracle.status.success());
    assert!(stdout(&oracle).contains("861 entries, 0 mismatches"));
    assert_eq!(
        hosoya(&["oracle-check", "--rows", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn list_covers_catalog() {
    let out = hosoya(&["list"]);
    assert_eq!(stdout(&out).lines().count(), 23);
}
