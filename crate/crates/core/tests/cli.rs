use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn winger(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_winger")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(rel: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(rel);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn verify_passes_with_exit_zero() {
    let o = winger(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let passing = text.lines().filter(|l| l.starts_with("PASS")).count();
    assert!(passing >= 30);
    assert!(!text.contains("FAIL "));
}

#[test]
fn only_filter_restricts_checks() {
    let o = winger(&["verify", "--only", "monodromy.*"]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<String> =
        stdout(&o).lines().filter(|l| l.starts_with("PASS")).map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect();
    assert!(!ids.is_empty());
    assert!(ids.iter().all(|id| id.starts_with("monodromy.")));
}

#[test]
fn injected_fault_fails_ddzero() {
    let o = winger(&["verify", "--only", "surface.*", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL") && l.contains("surface.ddzero")));
    assert!(String::from_utf8_lossy(&o.stderr).contains("surface.ddzero"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(winger(&["emit", "--object", "nonsense"]).status.code(), Some(2));
    assert_eq!(winger(&["emit", "--object", "form", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(winger(&["verify", "--only", "nothing.*"]).status.code(), Some(2));
    assert_eq!(winger(&["verify", "--convention", "other"]).status.code(), Some(2));
}

#[test]
fn emit_monodromy_json() {
    let o = winger(&["emit", "--object", "monodromy", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&schema("emit/monodromy.schema.json"), &v);
    let t = &v["standard"]["table"];
    assert_eq!(t["rho_edge"], serde_json::json!([[1, -3], [0, 1]]));
    assert_eq!(t["rho_trc"], serde_json::json!([[1, 0], [1, 1]]));
    assert_eq!(t["rho_zero"], serde_json::json!([[-2, 3], [-1, 1]]));
    assert_eq!(t["rho_minus_one"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(v["repbas"]["table"]["rho_edge"], serde_json::json!([[1, 0], [3, 1]]));
}

#[test]
fn emit_characters_has_faces_row() {
    let o = winger(&["emit", "--object", "characters"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["faces"]["values"], serde_json::json!(["12", "0", "0", "2", "2"]));
    let csv = stdout(&winger(&["emit", "--object", "characters", "--format", "csv"]));
    assert!(csv.lines().any(|l| l == "faces,12,0,0,2,2"));
}

#[test]
fn emit_form_csv_is_alternating() {
    let o = winger(&["emit", "--object", "form", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<i64>> = stdout(&o).lines().map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 20);
    for i in 0..20 {
        assert_eq!(rows[i].len(), 20);
        for j in 0..20 {
            assert_eq!(rows[i][j], -rows[j][i]);
        }
    }
}

#[test]
fn every_emitted_object_matches_its_schema() {
    for obj in ["dodecahedron", "group", "complex", "form", "characters", "hom", "monodromy", "cosets", "cusps"] {
        let o = winger(&["emit", "--object", obj]);
        assert_eq!(o.status.code(), Some(0), "{obj}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_valid(&schema(&format!("emit/{obj}.schema.json")), &v);
        let csv = winger(&["emit", "--object", obj, "--format", "csv"]);
        assert_eq!(csv.status.code(), Some(0), "{obj} csv");
        assert!(!csv.stdout.is_empty());
    }
}

#[test]
fn report_json_matches_schema_and_is_deterministic() {
    let a = winger(&["report", "--format", "json"]);
    let b = winger(&["report", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_valid(&schema("report.schema.json"), &v);
    assert_eq!(v["summary"]["pass"], v["summary"]["total"]);
    assert!(v["conventions"].is_object());
    assert_eq!(stdout(&winger(&["emit", "--object", "cosets"])), stdout(&winger(&["emit", "--object", "cosets"])));
}

#[test]
fn report_text_has_one_line_per_check() {
    let o = winger(&["report", "--format", "text"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    let json: Value = serde_json::from_str(&stdout(&winger(&["report", "--format", "json"]))).unwrap();
    assert_eq!(lines.len(), json["checks"].as_array().unwrap().len());
    assert!(lines.iter().all(|l| l.contains('[') && l.ends_with(']')));
}

#[test]
fn repbas_and_swapped_tetrads_pass() {
    assert_eq!(winger(&["verify", "--convention", "repbas"]).status.code(), Some(0));
    assert_eq!(winger(&["verify", "--swap-tetrads", "--only", "monodromy.*"]).status.code(), Some(0));
}
