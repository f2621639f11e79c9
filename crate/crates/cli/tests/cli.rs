use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use zk_massey_cli::docs::{ErrorDocument, Payload, ResultDocument};

const NONTRIVIAL_INDETERMINACY: &str = r#"{"m": 6, "facets": [[2,6],[3,6],[3,5],[2,5],[2,4],[1,4],[1,5],[1,6]], "name": "b"}"#;
const TRIVIAL_INDETERMINACY: &str = r#"{"m": 6, "facets": [[1,3],[3,5],[2,5],[2,4],[4,6],[3,6],[1,4]]}"#;
const TWO_POINTS: &str = r#"{"m": 2, "facets": []}"#;

const GENERATORS: [&str; 6] = ["--a1", "1,2|1:1", "--a2", "3,4|3:1", "--a3", "5,6|5:1"];

fn exe(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zk-massey"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn document(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

/// Runs a command that must succeed and checks the output round-trips.
fn ok(args: &[&str], stdin: &str) -> (ResultDocument, Value) {
    let out = exe(args, stdin);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: ResultDocument = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc.to_json() + "\n", stdout, "round trip changed the document");
    (doc, serde_json::from_str(&stdout).unwrap())
}

fn failure(args: &[&str], stdin: &str, code: i32) -> ErrorDocument {
    let out = exe(args, stdin);
    assert_eq!(out.status.code(), Some(code));
    assert!(out.stdout.is_empty());
    let stderr = String::from_utf8(out.stderr).unwrap();
    let doc: ErrorDocument = serde_json::from_str(stderr.lines().last().unwrap()).unwrap();
    assert_eq!(doc.exit_status, code);
    doc
}

#[test]
fn massey_on_nontrivial_indeterminacy() {
    let file = document(NONTRIVIAL_INDETERMINACY);
    let path = file.path().to_str().unwrap();
    let mut args = vec!["massey", "--in", path, "--field", "rational"];
    args.extend(GENERATORS);
    let (doc, json) = ok(&args, "");
    let Payload::Massey(m) = doc.payload else { panic!("wrong payload") };
    assert!(m.defined && !m.trivial);
    assert_eq!(m.degree, 8);
    assert_eq!(m.indeterminacy_basis.len(), 2);
    assert_eq!(json["field"]["kind"], "rational");
    assert_eq!(json["command"]["name"], "massey");
}

#[test]
fn massey_coset_check_on_trivial_indeterminacy() {
    let mut args = vec!["massey", "--in", "-", "--field", "gf2", "--coset-samples", "30", "--seed", "5"];
    args.extend(GENERATORS);
    let (doc, _) = ok(&args, TRIVIAL_INDETERMINACY);
    let Payload::Massey(m) = doc.payload else { panic!("wrong payload") };
    assert!(!m.trivial);
    assert_eq!(m.indeterminacy_dim, 0);
    let class = m.omega_class.unwrap();
    assert!(class.iter().flat_map(|c| &c.coords).any(|x| x != "0"));
    let coset = m.coset_check.unwrap();
    assert_eq!((coset.escapes, coset.coset_size, coset.fully_generated), (0, Some(1), true));
}

#[test]
fn cochains_serialize_as_terms() {
    let mut args = vec!["massey", "--in", "-", "--field", "gf3"];
    args.extend(GENERATORS);
    let (_, json) = ok(&args, TRIVIAL_INDETERMINACY);
    for term in json["payload"]["data"]["omega"].as_array().unwrap() {
        let keys: Vec<_> = term.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["coeff", "simplex", "support"]);
        assert!(term["coeff"].is_string());
    }
}

#[test]
fn detect_on_nontrivial_indeterminacy() {
    let (doc, _) = ok(&["detect", "--in", "-"], NONTRIVIAL_INDETERMINACY);
    let Payload::Detect(d) = doc.payload else { panic!("wrong payload") };
    assert!(!d.hits.is_empty());
    assert_eq!(d.hits[0].subset, [1, 2, 3, 4, 5, 6]);
    assert!(doc.field.is_none());
}

#[test]
fn betti_of_two_points() {
    let (doc, _) = ok(&["betti", "--in", "-", "--field", "rational"], TWO_POINTS);
    let Payload::Betti(b) = doc.payload else { panic!("wrong payload") };
    let h3: Vec<_> = b.totals.iter().filter(|t| t.degree == 3).map(|t| t.dim).collect();
    assert_eq!(h3, [1]);
    assert!(b.by_subset.is_none());

    let (doc, _) = ok(&["betti", "--in", "-", "--field", "gfp", "--p", "7", "--by-subset"], TWO_POINTS);
    let Payload::Betti(b) = doc.payload else { panic!("wrong payload") };
    let subsets: Vec<_> = b.by_subset.unwrap().into_iter().map(|e| e.support.unwrap()).collect();
    assert_eq!(subsets, [vec![], vec![1, 2]]);
}

#[test]
fn cup_of_disjoint_generators() {
    let args = ["cup", "--in", "-", "--field", "rational", "--a", "1,2|1:1", "--b", "5,6|5:1"];
    let (doc, _) = ok(&args, NONTRIVIAL_INDETERMINACY);
    let Payload::Cup(c) = doc.payload else { panic!("wrong payload") };
    assert_eq!((c.a.degree, c.b.degree, c.product.degree), (3, 3, 6));
    assert!(!c.a.zero && !c.b.zero);
    // K_{1256} is the 4-cycle 1-5-2-6
    assert!(!c.product.zero);
    assert_eq!(c.product.coordinates[0].support, [1, 2, 5, 6]);
}

#[test]
fn oracle_commands() {
    let (doc, _) = ok(&["verify-lemma"], "");
    let Payload::Lemma(report) = doc.payload else { panic!("wrong payload") };
    assert!(report.passed);

    let (doc, _) = ok(&["derive-obstructions", "--field", "gf2"], "");
    let Payload::Obstructions(o) = doc.payload else { panic!("wrong payload") };
    assert_eq!(o.graphs.len(), 8);
    assert!(o.matches_catalog);
}

#[test]
fn verify_theorem_sweep() {
    let out = exe(&["verify-theorem", "--field", "gf2", "--mode", "flag", "--jobs", "2"], "");
    assert_eq!(out.status.code(), Some(0));
    let doc: ResultDocument = serde_json::from_slice(&out.stdout).unwrap();
    let Payload::Verification(report) = doc.payload else { panic!("wrong payload") };
    assert_eq!(report.records.len(), 32768);
    assert!(report.disagreements.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().contains("agreements"));
}

#[test]
fn input_errors_exit_with_one() {
    let malformed = failure(&["detect", "--in", "-"], "{not json", 1);
    assert_eq!(malformed.error, "io");
    failure(&["detect", "--in", "/nonexistent/complex.json"], "", 1);
    let range = failure(&["detect", "--in", "-"], r#"{"m": 3, "facets": [[1, 4]]}"#, 1);
    assert_eq!(range.error, "input");
    failure(&["betti", "--in", "-", "--field", "gf4"], TWO_POINTS, 1);
    failure(&["betti", "--in", "-", "--field", "gfp"], TWO_POINTS, 1);
    failure(&["cup", "--in", "-", "--a", "1,2|1:1", "--b", "nonsense"], NONTRIVIAL_INDETERMINACY, 1);
    // χ_1 on the full complex is not a cocycle
    failure(&["cup", "--in", "-", "--a", "1,2|1:1", "--b", "1,2,3,4,5,6|1:1"], NONTRIVIAL_INDETERMINACY, 1);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(failure(&["frobnicate"], "", 1).error, "usage");
    failure(&["massey", "--in", "-"], NONTRIVIAL_INDETERMINACY, 1);
    failure(&["verify-theorem", "--mode", "hypergraph"], "", 1);
}

#[test]
fn help_succeeds() {
    let out = exe(&["--help"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("verify-theorem"));
}
