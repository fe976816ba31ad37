//! End-to-end checks of the binary: exit codes, JSON round-trips, and
//! determinism of seeded output.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn cproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cproj"))
        .args(args)
        .env("CPROJ_CORPUS", corpus_dir())
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn corpus_list_names_everything() {
    let out = cproj(&["corpus", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["r1", "r2", "r3", "gf2", "gf3", "r2_gf3", "omega3"] {
        assert!(text.contains(name), "{name} missing from corpus list");
    }
}

#[test]
fn ring_check_reports_dimensions() {
    let out = cproj(&["ring", "check", corpus_dir().join("r1.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim 2"));
    assert!(text.contains("nilpotency 2"));
}

#[test]
fn ring_check_rejects_non_local_presentation() {
    // GF(2)[x]/(x^2 - 1) presented with x*x = 1
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"p":2,"basis":["1","x"],"mul":[[[1,0],[0,1]],[[0,1],[1,0]]]}}"#
    )
    .unwrap();
    let out = cproj(&["ring", "check", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "refutation exits 1");
    assert!(stdout(&out).contains("not local"));
}

#[test]
fn garbage_file_is_an_input_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "this is not json").unwrap();
    let out = cproj(&["ring", "check", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn semidual_verify_verdicts_and_exit_codes() {
    let out = cproj(&[
        "semidual", "verify", "--ring", "r3", "--module",
        corpus_dir().join("omega3.json").to_str().unwrap(),
        "--bound", "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Verified-to-bound"));

    let out = cproj(&["semidual", "verify", "--ring", "r1", "--module", "residue_field"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Refuted"));
}

#[test]
fn pcpd_prints_infinity_for_the_quotient() {
    let out = cproj(&[
        "pcpd", "--ring", "r2", "--semidual", "@ring", "--module", "quotient:x",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("∞"));
}

#[test]
fn resolve_json_roundtrips_through_homology() {
    let out = cproj(&[
        "--json", "resolve", "--ring", "r2", "--semidual", "@ring", "--module",
        "quotient:x", "--length", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let betti = v["resolution"]["summary"]["betti"].as_array().unwrap();
    assert_eq!(betti.len(), 4);
    assert!(betti.iter().all(|b| b.as_u64() == Some(1)));
    // the emitted complex re-loads and re-validates
    let complex = &v["resolution"]["complex"];
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", serde_json::to_string(complex).unwrap()).unwrap();
    let out2 = cproj(&["homology", "--complex", f.path().to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
}

#[test]
fn quasiiso_on_handwritten_chainmap_files() {
    // identity map on 0 → R -x-> R → 0 over r1: a quasiisomorphism
    let complex = r#"{"lo":0,"hi":1,"modules":["free:1","free:1"],
        "differentials":[[[0,0],[1,0]]]}"#;
    let id_map = format!(
        r#"{{"ring":"r1","source":{complex},"target":{complex},"lo":0,
            "components":[[[1,0],[0,1]],[[1,0],[0,1]]]}}"#
    );
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{id_map}").unwrap();
    let out = cproj(&["quasiiso", "--map", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // zero map into the same complex is not
    let zero_map = format!(
        r#"{{"ring":"r1","source":{complex},"target":{complex},"lo":0,
            "components":[[[0,0],[0,0]],[[0,0],[0,0]]]}}"#
    );
    let mut g = tempfile::NamedTempFile::new().unwrap();
    write!(g, "{zero_map}").unwrap();
    let out = cproj(&["quasiiso", "--map", g.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cone_of_identity_is_reported_exact() {
    let complex = r#"{"lo":0,"hi":1,"modules":["free:1","free:1"],
        "differentials":[[[0,0],[1,0]]]}"#;
    let id_map = format!(
        r#"{{"ring":"r1","source":{complex},"target":{complex},"lo":0,
            "components":[[[1,0],[0,1]],[[1,0],[0,1]]]}}"#
    );
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{id_map}").unwrap();
    let out = cproj(&["--json", "cone", "--map", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let homology = v["homology"].as_array().unwrap();
    assert!(homology
        .iter()
        .all(|pair| pair.as_array().unwrap()[1].as_u64() == Some(0)));
}

#[test]
fn minimize_strips_contractible_summand() {
    // R --id--> R in degrees 1..0 collapses to nothing
    let complex = r#"{"ring":"r1","lo":0,"hi":1,"modules":["free:1","free:1"],
        "differentials":[[[1,0],[0,1]]]}"#;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{complex}").unwrap();
    let out = cproj(&["minimize", "--complex", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("support None"));
}

#[test]
fn width_of_periodic_complex_via_files() {
    // T^(2) over r2 with pair (x, x): C in degrees 0..2, differentials x, x
    let complex = r#"{"ring":"r2","lo":0,"hi":2,
        "modules":["free:1","free:1","free:1"],
        "differentials":[
          [[0,0,0,0],[1,0,0,0],[0,0,0,0],[0,0,1,0]],
          [[0,0,0,0],[1,0,0,0],[0,0,0,0],[0,0,1,0]]
        ]}"#;
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{complex}").unwrap();
    let out = cproj(&["width", "--complex", f.path().to_str().unwrap(), "--semidual", "@ring"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("width = 2"));
}

#[test]
fn ex3_passes_on_r2_and_exits_zero() {
    let out = cproj(&["ex3", "--ring", "r2", "--pair", "x,x", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all assertions pass: true"));
}

#[test]
fn hereditary_probe_exit_codes() {
    let out = cproj(&["hereditary-probe", "--ring", "gf2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cproj(&["hereditary-probe", "--ring", "r1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seeded_output_is_deterministic() {
    let run = || stdout(&cproj(&["--json", "find-ezd", "--ring", "r2"]));
    assert_eq!(run(), run());
    let probe = || {
        stdout(&cproj(&[
            "--json", "hereditary-probe", "--ring", "r3", "--semidual",
            corpus_dir().join("omega3.json").to_str().unwrap(), "--seed", "7",
        ]))
    };
    assert_eq!(probe(), probe());
}
