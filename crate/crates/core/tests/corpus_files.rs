//! The shipped corpus files must validate and agree with the programmatic
//! constructions used throughout the test suites.

use cproj_core::corpus;
use cproj_core::files::Workspace;
use cproj_core::module::module_iso;
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn corpus_files_validate_and_match() {
    let mut ws = Workspace::new(corpus_dir());
    for (name, programmatic) in corpus::all_rings() {
        let loaded = ws.load_ring(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(loaded.spec(), programmatic.spec(), "{name} table mismatch");
    }
}

#[test]
fn omega3_file_matches_dual_of_ring() {
    let mut ws = Workspace::new(corpus_dir());
    let path = corpus_dir().join("omega3.json");
    let (alg, omega) = ws.load_module(None, path.to_str().unwrap()).unwrap();
    assert_eq!(alg.dim(), 3);
    assert_eq!(omega.dim(), 3);
    let programmatic = corpus::omega3();
    assert_eq!(omega.actions(), programmatic.actions());
    assert!(module_iso(&omega, &programmatic, 0).is_iso());
}

#[test]
fn corpus_list_names() {
    let ws = Workspace::new(corpus_dir());
    let names = ws.corpus_names();
    for want in ["gf2", "gf3", "r1", "r2", "r2_gf3", "r3", "omega3"] {
        assert!(names.iter().any(|n| n == want), "missing {want} in {names:?}");
    }
}
