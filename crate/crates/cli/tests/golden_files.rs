//! Every golden config reproduces its committed report exactly.

use std::path::PathBuf;

use cubic_brauer_cli::golden::{check_dir, configs};
use cubic_brauer_cli::{compute, JobConfig};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn golden_reports_are_current() {
    let outcomes = check_dir(&dir(), None, false).unwrap();
    assert_eq!(outcomes.len(), 10);
    let stale: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| format!("{}: {:?}", o.name, o.detail)).collect();
    assert!(stale.is_empty(), "{stale:#?}");
}

#[test]
fn reports_are_deterministic() {
    for (_, path) in configs(&dir()).unwrap() {
        let cfg = JobConfig::load(&path).unwrap();
        assert_eq!(compute(&cfg, None).unwrap().to_json(), compute(&cfg, None).unwrap().to_json(), "{}", path.display());
    }
}
