//! Golden-file regression: each `<name>.config.json` in a directory is computed and
//! compared byte-for-byte with `<name>.report.json`.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::{compute, CliError, JobConfig};

pub const CONFIG_SUFFIX: &str = ".config.json";
pub const REPORT_SUFFIX: &str = ".report.json";

#[derive(Clone, Debug, Serialize)]
pub struct GoldenOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub fn configs(dir: &Path) -> Result<Vec<(String, PathBuf)>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::Io(e.to_string()))?.path();
        let file = path.file_name().and_then(|f| f.to_str()).unwrap_or_default();
        if let Some(name) = file.strip_suffix(CONFIG_SUFFIX) {
            out.push((name.to_string(), path.clone()));
        }
    }
    out.sort();
    if out.is_empty() {
        return Err(CliError::Io(format!("no *{CONFIG_SUFFIX} files in {}", dir.display())));
    }
    Ok(out)
}

/// First differing line, 1-based.
fn first_difference(expected: &str, actual: &str) -> String {
    let (mut e, mut a) = (expected.lines(), actual.lines());
    let mut n = 1;
    loop {
        match (e.next(), a.next()) {
            (None, None) => return "trailing whitespace differs".into(),
            (x, y) if x == y => n += 1,
            (x, y) => return format!("line {n}: expected {:?}, got {:?}", x.unwrap_or("<eof>"), y.unwrap_or("<eof>")),
        }
    }
}

/// With `bless`, missing or stale reports are rewritten instead of failing.
pub fn check_dir(dir: &Path, seed: Option<u64>, bless: bool) -> Result<Vec<GoldenOutcome>, CliError> {
    let mut out = Vec::new();
    for (name, path) in configs(dir)? {
        let report_path = dir.join(format!("{name}{REPORT_SUFFIX}"));
        let actual = match JobConfig::load(&path).and_then(|cfg| compute(&cfg, seed)) {
            Ok(doc) => doc.to_json(),
            Err(e) => {
                out.push(GoldenOutcome { name, passed: false, detail: Some(e.to_string()) });
                continue;
            }
        };
        let expected = std::fs::read_to_string(&report_path).ok();
        let outcome = match expected {
            Some(ref e) if *e == actual => GoldenOutcome { name, passed: true, detail: None },
            _ if bless => {
                std::fs::write(&report_path, &actual).map_err(|e| CliError::Io(format!("{}: {e}", report_path.display())))?;
                GoldenOutcome { name, passed: true, detail: Some("blessed".into()) }
            }
            Some(e) => GoldenOutcome { name, passed: false, detail: Some(first_difference(&e, &actual)) },
            None => GoldenOutcome { name, passed: false, detail: Some(format!("missing {}", report_path.display())) },
        };
        out.push(outcome);
    }
    Ok(out)
}
