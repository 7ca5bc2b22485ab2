//! Configuration, orchestration and JSON reports for the `cubic-brauer` binary.

pub mod config;
pub mod golden;
pub mod verify;

use cubic_brauer::brauer::image::Certainty;
use cubic_brauer::brauer::report::{run, BrauerReport};
use serde::Serialize;

pub use config::{JobConfig, SCHEMA};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Compute(#[from] cubic_brauer::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

pub fn exit_code(status: Certainty) -> i32 {
    match status {
        Certainty::Proved => EXIT_OK,
        Certainty::LowerBoundOnly | Certainty::NeedsRank => EXIT_PARTIAL,
        Certainty::Inconsistent => EXIT_ERROR,
    }
}

/// How one cardinality was settled.
#[derive(Clone, Debug, Serialize)]
pub struct CardinalityProvenance {
    pub section: String,
    pub certainty: Certainty,
    pub law: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub report: BrauerReport,
    pub provenance: Vec<CardinalityProvenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clifford: Option<verify::CliffordSummary>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        let mut code = exit_code(self.report.status);
        if self.clifford.as_ref().is_some_and(|c| !c.all_passed) {
            code = EXIT_ERROR;
        }
        code
    }
}

fn provenance(report: &BrauerReport) -> Vec<CardinalityProvenance> {
    let mut out = Vec::new();
    let mut push = |section: &str, d: &cubic_brauer::brauer::image::ImageDecision, c: Certainty| {
        out.push(CardinalityProvenance {
            section: section.into(),
            certainty: c,
            law: d.verdict.as_ref().map(|v| v.law.clone()),
            reason: d.reason.clone(),
        });
    };
    if let Some(q) = &report.over_q {
        push("over_q.im_alpha", &q.decision, q.decision.alpha);
        push("over_q.im_alpha_prime", &q.decision, q.decision.alpha_prime);
    }
    if let Some(q) = &report.over_q_omega {
        push("over_q_omega.im_alpha", &q.decision, q.decision.alpha);
    }
    out
}

pub fn compute(cfg: &JobConfig, seed: Option<u64>) -> Result<ReportDocument, CliError> {
    let report = run(&cfg.job()?)?;
    let clifford = match &cfg.verify_clifford {
        Some(c) => Some(verify::run_trials(c.trials, seed.or(c.seed).unwrap_or(verify::DEFAULT_SEED))?),
        None => None,
    };
    Ok(ReportDocument { schema: SCHEMA, name: cfg.name.clone(), provenance: provenance(&report), report, clifford })
}
