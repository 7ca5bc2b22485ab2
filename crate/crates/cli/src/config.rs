use std::path::Path;

use cubic_brauer::brauer::{BaseField, JobInput};
use cubic_brauer::elliptic::{DEFAULT_DENOM_BOUND, DEFAULT_SEARCH_BOUND};
use cubic_brauer::forms::BinaryCubicForm;
use cubic_brauer::numeric::rational::{parse_rat, Rat};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA: u32 = 1;

/// A rational written as a JSON integer or as a string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RatInput {
    Int(i64),
    Text(String),
}

impl RatInput {
    pub fn value(&self) -> Result<Rat, CliError> {
        match self {
            RatInput::Int(n) => Ok(Rat::from_integer((*n).into())),
            RatInput::Text(s) => parse_rat(s).map_err(|e| CliError::Config(format!("bad rational {s:?}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalInput {
    pub a: RatInput,
    pub b: RatInput,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralInput {
    #[serde(rename = "A")]
    pub a: RatInput,
    #[serde(rename = "B")]
    pub b: RatInput,
    #[serde(rename = "C")]
    pub c: RatInput,
    #[serde(rename = "D")]
    pub d: RatInput,
    /// `true`: coefficients of `AX³ + BX²Y + CXY² + DY³`; `false`: of `AX³ + 3BX²Y + 3CXY² + DY³`.
    #[serde(default)]
    pub raw: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FormInput {
    Diagonal(DiagonalInput),
    General(GeneralInput),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CliffordInput {
    pub trials: u32,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub schema: u32,
    #[serde(default)]
    pub name: Option<String>,
    pub base: String,
    pub form: FormInput,
    #[serde(default)]
    pub rank: Option<u32>,
    #[serde(default, rename = "rank_L")]
    pub rank_l: Option<u32>,
    #[serde(default)]
    pub rank_citation: Option<String>,
    #[serde(default)]
    pub extra_points: Vec<(RatInput, RatInput)>,
    #[serde(default)]
    pub extra_points_prime: Vec<(RatInput, RatInput)>,
    #[serde(default)]
    pub search_bound: Option<u64>,
    #[serde(default)]
    pub denom_bound: Option<u64>,
    #[serde(default)]
    pub invariant_primes: Vec<u64>,
    #[serde(default)]
    pub verify_clifford: Option<CliffordInput>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<JobConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        JobConfig::parse(&text)
    }

    pub fn parse(text: &str) -> Result<JobConfig, CliError> {
        let cfg: JobConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if cfg.schema != SCHEMA {
            return Err(CliError::Config(format!("unsupported schema {} (expected {SCHEMA})", cfg.schema)));
        }
        Ok(cfg)
    }

    pub fn base_field(&self) -> Result<BaseField, CliError> {
        match self.base.as_str() {
            "Q" => Ok(BaseField::Rationals),
            "Q(omega)" => Ok(BaseField::Eisenstein),
            other => Err(CliError::Config(format!("unknown base field {other:?}; use \"Q\" or \"Q(omega)\""))),
        }
    }

    pub fn form(&self) -> Result<BinaryCubicForm<Rat>, CliError> {
        Ok(match &self.form {
            FormInput::Diagonal(d) => BinaryCubicForm::diagonal(d.a.value()?, d.b.value()?),
            FormInput::General(g) => {
                let [a, b, c, d] = [g.a.value()?, g.b.value()?, g.c.value()?, g.d.value()?];
                if g.raw {
                    BinaryCubicForm::from_raw(a, b, c, d)
                } else {
                    BinaryCubicForm::new(a, b, c, d)
                }
            }
        })
    }

    pub fn job(&self) -> Result<JobInput, CliError> {
        let points = |v: &[(RatInput, RatInput)]| -> Result<Vec<(Rat, Rat)>, CliError> {
            v.iter().map(|(x, y)| Ok((x.value()?, y.value()?))).collect()
        };
        let mut job = JobInput::new(self.base_field()?, self.form()?);
        job.rank = self.rank;
        job.rank_l = self.rank_l;
        job.rank_citation = self.rank_citation.clone();
        job.extra_points = points(&self.extra_points)?;
        job.extra_points_prime = points(&self.extra_points_prime)?;
        job.search_bound = self.search_bound.unwrap_or(DEFAULT_SEARCH_BOUND);
        job.denom_bound = self.denom_bound.unwrap_or(DEFAULT_DENOM_BOUND);
        job.invariant_primes = self.invariant_primes.clone();
        Ok(job)
    }
}
