use serde::Serialize;

use super::Point;
use crate::numeric::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RankSource {
    UserSupplied { citation: Option<String> },
    NotSupplied,
    /// No rank supplied; both image bounds closed, so the rank law fixes it.
    DeducedFromImages,
}

/// Mordell–Weil rank of `E(k)`, supplied externally, with the points known on `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankData {
    pub rank: u32,
    pub source: RankSource,
    pub points: Vec<Point<Rat>>,
}

/// Which of `√c`, `√d = √(−27c)` and `ω` lie in the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldConfig {
    pub sqrt_c_in_k: bool,
    pub sqrt_d_in_k: bool,
    pub omega_in_k: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankVerdict {
    pub consistent: bool,
    pub law: String,
    pub statement: String,
    pub detail: String,
}

fn log3(n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut k = 0;
    let mut m = n;
    while m % 3 == 0 {
        m /= 3;
        k += 1;
    }
    (m == 1).then_some(k)
}

fn verdict(consistent: bool, law: &str, statement: String, detail: String) -> RankVerdict {
    RankVerdict { consistent, law: law.into(), statement, detail }
}

/// Checks `|im α|·|im α′| = 3^rank·|ker λ|·|ker λ′|` in the form that applies to `cfg`.
pub fn validate_rank_data(rank: u32, im_alpha: u64, im_alpha_prime: u64, cfg: &FieldConfig) -> RankVerdict {
    let (Some(a), Some(b)) = (log3(im_alpha), log3(im_alpha_prime)) else {
        return verdict(
            false,
            "image-sizes",
            "image sizes are powers of 3".into(),
            format!("|im alpha| = {im_alpha}, |im alpha'| = {im_alpha_prime}"),
        );
    };
    let sizes = format!("rank {rank}, |im alpha| = 3^{a}, |im alpha'| = 3^{b}");
    if cfg.omega_in_k {
        if cfg.sqrt_c_in_k != cfg.sqrt_d_in_k {
            return verdict(false, "field-configuration", "with omega in k, sqrt(c) and sqrt(d) lie in k together".into(), sizes);
        }
        if rank % 2 == 1 {
            return verdict(false, "even-rank", "the rank is even when omega lies in k".into(), sizes);
        }
        if a != b {
            return verdict(false, "equal-images", "im alpha = im alpha' when omega lies in k".into(), sizes);
        }
        return if cfg.sqrt_c_in_k {
            let ok = 2 * a == rank + 2;
            verdict(ok, "both-kernels-rational", "|im alpha| = 3^((rank+2)/2)".into(), sizes)
        } else {
            let ok = 2 * a == rank;
            verdict(ok, "no-kernel-rational-with-omega", "|im alpha| = 3^(rank/2)".into(), sizes)
        };
    }
    match (cfg.sqrt_c_in_k, cfg.sqrt_d_in_k) {
        (true, true) => verdict(false, "field-configuration", "sqrt(c) and sqrt(d) both in k forces omega in k".into(), sizes),
        (false, false) => {
            let ok = a + b == rank;
            verdict(ok, "no-kernel-rational", "|im alpha| * |im alpha'| = 3^rank".into(), sizes)
        }
        _ => {
            let ok = a + b == rank + 1;
            verdict(ok, "one-kernel-rational", "|im alpha| * |im alpha'| = 3^(rank+1)".into(), sizes)
        }
    }
}

/// Rank over `k(ω)` is twice the rank over `k` when `ω ∉ k`.
pub fn validate_rank_doubling(rank_k: u32, rank_l: u32) -> RankVerdict {
    verdict(
        rank_l == 2 * rank_k,
        "rank-doubling",
        "rank over k(omega) = 2 * rank over k".into(),
        format!("rank over k = {rank_k}, rank over k(omega) = {rank_l}"),
    )
}
