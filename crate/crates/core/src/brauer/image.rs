use serde::Serialize;

use crate::elliptic::{validate_rank_data, FieldConfig, RankVerdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::numeric::cube::{kernel, ClassField, ClassVector, CubeClass, CubeClassGroup, PrimeKey};
use crate::numeric::quad::Quad;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    Proved,
    LowerBoundOnly,
    NeedsRank,
    Inconsistent,
}

impl Certainty {
    pub fn combine(self, o: Certainty) -> Certainty {
        use Certainty::*;
        match (self, o) {
            (Inconsistent, _) | (_, Inconsistent) => Inconsistent,
            (NeedsRank, _) | (_, NeedsRank) => NeedsRank,
            (LowerBoundOnly, _) | (_, LowerBoundOnly) => LowerBoundOnly,
            _ => Proved,
        }
    }
}

/// Span of the known images together with an ambient group containing the full image.
#[derive(Clone, Debug)]
pub struct ImageBounds<F: ClassField> {
    pub lower: CubeClassGroup<F>,
    pub upper: Option<CubeClassGroup<F>>,
}

impl<F: ClassField> ImageBounds<F> {
    pub fn closed(&self) -> bool {
        self.upper.as_ref().is_some_and(|u| u.dimension() == self.lower.dimension())
    }
}

/// The group generated by the primes in the cube-free part of `two_n`, and `ω` if asked.
pub fn ambient_bound<F: ClassField>(two_n: &F, with_omega: bool) -> Result<CubeClassGroup<F>> {
    let v = two_n
        .class_vector()?
        .ok_or_else(|| Error::Unsupported(format!("no factorization over {}", two_n.tag())))?;
    let mut keys: Vec<PrimeKey> = v.keys().cloned().collect();
    if with_omega && !keys.contains(&PrimeKey::Omega) {
        keys.push(PrimeKey::Omega);
    }
    let mut classes = Vec::new();
    for k in keys {
        let unit = ClassVector::from([(k, 1u8)]);
        let rep = two_n
            .from_class_vector(&unit)
            .ok_or_else(|| Error::Invalid("unrepresentable prime".into()))?;
        classes.push(CubeClass::new(rep)?);
    }
    CubeClassGroup::span(two_n.tag(), &classes)
}

/// Classes `ξ` of a factored group over `ℚ(ω)` with `ξ·τ(ξ)` a cube.
pub fn twisted_part(g: &CubeClassGroup<Quad>) -> Result<CubeClassGroup<Quad>> {
    if g.is_trivial() {
        return Ok(g.clone());
    }
    let keys: Vec<PrimeKey> = (0..g.dimension()).map(|i| PrimeKey::Rational(i.into())).collect();
    let mut images = Vec::new();
    for b in &g.basis {
        let norm = b.rep.times(&b.rep.conjugate());
        images.push(CubeClass::new(norm)?.vector.unwrap_or_default());
    }
    let mut classes = Vec::new();
    for v in kernel(&keys, &images) {
        let mut acc = g.basis[0].one_like();
        for (k, e) in &v {
            let PrimeKey::Rational(i) = k else { unreachable!() };
            let i: usize = i.try_into().expect("index");
            acc = acc.mul(&g.basis[i].pow(*e));
        }
        classes.push(acc);
    }
    CubeClassGroup::span(g.tag.clone(), &classes)
}

/// How the cardinalities of the two images were settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageDecision {
    pub alpha: Certainty,
    pub alpha_prime: Certainty,
    pub reason: String,
    /// The rank used: supplied, or deduced when both bounds close.
    pub rank: Option<u32>,
    pub rank_deduced: bool,
    pub verdict: Option<RankVerdict>,
}

fn exact(rank: u32, a: usize, b: usize, cfg: &FieldConfig) -> RankVerdict {
    validate_rank_data(rank, 3u64.pow(a as u32), 3u64.pow(b as u32), cfg)
}

fn decision(alpha: Certainty, alpha_prime: Certainty, reason: String, rank: Option<u32>) -> ImageDecision {
    ImageDecision { alpha, alpha_prime, reason, rank, rank_deduced: false, verdict: None }
}

/// Settles `im α`, `im α′` over a field without `ω` from the lower bound dimensions,
/// whether each bound is closed, and the rank if known.
pub fn decide_pair(rank: Option<u32>, cfg: &FieldConfig, lower: (usize, usize), closed: (bool, bool)) -> ImageDecision {
    use Certainty::*;
    let kappa = cfg.sqrt_c_in_k as usize + cfg.sqrt_d_in_k as usize;
    let (la, lb) = lower;
    let status = |c: bool, open: Certainty| if c { Proved } else { open };
    match rank {
        Some(rk) => {
            let target = rk as usize + kappa;
            let verdict = exact(rk, la, lb, cfg);
            if la + lb > target {
                let mut d = decision(Inconsistent, Inconsistent, format!("known images have dimensions {la} + {lb} > {target}"), rank);
                d.verdict = Some(verdict);
                d
            } else if la + lb == target {
                let mut d = decision(Proved, Proved, format!("lower bounds meet the {} law", verdict.law), rank);
                d.verdict = Some(verdict);
                d
            } else if closed.0 && closed.1 {
                let mut d = decision(Inconsistent, Inconsistent, format!("both bounds are closed but {la} + {lb} < {target}"), rank);
                d.verdict = Some(verdict);
                d
            } else {
                decision(
                    status(closed.0, LowerBoundOnly),
                    status(closed.1, LowerBoundOnly),
                    format!("known images have dimensions {la} + {lb} < {target}; more points are needed"),
                    rank,
                )
            }
        }
        None => {
            if closed.0 && closed.1 {
                if la + lb < kappa {
                    return decision(Inconsistent, Inconsistent, "closed bounds below the torsion contribution".into(), None);
                }
                let rk = (la + lb - kappa) as u32;
                let mut d = decision(Proved, Proved, "lower bounds equal the ambient upper bounds".into(), Some(rk));
                d.rank_deduced = true;
                d.verdict = Some(exact(rk, la, lb, cfg));
                d
            } else {
                decision(
                    status(closed.0, NeedsRank),
                    status(closed.1, NeedsRank),
                    "no rank supplied and the bounds do not close".into(),
                    None,
                )
            }
        }
    }
}

/// Over a field containing `ω`, where `im α = im α′`.
pub fn decide_single(rank: Option<u32>, cfg: &FieldConfig, lower: usize, closed: bool) -> ImageDecision {
    use Certainty::*;
    let kappa = cfg.sqrt_c_in_k as usize;
    let pair = |c| decision(c, c, String::new(), rank);
    match rank {
        Some(rk) => {
            let verdict = exact(rk, lower, lower, cfg);
            let mut d = if rk % 2 == 1 {
                pair(Inconsistent)
            } else {
                let target = rk as usize / 2 + kappa;
                if lower > target || (lower < target && closed) {
                    pair(Inconsistent)
                } else if lower == target {
                    pair(Proved)
                } else {
                    let mut d = pair(LowerBoundOnly);
                    d.reason = format!("known image has dimension {lower} < {target}; more points are needed");
                    return d;
                }
            };
            d.reason = if d.alpha == Proved {
                format!("lower bound meets the {} law", verdict.law)
            } else {
                format!("rank {rk} is incompatible with a known image of dimension {lower}")
            };
            d.verdict = Some(verdict);
            d
        }
        None if closed => {
            if lower < kappa {
                return decision(Inconsistent, Inconsistent, "closed bound below the torsion contribution".into(), None);
            }
            let rk = (2 * (lower - kappa)) as u32;
            let mut d = decision(Proved, Proved, "lower bound equals the ambient upper bound".into(), Some(rk));
            d.rank_deduced = true;
            d.verdict = Some(exact(rk, lower, lower, cfg));
            d
        }
        None => decision(NeedsRank, NeedsRank, "no rank supplied and the bounds do not close".into(), None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::int;

    const Q_ROOT_D: FieldConfig = FieldConfig { sqrt_c_in_k: false, sqrt_d_in_k: true, omega_in_k: false };
    const Q_OMEGA: FieldConfig = FieldConfig { sqrt_c_in_k: true, sqrt_d_in_k: true, omega_in_k: true };

    #[test]
    fn bounds() {
        let g = ambient_bound(&int(-810), false).unwrap();
        assert_eq!(g.generator_reps(), vec![int(2), int(3), int(5)]);
        let eta90 = Quad::from_ints(0, 90, -3);
        let g = ambient_bound(&eta90, true).unwrap();
        assert_eq!(g.dimension(), 4);
        // 2, 5 inert and √−3 ramified: only ω survives the twisted condition
        assert_eq!(twisted_part(&g).unwrap().dimension(), 1);
        let g = ambient_bound(&Quad::from_ints(0, 78, -3), true).unwrap();
        // 78√−3 ≡ 2·13: ω, 2, 𝔭, 𝔮 ↦ ω and 𝔭𝔮²
        assert_eq!(twisted_part(&g).unwrap().dimension(), 2);
    }

    #[test]
    fn decisions() {
        let d = decide_pair(Some(1), &Q_ROOT_D, (0, 2), (false, true));
        assert_eq!((d.alpha, d.alpha_prime), (Certainty::Proved, Certainty::Proved));
        assert!(d.verdict.unwrap().consistent);
        let d = decide_pair(Some(0), &Q_ROOT_D, (0, 2), (false, true));
        assert_eq!(d.alpha, Certainty::Inconsistent);
        let d = decide_pair(Some(2), &Q_ROOT_D, (0, 2), (false, true));
        assert_eq!((d.alpha, d.alpha_prime), (Certainty::LowerBoundOnly, Certainty::Proved));
        let d = decide_pair(None, &Q_ROOT_D, (1, 0), (true, true));
        assert_eq!(d.rank, Some(0));
        assert!(d.rank_deduced);
        let d = decide_pair(None, &Q_ROOT_D, (0, 1), (false, true));
        assert_eq!(d.alpha, Certainty::NeedsRank);

        let d = decide_single(Some(4), &Q_OMEGA, 3, false);
        assert_eq!(d.alpha, Certainty::Proved);
        assert_eq!(decide_single(Some(3), &Q_OMEGA, 3, false).alpha, Certainty::Inconsistent);
        assert_eq!(decide_single(Some(6), &Q_OMEGA, 3, false).alpha, Certainty::LowerBoundOnly);
        assert_eq!(decide_single(Some(6), &Q_OMEGA, 3, true).alpha, Certainty::Inconsistent);
        assert_eq!(decide_single(None, &Q_OMEGA, 1, true).rank, Some(0));
    }
}
