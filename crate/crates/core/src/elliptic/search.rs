use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;

use super::torsion::normalize_c;
use super::{Curve, Point};
use crate::error::{Error, Result};
use crate::numeric::rational::{exact_isqrt, Rat};

pub const DEFAULT_SEARCH_BOUND: u64 = 10_000;
pub const DEFAULT_DENOM_BOUND: u64 = 8;

fn exact_sqrt_i128(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let r = (v as u128).sqrt();
    (r * r == v as u128).then_some(r as i128)
}

/// `√(m³ + c·e⁶)` when it is an integer.
fn ordinate(m: i64, e6: i128, c0: &BigInt, c0_small: Option<i128>) -> Option<BigInt> {
    let m = m as i128;
    if let Some(c) = c0_small {
        if let Some(v) = c.checked_mul(e6).and_then(|ce| (m * m * m).checked_add(ce)) {
            return exact_sqrt_i128(v).map(BigInt::from);
        }
    }
    let v = BigInt::from(m).pow(3) + c0 * BigInt::from(e6);
    exact_isqrt(&v)
}

/// Points `(m/e², n/e³)` on the sixth-power-free model with `|m| ≤ bound`, `1 ≤ e ≤ denom_bound`,
/// returned on the model of `curve`, without `O`, sorted by `(x, y)`.
pub fn search_points(curve: &Curve<Rat>, bound: u64, denom_bound: u64) -> Result<Vec<Point<Rat>>> {
    if bound == 0 || denom_bound == 0 {
        return Err(Error::Invalid("search bounds must be at least 1".into()));
    }
    let bound = i64::try_from(bound).map_err(|_| Error::Invalid("search bound too large".into()))?;
    let norm = normalize_c(&curve.c)?;
    let c0_small = norm.c0.to_i128();
    let mut found: BTreeSet<(Rat, Rat)> = BTreeSet::new();
    for e in 1..=denom_bound as i64 {
        let e6 = (e as i128).pow(6);
        for m in -bound..=bound {
            if e > 1 && m.gcd(&e) != 1 {
                continue;
            }
            let Some(n) = ordinate(m, e6, &norm.c0, c0_small) else { continue };
            let x = Rat::new(BigInt::from(m), BigInt::from(e * e));
            let y = Rat::new(n, BigInt::from(e * e * e));
            for y in [y.clone(), -y] {
                let p = norm.to_original(&Point::affine(x.clone(), y));
                if let Point::Affine { x, y } = p {
                    found.insert((x, y));
                }
            }
        }
    }
    Ok(found.into_iter().map(|(x, y)| Point::affine(x, y)).collect())
}
