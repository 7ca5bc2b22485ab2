use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numeric::eisenstein::{factor_eisenstein_number, residue_symbol_exponent, EisensteinPrime, PrimeKind};
use crate::numeric::quad::Quad;

/// An element `k/3` of `(1/3)ℤ/ℤ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Third(u8);

impl Third {
    pub const ZERO: Third = Third(0);

    pub fn new(k: i64) -> Third {
        Third(k.rem_euclid(3) as u8)
    }

    pub fn numerator(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, o: Third) -> Third {
        Third::new(self.0 as i64 + o.0 as i64)
    }

    pub fn neg(self) -> Third {
        Third::new(-(self.0 as i64))
    }

    pub fn scale(self, k: i64) -> Third {
        Third::new(self.0 as i64 * k)
    }
}

impl fmt::Display for Third {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            k => write!(f, "{k}/3"),
        }
    }
}

impl Serialize for Third {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Nonzero invariants keyed by prime label, serialized as a JSON object in the stored order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InvariantMap(pub Vec<(String, Third)>);

impl InvariantMap {
    pub fn get(&self, label: &str) -> Third {
        self.0.iter().find(|(l, _)| l == label).map_or(Third::ZERO, |(_, v)| *v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for InvariantMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// Local invariants of a symbol algebra over `ℚ(ω)` at every prime where they can be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    pub entries: Vec<(EisensteinPrime, Third)>,
}

/// Local invariants of an algebra over `ℚ`, keyed by rational prime; zeros omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalInvariants(pub BTreeMap<u64, Third>);

impl RationalInvariants {
    pub fn get(&self, p: u64) -> Third {
        self.0.get(&p).copied().unwrap_or_default()
    }

    pub fn is_split(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Third {
        self.0.values().fold(Third::ZERO, |a, b| a.add(*b))
    }

    pub fn to_map(&self) -> InvariantMap {
        InvariantMap(self.0.iter().map(|(p, v)| (p.to_string(), *v)).collect())
    }
}

impl Serialize for RationalInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_map().serialize(s)
    }
}

impl InvariantTable {
    pub fn get(&self, pr: &EisensteinPrime) -> Third {
        self.entries.iter().find(|(q, _)| q == pr).map_or(Third::ZERO, |(_, v)| *v)
    }

    pub fn is_split(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.is_zero())
    }

    pub fn sum(&self) -> Third {
        self.entries.iter().fold(Third::ZERO, |a, (_, v)| a.add(*v))
    }

    /// Nonzero entries keyed by `(p, branch)`.
    pub fn vector(&self) -> BTreeMap<(u64, u8), u8> {
        self.entries
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(q, v)| (q.key(), v.numerator()))
            .collect()
    }

    pub fn to_map(&self) -> InvariantMap {
        InvariantMap(
            self.entries
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(q, v)| (q.label(), *v))
                .collect(),
        )
    }

    /// Invariants over `ℚ` of an algebra whose base change to `ℚ(ω)` has this table:
    /// `inv_p = inv_𝔭` at split `p`, `2·inv_𝔭` when `p` has a single prime of local degree 2.
    pub fn to_rational(&self) -> Result<RationalInvariants> {
        let mut out = BTreeMap::new();
        for (pr, v) in &self.entries {
            let value = match pr.kind {
                PrimeKind::Split { .. } => {
                    let other = self
                        .entries
                        .iter()
                        .find(|(q, _)| q.p == pr.p && q != pr)
                        .map_or(Third::ZERO, |(_, w)| *w);
                    if other != *v {
                        return Err(Error::Invalid(format!(
                            "invariants {v} and {other} above {} differ; not a base change from Q",
                            pr.p
                        )));
                    }
                    *v
                }
                PrimeKind::Inert | PrimeKind::Ramified => v.scale(2),
            };
            if !value.is_zero() {
                out.insert(pr.p, value);
            }
        }
        Ok(RationalInvariants(out))
    }
}

pub(crate) fn in_eisenstein_field(x: &Quad) -> Result<Quad> {
    if x.is_rational() || x.m == -3 {
        Ok(Quad { a: x.a.clone(), b: x.b.clone(), m: -3 })
    } else {
        Err(Error::FieldMismatch(format!("{x} is not in Q(omega)")))
    }
}

/// Local invariants of `(t, u)_ω` over `ℚ(ω)`.
///
/// At a prime `𝔭 ∤ 3` the invariant is `−e/3`, where `e` is the cubic residue exponent of the
/// tame symbol `(−1)^{v(t)v(u)} t^{v(u)} u^{−v(t)}`; at `√−3` it is fixed by reciprocity.
/// `extra` adds primes to the table even when both slots are units there.
pub fn local_invariants(t: &Quad, u: &Quad, extra: &[EisensteinPrime]) -> Result<InvariantTable> {
    let t = in_eisenstein_field(t)?;
    let u = in_eisenstein_field(u)?;
    let ft = factor_eisenstein_number(&t)?;
    let fu = factor_eisenstein_number(&u)?;
    let mut primes: Vec<EisensteinPrime> = ft
        .factors
        .iter()
        .chain(&fu.factors)
        .map(|(q, _)| q.clone())
        .chain(extra.iter().cloned())
        .collect();
    for pr in primes.clone() {
        primes.extend(EisensteinPrime::above(pr.p)?);
    }
    primes.push(EisensteinPrime::ramified());
    primes.sort();
    primes.dedup();

    let mut entries = Vec::with_capacity(primes.len());
    let mut total = Third::ZERO;
    for pr in primes.iter().filter(|q| q.kind != PrimeKind::Ramified) {
        let (vt, vu) = (ft.exponent(pr), fu.exponent(pr));
        let value = if vt == 0 && vu == 0 {
            Third::ZERO
        } else {
            let sign = if (vt * vu) % 2 == 0 { 1 } else { -1 };
            let tame = t
                .powi(vu)
                .and_then(|x| u.powi(-vt).map(|y| x.times(&y)))
                .ok_or(Error::Zero("symbol slot"))?
                .scale(sign);
            Third::new(-(residue_symbol_exponent(&tame, pr)? as i64))
        };
        total = total.add(value);
        entries.push((pr.clone(), value));
    }
    entries.push((EisensteinPrime::ramified(), total.neg()));
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(InvariantTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::int;

    fn q(a: i64, b: i64) -> Quad {
        Quad::from_ints(a, b, -3)
    }

    #[test]
    fn calibration_at_thirteen() {
        let (p, qq) = EisensteinPrime::split(13).unwrap();
        assert_eq!(p.pi, q(1, 2));
        let three = q(3, 0);
        let tp = local_invariants(&three, &q(2, 0).times(&p.pi.square()), &[]).unwrap();
        assert_eq!(tp.get(&p), Third::new(2));
        assert_eq!(tp.get(&EisensteinPrime::ramified()), Third::new(1));
        assert_eq!(tp.get(&qq), Third::ZERO);
        let tq = local_invariants(&three, &q(2, 0).times(&qq.pi.square()), &[]).unwrap();
        assert_eq!(tq.get(&qq), Third::new(1));
        assert_eq!(tq.get(&EisensteinPrime::ramified()), Third::new(2));
        let tpq = local_invariants(&three, &p.pi.times(&qq.pi.square()), &[]).unwrap();
        for pr in [&p, &qq, &EisensteinPrime::ramified()] {
            assert_eq!(tpq.get(pr), Third::new(1));
        }
        let rat = tpq.to_rational().unwrap();
        assert_eq!(rat.get(13), Third::new(1));
        assert_eq!(rat.get(3), Third::new(2));
        assert!(to_rational_rejects(&tp));
    }

    fn to_rational_rejects(t: &InvariantTable) -> bool {
        t.to_rational().is_err()
    }

    #[test]
    fn split_symbols() {
        for (a, b) in [(2, 2), (2, 11), (1, 7)] {
            let t = local_invariants(&Quad::from_rat(int(a), -3), &Quad::from_rat(int(b), -3), &[]).unwrap();
            assert!(t.is_split(), "({a}, {b})");
        }
    }

    #[test]
    fn reciprocity_and_antisymmetry() {
        let elems = [q(2, 0), q(3, 0), q(5, 0), q(1, 2), q(2, 1), q(7, 0), q(4, 1), q(0, 1)];
        for x in &elems {
            for y in &elems {
                let t = local_invariants(x, y, &[]).unwrap();
                assert!(t.sum().is_zero());
                let r = local_invariants(y, x, &[]).unwrap();
                for (pr, v) in &t.entries {
                    assert_eq!(r.get(pr), v.neg(), "({x}, {y}) at {pr}");
                }
            }
        }
    }
}
