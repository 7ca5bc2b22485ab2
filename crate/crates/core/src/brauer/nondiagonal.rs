//! Relative Brauer groups of `Z³ = f(X, Y)` over `ℚ` when `Δ_f` is not a square:
//! generators are cup products of `u = α(P)` over `ℚ(√c)` with the twist class `t`
//! over `ℚ(√Δ)`, certified nonsplit by tame symbols in `L = ℚ(√Δ, √c)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::algebras::{invariant_rank, PointRepr};
use super::invariants::{RationalInvariants, Third};
use crate::elliptic::Point;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::{normalize_twisted, BinaryCubicForm};
use crate::numeric::cube::FieldTag;
use crate::numeric::factor::factor_integer;
use crate::numeric::finite::Gf;
use crate::numeric::quad::Quad;
use crate::numeric::rational::{fmt_rat, rat_cbrt, rat_squarefree_decomposition, ser_rat, Rat};
use crate::numeric::valuation::QuadPrime;

/// Profiles are listed only while there are at most this many ramified primes.
pub const MAX_PROFILE_PRIMES: usize = 4;

/// `t ∈ ℚ(√Δ)` with `τ(t) = t⁻¹`, from the diagonalization over `ℚ(√Δ)`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistData {
    pub diagonal_a: Quad,
    pub diagonal_b: Quad,
    pub sqrt_discriminant: Quad,
    /// `−b/a` before normalization.
    pub t_initial: Quad,
    pub t: Quad,
    #[serde(serialize_with = "ser_rat")]
    pub norm_cube_root: Rat,
    pub inverse_conjugate_exact: bool,
}

/// `x` at the real embedding with `√m > 0`.
fn real_value(x: &Quad) -> f64 {
    let f = |r: &Rat| r.to_f64().unwrap_or(f64::NAN);
    f(&x.a) + f(&x.b) * (x.m as f64).sqrt()
}

/// Twist class of a form with non-square discriminant. Over a real quadratic field the
/// representative is pinned to `0 < t < 1` by choosing the sign of `√Δ` and of `t`.
pub fn twist_class(f: &BinaryCubicForm<Rat>) -> Result<TwistData> {
    let delta = f.discriminant();
    if delta.is_zero() {
        return Err(Error::Degenerate("discriminant is zero".into()));
    }
    let (m, k) = rat_squarefree_decomposition(&delta)?;
    if m == 1 {
        return Err(Error::Invalid("discriminant is a square; use the diagonal pipeline".into()));
    }
    let mut data = None;
    for root in [Quad::new(Rat::zero(), k.abs(), m), Quad::new(Rat::zero(), -k.abs(), m)] {
        let fl = f.map(|x| Quad::from_rat(x.clone(), m));
        let d = fl.diagonalize_with_root(&root)?;
        let t0 = d.b.divide(&d.a).ok_or(Error::Zero("diagonal coefficient"))?.negate();
        let n = t0.norm();
        let r = rat_cbrt(&n).ok_or_else(|| Error::NotTwisted(format!("norm {} of t is not a cube", fmt_rat(&n))))?;
        let mut t = if t0.conj() == t0.inverse().unwrap() { t0.clone() } else { normalize_twisted(&t0)? };
        if m > 0 && real_value(&t) < 0.0 {
            t = t.negate();
        }
        let done = m < 0 || real_value(&t) <= 1.0;
        data = Some((root, d, t0, t, r));
        if done {
            break;
        }
    }
    let (root, d, t0, t, r) = data.expect("two orientations tried");
    let exact = t.conj() == t.inverse().unwrap();
    Ok(TwistData {
        diagonal_a: d.a,
        diagonal_b: d.b,
        sqrt_discriminant: root,
        t_initial: t0,
        t,
        norm_cube_root: r,
        inverse_conjugate_exact: exact,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalStatus {
    Zero,
    Nonzero,
    Undetermined,
}

/// Tame-symbol data at one rational prime `p ≠ 3`.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeCertificate {
    pub p: u64,
    /// Ramification index and residue degree of `p` in `L`.
    pub ramification_index: u32,
    pub residue_degree: u32,
    pub residue_field_order: u64,
    /// Valuations of `t` at the primes of `ℚ(√Δ)` above `p`.
    pub t_valuations: Vec<i64>,
    /// Valuations of `u` at the primes of `ℚ(√c)` above `p`.
    pub u_valuations: Vec<i64>,
    /// Whether the residue of `t` is a cube in the residue field of `L` (when `t` is a unit).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_residue_cube: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_residue_cube: Option<bool>,
    pub invariant: LocalStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Tame character at one fixed prime of `L`, up to a sign shared by all generators.
    #[serde(skip)]
    pub exponent: Option<u8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CupProduct {
    pub u: Quad,
    pub t: Quad,
    pub u_field: FieldTag,
    pub t_field: FieldTag,
    pub witness: PointRepr,
    pub u_twisted: bool,
    pub t_inverse_conjugate: bool,
    pub certificate: Vec<PrimeCertificate>,
    /// `Some(true)` when some prime is certified ramified.
    pub nonsplit: Option<bool>,
    /// Local invariant profiles over `ℚ` compatible with the certificate; the class and its
    /// inverse cannot be told apart, so each orientation is listed.
    pub profiles: Vec<RationalInvariants>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NondiagonalBrauer {
    pub generators: Vec<CupProduct>,
    /// `𝔽₃`-rank of the certified invariant data: a lower bound, exact when `determined`.
    pub dimension: usize,
    pub determined: bool,
}

/// `(e, f)` of `p` in `ℚ(√m1, √m2)`.
fn biquadratic_type(m1: i64, m2: i64, p: u64) -> Result<(u32, u32)> {
    let m3 = rat_squarefree_decomposition(&crate::numeric::rational::int(m1 * m2))?.0;
    let mut kinds = Vec::new();
    for m in [m1, m2, m3] {
        kinds.push(QuadPrime::above(m, p)?);
    }
    let unramified: Vec<&Vec<QuadPrime>> = kinds.iter().filter(|k| k[0].ramification_index() == 1).collect();
    Ok(match unramified.len() {
        3 => (1, if kinds.iter().all(|k| k.len() == 2) { 1 } else { 2 }),
        1 => (2, unramified[0][0].residue_degree()),
        0 => (4, 1),
        n => return Err(Error::Invalid(format!("{n} unramified quadratic subfields at {p}"))),
    })
}

/// `e ∈ 𝔽₃` with `x̄^((q−1)/3) = ζ^e` for the first primitive cube root of unity `ζ`
/// of the residue field of `pr`; `q` is the residue order in `L`.
fn character(x: &Quad, pr: &QuadPrime, q: u64) -> Result<u8> {
    let g: Gf = pr.residue(x)?;
    let z = g.pow((q - 1) / 3);
    if z.is_one() {
        return Ok(0);
    }
    let roots = Gf::primitive_cube_roots_of_unity(g.ctx());
    roots
        .iter()
        .position(|r| *r == z)
        .map(|i| i as u8 + 1)
        .ok_or_else(|| Error::Invalid("power is not a cube root of unity".into()))
}

fn lift(x: &Quad, m: i64) -> Quad {
    Quad { a: x.a.clone(), b: x.b.clone(), m }
}

fn certify_prime(t: &Quad, u: &Quad, p: u64) -> Result<PrimeCertificate> {
    let (e_l, f_l) = biquadratic_type(t.m, u.m, p)?;
    let q = p.pow(f_l);
    let pts = QuadPrime::above(t.m, p)?;
    let pus = QuadPrime::above(u.m, p)?;
    let t_vals: Vec<i64> = pts.iter().map(|pr| pr.valuation(t)).collect::<Result<_>>()?;
    let u_vals: Vec<i64> = pus.iter().map(|pr| pr.valuation(u)).collect::<Result<_>>()?;
    let mut note = None;
    // The tame character at the prime of L above (pt, pu), in L's normalization.
    let local = |i: usize, j: usize| -> Result<Option<u8>> {
        let vt = t_vals[i] * (e_l as i64 / pts[i].ramification_index());
        let vu = u_vals[j] * (e_l as i64 / pus[j].ramification_index());
        let chi = |x: &Quad, pr: &QuadPrime| match character(x, pr, q) {
            Ok(c) => Ok(Some(c as i64)),
            Err(Error::UnsupportedPrime(_)) => Ok(None),
            Err(e) => Err(e),
        };
        Ok(match (vt, vu) {
            (0, 0) => Some(0),
            (0, _) => chi(t, &pts[i])?.map(|c| Third::new(c * vu).numerator()),
            (_, 0) => chi(u, &pus[j])?.map(|c| Third::new(-c * vt).numerator()),
            _ => None,
        })
    };
    let first = local(0, 0)?;
    let mut statuses = BTreeSet::new();
    for i in 0..pts.len() {
        for j in 0..pus.len() {
            statuses.insert(local(i, j)?.map(|e| e != 0));
        }
    }
    let determined: Vec<bool> = statuses.iter().flatten().copied().collect();
    if determined.contains(&true) && determined.contains(&false) {
        return Err(Error::Invalid(format!(
            "tame symbols above {p} disagree; the algebra does not descend to Q"
        )));
    }
    let invariant = if statuses.contains(&None) {
        note = Some(if t_vals[0] != 0 && u_vals[0] != 0 {
            "both slots are nonunits here; the tame symbol is not evaluated".to_string()
        } else {
            "residue map at a ramified prime is not implemented".to_string()
        });
        LocalStatus::Undetermined
    } else if determined.contains(&true) {
        LocalStatus::Nonzero
    } else {
        LocalStatus::Zero
    };
    let cube_flag = |vals: &[i64], x: &Quad, pr: &QuadPrime| -> Option<bool> {
        if vals.iter().all(|v| *v == 0) {
            character(x, pr, q).ok().map(|c| c == 0)
        } else {
            None
        }
    };
    Ok(PrimeCertificate {
        p,
        ramification_index: e_l,
        residue_degree: f_l,
        residue_field_order: q,
        t_residue_cube: cube_flag(&t_vals, t, &pts[0]),
        u_residue_cube: cube_flag(&u_vals, u, &pus[0]),
        t_valuations: t_vals,
        u_valuations: u_vals,
        invariant,
        note,
        exponent: first,
    })
}

fn norm_primes(x: &Quad, out: &mut BTreeSet<u64>) -> Result<()> {
    let n = x.norm();
    for part in [n.numer(), n.denom()] {
        for (p, _) in factor_integer(part)?.factors {
            let p = p.to_u64().ok_or_else(|| Error::Unsupported(format!("prime {p} exceeds 64 bits")))?;
            out.insert(p);
        }
    }
    Ok(())
}

/// All sign choices at the ramified primes, completed at 3 by reciprocity.
fn profiles(ramified: &[u64]) -> Vec<RationalInvariants> {
    if ramified.is_empty() {
        return vec![RationalInvariants::default()];
    }
    if ramified.len() > MAX_PROFILE_PRIMES {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0..(1u32 << ramified.len()) {
        let mut map = BTreeMap::new();
        let mut total = Third::ZERO;
        for (i, p) in ramified.iter().enumerate() {
            let v = Third::new(if mask >> i & 1 == 0 { 1 } else { 2 });
            total = total.add(v);
            map.insert(*p, v);
        }
        if !total.is_zero() {
            map.insert(3, total.neg());
        }
        out.push(RationalInvariants(map));
    }
    out
}

/// Cup-product generators for the witnesses `(P, α(P))`, with `α(P) ∈ ℚ(√c)`.
pub fn relative_brauer_nondiagonal(
    twist: &TwistData,
    witnesses: &[(Point<Rat>, Quad)],
    designated: &[u64],
) -> Result<NondiagonalBrauer> {
    let t = &twist.t;
    let mut generators = Vec::new();
    let mut rows: Vec<BTreeMap<u64, u8>> = Vec::new();
    let mut determined = true;
    for (point, u) in witnesses {
        if u.is_rational() || u.m == t.m {
            return Err(Error::FieldMismatch(format!("u = {u} must lie in Q(sqrt(c)) != Q(sqrt(Delta))")));
        }
        let u_twisted = rat_cbrt(&u.norm()).is_some();
        let mut primes = BTreeSet::new();
        norm_primes(t, &mut primes)?;
        norm_primes(u, &mut primes)?;
        primes.extend(designated.iter().copied());
        primes.remove(&3);
        let mut certificate = Vec::new();
        let mut row = BTreeMap::new();
        let mut ramified = Vec::new();
        let mut undetermined = false;
        for p in primes {
            let c = certify_prime(&lift(t, t.m), &lift(u, u.m), p)?;
            match c.invariant {
                LocalStatus::Nonzero => ramified.push(p),
                LocalStatus::Undetermined => undetermined = true,
                LocalStatus::Zero => {}
            }
            if let Some(e) = c.exponent {
                if e != 0 {
                    row.insert(p, e);
                }
            }
            certificate.push(c);
        }
        determined &= !undetermined;
        let nonsplit = if !ramified.is_empty() {
            Some(true)
        } else if undetermined {
            None
        } else {
            Some(false)
        };
        generators.push(CupProduct {
            u: u.clone(),
            t: t.clone(),
            u_field: FieldTag::Quadratic { m: u.m },
            t_field: FieldTag::Quadratic { m: t.m },
            witness: PointRepr::of(point),
            u_twisted,
            t_inverse_conjugate: twist.inverse_conjugate_exact,
            certificate,
            nonsplit,
            profiles: if undetermined { Vec::new() } else { profiles(&ramified) },
        });
        rows.push(row);
    }
    Ok(NondiagonalBrauer { dimension: invariant_rank(&rows), generators, determined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::int;

    fn f66() -> BinaryCubicForm<Rat> {
        BinaryCubicForm::from_raw(int(4), int(0), int(12), int(4))
    }

    #[test]
    fn twist_of_the_worked_form() {
        let tw = twist_class(&f66()).unwrap();
        assert_eq!(tw.t.m, 5);
        assert!(tw.inverse_conjugate_exact);
        // pinned representative in (0, 1)
        let reference = Quad::new(crate::numeric::rational::rat(3, 2), crate::numeric::rational::rat(-1, 2), 5);
        assert_eq!(tw.t, reference);
        assert_eq!(tw.t.conj(), tw.t.inverse().unwrap());
    }

    #[test]
    fn certificate_at_two() {
        let tw = twist_class(&f66()).unwrap();
        let u = Quad::from_ints(9, 3, -15);
        let out = relative_brauer_nondiagonal(&tw, &[(Point::affine(int(6), int(9)), u)], &[2]).unwrap();
        assert_eq!(out.dimension, 1);
        assert!(out.determined);
        let g = &out.generators[0];
        assert_eq!(g.nonsplit, Some(true));
        let c2 = g.certificate.iter().find(|c| c.p == 2).unwrap();
        assert_eq!(c2.residue_field_order, 4);
        assert_eq!(c2.t_valuations, vec![0]);
        let mut uv = c2.u_valuations.clone();
        uv.sort();
        assert_eq!(uv, vec![1, 2]);
        assert_eq!(c2.t_residue_cube, Some(false));
        assert_eq!(g.profiles.len(), 2);
        let shown: Vec<String> = g.profiles.iter().map(|p| format!("{}/{}", p.get(2), p.get(3))).collect();
        assert_eq!(shown, vec!["1/3/2/3", "2/3/1/3"]);
    }

    #[test]
    fn biquadratic_types() {
        assert_eq!(biquadratic_type(5, -15, 2).unwrap(), (1, 2));
        assert_eq!(biquadratic_type(5, -15, 5).unwrap(), (2, 2));
        assert_eq!(biquadratic_type(5, -15, 31).unwrap(), (1, 1));
    }
}
