//! Valuations at primes of `ℤ`, `ℤ[ω]`, and explicitly described primes of
//! other quadratic fields.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::eisenstein::{valuation_eisenstein, EisensteinPrime};
use super::factor::{is_probable_prime, powmod};
use super::finite::{Gf, GfCtx};
use super::quad::Quad;
use super::rational::{big, int, int_valuation, rat_valuation, Rat};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadPrimeKind {
    Inert,
    Ramified,
    /// The prime `(p, θ − r)` with `θ` the integral generator and `r = theta_residue`.
    Split { theta_residue: u64 },
}

/// A prime of `ℚ(√m)` above the rational prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadPrime {
    pub m: i64,
    pub p: u64,
    pub kind: QuadPrimeKind,
}

fn m_is_1_mod_4(m: i64) -> bool {
    m.rem_euclid(4) == 1
}

/// Monic minimal polynomial `θ² + c1 θ + c0` of the integral generator, as `(c0, c1)`.
fn theta_minpoly(m: i64) -> (i64, i64) {
    if m_is_1_mod_4(m) {
        (-(m - 1) / 4, -1)
    } else {
        (-m, 0)
    }
}

/// Coordinates `(X, Y)` with `x = X + Yθ`.
fn theta_coords(x: &Quad) -> (Rat, Rat) {
    if m_is_1_mod_4(x.m) {
        // √m = 2θ − 1
        (&x.a - &x.b, int(2) * &x.b)
    } else {
        (x.a.clone(), x.b.clone())
    }
}

impl QuadPrime {
    /// All primes of `ℚ(√m)` above `p`, split primes ordered by `theta_residue`.
    pub fn above(m: i64, p: u64) -> Result<Vec<QuadPrime>> {
        if !is_probable_prime(&BigInt::from(p)) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if m == 1 || !super::quad::is_squarefree(m) {
            return Err(Error::Invalid(format!("radicand {m}")));
        }
        let (c0, c1) = theta_minpoly(m);
        let roots: Vec<u64> = (0..p)
            .filter(|&r| {
                let v = (r as i128 * r as i128 + c1 as i128 * r as i128 + c0 as i128)
                    .rem_euclid(p as i128);
                v == 0
            })
            .collect();
        let mk = |kind| QuadPrime { m, p, kind };
        Ok(match roots.len() {
            0 => vec![mk(QuadPrimeKind::Inert)],
            1 => vec![mk(QuadPrimeKind::Ramified)],
            _ => roots
                .into_iter()
                .map(|r| mk(QuadPrimeKind::Split { theta_residue: r }))
                .collect(),
        })
    }

    pub fn residue_degree(&self) -> u32 {
        match self.kind {
            QuadPrimeKind::Inert => 2,
            _ => 1,
        }
    }

    pub fn ramification_index(&self) -> i64 {
        match self.kind {
            QuadPrimeKind::Ramified => 2,
            _ => 1,
        }
    }

    pub fn residue_order(&self) -> u64 {
        self.p.pow(self.residue_degree())
    }

    pub fn label(&self) -> String {
        let theta = if m_is_1_mod_4(self.m) {
            format!("(1 + sqrt({}))/2", self.m)
        } else {
            format!("sqrt({})", self.m)
        };
        match self.kind {
            QuadPrimeKind::Inert => format!("({}) inert in Q(sqrt({}))", self.p, self.m),
            QuadPrimeKind::Ramified => format!("prime above {} in Q(sqrt({}))", self.p, self.m),
            QuadPrimeKind::Split { theta_residue } => {
                format!("({}, {} - {})", self.p, theta, theta_residue)
            }
        }
    }

    pub fn valuation(&self, x: &Quad) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::Zero("valuation"));
        }
        if !x.is_rational() && x.m != self.m {
            return Err(Error::FieldMismatch(format!("{x} at a prime of Q(sqrt({}))", self.m)));
        }
        let x = Quad { a: x.a.clone(), b: x.b.clone(), m: self.m };
        let (xr, yr) = theta_coords(&x);
        let d = xr.denom().lcm(yr.denom());
        let big_x = (&xr * big(&d)).to_integer();
        let big_y = (&yr * big(&d)).to_integer();
        let pb = BigInt::from(self.p);
        let vd = int_valuation(&d, &pb) as i64 * self.ramification_index();
        let norm = x.norm() * big(&d) * big(&d);
        let vn = rat_valuation(&norm, &pb)?;
        let vz = match self.kind {
            QuadPrimeKind::Inert => vn / 2,
            QuadPrimeKind::Ramified => vn,
            QuadPrimeKind::Split { theta_residue } => {
                let k = [&big_x, &big_y]
                    .iter()
                    .filter(|n| !n.is_zero())
                    .map(|n| int_valuation(n, &pb) as i64)
                    .min()
                    .unwrap_or(0);
                let scale = num_traits::pow(pb.clone(), k as usize);
                let (x1, y1) = (&big_x / &scale, &big_y / &scale);
                let at_prime = (x1 + y1 * BigInt::from(theta_residue)).mod_floor(&pb).is_zero();
                if at_prime {
                    vn - k
                } else {
                    k
                }
            }
        };
        Ok(vz - vd)
    }

    /// The residue field, as `𝔽_p` or `𝔽_p[θ]/(minpoly)`; ramified primes unsupported.
    pub fn residue_ctx(&self) -> Result<Arc<GfCtx>> {
        match self.kind {
            QuadPrimeKind::Split { .. } => GfCtx::prime(self.p),
            QuadPrimeKind::Inert => {
                let (c0, c1) = theta_minpoly(self.m);
                let p = self.p as i64;
                Ok(Arc::new(GfCtx {
                    p: self.p,
                    modulus: vec![c0.rem_euclid(p) as u64, c1.rem_euclid(p) as u64, 1],
                }))
            }
            QuadPrimeKind::Ramified => {
                Err(Error::UnsupportedPrime(format!("residue map at {}", self.label())))
            }
        }
    }

    /// Image of a unit at this prime in the residue field.
    pub fn residue(&self, x: &Quad) -> Result<Gf> {
        if self.valuation(x)? != 0 {
            return Err(Error::NotUnit(format!("{x} at {}", self.label())));
        }
        let ctx = self.residue_ctx()?;
        let x = Quad { a: x.a.clone(), b: x.b.clone(), m: self.m };
        let (xr, yr) = theta_coords(&x);
        let d = xr.denom().lcm(yr.denom());
        let pb = BigInt::from(self.p);
        let k = int_valuation(&d, &pb);
        // numerator and denominator are both divisible by p^k at this prime
        let scale = big(&num_traits::pow(pb.clone(), k as usize));
        let (num_x, num_y) = ((&xr * big(&d) / &scale), (&yr * big(&d) / &scale));
        let den = big(&d) / &scale;
        let reduce = |r: &Rat| -> Result<u64> {
            if !r.is_integer() {
                return Err(Error::NotUnit(format!("{x} has a p-adic pole in one coordinate")));
            }
            Ok(r.to_integer().mod_floor(&pb).to_u64().unwrap())
        };
        let (u, v, w) = (reduce(&num_x)?, reduce(&num_y)?, reduce(&den)?);
        let theta = match self.kind {
            QuadPrimeKind::Split { theta_residue } => Gf::from_i64(&ctx, theta_residue as i64),
            _ => Gf::gen(&ctx),
        };
        let num = Gf::from_i64(&ctx, u as i64).plus(&Gf::from_i64(&ctx, v as i64).times(&theta));
        let den = Gf::from_i64(&ctx, w as i64);
        num.divide(&den)
            .ok_or_else(|| Error::NotUnit(format!("{x} at {}", self.label())))
    }
}

impl fmt::Display for QuadPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A prime of `ℤ`, of `ℤ[ω]`, or an explicitly described prime of `ℚ(√m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeDescriptor {
    Rational(BigInt),
    Eisenstein(EisensteinPrime),
    Quadratic(QuadPrime),
}

impl PrimeDescriptor {
    pub fn label(&self) -> String {
        match self {
            PrimeDescriptor::Rational(p) => p.to_string(),
            PrimeDescriptor::Eisenstein(e) => e.label(),
            PrimeDescriptor::Quadratic(q) => q.label(),
        }
    }
}

/// Normalized additive valuation of a nonzero element.
pub fn valuation(x: &Quad, pr: &PrimeDescriptor) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::Zero("valuation"));
    }
    match pr {
        PrimeDescriptor::Rational(p) => {
            if !x.is_rational() {
                return Err(Error::FieldMismatch(format!("{x} at the rational prime {p}")));
            }
            rat_valuation(&x.a, p)
        }
        PrimeDescriptor::Eisenstein(e) => {
            if !x.is_rational() && x.m != -3 {
                return Err(Error::FieldMismatch(format!("{x} at {}", e.label())));
            }
            let x = Quad { a: x.a.clone(), b: x.b.clone(), m: -3 };
            valuation_eisenstein(&x, e)
        }
        PrimeDescriptor::Quadratic(q) => q.valuation(x),
    }
}

/// Whether a unit is a cube in the residue field of `pr`.
pub fn residue_is_cube(x: &Quad, pr: &QuadPrime) -> Result<bool> {
    let g = pr.residue(x)?;
    let q = pr.residue_order();
    if q % 3 != 1 {
        return Ok(true);
    }
    Ok(g.pow((q - 1) / 3).is_one())
}

/// Legendre symbol `(a/p)` for an odd prime `p`, as −1, 0 or 1.
pub fn legendre(a: i64, p: u64) -> i8 {
    let r = powmod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
    match r {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    #[test]
    fn splitting_types() {
        assert_eq!(QuadPrime::above(5, 2).unwrap()[0].kind, QuadPrimeKind::Inert);
        assert_eq!(QuadPrime::above(-15, 2).unwrap().len(), 2);
        assert_eq!(QuadPrime::above(5, 5).unwrap()[0].kind, QuadPrimeKind::Ramified);
        assert_eq!(QuadPrime::above(-15, 3).unwrap()[0].kind, QuadPrimeKind::Ramified);
        assert_eq!(QuadPrime::above(3, 2).unwrap()[0].kind, QuadPrimeKind::Ramified);
        assert_eq!(QuadPrime::above(5, 11).unwrap().len(), 2);
    }

    #[test]
    fn two_adic_valuations() {
        let t = Quad::new(rat(3, 2), rat(-1, 2), 5);
        let two = QuadPrime::above(5, 2).unwrap().remove(0);
        assert_eq!(two.valuation(&t).unwrap(), 0);
        let u = Quad::from_ints(3, 1, -15);
        let vs: Vec<i64> = QuadPrime::above(-15, 2)
            .unwrap()
            .iter()
            .map(|pr| pr.valuation(&u).unwrap())
            .collect();
        assert_eq!(vs, vec![1, 2]);
        let u3 = u.scale(3);
        assert_eq!(QuadPrime::above(-15, 3).unwrap()[0].valuation(&u3).unwrap(), 3);
    }

    #[test]
    fn valuations_sum_to_norm() {
        for (a, b, m) in [(7, 3, -15), (12, 5, 13), (1, 8, -7), (40, 2, 17)] {
            let x = Quad::new(rat(a, 4), rat(b, 6), m);
            for p in [2u64, 3, 5, 7, 11, 13, 17] {
                let primes = QuadPrime::above(m, p).unwrap();
                let total: i64 = primes
                    .iter()
                    .map(|pr| pr.valuation(&x).unwrap() * pr.residue_degree() as i64)
                    .sum();
                let vn = rat_valuation(&x.norm(), &BigInt::from(p)).unwrap();
                assert_eq!(total, vn, "x = {x}, p = {p}");
            }
        }
    }

    #[test]
    fn residue_non_cube_in_f4() {
        let t = Quad::new(rat(3, 2), rat(-1, 2), 5);
        let two = QuadPrime::above(5, 2).unwrap().remove(0);
        assert_eq!(two.residue_order(), 4);
        assert!(!residue_is_cube(&t, &two).unwrap());
        assert!(residue_is_cube(&Quad::from_ints(3, 0, 5), &two).unwrap());
    }

    #[test]
    fn descriptor_dispatch() {
        let x = Quad::from_ints(13, 0, -3);
        let p = EisensteinPrime::split(13).unwrap().0;
        assert_eq!(valuation(&x, &PrimeDescriptor::Eisenstein(p)).unwrap(), 1);
        assert_eq!(valuation(&x, &PrimeDescriptor::Rational(13.into())).unwrap(), 1);
        assert!(valuation(&x.zero_like(), &PrimeDescriptor::Rational(13.into())).is_err());
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
    }
}
