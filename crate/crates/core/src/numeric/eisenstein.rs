//! The Eisenstein integers `ℤ[ω]` inside `ℚ(√−3)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::factor::{factor_integer, invmod, to_u64, two_squares_plus_three};
use super::finite::{Gf, GfCtx};
use super::quad::Quad;
use super::rational::{big, int, int_valuation, Rat};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeKind {
    /// `√−3`, above 3.
    Ramified,
    /// A rational prime `p ≡ 2 mod 3`.
    Inert,
    /// `x + y√−3` with `x, y > 0` (`conjugate = false`) or its conjugate.
    Split { conjugate: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinPrime {
    pub pi: Quad,
    pub p: u64,
    pub kind: PrimeKind,
}

impl EisensteinPrime {
    pub fn ramified() -> EisensteinPrime {
        EisensteinPrime { pi: Quad::eta(), p: 3, kind: PrimeKind::Ramified }
    }

    pub fn inert(p: u64) -> Result<EisensteinPrime> {
        if p % 3 != 2 || !super::factor::is_probable_prime(&BigInt::from(p)) {
            return Err(Error::Invalid(format!("{p} is not an inert prime of ℤ[ω]")));
        }
        Ok(EisensteinPrime { pi: Quad::from_ints(p as i64, 0, -3), p, kind: PrimeKind::Inert })
    }

    /// The canonical split pair `(𝔭, 𝔮)` above `p ≡ 1 mod 3`.
    pub fn split(p: u64) -> Result<(EisensteinPrime, EisensteinPrime)> {
        if !super::factor::is_probable_prime(&BigInt::from(p)) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let (x, y) = two_squares_plus_three(p)
            .ok_or_else(|| Error::Invalid(format!("{p} does not split in ℤ[ω]")))?;
        let (x, y) = (x as i64, y as i64);
        Ok((
            EisensteinPrime {
                pi: Quad::from_ints(x, y, -3),
                p,
                kind: PrimeKind::Split { conjugate: false },
            },
            EisensteinPrime {
                pi: Quad::from_ints(x, -y, -3),
                p,
                kind: PrimeKind::Split { conjugate: true },
            },
        ))
    }

    /// All primes above the rational prime `p`.
    pub fn above(p: u64) -> Result<Vec<EisensteinPrime>> {
        Ok(match p % 3 {
            0 if p == 3 => vec![EisensteinPrime::ramified()],
            1 => {
                let (a, b) = EisensteinPrime::split(p)?;
                vec![a, b]
            }
            _ => vec![EisensteinPrime::inert(p)?],
        })
    }

    /// Identifies a prime element given up to a unit.
    pub fn from_element(x: &Quad) -> Result<EisensteinPrime> {
        let n = eisenstein_norm(x)?;
        let n = to_u64(&n)?;
        let is_prime = |k: u64| super::factor::is_probable_prime(&BigInt::from(k));
        if n == 3 {
            return Ok(EisensteinPrime::ramified());
        }
        if is_prime(n) && n % 3 == 1 {
            let (a, b) = EisensteinPrime::split(n)?;
            return Ok(if divides(&a.pi, x)? { a } else { b });
        }
        let r = (n as f64).sqrt().round() as u64;
        if r * r == n && is_prime(r) && r % 3 == 2 {
            return EisensteinPrime::inert(r);
        }
        Err(Error::Invalid(format!("{x} is not a prime of ℤ[ω]")))
    }

    pub fn norm(&self) -> u64 {
        match self.kind {
            PrimeKind::Inert => self.p * self.p,
            _ => self.p,
        }
    }

    pub fn ramification_index(&self) -> i64 {
        if self.kind == PrimeKind::Ramified {
            2
        } else {
            1
        }
    }

    /// Sort key: rational prime, then `𝔭` before `𝔮`.
    pub fn key(&self) -> (u64, u8) {
        let branch = matches!(self.kind, PrimeKind::Split { conjugate: true }) as u8;
        (self.p, branch)
    }

    pub fn label(&self) -> String {
        self.pi.to_string()
    }

    pub fn residue_field(&self) -> ResidueField {
        let p = self.p;
        match self.kind {
            PrimeKind::Inert => {
                // 𝔽_p[W]/(W² + W + 1), W the image of ω
                let ctx = Arc::new(GfCtx { p, modulus: vec![1, 1, 1] });
                let omega = Gf::gen(&ctx);
                ResidueField { ctx, omega, prime: self.clone() }
            }
            PrimeKind::Split { .. } => {
                let ctx = GfCtx::prime(p).expect("split primes are small enough");
                // x + y√−3 ≡ 0 gives √−3 ≡ −x/y
                let x = rat_mod(&self.pi.a, p).unwrap();
                let y = rat_mod(&self.pi.b, p).unwrap();
                let root = (p - x) % p * invmod(y, p).unwrap() % p;
                let omega = Gf::from_i64(&ctx, -1)
                    .plus(&Gf::from_i64(&ctx, root as i64))
                    .times(&Gf::from_i64(&ctx, 2).inverse().unwrap());
                ResidueField { ctx, omega, prime: self.clone() }
            }
            PrimeKind::Ramified => {
                let ctx = GfCtx::prime(3).unwrap();
                let omega = Gf::from_i64(&ctx, 1);
                ResidueField { ctx, omega, prime: self.clone() }
            }
        }
    }
}

impl PartialOrd for EisensteinPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EisensteinPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for EisensteinPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pi)
    }
}

fn rat_mod(x: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64()?;
    let d = x.denom().mod_floor(&pb).to_u64()?;
    Some(n * invmod(d, p)? % p)
}

pub struct ResidueField {
    pub ctx: Arc<GfCtx>,
    /// Image of `ω`.
    pub omega: Gf,
    pub prime: EisensteinPrime,
}

impl ResidueField {
    pub fn order(&self) -> u64 {
        self.ctx.order()
    }

    /// Reduces an element whose `ω`-coordinates have denominators prime to `p`.
    pub fn reduce(&self, x: &Quad) -> Option<Gf> {
        let (u, v) = omega_coords(x);
        let p = self.ctx.p;
        let u = Gf::from_i64(&self.ctx, rat_mod(&u, p)? as i64);
        let v = Gf::from_i64(&self.ctx, rat_mod(&v, p)? as i64);
        Some(u.plus(&v.times(&self.omega)))
    }

    /// `e` with `g^((q−1)/3) = ω̄^e`.
    pub fn cube_character(&self, g: &Gf) -> Result<u8> {
        let q = self.order();
        if g.is_zero() {
            return Err(Error::NotUnit("residue is zero".into()));
        }
        if q % 3 != 1 {
            return Err(Error::UnsupportedPrime(format!("residue field of order {q}")));
        }
        let w = g.pow((q - 1) / 3);
        let mut acc = g.one_like();
        for e in 0..3u8 {
            if acc == w {
                return Ok(e);
            }
            acc = acc.times(&self.omega);
        }
        unreachable!("(q−1)/3 power is a cube root of unity")
    }
}

/// Coordinates `(u, v)` with `x = u + vω`.
pub fn omega_coords(x: &Quad) -> (Rat, Rat) {
    assert!(x.is_rational() || x.m == -3, "not an element of ℚ(ω)");
    // a + b√−3 = a + b(2ω + 1)
    (&x.a + &x.b, int(2) * &x.b)
}

pub fn from_omega_coords(u: &Rat, v: &Rat) -> Quad {
    let half = v / int(2);
    Quad { a: u - &half, b: half, m: -3 }
}

pub fn is_eisenstein_integer(x: &Quad) -> bool {
    let (u, v) = omega_coords(x);
    u.is_integer() && v.is_integer()
}

fn eisenstein_norm(x: &Quad) -> Result<BigInt> {
    if !is_eisenstein_integer(x) {
        return Err(Error::NotIntegral(x.to_string()));
    }
    Ok(x.norm().to_integer())
}

/// Exact quotient `x / d` when it lies in `ℤ[ω]`.
fn exact_div(x: &Quad, d: &Quad) -> Option<Quad> {
    let q = x.divide(d)?;
    is_eisenstein_integer(&q).then_some(q)
}

fn divides(d: &Quad, x: &Quad) -> Result<bool> {
    Ok(exact_div(x, d).is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EisensteinUnit {
    pub negative: bool,
    pub omega_power: u8,
}

impl EisensteinUnit {
    pub fn value(&self) -> Quad {
        let w = Quad::omega().pow(self.omega_power as u64);
        if self.negative {
            w.negate()
        } else {
            w
        }
    }

    pub fn identify(x: &Quad) -> Option<EisensteinUnit> {
        for k in 0..3u8 {
            for negative in [false, true] {
                let u = EisensteinUnit { negative, omega_power: k };
                if u.value() == *x {
                    return Some(u);
                }
            }
        }
        None
    }

    pub fn mul(&self, o: &EisensteinUnit) -> EisensteinUnit {
        EisensteinUnit {
            negative: self.negative != o.negative,
            omega_power: (self.omega_power + o.omega_power) % 3,
        }
    }

    pub fn inv(&self) -> EisensteinUnit {
        EisensteinUnit { negative: self.negative, omega_power: (3 - self.omega_power) % 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinFactorization {
    pub unit: EisensteinUnit,
    /// Ascending by prime key; exponents nonzero (negative only for non-integral input).
    pub factors: Vec<(EisensteinPrime, i64)>,
}

impl EisensteinFactorization {
    pub fn value(&self) -> Quad {
        let mut acc = self.unit.value();
        for (pr, e) in &self.factors {
            acc = acc.times(&pr.pi.powi(*e).expect("primes are nonzero"));
        }
        acc
    }

    pub fn exponent(&self, pr: &EisensteinPrime) -> i64 {
        self.factors.iter().find(|(q, _)| q == pr).map_or(0, |(_, e)| *e)
    }
}

/// Factors a nonzero element of `ℤ[ω]`.
pub fn factor_eisenstein(z: &Quad) -> Result<EisensteinFactorization> {
    if z.is_zero() {
        return Err(Error::Zero("factor_eisenstein"));
    }
    let n = eisenstein_norm(z)?;
    let mut rest = z.clone();
    let mut factors = Vec::new();
    for (p, _) in factor_integer(&n)?.factors {
        for pr in EisensteinPrime::above(to_u64(&p)?)? {
            let mut e = 0;
            while let Some(q) = exact_div(&rest, &pr.pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((pr, e));
            }
        }
    }
    let unit = EisensteinUnit::identify(&rest)
        .ok_or_else(|| Error::Invalid(format!("factorization of {z} left non-unit {rest}")))?;
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(EisensteinFactorization { unit, factors })
}

/// Factors any nonzero element of `ℚ(ω)`, allowing negative exponents.
pub fn factor_eisenstein_number(x: &Quad) -> Result<EisensteinFactorization> {
    if x.is_zero() {
        return Err(Error::Zero("factor_eisenstein_number"));
    }
    let (u, v) = omega_coords(x);
    let d = u.denom().lcm(v.denom());
    let z = x.times(&Quad::from_rat(big(&d), -3));
    let num = factor_eisenstein(&z)?;
    let den = factor_eisenstein(&Quad::from_rat(big(&d), -3))?;
    let mut factors = num.factors;
    for (pr, e) in den.factors {
        match factors.iter_mut().find(|(q, _)| *q == pr) {
            Some(entry) => entry.1 -= e,
            None => factors.push((pr, -e)),
        }
    }
    factors.retain(|(_, e)| *e != 0);
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(EisensteinFactorization { unit: num.unit.mul(&den.unit.inv()), factors })
}

pub fn valuation_eisenstein(x: &Quad, pr: &EisensteinPrime) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::Zero("valuation"));
    }
    let (u, v) = omega_coords(x);
    let d = u.denom().lcm(v.denom());
    let mut z = x.times(&Quad::from_rat(big(&d), -3));
    let mut e = 0i64;
    while let Some(q) = exact_div(&z, &pr.pi) {
        z = q;
        e += 1;
    }
    let vd = int_valuation(&d, &BigInt::from(pr.p)) as i64 * pr.ramification_index();
    Ok(e - vd)
}

/// Residue of a `𝔭`-unit, via its factorization when denominators involve `p`.
fn residue_of_unit(x: &Quad, rf: &ResidueField) -> Result<Gf> {
    if valuation_eisenstein(x, &rf.prime)? != 0 {
        return Err(Error::NotUnit(format!("{x} at {}", rf.prime)));
    }
    if let Some(g) = rf.reduce(x) {
        return Ok(g);
    }
    let f = factor_eisenstein_number(x)?;
    let mut acc = rf.reduce(&f.unit.value()).expect("units reduce");
    for (pr, e) in &f.factors {
        let g = rf.reduce(&pr.pi).expect("primes reduce");
        acc = acc.times(&g.powi(*e).ok_or_else(|| Error::NotUnit(pr.label()))?);
    }
    Ok(acc)
}

/// Cubic residue exponent at any unramified prime, inert ones included.
pub fn residue_symbol_exponent(x: &Quad, pr: &EisensteinPrime) -> Result<u8> {
    if pr.kind == PrimeKind::Ramified {
        return Err(Error::UnsupportedPrime("√−3 is wildly ramified".into()));
    }
    let rf = pr.residue_field();
    let g = residue_of_unit(x, &rf)?;
    rf.cube_character(&g)
}

/// `e ∈ {0,1,2}` with `ξ^((q−1)/3) ≡ ω^e mod 𝔭` at a split prime `𝔭`.
pub fn cube_residue_character(x: &Quad, pr: &EisensteinPrime) -> Result<u8> {
    if !matches!(pr.kind, PrimeKind::Split { .. }) {
        return Err(Error::UnsupportedPrime(format!("{} is not a split prime", pr.label())));
    }
    residue_symbol_exponent(x, pr)
}

/// Greatest common divisor in `ℤ[ω]` by the Euclidean algorithm.
pub fn gcd_eisenstein(x: &Quad, y: &Quad) -> Result<Quad> {
    if !is_eisenstein_integer(x) || !is_eisenstein_integer(y) {
        return Err(Error::NotIntegral(format!("{x}, {y}")));
    }
    let (mut a, mut b) = (x.clone(), y.clone());
    while !b.is_zero() {
        let q = a.divide(&b).unwrap();
        let (u, v) = omega_coords(&q);
        let round = |r: &Rat| (r + Rat::new(BigInt::one(), BigInt::from(2))).floor();
        let q = from_omega_coords(&round(&u), &round(&v));
        let r = a.minus(&q.times(&b));
        a = b;
        b = r;
    }
    Ok(a)
}
