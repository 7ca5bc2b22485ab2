use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

use crate::error::{Error, Result};
use crate::field::Field;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

pub fn ser_rat_opt<S: Serializer>(r: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fmt_rat(r)),
        None => s.serialize_none(),
    }
}

pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn exact_icbrt(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    Some(Rat::new(exact_isqrt(x.numer())?, exact_isqrt(x.denom())?))
}

pub fn rat_cbrt(x: &Rat) -> Option<Rat> {
    Some(Rat::new(exact_icbrt(x.numer())?, exact_icbrt(x.denom())?))
}

pub fn is_rat_square(x: &Rat) -> bool {
    rat_sqrt(x).is_some()
}

/// Writes a nonzero integer as `s * k^2` with `s` squarefree; returns `(s, k)`, `k > 0`.
pub fn squarefree_decomposition(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Err(Error::Zero("squarefree decomposition"));
    }
    let f = super::factor::factor_integer(n)?;
    let mut s = BigInt::from(f.sign);
    let mut k = BigInt::one();
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            s *= p;
        }
        k *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    Ok((s, k))
}

/// Writes a nonzero rational as `s * w^2` with `s` a squarefree integer and `w > 0` rational.
pub fn rat_squarefree_decomposition(x: &Rat) -> Result<(i64, Rat)> {
    // x = n/d = n*d / d^2
    let nd = x.numer() * x.denom();
    let (s, k) = squarefree_decomposition(&nd)?;
    let s = s
        .to_i64()
        .ok_or_else(|| Error::Unsupported(format!("squarefree part {s} exceeds 64 bits")))?;
    Ok((s, Rat::new(k, x.denom().clone())))
}

/// Writes a nonzero rational as `c0 * w^6` with `c0` a sixth-power-free integer and `w > 0`.
pub fn sixth_power_free(x: &Rat) -> Result<(BigInt, Rat)> {
    if x.is_zero() {
        return Err(Error::Zero("sixth-power-free normalization"));
    }
    // x = n/d = n*d^5 / d^6
    let scaled = x.numer() * num_traits::pow(x.denom().clone(), 5);
    let f = super::factor::factor_integer(&scaled)?;
    let mut c0 = BigInt::from(f.sign);
    let mut k = BigInt::one();
    for (p, e) in &f.factors {
        c0 *= num_traits::pow(p.clone(), (*e % 6) as usize);
        k *= num_traits::pow(p.clone(), (*e / 6) as usize);
    }
    Ok((c0, Rat::new(k, x.denom().clone())))
}

/// Integer roots of the monic cubic `y^3 + p y + q`, ascending and without repetition.
fn integer_roots_depressed(p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let g = |y: &BigInt| y * y * y + p * y + q;
    let bound = BigInt::one() + p.abs().max(q.abs());
    // Monotone integer ranges: increasing outside [-s0, s0], decreasing inside
    // it when p < 0 (s0 = floor(sqrt(-p/3)) bounds the critical points).
    let s0 = if p.is_negative() { (-p / BigInt::from(3)).sqrt() } else { BigInt::from(-1) };
    let mut ranges: Vec<(BigInt, BigInt, bool)> = Vec::new();
    if s0.is_negative() {
        ranges.push((-bound.clone(), bound.clone(), true));
    } else {
        ranges.push((-bound.clone(), -&s0 - 1, true));
        ranges.push((-s0.clone(), s0.clone(), false));
        ranges.push((&s0 + 1, bound.clone(), true));
    }
    let mut roots = Vec::new();
    for (lo, hi, increasing) in ranges {
        if lo > hi {
            continue;
        }
        let (mut lo, mut hi) = (lo, hi);
        let sign = |v: BigInt| if increasing { v } else { -v };
        if sign(g(&lo)).is_positive() || sign(g(&hi)).is_negative() {
            continue;
        }
        while lo < hi {
            let mid = (&lo + &hi).div_floor(&BigInt::from(2));
            if sign(g(&mid)).is_negative() {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if g(&lo).is_zero() && !roots.contains(&lo) {
            roots.push(lo);
        }
    }
    roots.sort();
    roots
}

/// Rational roots of `x^3 + p x + q`, ascending.
pub fn rational_roots_depressed_cubic(p: &Rat, q: &Rat) -> Vec<Rat> {
    // Substitute x = y / D with D clearing both denominators: y^3 + p D^2 y + q D^3.
    let d = p.denom().lcm(q.denom());
    let dr = big(&d);
    let p2 = p * &dr * &dr;
    let q3 = q * &dr * &dr * &dr;
    debug_assert!(p2.is_integer() && q3.is_integer());
    integer_roots_depressed(&p2.to_integer(), &q3.to_integer())
        .into_iter()
        .map(|y| Rat::new(y, d.clone()))
        .collect()
}

/// Rational roots of the monic cubic `x^3 + a x^2 + b x + c`, ascending.
pub fn rational_roots_monic_cubic(a: &Rat, b: &Rat, c: &Rat) -> Vec<Rat> {
    // x = y - a/3
    let three = int(3);
    let shift = a / &three;
    let p = b - a * a / &three;
    let q = c - a * b / &three + int(2) * a * a * a / int(27);
    rational_roots_depressed_cubic(&p, &q)
        .into_iter()
        .map(|y| y - &shift)
        .collect()
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        int(n)
    }
    fn eq_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn sqrt(&self) -> Option<Self> {
        rat_sqrt(self)
    }
    fn cbrt(&self) -> Option<Self> {
        rat_cbrt(self)
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rat_valuation(x: &Rat, p: &BigInt) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::Zero("valuation"));
    }
    Ok(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

pub fn int_valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(fmt_rat(&parse_rat("26/3").unwrap()), "26/3");
        assert_eq!(fmt_rat(&parse_rat("-4/2").unwrap()), "-2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn cubic_roots() {
        // t^3 - 18 t - 18 has no rational root
        assert!(rational_roots_depressed_cubic(&int(-18), &int(-18)).is_empty());
        // (x-4)(x+2)^2 = x^3 - 12x - 16
        assert_eq!(rational_roots_depressed_cubic(&int(-12), &int(-16)), vec![int(-2), int(4)]);
        // (x - 1/2)(x^2 + x + 5)
        let r = rational_roots_monic_cubic(&rat(1, 2), &rat(9, 2), &rat(-5, 2));
        assert_eq!(r, vec![rat(1, 2)]);
        assert_eq!(rational_roots_depressed_cubic(&int(0), &int(0)), vec![int(0)]);
    }

    #[test]
    fn normalizations() {
        let (c0, w) = sixth_power_free(&int(-8640)).unwrap();
        assert_eq!(c0, BigInt::from(-135));
        assert_eq!(w, int(2));
        let (c0, w) = sixth_power_free(&rat(-27, 64)).unwrap();
        assert_eq!(c0, BigInt::from(-27));
        assert_eq!(w, rat(1, 2));
        let (s, w) = rat_squarefree_decomposition(&int(320)).unwrap();
        assert_eq!((s, w), (5, int(8)));
        let (s, w) = rat_squarefree_decomposition(&rat(-3, 4)).unwrap();
        assert_eq!((s, w), (-3, rat(1, 2)));
    }
}
