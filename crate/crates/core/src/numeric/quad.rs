use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::{fmt_rat, int, parse_rat, rat, rat_sqrt, rational_roots_depressed_cubic, Rat};
use crate::error::{Error, Result};
use crate::field::Field;

/// The element `a + b·√m` of `ℚ(√m)`, `m` squarefree and not 1.
///
/// Elements with `b = 0` are rationals and mix freely with any radicand;
/// mixing two irrational elements over different radicands panics.
#[derive(Clone, Debug)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
    pub m: i64,
}

pub fn is_squarefree(m: i64) -> bool {
    if m == 0 {
        return false;
    }
    let mut n = m.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

impl Quad {
    pub fn is_zero(&self) -> bool {
        self.eq_zero()
    }

    pub fn new(a: Rat, b: Rat, m: i64) -> Quad {
        assert!(m != 1 && is_squarefree(m), "radicand {m} must be squarefree and not 1");
        Quad { a, b, m }
    }

    pub fn try_new(a: Rat, b: Rat, m: i64) -> Result<Quad> {
        if m == 1 || !is_squarefree(m) {
            return Err(Error::Invalid(format!("radicand {m} must be squarefree and not 1")));
        }
        Ok(Quad { a, b, m })
    }

    pub fn from_rat(a: Rat, m: i64) -> Quad {
        Quad::new(a, Rat::zero(), m)
    }

    pub fn from_ints(a: i64, b: i64, m: i64) -> Quad {
        Quad::new(int(a), int(b), m)
    }

    /// `√m` itself.
    pub fn root(m: i64) -> Quad {
        Quad::new(Rat::zero(), Rat::one(), m)
    }

    /// `ω = (−1 + √−3)/2`.
    pub fn omega() -> Quad {
        Quad::new(rat(-1, 2), rat(1, 2), -3)
    }

    /// `η = 2ω + 1 = √−3`.
    pub fn eta() -> Quad {
        Quad::root(-3)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Quad {
        Quad { a: self.a.clone(), b: -&self.b, m: self.m }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - int(self.m) * &self.b * &self.b
    }

    pub fn trace(&self) -> Rat {
        int(2) * &self.a
    }

    fn common_m(&self, other: &Quad) -> i64 {
        if self.b.is_zero() {
            other.m
        } else if other.b.is_zero() || other.m == self.m {
            self.m
        } else {
            panic!("mixing ℚ(√{}) and ℚ(√{})", self.m, other.m)
        }
    }

    pub fn same_field(&self, other: &Quad) -> bool {
        self.m == other.m || self.b.is_zero() || other.b.is_zero()
    }

    pub fn parse(a: &str, b: &str, m: i64) -> Result<Quad> {
        Quad::try_new(parse_rat(a)?, parse_rat(b)?, m)
    }

    /// All cube roots in the field, ordered by `(a, b)`.
    pub fn cube_roots(&self) -> Vec<Quad> {
        if self.is_zero() {
            return vec![self.clone()];
        }
        let n_xi = self.norm();
        let Some(n) = super::rational::rat_cbrt(&n_xi) else {
            return Vec::new();
        };
        let mut roots: Vec<Quad> = Vec::new();
        // trace t of a root solves t^3 - 3 n t - Tr(ξ) = 0; the root is t/2 ± y√m
        for t in rational_roots_depressed_cubic(&(int(-3) * &n), &(-self.trace())) {
            let x = &t / int(2);
            let y2 = (&x * &x - &n) / int(self.m);
            let Some(y) = rat_sqrt(&y2) else { continue };
            for y in [y.clone(), -y] {
                let eta = Quad { a: x.clone(), b: y, m: self.m };
                if eta.cube() == *self && !roots.contains(&eta) {
                    roots.push(eta);
                }
            }
        }
        roots.sort_by(|u, v| (&u.a, &u.b).cmp(&(&v.a, &v.b)));
        roots
    }

    /// Elements `x` of the field with `x² = self`.
    pub fn square_roots(&self) -> Vec<Quad> {
        if self.is_zero() {
            return vec![self.clone()];
        }
        let mut out: Vec<Quad> = Vec::new();
        let mut push = |q: Quad| {
            if q.square() == *self && !out.contains(&q) {
                out.push(q);
            }
        };
        if let Some(nn) = rat_sqrt(&self.norm()) {
            for n in [nn.clone(), -nn] {
                let x2 = (&self.a + &n) / int(2);
                if let Some(x) = rat_sqrt(&x2) {
                    if !x.is_zero() {
                        let y = &self.b / (int(2) * &x);
                        push(Quad { a: x.clone(), b: y.clone(), m: self.m });
                        push(Quad { a: -x, b: -y, m: self.m });
                    }
                }
            }
        }
        if self.b.is_zero() {
            if let Some(y) = rat_sqrt(&(&self.a / int(self.m))) {
                push(Quad { a: Rat::zero(), b: y.clone(), m: self.m });
                push(Quad { a: Rat::zero(), b: -y, m: self.m });
            }
        }
        out
    }

    /// Common denominator form `(x, y, d)` with `self = (x + y√m)/d`, `d > 0`.
    pub fn integral_parts(&self) -> (BigInt, BigInt, BigInt) {
        let d = num_integer::lcm(self.a.denom().clone(), self.b.denom().clone());
        let x = (&self.a * Rat::from_integer(d.clone())).to_integer();
        let y = (&self.b * Rat::from_integer(d.clone())).to_integer();
        (x, y, d)
    }
}

impl PartialEq for Quad {
    fn eq(&self, other: &Quad) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.m == other.m)
    }
}

impl Eq for Quad {}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.m);
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let coef = |b: &Rat| -> String {
            if b.is_one() {
                root.clone()
            } else {
                format!("{}*{}", fmt_rat(b), root)
            }
        };
        if self.a.is_zero() {
            if (-&self.b).is_one() {
                return write!(f, "-{root}");
            }
            return write!(f, "{}", coef(&self.b));
        }
        if self.b.is_negative() {
            write!(f, "{} - {}", fmt_rat(&self.a), coef(&-&self.b))
        } else {
            write!(f, "{} + {}", fmt_rat(&self.a), coef(&self.b))
        }
    }
}

impl Serialize for Quad {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Quad", 3)?;
        st.serialize_field("a", &fmt_rat(&self.a))?;
        st.serialize_field("b", &fmt_rat(&self.b))?;
        st.serialize_field("m", &self.m)?;
        st.end()
    }
}

impl Field for Quad {
    fn zero_like(&self) -> Self {
        Quad { a: Rat::zero(), b: Rat::zero(), m: self.m }
    }
    fn one_like(&self) -> Self {
        Quad { a: Rat::one(), b: Rat::zero(), m: self.m }
    }
    fn from_int_like(&self, n: i64) -> Self {
        Quad { a: int(n), b: Rat::zero(), m: self.m }
    }
    fn eq_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        Quad { a: &self.a + &o.a, b: &self.b + &o.b, m: self.common_m(o) }
    }
    fn minus(&self, o: &Self) -> Self {
        Quad { a: &self.a - &o.a, b: &self.b - &o.b, m: self.common_m(o) }
    }
    fn times(&self, o: &Self) -> Self {
        let m = self.common_m(o);
        Quad {
            a: &self.a * &o.a + int(m) * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            m,
        }
    }
    fn negate(&self) -> Self {
        Quad { a: -&self.a, b: -&self.b, m: self.m }
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Quad { a: &self.a / &n, b: -&self.b / &n, m: self.m })
    }
    fn sqrt(&self) -> Option<Self> {
        let roots = self.square_roots();
        // prefer the root with positive rational part, else positive √m part
        roots
            .iter()
            .find(|q| q.a.is_positive() || (q.a.is_zero() && !q.b.is_negative()))
            .cloned()
            .or_else(|| roots.into_iter().next())
    }
    fn cbrt(&self) -> Option<Self> {
        self.cube_roots().into_iter().next()
    }
}

/// `√x · √y` for integers, evaluated in the principal complex branch and
/// returned as `k·√s` with `s` squarefree: `(k, s)`.
pub fn sqrt_product(x: i64, y: i64) -> Result<(Rat, i64)> {
    let prod = BigInt::from(x) * BigInt::from(y);
    let (s, k) = super::rational::squarefree_decomposition(&prod)?;
    let s: i64 = num_traits::ToPrimitive::to_i64(&s)
        .ok_or_else(|| Error::Unsupported("radicand exceeds 64 bits".into()))?;
    let sign = if x < 0 && y < 0 { -1 } else { 1 };
    Ok((Rat::from_integer(k * sign), s))
}
