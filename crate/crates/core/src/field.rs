//! The coefficient-field contract shared by forms, curves and algebras.
//!
//! Elements carry whatever context they need (the radicand of a quadratic
//! field, the modulus of a finite field), so constants are produced from an
//! existing element rather than from the type alone.

use std::fmt::Debug;

pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn eq_zero(&self) -> bool;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Option<Self>;

    /// Some square root in the field, if one exists.
    fn sqrt(&self) -> Option<Self>;
    /// Some cube root in the field, if one exists.
    fn cbrt(&self) -> Option<Self>;

    fn eq_one(&self) -> bool {
        *self == self.one_like()
    }

    fn divide(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|i| self.times(&i))
    }

    fn square(&self) -> Self {
        self.times(self)
    }

    fn cube(&self) -> Self {
        self.times(self).times(self)
    }

    fn scale(&self, n: i64) -> Self {
        self.times(&self.from_int_like(n))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents; `None` for 0 to a negative power.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inverse().map(|i| i.pow(e.unsigned_abs()))
        }
    }
}
