//! Sparse multivariate polynomials over `ℚ`, for checking polynomial identities.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::rational::{int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly { nvars, terms: BTreeMap::from([(e, int(1))]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        let entry = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, int(1));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rewrites `x_i^deg` as `replacement` until every exponent of `x_i` is below `deg`.
    pub fn reduce_power(&self, i: usize, deg: u32, replacement: &Poly) -> Poly {
        let mut cur = self.clone();
        loop {
            let Some((e, _)) = cur.terms.iter().find(|(e, _)| e[i] >= deg) else {
                return cur;
            };
            let e = e.clone();
            let c = cur.terms.remove(&e).unwrap();
            let mut rest = e;
            rest[i] -= deg;
            let mono = Poly { nvars: cur.nvars, terms: BTreeMap::from([(rest, c)]) };
            cur = cur.add(&mono.mul(replacement));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_and_reduction() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let lhs = x.add(&y).pow(2);
        let rhs = x.pow(2).add(&x.mul(&y).scale(&int(2))).add(&y.pow(2));
        assert!(lhs.sub(&rhs).is_zero());
        // x^3 with x^2 -> y becomes x*y
        assert_eq!(x.pow(3).reduce_power(0, 2, &y), x.mul(&y));
    }
}
