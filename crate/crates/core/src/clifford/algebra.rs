use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// `(t, u)_ω`: generators `i`, `j` with `i³ = t`, `j³ = u`, `ij = ωji`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolParams<F: Field> {
    pub t: F,
    pub u: F,
    pub omega: F,
}

impl<F: Field> SymbolParams<F> {
    pub fn new(t: F, u: F, omega: F) -> Result<SymbolParams<F>> {
        if omega.eq_one() || !omega.cube().eq_one() {
            return Err(Error::Invalid("omega must be a primitive cube root of unity".into()));
        }
        if t.eq_zero() || u.eq_zero() {
            return Err(Error::Zero("symbol slot"));
        }
        Ok(SymbolParams { t, u, omega })
    }
}

/// `Σ c[3m + n]·iᵐjⁿ` for `0 ≤ m, n ≤ 2`.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<F: Field> {
    pub params: SymbolParams<F>,
    pub c: [F; 9],
}

impl<F: Field> fmt::Debug for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

impl<F: Field> AlgebraElement<F> {
    pub fn scalar(params: &SymbolParams<F>, x: F) -> Self {
        let z = x.zero_like();
        let mut c: [F; 9] = std::array::from_fn(|_| z.clone());
        c[0] = x;
        AlgebraElement { params: params.clone(), c }
    }

    pub fn zero(params: &SymbolParams<F>) -> Self {
        Self::scalar(params, params.t.zero_like())
    }

    pub fn one(params: &SymbolParams<F>) -> Self {
        Self::scalar(params, params.t.one_like())
    }

    /// The basis monomial `iᵐjⁿ`.
    pub fn monomial(params: &SymbolParams<F>, m: usize, n: usize) -> Self {
        let mut e = Self::zero(params);
        e.c[3 * (m % 3) + n % 3] = params.t.one_like();
        e
    }

    pub fn i(params: &SymbolParams<F>) -> Self {
        Self::monomial(params, 1, 0)
    }

    pub fn j(params: &SymbolParams<F>) -> Self {
        Self::monomial(params, 0, 1)
    }

    fn check(&self, o: &Self) {
        assert!(self.params == o.params, "elements of different symbol algebras");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        AlgebraElement { params: self.params.clone(), c: std::array::from_fn(|k| self.c[k].plus(&o.c[k])) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        AlgebraElement { params: self.params.clone(), c: std::array::from_fn(|k| self.c[k].minus(&o.c[k])) }
    }

    pub fn scale(&self, x: &F) -> Self {
        AlgebraElement { params: self.params.clone(), c: std::array::from_fn(|k| self.c[k].times(x)) }
    }

    /// `(iᵐjⁿ)(iᵖj^q) = ω^{−np} t^⌊(m+p)/3⌋ u^⌊(n+q)/3⌋ i^{m+p mod 3} j^{n+q mod 3}`.
    fn structure_constant(&self, m: usize, n: usize, p: usize, q: usize) -> (F, usize) {
        let pr = &self.params;
        let omega_inv = pr.omega.square();
        let mut k = omega_inv.pow((n * p) as u64);
        if m + p >= 3 {
            k = k.times(&pr.t);
        }
        if n + q >= 3 {
            k = k.times(&pr.u);
        }
        (k, 3 * ((m + p) % 3) + (n + q) % 3)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = Self::zero(&self.params);
        for (a, x) in self.c.iter().enumerate() {
            if x.eq_zero() {
                continue;
            }
            for (b, y) in o.c.iter().enumerate() {
                if y.eq_zero() {
                    continue;
                }
                let (k, idx) = self.structure_constant(a / 3, a % 3, b / 3, b % 3);
                out.c[idx] = out.c[idx].plus(&x.times(y).times(&k));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.params), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.eq_zero())
    }

    /// The scalar `x` if this element is `x·1`.
    pub fn as_scalar(&self) -> Option<F> {
        self.c[1..].iter().all(|x| x.eq_zero()).then(|| self.c[0].clone())
    }

    /// Matrix of left multiplication by `self` in the monomial basis (column `b` is `self·e_b`).
    pub fn left_matrix(&self) -> Vec<Vec<F>> {
        let mut cols = Vec::with_capacity(9);
        for b in 0..9 {
            cols.push(self.mul(&Self::monomial(&self.params, b / 3, b % 3)).c);
        }
        (0..9).map(|r| (0..9).map(|col| cols[col][r].clone()).collect()).collect()
    }

    /// Two-sided inverse by solving `L_self · x = 1`; a singular operator means a zero divisor.
    pub fn inverse(&self) -> Result<Self> {
        let mut rhs = Self::one(&self.params).c.to_vec();
        let x = solve(self.left_matrix(), &mut rhs).ok_or_else(|| Error::ZeroDivisor(format!("{self:?}")))?;
        let inv = AlgebraElement { params: self.params.clone(), c: x.try_into().expect("nine coordinates") };
        debug_assert!(inv.mul(self).as_scalar().is_some_and(|s| s.eq_one()));
        Ok(inv)
    }
}

/// Gaussian elimination; `None` if the matrix is singular.
fn solve<F: Field>(mut m: Vec<Vec<F>>, rhs: &mut [F]) -> Option<Vec<F>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].eq_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].inverse()?;
        for k in col..n {
            m[col][k] = m[col][k].times(&inv);
        }
        rhs[col] = rhs[col].times(&inv);
        for r in 0..n {
            if r == col || m[r][col].eq_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for k in col..n {
                let v = m[col][k].times(&f);
                m[r][k] = m[r][k].minus(&v);
            }
            let v = rhs[col].times(&f);
            rhs[r] = rhs[r].minus(&v);
        }
    }
    Some(rhs.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::finite::{Gf, GfCtx};
    use rand::{Rng, SeedableRng};

    fn params13() -> SymbolParams<Gf> {
        let ctx = GfCtx::prime(13).unwrap();
        SymbolParams::new(Gf::from_i64(&ctx, 2), Gf::from_i64(&ctx, 7), Gf::from_i64(&ctx, 3)).unwrap()
    }

    #[test]
    fn defining_relations() {
        let p = params13();
        let (i, j) = (AlgebraElement::i(&p), AlgebraElement::j(&p));
        assert_eq!(i.mul(&j), j.mul(&i).scale(&p.omega));
        assert_eq!(i.pow(3).as_scalar(), Some(p.t.clone()));
        assert_eq!(j.pow(3).as_scalar(), Some(p.u.clone()));
    }

    fn random(p: &SymbolParams<Gf>, rng: &mut impl Rng) -> AlgebraElement<Gf> {
        let ctx = p.t.ctx().clone();
        AlgebraElement { params: p.clone(), c: std::array::from_fn(|_| Gf::from_i64(&ctx, rng.gen_range(0..13))) }
    }

    #[test]
    fn associativity_and_inverses() {
        let p = params13();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut inverted = 0;
        for _ in 0..40 {
            let (a, b, c) = (random(&p, &mut rng), random(&p, &mut rng), random(&p, &mut rng));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            if let Ok(inv) = a.inverse() {
                inverted += 1;
                assert!(a.mul(&inv).as_scalar().unwrap().is_one());
                assert!(inv.mul(&a).as_scalar().unwrap().is_one());
            }
        }
        assert!(inverted > 20);
    }

    #[test]
    fn zero_divisors_are_reported() {
        // u = 1 splits the algebra: 1 − j divides zero
        let ctx = GfCtx::prime(13).unwrap();
        let p = SymbolParams::new(Gf::from_i64(&ctx, 2), Gf::from_i64(&ctx, 1), Gf::from_i64(&ctx, 3)).unwrap();
        let x = AlgebraElement::one(&p).sub(&AlgebraElement::j(&p));
        assert!(matches!(x.inverse(), Err(Error::ZeroDivisor(_))));
    }
}
