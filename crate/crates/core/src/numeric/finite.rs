use std::fmt;
use std::sync::Arc;

use super::factor::{invmod, powmod};
use crate::error::{Error, Result};
use crate::field::Field;

/// `𝔽_p[X]/(g)` for a monic irreducible `g` of degree 1, 2 or 3.
#[derive(Debug, PartialEq, Eq)]
pub struct GfCtx {
    pub p: u64,
    /// Monic modulus, coefficients from low to high degree, length `degree + 1`.
    pub modulus: Vec<u64>,
}

#[derive(Clone)]
pub struct Gf {
    ctx: Arc<GfCtx>,
    c: Vec<u64>,
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl GfCtx {
    pub fn prime(p: u64) -> Result<Arc<GfCtx>> {
        if !is_prime_u64(p) || p > u32::MAX as u64 {
            return Err(Error::Invalid(format!("{p} is not a supported prime")));
        }
        Ok(Arc::new(GfCtx { p, modulus: vec![0, 1] }))
    }

    /// Extension of degree 2 or 3 with the lexicographically first irreducible monic modulus.
    pub fn extension(p: u64, degree: usize) -> Result<Arc<GfCtx>> {
        if !is_prime_u64(p) || p > 1 << 20 {
            return Err(Error::Invalid(format!("{p} is not a supported prime")));
        }
        if !(2..=3).contains(&degree) {
            return Err(Error::Unsupported(format!("extension degree {degree}")));
        }
        let count = p.pow(degree as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(degree + 1);
            let mut k = idx;
            for _ in 0..degree {
                g.push(k % p);
                k /= p;
            }
            g.push(1);
            // degree ≤ 3: irreducible iff no root in 𝔽_p
            let has_root = (0..p).any(|x| {
                g.iter().rev().fold(0, |acc, &coef| (acc * x + coef) % p) == 0
            });
            if !has_root {
                return Ok(Arc::new(GfCtx { p, modulus: g }));
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }
}

impl Gf {
    pub fn is_zero(&self) -> bool {
        self.eq_zero()
    }

    pub fn is_one(&self) -> bool {
        self.eq_one()
    }

    pub fn new(ctx: &Arc<GfCtx>, coeffs: &[u64]) -> Gf {
        let mut c = vec![0; ctx.degree()];
        for (i, &x) in coeffs.iter().enumerate().take(ctx.degree()) {
            c[i] = x % ctx.p;
        }
        Gf { ctx: ctx.clone(), c }
    }

    pub fn from_i64(ctx: &Arc<GfCtx>, n: i64) -> Gf {
        Gf::new(ctx, &[n.rem_euclid(ctx.p as i64) as u64])
    }

    /// The generator `X` of the extension.
    pub fn gen(ctx: &Arc<GfCtx>) -> Gf {
        let mut x = Gf::new(ctx, &[]);
        if ctx.degree() == 1 {
            x.c[0] = (ctx.p - ctx.modulus[0]) % ctx.p;
        } else {
            x.c[1] = 1;
        }
        x
    }

    /// Element with the given base-`p` index, enumerating the field as `0..order`.
    pub fn from_index(ctx: &Arc<GfCtx>, mut idx: u64) -> Gf {
        let mut c = vec![0; ctx.degree()];
        for x in c.iter_mut() {
            *x = idx % ctx.p;
            idx /= ctx.p;
        }
        Gf { ctx: ctx.clone(), c }
    }

    pub fn index(&self) -> u64 {
        self.c.iter().rev().fold(0, |acc, &x| acc * self.ctx.p + x)
    }

    pub fn all(ctx: &Arc<GfCtx>) -> Vec<Gf> {
        (0..ctx.order()).map(|i| Gf::from_index(ctx, i)).collect()
    }

    pub fn ctx(&self) -> &Arc<GfCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// The prime-field constant `self` viewed in `ctx` (same characteristic).
    pub fn embed(&self, ctx: &Arc<GfCtx>) -> Result<Gf> {
        if self.ctx.p != ctx.p || self.c[1..].iter().any(|&x| x != 0) {
            return Err(Error::FieldMismatch("only prime-field constants embed".into()));
        }
        Ok(Gf::new(ctx, &[self.c[0]]))
    }

    fn check(&self, other: &Gf) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx,
            "finite field elements from different fields"
        );
    }

    /// Primitive cube roots of unity, ascending by index.
    pub fn primitive_cube_roots_of_unity(ctx: &Arc<GfCtx>) -> Vec<Gf> {
        let one = Gf::from_i64(ctx, 1);
        let mut out: Vec<Gf> = Gf::all(ctx)
            .into_iter()
            .filter(|x| *x != one && x.cube() == one)
            .collect();
        out.sort_by_key(|x| x.index());
        out
    }

    /// `ℓ`-th root for prime `ℓ`, via the Sylow decomposition of the unit group.
    fn prime_root(&self, l: u64) -> Option<Gf> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let q = self.ctx.order();
        let one = self.one_like();
        if (q - 1) % l != 0 {
            let e = invmod(l % (q - 1), q - 1)?;
            return Some(self.pow(e));
        }
        if self.pow((q - 1) / l) != one {
            return None;
        }
        let mut m = q - 1;
        let mut sylow = 1u64;
        while m % l == 0 {
            m /= l;
            sylow *= l;
        }
        let u = if m == 1 { 0 } else { invmod(l % m, m)? };
        let x0 = self.pow(u);
        let b = x0.pow(l).times(&self.inverse()?);
        let z = (1..q)
            .map(|i| Gf::from_index(&self.ctx, i))
            .find(|z| z.pow((q - 1) / l) != one)?;
        let g = z.pow(m);
        let mut acc = one.clone();
        for k in 0..sylow {
            if acc == b {
                debug_assert!(k % l == 0);
                let fix = g.pow(k / l).inverse()?;
                return Some(x0.times(&fix));
            }
            acc = acc.times(&g);
        }
        None
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Gf) -> bool {
        self.ctx.p == other.ctx.p && self.ctx.modulus == other.ctx.modulus && self.c == other.c
    }
}

impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.len() == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| match i {
                0 => format!("{x}"),
                1 => format!("{x}*X"),
                _ => format!("{x}*X^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Field for Gf {
    fn zero_like(&self) -> Self {
        Gf::new(&self.ctx, &[])
    }
    fn one_like(&self) -> Self {
        Gf::new(&self.ctx, &[1])
    }
    fn from_int_like(&self, n: i64) -> Self {
        Gf::from_i64(&self.ctx, n)
    }
    fn eq_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn plus(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.ctx.p;
        let c = self.c.iter().zip(&o.c).map(|(x, y)| (x + y) % p).collect();
        Gf { ctx: self.ctx.clone(), c }
    }
    fn minus(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.ctx.p;
        let c = self.c.iter().zip(&o.c).map(|(x, y)| (x + p - y) % p).collect();
        Gf { ctx: self.ctx.clone(), c }
    }
    fn times(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.ctx.p;
        let n = self.ctx.degree();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in self.c.iter().enumerate() {
            for (j, &y) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let g = &self.ctx.modulus;
        for k in (n..prod.len()).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                prod[k - n + i] = (prod[k - n + i] + (p - lead) * g[i]) % p;
            }
        }
        prod.truncate(n);
        Gf { ctx: self.ctx.clone(), c: prod }
    }
    fn negate(&self) -> Self {
        let p = self.ctx.p;
        Gf { ctx: self.ctx.clone(), c: self.c.iter().map(|&x| (p - x) % p).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.ctx.degree() == 1 {
            let p = self.ctx.p;
            return Some(Gf::new(&self.ctx, &[powmod(self.c[0], p - 2, p)]));
        }
        Some(self.pow(self.ctx.order() - 2))
    }
    fn sqrt(&self) -> Option<Self> {
        if self.ctx.p == 2 {
            // Frobenius is bijective in characteristic 2
            return Some(self.pow(self.ctx.order() / 2));
        }
        self.prime_root(2)
    }
    fn cbrt(&self) -> Option<Self> {
        if self.ctx.p == 3 {
            return Some(self.pow(self.ctx.order() / 3));
        }
        self.prime_root(3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_in_prime_fields() {
        for p in [5u64, 7, 13, 19, 31, 61] {
            let ctx = GfCtx::prime(p).unwrap();
            for x in Gf::all(&ctx) {
                let cubes: Vec<Gf> = Gf::all(&ctx).into_iter().filter(|y| y.cube() == x).collect();
                match x.cbrt() {
                    Some(r) => assert_eq!(r.cube(), x),
                    None => assert!(cubes.is_empty(), "{x} in F_{p}"),
                }
                let squares: Vec<Gf> = Gf::all(&ctx).into_iter().filter(|y| y.square() == x).collect();
                match x.sqrt() {
                    Some(r) => assert_eq!(r.square(), x),
                    None => assert!(squares.is_empty()),
                }
            }
        }
    }

    #[test]
    fn extension_fields() {
        for (p, d) in [(2u64, 2usize), (7, 2), (13, 3), (5, 3)] {
            let ctx = GfCtx::extension(p, d).unwrap();
            let all = Gf::all(&ctx);
            assert_eq!(all.len() as u64, p.pow(d as u32));
            for x in all.iter().skip(1) {
                assert!(x.times(&x.inverse().unwrap()).is_one());
                if let Some(r) = x.cbrt() {
                    assert_eq!(r.cube(), *x);
                } else {
                    assert!(!all.iter().any(|y| y.cube() == *x));
                }
            }
        }
    }

    #[test]
    fn seven_is_not_a_cube_mod_13_but_is_in_the_cubic_extension() {
        let f13 = GfCtx::prime(13).unwrap();
        let seven = Gf::from_i64(&f13, 7);
        assert_eq!(seven.pow(4), Gf::from_i64(&f13, 9));
        assert!(seven.cbrt().is_none());
        let f13_3 = GfCtx::extension(13, 3).unwrap();
        let r = seven.embed(&f13_3).unwrap().cbrt().unwrap();
        assert_eq!(r.cube(), seven.embed(&f13_3).unwrap());
    }

    #[test]
    fn omega_in_f13() {
        let f13 = GfCtx::prime(13).unwrap();
        let w = Gf::primitive_cube_roots_of_unity(&f13);
        assert_eq!(w, vec![Gf::from_i64(&f13, 3), Gf::from_i64(&f13, 9)]);
    }
}
