//! Cube classes `K*/K*³` and their finite `𝔽₃`-spans.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::eisenstein::{factor_eisenstein_number, EisensteinPrime};
use super::factor::{factor_integer, to_u64};
use super::finite::Gf;
use super::quad::Quad;
use super::rational::{big, Rat};
use crate::error::{Error, Result};
use crate::field::Field;

/// A coordinate of the exponent vector of a class: the unit `ω`, a rational
/// prime, or a prime of `ℤ[ω]` keyed by `(p, branch)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeKey {
    Omega,
    Rational(BigInt),
    Eisenstein(u64, u8),
}

impl PrimeKey {
    pub fn label(&self) -> String {
        match self {
            PrimeKey::Omega => "omega".into(),
            PrimeKey::Rational(p) => p.to_string(),
            PrimeKey::Eisenstein(p, b) => eisenstein_prime(*p, *b)
                .map(|e| e.label())
                .unwrap_or_else(|_| format!("prime above {p}")),
        }
    }
}

pub fn eisenstein_prime(p: u64, branch: u8) -> Result<EisensteinPrime> {
    EisensteinPrime::above(p)?
        .into_iter()
        .find(|e| e.key() == (p, branch))
        .ok_or_else(|| Error::Invalid(format!("no prime above {p} with branch {branch}")))
}

/// Exponents mod 3; zero entries are omitted.
pub type ClassVector = BTreeMap<PrimeKey, u8>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FieldTag {
    Rationals,
    Quadratic { m: i64 },
    Finite { p: u64, degree: usize },
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::Quadratic { m: -3 } => write!(f, "Q(omega)"),
            FieldTag::Quadratic { m } => write!(f, "Q(sqrt({m}))"),
            FieldTag::Finite { p, degree: 1 } => write!(f, "F_{p}"),
            FieldTag::Finite { p, degree } => write!(f, "F_{p}^{degree}"),
        }
    }
}

/// Fields whose multiplicative groups mod cubes we compute in.
pub trait ClassField: Field {
    fn tag(&self) -> FieldTag;
    /// Exponent vector mod 3 when the field has a factorization engine.
    fn class_vector(&self) -> Result<Option<ClassVector>>;
    /// Canonical representative of a vector, inverse to `class_vector`.
    fn from_class_vector(&self, v: &ClassVector) -> Option<Self>;
    /// The nontrivial automorphism over the base field (identity on ℚ).
    fn conjugate(&self) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
}

fn reduce3(e: i64) -> u8 {
    e.rem_euclid(3) as u8
}

impl ClassField for Rat {
    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn class_vector(&self) -> Result<Option<ClassVector>> {
        if self.is_zero() {
            return Err(Error::Zero("cube class"));
        }
        let mut v = ClassVector::new();
        for (n, sign) in [(self.numer(), 1i64), (self.denom(), -1)] {
            for (p, e) in factor_integer(n)?.factors {
                let r = reduce3(sign * e as i64);
                if r != 0 {
                    v.insert(PrimeKey::Rational(p), r);
                }
            }
        }
        Ok(Some(v))
    }
    fn from_class_vector(&self, v: &ClassVector) -> Option<Self> {
        let mut acc = BigInt::one();
        for (k, e) in v {
            match k {
                PrimeKey::Rational(p) => acc *= num_traits::pow(p.clone(), *e as usize),
                _ => return None,
            }
        }
        Some(big(&acc))
    }
    fn conjugate(&self) -> Self {
        self.clone()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
}

impl ClassField for Quad {
    fn tag(&self) -> FieldTag {
        FieldTag::Quadratic { m: self.m }
    }
    fn class_vector(&self) -> Result<Option<ClassVector>> {
        if self.is_zero() {
            return Err(Error::Zero("cube class"));
        }
        if self.m != -3 {
            return Ok(None);
        }
        let f = factor_eisenstein_number(self)?;
        let mut v = ClassVector::new();
        if f.unit.omega_power != 0 {
            v.insert(PrimeKey::Omega, f.unit.omega_power);
        }
        for (pr, e) in f.factors {
            let r = reduce3(e);
            if r != 0 {
                let (p, b) = pr.key();
                v.insert(PrimeKey::Eisenstein(p, b), r);
            }
        }
        Ok(Some(v))
    }
    fn from_class_vector(&self, v: &ClassVector) -> Option<Self> {
        if self.m != -3 {
            return None;
        }
        let mut acc = Quad::from_ints(1, 0, -3);
        for (k, e) in v {
            let base = match k {
                PrimeKey::Omega => Quad::omega(),
                PrimeKey::Eisenstein(p, b) => eisenstein_prime(*p, *b).ok()?.pi,
                PrimeKey::Rational(_) => return None,
            };
            acc = acc.times(&base.pow(*e as u64));
        }
        Some(acc)
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        Quad { a: r.clone(), b: Rat::zero(), m: self.m }
    }
}

impl ClassField for Gf {
    fn tag(&self) -> FieldTag {
        FieldTag::Finite { p: self.ctx().p, degree: self.ctx().degree() }
    }
    fn class_vector(&self) -> Result<Option<ClassVector>> {
        if self.is_zero() {
            return Err(Error::Zero("cube class"));
        }
        Ok(None)
    }
    fn from_class_vector(&self, _v: &ClassVector) -> Option<Self> {
        None
    }
    fn conjugate(&self) -> Self {
        self.pow(self.ctx().p)
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        let p = BigInt::from(self.ctx().p);
        let n = num_integer::Integer::mod_floor(r.numer(), &p);
        let d = num_integer::Integer::mod_floor(r.denom(), &p);
        let n = self.from_int_like(to_u64(&n).unwrap() as i64);
        let d = self.from_int_like(to_u64(&d).unwrap() as i64);
        n.divide(&d).expect("denominator prime to the characteristic")
    }
}

/// Cube root of a nonzero element, if one exists in its field.
pub fn cube_test<F: Field>(x: &F) -> Result<Option<F>> {
    if x.eq_zero() {
        return Err(Error::Zero("cube_test"));
    }
    Ok(x.cbrt())
}

#[derive(Clone, Debug)]
pub struct CubeClass<F: ClassField> {
    pub rep: F,
    pub vector: Option<ClassVector>,
}

impl<F: ClassField> CubeClass<F> {
    pub fn new(rep: F) -> Result<CubeClass<F>> {
        let vector = rep.class_vector()?;
        Ok(CubeClass { rep, vector })
    }

    pub fn one_like(&self) -> CubeClass<F> {
        CubeClass::new(self.rep.one_like()).expect("1 is a unit")
    }

    pub fn tag(&self) -> FieldTag {
        self.rep.tag()
    }

    pub fn is_trivial(&self) -> bool {
        match &self.vector {
            Some(v) => v.is_empty(),
            None => self.rep.cbrt().is_some(),
        }
    }

    pub fn mul(&self, other: &CubeClass<F>) -> CubeClass<F> {
        let rep = self.rep.times(&other.rep);
        let vector = match (&self.vector, &other.vector) {
            (Some(a), Some(b)) => Some(add_vectors(a, b, 1)),
            _ => None,
        };
        CubeClass { rep, vector }
    }

    pub fn inverse(&self) -> CubeClass<F> {
        CubeClass {
            rep: self.rep.inverse().expect("classes have nonzero representatives"),
            vector: self.vector.as_ref().map(|v| scale_vector(v, 2)),
        }
    }

    pub fn pow(&self, k: u8) -> CubeClass<F> {
        let mut acc = self.one_like();
        for _ in 0..k % 3 {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn same_class(&self, other: &CubeClass<F>) -> bool {
        self.mul(&other.inverse()).is_trivial()
    }

    pub fn conjugate(&self) -> Result<CubeClass<F>> {
        CubeClass::new(self.rep.conjugate())
    }

    /// Twisted condition: `τ(ξ) ≡ ξ⁻¹` mod cubes.
    pub fn is_twisted(&self) -> Result<bool> {
        Ok(self.conjugate()?.mul(self).is_trivial())
    }

    /// The canonical representative `ω^k ∏ π^e` when factored, else the stored one.
    pub fn canonical_rep(&self) -> F {
        self.vector
            .as_ref()
            .and_then(|v| self.rep.from_class_vector(v))
            .unwrap_or_else(|| self.rep.clone())
    }
}

pub fn add_vectors(a: &ClassVector, b: &ClassVector, k: u8) -> ClassVector {
    let mut out = a.clone();
    for (key, e) in b {
        let entry = out.entry(key.clone()).or_insert(0);
        *entry = (*entry + k * e) % 3;
    }
    out.retain(|_, e| *e != 0);
    out
}

pub fn scale_vector(a: &ClassVector, k: u8) -> ClassVector {
    let mut out: ClassVector = a.iter().map(|(key, e)| (key.clone(), (e * k) % 3)).collect();
    out.retain(|_, e| *e != 0);
    out
}

/// Row-reduced echelon form over `𝔽₃`; zero rows dropped. Columns follow `keys` order.
pub fn rref(rows: &[ClassVector]) -> Vec<ClassVector> {
    let keys: BTreeSet<PrimeKey> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    let mut rows: Vec<ClassVector> = rows.to_vec();
    let mut out: Vec<ClassVector> = Vec::new();
    for key in &keys {
        let Some(pos) = rows.iter().position(|r| r.contains_key(key)) else { continue };
        let mut pivot = rows.remove(pos);
        let inv = if pivot[key] == 1 { 1 } else { 2 };
        pivot = scale_vector(&pivot, inv);
        for r in rows.iter_mut().chain(out.iter_mut()) {
            if let Some(&e) = r.get(key) {
                *r = add_vectors(r, &pivot, 3 - e);
            }
        }
        out.push(pivot);
    }
    out
}

/// Kernel of the linear map given by the images of the coordinate vectors `keys`.
pub fn kernel(keys: &[PrimeKey], images: &[ClassVector]) -> Vec<ClassVector> {
    // Row-reduce the augmented rows [image | e_i]; rows whose image part vanishes span the kernel.
    let tagged: Vec<(ClassVector, ClassVector)> = keys
        .iter()
        .zip(images)
        .map(|(k, img)| (img.clone(), BTreeMap::from([(k.clone(), 1u8)])))
        .collect();
    let mut rows = tagged;
    let img_keys: BTreeSet<PrimeKey> = rows.iter().flat_map(|(i, _)| i.keys().cloned()).collect();
    let mut done: Vec<(ClassVector, ClassVector)> = Vec::new();
    for key in &img_keys {
        let Some(pos) = rows.iter().position(|(i, _)| i.contains_key(key)) else { continue };
        let (pi, pe) = rows.remove(pos);
        let inv = if pi[key] == 1 { 1 } else { 2 };
        let (pi, pe) = (scale_vector(&pi, inv), scale_vector(&pe, inv));
        for (i, e) in rows.iter_mut() {
            if let Some(&c) = i.get(key) {
                *i = add_vectors(i, &pi, 3 - c);
                *e = add_vectors(e, &pe, 3 - c);
            }
        }
        done.push((pi, pe));
    }
    rref(&rows.into_iter().map(|(_, e)| e).collect::<Vec<_>>())
}

fn reduce_against(basis: &[ClassVector], x: &ClassVector) -> ClassVector {
    // basis is in RREF; pivot of each row is its first key
    let mut x = x.clone();
    for row in basis {
        let pivot = row.keys().next().expect("nonzero rows");
        if let Some(&c) = x.get(pivot) {
            x = add_vectors(&x, row, 3 - c);
        }
    }
    x
}

#[derive(Clone, Debug)]
pub struct CubeClassGroup<F: ClassField> {
    pub tag: FieldTag,
    pub basis: Vec<CubeClass<F>>,
    linear: bool,
}

impl<F: ClassField> CubeClassGroup<F> {
    pub fn trivial(tag: FieldTag) -> CubeClassGroup<F> {
        CubeClassGroup { tag, basis: Vec::new(), linear: true }
    }

    /// Reduced span. Factored classes get the RREF basis (canonical), others a
    /// greedy basis in input order.
    pub fn span(tag: FieldTag, classes: &[CubeClass<F>]) -> Result<CubeClassGroup<F>> {
        if let Some(c) = classes.iter().find(|c| c.tag() != tag) {
            return Err(Error::FieldMismatch(format!("{} in a group over {}", c.tag(), tag)));
        }
        if classes.iter().all(|c| c.vector.is_some()) {
            let rows: Vec<ClassVector> = classes.iter().map(|c| c.vector.clone().unwrap()).collect();
            let reduced = rref(&rows);
            let mut basis = Vec::new();
            for v in reduced {
                let template = &classes[0].rep;
                let rep = template
                    .from_class_vector(&v)
                    .ok_or_else(|| Error::Invalid("unrepresentable class vector".into()))?;
                basis.push(CubeClass { rep, vector: Some(v) });
            }
            return Ok(CubeClassGroup { tag, basis, linear: true });
        }
        let mut g = CubeClassGroup { tag, basis: Vec::new(), linear: false };
        for c in classes {
            if !g.member(c)? {
                g.basis.push(c.clone());
            }
        }
        Ok(g)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        3u64.pow(self.basis.len() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    /// All `3^n` elements as exponent tuples with their classes.
    pub fn elements(&self) -> Vec<(Vec<u8>, CubeClass<F>)> {
        let n = self.basis.len();
        let mut out = Vec::new();
        for idx in 0..3usize.pow(n as u32) {
            let mut k = idx;
            let mut exps = Vec::with_capacity(n);
            let mut acc: Option<CubeClass<F>> = None;
            for b in &self.basis {
                let e = (k % 3) as u8;
                k /= 3;
                exps.push(e);
                let term = b.pow(e);
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.mul(&term),
                });
            }
            if let Some(a) = acc {
                out.push((exps, a));
            }
        }
        out
    }

    pub fn member(&self, x: &CubeClass<F>) -> Result<bool> {
        if x.tag() != self.tag {
            return Err(Error::FieldMismatch(format!("{} against {}", x.tag(), self.tag)));
        }
        if self.linear {
            if let Some(v) = &x.vector {
                let rows: Vec<ClassVector> =
                    self.basis.iter().map(|b| b.vector.clone().unwrap()).collect();
                return Ok(reduce_against(&rows, v).is_empty());
            }
        }
        if self.basis.is_empty() {
            return Ok(x.is_trivial());
        }
        Ok(self.elements().iter().any(|(_, g)| g.same_class(x)))
    }

    /// Exponents expressing `x` in the basis, if it is a member.
    pub fn coordinates(&self, x: &CubeClass<F>) -> Option<Vec<u8>> {
        if self.basis.is_empty() {
            return x.is_trivial().then(Vec::new);
        }
        self.elements().into_iter().find(|(_, g)| g.same_class(x)).map(|(e, _)| e)
    }

    /// `dim(self ∩ other)` for factored groups over the same field.
    pub fn intersection_dimension(&self, other: &CubeClassGroup<F>) -> Result<usize> {
        if !(self.linear && other.linear) {
            return Err(Error::Unsupported("intersection of unfactored groups".into()));
        }
        let rows: Vec<ClassVector> = self
            .basis
            .iter()
            .chain(&other.basis)
            .map(|b| b.vector.clone().unwrap())
            .collect();
        Ok(self.dimension() + other.dimension() - rref(&rows).len())
    }

    pub fn is_subgroup_of(&self, other: &CubeClassGroup<F>) -> Result<bool> {
        for b in &self.basis {
            if !other.member(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn generator_reps(&self) -> Vec<F> {
        self.basis.iter().map(|b| b.canonical_rep()).collect()
    }
}

/// Human-readable factored form, e.g. `omega^2 * (1 + 2*sqrt(-3))`.
pub fn describe_vector(v: &ClassVector) -> String {
    if v.is_empty() {
        return "1".into();
    }
    v.iter()
        .map(|(k, e)| {
            let base = k.label();
            let base = if base.contains(' ') { format!("({base})") } else { base };
            if *e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::int;

    fn q(n: i64) -> CubeClass<Rat> {
        CubeClass::new(int(n)).unwrap()
    }

    #[test]
    fn span_reduces_to_rref_basis() {
        let g = CubeClassGroup::span(FieldTag::Rationals, &[q(2), q(22)]).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.generator_reps(), vec![int(2), int(11)]);
        assert!(CubeClassGroup::span(FieldTag::Rationals, &[q(1)]).unwrap().is_trivial());
        let g = CubeClassGroup::span(FieldTag::Rationals, &[q(2), q(3), q(5)]).unwrap();
        assert!(g.member(&q(30)).unwrap());
        assert!(g.member(&q(30 * 27)).unwrap());
        assert!(!g.member(&q(7)).unwrap());
    }

    #[test]
    fn mixed_tags_rejected() {
        let x = CubeClass::new(Quad::from_ints(2, 1, 5)).unwrap();
        let r: Result<CubeClassGroup<Quad>> = CubeClassGroup::span(FieldTag::Quadratic { m: -3 }, &[x]);
        assert!(r.is_err());
    }

    #[test]
    fn eisenstein_classes() {
        let c = |a: i64, b: i64| CubeClass::new(Quad::from_ints(a, b, -3)).unwrap();
        // 30 ≡ 2 · (√−3)² · 5
        let g = CubeClassGroup::span(FieldTag::Quadratic { m: -3 }, &[c(5, 0), c(30, 0), c(2, 0)]).unwrap();
        assert_eq!(
            g.generator_reps(),
            vec![Quad::from_ints(2, 0, -3), Quad::eta(), Quad::from_ints(5, 0, -3)]
        );
        // 36 + 12√−3 is ω times a cube
        let x = c(36, 12);
        assert_eq!(x.vector.as_ref().unwrap(), &BTreeMap::from([(PrimeKey::Omega, 1u8)]));
        assert!(x.is_twisted().unwrap());
        assert!(!c(2, 0).is_twisted().unwrap());
    }

    #[test]
    fn unfactored_groups_use_cube_tests() {
        let x = CubeClass::new(Quad::from_ints(9, 3, -15)).unwrap();
        assert!(x.vector.is_none());
        assert!(!x.is_trivial());
        let g = CubeClassGroup::span(FieldTag::Quadratic { m: -15 }, &[x.clone(), x.pow(2)]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.member(&CubeClass::new(x.rep.inverse().unwrap()).unwrap()).unwrap());
        assert!(x.is_twisted().unwrap());
    }

    #[test]
    fn kernels() {
        // map e1 -> e1 + e2, e2 -> e1 + e2 has kernel spanned by e1 - e2
        let k1 = PrimeKey::Rational(2.into());
        let k2 = PrimeKey::Rational(3.into());
        let img = BTreeMap::from([(k1.clone(), 1u8), (k2.clone(), 1u8)]);
        let ker = kernel(&[k1.clone(), k2.clone()], &[img.clone(), img]);
        assert_eq!(ker, vec![BTreeMap::from([(k1, 1u8), (k2, 2u8)])]);
    }
}
