use num_traits::Signed;
use serde::Serialize;

use super::invariants::{local_invariants, InvariantMap, InvariantTable, RationalInvariants};
use crate::elliptic::Point;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::numeric::cube::{describe_vector, CubeClass, CubeClassGroup, FieldTag};
use crate::numeric::quad::Quad;
use crate::numeric::rational::{fmt_rat, int, rat_cbrt, rational_roots_depressed_cubic, ser_rat, Rat};

/// `(t, u)_ω` over `ℚ(ω)`: `i³ = t`, `j³ = u`, `ij = ωji`.
#[derive(Clone, Debug, Serialize)]
pub struct SymbolAlgebra {
    pub t: Quad,
    pub u: Quad,
    pub field: FieldTag,
    /// Which slot value `u` stands for, e.g. `"b"` after replacing `2√c`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_role: Option<String>,
    pub u_class: String,
    /// Places where the invariant was evaluated; those missing from `invariants` are zero.
    pub places: Vec<String>,
    pub invariants: InvariantMap,
    pub split: bool,
    #[serde(skip)]
    pub table: InvariantTable,
}

impl SymbolAlgebra {
    pub fn new(t: Quad, u: Quad, u_role: Option<String>) -> Result<SymbolAlgebra> {
        let t = super::invariants::in_eisenstein_field(&t)?;
        let u = super::invariants::in_eisenstein_field(&u)?;
        let class = CubeClass::new(u.clone())?;
        let table = local_invariants(&t, &u, &[])?;
        Ok(SymbolAlgebra {
            field: FieldTag::Quadratic { m: -3 },
            u_role,
            u_class: describe_vector(&class.vector.unwrap_or_default()),
            places: table.entries.iter().map(|(q, _)| q.label()).collect(),
            invariants: table.to_map(),
            split: table.is_split(),
            table,
            t,
            u,
        })
    }
}

/// `(ℚ(u)/ℚ, τ, a)` with `u` a root of `X³ − 3rX − 2s`.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicAlgebra {
    #[serde(serialize_with = "ser_rat")]
    pub r: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub s: Rat,
    pub minpoly: String,
    #[serde(serialize_with = "ser_rat")]
    pub minpoly_discriminant: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub slot: Rat,
    /// `τ` is normalized so the base change to `ℚ(ω)` is `(slot, s + √c)_ω`.
    pub orientation: String,
    pub witness: PointRepr,
    pub base_change: SymbolAlgebra,
    pub invariants: RationalInvariants,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PointRepr {
    Infinity(String),
    Affine { x: String, y: String },
}

impl PointRepr {
    pub fn of(p: &Point<Rat>) -> PointRepr {
        match p.coords() {
            None => PointRepr::Infinity("O".into()),
            Some((x, y)) => PointRepr::Affine { x: fmt_rat(x), y: fmt_rat(y) },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AlgebraDescriptor {
    SymbolAlgebra(SymbolAlgebra),
    CyclicAlgebra(CyclicAlgebra),
    CupProduct(super::nondiagonal::CupProduct),
}

/// `X³ − 3rX − (ξ + σξ)` for `ξ` with `N(ξ) = r³`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicDescent {
    #[serde(serialize_with = "ser_rat")]
    pub r: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub trace: Rat,
    /// `[1, 0, −3r, −trace]`.
    #[serde(skip)]
    pub minpoly: [Rat; 4],
    /// The cubic has a rational root, so the field it cuts out is not cubic.
    pub split: bool,
}

pub fn minpoly_string(p: &Rat, q: &Rat) -> String {
    // X³ + pX + q
    let mut out = "X^3".to_string();
    for (coef, mono) in [(p, "X"), (q, "")] {
        if coef == &int(0) {
            continue;
        }
        let sign = if coef < &int(0) { '-' } else { '+' };
        let abs = fmt_rat(&coef.abs());
        let body = match (abs.as_str(), mono) {
            ("1", "X") => "X".to_string(),
            (a, m) => format!("{a}{m}"),
        };
        out.push_str(&format!(" {sign} {body}"));
    }
    out
}

pub fn cyclic_field_descent(xi: &Quad) -> Result<CyclicDescent> {
    if xi.is_zero() {
        return Err(Error::Zero("xi"));
    }
    let n = xi.norm();
    let r = rat_cbrt(&n).ok_or_else(|| Error::NotRationalCube(format!("norm {} of {xi}", fmt_rat(&n))))?;
    let trace = xi.trace();
    let p = -int(3) * &r;
    let q = -trace.clone();
    let split = !rational_roots_depressed_cubic(&p, &q).is_empty();
    Ok(CyclicDescent { minpoly: [int(1), int(0), p, q], r, trace, split })
}

/// One `(a, ξ)_ω` per basis element of `im α ⊆ ℚ(ω)*/ℚ(ω)*³`. The class of `2√c`
/// (the image of the kernel points) is presented with slot `b`.
pub fn relative_brauer_diagonal(
    a: &Rat,
    b: &Rat,
    im_alpha: &CubeClassGroup<Quad>,
    kernel_class: Option<&CubeClass<Quad>>,
) -> Result<Vec<SymbolAlgebra>> {
    if im_alpha.tag != (FieldTag::Quadratic { m: -3 }) {
        return Err(Error::FieldMismatch(format!(
            "symbol algebras need omega; image lies over {}",
            im_alpha.tag
        )));
    }
    if a == &int(0) || b == &int(0) {
        return Err(Error::Zero("form coefficient"));
    }
    let ta = Quad::from_rat(a.clone(), -3);
    let tb = Quad::from_rat(b.clone(), -3);
    let mut out = Vec::new();
    for g in &im_alpha.basis {
        let torsion = kernel_class.filter(|k| !k.is_trivial()).and_then(|k| {
            if g.same_class(k) {
                Some(1u8)
            } else if g.same_class(&k.inverse()) {
                Some(2)
            } else {
                None
            }
        });
        out.push(match torsion {
            Some(1) => SymbolAlgebra::new(ta.clone(), tb.clone(), Some("b".into()))?,
            Some(_) => SymbolAlgebra::new(ta.clone(), tb.square(), Some("b^2".into()))?,
            None => SymbolAlgebra::new(ta.clone(), g.canonical_rep(), None)?,
        });
    }
    Ok(out)
}

/// One cyclic algebra per witness `(r, s)` on `Y² = X³ + c`, `c = −27a²b²/4`, whose
/// classes `s + √c` are independent.
pub fn relative_brauer_rational(a: &Rat, b: &Rat, witnesses: &[Point<Rat>]) -> Result<Vec<CyclicAlgebra>> {
    if a == &int(0) || b == &int(0) {
        return Err(Error::Zero("form coefficient"));
    }
    let half_ab = a * b / int(2);
    let sqrt_c = Quad::new(int(0), &half_ab * int(3), -3);
    let c = sqrt_c.square().a;
    let mut out = Vec::new();
    for w in witnesses {
        let Some((r, s)) = w.coords() else {
            return Err(Error::MissingWitness("the identity has trivial image".into()));
        };
        if s.square() != r.cube() + &c {
            return Err(Error::NotOnCurve(format!("({}, {}) on c = {}", fmt_rat(r), fmt_rat(s), fmt_rat(&c))));
        }
        if r == &int(0) {
            return Err(Error::MissingWitness("kernel points are not rational over Q".into()));
        }
        let xi = Quad::from_rat(s.clone(), -3).plus(&sqrt_c);
        let descent = cyclic_field_descent(&xi)?;
        debug_assert_eq!(&descent.r, r);
        let base_change = SymbolAlgebra::new(Quad::from_rat(a.clone(), -3), xi, None)?;
        let invariants = base_change.table.to_rational()?;
        let [_, _, p, q] = &descent.minpoly;
        let disc = -int(4) * p.cube() - int(27) * q.square();
        out.push(CyclicAlgebra {
            r: r.clone(),
            s: s.clone(),
            minpoly: minpoly_string(p, q),
            minpoly_discriminant: disc,
            slot: a.clone(),
            orientation: "base change is (slot, s + sqrt(c))_omega".into(),
            witness: PointRepr::of(w),
            split: invariants.is_split(),
            invariants,
            base_change,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessVerdict {
    pub intersection_dimension: usize,
    pub disjoint: bool,
}

/// `im α ∩ im α′` inside `ℚ(ω)*/ℚ(ω)*³`, with `im α′ ⊆ ℚ*/ℚ*³` embedded.
pub fn disjointness_check(
    im_alpha: &CubeClassGroup<Quad>,
    im_alpha_prime: &CubeClassGroup<crate::numeric::rational::Rat>,
) -> Result<DisjointnessVerdict> {
    let embedded: Vec<CubeClass<Quad>> = im_alpha_prime
        .basis
        .iter()
        .map(|c| CubeClass::new(Quad::from_rat(c.rep.clone(), -3)))
        .collect::<Result<_>>()?;
    let tag = FieldTag::Quadratic { m: -3 };
    let prime = CubeClassGroup::span(tag.clone(), &embedded)?;
    let alpha = CubeClassGroup::span(tag, &im_alpha.basis)?;
    let n = alpha.intersection_dimension(&prime)?;
    Ok(DisjointnessVerdict { intersection_dimension: n, disjoint: n == 0 })
}

/// `𝔽₃`-rank of a list of invariant vectors.
pub(crate) fn invariant_rank<K: Ord + Clone>(rows: &[std::collections::BTreeMap<K, u8>]) -> usize {
    use crate::numeric::cube::{rref, ClassVector, PrimeKey};
    let keys: Vec<K> = {
        let mut k: Vec<K> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
        k.sort();
        k.dedup();
        k
    };
    let rows: Vec<ClassVector> = rows
        .iter()
        .map(|r| {
            r.iter()
                .filter(|(_, v)| **v % 3 != 0)
                .map(|(k, v)| (PrimeKey::Rational(keys.iter().position(|x| x == k).unwrap().into()), *v % 3))
                .collect()
        })
        .collect();
    rref(&rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::int;

    #[test]
    fn descents() {
        let d = cyclic_field_descent(&Quad::from_ints(36, 12, -3)).unwrap();
        assert_eq!(d.r, int(12));
        assert_eq!(minpoly_string(&d.minpoly[2], &d.minpoly[3]), "X^3 - 36X - 72");
        assert!(!d.split);
        let d = cyclic_field_descent(&Quad::from_ints(684, 204, -3)).unwrap();
        assert_eq!(d.r, int(84));
        assert_eq!(minpoly_string(&d.minpoly[2], &d.minpoly[3]), "X^3 - 252X - 1368");
        let d = cyclic_field_descent(&Quad::from_ints(8, 0, -3)).unwrap();
        assert!(d.split);
        assert!(matches!(cyclic_field_descent(&Quad::from_ints(2, 1, -3)), Err(Error::NotRationalCube(_))));
    }

    #[test]
    fn cyclic_generator_with_invariants() {
        let gens = relative_brauer_rational(&int(3), &Rat::new(26.into(), 3.into()), &[Point::affine(int(39), int(234))]).unwrap();
        assert_eq!(gens.len(), 1);
        let g = &gens[0];
        assert_eq!(g.minpoly, "X^3 - 117X - 468");
        assert_eq!(g.minpoly_discriminant, int(27 * 27 * 26 * 26));
        assert_eq!(g.invariants.get(13).to_string(), "1/3");
        assert_eq!(g.invariants.get(3).to_string(), "2/3");
        assert!(g.invariants.sum().is_zero());
    }

    #[test]
    fn slot_b_for_the_kernel_class() {
        // ab = 14: 2√c = 42√−3 ≡ 14
        let (a, b) = (int(2), int(7));
        let two_root_c = Quad::from_ints(0, 42, -3);
        let k = CubeClass::new(two_root_c.clone()).unwrap();
        let g = CubeClassGroup::span(FieldTag::Quadratic { m: -3 }, &[k.clone()]).unwrap();
        let gens = relative_brauer_diagonal(&a, &b, &g, Some(&k)).unwrap();
        assert_eq!(gens[0].u_role.as_deref(), Some("b"));
        let direct = SymbolAlgebra::new(Quad::from_rat(a, -3), two_root_c, None).unwrap();
        assert_eq!(direct.table, gens[0].table);
        assert!(!direct.split);
    }

    #[test]
    fn disjoint_images() {
        let tag = FieldTag::Quadratic { m: -3 };
        let (p, q) = crate::numeric::eisenstein::EisensteinPrime::split(13).unwrap();
        let a = CubeClassGroup::span(tag, &[CubeClass::new(p.pi.times(&q.pi.square())).unwrap()]).unwrap();
        let b = CubeClassGroup::span(FieldTag::Rationals, &[CubeClass::new(int(26)).unwrap()]).unwrap();
        assert!(disjointness_check(&a, &b).unwrap().disjoint);
        let b = CubeClassGroup::span(FieldTag::Rationals, &[CubeClass::new(int(13)).unwrap()]).unwrap();
        let both = CubeClassGroup::span(FieldTag::Quadratic { m: -3 }, &[CubeClass::new(Quad::from_ints(13, 0, -3)).unwrap()]).unwrap();
        assert!(!disjointness_check(&both, &b).unwrap().disjoint);
    }
}
