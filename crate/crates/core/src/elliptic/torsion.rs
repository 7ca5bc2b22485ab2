use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{Curve, Point};
use crate::error::Result;
use crate::field::Field;
use crate::numeric::rational::{big, exact_icbrt, exact_isqrt, int, sixth_power_free, Rat};

/// `c = c0 · w⁶` with `c0` a sixth-power-free integer; points move by `(r, s) ↦ (r/w², s/w³)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedCurve {
    pub original: Rat,
    pub c0: BigInt,
    pub w: Rat,
}

impl NormalizedCurve {
    pub fn curve(&self) -> Curve<Rat> {
        Curve { c: big(&self.c0) }
    }

    pub fn original_curve(&self) -> Curve<Rat> {
        Curve { c: self.original.clone() }
    }

    pub fn is_trivial(&self) -> bool {
        self.w.is_one()
    }

    pub fn to_normalized(&self, p: &Point<Rat>) -> Point<Rat> {
        p.coords().map_or(Point::Infinity, |(x, y)| {
            Point::affine(x / self.w.square(), y / self.w.cube())
        })
    }

    pub fn to_original(&self, p: &Point<Rat>) -> Point<Rat> {
        p.coords().map_or(Point::Infinity, |(x, y)| {
            Point::affine(x * self.w.square(), y * self.w.cube())
        })
    }
}

pub fn normalize_c(c: &Rat) -> Result<NormalizedCurve> {
    let (c0, w) = sixth_power_free(c)?;
    Ok(NormalizedCurve { original: c.clone(), c0, w })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TorsionKind {
    #[serde(rename = "trivial")]
    Trivial,
    #[serde(rename = "Z/2")]
    Z2,
    #[serde(rename = "Z/3")]
    Z3,
    #[serde(rename = "Z/6")]
    Z6,
}

impl TorsionKind {
    pub fn order(self) -> u64 {
        match self {
            TorsionKind::Trivial => 1,
            TorsionKind::Z2 => 2,
            TorsionKind::Z3 => 3,
            TorsionKind::Z6 => 6,
        }
    }
}

/// Torsion of `Y² = X³ + c` over `ℚ`; points are on the input model, listed as multiples of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torsion {
    pub kind: TorsionKind,
    pub generator: Option<Point<Rat>>,
    pub points: Vec<Point<Rat>>,
}

fn classify(c0: &BigInt) -> (TorsionKind, Option<Point<Rat>>) {
    let one = BigInt::one();
    if *c0 == one {
        return (TorsionKind::Z6, Some(Point::affine(int(2), int(3))));
    }
    if *c0 == BigInt::from(-432) {
        return (TorsionKind::Z3, Some(Point::affine(int(12), int(36))));
    }
    if !c0.is_negative() {
        if let Some(r) = exact_isqrt(c0) {
            return (TorsionKind::Z3, Some(Point::affine(int(0), big(&r))));
        }
    }
    if let Some(r) = exact_icbrt(c0) {
        return (TorsionKind::Z2, Some(Point::affine(-big(&r), int(0))));
    }
    (TorsionKind::Trivial, None)
}

pub fn torsion_subgroup(c: &Rat) -> Result<Torsion> {
    let norm = normalize_c(c)?;
    let (kind, gen0) = classify(&norm.c0);
    let e = norm.original_curve();
    let generator = gen0.map(|g| norm.to_original(&g));
    let mut points = vec![Point::Infinity];
    if let Some(g) = &generator {
        let mut acc = g.clone();
        while !acc.is_infinity() {
            points.push(acc.clone());
            acc = e.add(&acc, g);
        }
    }
    debug_assert_eq!(points.len() as u64, kind.order());
    Ok(Torsion { kind, generator, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    #[test]
    fn table() {
        let t = torsion_subgroup(&int(1)).unwrap();
        assert_eq!(t.kind, TorsionKind::Z6);
        assert_eq!(t.generator, Some(Point::affine(int(2), int(3))));
        let t = torsion_subgroup(&int(-432)).unwrap();
        assert_eq!(t.kind, TorsionKind::Z3);
        assert!(t.points.contains(&Point::affine(int(12), int(36))));
        assert!(t.points.contains(&Point::affine(int(12), int(-36))));
        assert_eq!(torsion_subgroup(&int(-27)).unwrap().kind, TorsionKind::Z2);
        assert_eq!(torsion_subgroup(&int(121)).unwrap().kind, TorsionKind::Z3);
        assert_eq!(torsion_subgroup(&int(8)).unwrap().kind, TorsionKind::Z2);
        assert_eq!(torsion_subgroup(&int(-135)).unwrap().kind, TorsionKind::Trivial);
        assert_eq!(torsion_subgroup(&int(5)).unwrap().kind, TorsionKind::Trivial);
        // 64 = 2^6 normalizes to c0 = 1
        let t = torsion_subgroup(&int(64)).unwrap();
        assert_eq!(t.kind, TorsionKind::Z6);
        assert_eq!(t.generator, Some(Point::affine(int(8), int(24))));
        // -27/4 = -432 * (1/2)^6
        let t = torsion_subgroup(&rat(-27, 4)).unwrap();
        assert_eq!(t.kind, TorsionKind::Z3);
    }

    #[test]
    fn normalization_round_trip() {
        let n = normalize_c(&int(-8640)).unwrap();
        assert_eq!(n.c0, BigInt::from(-135));
        let p = Point::affine(int(6), int(9));
        let q = n.to_original(&p);
        assert!(n.original_curve().contains(&q));
        assert_eq!(n.to_normalized(&q), p);
    }
}
