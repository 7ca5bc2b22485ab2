//! Curves `Y² = X³ + c`, their chord–tangent group law, the 3-isogeny pair
//! between `c` and `−27c`, torsion over `ℚ`, point search and rank bookkeeping.

mod isogeny;
mod rank;
mod search;
mod torsion;

pub use isogeny::{lambda, lambda_prime, lambda_prime_preimage, lambda_prime_preimage_auto};
pub use rank::{validate_rank_data, validate_rank_doubling, FieldConfig, RankData, RankSource, RankVerdict};
pub use search::{search_points, DEFAULT_DENOM_BOUND, DEFAULT_SEARCH_BOUND};
pub use torsion::{normalize_c, torsion_subgroup, NormalizedCurve, Torsion, TorsionKind};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numeric::finite::Gf;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Point<F: Field> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> Point<F> {
    pub fn affine(x: F, y: F) -> Point<F> {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(&F, &F)> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, y } => Some((x, y)),
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Point<G> {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: f(x), y: f(y) },
        }
    }
}

impl<F: Field + fmt::Display> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// The curve `Y² = X³ + c` with `c ≠ 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Curve<F: Field> {
    pub c: F,
}

impl<F: Field> Curve<F> {
    pub fn new(c: F) -> Result<Curve<F>> {
        if c.eq_zero() {
            return Err(Error::Degenerate("curve constant c = 0".into()));
        }
        Ok(Curve { c })
    }

    /// The target `Y² = X³ − 27c` of `λ`.
    pub fn isogenous(&self) -> Curve<F> {
        Curve { c: self.c.scale(-27) }
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y.square() == x.cube().plus(&self.c),
        }
    }

    pub fn point(&self, x: F, y: F) -> Result<Point<F>> {
        let p = Point::Affine { x, y };
        if !self.contains(&p) {
            return Err(Error::NotOnCurve(format!("{p:?} on c = {:?}", self.c)));
        }
        Ok(p)
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.clone(), y: y.negate() },
        }
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if y1.plus(y2).eq_zero() {
                return Point::Infinity;
            }
            // tangent: 3x²/2y
            x1.square().scale(3).divide(&y1.scale(2)).expect("y ≠ 0 off the 2-torsion")
        } else {
            y2.minus(y1).divide(&x2.minus(x1)).expect("distinct abscissae")
        };
        let x3 = slope.square().minus(x1).minus(x2);
        let y3 = slope.times(&x1.minus(&x3)).minus(y1);
        Point::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add(p, p)
    }

    pub fn smul(&self, p: &Point<F>, n: i64) -> Point<F> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            k >>= 1;
        }
        acc
    }

    /// Order of a point, searched up to `limit`.
    pub fn order(&self, p: &Point<F>, limit: u64) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=limit {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// `{O, (0, ±√c)}` restricted to the coefficient field.
    pub fn kernel_points(&self) -> Vec<Point<F>> {
        let mut out = vec![Point::Infinity];
        if let Some(r) = self.c.sqrt() {
            let zero = self.c.zero_like();
            out.push(Point::Affine { x: zero.clone(), y: r.clone() });
            out.push(Point::Affine { x: zero, y: r.negate() });
        }
        out
    }
}

impl Curve<Gf> {
    /// Every point over the coefficient field, `O` first.
    pub fn all_points(&self) -> Vec<Point<Gf>> {
        let mut out = vec![Point::Infinity];
        for x in Gf::all(self.c.ctx()) {
            let rhs = x.cube().plus(&self.c);
            if rhs.is_zero() {
                out.push(Point::Affine { x, y: rhs });
            } else if let Some(y) = rhs.sqrt() {
                out.push(Point::Affine { x: x.clone(), y: y.negate() });
                out.push(Point::Affine { x, y });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::finite::GfCtx;
    use crate::numeric::rational::{int, Rat};

    fn pt(x: i64, y: i64) -> Point<Rat> {
        Point::affine(int(x), int(y))
    }

    #[test]
    fn rational_group_law() {
        let e = Curve::new(int(1)).unwrap();
        assert_eq!(e.add(&pt(2, 3), &pt(2, 3)), pt(0, 1));
        assert_eq!(e.add(&pt(2, 3), &Point::Infinity), pt(2, 3));
        assert_eq!(e.add(&pt(2, 3), &pt(0, 1)), pt(-1, 0));
        assert_eq!(e.order(&pt(2, 3), 10), Some(6));
        assert_eq!(e.smul(&pt(2, 3), -1), pt(2, -3));
        assert!(e.point(int(1), int(1)).is_err());
        assert!(Curve::new(int(0)).is_err());
    }

    #[test]
    fn finite_group_law_is_abelian() {
        for (q, cs) in [(7u64, [1i64, 2, 3]), (13, [1, 4, 5]), (19, [2, 7, 11])] {
            let ctx = GfCtx::prime(q).unwrap();
            for c in cs {
                let e = Curve::new(Gf::from_i64(&ctx, c)).unwrap();
                let pts = e.all_points();
                for p in &pts {
                    assert!(e.contains(p));
                    for r in &pts {
                        assert_eq!(e.add(p, r), e.add(r, p));
                        for s in &pts {
                            assert_eq!(e.add(&e.add(p, r), s), e.add(p, &e.add(r, s)));
                        }
                    }
                    assert_eq!(e.smul(p, pts.len() as i64), Point::Infinity);
                }
            }
        }
    }
}
