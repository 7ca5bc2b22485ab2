use crate::elliptic::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::numeric::cube::{ClassField, CubeClass};
use crate::numeric::quad::Quad;
use crate::numeric::rational::Rat;

/// Representative of `α(P)`: `s + √c`, with `α(O) = 1` and `α(0, −√c) = 4c`.
pub fn alpha_rep<F: Field>(e: &Curve<F>, p: &Point<F>, sqrt_c: &F) -> Result<F> {
    if sqrt_c.square() != e.c {
        return Err(Error::Invalid("supplied square root does not square to c".into()));
    }
    if !e.contains(p) {
        return Err(Error::NotOnCurve(format!("{p:?}")));
    }
    let Point::Affine { y: s, .. } = p else { return Ok(sqrt_c.one_like()) };
    let xi = s.plus(sqrt_c);
    if xi.eq_zero() {
        return Ok(e.c.scale(4));
    }
    Ok(xi)
}

pub fn alpha<F: ClassField>(e: &Curve<F>, p: &Point<F>, sqrt_c: &F) -> Result<CubeClass<F>> {
    CubeClass::new(alpha_rep(e, p, sqrt_c)?)
}

/// `α` on a rational curve whose `√c` lies in a quadratic field.
pub fn alpha_quadratic(e: &Curve<Rat>, p: &Point<Rat>, sqrt_c: &Quad) -> Result<CubeClass<Quad>> {
    let m = sqrt_c.m;
    let lift = |x: &Rat| Quad::from_rat(x.clone(), m);
    alpha(&Curve { c: lift(&e.c) }, &p.map(lift), sqrt_c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::cube::PrimeKey;
    use crate::numeric::rational::int;

    #[test]
    fn torsion_point_gives_omega() {
        let e = Curve::new(int(-432)).unwrap();
        let root = Quad::from_ints(0, 12, -3);
        let a = alpha_quadratic(&e, &Point::affine(int(12), int(36)), &root).unwrap();
        let v = a.vector.as_ref().unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.get(&PrimeKey::Omega), Some(&1));
        let inv = alpha_quadratic(&e, &Point::affine(int(12), int(-36)), &root).unwrap();
        assert!(inv.same_class(&a.inverse()));
        assert!(alpha_quadratic(&e, &Point::Infinity, &root).unwrap().is_trivial());
    }

    #[test]
    fn nontrivial_over_q_sqrt_minus_15() {
        let e = Curve::new(int(-135)).unwrap();
        let root = Quad::from_ints(0, 3, -15);
        let a = alpha_quadratic(&e, &Point::affine(int(6), int(9)), &root).unwrap();
        assert_eq!(a.rep, Quad::from_ints(9, 3, -15));
        assert!(!a.is_trivial());
        assert!(a.is_twisted().unwrap());
    }

    #[test]
    fn kernel_point_conventions() {
        let e = Curve::new(int(4)).unwrap();
        assert_eq!(alpha_rep(&e, &Point::affine(int(0), int(-2)), &int(2)).unwrap(), int(16));
        assert_eq!(alpha_rep(&e, &Point::affine(int(0), int(2)), &int(2)).unwrap(), int(4));
        assert!(alpha_rep(&e, &Point::affine(int(1), int(1)), &int(2)).is_err());
        assert!(alpha_rep(&e, &Point::Infinity, &int(3)).is_err());
    }
}
