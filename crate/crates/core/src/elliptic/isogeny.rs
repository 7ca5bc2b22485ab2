use super::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::Field;

/// `λ: E_c → E_{−27c}`, `(r, s) ↦ ((r³+4c)/r², (s³−9cs)/r³)`, killing `(0, ±√c)`.
pub fn lambda<F: Field>(e: &Curve<F>, p: &Point<F>) -> Point<F> {
    let Point::Affine { x: r, y: s } = p else { return Point::Infinity };
    if r.eq_zero() {
        return Point::Infinity;
    }
    let c = &e.c;
    let x = r.cube().plus(&c.scale(4)).divide(&r.square()).unwrap();
    let y = s.cube().minus(&c.times(s).scale(9)).divide(&r.cube()).unwrap();
    Point::Affine { x, y }
}

/// `λ′: E′_d → E_{−d/27}`, `(r′, s′) ↦ ((r′³+4d)/(9r′²), (s′³−9ds′)/(27r′³))`.
pub fn lambda_prime<F: Field>(e_prime: &Curve<F>, p: &Point<F>) -> Point<F> {
    let Point::Affine { x: r, y: s } = p else { return Point::Infinity };
    if r.eq_zero() {
        return Point::Infinity;
    }
    let d = &e_prime.c;
    let x = r.cube().plus(&d.scale(4)).divide(&r.square().scale(9)).unwrap();
    let y = s.cube().minus(&d.times(s).scale(9)).divide(&r.cube().scale(27)).unwrap();
    Point::Affine { x, y }
}

/// A point of `E′_{−27c}` mapping to `p` under `λ′`, built from a cube root `t` of `s + √c`.
pub fn lambda_prime_preimage<F: Field>(
    e: &Curve<F>,
    p: &Point<F>,
    sqrt_c: &F,
    t: &F,
) -> Result<Point<F>> {
    if !e.contains(p) {
        return Err(Error::NotOnCurve("preimage input".into()));
    }
    if sqrt_c.square() != e.c {
        return Err(Error::Invalid("supplied square root does not square to c".into()));
    }
    let Point::Affine { x: r, y: s } = p else { return Ok(Point::Infinity) };
    let xi = s.plus(sqrt_c);
    if xi.eq_zero() {
        return Err(Error::Degenerate("s = -sqrt(c) has no cube-root construction".into()));
    }
    if t.cube() != xi {
        return Err(Error::Invalid("t^3 differs from s + sqrt(c)".into()));
    }
    let t_hat = r.divide(t).ok_or(Error::Zero("cube root"))?;
    let diff = t.minus(&t_hat);
    let x = sqrt_c.scale(6).divide(&diff).ok_or(Error::Zero("t - r/t"))?;
    let y = sqrt_c.scale(9).times(&t.plus(&t_hat)).divide(&diff).ok_or(Error::Zero("t - r/t"))?;
    Ok(Point::Affine { x, y })
}

/// As [`lambda_prime_preimage`], taking the cube root inside the coefficient field.
pub fn lambda_prime_preimage_auto<F: Field>(e: &Curve<F>, p: &Point<F>, sqrt_c: &F) -> Result<Point<F>> {
    let Point::Affine { y: s, .. } = p else { return Ok(Point::Infinity) };
    let xi = s.plus(sqrt_c);
    if xi.eq_zero() {
        return Err(Error::Degenerate("s = -sqrt(c) has no cube-root construction".into()));
    }
    let t = xi.cbrt().ok_or_else(|| Error::CubeRootNotInField(format!("{xi:?}")))?;
    lambda_prime_preimage(e, p, sqrt_c, &t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::finite::{Gf, GfCtx};
    use crate::numeric::rational::{int, rat};

    #[test]
    fn rational_points() {
        let e = Curve::new(int(-1)).unwrap();
        let img = lambda(&e, &Point::affine(int(1), int(0)));
        assert_eq!(img, Point::affine(int(-3), int(0)));
        let ep = e.isogenous();
        assert_eq!(ep.c, int(27));
        assert!(ep.contains(&img));
        assert_eq!(lambda_prime(&ep, &img), Point::affine(int(1), int(0)));

        let e = Curve::new(int(4)).unwrap();
        assert_eq!(lambda(&e, &Point::affine(int(0), int(2))), Point::Infinity);
        let ep = e.isogenous();
        let d_root = int(-108).sqrt();
        assert!(d_root.is_none());
        assert_eq!(lambda_prime(&ep, &Point::affine(int(0), rat(1, 1))), Point::Infinity);
    }

    #[test]
    fn preimage_needs_cube_root_over_f13() {
        let ctx = GfCtx::prime(13).unwrap();
        let g = |n| Gf::from_i64(&ctx, n);
        let e = Curve::new(g(4)).unwrap();
        let p = e.point(g(2), g(5)).unwrap();
        assert!(matches!(lambda_prime_preimage_auto(&e, &p, &g(2)), Err(Error::CubeRootNotInField(_))));

        let ext = GfCtx::extension(13, 3).unwrap();
        let lift = |x: &Gf| x.embed(&ext).unwrap();
        let e3 = Curve::new(lift(&g(4))).unwrap();
        let p3 = p.map(lift);
        let pre = lambda_prime_preimage_auto(&e3, &p3, &lift(&g(2))).unwrap();
        assert!(e3.isogenous().contains(&pre));
        assert_eq!(lambda_prime(&e3.isogenous(), &pre), p3);

        let bad = e.point(g(0), g(11)).unwrap();
        assert!(matches!(lambda_prime_preimage_auto(&e, &bad, &g(2)), Err(Error::Degenerate(_))));
    }
}
