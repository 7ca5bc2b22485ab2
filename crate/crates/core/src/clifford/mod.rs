//! The generalized Clifford algebra of `aX³ + bY³` specialized at a point of its center:
//! arithmetic in the resulting symbol algebra and checks of the identities relating
//! `x`, `y`, `z = yx − ωxy` and `ζ = yx − ω²xy`.

pub mod algebra;
pub mod rewrite;

use serde::Serialize;

pub use algebra::{AlgebraElement, SymbolParams};

use crate::error::{Error, Result};
use crate::field::Field;

/// The symbol algebra `(a, s₀ + √c)_ω` with `x = i`, `z = j`, `ζ = r₀z⁻¹` and
/// `y = x⁻¹(z − ζ)(ω² − ω)⁻¹`.
#[derive(Clone, Debug)]
pub struct CliffordSpecialization<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub sqrt_c: F,
    /// Fixed by `√c = (3/2)(ω − ω²)ab`.
    pub omega: F,
    pub r0: F,
    pub s0: F,
    pub x: AlgebraElement<F>,
    pub y: AlgebraElement<F>,
    pub z: AlgebraElement<F>,
    pub zeta: AlgebraElement<F>,
}

/// `c = −27a²b²/4`.
pub fn jacobian_c<F: Field>(a: &F, b: &F) -> Result<F> {
    let four_inv = a.from_int_like(4).inverse().ok_or(Error::Zero("4 in the coefficient field"))?;
    Ok(a.times(b).square().scale(-27).times(&four_inv))
}

pub fn specialize<F: Field>(a: &F, b: &F, r0: &F, s0: &F, sqrt_c: &F) -> Result<CliffordSpecialization<F>> {
    if a.eq_zero() || b.eq_zero() {
        return Err(Error::Zero("form coefficient"));
    }
    if a.from_int_like(6).eq_zero() {
        return Err(Error::Unsupported("characteristic 2 or 3".into()));
    }
    let c = jacobian_c(a, b)?;
    if sqrt_c.square() != c {
        return Err(Error::Invalid("supplied square root does not square to c".into()));
    }
    if s0.square() != r0.cube().plus(&c) {
        return Err(Error::NotOnCurve("specialization point".into()));
    }
    if r0.eq_zero() {
        return Err(Error::Degenerate("r0 = 0, so s0 = ±sqrt(c) and z or zeta is not invertible".into()));
    }
    let three_ab = a.times(b).scale(3);
    let two_inv = a.from_int_like(2).inverse().unwrap();
    let omega = sqrt_c.scale(2).divide(&three_ab).unwrap().minus(&a.one_like()).times(&two_inv);
    let params = SymbolParams::new(a.clone(), s0.plus(sqrt_c), omega.clone())?;
    let x = AlgebraElement::i(&params);
    let z = AlgebraElement::j(&params);
    let zeta = z.inverse()?.scale(r0);
    let w = omega.square().minus(&omega).inverse().ok_or(Error::Zero("omega^2 - omega"))?;
    let y = x.inverse()?.mul(&z.sub(&zeta)).scale(&w);
    Ok(CliffordSpecialization {
        a: a.clone(),
        b: b.clone(),
        c,
        sqrt_c: sqrt_c.clone(),
        omega,
        r0: r0.clone(),
        s0: s0.clone(),
        x,
        y,
        z,
        zeta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "cause", rename_all = "kebab-case")]
pub enum IdentityStatus {
    Pass,
    Fail,
    NotEvaluable(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub group: &'static str,
    pub name: &'static str,
    pub status: IdentityStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == IdentityStatus::Pass)
    }
}

/// Checks every identity as an exact equation between algebra elements. `eps` scales
/// `z` and `ζ` in the twisted minimal-polynomial check.
pub fn verify_identities<F: Field>(sp: &CliffordSpecialization<F>, eps: &F) -> IdentityReport {
    let mut checks = Vec::new();
    let mut check = |group: &'static str, name: &'static str, r: Result<bool>| {
        let status = match r {
            Ok(true) => IdentityStatus::Pass,
            Ok(false) => IdentityStatus::Fail,
            Err(e) => IdentityStatus::NotEvaluable(e.to_string()),
        };
        checks.push(IdentityCheck { group, name, status });
    };
    let p = &sp.x.params;
    let k = |v: &F| AlgebraElement::scalar(p, v.clone());
    let (x, y, z, zeta) = (&sp.x, &sp.y, &sp.z, &sp.zeta);
    let w = &sp.omega;
    let w2 = w.square();
    let zero = AlgebraElement::zero(p);
    let d = sp.c.scale(-27);

    check("basic-relations", "x^3 = a", Ok(x.pow(3) == k(&sp.a)));
    check(
        "basic-relations",
        "x^2y + xyx + yx^2 = 0",
        Ok(x.mul(x).mul(y).add(&x.mul(y).mul(x)).add(&y.mul(x).mul(x)) == zero),
    );
    check(
        "basic-relations",
        "xy^2 + yxy + y^2x = 0",
        Ok(x.mul(y).mul(y).add(&y.mul(x).mul(y)).add(&y.mul(y).mul(x)) == zero),
    );
    check("basic-relations", "y^3 = b", Ok(y.pow(3) == k(&sp.b)));
    let (yx, xy) = (y.mul(x), x.mul(y));
    check("definitions", "z = yx - omega xy", Ok(*z == yx.sub(&xy.scale(w))));
    check("definitions", "zeta = yx - omega^2 xy", Ok(*zeta == yx.sub(&xy.scale(&w2))));

    check("commutation", "xz = omega zx", Ok(x.mul(z) == z.mul(x).scale(w)));
    check("commutation", "yz = omega^2 zy", Ok(y.mul(z) == z.mul(y).scale(&w2)));
    check("commutation", "x zeta = omega^2 zeta x", Ok(x.mul(zeta) == zeta.mul(x).scale(&w2)));
    check("commutation", "y zeta = omega zeta y", Ok(y.mul(zeta) == zeta.mul(y).scale(w)));
    check("commutation", "z zeta = zeta z", Ok(z.mul(zeta) == zeta.mul(z)));

    check(
        "quotient-cube",
        "(yx^-1)^3 = b/a",
        x.inverse().map(|xi| y.mul(&xi).pow(3) == k(&sp.b.divide(&sp.a).unwrap())),
    );

    let r = z.mul(zeta);
    check("central-cubes", "z^3 = s0 + sqrt(c)", Ok(z.pow(3) == k(&sp.s0.plus(&sp.sqrt_c))));
    check("central-cubes", "zeta^3 = s0 - sqrt(c)", Ok(zeta.pow(3) == k(&sp.s0.minus(&sp.sqrt_c))));
    check("central-cubes", "z zeta = r0", Ok(r == k(&sp.r0)));
    check("central-cubes", "(z zeta)^3 = s0^2 - c", Ok(r.pow(3) == k(&sp.s0.square().minus(&sp.c))));
    check(
        "central-cubes",
        "z zeta commutes with x, y, z, zeta",
        Ok([x, y, z, zeta].iter().all(|e| r.mul(e) == e.mul(&r))),
    );
    let diff = z.sub(zeta);
    check(
        "central-cubes",
        "(z - zeta)^3 = 2 sqrt(c) - 3 r0 (z - zeta)",
        Ok(diff.pow(3) == k(&sp.sqrt_c.scale(2)).sub(&diff.scale(&sp.r0.scale(3)))),
    );

    let u = z.add(zeta);
    check(
        "cyclic-minpoly",
        "u^3 - 3 r0 u - 2 s0 = 0 for u = z + zeta",
        Ok(u.pow(3).sub(&u.scale(&sp.r0.scale(3))).sub(&k(&sp.s0.scale(2))) == zero),
    );
    let disc = sp.r0.cube().scale(108).minus(&sp.s0.square().scale(108));
    check(
        "cyclic-minpoly",
        "discriminant of X^3 - 3 r0 X - 2 s0 is 27^2 a^2 b^2, nonzero",
        Ok(disc == sp.a.times(&sp.b).square().scale(729) && !disc.eq_zero()),
    );

    let isogenous = (|| -> Result<[bool; 4]> {
        let inv = diff.inverse()?;
        let rp = inv.scale(&sp.sqrt_c.scale(6));
        let sp_ = u.mul(&inv).scale(&sp.sqrt_c.scale(9));
        let rp2 = rp.mul(&rp);
        let rp3 = rp2.mul(&rp);
        let on_curve = sp_.mul(&sp_) == rp3.add(&k(&d));
        let r_back = rp2.scale(&sp.r0.scale(9)) == rp3.add(&k(&d.scale(4)));
        let s_back = rp3.scale(&sp.s0.scale(27)) == sp_.pow(3).sub(&sp_.scale(&d.scale(9)));
        let u_back = u.mul(&rp.scale(&sp.a.from_int_like(3))) == sp_.scale(&sp.a.from_int_like(2));
        Ok([on_curve, r_back, s_back, u_back])
    })();
    let part = |i: usize| isogenous.clone().map(|v| v[i]);
    check("isogenous-pullback", "s'^2 = r'^3 + d", part(0));
    check("isogenous-pullback", "r0 = (r'^3 + 4d) / (9 r'^2)", part(1));
    check("isogenous-pullback", "s0 = (s'^3 - 9 d s') / (27 r'^3)", part(2));
    check("isogenous-pullback", "z + zeta = 2 s' / (3 r')", part(3));

    let twisted = if eps.eq_zero() {
        Err(Error::Zero("epsilon"))
    } else {
        let uh = z.scale(&w.times(eps)).add(&zeta.scale(&w2.times(eps)));
        let lin = sp.r0.times(&eps.square()).scale(3);
        let cst = sp.s0.times(&eps.cube()).scale(2);
        Ok(uh.pow(3).sub(&uh.scale(&lin)).sub(&k(&cst)) == zero)
    };
    check("twisted-minpoly", "u'^3 - 3 eps^2 r0 u' - 2 eps^3 s0 = 0", twisted);

    IdentityReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::finite::{Gf, GfCtx};

    fn f13(n: i64) -> Gf {
        Gf::from_i64(&GfCtx::prime(13).unwrap(), n)
    }

    #[test]
    fn specialization_over_f13() {
        let sp = specialize(&f13(2), &f13(3), &f13(2), &f13(5), &f13(2)).unwrap();
        assert_eq!(sp.c, f13(4));
        assert_eq!(sp.omega, f13(9));
        assert_eq!(sp.z.pow(3).as_scalar(), Some(f13(7)));
        assert_eq!(sp.zeta.pow(3).as_scalar(), Some(f13(3)));
        assert_eq!(sp.z.mul(&sp.zeta).as_scalar(), Some(f13(2)));
        assert_eq!(sp.y.pow(3).as_scalar(), Some(f13(3)));
        let report = verify_identities(&sp, &f13(5));
        for c in &report.checks {
            assert_eq!(c.status, IdentityStatus::Pass, "{}", c.name);
        }
    }

    #[test]
    fn degenerate_points_rejected() {
        // s0 = sqrt(c): r0 = 0
        assert!(matches!(specialize(&f13(2), &f13(3), &f13(0), &f13(2), &f13(2)), Err(Error::Degenerate(_))));
        assert!(specialize(&f13(2), &f13(3), &f13(2), &f13(6), &f13(2)).is_err());
    }

    #[test]
    fn specialization_over_f7() {
        let ctx = GfCtx::prime(7).unwrap();
        let g = |n| Gf::from_i64(&ctx, n);
        let (a, b) = (g(1), g(2));
        let c = jacobian_c(&a, &b).unwrap();
        let root = c.sqrt().unwrap();
        let mut found = 0;
        for r in 1..7 {
            let rhs = g(r).cube().plus(&c);
            if let Some(s) = rhs.sqrt() {
                let sp = specialize(&a, &b, &g(r), &s, &root).unwrap();
                assert!(verify_identities(&sp, &g(3)).all_passed());
                found += 1;
            }
        }
        assert!(found > 0);
    }
}
