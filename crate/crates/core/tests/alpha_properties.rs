//! The map `α` and symbol-algebra invariants against elementary oracles.

use cubic_brauer::brauer::alpha::{alpha_quadratic, alpha_rep};
use cubic_brauer::brauer::algebras::cyclic_field_descent;
use cubic_brauer::brauer::invariants::{local_invariants, InvariantTable, Third};
use cubic_brauer::elliptic::{lambda_prime, search_points, Curve, Point};
use cubic_brauer::numeric::{cube_test, int, rat, Gf, GfCtx, Quad, Rat};
use cubic_brauer::Field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cubic character `x ↦ x^((p−1)/3)`, as a field element.
fn chi(x: &Gf, p: u64) -> Gf {
    x.pow((p - 1) / 3)
}

#[test]
fn alpha_is_a_homomorphism_over_finite_fields() {
    for p in [7u64, 13, 19, 31, 37] {
        let ctx = GfCtx::prime(p).unwrap();
        for root in 1..p as i64 {
            let sqrt_c = Gf::from_i64(&ctx, root);
            let e = Curve::new(sqrt_c.square()).unwrap();
            let pts = e.all_points();
            let val: Vec<Gf> = pts.iter().map(|q| chi(&alpha_rep(&e, q, &sqrt_c).unwrap(), p)).collect();
            for (i, a) in pts.iter().enumerate() {
                for (j, b) in pts.iter().enumerate() {
                    let sum = chi(&alpha_rep(&e, &e.add(a, b), &sqrt_c).unwrap(), p);
                    assert_eq!(sum, val[i].times(&val[j]), "p = {p}, sqrt c = {root}");
                }
            }
            // the kernel of α is exactly λ'(E'(F_p))
            let image: Vec<Point<Gf>> = e.isogenous().all_points().iter().map(|r| lambda_prime(&e.isogenous(), r)).collect();
            for (q, v) in pts.iter().zip(&val) {
                assert_eq!(image.contains(q), v.eq_one(), "p = {p}, point {q:?}");
            }
        }
    }
}

fn small_multiples(e: &Curve<Rat>, gens: &[Point<Rat>]) -> Vec<Point<Rat>> {
    let mut out = vec![Point::Infinity];
    for g in gens {
        for k in [1, -1, 2] {
            out.push(e.smul(g, k));
        }
    }
    out
}

/// `x / (y·z)` is a cube, by exact root extraction.
fn cube_ratio<F: Field>(x: &F, y: &F, z: &F) -> bool {
    cube_test(&x.divide(&y.times(z)).unwrap()).unwrap().is_some()
}

#[test]
fn alpha_is_a_homomorphism_on_rational_points() {
    // √c rational
    let e = Curve::new(int(121)).unwrap();
    let pts = small_multiples(&e, &search_points(&e, 60, 1).unwrap());
    assert!(pts.len() > 3);
    for p in &pts {
        for q in &pts {
            let rep = |r: &Point<Rat>| alpha_rep(&e, r, &int(11)).unwrap();
            assert!(cube_ratio(&rep(&e.add(p, q)), &rep(p), &rep(q)), "{p:?} + {q:?}");
        }
    }
    // √c quadratic: the image is twisted by conjugation
    for (c, root) in [(-135, Quad::from_ints(0, 3, -15)), (-432, Quad::from_ints(0, 12, -3)), (-3267, Quad::from_ints(0, 33, -3))] {
        let e = Curve::new(int(c)).unwrap();
        let lift = Curve { c: Quad::from_rat(int(c), root.m) };
        let rep = |r: &Point<Rat>| alpha_rep(&lift, &r.map(|x| Quad::from_rat(x.clone(), root.m)), &root).unwrap();
        let pts = small_multiples(&e, &search_points(&e, 200, 2).unwrap());
        for p in &pts {
            let a = alpha_quadratic(&e, p, &root).unwrap();
            assert!(a.conjugate().unwrap().same_class(&a.inverse()), "c = {c}, {p:?}");
            for q in &pts {
                assert!(cube_ratio(&rep(&e.add(p, q)), &rep(p), &rep(q)), "c = {c}, {p:?} + {q:?}");
            }
        }
    }
}

#[test]
fn descended_cubic_has_discriminant_minus_108c() {
    for (a, b) in [(2, 15), (3, 26), (7, 104), (2, 11), (1, 2)] {
        let (a, b) = (int(a), int(b));
        let c = -int(27) * &a * &a * &b * &b / int(4);
        let (c0, m) = (c.clone(), -3);
        let e = Curve::new(c0.clone()).unwrap();
        let k = &a * &b * int(3) / int(2);
        let root = Quad::new(int(0), k, m);
        for p in search_points(&e, 300, 2).unwrap() {
            let (x, s) = p.coords().map(|(x, y)| (x.clone(), y.clone())).unwrap();
            let xi = Quad::from_rat(s, m).plus(&root);
            let d = cyclic_field_descent(&xi).unwrap();
            assert_eq!(d.r, x);
            let [_, _, p1, q1] = d.minpoly.clone();
            let disc = -int(4) * p1.pow(3) - int(27) * q1.clone() * q1;
            assert_eq!(disc, -int(108) * &c);
            assert_eq!(disc, int(729) * &a * &a * &b * &b);
        }
    }
}

fn random_eisenstein(rng: &mut ChaCha8Rng) -> Quad {
    loop {
        let (u, v) = (rng.gen_range(-12i64..=12), rng.gen_range(-12i64..=12));
        // u + vω
        let x = Quad::new(rat(2 * u - v, 2), rat(v, 2), -3);
        if !x.is_zero() {
            return x;
        }
    }
}

fn same_table(x: &InvariantTable, y: &InvariantTable, f: impl Fn(Third) -> Third) -> bool {
    x.entries.iter().all(|(p, v)| y.get(p) == f(*v)) && y.entries.iter().all(|(p, v)| f(x.get(p)) == *v)
}

#[test]
fn symbol_invariants_obey_reciprocity_and_the_symbol_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..150 {
        let (t, u, w) = (random_eisenstein(&mut rng), random_eisenstein(&mut rng), random_eisenstein(&mut rng));
        let tu = local_invariants(&t, &u, &[]).unwrap();
        assert!(tu.sum().is_zero(), "({t}, {u})");
        // antisymmetry
        assert!(same_table(&tu, &local_invariants(&u, &t, &[]).unwrap(), Third::neg), "({t}, {u})");
        // bilinearity in the second slot
        let tw = local_invariants(&t, &w, &[]).unwrap();
        let tuw = local_invariants(&t, &u.times(&w), &[]).unwrap();
        for (p, v) in &tuw.entries {
            assert_eq!(*v, tu.get(p).add(tw.get(p)), "({t}, {u}{w}) at {}", p.label());
        }
        // (t, −t) and (t, 1 − t) split
        assert!(local_invariants(&t, &t.negate(), &[]).unwrap().is_split(), "({t}, -{t})");
        let one_minus = t.one_like().minus(&t);
        if !one_minus.is_zero() {
            assert!(local_invariants(&t, &one_minus, &[]).unwrap().is_split(), "({t}, 1 - {t})");
        }
        // a cube in either slot changes nothing
        let tc = local_invariants(&t, &u.times(&w.cube()), &[]).unwrap();
        assert!(same_table(&tu, &tc, |v| v));
    }
}
