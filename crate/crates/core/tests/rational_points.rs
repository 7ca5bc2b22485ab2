//! Torsion and image constraints on rational curves `Y² = X³ + c`, against brute-force oracles.

use std::collections::BTreeSet;

use cubic_brauer::elliptic::{lambda, lambda_prime, search_points, torsion_subgroup, Curve, Point};
use cubic_brauer::numeric::factor_integer;
use cubic_brauer::numeric::rational::{exact_icbrt, int, rat_valuation, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Sixth-power-free integers in a window, plus the special value with a 3-torsion point off the axis.
fn corpus() -> Vec<i64> {
    let mut out: Vec<i64> = (-200..=200).filter(|&c| c != 0 && (2..=3).all(|k: i64| c % k.pow(6) != 0)).collect();
    out.push(-432);
    out
}

/// All torsion points by brute force: integral, with `s = 0` or `s² | 432c²`.
fn brute_torsion(c: i64) -> BTreeSet<(i64, i64)> {
    let e = Curve::new(int(c)).unwrap();
    let disc = 432 * (c as i128) * (c as i128);
    let mut out = BTreeSet::new();
    let mut s: i128 = 0;
    while s * s <= disc {
        if s == 0 || disc % (s * s) == 0 {
            if let Some(r) = exact_icbrt(&BigInt::from(s * s - c as i128)) {
                let r: i64 = r.try_into().unwrap();
                for y in [s, -s] {
                    let p = Point::affine(int(r), int(y as i64));
                    if e.order(&p, 12).is_some() {
                        out.insert((r, y as i64));
                    }
                }
            }
        }
        s += 1;
    }
    out
}

fn as_ints(p: &Point<Rat>) -> (i64, i64) {
    let (x, y) = p.coords().unwrap();
    assert!(x.is_integer() && y.is_integer(), "torsion point {p:?} is not integral");
    (x.to_integer().try_into().unwrap(), y.to_integer().try_into().unwrap())
}

#[test]
fn torsion_table_matches_brute_force() {
    for c in corpus() {
        let t = torsion_subgroup(&int(c)).unwrap();
        let claimed: BTreeSet<_> = t.points.iter().filter(|p| !p.is_infinity()).map(as_ints).collect();
        assert_eq!(claimed, brute_torsion(c), "c = {c}");
        assert_eq!(claimed.len() as u64 + 1, t.kind.order(), "c = {c}");
        for (_, s) in &claimed {
            if *s != 0 {
                assert_eq!((27 * (c as i128).pow(2)) % (*s as i128).pow(2), 0, "c = {c}");
            }
        }
    }
}

#[test]
fn dual_isogeny_on_rational_points() {
    for (c, x, y) in [(-135, 6, 9), (-124848, 84, 684), (-3577392, 156, 468), (-3577392, 196, 1988), (-432, 12, 36)] {
        let e = Curve::new(int(c)).unwrap();
        let p = e.point(int(x), int(y)).unwrap();
        let ep = e.isogenous();
        for q in [p.clone(), e.double(&p), e.add(&e.double(&p), &p)] {
            let three = e.add(&e.double(&q), &q);
            assert_eq!(lambda_prime(&ep, &lambda(&e, &q)), three, "c = {c}");
        }
    }
}

/// With `c = n²`, a prime at which `s + n` has valuation prime to 3 divides the cube-free part of `2n`.
#[test]
fn image_primes_divide_twice_n() {
    for n in [11i64, 15, 17, 26, 68, 91] {
        let e = Curve::new(int(n * n)).unwrap();
        let pts = search_points(&e, 3000, 3).unwrap();
        assert!(!pts.is_empty(), "no points for n = {n}");
        let twice_n = BigInt::from(2 * n);
        for p in &pts {
            let (_, s) = p.coords().unwrap();
            let xi = s + int(n);
            if xi.is_zero() {
                continue;
            }
            let mut primes: Vec<BigInt> = Vec::new();
            for part in [xi.numer().abs(), xi.denom().clone()] {
                primes.extend(factor_integer(&part).unwrap().factors.into_iter().map(|(q, _)| q));
            }
            for q in primes {
                if rat_valuation(&xi, &q).unwrap() % 3 != 0 {
                    let v = rat_valuation(&Rat::from_integer(twice_n.clone()), &q).unwrap();
                    assert!(v % 3 != 0, "n = {n}, point {p:?}, prime {q}");
                }
            }
        }
    }
}
