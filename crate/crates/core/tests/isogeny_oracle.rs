//! Exhaustive checks of the 3-isogeny pair over small prime fields.

use cubic_brauer::elliptic::{lambda, lambda_prime, Curve, Point};
use cubic_brauer::numeric::{Gf, GfCtx};
use cubic_brauer::Field;

const FIELDS: [u64; 5] = [7, 13, 19, 31, 61];
const CURVES_PER_FIELD: usize = 4;

/// `c` values mixing squares and non-squares.
fn sample_c(p: u64) -> Vec<i64> {
    let ctx = GfCtx::prime(p).unwrap();
    let (mut sq, mut nsq): (Vec<i64>, Vec<i64>) = (1..p as i64).partition(|&c| Gf::from_i64(&ctx, c).sqrt().is_some());
    sq.truncate(CURVES_PER_FIELD / 2);
    nsq.truncate(CURVES_PER_FIELD / 2);
    sq.into_iter().chain(nsq).collect()
}

fn check_curve(p: u64, c: i64) {
    let ctx = GfCtx::prime(p).unwrap();
    let e = Curve::new(Gf::from_i64(&ctx, c)).unwrap();
    let ep = e.isogenous();
    let pts = e.all_points();
    let pts_p = ep.all_points();
    // isogenous curves over a finite field have equally many points
    assert_eq!(pts.len(), pts_p.len(), "p={p} c={c}");
    let kernel: Vec<_> = pts.iter().filter(|q| lambda(&e, q).is_infinity()).collect();
    let root_in_field = e.c.sqrt().is_some();
    assert_eq!(kernel.len(), if root_in_field { 3 } else { 1 }, "p={p} c={c}");
    for a in &pts {
        let la = lambda(&e, a);
        assert!(ep.contains(&la));
        let three = e.add(&e.double(a), a);
        // λ′ lands on E_{−d/27}, which is E again
        let round = lambda_prime(&ep, &la);
        assert!(e.contains(&round));
        assert_eq!(round, three, "p={p} c={c} P={a:?}");
        for b in &pts {
            assert_eq!(lambda(&e, &e.add(a, b)), ep.add(&la, &lambda(&e, b)));
        }
    }
    for a in &pts_p {
        let la = lambda_prime(&ep, a);
        assert!(e.contains(&la));
        assert_eq!(lambda(&e, &la), ep.add(&ep.double(a), a));
        for b in &pts_p {
            assert_eq!(lambda_prime(&ep, &ep.add(a, b)), e.add(&la, &lambda_prime(&ep, b)));
        }
    }
}

#[test]
fn isogeny_pair_over_small_prime_fields() {
    for p in FIELDS {
        let cs = sample_c(p);
        assert!(cs.len() >= 3);
        for c in cs {
            check_curve(p, c);
        }
    }
}

#[test]
fn group_law_exhaustive() {
    for p in [7, 13, 19] {
        for c in sample_c(p) {
            let ctx = GfCtx::prime(p).unwrap();
            let e = Curve::new(Gf::from_i64(&ctx, c)).unwrap();
            let pts = e.all_points();
            for a in &pts {
                assert_eq!(e.add(a, &Point::Infinity), *a);
                assert!(e.add(a, &e.neg(a)).is_infinity());
                for b in &pts {
                    let ab = e.add(a, b);
                    assert_eq!(ab, e.add(b, a));
                    for d in pts.iter().step_by(3) {
                        assert_eq!(e.add(&ab, d), e.add(a, &e.add(b, d)));
                    }
                }
            }
        }
    }
}
