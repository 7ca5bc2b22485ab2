//! Covariance of discriminant and Hessian, and equivalence of reports under change of variables.

use cubic_brauer::brauer::{run, BaseField, JobInput};
use cubic_brauer::forms::{BinaryCubicForm, ChangeOfVariables};
use cubic_brauer::numeric::{int, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn form(c: [i64; 4]) -> BinaryCubicForm<Rat> {
    BinaryCubicForm::new(int(c[0]), int(c[1]), int(c[2]), int(c[3]))
}

fn change(q: [i64; 4]) -> ChangeOfVariables<Rat> {
    ChangeOfVariables { alpha: int(q[0]), beta: int(q[1]), gamma: int(q[2]), delta: int(q[3]) }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn discriminant_is_a_weight_six_invariant(c in prop::array::uniform4(-20i64..=20), q in prop::array::uniform4(-6i64..=6)) {
        let (f, q) = (form(c), change(q));
        prop_assume!(!q.det().is_zero());
        let g = f.transform(&q).unwrap();
        prop_assert_eq!(g.discriminant(), q.det().pow(6) * f.discriminant());
    }

    #[test]
    fn hessian_is_a_weight_two_covariant(c in prop::array::uniform4(-20i64..=20), q in prop::array::uniform4(-6i64..=6)) {
        let (f, q) = (form(c), change(q));
        prop_assume!(!q.det().is_zero());
        let (h, hg) = (f.hessian(), f.transform(&q).unwrap().hessian());
        // det(Q)²·QᵗMQ with M = [[R, S], [S, T]]
        let (a, b, cc, d) = (&q.alpha, &q.beta, &q.gamma, &q.delta);
        let e2 = q.det().pow(2);
        let r = &e2 * (&h.r * a * a + int(2) * &h.s * a * cc + &h.t * cc * cc);
        let s = &e2 * (&h.r * a * b + &h.s * (a * d + b * cc) + &h.t * cc * d);
        let t = &e2 * (&h.r * b * b + int(2) * &h.s * b * d + &h.t * d * d);
        prop_assert_eq!((hg.r, hg.s, hg.t), (r, s, t));
    }

    #[test]
    fn diagonalization_is_exact(a in -30i64..=30, b in -30i64..=30, q in prop::array::uniform4(-4i64..=4)) {
        prop_assume!(a != 0 && b != 0);
        let q = change(q);
        prop_assume!(!q.det().is_zero());
        let f = BinaryCubicForm::diagonal(int(a), int(b)).transform(&q).unwrap();
        let d = f.diagonalize().unwrap();
        let g = f.transform(&d.q).unwrap();
        prop_assert!(g.is_diagonal());
        let half_ab = &d.a * &d.b / int(2);
        prop_assert_eq!(half_ab.clone() * half_ab, d.q.det().pow(6) * f.discriminant());
        let r = d.reduced().unwrap();
        prop_assert_eq!(f.transform(&r.q).unwrap(), BinaryCubicForm::diagonal(r.a.clone(), r.b.clone()));
    }
}

#[test]
fn equivalent_forms_give_the_same_groups() {
    for (a, b, rank, q) in [(2, 15, 2, [1, 1, 0, 1]), (2, 11, 1, [2, -1, 1, 3]), (2, 4, 0, [1, 2, -1, 1])] {
        let base = BinaryCubicForm::diagonal(int(a), int(b));
        let moved = base.transform(&change(q)).unwrap();
        let reports: Vec<_> = [base, moved]
            .into_iter()
            .map(|f| {
                let mut job = JobInput::new(BaseField::Rationals, f);
                job.rank = Some(rank);
                job.search_bound = 400;
                job.denom_bound = 2;
                run(&job).unwrap()
            })
            .collect();
        let view = |r: &cubic_brauer::brauer::BrauerReport| {
            let q = r.over_q.as_ref().unwrap();
            let o = r.over_q_omega.as_ref().unwrap();
            (
                q.im_alpha.order,
                q.im_alpha_prime.order,
                q.brauer.statement.clone(),
                o.im_alpha.generators.clone(),
                o.brauer.statement.clone(),
                r.status,
            )
        };
        assert_eq!(view(&reports[0]), view(&reports[1]), "a = {a}, b = {b}");
        assert_eq!(reports[1].pipeline, "diagonalized");
    }
}
