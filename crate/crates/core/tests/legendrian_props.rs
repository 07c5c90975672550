use lenstau::legendrian::{bound_report, connect_sum, parity_check, stabilize, LegendrianRep, StabSign};
use lenstau::simpleknot::alexander_gradings;
use lenstau::{Rat, SimpleKnot};
use proptest::prelude::*;

fn knot() -> impl Strategy<Value = SimpleKnot> {
    (1i64..14, 0i64..14, 0i64..14).prop_filter_map("valid", |(p, q, k)| SimpleKnot::from_params(p, q % p, k % p).ok())
}

fn rep() -> impl Strategy<Value = LegendrianRep> {
    (knot(), -60i64..20, -40i64..40).prop_map(|(k, tb, rot)| {
        let n = k.order() as i64;
        LegendrianRep::new(k, Rat::frac(tb, n), Rat::frac(rot, n)).unwrap()
    })
}

fn sign() -> impl Strategy<Value = StabSign> {
    prop_oneof![Just(StabSign::Positive), Just(StabSign::Negative)]
}

fn mod_two(x: &Rat) -> Rat {
    x.div_int(2).unwrap().frac_center()
}

proptest! {
    #[test]
    fn stabilization_rules(r in rep(), s in sign(), n in 0u32..10) {
        let out = stabilize(&r, s, n);
        let n = n as i64;
        prop_assert_eq!(&out.tb_q, &(&r.tb_q - &Rat::int(n)));
        let dr = if s == StabSign::Positive { n } else { -n };
        prop_assert_eq!(&out.rot_q, &(&r.rot_q + &Rat::int(dr)));
        prop_assert_eq!(mod_two(&out.lhs()), mod_two(&r.lhs()));
        prop_assert!(out.lhs() <= r.lhs());
    }

    #[test]
    fn connected_sum_rules(a in rep(), b in rep(), c in rep()) {
        let ab = connect_sum(&a, &b);
        prop_assert_eq!(&ab.tb_q, &(&a.tb_q + &b.tb_q + Rat::one()));
        prop_assert_eq!(&ab.rot_q, &(&a.rot_q + &b.rot_q));
        prop_assert_eq!(ab.lhs(), a.lhs() + b.lhs() + Rat::one());
        let left = connect_sum(&ab, &c);
        let right = connect_sum(&a, &connect_sum(&b, &c));
        prop_assert_eq!((left.tb_q, left.rot_q, left.order), (right.tb_q, right.rot_q, right.order));
        let ba = connect_sum(&b, &a);
        prop_assert_eq!((ab.tb_q, ab.rot_q), (ba.tb_q, ba.rot_q));
    }

    #[test]
    fn stabilization_commutes_with_sum(a in rep(), b in rep(), s in sign(), n in 0u32..5) {
        let x = connect_sum(&stabilize(&a, s, n), &b);
        let y = stabilize(&connect_sum(&a, &b), s, n);
        prop_assert_eq!((x.tb_q, x.rot_q), (y.tb_q, y.rot_q));
    }

    #[test]
    fn bounds_compose_under_connected_sum(k1 in knot(), k2 in knot(), i in 0usize..14, j in 0usize..14, slack1 in 0i64..6, slack2 in 0i64..6) {
        let d1 = alexander_gradings(k1).unwrap();
        let d2 = alexander_gradings(k2).unwrap();
        let t1 = d1.tau[i % d1.tau.len()].clone();
        let t2 = d2.tau[j % d2.tau.len()].clone();
        // reps sitting `slack` below the tau bound, split between tb and rot
        let mk = |k: SimpleKnot, t: &Rat, slack: i64| {
            let lhs = t.mul_int(2) - Rat::one() - Rat::int(slack);
            LegendrianRep::new(k, lhs.clone() - Rat::int(3), Rat::int(3)).unwrap()
        };
        let r1 = mk(k1, &t1, slack1);
        let r2 = mk(k2, &t2, slack2);
        let b1 = bound_report(&r1, &d1, &t1);
        let b2 = bound_report(&r2, &d2, &t2);
        prop_assert!(b1.satisfied_tau && b2.satisfied_tau);
        let sum = lenstau::simpleknot::connected_sum_knot_data(&d1, &d2);
        let tsum = &t1 + &t2;
        let b = bound_report(&connect_sum(&r1, &r2), &sum, &tsum);
        prop_assert!(b.satisfied_tau);
        prop_assert_eq!(&b.slack_tau, &Rat::int(slack1 + slack2));
        prop_assert!(b.satisfied_be);
        prop_assert!(b.dominance_holds());
    }

    #[test]
    fn parity_is_preserved_by_stabilization(k in knot(), i in 0usize..14, s in sign(), n in 0u32..6, shift in -4i64..4) {
        let d = alexander_gradings(k).unwrap();
        let t = d.tau[i % d.tau.len()].clone();
        let lhs = t.mul_int(2) - Rat::one() + Rat::int(2 * shift);
        let r = LegendrianRep::new(k, lhs - Rat::int(1), Rat::int(1)).unwrap();
        prop_assert!(parity_check(&r, &d));
        prop_assert!(parity_check(&stabilize(&r, s, n), &d));
    }
}

#[test]
fn dominance_on_every_spinc_choice() {
    for k in SimpleKnot::enumerate(30) {
        let d = alexander_gradings(k).unwrap();
        let r = LegendrianRep::new(k, Rat::int(-1), Rat::zero()).unwrap();
        for t in &d.tau {
            assert!(bound_report(&r, &d, t).dominance_holds(), "{k}");
        }
    }
}
