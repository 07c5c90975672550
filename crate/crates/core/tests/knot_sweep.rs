use lenstau::lens::{conjugate, pd_shift, CorrectionCache};
use lenstau::simpleknot::{alexander_gradings, connected_sum_knot_data, verify_two_tau_with};
use lenstau::{lens::connected_sum_d, CorrectionTable, Rat, RatMultiset, ShiftForm, SimpleKnot};

const PMAX: u64 = 30;

#[test]
fn two_tau_matches_correction_terms_for_all_small_knots() {
    let cache = CorrectionCache::new();
    let mut count = 0;
    for knot in SimpleKnot::enumerate(PMAX) {
        let data = alexander_gradings(knot).unwrap();
        let table = cache.table(knot.space);
        let rep = verify_two_tau_with(&data, &table, ShiftForm::Proposition);
        assert!(rep.pass, "{knot}: {} vs {}", rep.two_tau, rep.rhs);
        assert!(rep.per_label, "{knot}: label chart");
        count += 1;
    }
    assert!(count > 5000);
}

#[test]
fn alexander_invariants_for_all_small_knots() {
    for knot in SimpleKnot::enumerate(PMAX) {
        let d = alexander_gradings(knot).unwrap();
        d.check().unwrap();
        assert!(d.alexander_multiset().is_antisymmetric(), "{knot}");
        assert_eq!(d.mean(), Rat::zero(), "{knot}");
        if knot.k == 0 {
            assert!(d.alexander.iter().all(Rat::is_zero), "{knot}");
            assert_eq!(d.chi_f, Rat::one());
        }
        assert!(d.chi_f <= Rat::one(), "{knot}");
        let two_q = 2 * knot.order() as i64;
        assert!(d.alexander.iter().all(|a| a.mul_int(two_q).is_integer()), "{knot}");
        assert_eq!(d.order, knot.order());
    }
}

#[test]
fn mirror_offset_negates() {
    for knot in SimpleKnot::enumerate(PMAX) {
        let a = alexander_gradings(knot).unwrap();
        let b = alexander_gradings(knot.mirror_offset()).unwrap();
        assert_eq!(b.alexander_multiset(), a.alexander_multiset().negated(), "{knot}");
        let sp = knot.space;
        for s in sp.labels() {
            assert_eq!(b.tau[s.index()], a.tau[conjugate(sp, s).index()], "{knot} {s}");
            let back = pd_shift(sp, s, -(knot.k as i64));
            assert_eq!(b.tau[back.index()], -a.tau[s.index()].clone(), "{knot} {s}");
        }
    }
}

#[test]
fn tau_never_exceeds_a_max() {
    for knot in SimpleKnot::enumerate(PMAX) {
        let d = alexander_gradings(knot).unwrap();
        assert!(d.tau.iter().all(|t| t <= &d.a_max));
        assert!(d.kfrac.iter().zip(&d.tau).all(|(k, t)| (t - k).is_integer()));
    }
}

#[test]
fn shift_forms_agree_as_multisets() {
    let cache = CorrectionCache::new();
    for knot in SimpleKnot::enumerate(16) {
        let t = cache.table(knot.space);
        let k = knot.k as i64;
        assert_eq!(t.rhs_multiset(k, ShiftForm::Proposition), t.rhs_multiset(k, ShiftForm::Corollary));
    }
}

// Both sides of the identity are additive under connected sum.
#[test]
fn connected_sums_are_consistent_with_summed_correction_terms() {
    let knots: Vec<SimpleKnot> = SimpleKnot::enumerate(7).into_iter().step_by(3).collect();
    for (i, &k1) in knots.iter().enumerate() {
        for &k2 in &knots[i..] {
            let d1 = alexander_gradings(k1).unwrap();
            let d2 = alexander_gradings(k2).unwrap();
            let sum = connected_sum_knot_data(&d1, &d2);
            sum.check().unwrap();
            assert_eq!(sum.order, lenstau::exactq::lcm_u64(k1.order(), k2.order()));

            let tables: Vec<CorrectionTable> =
                [k1, k2].iter().map(|k| lenstau::lens::correction_terms(k.space)).collect();
            let dsum = connected_sum_d(&tables);
            let shifted = |labels: &[u64]| -> Vec<u64> {
                [k1, k2]
                    .iter()
                    .zip(labels)
                    .map(|(k, &s)| ShiftForm::Proposition.apply(k.space, lenstau::SpincLabel(s), k.k as i64).0)
                    .collect()
            };
            let rhs: RatMultiset = dsum.iter().map(|(l, d)| d - &dsum[&shifted(l)]).collect();
            let lhs: RatMultiset = sum.alexander.iter().map(|a| a.mul_int(2)).collect();
            assert_eq!(lhs, rhs, "{k1} # {k2}");

            for (flat, t) in sum.tau.iter().enumerate() {
                let l = sum.label_tuple(flat);
                assert_eq!(t.mul_int(2), &dsum[&l] - &dsum[&shifted(&l)], "{k1} # {k2} at {l:?}");
                assert_eq!(t, &(&d1.tau[l[0] as usize] + &d2.tau[l[1] as usize]));
            }
        }
    }
}
