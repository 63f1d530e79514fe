//! Structural invariants over randomly drawn cases, plus a BRST sweep of the
//! small classical algebras.

use collapsing::dsred::{build_brst, check_q_squared_zero};
use collapsing::orbits::{all_orbits, closure_leq, orbit_dimension, OrbitLabel};
use collapsing::rootsys::TypeLabel;
use collapsing::{q, Q};
use proptest::prelude::*;

fn classical() -> impl Strategy<Value = (TypeLabel, usize)> {
    prop_oneof![
        (1usize..=6).prop_map(|r| (TypeLabel::A, r)),
        (2usize..=5).prop_map(|r| (TypeLabel::B, r)),
        (2usize..=5).prop_map(|r| (TypeLabel::C, r)),
        (4usize..=6).prop_map(|r| (TypeLabel::D, r)),
    ]
}

/// `a ⊴ b` in dominance order.
fn dominated(a: &OrbitLabel, b: &OrbitLabel) -> bool {
    let sums = |p: &[usize]| p.iter().scan(0, |s, x| { *s += x; Some(*s) }).collect::<Vec<_>>();
    let (sa, sb) = (sums(&a.partition), sums(&b.partition));
    (0..sa.len()).all(|i| sa[i] <= *sb.get(i).unwrap_or(sb.last().unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_order_is_a_dimension_graded_partial_order((t, r) in classical(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), l in any::<prop::sample::Index>()) {
        let orbits = all_orbits(t, r).unwrap();
        let (a, b, c) = (i.get(&orbits), j.get(&orbits), l.get(&orbits));
        prop_assert!(closure_leq(a, a));
        if closure_leq(a, b) {
            prop_assert!(dominated(a, b));
            prop_assert!(orbit_dimension(a) <= orbit_dimension(b));
            if closure_leq(b, a) {
                prop_assert_eq!(a, b);
            } else {
                prop_assert!(orbit_dimension(a) < orbit_dimension(b));
            }
            if closure_leq(b, c) {
                prop_assert!(closure_leq(a, c));
            }
        }
        // In sl_n closure order is exactly dominance order.
        if t == TypeLabel::A {
            prop_assert_eq!(closure_leq(a, b), dominated(a, b));
        }
    }

    #[test]
    fn sl2_brst_charge_is_nilpotent_at_any_level(num in -12i64..12, den in 1i64..7) {
        let c = build_brst(TypeLabel::A, 1, q(num, den)).unwrap();
        let r = check_q_squared_zero(&c, 3).unwrap();
        prop_assert!(r.wick_zero && r.witness.is_none(), "{:?} {:?}", r.wick_witness, r.witness);
    }
}

#[test]
fn brst_sweep_ranks_up_to_three() {
    let levels = [Q::ONE, q(-1, 3), q(5, 2)];
    for (t, r) in [
        (TypeLabel::A, 1),
        (TypeLabel::A, 2),
        (TypeLabel::A, 3),
        (TypeLabel::B, 2),
        (TypeLabel::C, 2),
        (TypeLabel::B, 3),
        (TypeLabel::C, 3),
    ] {
        for k in levels {
            let c = build_brst(t, r, k).unwrap();
            let rep = check_q_squared_zero(&c, 3).unwrap();
            assert!(rep.wick_zero, "{t}{r} at {k}: {:?}", rep.wick_witness);
            assert!(rep.witness.is_none(), "{t}{r} at {k}: {:?}", rep.witness);
        }
    }
}
