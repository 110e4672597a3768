mod common;

use newtonma::bounds::{
    bezout_bound, directional_bound, directional_objective, mixed_volume_bound, permanent, permanent_bound,
    BoundReport,
};
use newtonma::indicator::Indicator;
use newtonma::rational::{frac, int, to_f64, Rational};
use proptest::prelude::*;

fn tuple(n: usize) -> impl Strategy<Value = Vec<Indicator>> {
    prop::collection::vec(common::indicator(n), n)
}

fn sigmas(inds: &[Indicator]) -> Vec<Rational> {
    inds.iter().map(Indicator::sigma).collect()
}

fn naive_permanent(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::default();
    // Heap's algorithm
    let mut c = vec![0; n];
    let add = |p: &[usize]| (0..n).fold(int(1), |acc, i| acc * &m[i][p[i]]);
    total += add(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            total += add(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bound_chain(inds in (2usize..=3).prop_flat_map(tuple)) {
        let n = inds.len();
        let one = int(1);
        let mv = mixed_volume_bound(&inds, n, &one).unwrap();
        prop_assert!(mv <= permanent_bound(&inds, &one).unwrap());
        prop_assert!(mv <= bezout_bound(&sigmas(&inds), &one));
        let dir = directional_bound(&inds, 1e-9).unwrap();
        prop_assert!(to_f64(&mv) <= dir.value + 1e-6, "mv {} directional {}", mv, dir.value);
    }

    #[test]
    fn padded_tuples_keep_the_chain(
        (inds, n) in (2usize..=3).prop_flat_map(|n| (prop::collection::vec(common::indicator(n), 1..n), Just(n)))
    ) {
        let report = BoundReport::compute(&inds, n, &int(1), 1e-9).unwrap();
        let mv = report.mixed_volume.0.clone();
        prop_assert!(mv <= report.permanent.0);
        prop_assert!(mv <= report.bezout.0);
        prop_assert!(to_f64(&mv) <= report.directional.value + 1e-6);
    }

    #[test]
    fn objective_is_convex(
        (inds, s1, s2) in (2usize..=3).prop_flat_map(|n| (
            tuple(n),
            prop::collection::vec(-3.0f64..3.0, n),
            prop::collection::vec(-3.0f64..3.0, n),
        )),
        lambda in 0.01f64..0.99,
    ) {
        let mid: Vec<f64> = s1.iter().zip(&s2).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect();
        let lhs = directional_objective(&inds, &mid);
        let rhs = lambda * directional_objective(&inds, &s1) + (1.0 - lambda) * directional_objective(&inds, &s2);
        prop_assert!(lhs <= rhs + 1e-12);
    }

    #[test]
    fn bounds_linear_in_delta(inds in (2usize..=3).prop_flat_map(tuple), d in (1..=9i64, 1..=4i64)) {
        let n = inds.len();
        let delta = frac(d.0, d.1);
        let one = int(1);
        prop_assert_eq!(mixed_volume_bound(&inds, n, &delta).unwrap(), &delta * mixed_volume_bound(&inds, n, &one).unwrap());
        prop_assert_eq!(permanent_bound(&inds, &delta).unwrap(), &delta * permanent_bound(&inds, &one).unwrap());
        prop_assert_eq!(bezout_bound(&sigmas(&inds), &delta), &delta * bezout_bound(&sigmas(&inds), &one));
        let a = BoundReport::compute(&inds, n, &one, 1e-9).unwrap().directional.value;
        let b = BoundReport::compute(&inds, n, &delta, 1e-9).unwrap().directional.value;
        prop_assert!((b - to_f64(&delta) * a).abs() <= 1e-9 * b.abs().max(1.0));
    }

    #[test]
    fn ryser_matches_expansion(m in (1usize..=5).prop_flat_map(|n| prop::collection::vec(common::qvector(n, -4, 4), n))) {
        prop_assert_eq!(permanent(&m), naive_permanent(&m));
    }
}
