mod common;

use newtonma::hull::{mixed_volume, Polytope};
use newtonma::oracle::triangulated_volume;
use newtonma::rational::{self, factorial, int, QVec, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// `(1/n) sum_F offset_F vol_{n-1}(F) / |N_k|`, measuring each facet in the
/// chart that drops its first nonzero normal coordinate.
fn pyramid_volume(k: &Polytope) -> Rational {
    if !k.is_full_dimensional() {
        return Rational::zero();
    }
    let n = k.dim();
    if n == 1 {
        return &k.vertices()[1][0] - &k.vertices()[0][0];
    }
    let mut total = Rational::zero();
    for f in k.facets().unwrap() {
        let drop = f.normal.iter().position(|c| !c.is_zero()).unwrap();
        let chart = Polytope::convex_hull(f.vertices.iter().map(|&i| {
            let v = &k.vertices()[i];
            (0..n).filter(|&j| j != drop).map(|j| v[j].clone()).collect::<QVec>()
        }))
        .unwrap();
        total += &f.offset * pyramid_volume(&chart) / Rational::from_integer(f.normal[drop].abs());
    }
    total / int(n as i64)
}

fn tuple(n: usize) -> impl Strategy<Value = Vec<Polytope>> {
    prop::collection::vec(common::polytope(n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mixed_volume_symmetric((ks, perm) in (2usize..=4).prop_flat_map(|n| (tuple(n), Just(n).prop_perturb(|n, mut rng| {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, rng.random_range(0..=i));
        }
        p
    })))) {
        let permuted: Vec<Polytope> = perm.iter().map(|&i| ks[i].clone()).collect();
        prop_assert_eq!(mixed_volume(&ks).unwrap(), mixed_volume(&permuted).unwrap());
    }

    #[test]
    fn diagonal_is_volume(k in (1usize..=4).prop_flat_map(common::polytope)) {
        let n = k.dim();
        prop_assert_eq!(mixed_volume(&vec![k.clone(); n]).unwrap(), k.volume());
    }

    #[test]
    fn monotone_under_inclusion(
        (ks, extra) in (2usize..=3).prop_flat_map(|n| (tuple(n), prop::collection::vec(common::points(n, 1..=3, 3), n)))
    ) {
        let ls: Vec<Polytope> = ks
            .iter()
            .zip(extra)
            .map(|(k, pts)| Polytope::convex_hull(k.vertices().iter().cloned().chain(pts)).unwrap())
            .collect();
        for (k, l) in ks.iter().zip(&ls) {
            prop_assert!(k.is_subset_of(l));
            if l.is_full_dimensional() {
                for f in l.facets().unwrap() {
                    prop_assert!(k.support_value(&f.normal_q()).unwrap() <= f.offset);
                }
            }
        }
        prop_assert!(mixed_volume(&ks).unwrap() <= mixed_volume(&ls).unwrap());
    }

    #[test]
    fn additive_in_first_slot(
        (a, b, rest, c) in (2usize..=3).prop_flat_map(|n| (common::polytope(n), common::polytope(n), prop::collection::vec(common::polytope(n), n - 1), common::rational(0, 6)))
    ) {
        let with = |first: Polytope| {
            let mut v = vec![first];
            v.extend(rest.iter().cloned());
            mixed_volume(&v).unwrap()
        };
        prop_assert_eq!(with(a.minkowski_sum(&b).unwrap()), with(a.clone()) + with(b.clone()));
        let c = c.abs();
        prop_assert_eq!(with(a.scale(&c).unwrap()), &c * with(a));
    }

    #[test]
    fn volume_matches_pyramids_and_triangulation(k in (1usize..=4).prop_flat_map(common::polytope)) {
        let v = k.volume();
        prop_assert_eq!(&v, &pyramid_volume(&k));
        prop_assert_eq!(&v, &triangulated_volume(k.vertices().to_vec(), k.dim()));
    }

    #[test]
    fn support_is_additive(
        (a, b, t) in (1usize..=4).prop_flat_map(|n| (common::polytope(n), common::polytope(n), common::qvector(n, -5, 5)))
    ) {
        let s = a.minkowski_sum(&b).unwrap();
        prop_assert_eq!(s.support_value(&t).unwrap(), a.support_value(&t).unwrap() + b.support_value(&t).unwrap());
    }

    #[test]
    fn facets_are_valid_and_tight(k in (1usize..=4).prop_flat_map(common::full_polytope)) {
        let n = k.dim();
        for f in k.facets().unwrap() {
            let normal = f.normal_q();
            prop_assert!(f.vertices.len() >= n);
            for (i, v) in k.vertices().iter().enumerate() {
                let val = rational::dot(&normal, v);
                prop_assert!(val <= f.offset);
                prop_assert_eq!(val == f.offset, f.vertices.contains(&i));
            }
        }
        let facet_count = k.facets().unwrap().len();
        prop_assert!(facet_count > n);
    }

    #[test]
    fn scaling_volume(k in (1usize..=3).prop_flat_map(common::polytope), c in common::rational(0, 5)) {
        let n = k.dim();
        let c = c.abs();
        prop_assert_eq!(k.scale(&c).unwrap().volume(), num_traits::pow(c, n) * k.volume());
        prop_assert_eq!(factorial(n) * mixed_volume(&vec![Polytope::simplex(n); n]).unwrap(), int(1));
    }
}
