#![allow(dead_code)]

use newtonma::hull::Polytope;
use newtonma::indicator::Indicator;
use newtonma::polysys::Polynomial;
use newtonma::rational::{frac, int, QVec, Rational};
use num_traits::Zero;
use proptest::prelude::*;

/// Points with half-integer coordinates in `[0, hi]`.
pub fn points(n: usize, count: std::ops::RangeInclusive<usize>, hi: i64) -> impl Strategy<Value = Vec<QVec>> {
    prop::collection::vec(prop::collection::vec(0..=2 * hi, n), count)
        .prop_map(|pts| pts.into_iter().map(|p| p.into_iter().map(|c| frac(c, 2)).collect()).collect())
}

pub fn polytope(n: usize) -> impl Strategy<Value = Polytope> {
    points(n, 1..=6, 3).prop_map(|pts| Polytope::convex_hull(pts).unwrap())
}

pub fn full_polytope(n: usize) -> impl Strategy<Value = Polytope> {
    polytope(n).prop_filter("full-dimensional", Polytope::is_full_dimensional)
}

fn with_origin(n: usize, mut pts: Vec<QVec>) -> Polytope {
    pts.push(vec![Rational::zero(); n]);
    Polytope::convex_hull(pts).unwrap()
}

pub fn indicator(n: usize) -> impl Strategy<Value = Indicator> {
    points(n, 1..=4, 3)
        .prop_map(move |pts| Indicator::new(with_origin(n, pts)).unwrap())
        .prop_filter("not a point", |i| i.theta().vertices().len() > 1)
}

/// Full-dimensional indicator reaching every coordinate axis.
pub fn exhaustive_indicator(n: usize) -> impl Strategy<Value = Indicator> {
    (prop::collection::vec(1..=8i64, n), points(n, 0..=3, 4)).prop_map(move |(axes, mut pts)| {
        for (k, c) in axes.into_iter().enumerate() {
            let mut e = vec![Rational::zero(); n];
            e[k] = frac(c, 2);
            pts.push(e);
        }
        Indicator::new(with_origin(n, pts)).unwrap()
    })
}

pub fn full_indicator(n: usize) -> impl Strategy<Value = Indicator> {
    indicator(n).prop_filter("full-dimensional", |i| i.theta().is_full_dimensional())
}

/// Sparse polynomial with total degree at most `deg` and small integer
/// coefficients.
pub fn polynomial(n: usize, deg: i64) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=deg, n), prop_oneof![-5i64..=-1, 1i64..=5])
        .prop_filter("degree", move |(e, _)| e.iter().sum::<i64>() <= deg);
    prop::collection::vec(term, 1..=6)
        .prop_map(move |ts| Polynomial::from_terms(n, false, ts.into_iter().map(|(e, c)| (e, int(c)))).unwrap())
        .prop_filter("nonzero", |p| !p.is_zero())
}

pub fn rational(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, 1..=4i64).prop_map(|(a, b)| frac(a, b))
}

pub fn qvector(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = QVec> {
    prop::collection::vec(rational(lo, hi), n)
}

pub fn positive_vector(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec((1..=12i64, 1..=4i64).prop_map(|(a, b)| frac(a, b)), n)
}
