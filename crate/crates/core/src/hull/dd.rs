//! Facet enumeration by the double-description method.
//!
//! The facets of `conv(points)` are the extreme rays of the cone of valid
//! inequalities `{(a, b) : <a, v> <= b for every point v}`. Rays are seeded
//! from an affinely independent simplex and refined one point at a time;
//! adjacency of rays uses the combinatorial test on their sets of tight
//! points. All arithmetic is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, int, primitive, QVec, Rational};

/// Fixed-width bitset over point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// One facet of a full-dimensional point configuration.
#[derive(Debug, Clone)]
pub(crate) struct RawFacet {
    /// Primitive integer outward normal.
    pub normal: Vec<BigInt>,
    pub offset: Rational,
    /// Indices of the input points lying on the facet.
    pub tight: Bits,
}

struct Ray {
    /// Integer `(a_1..a_d, b)` with coprime entries, inequality `<a, v> <= b`.
    y: Vec<BigInt>,
    zero: Bits,
}

fn normalize(mut y: Vec<BigInt>) -> Vec<BigInt> {
    let g = y.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        y.iter_mut().for_each(|c| *c /= &g);
    }
    y
}

fn slack(y: &[BigInt], p: &[BigInt]) -> BigInt {
    let d = p.len();
    y[..d].iter().zip(p).fold(-&y[d], |acc, (a, b)| acc + a * b)
}

/// Indices of `d + 1` affinely independent points, chosen greedily in input
/// order. Callers guarantee that the configuration is full-dimensional.
fn initial_simplex(points: &[QVec]) -> Vec<usize> {
    let d = points[0].len();
    let mut chosen = vec![0];
    let mut diffs: Vec<QVec> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        let mut trial = diffs.clone();
        trial.push(rational::sub(p, &points[0]));
        if rational::rank_with_pivots(&trial, d).0 == trial.len() {
            diffs = trial;
            chosen.push(i);
            if chosen.len() == d + 1 {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), d + 1, "configuration is not full-dimensional");
    chosen
}

/// Facets of the hull of a full-dimensional set of distinct points in
/// `R^d`, `d >= 1`.
pub(crate) fn facets(points: &[QVec]) -> Vec<RawFacet> {
    let d = points[0].len();
    let m = points.len();
    let simplex = initial_simplex(points);

    // work with the integer points L * p
    let lcm = points.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect())
        .collect();

    // rows (s_j, -1); the rays of {y : A y <= 0} are the columns of -A^{-1}
    let a: Vec<QVec> = simplex
        .iter()
        .map(|&j| {
            let mut row: QVec = scaled[j].iter().map(|c| Rational::from_integer(c.clone())).collect();
            row.push(int(-1));
            row
        })
        .collect();
    let mut rays: Vec<Ray> = (0..=d)
        .map(|i| {
            let mut rhs = vec![Rational::zero(); d + 1];
            rhs[i] = int(-1);
            let y = rational::solve(&a, &rhs).expect("simplex rows are independent");
            let (y, _) = primitive(&y);
            let mut zero = Bits::new(m);
            for (j, &pj) in simplex.iter().enumerate() {
                if j != i {
                    zero.insert(pj);
                }
            }
            Ray { y, zero }
        })
        .collect();

    let mut in_simplex = vec![false; m];
    for &s in &simplex {
        in_simplex[s] = true;
    }

    for idx in (0..m).filter(|&i| !in_simplex[i]) {
        let p = &scaled[idx];
        let vals: Vec<BigInt> = rays.iter().map(|r| slack(&r.y, p)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zero.insert(idx);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut fresh = Vec::new();
        for &ip in &pos {
            for &im in &neg {
                let common = rays[ip].zero.and(&rays[im].zero);
                if common.count() + 1 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != ip && k != im && common.is_subset(&r.zero));
                if blocked {
                    continue;
                }
                let vp = &vals[ip];
                let vm = -&vals[im];
                let y: Vec<BigInt> = rays[im]
                    .y
                    .iter()
                    .zip(&rays[ip].y)
                    .map(|(ym, yp)| vp * ym + &vm * yp)
                    .collect();
                let mut zero = common;
                zero.insert(idx);
                fresh.push(Ray { y: normalize(y), zero });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(vals) {
            if v.is_positive() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.zero.insert(idx);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    rays.into_iter()
        .map(|r| {
            let g = r.y[..d].iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let normal = r.y[..d].iter().map(|c| c / &g).collect();
            let offset = Rational::new(r.y[d].clone(), g * &lcm);
            RawFacet { normal, offset, tight: r.zero }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts = vec![
            qvec(&[0, 0]),
            qvec(&[2, 0]),
            qvec(&[0, 2]),
            qvec(&[1, 1]),
            qvec(&[2, 2]),
            qvec(&[1, 0]),
        ];
        let f = facets(&pts);
        assert_eq!(f.len(), 4);
        let bottom = f.iter().find(|f| f.normal == [0.into(), (-1).into()]).unwrap();
        assert_eq!(bottom.offset, int(0));
        assert_eq!(bottom.tight.iter().collect::<Vec<_>>(), vec![0, 1, 5]);
    }

    #[test]
    fn cube_3d() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(qvec(&[x, y, z]));
                }
            }
        }
        let f = facets(&pts);
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|f| f.tight.count() == 4));
    }
}
