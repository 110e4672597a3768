//! Mixed volume by polarization, on a code path that shares nothing with
//! the hull module: Minkowski sums are formed from all pairwise vertex
//! sums, and volumes come from a placing triangulation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::rational::{self, QVec, Rational};

type IVec = Vec<BigInt>;

/// Fraction-free (Bareiss) determinant of an integer matrix.
fn int_det(mut m: Vec<IVec>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn isub(a: &[BigInt], b: &[BigInt]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Placing (incremental) triangulation of a set of integer points.
struct Placing {
    points: Vec<IVec>,
    /// Simplices as indices into `points`.
    simplices: Vec<Vec<usize>>,
}

/// Outward hyperplane `<normal, x> <= offset` of a boundary facet of the
/// current triangulation.
struct Boundary {
    normal: IVec,
    offset: BigInt,
}

/// Generalized cross product of `n - 1` vectors in `Z^n`.
fn cofactor_normal(rows: &[IVec], n: usize) -> IVec {
    (0..n)
        .map(|k| {
            let minor: Vec<IVec> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = int_det(minor);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn facet_plane(points: &[IVec], facet: &[usize], apex: usize, n: usize) -> Boundary {
    let base = &points[facet[0]];
    let rows: Vec<IVec> = facet[1..].iter().map(|&i| isub(&points[i], base)).collect();
    let mut normal = cofactor_normal(&rows, n);
    let mut offset = idot(&normal, base);
    if idot(&normal, &points[apex]) > offset {
        normal.iter_mut().for_each(|x| *x = -&*x);
        offset = -offset;
    }
    Boundary { normal, offset }
}

fn affinely_independent_start(points: &[IVec], n: usize) -> Vec<usize> {
    let q = |v: &IVec| -> QVec { v.iter().map(|c| Rational::from_integer(c.clone())).collect() };
    let mut start = vec![0usize];
    let mut diffs: Vec<QVec> = Vec::new();
    for i in 1..points.len() {
        if start.len() == n + 1 {
            break;
        }
        let mut trial = diffs.clone();
        trial.push(q(&isub(&points[i], &points[0])));
        if rational::rank_with_pivots(&trial, n).0 == trial.len() {
            diffs = trial;
            start.push(i);
        }
    }
    start
}

impl Placing {
    fn new(mut points: Vec<IVec>, n: usize) -> Placing {
        points.sort();
        points.dedup();
        let mut out = Placing { points, simplices: Vec::new() };
        let start = affinely_independent_start(&out.points, n);
        if start.len() < n + 1 {
            return out;
        }

        let mut boundary: HashMap<Vec<usize>, Boundary> = HashMap::new();
        for skip in 0..=n {
            let facet: Vec<usize> = start.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect();
            let plane = facet_plane(&out.points, &facet, start[skip], n);
            boundary.insert(facet, plane);
        }
        out.simplices.push(start.clone());

        for p in 0..out.points.len() {
            if start.contains(&p) {
                continue;
            }
            let q = &out.points[p];
            let visible: Vec<Vec<usize>> = boundary
                .iter()
                .filter(|(_, b)| idot(&b.normal, q) > b.offset)
                .map(|(f, _)| f.clone())
                .collect();
            for f in visible {
                boundary.remove(&f);
                let mut simplex = f.clone();
                simplex.push(p);
                for skip in 0..f.len() {
                    let mut g: Vec<usize> =
                        f.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect();
                    g.push(p);
                    g.sort_unstable();
                    if boundary.remove(&g).is_none() {
                        let plane = facet_plane(&out.points, &g, f[skip], n);
                        boundary.insert(g, plane);
                    }
                }
                out.simplices.push(simplex);
            }
        }
        out
    }

    /// `n!` times the volume.
    fn normalized_volume(&self) -> BigInt {
        self.simplices
            .iter()
            .map(|s| {
                let base = &self.points[s[0]];
                int_det(s[1..].iter().map(|&i| isub(&self.points[i], base)).collect()).abs()
            })
            .sum()
    }

    /// Points used by some simplex. A superset of the extreme points when
    /// the set is full-dimensional; everything otherwise.
    fn used_points(self) -> Vec<IVec> {
        if self.simplices.is_empty() {
            return self.points;
        }
        let mut used = vec![false; self.points.len()];
        for s in &self.simplices {
            for &i in s {
                used[i] = true;
            }
        }
        self.points.into_iter().zip(used).filter(|(_, u)| *u).map(|(p, _)| p).collect()
    }
}

/// Common denominator of the coordinates of all polytopes.
fn common_denominator<'a>(coords: impl Iterator<Item = &'a Rational>) -> BigInt {
    coords.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn to_int(p: &[Rational], l: &BigInt) -> IVec {
    p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
}

/// Volume of the convex hull of `points` in `R^n`.
pub fn triangulated_volume(points: Vec<QVec>, n: usize) -> Rational {
    let l = common_denominator(points.iter().flatten());
    let ints = points.iter().map(|p| to_int(p, &l)).collect();
    let nv = Placing::new(ints, n).normalized_volume();
    Rational::new(nv, num_traits::pow(l, n)) / rational::factorial(n)
}

fn pairwise_sum(a: &[IVec], b: &[IVec]) -> Vec<IVec> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect())).collect()
}

/// `MV(K_1, .., K_n)` with `MV(K, .., K) = Vol(K)`, computed independently
/// of [`crate::hull::mixed_volume`].
pub fn mv_inclusion_exclusion(ks: &[Polytope]) -> Result<Rational> {
    let n = ks.first().ok_or(Error::EmptyInput)?.dim();
    if ks.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: ks.len() });
    }
    if let Some(k) = ks.iter().find(|k| k.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: k.dim() });
    }
    let l = common_denominator(ks.iter().flat_map(|k| k.vertices().iter().flatten()));
    let verts: Vec<Vec<IVec>> = ks.iter().map(|k| k.vertices().iter().map(|v| to_int(v, &l)).collect()).collect();

    // partial sums by increasing size, each built from a smaller one
    let full = 1usize << n;
    let mut sums: Vec<Vec<IVec>> = vec![Vec::new(); full];
    let mut total = BigInt::zero();
    for size in 1..=n {
        let layer: Vec<(usize, BigInt, Vec<IVec>)> = (1..full)
            .into_par_iter()
            .filter(|m| m.count_ones() as usize == size)
            .map(|mask| {
                let low = mask.trailing_zeros() as usize;
                let rest = mask & (mask - 1);
                let pts = if rest == 0 { verts[low].clone() } else { pairwise_sum(&sums[rest], &verts[low]) };
                let tri = Placing::new(pts, n);
                (mask, tri.normalized_volume(), tri.used_points())
            })
            .collect();
        for (mask, vol, pts) in layer {
            if (n - size) % 2 == 0 {
                total += vol;
            } else {
                total -= vol;
            }
            sums[mask] = pts;
        }
    }
    Ok(Rational::new(total, num_traits::pow(l, n)) / rational::factorial(n).pow(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, qvec};

    #[test]
    fn triangulated_volumes() {
        let sq = vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1]), qvec(&[1, 0])];
        assert_eq!(triangulated_volume(sq, 2), int(1));
        // pentagon with an interior point and a point on an edge
        let pent = vec![
            qvec(&[0, 0]),
            qvec(&[1, 0]),
            qvec(&[2, 1]),
            qvec(&[1, 2]),
            qvec(&[0, 1]),
            qvec(&[1, 1]),
            qvec(&[0, 0]),
        ];
        assert_eq!(triangulated_volume(pent, 2), frac(5, 2));
        let mut cube = Vec::new();
        for m in 0..8 {
            cube.push(qvec(&[m & 1, m >> 1 & 1, m >> 2 & 1]).into_iter().map(|x| x * int(2)).collect());
        }
        cube.push(qvec(&[1, 1, 1]));
        assert_eq!(triangulated_volume(cube, 3), int(8));
        assert_eq!(triangulated_volume(vec![qvec(&[0, 0]), qvec(&[1, 1]), qvec(&[2, 2])], 2), int(0));
        assert_eq!(triangulated_volume(vec![qvec(&[3]), qvec(&[-1]), qvec(&[0])], 1), int(4));
    }

    #[test]
    fn mixed_volumes() {
        let d = Polytope::simplex(2);
        assert_eq!(mv_inclusion_exclusion(&[d.clone(), d]).unwrap(), frac(1, 2));
        let a = Polytope::unit_box(&[int(1), int(2)]);
        let b = Polytope::unit_box(&[int(3), int(1)]);
        assert_eq!(mv_inclusion_exclusion(&[a, b]).unwrap(), frac(7, 2));
        let seg = Polytope::from_int_points(&[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(mv_inclusion_exclusion(&[seg, Polytope::simplex(2)]).unwrap(), frac(1, 1));
    }
}
