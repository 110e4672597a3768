//! Exact rational convex polytopes.
//!
//! A [`Polytope`] stores only its extreme points. Facets are derived on
//! demand (full-dimensional polytopes only) and cached. Volumes use the
//! facet-pyramid decomposition `Vol = (1/n) sum_F h_F vol_{n-1}(F)`, where
//! each facet is measured in the coordinate chart obtained by dropping one
//! coordinate along which its normal is nonzero. Mixed volumes come from
//! the polarization (inclusion-exclusion) formula.

mod dd;
mod volume;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::QPair;
use crate::rational::{self, dot, QVec, Rational};

/// A facet hyperplane `{a : <normal, a> = offset}` of a full-dimensional
/// polytope, with `<normal, v> <= offset` on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Primitive integer outward normal.
    pub normal: Vec<BigInt>,
    pub offset: Rational,
    /// Indices into [`Polytope::vertices`] of the vertices on this facet.
    pub vertices: Vec<usize>,
}

impl Facet {
    pub fn normal_q(&self) -> QVec {
        self.normal.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<QVec>,
    affine_dim: usize,
    facets: OnceLock<Vec<Facet>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

/// Result of reducing a point set: extreme points plus, when the set is
/// full-dimensional, the facets expressed over those extreme points.
struct Reduced {
    vertices: Vec<QVec>,
    affine_dim: usize,
    facets: Option<Vec<Facet>>,
}

fn reduce(points: BTreeSet<QVec>, n: usize) -> Reduced {
    let pts: Vec<QVec> = points.into_iter().collect();
    let base = &pts[0];
    let diffs: Vec<QVec> = pts[1..].iter().map(|p| rational::sub(p, base)).collect();
    let (d, pivots) = rational::rank_with_pivots(&diffs, n);

    match d {
        0 => Reduced { vertices: pts, affine_dim: 0, facets: None },
        1 => {
            // the projection onto the pivot coordinate orders the segment
            let c = pivots[0];
            let lo = pts.iter().min_by(|a, b| a[c].cmp(&b[c])).unwrap().clone();
            let hi = pts.iter().max_by(|a, b| a[c].cmp(&b[c])).unwrap().clone();
            let mut vertices = vec![lo, hi];
            vertices.sort();
            let facets = (n == 1).then(|| {
                vec![
                    Facet { normal: vec![BigInt::from(-1)], offset: -&vertices[0][0], vertices: vec![0] },
                    Facet { normal: vec![BigInt::from(1)], offset: vertices[1][0].clone(), vertices: vec![1] },
                ]
            });
            Reduced { vertices, affine_dim: 1, facets }
        }
        _ => {
            let chart: Vec<QVec> =
                pts.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();
            let raw = dd::facets(&chart);
            // with distinct points, p_i is a vertex exactly when the facets
            // through it meet in {p_i}
            let is_vertex: Vec<bool> = (0..pts.len())
                .map(|i| {
                    let mut meet: Option<dd::Bits> = None;
                    for f in raw.iter().filter(|f| f.tight.contains(i)) {
                        meet = Some(match meet {
                            None => f.tight.clone(),
                            Some(m) => m.and(&f.tight),
                        });
                    }
                    meet.is_some_and(|m| m.count() == 1)
                })
                .collect();
            let mut new_index = vec![usize::MAX; pts.len()];
            let mut vertices = Vec::new();
            for (i, p) in pts.iter().enumerate() {
                if is_vertex[i] {
                    new_index[i] = vertices.len();
                    vertices.push(p.clone());
                }
            }
            let facets = (d == n).then(|| {
                let mut fs: Vec<Facet> = raw
                    .into_iter()
                    .map(|f| Facet {
                        vertices: f.tight.iter().filter(|&i| is_vertex[i]).map(|i| new_index[i]).collect(),
                        normal: f.normal,
                        offset: f.offset,
                    })
                    .collect();
                fs.sort_by(|a, b| a.normal.cmp(&b.normal).then_with(|| a.offset.cmp(&b.offset)));
                fs
            });
            Reduced { vertices, affine_dim: d, facets }
        }
    }
}

impl Polytope {
    /// Convex hull of a finite point set. Lower-dimensional hulls are allowed.
    pub fn convex_hull<I>(points: I) -> Result<Polytope>
    where
        I: IntoIterator<Item = QVec>,
    {
        let mut set = BTreeSet::new();
        let mut dim = None;
        for p in points {
            match dim {
                None => dim = Some(p.len()),
                Some(n) if n != p.len() => {
                    return Err(Error::DimensionMismatch { expected: n, found: p.len() })
                }
                _ => {}
            }
            set.insert(p);
        }
        let n = dim.ok_or(Error::EmptyInput)?;
        if n == 0 {
            return Err(Error::Invalid("points must have at least one coordinate".into()));
        }
        let r = reduce(set, n);
        let facets = OnceLock::new();
        if let Some(fs) = r.facets {
            let _ = facets.set(fs);
        }
        Ok(Polytope { dim: n, vertices: r.vertices, affine_dim: r.affine_dim, facets })
    }

    /// Build from integer coordinates; convenience for tests and examples.
    pub fn from_int_points(points: &[&[i64]]) -> Result<Polytope> {
        Polytope::convex_hull(points.iter().map(|p| rational::qvec(p)))
    }

    /// The standard simplex `conv{0, e_1, .., e_n}`.
    pub fn simplex(n: usize) -> Polytope {
        let mut pts = vec![vec![Rational::zero(); n]];
        for k in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[k] = rational::int(1);
            pts.push(e);
        }
        Polytope::convex_hull(pts).expect("nonempty")
    }

    /// The box `[0, a_1] x .. x [0, a_n]` for nonnegative `a`.
    pub fn unit_box(sides: &[Rational]) -> Polytope {
        let n = sides.len();
        let pts = (0..1usize << n).map(|mask| {
            (0..n)
                .map(|k| if mask >> k & 1 == 1 { sides[k].clone() } else { Rational::zero() })
                .collect()
        });
        Polytope::convex_hull(pts).expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn support_value(&self, t: &[Rational]) -> Result<Rational> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: t.len() });
        }
        Ok(self.vertices.iter().map(|v| dot(v, t)).max().expect("nonempty"))
    }

    /// Vertex attaining the support value in direction `t`; the
    /// lexicographically smallest one on ties.
    pub fn support_vertex(&self, t: &[Rational]) -> &QVec {
        let mut best = &self.vertices[0];
        let mut best_val = dot(best, t);
        for v in &self.vertices[1..] {
            let val = dot(v, t);
            if val > best_val {
                best = v;
                best_val = val;
            }
        }
        best
    }

    /// Complete irredundant facet list, sorted by normal then offset.
    pub fn facets(&self) -> Result<&[Facet]> {
        if !self.is_full_dimensional() {
            return Err(Error::LowerDimensional { dim: self.affine_dim, ambient: self.dim });
        }
        Ok(self.facets.get_or_init(|| {
            let set: BTreeSet<QVec> = self.vertices.iter().cloned().collect();
            reduce(set, self.dim).facets.expect("full-dimensional")
        }))
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let pts = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| rational::add(a, b)));
        Polytope::convex_hull(pts)
    }

    pub fn scale(&self, c: &Rational) -> Result<Polytope> {
        if c.is_negative() {
            return Err(Error::NegativeScale);
        }
        if c.is_zero() {
            return Polytope::convex_hull([vec![Rational::zero(); self.dim]]);
        }
        let facets = OnceLock::new();
        if let Some(fs) = self.facets.get() {
            let scaled = fs
                .iter()
                .map(|f| Facet { normal: f.normal.clone(), offset: &f.offset * c, vertices: f.vertices.clone() })
                .collect();
            let _ = facets.set(scaled);
        }
        Ok(Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| rational::scaled(v, c)).collect(),
            affine_dim: self.affine_dim,
            facets,
        })
    }

    pub fn translate(&self, by: &[Rational]) -> Result<Polytope> {
        if by.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: by.len() });
        }
        Polytope::convex_hull(self.vertices.iter().map(|v| rational::add(v, by)))
    }

    /// Exact n-dimensional volume; zero for lower-dimensional polytopes.
    pub fn volume(&self) -> Rational {
        volume::volume(self)
    }

    /// Whether `p` lies in the polytope. Full-dimensional polytopes use the
    /// facet inequalities; lower-dimensional ones fall back to a hull test.
    pub fn contains(&self, p: &[Rational]) -> bool {
        if let Ok(fs) = self.facets() {
            return fs.iter().all(|f| {
                let n = f.normal_q();
                dot(&n, p) <= f.offset
            });
        }
        let mut pts = self.vertices.clone();
        pts.push(p.to_vec());
        match Polytope::convex_hull(pts) {
            Ok(h) => h.vertices == self.vertices,
            Err(_) => false,
        }
    }

    /// `self ⊆ other`, tested on vertices.
    pub fn is_subset_of(&self, other: &Polytope) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }
}

/// Mixed volume `MV(K_1, .., K_n)` normalized so that `MV(K, .., K) = Vol(K)`,
/// by inclusion-exclusion over the `2^n - 1` partial Minkowski sums.
pub fn mixed_volume(ks: &[Polytope]) -> Result<Rational> {
    let n = ks.first().ok_or(Error::EmptyInput)?.dim;
    if ks.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: ks.len() });
    }
    if let Some(k) = ks.iter().find(|k| k.dim != n) {
        return Err(Error::DimensionMismatch { expected: n, found: k.dim });
    }
    let terms: Vec<Rational> = (1u32..1 << n)
        .into_par_iter()
        .map(|mask| {
            let mut sum: Option<Polytope> = None;
            for (i, k) in ks.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    sum = Some(match sum {
                        None => k.clone(),
                        Some(s) => s.minkowski_sum(k).expect("dimensions checked"),
                    });
                }
            }
            let vol = sum.expect("nonempty subset").volume();
            if (n - mask.count_ones() as usize).is_multiple_of(2) {
                vol
            } else {
                -vol
            }
        })
        .collect();
    let total: Rational = terms.into_iter().sum();
    Ok(total / rational::factorial(n))
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<Vec<QPair>>,
}

impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|q| QPair(q.clone())).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolytopeJson::deserialize(d)?;
        if raw.vertices.iter().any(|v| v.len() != raw.dim) {
            return Err(serde::de::Error::custom("vertex length differs from dim"));
        }
        Polytope::convex_hull(raw.vertices.into_iter().map(|v| v.into_iter().map(|q| q.0).collect()))
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct FacetJson {
    normal: Vec<serde_json::Value>,
    offset: QPair,
}

impl Serialize for Facet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FacetJson {
            normal: self.normal.iter().map(crate::json::int_value).collect(),
            offset: QPair(self.offset.clone()),
        }
        .serialize(s)
    }
}
