//! Indicators and logarithmic types.
//!
//! An indicator is represented by its polytope `Θ`, a convex polytope in the
//! closed nonnegative orthant that contains the origin. Its convex image
//! `ψ(t)` is the support function of `Θ`, and every logarithmic type is a
//! value of `ψ`:
//!
//! * `σ(u) = ψ(1, .., 1)`,
//! * `σ(u, a) = ψ(a)` for `a > 0`,
//! * `σ_k(u) = ψ(e_k)`.
//!
//! For `u = log|P|` the polytope is the Newton polyhedron at infinity of
//! `P(x + w)`: the hull of the exponents of the Taylor-shifted polynomial
//! together with the origin.

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::polysys::{Exponent, Polynomial};
use crate::rational::{self, dot, QVec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndicatorKind {
    /// Built from a polynomial.
    Newton,
    /// Built from weighted exponents or an explicit polytope.
    Weighted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indicator {
    theta: Polytope,
    kind: IndicatorKind,
}

/// Scaled exponent data `(J, c)`; the indicator is generated by the points
/// `c * J`. For example `u = 1/2 log(1 + |z1 z2|^2)` is `[((1, 1), 1)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSupport {
    pairs: Vec<(Exponent, Rational)>,
}

impl WeightedSupport {
    pub fn new(pairs: Vec<(Exponent, Rational)>) -> Result<Self> {
        let n = pairs.first().ok_or(Error::EmptyInput)?.0.len();
        for (j, c) in &pairs {
            if j.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: j.len() });
            }
            if j.iter().any(|&e| e < 0) {
                return Err(Error::InvalidIndicator("exponents must be nonnegative".into()));
            }
            if !c.is_positive() {
                return Err(Error::InvalidIndicator("weights must be positive".into()));
            }
        }
        Ok(WeightedSupport { pairs })
    }

    pub fn pairs(&self) -> &[(Exponent, Rational)] {
        &self.pairs
    }
}

/// Containment scaling `min{λ >= 0 : Θ^u ⊆ λ Θ^Φ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelativeType {
    Finite(Rational),
    Infinite,
}

impl RelativeType {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            RelativeType::Finite(q) => Some(q),
            RelativeType::Infinite => None,
        }
    }
}

fn exponent_point(e: &[i64]) -> QVec {
    rational::qvec(e)
}

/// Bernstein's polytope: the hull of the exponents, origin not adjoined.
/// Laurent polynomials are accepted.
pub fn torus_polytope(p: &Polynomial) -> Result<Polytope> {
    let s = p.support()?;
    Polytope::convex_hull(s.points.iter().map(|e| exponent_point(e)))
}

impl Indicator {
    /// Wrap a polytope, checking that it lies in the nonnegative orthant and
    /// has the origin as a vertex.
    pub fn new(theta: Polytope) -> Result<Indicator> {
        Indicator::with_kind(theta, IndicatorKind::Weighted)
    }

    fn with_kind(theta: Polytope, kind: IndicatorKind) -> Result<Indicator> {
        if theta.vertices().iter().flatten().any(|c| c.is_negative()) {
            return Err(Error::InvalidIndicator("vertex outside the nonnegative orthant".into()));
        }
        if !theta.vertices().iter().any(|v| v.iter().all(Zero::is_zero)) {
            return Err(Error::InvalidIndicator("origin is not a point of the polytope".into()));
        }
        Ok(Indicator { theta, kind })
    }

    /// Hull of `support(P(x + w))` and the origin.
    pub fn newton_at_infinity(p: &Polynomial, x: &[Rational]) -> Result<Indicator> {
        let shifted = p.taylor_shift(x)?;
        let s = shifted.support()?;
        let n = p.n_vars();
        let pts = s
            .points
            .iter()
            .map(|e| exponent_point(e))
            .chain(std::iter::once(vec![Rational::zero(); n]));
        Indicator::with_kind(Polytope::convex_hull(pts)?, IndicatorKind::Newton)
    }

    /// Hull of the scaled exponents `c * J` and the origin.
    pub fn from_weighted_support(ws: &WeightedSupport) -> Result<Indicator> {
        let n = ws.pairs[0].0.len();
        let pts = ws
            .pairs
            .iter()
            .map(|(j, c)| rational::scaled(&exponent_point(j), c))
            .chain(std::iter::once(vec![Rational::zero(); n]));
        Indicator::with_kind(Polytope::convex_hull(pts)?, IndicatorKind::Weighted)
    }

    /// Indicator polytope `d Δ` of `d log|z|`.
    pub fn simplex(n: usize, d: &Rational) -> Result<Indicator> {
        Indicator::new(Polytope::simplex(n).scale(d)?)
    }

    /// The box `Π [0, a_k]`.
    pub fn boxed(sides: &[Rational]) -> Result<Indicator> {
        if sides.iter().any(|s| s.is_negative()) {
            return Err(Error::InvalidIndicator("box sides must be nonnegative".into()));
        }
        Indicator::new(Polytope::unit_box(sides))
    }

    pub fn theta(&self) -> &Polytope {
        &self.theta
    }

    pub fn kind(&self) -> IndicatorKind {
        self.kind
    }

    pub fn n_vars(&self) -> usize {
        self.theta.dim()
    }

    pub fn scale(&self, c: &Rational) -> Result<Indicator> {
        Ok(Indicator { theta: self.theta.scale(c)?, kind: self.kind })
    }

    /// `ψ(t)`, the support function of `Θ`.
    pub fn psi(&self, t: &[Rational]) -> Result<Rational> {
        self.theta.support_value(t)
    }

    /// Directional type `σ(u, a) = ψ(a)` for a strictly positive `a`.
    pub fn directional_type(&self, a: &[Rational]) -> Result<Rational> {
        if a.len() != self.n_vars() {
            return Err(Error::DimensionMismatch { expected: self.n_vars(), found: a.len() });
        }
        if a.iter().any(|c| !c.is_positive()) {
            return Err(Error::NonPositiveDirection);
        }
        self.psi(a)
    }

    /// Logarithmic type `σ(u) = ψ(1, .., 1)`.
    pub fn sigma(&self) -> Rational {
        let ones = vec![Rational::one(); self.n_vars()];
        self.psi(&ones).expect("matching dimension")
    }

    /// Type in the single variable `z_{k+1}`: `ψ(e_k)`.
    pub fn partial_type(&self, k: usize) -> Result<Rational> {
        if k >= self.n_vars() {
            return Err(Error::DimensionMismatch { expected: self.n_vars(), found: k + 1 });
        }
        let mut e = vec![Rational::zero(); self.n_vars()];
        e[k] = Rational::one();
        self.psi(&e)
    }

    /// The multitype `(σ_1(u), .., σ_n(u))`.
    pub fn multitype(&self) -> Vec<Rational> {
        (0..self.n_vars()).map(|k| self.partial_type(k).expect("in range")).collect()
    }

    /// Whether `ψ(t) > 0` for every `t` with a positive coordinate. For a
    /// polytope in the orthant containing 0 this holds exactly when every
    /// positive coordinate half-axis meets `Θ` away from the origin, and the
    /// intersection with that axis is a face, so it suffices to look for a
    /// vertex `c e_k` with `c > 0`.
    pub fn is_exhaustive(&self) -> bool {
        (0..self.n_vars()).all(|k| {
            self.theta.vertices().iter().any(|v| {
                v[k].is_positive() && v.iter().enumerate().all(|(j, c)| j == k || c.is_zero())
            })
        })
    }

    pub(crate) fn require_exhaustive(&self) -> Result<()> {
        if self.is_exhaustive() {
            Ok(())
        } else {
            Err(Error::NonExhaustive(
                "the weight polytope must reach every positive coordinate axis".into(),
            ))
        }
    }

    /// Relative type `σ(u, Φ)` as the containment scaling of `Θ^u` into
    /// `Θ^Φ`: the maximum of `<v, N> / h` over vertices `v` of `Θ^u` and
    /// facets `(N, h)` of `Θ^Φ` with `h > 0`. Zero-offset facets must hold
    /// `<v, N> <= 0`, otherwise no scaling works and the type is infinite.
    pub fn relative_type(&self, weight: &Indicator) -> Result<RelativeType> {
        if self.n_vars() != weight.n_vars() {
            return Err(Error::DimensionMismatch { expected: weight.n_vars(), found: self.n_vars() });
        }
        weight.require_exhaustive()?;
        let mut best = Rational::zero();
        for f in weight.theta.facets()? {
            let normal = f.normal_q();
            for v in self.theta.vertices() {
                let val = dot(v, &normal);
                if f.offset.is_zero() {
                    if val.is_positive() {
                        return Ok(RelativeType::Infinite);
                    }
                } else {
                    let ratio = val / &f.offset;
                    if ratio > best {
                        best = ratio;
                    }
                }
            }
        }
        Ok(RelativeType::Finite(best))
    }
}

#[derive(Serialize)]
struct IndicatorJson<'a> {
    kind: IndicatorKind,
    #[serde(flatten)]
    theta: &'a Polytope,
}

impl Serialize for Indicator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IndicatorJson { kind: self.kind, theta: &self.theta }.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, qvec};

    fn poly(s: &str) -> Polynomial {
        Polynomial::parse(s, 2, false).unwrap()
    }

    fn tri() -> Indicator {
        Indicator::new(Polytope::from_int_points(&[&[0, 0], &[2, 0], &[2, 2]]).unwrap()).unwrap()
    }

    fn square() -> Indicator {
        Indicator::boxed(&[int(1), int(1)]).unwrap()
    }

    fn delta() -> Indicator {
        Indicator::simplex(2, &int(1)).unwrap()
    }

    #[test]
    fn newton_examples() {
        let p = poly("z1*z2");
        let at0 = Indicator::newton_at_infinity(&p, &[int(0), int(0)]).unwrap();
        assert_eq!(at0.theta().vertices(), &[qvec(&[0, 0]), qvec(&[1, 1])]);
        let at11 = Indicator::newton_at_infinity(&p, &[int(1), int(1)]).unwrap();
        assert_eq!(at11.theta(), square().theta());
        assert_eq!(at11.kind(), IndicatorKind::Newton);

        let q = poly("z1^2 + z1^2*z2^2 + 5");
        let t = Indicator::newton_at_infinity(&q, &[int(0), int(0)]).unwrap();
        assert_eq!(t.theta(), tri().theta());
        assert_eq!(
            Indicator::newton_at_infinity(&Polynomial::zero(2), &[int(0), int(0)]),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn torus_examples() {
        assert_eq!(
            torus_polytope(&poly("z1*z2 - 1")).unwrap().vertices(),
            &[qvec(&[0, 0]), qvec(&[1, 1])]
        );
        assert_eq!(torus_polytope(&poly("z1 + z2 - 3")).unwrap(), Polytope::simplex(2));
        let l = Polynomial::parse("z1^-1 + z2", 2, true).unwrap();
        assert_eq!(torus_polytope(&l).unwrap().vertices(), &[qvec(&[-1, 0]), qvec(&[0, 1])]);
    }

    #[test]
    fn weighted_examples() {
        let seg = WeightedSupport::new(vec![(vec![1, 1], int(1))]).unwrap();
        let seg = Indicator::from_weighted_support(&seg).unwrap();
        assert_eq!(seg.theta().vertices(), &[qvec(&[0, 0]), qvec(&[1, 1])]);

        let ws = WeightedSupport::new(vec![(vec![1, 0], int(2)), (vec![1, 1], int(2))]).unwrap();
        assert_eq!(Indicator::from_weighted_support(&ws).unwrap().theta(), tri().theta());

        let zero = WeightedSupport::new(vec![(vec![0, 0], int(1))]).unwrap();
        let zero = Indicator::from_weighted_support(&zero).unwrap();
        assert_eq!(zero.theta().vertices().len(), 1);

        assert!(WeightedSupport::new(vec![(vec![1, 0], int(0))]).is_err());
        assert!(WeightedSupport::new(vec![]).is_err());
    }

    #[test]
    fn invariants_rejected() {
        let off = Polytope::from_int_points(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(Indicator::new(off), Err(Error::InvalidIndicator(_))));
        let neg = Polytope::from_int_points(&[&[0, 0], &[-1, 1]]).unwrap();
        assert!(matches!(Indicator::new(neg), Err(Error::InvalidIndicator(_))));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(tri().psi(&qvec(&[1, 1])).unwrap(), int(4));
        assert_eq!(delta().psi(&qvec(&[1, 1])).unwrap(), int(1));
        let seg = Indicator::new(Polytope::from_int_points(&[&[0, 0], &[1, 1]]).unwrap()).unwrap();
        assert_eq!(seg.psi(&qvec(&[1, -2])).unwrap(), int(0));
        assert!(seg.psi(&qvec(&[1])).is_err());
    }

    #[test]
    fn type_examples() {
        let d3 = Indicator::simplex(2, &int(3)).unwrap();
        assert_eq!(d3.directional_type(&qvec(&[1, 1])).unwrap(), int(3));
        assert_eq!(d3.sigma(), int(3));
        assert_eq!(square().partial_type(0).unwrap(), int(1));
        assert_eq!(tri().partial_type(1).unwrap(), int(2));
        assert_eq!(tri().multitype(), vec![int(2), int(2)]);
        assert_eq!(delta().directional_type(&qvec(&[1, 0])), Err(Error::NonPositiveDirection));
        assert_eq!(delta().directional_type(&[frac(1, 2), int(3)]).unwrap(), int(3));
    }

    #[test]
    fn relative_type_examples() {
        let two_delta = Indicator::simplex(2, &int(2)).unwrap();
        assert_eq!(two_delta.relative_type(&delta()).unwrap(), RelativeType::Finite(int(2)));
        assert_eq!(square().relative_type(&delta()).unwrap(), RelativeType::Finite(int(2)));
        assert_eq!(delta().relative_type(&square()).unwrap(), RelativeType::Finite(int(1)));
        assert!(matches!(delta().relative_type(&tri()), Err(Error::NonExhaustive(_))));
    }

    #[test]
    fn exhaustiveness() {
        assert!(delta().is_exhaustive());
        assert!(square().is_exhaustive());
        assert!(!tri().is_exhaustive());
        let seg = Indicator::new(Polytope::from_int_points(&[&[0, 0], &[1, 1]]).unwrap()).unwrap();
        assert!(!seg.is_exhaustive());
    }

    #[test]
    fn json_has_kind_tag() {
        let j = serde_json::to_value(delta()).unwrap();
        assert_eq!(j["kind"], "weighted");
        assert_eq!(j["dim"], 2);
        assert_eq!(j["vertices"][1], serde_json::json!([[0, 1], [1, 1]]));
    }
}
