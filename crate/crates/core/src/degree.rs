//! Swept-out measures of polytopal weights and generalized degrees.
//!
//! For an exhaustive indicator weight `Φ` with polytope `Θ^Φ`, the measure
//! `γ_1^Φ` is atomic: one atom per facet of `Θ^Φ` off the coordinate
//! hyperplanes, sitting at the facet normal scaled to `ψ_Φ(t) = 1` and
//! weighted by the volume of the pyramid over the facet with apex 0. The
//! masses add up to `Vol(Θ^Φ)`.
//!
//! The generalized degree of `dd^c u` against `Φ` is then
//! `n! sum_j ψ_u(t_j) mass_j`, which must coincide with
//! `n! MV(Θ^u, Θ^Φ, .., Θ^Φ)`; [`degree_identity_check`] compares the two.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::{mixed_volume, Polytope};
use crate::indicator::{Indicator, RelativeType};
use crate::json::{qpair_vec, QPair};
use crate::rational::{factorial, QVec, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    /// Point of the level set `{ψ_Φ = 1}`.
    pub t: QVec,
    pub mass: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweptMeasure {
    pub atoms: Vec<Atom>,
    pub total: Rational,
}

pub fn swept_measure(weight: &Indicator) -> Result<SweptMeasure> {
    weight.require_exhaustive()?;
    let theta = weight.theta();
    let n = theta.dim();
    let mut atoms = Vec::new();
    for f in theta.facets()? {
        if !f.offset.is_positive() {
            continue;
        }
        let t: QVec = f.normal_q().iter().map(|c| c / &f.offset).collect();
        let pyramid = Polytope::convex_hull(
            f.vertices
                .iter()
                .map(|&i| theta.vertices()[i].clone())
                .chain(std::iter::once(vec![Rational::zero(); n])),
        )?;
        atoms.push(Atom { t, mass: pyramid.volume() });
    }
    let total = atoms.iter().map(|a| &a.mass).sum();
    Ok(SweptMeasure { atoms, total })
}

fn check_dims(u: &Indicator, w: &Indicator) -> Result<()> {
    if u.n_vars() != w.n_vars() {
        return Err(Error::DimensionMismatch { expected: w.n_vars(), found: u.n_vars() });
    }
    Ok(())
}

/// `n! sum_atoms ψ_u(t) mass`.
pub fn generalized_degree_bound(u: &Indicator, weight: &Indicator) -> Result<Rational> {
    check_dims(u, weight)?;
    let gamma = swept_measure(weight)?;
    integrate(u, &gamma)
}

fn integrate(u: &Indicator, gamma: &SweptMeasure) -> Result<Rational> {
    let mut sum = Rational::zero();
    for a in &gamma.atoms {
        sum += u.psi(&a.t)? * &a.mass;
    }
    Ok(factorial(u.n_vars()) * sum)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Swept-measure side.
    pub lhs: Rational,
    /// `n! MV(Θ^u, Θ^Φ, .., Θ^Φ)`.
    pub rhs: Rational,
    pub equal: bool,
}

pub fn degree_identity_check(u: &Indicator, weight: &Indicator) -> Result<IdentityCheck> {
    check_dims(u, weight)?;
    let n = u.n_vars();
    if !u.theta().is_full_dimensional() {
        return Err(Error::LowerDimensional { dim: u.theta().affine_dim(), ambient: n });
    }
    let lhs = generalized_degree_bound(u, weight)?;
    let mut ks = vec![weight.theta().clone(); n];
    ks[0] = u.theta().clone();
    let rhs = factorial(n) * mixed_volume(&ks)?;
    let equal = lhs == rhs;
    Ok(IdentityCheck { lhs, rhs, equal })
}

/// `σ(u, Φ) n! Vol(Θ^Φ)`; infinite when the relative type is.
pub fn degree_sigma_bound(u: &Indicator, weight: &Indicator) -> Result<RelativeType> {
    check_dims(u, weight)?;
    Ok(match u.relative_type(weight)? {
        RelativeType::Finite(s) => {
            RelativeType::Finite(s * factorial(u.n_vars()) * weight.theta().volume())
        }
        RelativeType::Infinite => RelativeType::Infinite,
    })
}

#[derive(Serialize)]
struct AtomJson {
    t: Vec<QPair>,
    mass: QPair,
}

impl Serialize for SweptMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            atoms: Vec<AtomJson>,
            total: QPair,
        }
        Doc {
            atoms: self
                .atoms
                .iter()
                .map(|a| AtomJson { t: qpair_vec(&a.t), mass: QPair(a.mass.clone()) })
                .collect(),
            total: QPair(self.total.clone()),
        }
        .serialize(s)
    }
}
