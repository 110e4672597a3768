//! Newton polyhedra, indicators and mixed Monge-Ampère mass bounds.
//!
//! Everything geometric is computed in exact rational arithmetic: supports
//! of Taylor-shifted polynomials, Newton polyhedra at infinity, facet
//! lists, volumes and mixed volumes. On top of that kernel the crate
//! evaluates a family of upper bounds for total masses of mixed
//! Monge-Ampère currents `dd^c u_1 ∧ .. ∧ dd^c u_n` and, through
//! `u_j = log|P_j|`, for zero counts of polynomial mappings:
//!
//! * Bezout-type products of logarithmic types,
//! * the directional infimum `inf_a prod_j σ(u_j, a) / prod_k a_k`,
//! * the permanent of the multitype matrix,
//! * `n!` times the mixed volume of the indicator polytopes,
//! * generalized degrees against polytopal weights via swept-out measures.
//!
//! The [`oracle`] module holds independent checks: a second mixed-volume
//! code path, Monte-Carlo volumes, an exact-resultant root counter for
//! bivariate systems, and torus-mean sampling.
//!
//! ```
//! use newtonma::{bounds, indicator::Indicator, polysys::Polynomial, rational::int};
//!
//! let p1 = Polynomial::parse("z1*z2 - 1", 2, false)?;
//! let p2 = Polynomial::parse("z1 + z2 - 3", 2, false)?;
//! let origin = [int(0), int(0)];
//! let inds = [
//!     Indicator::newton_at_infinity(&p1, &origin)?,
//!     Indicator::newton_at_infinity(&p2, &origin)?,
//! ];
//! assert_eq!(bounds::mixed_volume_bound(&inds, 2, &int(1))?, int(2));
//! # Ok::<(), newtonma::Error>(())
//! ```

pub mod bounds;
pub mod degree;
pub mod error;
pub mod hull;
pub mod indicator;
pub mod json;
pub mod oracle;
pub mod polysys;
pub mod rational;

pub use error::{Error, Result};
pub use hull::{mixed_volume, Facet, Polytope};
pub use indicator::Indicator;
pub use polysys::Polynomial;
pub use rational::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/indicators.md")]
    mod indicators {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/degrees.md")]
    mod degrees {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
