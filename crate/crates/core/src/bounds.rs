//! Upper bounds for mixed Monge-Ampère masses and zero counts.
//!
//! Every bound takes indicators `Θ_1, .., Θ_p` and a user-supplied scalar
//! `δ(T)` (the degree of the current the masses are taken against; `1` for
//! zero counting). All of them are exact rationals except the directional
//! infimum, which is a numerical minimization reported with its tolerance.
//!
//! For any admissible input the values are ordered: the mixed-volume bound
//! is below the permanent, Bezout and directional bounds.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::{mixed_volume, Polytope};
use crate::indicator::Indicator;
use crate::json::QPair;
use crate::rational::{factorial, to_f64, Rational};

/// `δ(T) σ(u_1) .. σ(u_p)`.
pub fn bezout_bound(sigmas: &[Rational], delta_t: &Rational) -> Rational {
    sigmas.iter().fold(delta_t.clone(), |acc, s| acc * s)
}

fn thetas_padded(inds: &[Indicator], n: usize) -> Result<Vec<Polytope>> {
    if inds.is_empty() {
        return Err(Error::EmptyInput);
    }
    if inds.len() > n {
        return Err(Error::TooManyIndicators { found: inds.len(), n });
    }
    if let Some(i) = inds.iter().find(|i| i.n_vars() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: i.n_vars() });
    }
    let mut ks: Vec<Polytope> = inds.iter().map(|i| i.theta().clone()).collect();
    ks.resize(n, Polytope::simplex(n));
    Ok(ks)
}

/// `δ(T) n! MV(Θ_1, .., Θ_p, Δ, .., Δ)` with `n - p` copies of the
/// standard simplex.
pub fn mixed_volume_bound(inds: &[Indicator], n: usize, delta_t: &Rational) -> Result<Rational> {
    let ks = thetas_padded(inds, n)?;
    Ok(delta_t * factorial(n) * mixed_volume(&ks)?)
}

/// Permanent by Ryser's formula,
/// `per(A) = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} a_ij`.
pub fn permanent(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for mask in 1u64..1 << n {
        let prod = m.iter().fold(Rational::one(), |acc, row| {
            let s: Rational = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| &row[j]).sum();
            acc * s
        });
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// The matrix `M_jk = σ_k(u_j)`.
pub fn multitype_matrix(inds: &[Indicator]) -> Vec<Vec<Rational>> {
    inds.iter().map(Indicator::multitype).collect()
}

/// `δ(T) n! per(σ_k(u_j))` for a full list of `n` indicators.
pub fn permanent_bound(inds: &[Indicator], delta_t: &Rational) -> Result<Rational> {
    let n = inds.first().ok_or(Error::EmptyInput)?.n_vars();
    if inds.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: inds.len() });
    }
    if let Some(i) = inds.iter().find(|i| i.n_vars() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: i.n_vars() });
    }
    Ok(delta_t * factorial(n) * permanent(&multitype_matrix(inds)))
}

/// `n! Vol(Θ)`, the Kouchnirenko number of a single indicator.
pub fn kouchnirenko_bound(ind: &Indicator, n: usize) -> Rational {
    factorial(n) * ind.theta().volume()
}

/// Result of the directional minimization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionalBound {
    /// Best value of `prod_j σ(u_j, a) / prod_k a_k` found.
    pub value: f64,
    /// Requested relative tolerance.
    pub tolerance: f64,
    /// The direction `a` attaining `value`, scaled to `max_k a_k = 1`.
    pub minimizer: Vec<f64>,
    pub iterations: usize,
    /// Set when some `Θ_j = {0}`; `value` is then 0.
    pub degenerate: bool,
}

struct FloatPolytope {
    vertices: Vec<Vec<f64>>,
}

impl FloatPolytope {
    fn new(k: &Polytope) -> Self {
        FloatPolytope { vertices: k.vertices().iter().map(|v| v.iter().map(to_f64).collect()).collect() }
    }

    /// Support value at `a` and the first vertex (lexicographic order)
    /// attaining it.
    fn support(&self, a: &[f64]) -> (f64, &[f64]) {
        let mut best = f64::NEG_INFINITY;
        let mut arg: &[f64] = &self.vertices[0];
        for v in &self.vertices {
            let val: f64 = v.iter().zip(a).map(|(x, y)| x * y).sum();
            if val > best {
                best = val;
                arg = v;
            }
        }
        (best, arg)
    }
}

/// The convex objective `f(s) = sum_j log ψ_j(exp s) - sum_k s_k`.
pub fn directional_objective(inds: &[Indicator], s: &[f64]) -> f64 {
    let polys: Vec<FloatPolytope> = inds.iter().map(|i| FloatPolytope::new(i.theta())).collect();
    objective(&polys, s).0
}

fn objective(polys: &[FloatPolytope], s: &[f64]) -> (f64, Vec<f64>) {
    let a: Vec<f64> = s.iter().map(|x| x.exp()).collect();
    let mut value = -s.iter().sum::<f64>();
    let mut grad = vec![-1.0; s.len()];
    for p in polys {
        let (psi, v) = p.support(&a);
        value += psi.ln();
        for k in 0..s.len() {
            grad[k] += v[k] * a[k] / psi;
        }
    }
    (value, grad)
}

const WINDOW: usize = 50;
const MAX_ITERATIONS: usize = 200_000;

/// `inf_{a > 0} prod_j σ(u_j, a) / (a_1 .. a_n)` by subgradient descent on
/// `f(s)` from `s = 0`, with steps `1/sqrt(k+1)` along the normalized
/// subgradient. Stops once the best value improved by less than
/// `tol (1 + |best|)` over the last 50 iterations. The value reported is
/// always an attained objective value, hence never below the infimum.
pub fn directional_bound(inds: &[Indicator], tol: f64) -> Result<DirectionalBound> {
    let n = inds.first().ok_or(Error::EmptyInput)?.n_vars();
    if inds.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: inds.len() });
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    if inds.iter().any(|i| i.theta().vertices().len() == 1) {
        return Ok(DirectionalBound {
            value: 0.0,
            tolerance: tol,
            minimizer: vec![1.0; n],
            iterations: 0,
            degenerate: true,
        });
    }
    let polys: Vec<FloatPolytope> = inds.iter().map(|i| FloatPolytope::new(i.theta())).collect();
    let mut s = vec![0.0; n];
    let (mut best, mut grad) = objective(&polys, &s);
    let mut best_s = s.clone();
    let mut window_start = best;
    let mut iterations = 0;
    for k in 0..MAX_ITERATIONS {
        iterations = k + 1;
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        let step = 1.0 / ((k + 1) as f64).sqrt();
        for (x, g) in s.iter_mut().zip(&grad) {
            *x -= step * g / norm;
        }
        // f is invariant along (1, .., 1); keep s centred
        let mean = s.iter().sum::<f64>() / n as f64;
        s.iter_mut().for_each(|x| *x -= mean);
        let (val, g) = objective(&polys, &s);
        grad = g;
        if val < best {
            best = val;
            best_s.clone_from(&s);
        }
        if (k + 1) % WINDOW == 0 {
            if window_start - best <= tol * (1.0 + best.abs()) {
                break;
            }
            window_start = best;
        }
    }
    let top = best_s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(DirectionalBound {
        value: best.exp(),
        tolerance: tol,
        minimizer: best_s.iter().map(|x| (x - top).exp()).collect(),
        iterations,
        degenerate: false,
    })
}

/// All bounds for one tuple of indicators.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub p: usize,
    pub delta_t: QPair,
    /// `δ(T) prod σ(u_j)`.
    pub bezout: QPair,
    /// `δ(T) inf_a prod_j σ(u_j, a) / prod a_k`, numerical.
    pub directional: DirectionalBound,
    /// `δ(T) n! per(σ_k(u_j))`.
    pub permanent: QPair,
    /// `δ(T) n! MV(Θ_1, .., Θ_p, Δ, .., Δ)`.
    pub mixed_volume: QPair,
    /// `δ(T) n! Vol(Θ)` when `p = n` and all indicators coincide.
    pub kouchnirenko: Option<QPair>,
    pub sigmas: Vec<QPair>,
}

impl BoundReport {
    /// Compute every bound. When `p < n` the tuple is padded with the
    /// simplex indicator for the permanent and directional bounds, matching
    /// the padding of the mixed-volume bound.
    pub fn compute(inds: &[Indicator], n: usize, delta_t: &Rational, tol: f64) -> Result<BoundReport> {
        let thetas = thetas_padded(inds, n)?;
        let padded: Vec<Indicator> =
            thetas.into_iter().map(|t| Indicator::new(t).expect("valid indicators")).collect();
        let sigmas: Vec<Rational> = inds.iter().map(Indicator::sigma).collect();

        let ((mv, per), dir) = rayon::join(
            || rayon::join(|| mixed_volume_bound(inds, n, delta_t), || permanent_bound(&padded, delta_t)),
            || directional_bound(&padded, tol),
        );
        let mut dir = dir?;
        dir.value *= to_f64(delta_t);

        let same = inds.len() == n && inds.windows(2).all(|w| w[0].theta() == w[1].theta());
        let kouchnirenko = same.then(|| QPair(delta_t * kouchnirenko_bound(&inds[0], n)));

        Ok(BoundReport {
            n,
            p: inds.len(),
            delta_t: QPair(delta_t.clone()),
            bezout: QPair(bezout_bound(&sigmas, delta_t)),
            directional: dir,
            permanent: QPair(per?),
            mixed_volume: QPair(mv?),
            kouchnirenko,
            sigmas: sigmas.into_iter().map(QPair).collect(),
        })
    }
}
