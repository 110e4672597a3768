//! Monte-Carlo volume, torus-mean sampling of `log|P|`, and grid sampling
//! of relative types.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use super::{rng, SampleEstimate, PARTITIONS};
use crate::degree::swept_measure;
use crate::error::{Error, Result};
use crate::hull::Polytope;
use crate::indicator::Indicator;
use crate::polysys::Polynomial;
use crate::rational::{self, to_f64, Rational};

/// Sample counts per partition: `samples` split as evenly as possible.
fn partition_sizes(samples: usize) -> Vec<usize> {
    let parts = PARTITIONS as usize;
    (0..parts).map(|i| samples / parts + usize::from(i < samples % parts)).collect()
}

/// Hit-or-miss volume estimate inside the bounding box of `k`.
pub fn mc_volume(k: &Polytope, samples: usize, seed: u64) -> Result<SampleEstimate> {
    if !k.is_full_dimensional() {
        return Err(Error::LowerDimensional { dim: k.affine_dim(), ambient: k.dim() });
    }
    if samples == 0 {
        return Err(Error::Invalid("at least one sample is required".into()));
    }
    let n = k.dim();
    let lo: Vec<f64> = (0..n).map(|i| to_f64(k.vertices().iter().map(|v| &v[i]).min().unwrap())).collect();
    let hi: Vec<f64> = (0..n).map(|i| to_f64(k.vertices().iter().map(|v| &v[i]).max().unwrap())).collect();
    let planes: Vec<(Vec<f64>, f64)> = k
        .facets()?
        .iter()
        .map(|f| (f.normal_q().iter().map(to_f64).collect(), to_f64(&f.offset)))
        .collect();
    let box_vol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();

    let hits: usize = partition_sizes(samples)
        .into_par_iter()
        .enumerate()
        .map(|(part, count)| {
            let mut r = rng(seed, part as u64);
            let mut x = vec![0.0; n];
            let mut hits = 0;
            for _ in 0..count {
                for i in 0..n {
                    x[i] = lo[i] + (hi[i] - lo[i]) * r.random::<f64>();
                }
                let inside = planes.iter().all(|(a, b)| {
                    let s: f64 = a.iter().zip(&x).map(|(p, q)| p * q).sum();
                    s <= b + 1e-12 * (1.0 + b.abs())
                });
                hits += usize::from(inside);
            }
            hits
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(SampleEstimate {
        value: box_vol * p,
        stderr: box_vol * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    })
}

/// Precomputed terms `(log|c_J|, arg c_J, J)` of a polynomial.
struct LogTerms {
    terms: Vec<(f64, f64, Vec<f64>)>,
}

impl LogTerms {
    fn new(p: &Polynomial) -> LogTerms {
        let terms = p
            .terms()
            .iter()
            .map(|(e, c)| {
                let cf = to_f64(c);
                let arg = if cf < 0.0 { std::f64::consts::PI } else { 0.0 };
                (cf.abs().ln(), arg, e.iter().map(|&k| k as f64).collect())
            })
            .collect();
        LogTerms { terms }
    }

    /// `log|P(z)|` at `log|z_k| = rho_k`, `arg z_k = theta_k`. Terms are
    /// rescaled by the largest modulus and summed with compensation, so
    /// moduli like `exp(100)` do not overflow.
    fn log_abs(&self, rho: &[f64], theta: &[f64]) -> f64 {
        let logs: Vec<f64> = self
            .terms
            .iter()
            .map(|(lc, _, e)| lc + e.iter().zip(rho).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut sum = Complex64::zero();
        let mut comp = Complex64::zero();
        for ((_, arg, e), l) in self.terms.iter().zip(&logs) {
            let phase = arg + e.iter().zip(theta).map(|(a, b)| a * b).sum::<f64>();
            let term = Complex64::from_polar((l - top).exp(), phase);
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        top + sum.norm().ln()
    }
}

/// Mean of `log|P|` over the torus `{|z_k| = exp(rho_k)}`, estimated from
/// `samples` uniform angle draws; returns mean and standard error.
fn torus_mean(p: &LogTerms, rho: &[f64], samples: usize, seed: u64, stream: u64) -> (f64, f64) {
    let n = rho.len();
    // per-partition Welford accumulators, merged in partition order
    let parts: Vec<(f64, f64, f64)> = partition_sizes(samples)
        .into_par_iter()
        .enumerate()
        .map(|(part, count)| {
            let mut r = rng(seed, stream * PARTITIONS + part as u64);
            let mut theta = vec![0.0; n];
            let (mut k, mut mean, mut m2) = (0.0, 0.0, 0.0);
            while k < count as f64 {
                for t in theta.iter_mut() {
                    *t = std::f64::consts::TAU * r.random::<f64>();
                }
                let v = p.log_abs(rho, &theta);
                if !v.is_finite() {
                    continue;
                }
                k += 1.0;
                let d = v - mean;
                mean += d / k;
                m2 += d * (v - mean);
            }
            (k, mean, m2)
        })
        .collect();
    let (m, mean, m2) = parts.into_iter().fold((0.0, 0.0, 0.0), |(na, ma, sa), (nb, mb, sb)| {
        if nb == 0.0 {
            return (na, ma, sa);
        }
        let n = na + nb;
        let d = mb - ma;
        (n, ma + d * nb / n, sa + sb + d * d * na * nb / n)
    });
    let var = m2 / (m - 1.0).max(1.0);
    (mean, (var / m).sqrt())
}

/// `n! sum_atoms mass * mean(log|P|)` over the tori `{|z_k| = exp(r t_k)}`,
/// with `samples` angle draws per atom. Divided by `r` this tends to the
/// generalized degree of `log|P|` against the weight.
pub fn swept_mean_estimate(
    p: &Polynomial,
    weight: &Indicator,
    r: f64,
    samples: usize,
    seed: u64,
) -> Result<SampleEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.n_vars() != weight.n_vars() {
        return Err(Error::DimensionMismatch { expected: weight.n_vars(), found: p.n_vars() });
    }
    if !(r > 0.0) {
        return Err(Error::Invalid("radius must be positive".into()));
    }
    if samples < 2 {
        return Err(Error::Invalid("at least two samples are required".into()));
    }
    let sm = swept_measure(weight)?;
    let terms = LogTerms::new(p);
    let nf = to_f64(&rational::factorial(p.n_vars()));
    let mut value = 0.0;
    let mut var = 0.0;
    for (i, atom) in sm.atoms.iter().enumerate() {
        let rho: Vec<f64> = atom.t.iter().map(|x| r * to_f64(x)).collect();
        let (mean, se) = torus_mean(&terms, &rho, samples, seed, i as u64 + 1);
        let w = nf * to_f64(&atom.mass);
        value += w * mean;
        var += (w * se).powi(2);
    }
    Ok(SampleEstimate { value, stderr: var.sqrt(), samples, seed })
}

/// Directions on the boundary of the cube `[-1, 1]^n` with `m` lattice
/// points per edge.
fn cube_surface(n: usize, m: usize) -> Vec<Vec<Rational>> {
    let step = |i: usize| rational::frac(2 * i as i64, (m - 1) as i64) - Rational::one();
    let mut out = Vec::new();
    let total = m.pow(n as u32);
    for idx in 0..total {
        let mut rem = idx;
        let coords: Vec<usize> = (0..n)
            .map(|_| {
                let c = rem % m;
                rem /= m;
                c
            })
            .collect();
        if coords.iter().any(|&c| c == 0 || c == m - 1) {
            out.push(coords.into_iter().map(step).collect());
        }
    }
    out
}

/// Largest `psi_u(t)` over grid directions `t` rescaled to the level set
/// `psi_w(t) = 1`. Bounded by the relative type and converging to it as
/// `grid` (the approximate number of directions) grows. Infinite when some
/// direction has `psi_w(t) = 0 < psi_u(t)`.
pub fn relative_type_grid_check(u: &Indicator, weight: &Indicator, grid: usize) -> Result<f64> {
    let n = weight.n_vars();
    if u.n_vars() != n {
        return Err(Error::DimensionMismatch { expected: n, found: u.n_vars() });
    }
    weight.require_exhaustive()?;
    // 2n faces, each an (n-1)-dimensional grid with m^(n-1) points
    let per_face = (grid as f64 / (2 * n) as f64).max(1.0);
    let m = (per_face.powf(1.0 / (n.max(2) - 1) as f64).round() as usize).max(2);
    let mut best = Rational::zero();
    for t in cube_surface(n, m) {
        let pu = u.psi(&t)?;
        let pw = weight.psi(&t)?;
        if pw.is_positive() {
            let ratio = pu / pw;
            if ratio > best {
                best = ratio;
            }
        } else if pu.is_positive() {
            return Ok(f64::INFINITY);
        }
    }
    Ok(to_f64(&best))
}
