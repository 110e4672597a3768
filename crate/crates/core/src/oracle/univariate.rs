//! Dense univariate polynomials over the rationals, and an Aberth-Ehrlich
//! simultaneous root finder in double precision.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::{int, to_f64, Rational};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(Vec<Rational>);

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Rational::zero);
                    match o.0.get(i) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.lead().unwrap().clone();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn exact_div(&self, d: &QPoly) -> QPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            Some(l) => self.scale(&(Rational::one() / l)),
            None => QPoly::zero(),
        }
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Square-free decomposition by Yun's algorithm: monic factors `f_i`,
    /// pairwise coprime and square-free, with `self = c prod f_i^i`.
    /// Returned as `(f_i, i)` for the nonconstant factors.
    pub fn square_free(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut d = df.exact_div(&a0).sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let c;
            (b, c) = (b.exact_div(&a), d.exact_div(&a));
            d = c.sub(&b.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.0.iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect()
    }
}

/// Horner evaluation of `p` and `p'` at `z`; coefficients low to high.
pub fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// All complex roots of `p` (coefficients low to high, nonzero leading
/// coefficient) by Aberth-Ehrlich iteration followed by two Newton steps.
pub fn aberth(p: &[Complex64]) -> Vec<Complex64> {
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = p[deg];
    let p: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return vec![-p[0]];
    }
    // Fujiwara-style radius for the initial circle
    let radius = (0..deg)
        .map(|i| p[i].norm().powf(1.0 / (deg - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for k in 0..deg {
            let (v, d) = horner(&p, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 =
                (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..2 {
            let (v, d) = horner(&p, *zk);
            if d.norm() > 0.0 {
                let step = v / d;
                if step.is_finite() {
                    *zk -= step;
                }
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, qvec};

    fn qp(c: &[i64]) -> QPoly {
        QPoly::new(qvec(c))
    }

    #[test]
    fn division_and_gcd() {
        // (x - 1)(x + 2) = x^2 + x - 2
        let f = qp(&[-2, 1, 1]);
        let (q, r) = f.divrem(&qp(&[-1, 1]));
        assert_eq!(q, qp(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&qp(&[2, 1]).mul(&qp(&[3, 1]))), qp(&[2, 1]));
        assert_eq!(qp(&[1, 1]).gcd(&qp(&[2, 1])), qp(&[1]));
    }

    #[test]
    fn yun_multiplicities() {
        // (x - 1)^3 (x + 2)^2 (x^2 + 1)
        let f = qp(&[-1, 1])
            .mul(&qp(&[-1, 1]))
            .mul(&qp(&[-1, 1]))
            .mul(&qp(&[2, 1]))
            .mul(&qp(&[2, 1]))
            .mul(&qp(&[1, 0, 1]))
            .scale(&frac(3, 2));
        let sf = f.square_free();
        assert_eq!(sf, vec![(qp(&[1, 0, 1]), 1), (qp(&[2, 1]), 2), (qp(&[-1, 1]), 3)]);
        assert!(qp(&[5]).square_free().is_empty());
    }

    #[test]
    fn aberth_finds_roots_of_unity_and_real_roots() {
        let p = qp(&[-1, 0, 0, 0, 0, 1]).to_complex();
        let roots = aberth(&p);
        assert_eq!(roots.len(), 5);
        for r in &roots {
            assert!((r.norm() - 1.0).abs() < 1e-12);
            assert!(horner(&p, *r).0.norm() < 1e-12);
        }
        let mut real: Vec<f64> = aberth(&qp(&[6, -5, 1]).to_complex()).iter().map(|z| z.re).collect();
        real.sort_by(f64::total_cmp);
        assert!((real[0] - 2.0).abs() < 1e-12 && (real[1] - 3.0).abs() < 1e-12);
    }
}
