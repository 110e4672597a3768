//! Zero counting for bivariate polynomial systems.
//!
//! The system is first sheared, `z1 = w1 + c w2`, with `c` drawn so that
//! both polynomials get constant leading coefficients in `w2`. Then no
//! common zero escapes to infinity in the `w2` direction and the exact
//! Sylvester resultant `R(w1) = Res_{w2}(P1, P2)` has degree equal to the
//! number of affine common zeros counted with multiplicity. Its roots are
//! located numerically per square-free factor (the multiplicity of a factor
//! is exact), and back-substitution into the fibers decides which zeros lie
//! on the coordinate axes.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::rng;
use super::univariate::{aberth, QPoly};
use crate::error::{Error, Result};
use crate::json::QPair;
use crate::polysys::Polynomial;
use crate::rational::{frac, Rational};

/// Largest admissible `deg P1 * deg P2`.
pub const RESULTANT_DEGREE_CAP: usize = 64;

const SHEAR_ATTEMPTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootCount {
    /// Isolated common zeros in `C^2`, with multiplicity.
    pub affine: usize,
    /// Those with both coordinates nonzero.
    pub torus: usize,
    /// False when root clusters were too close to separate or a fiber was
    /// ambiguous.
    pub certified: bool,
    pub tol: f64,
    pub seed: u64,
    /// Shear parameter `c` of the accepted coordinate change.
    pub shear: QPair,
}

/// Coefficients in `w2`, each a polynomial in `w1`.
type Fibered = Vec<QPoly>;

fn binomial_row(a: usize) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for k in 0..a {
        let next = &row[k] * Rational::from_integer((a - k).into()) / Rational::from_integer((k + 1).into());
        row.push(next);
    }
    row
}

/// `P(w1 + c w2, w2)` grouped by powers of `w2`.
fn shear(p: &Polynomial, c: &Rational) -> Fibered {
    let d = p.total_degree().unwrap_or(0) as usize;
    let mut grid = vec![vec![Rational::zero(); d + 1]; d + 1];
    for (e, coef) in p.terms() {
        let (a, b) = (e[0] as usize, e[1] as usize);
        let binom = binomial_row(a);
        let mut cpow = Rational::one();
        for (i, bi) in binom.iter().enumerate() {
            // w1^{a-i} w2^{i+b}
            grid[i + b][a - i] += coef * bi * &cpow;
            cpow *= c;
        }
    }
    let mut out: Fibered = grid.into_iter().map(QPoly::new).collect();
    while out.last().is_some_and(QPoly::is_zero) {
        out.pop();
    }
    out
}

/// Top-degree form evaluated at `(c, 1)`.
fn top_form_at(p: &Polynomial, c: &Rational) -> Rational {
    let d = p.total_degree().unwrap_or(0);
    p.terms()
        .iter()
        .filter(|(e, _)| e[0] + e[1] == d)
        .map(|(e, coef)| coef * num_traits::pow(c.clone(), e[0] as usize))
        .sum()
}

/// Resultant in `w2` by fraction-free (Bareiss) elimination of the
/// Sylvester matrix over `Q[w1]`.
fn resultant(a: &Fibered, b: &Fibered) -> QPoly {
    let m = a.len() - 1;
    let k = b.len() - 1;
    let n = m + k;
    let mut mat = vec![vec![QPoly::zero(); n]; n];
    for i in 0..k {
        for t in 0..=m {
            mat[i][i + t] = a[m - t].clone();
        }
    }
    for i in 0..m {
        for t in 0..=k {
            mat[k + i][i + t] = b[k - t].clone();
        }
    }
    let mut prev = QPoly::constant(Rational::one());
    let mut negate = false;
    for col in 0..n.saturating_sub(1) {
        if mat[col][col].is_zero() {
            let Some(r) = (col + 1..n).find(|&r| !mat[r][col].is_zero()) else {
                return QPoly::zero();
            };
            mat.swap(col, r);
            negate = !negate;
        }
        for i in col + 1..n {
            for j in col + 1..n {
                let num = mat[col][col].mul(&mat[i][j]).sub(&mat[i][col].mul(&mat[col][j]));
                mat[i][j] = num.exact_div(&prev);
            }
            mat[i][col] = QPoly::zero();
        }
        prev = mat[col][col].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

fn eval_c(p: &QPoly, z: Complex64) -> Complex64 {
    super::univariate::horner(&p.to_complex(), z).0
}

/// Restriction of `P` to a coordinate axis: `P(0, t)` or `P(t, 0)`.
fn axis_restriction(p: &Polynomial, axis_var: usize) -> QPoly {
    let other = 1 - axis_var;
    let d = p.degree_in(other).unwrap_or(0) as usize;
    let mut c = vec![Rational::zero(); d + 1];
    for (e, coef) in p.terms() {
        if e[axis_var] == 0 {
            c[e[other] as usize] += coef;
        }
    }
    QPoly::new(c)
}

/// Whether the system has a common zero on `{z_{axis_var+1} = 0}`.
fn meets_axis(p1: &Polynomial, p2: &Polynomial, axis_var: usize) -> bool {
    let g = axis_restriction(p1, axis_var).gcd(&axis_restriction(p2, axis_var));
    g.degree() != Some(0)
}

struct Attempt {
    torus: usize,
    certified: bool,
    ambiguous: bool,
}

fn validate(p: &Polynomial) -> Result<()> {
    if p.n_vars() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.n_vars() });
    }
    if p.is_laurent() {
        return Err(Error::LaurentNotSupported);
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

pub fn count_roots_bivariate(p1: &Polynomial, p2: &Polynomial, tol: f64, seed: u64) -> Result<RootCount> {
    validate(p1)?;
    validate(p2)?;
    if !(tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    let d1 = p1.total_degree().unwrap() as usize;
    let d2 = p2.total_degree().unwrap() as usize;
    let mut out = RootCount { affine: 0, torus: 0, certified: true, tol, seed, shear: QPair(Rational::zero()) };
    if d1 == 0 || d2 == 0 {
        return Ok(out);
    }
    if d1 * d2 > RESULTANT_DEGREE_CAP {
        return Err(Error::DegreeOverflow { degree: d1 * d2, cap: RESULTANT_DEGREE_CAP });
    }

    let on_axis = [meets_axis(p1, p2, 0), meets_axis(p1, p2, 1)];
    let mut rng = rng(seed, 0);
    let mut found = false;
    for _ in 0..SHEAR_ATTEMPTS {
        let c = frac(rng.random_range(1..=60), 7);
        if top_form_at(p1, &c).is_zero() || top_form_at(p2, &c).is_zero() {
            continue;
        }
        let a = shear(p1, &c);
        let b = shear(p2, &c);
        let res = resultant(&a, &b);
        if res.is_zero() {
            return Err(Error::Degenerate(
                "the resultant vanishes identically: the curves share a component".into(),
            ));
        }
        let affine = res.degree().unwrap();
        let attempt = classify(&res, &a, &b, &c, on_axis, tol);
        out = RootCount {
            affine,
            torus: attempt.torus,
            certified: attempt.certified && !attempt.ambiguous,
            tol,
            seed,
            shear: QPair(c.clone()),
        };
        found = true;
        if !attempt.ambiguous {
            break;
        }
    }
    if !found {
        return Err(Error::Degenerate("no admissible coordinate change found".into()));
    }
    Ok(out)
}

fn classify(res: &QPoly, a: &Fibered, b: &Fibered, c: &Rational, on_axis: [bool; 2], tol: f64) -> Attempt {
    let mut roots: Vec<(Complex64, usize)> = Vec::new();
    for (factor, mult) in res.square_free() {
        for r in aberth(&factor.to_complex()) {
            roots.push((r, mult));
        }
    }
    let mut certified = true;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i].0 - roots[j].0).norm() < 10.0 * tol {
                certified = false;
            }
        }
    }
    let affine: usize = res.degree().unwrap();
    if !on_axis[0] && !on_axis[1] {
        return Attempt { torus: affine, certified, ambiguous: false };
    }

    let axis_tol = tol.sqrt();
    let cf = crate::rational::to_f64(c);
    let mut off_torus = 0;
    let mut seen_axis = [false; 2];
    let mut ambiguous = false;
    for &(xi, mult) in &roots {
        let fa: Vec<Complex64> = a.iter().map(|q| eval_c(q, xi)).collect();
        let fb: Vec<Complex64> = b.iter().map(|q| eval_c(q, xi)).collect();
        let scale_b: Vec<f64> = fb.iter().map(|z| z.norm()).collect();
        let residual = |y: Complex64| {
            let (v, _) = super::univariate::horner(&fb, y);
            let m = y.norm().max(1.0);
            let s: f64 = scale_b.iter().enumerate().map(|(j, s)| s * m.powi(j as i32)).sum();
            v.norm() / s.max(f64::MIN_POSITIVE)
        };
        let mut cands: Vec<(f64, Complex64)> = aberth(&fa).into_iter().map(|y| (residual(y), y)).collect();
        cands.sort_by(|x, y| x.0.total_cmp(&y.0));
        let Some(&(best_res, beta)) = cands.first() else {
            certified = false;
            continue;
        };
        if best_res > 1e-6 {
            certified = false;
        }
        if cands[1..]
            .iter()
            .any(|&(r, y)| r < 1e-8 && (y - beta).norm() > 1e-3 * beta.norm().max(1.0))
        {
            ambiguous = true;
        }
        let z = [xi + cf * beta, beta];
        let mut on = false;
        for k in 0..2 {
            if !on_axis[k] {
                continue;
            }
            let m = z[k].norm();
            if m <= axis_tol {
                on = true;
                seen_axis[k] = true;
            } else if m <= 100.0 * axis_tol {
                certified = false;
            }
        }
        if on {
            off_torus += mult;
        }
    }
    for k in 0..2 {
        if on_axis[k] && !seen_axis[k] {
            certified = false;
        }
    }
    Attempt { torus: affine - off_torus.min(affine), certified, ambiguous }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, 2, false).unwrap()
    }

    #[test]
    fn shear_preserves_values() {
        let q = p("z1^2*z2 - 3*z1 + z2^2 + 1");
        let c = frac(3, 7);
        let f = shear(&q, &c);
        // w = (2, 5): z = (2 + 15/7, 5)
        let w1 = int(2);
        let w2 = int(5);
        let direct = q.eval(&[&w1 + &c * &w2, w2.clone()]);
        let via: Rational = f
            .iter()
            .enumerate()
            .map(|(j, coef)| coef.eval(&w1) * num_traits::pow(w2.clone(), j))
            .sum();
        assert_eq!(direct, via);
        assert_eq!(f.len() - 1, 3);
    }

    #[test]
    fn resultant_of_lines() {
        // y - x and y + x - 2 meet at x = 1
        let a = vec![QPoly::new(vec![int(0), int(-1)]), QPoly::constant(int(1))];
        let b = vec![QPoly::new(vec![int(-2), int(1)]), QPoly::constant(int(1))];
        let r = resultant(&a, &b);
        assert_eq!(r.degree(), Some(1));
        assert!(r.eval(&int(1)).is_zero());
    }

    #[test]
    fn grid_system() {
        let r = count_roots_bivariate(&p("z1^2 - 1"), &p("z2^2 - 1"), 1e-8, 0).unwrap();
        assert_eq!((r.affine, r.torus, r.certified), (4, 4, true));
    }

    #[test]
    fn hyperbola_and_line() {
        let r = count_roots_bivariate(&p("z1*z2 - 1"), &p("z1 + z2 - 3"), 1e-8, 0).unwrap();
        assert_eq!((r.affine, r.torus, r.certified), (2, 2, true));
    }

    #[test]
    fn zeros_on_axes_and_multiplicity() {
        // z2 = z1^2 meets z2 = 0 at the origin with multiplicity 2
        let r = count_roots_bivariate(&p("z2 - z1^2"), &p("z2"), 1e-8, 0).unwrap();
        assert_eq!((r.affine, r.torus, r.certified), (2, 0, true));
        // z1 z2 = 0 and z1 + z2 = 1: (1, 0) and (0, 1)
        let r = count_roots_bivariate(&p("z1*z2"), &p("z1 + z2 - 1"), 1e-8, 0).unwrap();
        assert_eq!((r.affine, r.torus, r.certified), (2, 0, true));
        // (z1 - 1)(z2 - 2) = 0 and z1 - z2 = 0 : (1,1), (2,2)
        let r = count_roots_bivariate(&p("z1*z2 - 2*z1 - z2 + 2"), &p("z1 - z2"), 1e-8, 0).unwrap();
        assert_eq!((r.affine, r.torus), (2, 2));
    }

    #[test]
    fn zeros_at_infinity_are_not_counted() {
        // parallel lines meet only at infinity
        let r = count_roots_bivariate(&p("z1 + z2"), &p("z1 + z2 - 1"), 1e-8, 0);
        assert!(matches!(r, Ok(RootCount { affine: 0, .. })) || r.is_err());
        // z1 z2 = 1, z1 = 2: one zero, Bezout allows 2
        let r = count_roots_bivariate(&p("z1*z2 - 1"), &p("z1 - 2"), 1e-8, 0).unwrap();
        assert_eq!((r.affine, r.torus), (1, 1));
    }

    #[test]
    fn degenerate_and_overflow() {
        assert!(matches!(
            count_roots_bivariate(&p("z1*z2 - z1"), &p("z2^2 - 1"), 1e-8, 0),
            Err(Error::Degenerate(_))
        ));
        let big = p("z1^9 + z2^9 + 1");
        assert!(matches!(
            count_roots_bivariate(&big, &big, 1e-8, 0),
            Err(Error::DegreeOverflow { degree: 81, .. })
        ));
        let c = count_roots_bivariate(&p("3"), &p("z1 + z2"), 1e-8, 0).unwrap();
        assert_eq!(c.affine, 0);
    }
}
