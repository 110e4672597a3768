//! Multivariate polynomials with exact rational coefficients.
//!
//! Polynomials are sparse maps from exponent vectors to nonzero rationals in
//! the variables `z1..zn`. Besides parsing and printing, the only algebra
//! offered is the Taylor shift `P(z) -> P(x + w)`, whose support is the set
//! of multi-indices `J` with a nonvanishing derivative `d^J P(x)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// Exponent vector of a monomial. Entries may be negative only for Laurent
/// polynomials.
pub type Exponent = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    laurent: bool,
    terms: BTreeMap<Exponent, Rational>,
}

/// The set of exponents carrying a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub n_vars: usize,
    pub points: BTreeSet<Exponent>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial { n_vars, laurent: false, terms: BTreeMap::new() }
    }

    /// Build from `(exponent, coefficient)` pairs, merging repeated exponents
    /// and dropping zero coefficients.
    pub fn from_terms<I>(n_vars: usize, laurent: bool, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Polynomial { n_vars, laurent, terms: BTreeMap::new() };
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(Error::DimensionMismatch { expected: n_vars, found: e.len() });
            }
            if !laurent && e.iter().any(|&k| k < 0) {
                return Err(Error::NegativeExponent { pos: 0 });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn coeff(&self, e: &[i64]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in variable `k` (0-based).
    pub fn degree_in(&self, k: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[k]).max()
    }

    pub fn support(&self) -> Result<Support> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Support { n_vars: self.n_vars, points: self.terms.keys().cloned().collect() })
    }

    /// Returns `Q` with `Q(w) = P(x + w)`.
    ///
    /// The shift is applied one variable at a time with the quadratic
    /// synthetic-division scheme on each univariate slice.
    pub fn taylor_shift(&self, x: &[Rational]) -> Result<Polynomial> {
        if self.laurent {
            return Err(Error::LaurentNotSupported);
        }
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch { expected: self.n_vars, found: x.len() });
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut cur = self.clone();
        for (k, xk) in x.iter().enumerate() {
            if !xk.is_zero() {
                cur = cur.shift_variable(k, xk);
            }
        }
        Ok(cur)
    }

    fn shift_variable(&self, k: usize, xk: &Rational) -> Polynomial {
        // group by the exponent with slot k cleared
        let mut slices: BTreeMap<Exponent, Vec<Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let d = rest[k] as usize;
            rest[k] = 0;
            let coeffs = slices.entry(rest).or_default();
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] = c.clone();
        }
        let mut out = Polynomial::zero(self.n_vars);
        out.laurent = self.laurent;
        for (rest, mut a) in slices {
            let deg = a.len() - 1;
            for i in 0..deg {
                for j in (i..deg).rev() {
                    let t = &a[j + 1] * xk;
                    a[j] += t;
                }
            }
            for (d, c) in a.into_iter().enumerate() {
                if !c.is_zero() {
                    let mut e = rest.clone();
                    e[k] = d as i64;
                    out.terms.insert(e, c);
                }
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| {
                    if k >= 0 {
                        acc * num_traits::pow(xi.clone(), k as usize)
                    } else {
                        acc / num_traits::pow(xi.clone(), (-k) as usize)
                    }
                })
            })
            .sum()
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_complex(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(z)
                    .fold(Complex64::new(to_f64(c), 0.0), |acc, (&k, zi)| acc * zi.powi(k as i32))
            })
            .sum()
    }

    /// Parse the ASCII grammar
    /// `expr := term (('+'|'-') term)*`,
    /// `term := [sign] [coeff '*'] factor ('*' factor)*` or a bare coefficient,
    /// `factor := 'z' index ['^' integer]`.
    pub fn parse(text: &str, n_vars: usize, laurent: bool) -> Result<Polynomial> {
        Parser { src: text.as_bytes(), pos: 0, n_vars, laurent }.expression()
    }
}

/// Graded-lexicographic order: total degree first, then lexicographic.
pub fn grlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing graded-lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| if k == 1 { format!("z{}", v + 1) } else { format!("z{}^{}", v + 1, k) })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
    laurent: bool,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn expression(&mut self) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(self.n_vars);
        poly.laurent = self.laurent;
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return self.err("empty expression"),
            _ => 1,
        };
        loop {
            let (e, c) = self.term()?;
            poly.add_term(e, if sign < 0 { -c } else { c });
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(ch) => return self.err(format!("unexpected character {:?}", ch as char)),
            }
            self.pos += 1;
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Exponent, Rational)> {
        let mut exps = vec![0i64; self.n_vars];
        let mut coeff = Rational::one();
        match self.peek() {
            Some(ch) if ch.is_ascii_digit() => {
                coeff = self.coefficient()?;
                if self.peek() != Some(b'*') {
                    return Ok((exps, coeff));
                }
                self.pos += 1;
            }
            Some(b'z') => {}
            Some(ch) => return self.err(format!("expected a term, found {:?}", ch as char)),
            None => return self.err("expected a term"),
        }
        loop {
            self.factor(&mut exps)?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((exps, coeff))
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let num = self.unsigned()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.unsigned()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn unsigned(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn factor(&mut self, exps: &mut [i64]) -> Result<()> {
        if self.peek() != Some(b'z') {
            return self.err("expected a variable z<index>");
        }
        let var_pos = self.pos;
        self.pos += 1;
        let idx = self.unsigned()?;
        let idx: usize = idx.try_into().unwrap_or(usize::MAX);
        if idx == 0 || idx > self.n_vars {
            return Err(Error::VariableOutOfRange { index: idx, n_vars: self.n_vars, pos: var_pos });
        }
        let mut power = 1i64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let exp_pos = self.pos;
            let k = self.unsigned()?;
            let k: i64 = match i64::try_from(k) {
                Ok(k) => k,
                Err(_) => return self.err("exponent too large"),
            };
            power = if neg { -k } else { k };
            if power < 0 && !self.laurent {
                return Err(Error::NegativeExponent { pos: exp_pos });
            }
        }
        exps[idx - 1] += power;
        Ok(())
    }
}
