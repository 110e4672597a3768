//! System descriptions: command-line flags, `--spec` documents, and the
//! small text formats for points and indicators.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use newtonma::hull::Polytope;
use newtonma::indicator::Indicator;
use newtonma::json::QPair;
use newtonma::polysys::Polynomial;
use newtonma::rational::{int, parse_qvec, parse_rational, QVec, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Affine,
    Torus,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SystemArgs {
    /// Number of variables z1..zn.
    #[arg(long = "n")]
    pub n_vars: Option<usize>,
    /// Polynomial in z1..zn, e.g. "z1^2*z2 - 1/2*z1 + 3"; repeatable.
    #[arg(long = "poly", allow_hyphen_values = true)]
    pub polys: Vec<String>,
    /// Center x of the Taylor shift, e.g. "1,-1/2" (default: origin).
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Accept negative exponents (torus mode only).
    #[arg(long)]
    pub laurent: bool,
    /// Weight indicator: simplex, simplex:d, box:a,b,.., hull:p;q;.., poly:<expr>.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Mass δ(T) of the closed positive current, a rational.
    #[arg(long = "delta-t", allow_hyphen_values = true)]
    pub delta_t: Option<String>,
    /// JSON document with the same fields; flags given explicitly win.
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

/// The `--spec` document.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    n_vars: Option<usize>,
    #[serde(default)]
    polynomials: Vec<String>,
    center: Option<Vec<QPair>>,
    mode: Option<Mode>,
    laurent: Option<bool>,
    weight: Option<String>,
    #[serde(alias = "delta_T")]
    delta_t: Option<QPair>,
}

pub struct System {
    pub n: usize,
    pub polys: Vec<Polynomial>,
    pub center: QVec,
    pub mode: Mode,
    pub laurent: bool,
    pub weight: Option<String>,
    pub delta_t: Rational,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl System {
    pub fn resolve(args: &SystemArgs) -> Result<System, CliError> {
        let file = match &args.spec {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<SpecFile>(&text)
                    .map_err(|e| input(format!("invalid spec {}: {e}", path.display())))?
            }
            None => SpecFile::default(),
        };
        let n = args.n_vars.or(file.n_vars).ok_or_else(|| input("the number of variables (--n) is required"))?;
        if n == 0 {
            return Err(input("--n must be positive"));
        }
        let mode = args.mode.or(file.mode).unwrap_or(Mode::Affine);
        let laurent = args.laurent || file.laurent.unwrap_or(false);
        if laurent && mode == Mode::Affine {
            return Err(input("Laurent polynomials are only meaningful with --mode torus"));
        }
        let texts = if args.polys.is_empty() { file.polynomials } else { args.polys.clone() };
        let polys = texts
            .iter()
            .map(|t| Polynomial::parse(t, n, laurent))
            .collect::<newtonma::Result<Vec<_>>>()?;
        let center = match (&args.center, file.center) {
            (Some(c), _) => parse_qvec(c)?,
            (None, Some(c)) => c.into_iter().map(|q| q.0).collect(),
            (None, None) => vec![int(0); n],
        };
        if center.len() != n {
            return Err(input(format!("center has {} coordinates, expected {n}", center.len())));
        }
        let delta_t = match (&args.delta_t, file.delta_t) {
            (Some(d), _) => parse_rational(d)?,
            (None, Some(d)) => d.0,
            (None, None) => int(1),
        };
        if delta_t < int(0) {
            return Err(input("delta-t must be nonnegative"));
        }
        let weight = args.weight.clone().or(file.weight);
        Ok(System { n, polys, center, mode, laurent, weight, delta_t })
    }

    pub fn require_polys(&self, range: std::ops::RangeInclusive<usize>) -> Result<(), CliError> {
        if range.contains(&self.polys.len()) {
            Ok(())
        } else {
            Err(input(format!(
                "expected between {} and {} polynomials, got {}",
                range.start(),
                range.end(),
                self.polys.len()
            )))
        }
    }

    pub fn weight_indicator(&self) -> Result<Indicator, CliError> {
        parse_indicator(self.weight.as_deref().unwrap_or("simplex"), self.n)
    }

    pub fn echo(&self) -> Value {
        json!({
            "n_vars": self.n,
            "polynomials": self.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "center": self.center.iter().cloned().map(QPair).collect::<Vec<_>>(),
            "mode": self.mode,
            "laurent": self.laurent,
            "weight": self.weight.as_deref().unwrap_or("simplex"),
            "delta_t": QPair(self.delta_t.clone()),
        })
    }
}

/// `p;q;..` with comma separated rational coordinates.
pub fn parse_points(s: &str, n: Option<usize>) -> Result<Vec<QVec>, CliError> {
    let pts = s
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_qvec)
        .collect::<newtonma::Result<Vec<_>>>()?;
    if pts.is_empty() {
        return Err(input(format!("no points in {s:?}")));
    }
    if let Some(n) = n {
        if let Some(p) = pts.iter().find(|p| p.len() != n) {
            return Err(input(format!("point with {} coordinates, expected {n}", p.len())));
        }
    }
    Ok(pts)
}

/// Indicator specs: `simplex`, `simplex:d`, `box:a,b,..`, `hull:p;q;..`
/// (the origin is adjoined) and `poly:<expr>` (Newton polyhedron at
/// infinity at the origin).
pub fn parse_indicator(spec: &str, n: usize) -> Result<Indicator, CliError> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let ind = match head.trim() {
        "simplex" => {
            let d = if rest.trim().is_empty() { int(1) } else { parse_rational(rest)? };
            Indicator::simplex(n, &d)?
        }
        "box" => {
            let sides = parse_qvec(rest)?;
            if sides.len() != n {
                return Err(input(format!("box has {} sides, expected {n}", sides.len())));
            }
            Indicator::boxed(&sides)?
        }
        "hull" => {
            let mut pts = parse_points(rest, Some(n))?;
            pts.push(vec![int(0); n]);
            Indicator::new(Polytope::convex_hull(pts)?)?
        }
        "poly" => {
            let p = Polynomial::parse(rest, n, false)?;
            Indicator::newton_at_infinity(&p, &vec![int(0); n])?
        }
        _ => return Err(input(format!("unknown indicator spec {spec:?}"))),
    };
    Ok(ind)
}

/// Polytope specs: a point list `p;q;..`, or `simplex[:d]` / `box:a,b,..`.
pub fn parse_polytope(spec: &str, n: Option<usize>) -> Result<Polytope, CliError> {
    let (head, _) = spec.split_once(':').unwrap_or((spec, ""));
    match head.trim() {
        "simplex" | "box" => {
            let n = n.ok_or_else(|| input(format!("{spec:?} needs --n")))?;
            Ok(parse_indicator(spec, n)?.theta().clone())
        }
        _ => Ok(Polytope::convex_hull(parse_points(spec, n)?)?),
    }
}
