//! `newtonma`: Newton polyhedra, mixed volumes and mass bounds from the
//! command line. Reports go to standard output as JSON (default) or TSV.

mod system;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use newtonma::bounds::{bezout_bound, mixed_volume_bound, BoundReport};
use newtonma::degree::{degree_identity_check, degree_sigma_bound, generalized_degree_bound, swept_measure};
use newtonma::hull::{mixed_volume, Polytope};
use newtonma::indicator::{torus_polytope, Indicator, RelativeType};
use newtonma::json::QPair;
use newtonma::oracle::{
    count_roots_bivariate, mv_inclusion_exclusion, relative_type_grid_check, swept_mean_estimate,
};
use newtonma::rational::{factorial, int, to_f64, Rational};
use serde_json::{json, Map, Value};

use system::{parse_indicator, parse_polytope, Mode, System, SystemArgs};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Lib(newtonma::Error),
}

impl From<newtonma::Error> for CliError {
    fn from(e: newtonma::Error) -> Self {
        CliError::Lib(e)
    }
}

#[derive(Parser)]
#[command(name = "newtonma", version, about = "Newton polyhedra, mixed volumes and Monge-Ampère mass bounds")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Indicator polytopes of the given polynomials.
    Newton(SystemArgs),
    /// Mixed volume of n polytopes given as point lists.
    MixedVolume {
        /// Polytope as "x,y;x,y;..", or simplex[:d], box:a,b,..; repeat n times.
        #[arg(long = "polytope", required = true, allow_hyphen_values = true)]
        polytopes: Vec<String>,
        #[arg(long = "n")]
        n_vars: Option<usize>,
    },
    /// All bounds for a system of 1 <= p <= n polynomials.
    Bounds {
        #[command(flatten)]
        system: SystemArgs,
        /// Relative tolerance of the directional minimization.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Swept-out measure of a weight and the generalized degree bounds.
    Degree {
        /// Indicator of u (same syntax as --weight); defaults to the first --poly.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Independent checks.
    Verify {
        #[command(subcommand)]
        mode: Verify,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Mixed volume by the hull kernel and by the triangulation oracle.
    MvOracle {
        #[arg(long = "polytope", allow_hyphen_values = true)]
        polytopes: Vec<String>,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Exact-resultant zero count of a system of two bivariate polynomials.
    Roots {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Grid maximum of the relative type against its exact value.
    TypeGrid {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[command(flatten)]
        system: SystemArgs,
        /// Approximate number of grid directions.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Torus-mean estimate of the swept-out mass of log|P| at radius r.
    SweptMean {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 20.0)]
        r: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

fn pair(q: Rational) -> Value {
    serde_json::to_value(QPair(q)).expect("serializable")
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn relative(r: &RelativeType) -> Value {
    match r {
        RelativeType::Finite(q) => pair(q.clone()),
        RelativeType::Infinite => Value::String("infinite".into()),
    }
}

fn polytope_summary(k: &Polytope) -> Value {
    let mut v = to_value(k);
    let n = k.dim();
    if let Value::Object(m) = &mut v {
        m.insert("affine_dim".into(), json!(k.affine_dim()));
        m.insert("volume".into(), pair(k.volume()));
        m.insert("normalized_volume".into(), pair(factorial(n) * k.volume()));
        if let Ok(fs) = k.facets() {
            m.insert("facets".into(), to_value(&fs));
        }
    }
    v
}

fn indicator_summary(ind: &Indicator) -> Value {
    let mut v = polytope_summary(ind.theta());
    if let Value::Object(m) = &mut v {
        m.insert("kind".into(), to_value(&ind.kind()));
        m.insert("sigma".into(), pair(ind.sigma()));
        m.insert("multitype".into(), Value::Array(ind.multitype().into_iter().map(pair).collect()));
        m.insert("exhaustive".into(), json!(ind.is_exhaustive()));
    }
    v
}

fn indicators(sys: &System) -> Result<Vec<Indicator>, CliError> {
    Ok(sys
        .polys
        .iter()
        .map(|p| Indicator::newton_at_infinity(p, &sys.center))
        .collect::<newtonma::Result<Vec<_>>>()?)
}

fn newton(sys: &System) -> Result<Value, CliError> {
    sys.require_polys(1..=usize::MAX)?;
    Ok(match sys.mode {
        Mode::Affine => {
            let inds = indicators(sys)?;
            json!({ "indicators": inds.iter().map(indicator_summary).collect::<Vec<_>>() })
        }
        Mode::Torus => {
            let ks = sys.polys.iter().map(torus_polytope).collect::<newtonma::Result<Vec<_>>>()?;
            json!({ "torus_polytopes": ks.iter().map(polytope_summary).collect::<Vec<_>>() })
        }
    })
}

fn mixed(specs: &[String], n: Option<usize>) -> Result<Value, CliError> {
    let ks = specs.iter().map(|s| parse_polytope(s, n)).collect::<Result<Vec<_>, _>>()?;
    let mv = mixed_volume(&ks)?;
    let n = ks[0].dim();
    Ok(json!({
        "inputs": { "polytopes": specs },
        "polytopes": ks.iter().map(to_value).collect::<Vec<_>>(),
        "mixed_volume": pair(mv.clone()),
        "normalized_mixed_volume": pair(factorial(n) * mv),
    }))
}

fn bounds(sys: &System, tol: f64) -> Result<Value, CliError> {
    sys.require_polys(1..=sys.n)?;
    match sys.mode {
        Mode::Affine => {
            let inds = indicators(sys)?;
            let report = BoundReport::compute(&inds, sys.n, &sys.delta_t, tol)?;
            let weight = sys.weight_indicator()?;
            let degrees = inds
                .iter()
                .map(|u| generalized_degree_bound(u, &weight).map(pair))
                .collect::<newtonma::Result<Vec<_>>>()?;
            Ok(json!({
                "indicators": inds.iter().map(indicator_summary).collect::<Vec<_>>(),
                "bounds": to_value(&report),
                "generalized_degrees": degrees,
            }))
        }
        Mode::Torus => {
            sys.require_polys(sys.n..=sys.n)?;
            let ks = sys.polys.iter().map(torus_polytope).collect::<newtonma::Result<Vec<_>>>()?;
            let mv = factorial(sys.n) * mixed_volume(&ks)?;
            Ok(json!({
                "torus_polytopes": ks.iter().map(to_value).collect::<Vec<_>>(),
                "bernstein": pair(mv),
            }))
        }
    }
}

fn degree(u: Option<&str>, sys: &System) -> Result<Value, CliError> {
    let u = match (u, sys.polys.first()) {
        (Some(spec), _) => parse_indicator(spec, sys.n)?,
        (None, Some(p)) => Indicator::newton_at_infinity(p, &sys.center)?,
        (None, None) => return Err(CliError::Input("give --u or --poly".into())),
    };
    let weight = sys.weight_indicator()?;
    let gamma = swept_measure(&weight)?;
    let gdb = generalized_degree_bound(&u, &weight)?;
    let sigma_bound = degree_sigma_bound(&u, &weight)?;
    let relative_type = u.relative_type(&weight)?;
    let identity = match degree_identity_check(&u, &weight) {
        Ok(c) => json!({ "swept": pair(c.lhs), "mixed_volume": pair(c.rhs), "equal": c.equal }),
        Err(e) => json!({ "skipped": e.to_string() }),
    };
    Ok(json!({
        "u": indicator_summary(&u),
        "weight": indicator_summary(&weight),
        "swept_measure": to_value(&gamma),
        "generalized_degree_bound": pair(gdb),
        "relative_type": relative(&relative_type),
        "degree_sigma_bound": relative(&sigma_bound),
        "identity_check": identity,
    }))
}

fn verify(mode: &Verify, seed: u64) -> Result<(Value, Option<Value>), CliError> {
    match mode {
        Verify::MvOracle { polytopes, system } => {
            let ks = if polytopes.is_empty() {
                let sys = System::resolve(system)?;
                sys.require_polys(sys.n..=sys.n)?;
                let ks = indicators(&sys)?.into_iter().map(|i| i.theta().clone()).collect::<Vec<_>>();
                return mv_report(ks, Some(sys.echo()));
            } else {
                polytopes.iter().map(|s| parse_polytope(s, system.n_vars)).collect::<Result<Vec<_>, _>>()?
            };
            mv_report(ks, Some(json!({ "polytopes": polytopes })))
        }
        Verify::Roots { system, tol } => {
            let sys = System::resolve(system)?;
            if sys.n != 2 || sys.polys.len() != 2 {
                return Err(CliError::Input("roots needs --n 2 and exactly two polynomials".into()));
            }
            let (p1, p2) = (&sys.polys[0], &sys.polys[1]);
            let count = count_roots_bivariate(p1, p2, *tol, seed)?;
            let inds = indicators(&sys)?;
            let origin = vec![int(0); 2];
            let at_origin = [Indicator::newton_at_infinity(p1, &origin)?, Indicator::newton_at_infinity(p2, &origin)?];
            let bern = int(2) * mixed_volume(&[torus_polytope(p1)?, torus_polytope(p2)?])?;
            Ok((
                json!({
                    "roots": to_value(&count),
                    "mixed_volume_bound": pair(mixed_volume_bound(&at_origin, 2, &int(1))?),
                    "bernstein": pair(bern),
                    "bezout": pair(bezout_bound(&inds.iter().map(Indicator::sigma).collect::<Vec<_>>(), &int(1))),
                }),
                Some(sys.echo()),
            ))
        }
        Verify::TypeGrid { u, system, grid } => {
            let sys = System::resolve(system)?;
            let ind = parse_indicator(u, sys.n)?;
            let weight = sys.weight_indicator()?;
            let exact = ind.relative_type(&weight)?;
            let value = relative_type_grid_check(&ind, &weight, *grid)?;
            let exact_f = exact.finite().map(to_f64).unwrap_or(f64::INFINITY);
            Ok((
                json!({
                    "grid": grid,
                    "grid_maximum": if value.is_finite() { json!(value) } else { json!("infinite") },
                    "relative_type": relative(&exact),
                    "gap": if exact_f.is_finite() && value.is_finite() { json!(exact_f - value) } else { Value::Null },
                }),
                Some(json!({ "u": u, "weight": sys.weight.as_deref().unwrap_or("simplex"), "n_vars": sys.n })),
            ))
        }
        Verify::SweptMean { system, r, samples } => {
            let sys = System::resolve(system)?;
            sys.require_polys(1..=1)?;
            let p = &sys.polys[0];
            let weight = sys.weight_indicator()?;
            let est = swept_mean_estimate(p, &weight, *r, *samples, seed)?;
            let u = Indicator::newton_at_infinity(p, &vec![int(0); sys.n])?;
            let gdb = generalized_degree_bound(&u, &weight)?;
            Ok((
                json!({
                    "estimate": to_value(&est),
                    "r": r,
                    "value_over_r": est.value / r,
                    "stderr_over_r": est.stderr / r,
                    "generalized_degree_bound": pair(gdb),
                }),
                Some(sys.echo()),
            ))
        }
    }
}

fn mv_report(ks: Vec<Polytope>, inputs: Option<Value>) -> Result<(Value, Option<Value>), CliError> {
    let a = mixed_volume(&ks)?;
    let b = mv_inclusion_exclusion(&ks)?;
    Ok((
        json!({
            "hull_mixed_volume": pair(a.clone()),
            "oracle_mixed_volume": pair(b.clone()),
            "agree": a == b,
        }),
        inputs,
    ))
}

fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var("NEWTONMA_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Input(format!("NEWTONMA_SEED is not a u64: {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    let seed = seed_from_env()?;
    let (name, body, inputs) = match &cli.command {
        Command::Newton(args) => {
            let sys = System::resolve(args)?;
            ("newton", newton(&sys)?, Some(sys.echo()))
        }
        Command::MixedVolume { polytopes, n_vars } => ("mixed-volume", mixed(polytopes, *n_vars)?, None),
        Command::Bounds { system, tol } => {
            let sys = System::resolve(system)?;
            ("bounds", bounds(&sys, *tol)?, Some(sys.echo()))
        }
        Command::Degree { u, system } => {
            let sys = System::resolve(system)?;
            let mut echo = sys.echo();
            if let (Some(u), Value::Object(m)) = (u, &mut echo) {
                m.insert("u".into(), json!(u));
            }
            ("degree", degree(u.as_deref(), &sys)?, Some(echo))
        }
        Command::Verify { mode } => {
            let name = match mode {
                Verify::MvOracle { .. } => "verify mv-oracle",
                Verify::Roots { .. } => "verify roots",
                Verify::TypeGrid { .. } => "verify type-grid",
                Verify::SweptMean { .. } => "verify swept-mean",
            };
            let (body, inputs) = verify(mode, seed)?;
            (name, body, inputs)
        }
    };
    let mut report = Map::new();
    report.insert("tool".into(), json!("newtonma"));
    report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    report.insert("seed".into(), json!(seed));
    report.insert("command".into(), json!(name));
    if let Some(i) = inputs {
        report.insert("inputs".into(), i);
    }
    if let Value::Object(m) = body {
        report.extend(m);
    }
    Ok(Value::Object(report))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Tsv => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            rows.into_iter().map(|(k, x)| format!("{k}\t{x}\n")).collect()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", render(&report, cli.format));
            ExitCode::SUCCESS
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_precondition() { 3 } else { 2 })
        }
    }
}
