//! Command-line surface for the graded-forms engine: generator expansions,
//! liftings, brackets, Hecke action, certification, the half-integral
//! coefficient maps, and the built-in verification suite.  All input and
//! output is JSON; big integers travel as decimal strings.

use clap::{Args, Parser, Subcommand};
use graded_forms::json::*;
use graded_forms::rat::Rat;
use graded_forms::{brackets, halfint, jacobilike, modforms, psido, quasipoly, selftest};
use graded_forms::{Error, QSeries};
use num::bigint::BigInt;
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "graded-forms", version, about = "Exact arithmetic for graded rings of modular, quasimodular and Jacobi-like forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generator q-expansion as JSON.
    Series {
        /// One of E2, E4, E6, Delta, Theta.
        #[arg(long)]
        form: String,
        /// Number of coefficients (falls back to GRADED_FORMS_PREC_DEFAULT).
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Lifting maps between the graded pictures.
    Lift(LiftArgs),
    /// Bracket operations on polynomials, X-series and operators.
    Bracket(BracketArgs),
    /// Hecke operators on each picture.
    Hecke(HeckeArgs),
    /// Certification of modular / quasimodular / Jacobi-like structure.
    Certify(CertifyArgs),
    /// Half-integral-to-integral coefficient map and its quasi-lifting.
    Shimura(ShimuraArgs),
    /// Integral-to-half-integral quasi-lifting.
    Shintani(ShintaniArgs),
    /// Run the built-in verification suite and report pass/fail per check.
    Selftest {
        /// Run a single check by id (1-12).
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Args)]
struct LiftArgs {
    /// One of xi, ck, xihat, canonical, transfer.
    #[arg(long)]
    kind: String,
    /// Input JSON file ("-" for stdin).
    #[arg(long = "in")]
    input: String,
    /// Weight of the input form (xi, ck, xihat).
    #[arg(long)]
    weight: Option<i64>,
    /// Polynomial depth bound m (xi) or target depth (transfer).
    #[arg(long)]
    m: Option<usize>,
    /// Offset parameter delta.
    #[arg(long, default_value_t = 0)]
    delta: i64,
    /// Half-weight parameter w (ck).
    #[arg(long)]
    w: Option<i64>,
    /// Weight parameter lambda (ck).
    #[arg(long)]
    lambda: Option<i64>,
    /// X-truncation order for X-series outputs.
    #[arg(long)]
    xtrunc: Option<usize>,
}

#[derive(Args)]
struct BracketArgs {
    /// One of lieQ, lieX, psido, rcJ, rcQP, rcQPm, heat.
    #[arg(long)]
    kind: String,
    /// First input JSON file ("-" for stdin).
    #[arg(long)]
    in1: String,
    /// Second input JSON file (unused by heat).
    #[arg(long)]
    in2: Option<String>,
    /// Bracket order n (rcJ, rcQP, rcQPm).
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Twice the first heat parameter.
    #[arg(long, default_value_t = 0)]
    mu1_twice: i64,
    /// Twice the second heat parameter.
    #[arg(long, default_value_t = 0)]
    mu2_twice: i64,
    /// First X-picture weight lambda1.
    #[arg(long, default_value_t = 0)]
    lambda1: i64,
    /// Second X-picture weight lambda2.
    #[arg(long, default_value_t = 0)]
    lambda2: i64,
    /// First offset delta1.
    #[arg(long, default_value_t = 0)]
    delta1: i64,
    /// Second offset delta2.
    #[arg(long, default_value_t = 0)]
    delta2: i64,
    /// First half-weight xi1 (lieQ, lieX).
    #[arg(long, default_value_t = 1)]
    xi1: i64,
    /// Second half-weight xi2 (lieQ, lieX).
    #[arg(long, default_value_t = 1)]
    xi2: i64,
    /// Projection depth m (rcQPm).
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// Iteration count for the heat operator.
    #[arg(long, default_value_t = 1)]
    l: usize,
}

#[derive(Args)]
struct HeckeArgs {
    /// One of modular, qp, jl.
    #[arg(long)]
    kind: String,
    /// Input JSON file ("-" for stdin).
    #[arg(long = "in")]
    input: String,
    /// Operator index (prime for qp/jl; any n >= 1 for modular).
    #[arg(long)]
    p: usize,
    /// Weight (modular kind only).
    #[arg(long)]
    weight: Option<i64>,
}

#[derive(Args)]
struct CertifyArgs {
    /// One of modular, qp, jl.
    #[arg(long)]
    kind: String,
    /// Input JSON file ("-" for stdin).
    #[arg(long = "in")]
    input: String,
    /// Weight (modular kind only).
    #[arg(long)]
    weight: Option<i64>,
}

#[derive(Args)]
struct ShimuraArgs {
    /// Input JSON file ("-" for stdin).
    #[arg(long = "in")]
    input: String,
    /// Square-free parameter t.
    #[arg(long)]
    t: i64,
    /// Integral weight k of the image (coefficient map only).
    #[arg(long)]
    k: Option<i64>,
    /// Character modulus (principal character).
    #[arg(long, default_value_t = 4)]
    modulus: i64,
    /// Output precision.
    #[arg(long)]
    prec_out: Option<usize>,
    /// Quasi-lifting source depth parameter m (with m_prime and r switches
    /// the command to the polynomial-level map).
    #[arg(long)]
    m: Option<usize>,
    /// Quasi-lifting target depth parameter m'.
    #[arg(long)]
    m_prime: Option<usize>,
    /// Quasi-lifting index r.
    #[arg(long, default_value_t = 0)]
    r: usize,
}

#[derive(Args)]
struct ShintaniArgs {
    /// Input JSON q-series file ("-" for stdin).
    #[arg(long = "in")]
    input: String,
    /// Twice the half-integral weight lambda.
    #[arg(long)]
    tw_lambda: i64,
    /// Level (divisible by 4).
    #[arg(long, default_value_t = 4)]
    level: i64,
    /// Source depth parameter m.
    #[arg(long)]
    m: usize,
    /// Target depth parameter m'.
    #[arg(long)]
    m_prime: usize,
    /// Lifting index r.
    #[arg(long, default_value_t = 0)]
    r: usize,
}

/// Failures split into precondition violations (exit 1) and malformed input
/// (exit 2), mirroring the library error kinds.
enum CliError {
    Precondition(String, String),
    Malformed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match &e {
            Error::Malformed(d) => CliError::Malformed(d.clone()),
            Error::InsufficientPrecision { .. } => {
                CliError::Precondition("insufficient_precision".into(), e.to_string())
            }
            Error::UnsupportedWeight { .. } => {
                CliError::Precondition("unsupported_weight".into(), e.to_string())
            }
            Error::Range(_) => CliError::Precondition("range".into(), e.to_string()),
            Error::Inconsistent(_) => CliError::Precondition("inconsistent".into(), e.to_string()),
        }
    }
}

type CliResult = Result<Value, CliError>;

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

fn precondition(code: &str, msg: impl Into<String>) -> CliError {
    CliError::Precondition(code.into(), msg.into())
}

fn read_json(path: &str) -> Result<Value, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| malformed(format!("cannot read stdin: {}", e)))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| malformed(format!("cannot read {}: {}", path, e)))?
    };
    serde_json::from_str(&text).map_err(|e| malformed(format!("invalid JSON: {}", e)))
}

fn default_prec(explicit: Option<usize>) -> Result<usize, CliError> {
    if let Some(p) = explicit {
        return Ok(p);
    }
    match std::env::var("GRADED_FORMS_PREC_DEFAULT") {
        Ok(s) => s
            .parse::<usize>()
            .map_err(|_| malformed("GRADED_FORMS_PREC_DEFAULT must be a nonnegative integer")),
        Err(_) => Ok(20),
    }
}

fn require<T>(v: Option<T>, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| precondition("range", format!("missing required parameter: {}", what)))
}

fn run_series(form: &str, prec: Option<usize>) -> CliResult {
    let prec = default_prec(prec)?;
    let s: QSeries = match form {
        "E2" => modforms::e2(prec),
        "E4" => modforms::e4(prec),
        "E6" => modforms::e6(prec),
        "Delta" => modforms::delta(prec)?.series,
        "Theta" => halfint::theta(prec),
        other => {
            return Err(precondition(
                "range",
                format!("unknown form {} (expected E2, E4, E6, Delta, Theta)", other),
            ))
        }
    };
    Ok(qseries_to_json(&s))
}

fn run_lift(a: &LiftArgs) -> CliResult {
    let v = read_json(&a.input)?;
    match a.kind.as_str() {
        "xi" => {
            let s = qseries_from_json(&v)?;
            let weight = require(a.weight, "--weight")?;
            let m = require(a.m, "--m")?;
            Ok(qp_to_json(&quasipoly::xi_lift_s(&s, weight, m)?))
        }
        "ck" => {
            let s = qseries_from_json(&v)?;
            let weight = require(a.weight, "--weight")?;
            let w = require(a.w, "--w")?;
            let lambda = require(a.lambda, "--lambda")?;
            let k = require(a.xtrunc, "--xtrunc")?;
            let f = modforms::ModularForm::new(weight, s);
            Ok(jl_to_json(&jacobilike::ck_lift(&f, w, lambda, a.delta, k)?))
        }
        "xihat" => {
            let s = qseries_from_json(&v)?;
            let weight = require(a.weight, "--weight")?;
            let k = require(a.xtrunc, "--xtrunc")?;
            let f = modforms::ModularForm::new(weight, s);
            Ok(jl_to_json(&jacobilike::xi_hat(&f, a.delta, k)?))
        }
        "canonical" => {
            let f = qp_from_json(&v)?;
            let k = require(a.xtrunc, "--xtrunc")?;
            Ok(jl_to_json(&jacobilike::canonical_lift(&f, a.delta, k)?))
        }
        "transfer" => {
            let f = qp_from_json(&v)?;
            let n = require(a.m, "--m")?;
            Ok(qp_to_json(&jacobilike::transfer(&f, n, a.delta)?))
        }
        other => Err(precondition(
            "range",
            format!("unknown lift kind {} (expected xi, ck, xihat, canonical, transfer)", other),
        )),
    }
}

fn half_rat(twice: i64) -> Rat {
    Rat::new(BigInt::from(twice), BigInt::from(2))
}

fn run_bracket(a: &BracketArgs) -> CliResult {
    let v1 = read_json(&a.in1)?;
    let params = brackets::BracketParams {
        n: a.n,
        mu1: half_rat(a.mu1_twice),
        mu2: half_rat(a.mu2_twice),
        lambda1: a.lambda1,
        lambda2: a.lambda2,
        delta1: a.delta1,
        delta2: a.delta2,
    };
    let second = |nm: &Option<String>| -> Result<Value, CliError> {
        read_json(require(nm.as_deref(), "--in2")?)
    };
    match a.kind.as_str() {
        "lieQ" => {
            let f1 = qp_from_json(&v1)?;
            let f2 = qp_from_json(&second(&a.in2)?)?;
            Ok(qp_to_json(&brackets::lie_bracket_q(
                &f1, &f2, a.delta1, a.delta2, a.xi1, a.xi2,
            )?))
        }
        "lieX" => {
            let f1 = jl_from_json(&v1)?;
            let f2 = jl_from_json(&second(&a.in2)?)?;
            Ok(jl_to_json(&brackets::series_lie_bracket(
                &f1, &f2, a.xi1, a.xi2,
            )?))
        }
        "psido" => {
            let p1 = psido_from_json(&v1)?;
            let p2 = psido_from_json(&second(&a.in2)?)?;
            Ok(psido_to_json(&psido::psido_bracket(&p1, &p2)))
        }
        "rcJ" => {
            let f1 = jl_from_json(&v1)?;
            let f2 = jl_from_json(&second(&a.in2)?)?;
            Ok(jl_to_json(&brackets::rc_bracket_j(
                &f1, &f2, a.n, &params.mu1, &params.mu2,
            )?))
        }
        "rcQP" => {
            let f1 = qp_from_json(&v1)?;
            let f2 = qp_from_json(&second(&a.in2)?)?;
            Ok(qp_to_json(&brackets::rc_bracket_qp(&f1, &f2, &params)?))
        }
        "rcQPm" => {
            let f1 = qp_from_json(&v1)?;
            let f2 = qp_from_json(&second(&a.in2)?)?;
            Ok(qp_to_json(&brackets::rc_bracket_qp_m(
                &f1, &f2, a.m, &params,
            )?))
        }
        "heat" => {
            let mut phi = jl_from_json(&v1)?;
            let mu = half_rat(a.mu1_twice);
            for _ in 0..a.l {
                phi = brackets::heat_apply(&phi, &mu)?;
            }
            Ok(jl_to_json(&phi))
        }
        other => Err(precondition(
            "range",
            format!(
                "unknown bracket kind {} (expected lieQ, lieX, psido, rcJ, rcQP, rcQPm, heat)",
                other
            ),
        )),
    }
}

fn run_hecke(a: &HeckeArgs) -> CliResult {
    let v = read_json(&a.input)?;
    match a.kind.as_str() {
        "modular" => {
            let s = qseries_from_json(&v)?;
            let weight = require(a.weight, "--weight")?;
            Ok(qseries_to_json(&modforms::hecke_t_n(a.p, weight, &s)?))
        }
        "qp" => {
            let f = qp_from_json(&v)?;
            Ok(qp_to_json(&quasipoly::hecke_tp(a.p, &f)?))
        }
        "jl" => {
            let f = jl_from_json(&v)?;
            Ok(jl_to_json(&jacobilike::hecke_tj(a.p, &f)?))
        }
        other => Err(precondition(
            "range",
            format!("unknown hecke kind {} (expected modular, qp, jl)", other),
        )),
    }
}

fn run_certify(a: &CertifyArgs) -> CliResult {
    let v = read_json(&a.input)?;
    let cert = match a.kind.as_str() {
        "modular" => {
            let s = qseries_from_json(&v)?;
            let weight = require(a.weight, "--weight")?;
            modforms::is_modular(&s, weight)?
        }
        "qp" => quasipoly::certify_quasimodular(&qp_from_json(&v)?)?,
        "jl" => jacobilike::jl_check(&jl_from_json(&v)?)?,
        other => {
            return Err(precondition(
                "range",
                format!("unknown certify kind {} (expected modular, qp, jl)", other),
            ))
        }
    };
    Ok(certificate_to_json(&cert))
}

fn run_shimura(a: &ShimuraArgs) -> CliResult {
    let v = read_json(&a.input)?;
    let chi = halfint::DirichletCharacter::principal(a.modulus);
    match (a.m, a.m_prime) {
        (Some(m), Some(m_prime)) => {
            let f = halfint_poly_from_json(&v)?;
            let prec_out = default_prec(a.prec_out)?;
            Ok(qp_to_json(&halfint::q_shimura(
                &f, a.t, &chi, m, m_prime, a.r, prec_out,
            )?))
        }
        (None, None) => {
            let f = halfint_from_json(&v)?;
            let k = require(a.k, "--k")?;
            let prec_out = default_prec(a.prec_out)?;
            Ok(qseries_to_json(&halfint::shimura_coeffs(
                &f.series, a.t, k, &chi, prec_out,
            )?))
        }
        _ => Err(precondition(
            "range",
            "the quasi-lifting needs both --m and --m-prime",
        )),
    }
}

fn run_shintani(a: &ShintaniArgs) -> CliResult {
    let v = read_json(&a.input)?;
    let s = qseries_from_json(&v)?;
    Ok(halfint_poly_to_json(&halfint::q_shintani(
        &s,
        a.tw_lambda,
        a.level,
        a.m,
        a.m_prime,
        a.r,
    )?))
}

fn run_selftest(only: Option<usize>) -> Result<(Value, bool), CliError> {
    let outcomes = match only {
        Some(id) => vec![selftest::run_one(id)
            .ok_or_else(|| precondition("range", format!("no check with id {}", id)))?],
        None => selftest::run_all(),
    };
    let all_passed = outcomes.iter().all(|o| o.passed);
    let report = json!({
        "passed": all_passed,
        "checks": outcomes
            .iter()
            .map(|o| {
                json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed,
                    "detail": o.detail,
                })
            })
            .collect::<Vec<_>>(),
    });
    Ok((report, all_passed))
}

fn dispatch(cli: &Cli) -> Result<(Value, bool), CliError> {
    let value = match &cli.command {
        Command::Series { form, prec } => run_series(form, *prec)?,
        Command::Lift(a) => run_lift(a)?,
        Command::Bracket(a) => run_bracket(a)?,
        Command::Hecke(a) => run_hecke(a)?,
        Command::Certify(a) => run_certify(a)?,
        Command::Shimura(a) => run_shimura(a)?,
        Command::Shintani(a) => run_shintani(a)?,
        Command::Selftest { only } => return run_selftest(*only),
    };
    Ok((value, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((value, ok)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("valid JSON"));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Precondition(code, detail)) => {
            println!("{}", json!({ "error": code, "detail": detail }));
            ExitCode::from(1)
        }
        Err(CliError::Malformed(detail)) => {
            println!("{}", json!({ "error": "malformed", "detail": detail }));
            ExitCode::from(2)
        }
    }
}
