//! Command-line front end.
//!
//! All output is JSON. Object keys are emitted in sorted order and random
//! draws depend only on `--seed`, so identical invocations produce identical
//! bytes.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::askey::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::foundation::{
    derivative_samples, matrix_d, matrix_v, vector_w, NodeSet, VariableMap, DEFAULT_DISTINCT_TOL,
};
use crate::opcompile::horner;
use crate::report::VerificationReport;
use crate::sampling::{random_nodes, rng_for, NodeGuard, RandomScalar};
use crate::scalar::{parse_scalar, GaussRational, Scalar};
use crate::shift::{delta_check, delta_hat, nabla_check, nabla_hat};
use crate::spectra::{
    build_bar, verify_claim, BarDiagonal, HatMatrix, Proposition, SpectralClaim, SpectralReport,
    EIGEN_TOL,
};
use crate::zeros::{find_zeros, verify_aw_ratio_identity, verify_zero_identity};
use crate::SquareMatrix;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Float tolerance of the identity suites (relative).
pub const IDENTITY_TOL: f64 = 1e-9;
/// Tolerance of zero-grid eigen-checks.
pub const BAR_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "specmat",
    version,
    about = "Matrix representations of shift and difference operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one matrix and print it as JSON.
    Build {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Zeros of the degree-N family polynomial.
    Zeros {
        #[arg(long, default_value = "wilson")]
        family: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Claimed vs verified spectrum of one proposition.
    Spectrum {
        #[arg(long)]
        prop: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    F64,
    Exact,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Matrix order; taken from `--nodes` when those are given.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, env = "SPECMAT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
    /// Comma-separated node literals (`p/q`, decimals, `a+bi`).
    #[arg(long, allow_hyphen_values = true)]
    pub nodes: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long)]
    pub pretty: bool,
}

const DEFAULT_N: usize = 4;

/// Result of one invocation: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let run = match &cli.command {
        Command::Build { run, .. }
        | Command::Verify { run, .. }
        | Command::Zeros { run, .. }
        | Command::Spectrum { run, .. } => run.clone(),
    };
    let result = match &cli.command {
        Command::Build { op, .. } => cmd_build(op, &run).map(|v| (v, true)),
        Command::Verify { suite, .. } => cmd_verify(suite, &run),
        Command::Zeros { family, .. } => cmd_zeros(family, &run).map(|v| (v, true)),
        Command::Spectrum { prop, .. } => cmd_spectrum(prop, &run),
    };
    match result {
        Ok((value, pass)) => {
            let mut text = if run.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("json values serialize");
            text.push('\n');
            let code = if pass { EXIT_PASS } else { EXIT_FAIL };
            match &run.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome {
                        code,
                        stdout: String::new(),
                        stderr: String::new(),
                    },
                    Err(e) => {
                        Outcome::usage(format!("error: cannot write {}: {e}\n", path.display()))
                    }
                },
                None => Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                },
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Numerical failures exit with 2, everything else is a usage error.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence(_) | Error::MultipleRoot(..) | Error::BranchFailure(_) => {
            EXIT_NUMERICAL
        }
        _ => EXIT_USAGE,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse_opt<S: Scalar>(v: &Option<String>, default: &str) -> Result<S> {
    parse_scalar(v.as_deref().unwrap_or(default))
}

fn family_params<S: Scalar>(family: Family, run: &RunArgs) -> Result<FamilyParams<S>> {
    let defaults = match family {
        Family::Wilson | Family::Racah => ["1/2", "3/2", "2", "3"],
        Family::AskeyWilson => ["1/2", "7/10", "-2/5", "3/10"],
    };
    let a = parse_opt(&run.alpha, defaults[0])?;
    let b = parse_opt(&run.beta, defaults[1])?;
    let c = parse_opt(&run.gamma, defaults[2])?;
    let d = parse_opt(&run.delta, defaults[3])?;
    let p = match family {
        Family::Wilson => FamilyParams::wilson(a, b, c, d),
        Family::Racah => FamilyParams::racah(a, b, c, d),
        Family::AskeyWilson => FamilyParams::askey_wilson(a, b, c, d, parse_opt(&run.q, "3/5")?)?,
    };
    Ok(p)
}

/// Explicit nodes, or a seeded draw of `--n` nodes satisfying `guard`.
fn node_set<S: RandomScalar>(run: &RunArgs, guard: &NodeGuard<S>) -> Result<NodeSet<S>> {
    match &run.nodes {
        Some(list) => {
            let nodes = list
                .split(',')
                .map(|s| parse_scalar::<S>(s.trim()))
                .collect::<Result<Vec<_>>>()?;
            if let Some(n) = run.n {
                if n != nodes.len() {
                    return Err(usage(format!(
                        "--n {n} disagrees with {} nodes",
                        nodes.len()
                    )));
                }
            }
            NodeSet::new(nodes, VariableMap::Identity, DEFAULT_DISTINCT_TOL)
        }
        None => random_nodes(run.seed, 0, run.n.unwrap_or(DEFAULT_N), guard),
    }
}

fn order(run: &RunArgs) -> usize {
    run.n.unwrap_or(DEFAULT_N)
}

fn vec_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

// ---------------------------------------------------------------- build

fn cmd_build(op: &str, run: &RunArgs) -> Result<Value> {
    let bar = match op {
        "W-bar" => Some(Family::Wilson),
        "R-bar" => Some(Family::Racah),
        "Y-bar" => Some(Family::AskeyWilson),
        _ => None,
    };
    if let Some(family) = bar {
        let p = family_params::<Complex64>(family, run)?;
        let (m, _, _) = build_bar(&p, order(run), BarDiagonal::Derived)?;
        return Ok(m.to_json());
    }
    match run.backend {
        BackendArg::F64 => build_op::<Complex64>(op, run),
        BackendArg::Exact => build_op::<GaussRational>(op, run),
    }
}

fn hat_for<S: Scalar>(prop: Proposition, run: &RunArgs) -> Result<HatMatrix<S>> {
    Ok(match prop {
        Proposition::KHat => HatMatrix::KHat {
            a: parse_opt(&run.a, "1")?,
        },
        Proposition::FHat => HatMatrix::FHat {
            alpha: parse_opt(&run.alpha, "2")?,
            c: parse_opt(&run.c, "1")?,
        },
        Proposition::KCheck => HatMatrix::KCheck {
            q: parse_opt(&run.q, "1/2")?,
        },
        Proposition::WHat => HatMatrix::WHat(family_params(Family::Wilson, run)?),
        Proposition::RHat => HatMatrix::RHat(family_params(Family::Racah, run)?),
        Proposition::YCheck => HatMatrix::YCheck(family_params(Family::AskeyWilson, run)?),
        Proposition::WBar | Proposition::RBar | Proposition::YBar => {
            return Err(usage("zero-grid matrices have no hat form"))
        }
    })
}

fn guard_for<S: Scalar>(hat: &HatMatrix<S>) -> NodeGuard<S> {
    match hat {
        HatMatrix::KHat { .. } | HatMatrix::FHat { .. } => NodeGuard::Plain,
        HatMatrix::KCheck { .. } => NodeGuard::NonZero,
        HatMatrix::WHat(p) | HatMatrix::RHat(p) | HatMatrix::YCheck(p) => {
            NodeGuard::Family(p.clone())
        }
    }
}

fn build_op<S: RandomScalar>(op: &str, run: &RunArgs) -> Result<Value> {
    let plain = || node_set::<S>(run, &NodeGuard::Plain);
    let nonzero = || node_set::<S>(run, &NodeGuard::NonZero);
    let a = || parse_opt::<S>(&run.a, "1");
    let q = || parse_opt::<S>(&run.q, "1/2");
    let m: SquareMatrix<S> = match op {
        "delta-hat" => delta_hat(&plain()?, &a()?),
        "delta-check" => delta_check(&plain()?, &q()?),
        "nabla-hat" => nabla_hat(&plain()?, &a()?)?,
        "nabla-check" => nabla_check(&nonzero()?, &q()?)?,
        "D" => matrix_d(&plain()?),
        "V" => matrix_v(&plain()?),
        "w" => return Ok(vector_w(&plain()?).to_json()),
        other => {
            let prop =
                Proposition::parse(other).map_err(|_| usage(format!("unknown --op {other:?}")))?;
            let hat = hat_for::<S>(prop, run)?;
            let ns = node_set(run, &guard_for(&hat))?;
            hat.build(&ns)?.0
        }
    };
    Ok(m.to_json())
}

// ---------------------------------------------------------------- verify

/// One named check inside a suite.
struct Check {
    name: String,
    report: VerificationReport,
    values: Option<Value>,
}

impl Check {
    fn new(name: impl Into<String>, report: VerificationReport) -> Self {
        Self {
            name: name.into(),
            report,
            values: None,
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "pass": self.report.pass,
            "max_residual": finite_or_null(self.report.max_residual),
            "backend": self.report.backend.as_str(),
        });
        if let Some(values) = &self.values {
            v["values"] = values.clone();
        }
        v
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// `A - B` as a residual report, relative to `max(‖A‖, ‖B‖, 1)` in floats.
fn matrix_check<S: Scalar>(
    name: &str,
    lhs: &SquareMatrix<S>,
    rhs: &SquareMatrix<S>,
    tol: f64,
) -> Check {
    let scale = lhs.norm_inf().max(rhs.norm_inf()).max(1.0);
    Check::new(
        name,
        VerificationReport::from_scalars((lhs - rhs).entries(), scale, tol),
    )
}

fn vector_check<S: Scalar>(name: &str, lhs: &[S], rhs: &[S], tol: f64) -> Check {
    let diff: Vec<S> = lhs
        .iter()
        .zip(rhs)
        .map(|(x, y)| x.clone() - y.clone())
        .collect();
    let scale = lhs
        .iter()
        .chain(rhs)
        .map(Scalar::magnitude)
        .fold(1.0, f64::max);
    Check::new(name, VerificationReport::from_scalars(&diff, scale, tol))
}

/// Random nonzero scalar not equal to one, from stream `stream`.
fn random_param<S: RandomScalar>(seed: u64, stream: u64) -> S {
    let mut rng = rng_for(seed, stream);
    loop {
        let v = S::random(&mut rng);
        if !v.is_zero() && v != S::one() {
            return v;
        }
    }
}

fn suite_identities<S: RandomScalar>(run: &RunArgs) -> Result<Vec<Check>> {
    let tol = run.tol.unwrap_or(IDENTITY_TOL);
    let ns = node_set::<S>(run, &NodeGuard::NonZero)?;
    let n = ns.len();
    let a: S = match &run.a {
        Some(s) => parse_scalar(s)?,
        None => random_param(run.seed, 1),
    };
    let q: S = match &run.q {
        Some(s) => parse_scalar(s)?,
        None => random_param(run.seed, 2),
    };
    let b: S = random_param(run.seed, 3);
    let p: S = random_param(run.seed, 4);
    let mut rng = rng_for(run.seed, 5);
    let coeffs: Vec<S> = (0..n).map(|_| S::random(&mut rng)).collect();
    let f = ns.sample(|z| horner(&coeffs, z));
    let resample = |g: &dyn Fn(&S) -> S| -> Vec<S> {
        ns.nodes().iter().map(|z| horner(&coeffs, &g(z))).collect()
    };
    let d_coeffs: Vec<S> = (1..n)
        .map(|k| S::from_i64(k as i64) * coeffs[k].clone())
        .collect();

    let dh = |x: &S| delta_hat(&ns, x);
    let dc = |x: &S| delta_check(&ns, x);
    let qinv = q.recip();
    let conj = &(&dc(&qinv) * &dh(&a)) * &dc(&q);
    Ok(vec![
        vector_check(
            "delta-hat-resampling",
            dh(&a).mul_vec(&f)?.entries(),
            &resample(&|z: &S| z.clone() + a.clone()),
            tol,
        ),
        vector_check(
            "delta-check-resampling",
            dc(&q).mul_vec(&f)?.entries(),
            &resample(&|z: &S| q.clone() * z.clone()),
            tol,
        ),
        vector_check(
            "derivative-samples",
            derivative_samples(&ns, &f, 1)?.entries(),
            &ns.nodes()
                .iter()
                .map(|z| horner(&d_coeffs, z))
                .collect::<Vec<_>>(),
            tol,
        ),
        matrix_check(
            "semigroup-hat",
            &(&dh(&a) * &dh(&b)),
            &dh(&(a.clone() + b.clone())),
            tol,
        ),
        matrix_check(
            "semigroup-check",
            &(&dc(&p) * &dc(&q)),
            &dc(&(p.clone() * q.clone())),
            tol,
        ),
        matrix_check(
            "inverse-hat",
            &(&dh(&a) * &dh(&-a.clone())),
            &SquareMatrix::identity(n),
            tol,
        ),
        matrix_check("conjugation", &conj, &dh(&(q.clone() * a.clone())), tol),
        // δ̌(1/q) δ̂(a) δ̌(q) δ̂(b) = δ̂(qa) δ̂(b) = δ̂(qa + b)
        matrix_check(
            "conjugation-then-shift",
            &(&conj * &dh(&b)),
            &dh(&(q.clone() * a.clone() + b.clone())),
            tol,
        ),
    ])
}

fn suite_nilpotency<S: RandomScalar>(run: &RunArgs) -> Result<Vec<Check>> {
    let tol = run.tol.unwrap_or(IDENTITY_TOL);
    let ns = node_set::<S>(run, &NodeGuard::NonZero)?;
    let n = ns.len();
    let a: S = match &run.a {
        Some(s) => parse_scalar(s)?,
        None => random_param(run.seed, 1),
    };
    let q: S = match &run.q {
        Some(s) => parse_scalar(s)?,
        None => random_param(run.seed, 2),
    };
    let zero = SquareMatrix::zeros(n);
    let mut checks = Vec::new();
    for (name, m) in [
        ("nabla-hat", nabla_hat(&ns, &a)?),
        ("nabla-check", nabla_check(&ns, &q)?),
    ] {
        // Float powers are compared against the size of the factors.
        let scale = m.norm_inf().powi(n as i32).max(1.0);
        let pow = m.pow(n);
        checks.push(Check::new(
            format!("{name}-power-n"),
            VerificationReport::from_scalars((&pow - &zero).entries(), scale, tol),
        ));
        if S::is_exact() {
            let index_ok = n == 0 || !m.pow(n - 1).is_zero();
            let mut report = VerificationReport::from_magnitudes(vec![], tol, S::BACKEND);
            report.pass = index_ok;
            checks.push(Check::new(format!("{name}-index"), report));
        }
    }
    Ok(checks)
}

fn suite_dilation<S: RandomScalar>(run: &RunArgs) -> Result<Vec<Check>> {
    let tol = run.tol.unwrap_or(IDENTITY_TOL);
    let ns = node_set::<S>(run, &NodeGuard::Plain)?;
    let n = ns.len();
    let q: S = match &run.q {
        Some(s) => parse_scalar(s)?,
        None => random_param(run.seed, 2),
    };
    let m = delta_check(&ns, &q);
    let det = m.determinant();
    let trace = m.trace();
    let det_expected = q.powi((n * (n.saturating_sub(1)) / 2) as i64);
    let trace_expected = (0..n).fold(S::zero(), |acc, j| acc + q.powi(j as i64));
    let mut det_check = vector_check(
        "determinant",
        std::slice::from_ref(&det),
        std::slice::from_ref(&det_expected),
        tol,
    );
    det_check.values = Some(json!({"computed": det.to_json(), "expected": det_expected.to_json()}));
    let mut trace_check = vector_check(
        "trace",
        std::slice::from_ref(&trace),
        std::slice::from_ref(&trace_expected),
        tol,
    );
    trace_check.values =
        Some(json!({"computed": trace.to_json(), "expected": trace_expected.to_json()}));
    let mut checks = vec![det_check, trace_check];
    for k in 0..n {
        let v = ns.sample(|z| z.powi(k as i64));
        checks.push(vector_check(
            &format!("eigenrelation-{k}"),
            m.mul_vec(&v)?.entries(),
            v.scale(&q.powi(k as i64)).entries(),
            tol,
        ));
    }
    Ok(checks)
}

fn spectral_check(report: &SpectralReport, tol: f64) -> Check {
    let mut r =
        VerificationReport::from_magnitudes(report.eigen_residuals.clone(), tol, report.backend);
    r.pass = report.pass;
    let mut c = Check::new(format!("prop-{}", report.proposition), r);
    c.values = Some(json!({"char_poly_match": report.char_poly_match}));
    c
}

/// Matrix, claim and either the nodes or the zero set, for one proposition.
struct SpectrumRun {
    report: SpectralReport,
    eigenvalues: Vec<Value>,
    params: Value,
    grid: Value,
    extra: Vec<Check>,
}

fn run_hat<S: RandomScalar>(prop: Proposition, run: &RunArgs) -> Result<SpectrumRun> {
    let hat = hat_for::<S>(prop, run)?;
    let ns = node_set(run, &guard_for(&hat))?;
    let (m, claim): (SquareMatrix<S>, SpectralClaim<S>) = hat.build(&ns)?;
    let report = verify_claim(&m, &claim, run.tol.unwrap_or(EIGEN_TOL));
    Ok(SpectrumRun {
        eigenvalues: claim.eigenvalues.iter().map(Scalar::to_json).collect(),
        params: claim.params,
        grid: json!({"nodes": vec_json(ns.nodes())}),
        report,
        extra: vec![],
    })
}

fn run_bar(prop: Proposition, run: &RunArgs) -> Result<SpectrumRun> {
    let family = match prop {
        Proposition::WBar => Family::Wilson,
        Proposition::RBar => Family::Racah,
        _ => Family::AskeyWilson,
    };
    let p = family_params::<Complex64>(family, run)?;
    let (m, claim, zs) = build_bar(&p, order(run), BarDiagonal::Derived)?;
    let report = verify_claim(&m, &claim, run.tol.unwrap_or(BAR_TOL));
    let mut extra = vec![Check::new("zero-identity", verify_zero_identity(&zs)?)];
    if family == Family::AskeyWilson {
        extra.push(Check::new(
            "askey-wilson-ratio",
            verify_aw_ratio_identity(&zs)?,
        ));
    }
    Ok(SpectrumRun {
        eigenvalues: claim.eigenvalues.iter().map(Scalar::to_json).collect(),
        params: claim.params,
        grid: json!({"zeros": zs.to_json()}),
        report,
        extra,
    })
}

fn run_proposition(prop: Proposition, run: &RunArgs) -> Result<SpectrumRun> {
    if prop.is_bar() {
        return run_bar(prop, run);
    }
    match run.backend {
        BackendArg::F64 => run_hat::<Complex64>(prop, run),
        BackendArg::Exact => run_hat::<GaussRational>(prop, run),
    }
}

fn suite_checks(suite: &str, run: &RunArgs) -> Result<Vec<Check>> {
    let exact = run.backend == BackendArg::Exact;
    match suite {
        "identities" if exact => suite_identities::<GaussRational>(run),
        "identities" => suite_identities::<Complex64>(run),
        "nilpotency" if exact => suite_nilpotency::<GaussRational>(run),
        "nilpotency" => suite_nilpotency::<Complex64>(run),
        "appendix-b" if exact => suite_dilation::<GaussRational>(run),
        "appendix-b" => suite_dilation::<Complex64>(run),
        "all" => {
            let mut out = Vec::new();
            for s in ["identities", "nilpotency", "appendix-b"] {
                out.extend(suite_checks(s, run)?.into_iter().map(|mut c| {
                    c.name = format!("{s}/{}", c.name);
                    c
                }));
            }
            for prop in Proposition::ALL {
                let mut sub = run.clone();
                sub.nodes = None;
                let r = run_proposition(prop, &sub)?;
                let tol = sub
                    .tol
                    .unwrap_or(if prop.is_bar() { BAR_TOL } else { EIGEN_TOL });
                out.push(spectral_check(&r.report, tol));
                out.extend(r.extra.into_iter().map(|mut c| {
                    c.name = format!("prop-{}/{}", prop.id(), c.name);
                    c
                }));
            }
            Ok(out)
        }
        other => {
            let name = other.strip_prefix("prop-").map(|_| other).unwrap_or("");
            let prop =
                Proposition::parse(name).map_err(|_| usage(format!("unknown suite {other:?}")))?;
            let r = run_proposition(prop, run)?;
            let tol = run
                .tol
                .unwrap_or(if prop.is_bar() { BAR_TOL } else { EIGEN_TOL });
            let mut checks = vec![spectral_check(&r.report, tol)];
            checks.extend(r.extra);
            Ok(checks)
        }
    }
}

fn cmd_verify(suite: &str, run: &RunArgs) -> Result<(Value, bool)> {
    let checks = suite_checks(suite, run)?;
    let reports: Vec<VerificationReport> = checks.iter().map(|c| c.report.clone()).collect();
    let combined = VerificationReport::combine(&reports).ok_or_else(|| usage("empty suite"))?;
    let value = json!({
        "suite": suite,
        "n": order_of(run),
        "seed": run.seed,
        "pass": combined.pass,
        "max_residual": finite_or_null(combined.max_residual),
        "tolerance": combined.tolerance,
        "backend": combined.backend.as_str(),
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
    });
    Ok((value, combined.pass))
}

fn order_of(run: &RunArgs) -> usize {
    match &run.nodes {
        Some(list) => list.split(',').count(),
        None => order(run),
    }
}

// ---------------------------------------------------------------- zeros / spectrum

fn cmd_zeros(family: &str, run: &RunArgs) -> Result<Value> {
    let family = Family::parse(family)?;
    let p = family_params::<Complex64>(family, run)?;
    Ok(find_zeros(&p, order(run))?.to_json())
}

fn cmd_spectrum(prop: &str, run: &RunArgs) -> Result<(Value, bool)> {
    let prop =
        Proposition::parse(prop).map_err(|_| usage(format!("unknown proposition {prop:?}")))?;
    let r = run_proposition(prop, run)?;
    let rows: Vec<Value> = r
        .eigenvalues
        .iter()
        .zip(&r.report.eigen_residuals)
        .enumerate()
        .map(|(k, (value, res))| json!({"k": k, "eigenvalue": value, "residual": finite_or_null(*res)}))
        .collect();
    let pass = r.report.pass && r.extra.iter().all(|c| c.report.pass);
    let mut value = json!({
        "proposition": prop.id(),
        "matrix": prop.matrix_name(),
        "n": r.report.n,
        "backend": r.report.backend.as_str(),
        "params": r.params,
        "spectrum": rows,
        "char_poly_match": r.report.char_poly_match,
        "pass": pass,
    });
    for (k, v) in r.grid.as_object().expect("grid is an object") {
        value[k] = v.clone();
    }
    if !r.extra.is_empty() {
        value["checks"] = Value::Array(r.extra.iter().map(Check::to_json).collect());
    }
    Ok((value, pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerical_failures_exit_with_two() {
        assert_eq!(exit_code(&Error::NonConvergence(200)), EXIT_NUMERICAL);
        assert_eq!(exit_code(&Error::MultipleRoot(0, 1)), EXIT_NUMERICAL);
        assert_eq!(exit_code(&Error::BranchFailure("x".into())), EXIT_NUMERICAL);
        assert_eq!(exit_code(&Error::Usage("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::EmptyNodeSet), EXIT_USAGE);
    }
}
