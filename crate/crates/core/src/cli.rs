//! Command-line front end. Every subcommand except `sample` and `curve`
//! prints one JSON report:
//!
//! ```text
//! {"command": ..., "inputs": {...}, <result fields>, "warnings": [...]}
//! ```
//!
//! Exit status is 0 on success, 2 on a usage error and 1 on a computation
//! error, in which case stdout carries `{"error": code, "detail": message}`.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::birkhoff::{birkhoff_decompose, DEFAULT_SUPPORT_TOL};
use crate::chebgeo::{
    bounding_radius_enumerate, bounding_radius_l1, bounding_radius_linf, center_certificate, chebyshev_radius_estimate,
    chebyshev_radius_with, closed_form_radius_n3, conjecture_radius, equidistance_check, radius_bounds,
    spectrum_shift_check, RadiusMethod,
};
use crate::matcore::{io, validate_doubly_stochastic, DoublyStochastic, Exponent, Mat, DEFAULT_VALIDATION_TOL};
use crate::opnorm::{opnorm_estimate, opnorm_exact, opnorm_oracle_small, EstimateConfig, NormMethod};
use crate::sampling::{random_birkhoff_mixture, random_sinkhorn, SamplerConfig};

pub const WARN_CONJECTURED: &str = "conjectured, unproven";
pub const WARN_LOWER_BOUND: &str = "value is a lower bound";
pub const WARN_NOT_CONVERGED: &str = "power iteration did not reach tolerance; best value reported";

#[derive(Parser, Debug)]
#[command(name = "bpoly", version, about = "Operator p-norm geometry of the Birkhoff polytope")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operator p-norm of a matrix.
    Norm(NormArgs),
    /// Birkhoff decomposition of a doubly stochastic matrix.
    Decompose(DecomposeArgs),
    /// Minimal bounding-ball radius max_P ‖D − P‖_p.
    Ball(BallArgs),
    /// Chebyshev radius of the Birkhoff polytope.
    Radius(RadiusArgs),
    /// Empirical checks of the center and spectrum statements.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Random doubly stochastic matrix in the text format.
    Sample(SampleArgs),
    /// TSV table of radius against p.
    Curve(CurveArgs),
}

#[derive(Args, Debug)]
struct SeedArg {
    /// RNG seed; falls back to BP_SEED, then 0.
    #[arg(long, env = "BP_SEED")]
    seed: Option<u64>,
}

impl SeedArg {
    fn get(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[derive(Args, Debug)]
struct NormArgs {
    /// Matrix file (text or JSON format, `-` for stdin).
    #[arg(long)]
    matrix: String,
    /// Exponent: a decimal ≥ 1 or `inf`.
    #[arg(long)]
    p: Exponent,
    #[arg(long, value_enum, default_value_t = NormChoice::Auto)]
    method: NormChoice,
    /// Power-method restarts (default 8 + 2n).
    #[arg(long)]
    restarts: Option<usize>,
    /// Angular grid size for the oracle.
    #[arg(long, default_value_t = crate::opnorm::ORACLE_MIN_GRID)]
    grid: usize,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum NormChoice {
    Auto,
    Exact,
    Estimate,
    Oracle,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    matrix: String,
    /// Entries at or below this are treated as zero.
    #[arg(long, default_value_t = DEFAULT_SUPPORT_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct BallArgs {
    #[arg(long)]
    matrix: String,
    #[arg(long)]
    p: Exponent,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Args, Debug)]
struct RadiusArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Exponent,
    #[arg(long, value_enum, default_value_t = RadiusChoice::Auto)]
    method: RadiusChoice,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum RadiusChoice {
    Auto,
    Exact,
    Conjecture,
    Enumerate,
    Bounds,
    Estimate,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Is the matrix a Chebyshev center candidate?
    Center {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        p: Exponent,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// (λ − 1)·χ_{D−J}(λ) = λ·χ_D(λ).
    Spectrum {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// All permutation matrices are equidistant from J_n.
    Equidistance {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Exponent,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = SampleMethod::Sinkhorn)]
    method: SampleMethod,
    /// Number of permutations in a mixture.
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SampleMethod {
    Sinkhorn,
    Mixture,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long)]
    n: usize,
    /// `start:stop:count`, endpoints included.
    #[arg(long)]
    p_grid: PGrid,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Clone, Debug)]
struct PGrid {
    start: f64,
    stop: f64,
    count: usize,
}

impl std::str::FromStr for PGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err(format!("expected start:stop:count, got {s:?}"));
        };
        let start: f64 = a.parse().map_err(|e| format!("start {a:?}: {e}"))?;
        let stop: f64 = b.parse().map_err(|e| format!("stop {b:?}: {e}"))?;
        let count: usize = c.parse().map_err(|e| format!("count {c:?}: {e}"))?;
        if !(start > 1.0 && stop >= start && stop.is_finite()) {
            return Err("grid must satisfy 1 < start <= stop < inf".into());
        }
        if count == 0 || (count == 1 && start != stop) {
            return Err("count must be at least 2 unless start == stop".into());
        }
        Ok(PGrid { start, stop, count })
    }
}

impl PGrid {
    fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.stop
                } else {
                    self.start + k as f64 * h
                }
            })
            .collect()
    }
}

/// A failed computation: stable code plus a human-readable detail.
#[derive(Debug)]
pub struct Failure {
    pub code: String,
    pub detail: String,
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure { code: e.code().to_string(), detail: e.to_string() }
            }
        }
    )*};
}

failure_from!(
    crate::matcore::MatError,
    crate::opnorm::OpNormError,
    crate::chebgeo::ChebError,
    crate::sampling::SamplingError,
    crate::birkhoff::BirkhoffError
);

impl Failure {
    fn new(code: &str, detail: impl Into<String>) -> Self {
        Failure {
            code: code.to_string(),
            detail: detail.into(),
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

struct Report {
    command: &'static str,
    inputs: Value,
    result: Map<String, Value>,
    warnings: Vec<&'static str>,
}

impl Report {
    fn new(command: &'static str, inputs: Value, result: impl Serialize) -> Self {
        let result = match serde_json::to_value(result).expect("report payloads serialize") {
            Value::Object(m) => m,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        Report {
            command,
            inputs,
            result,
            warnings: Vec::new(),
        }
    }

    fn warn(mut self, w: &'static str) -> Self {
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
        self
    }

    fn warn_if(self, cond: bool, w: &'static str) -> Self {
        if cond {
            self.warn(w)
        } else {
            self
        }
    }

    fn into_output(self) -> Output {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::from(self.command));
        obj.insert("inputs".into(), self.inputs);
        obj.extend(self.result);
        obj.insert("warnings".into(), json!(self.warnings));
        Output::Json(Value::Object(obj))
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, err) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{v}");
            0
        }
        Ok(Output::Text(s)) => {
            let _ = write!(out, "{s}");
            0
        }
        Err(f) => {
            let _ = writeln!(out, "{}", json!({"error": f.code, "detail": f.detail}));
            1
        }
    }
}

fn execute(command: Command, err: &mut impl Write) -> Result<Output, Failure> {
    match command {
        Command::Norm(a) => norm(a),
        Command::Decompose(a) => decompose(a),
        Command::Ball(a) => ball(a),
        Command::Radius(a) => radius(a),
        Command::Verify { check } => verify(check),
        Command::Sample(a) => sample(a),
        Command::Curve(a) => curve(a, err),
    }
}

fn read_matrix(path: &str) -> Result<Mat, Failure> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|c| s = c)
    };
    res.map_err(|e| Failure::new("io", format!("{path}: {e}")))?;
    io::parse_any(&s).map_err(|e| Failure::new(e.code(), format!("{path}: {e}")))
}

fn read_stochastic(path: &str) -> Result<DoublyStochastic, Failure> {
    let m = read_matrix(path)?;
    validate_doubly_stochastic(&m, DEFAULT_VALIDATION_TOL).map_err(|e| Failure::new(e.code(), format!("{path}: {e}")))
}

fn estimate_cfg(n: usize, seed: u64, restarts: Option<usize>) -> EstimateConfig {
    let mut cfg = EstimateConfig::for_dim(n).with_seed(seed);
    if let Some(r) = restarts {
        cfg.restarts = r;
    }
    cfg
}

fn p_str(p: Exponent) -> String {
    p.to_string()
}

fn norm(a: NormArgs) -> Result<Output, Failure> {
    let m = read_matrix(&a.matrix)?;
    let seed = a.seed.get();
    let cfg = estimate_cfg(m.n(), seed, a.restarts);
    let est = match a.method {
        NormChoice::Exact => opnorm_exact(&m, a.p)?,
        NormChoice::Oracle => opnorm_oracle_small(&m, a.p, a.grid)?,
        NormChoice::Estimate => opnorm_estimate(&m, a.p, &cfg).or_else(|e| e.into_best())?,
        NormChoice::Auto if a.p.has_exact_norm() => opnorm_exact(&m, a.p)?,
        NormChoice::Auto => opnorm_estimate(&m, a.p, &cfg).or_else(|e| e.into_best())?,
    };
    let inputs = json!({
        "matrix": a.matrix, "p": p_str(a.p), "method": a.method,
        "restarts": cfg.restarts, "grid": a.grid, "seed": seed,
    });
    let lower = est.method == NormMethod::PowerLowerBound;
    let unconverged = lower && !est.converged;
    Ok(Report::new("norm", inputs, est)
        .warn_if(lower, WARN_LOWER_BOUND)
        .warn_if(unconverged, WARN_NOT_CONVERGED)
        .into_output())
}

fn decompose(a: DecomposeArgs) -> Result<Output, Failure> {
    let d = read_stochastic(&a.matrix)?;
    let dec = birkhoff_decompose(&d, a.tol)?;
    let inputs = json!({"matrix": a.matrix, "tol": a.tol});
    Ok(Report::new("decompose", inputs, dec).into_output())
}

fn ball(a: BallArgs) -> Result<Output, Failure> {
    let d = read_stochastic(&a.matrix)?;
    let seed = a.seed.get();
    let report = if a.p == Exponent::ONE {
        bounding_radius_l1(&d)
    } else if a.p.is_inf() {
        bounding_radius_linf(&d)
    } else {
        bounding_radius_enumerate(&d, a.p, &estimate_cfg(d.n(), seed, None))?
    };
    let inputs = json!({"matrix": a.matrix, "p": p_str(a.p), "seed": seed});
    Ok(Report::new("ball", inputs, report)
        .warn_if(!a.p.has_exact_norm(), WARN_LOWER_BOUND)
        .into_output())
}

fn radius(a: RadiusArgs) -> Result<Output, Failure> {
    let seed = a.seed.get();
    let cfg = estimate_cfg(a.n, seed, None);
    let inputs = json!({"n": a.n, "p": p_str(a.p), "method": a.method, "seed": seed});
    let report = match a.method {
        RadiusChoice::Auto | RadiusChoice::Exact => {
            let r = chebyshev_radius_with(a.n, a.p, &cfg)?;
            let conj = r.method == RadiusMethod::Conjecture;
            if conj && a.method == RadiusChoice::Exact {
                return Err(Failure::new(
                    "no_exact_value",
                    format!("no proven closed form for n = {} and p = {}", a.n, a.p),
                ));
            }
            Report::new("radius", inputs, r).warn_if(conj, WARN_CONJECTURED)
        }
        RadiusChoice::Conjecture => {
            let c = conjecture_radius(a.n, a.p)?;
            let (lower_bound, upper_bound) = radius_bounds(a.n, a.p)?;
            let body = json!({
                "value": c.value, "method": RadiusMethod::Conjecture, "lower_bound": lower_bound,
                "upper_bound": upper_bound, "x_p": c.x_p, "m1": c.m1, "m2": c.m2,
            });
            Report::new("radius", inputs, body).warn(WARN_CONJECTURED)
        }
        RadiusChoice::Enumerate => {
            let r = bounding_radius_enumerate(&crate::matcore::averager(a.n), a.p, &cfg)?;
            Report::new("radius", inputs, r).warn_if(!a.p.has_exact_norm(), WARN_LOWER_BOUND)
        }
        RadiusChoice::Bounds => {
            let (lower_bound, upper_bound) = radius_bounds(a.n, a.p)?;
            let body = json!({"method": "bounds", "lower_bound": lower_bound, "upper_bound": upper_bound});
            Report::new("radius", inputs, body)
        }
        RadiusChoice::Estimate => {
            let r = chebyshev_radius_estimate(a.n, a.p, &cfg)?;
            let lower = r.method == RadiusMethod::Estimate;
            Report::new("radius", inputs, r).warn_if(lower, WARN_LOWER_BOUND)
        }
    };
    Ok(report.into_output())
}

fn verify(check: VerifyCommand) -> Result<Output, Failure> {
    let report = match check {
        VerifyCommand::Center { matrix, p, tol, seed } => {
            let d = read_stochastic(&matrix)?;
            let seed = seed.get();
            let cert = center_certificate(&d, p, tol, &estimate_cfg(d.n(), seed, None))?;
            let inputs = json!({"check": "center", "matrix": matrix, "p": p_str(p), "tol": tol, "seed": seed});
            Report::new("verify", inputs, cert).warn_if(!p.has_exact_norm(), WARN_LOWER_BOUND)
        }
        VerifyCommand::Spectrum { matrix, tol } => {
            let d = read_stochastic(&matrix)?;
            let rep = spectrum_shift_check(&d, tol)?;
            let inputs = json!({"check": "spectrum", "matrix": matrix, "tol": tol});
            Report::new("verify", inputs, rep)
        }
        VerifyCommand::Equidistance { n, p, seed } => {
            let seed = seed.get();
            let rep = equidistance_check(p, n, &estimate_cfg(n, seed, None))?;
            let inputs = json!({"check": "equidistance", "n": n, "p": p_str(p), "seed": seed});
            Report::new("verify", inputs, rep).warn_if(!p.has_exact_norm(), WARN_LOWER_BOUND)
        }
    };
    Ok(report.into_output())
}

fn sample(a: SampleArgs) -> Result<Output, Failure> {
    if a.n == 0 {
        return Err(Failure::new("dimension", "n must be at least 1"));
    }
    let mut cfg = SamplerConfig::with_seed(a.seed.get());
    cfg.mixture_terms = a.k;
    let d = match a.method {
        SampleMethod::Sinkhorn => random_sinkhorn(a.n, &cfg)?,
        SampleMethod::Mixture => random_birkhoff_mixture(a.n, &cfg)?,
    };
    Ok(Output::Text(io::to_text(d.mat())))
}

fn fmt_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), io::format_f64)
}

fn curve(a: CurveArgs, err: &mut impl Write) -> Result<Output, Failure> {
    if a.n < 2 {
        return Err(Failure::new("dimension", "curve needs n >= 2"));
    }
    let cfg = estimate_cfg(a.n, a.seed.get(), None);
    let mut table = String::from("p\tclosed_form\tconjecture\tlower_estimate\n");
    for pv in a.p_grid.points() {
        let p = Exponent::new(pv)?;
        let closed = match a.n {
            2 => Some(1.0),
            3 => Some(closed_form_radius_n3(p)?),
            _ => None,
        };
        let conj = if pv == 2.0 {
            Some(1.0)
        } else {
            conjecture_radius(a.n, p).ok().map(|c| c.value)
        };
        let est = chebyshev_radius_estimate(a.n, p, &cfg)?.value;
        table.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            io::format_f64(pv),
            fmt_cell(closed),
            fmt_cell(conj),
            io::format_f64(est)
        ));
    }
    let _ = writeln!(
        err,
        "warning: conjecture column is {WARN_CONJECTURED}; lower_estimate column: {WARN_LOWER_BOUND}"
    );
    Ok(Output::Text(table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bpoly").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn radius_formula_p1() {
        let (code, out, _) = call(&["radius", "--n", "5", "--p", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], 1.6);
        assert_eq!(v["method"], "formula_p1");
        assert_eq!(v["command"], "radius");
        assert_eq!(v["warnings"], json!([]));
    }

    #[test]
    fn conjecture_carries_warning() {
        for method in ["auto", "conjecture"] {
            let (code, out, _) = call(&["radius", "--n", "5", "--p", "3", "--method", method]);
            assert_eq!(code, 0);
            let v: Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["warnings"], json!([WARN_CONJECTURED]));
        }
        let (code, out, _) = call(&["radius", "--n", "5", "--p", "3", "--method", "exact"]);
        assert_eq!(code, 1);
        assert!(out.contains("no_exact_value"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["radius", "--n", "5"]).0, 2);
        assert_eq!(call(&["radius", "--n", "5", "--p", "0.5"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["curve", "--n", "3", "--p-grid", "1:2"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_names_path() {
        let (code, out, _) = call(&["norm", "--matrix", "/nonexistent/m.txt", "--p", "2"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"], "io");
        assert!(v["detail"].as_str().unwrap().contains("/nonexistent/m.txt"));
    }

    #[test]
    fn grid_points_include_endpoints() {
        let g: PGrid = "1.1:6:50".parse().unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 50);
        assert_eq!((pts[0], pts[49]), (1.1, 6.0));
    }
}
