//! Command pipelines behind the `catmap` binary.
//!
//! [`run`] executes one [`RunConfig`], writes one report per `(g, N)` (or one
//! CSV table per run) and maps the outcome to an exit status:
//! 0 success, 2 invalid input, 3 theta-parity violation under
//! `strict_theta`, 4 numerical contract violation.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::heisenberg::{heisenberg_multiply, projective_rep_check, HeisenbergElement};
use crate::metaplectic::{quantize, quantize_s, quantize_with, Construction};
use crate::operator::{phase_aligned_distance, CMatrix};
use crate::report::{csv_float, to_json_string, write_csv, CheckReport};
use crate::spectral::{
    eig_unitary, equidistribution_from_phases, period_relation, quantum_period, quantum_period_by_iteration,
    spectral_report, MatrixElements, OffDiagonalSum, PeriodRelation, DEFAULT_QUANTUM_PERIOD_CAP,
};
use crate::symplectic::{
    arithmetic_period, coset_representatives, generator_decomposition, lifted_period, theta_group_member, Generator, IntMatrix,
    IntegerSymplecticMatrix, Word, DEFAULT_PERIOD_CAP,
};
use crate::theta::{
    bridge_deviation, gaussian_overlap, normalized_cross_gram, projector_composition_factor, theta_gram,
    transformation_law_residual, UpperHalfPlanePoint, DEFAULT_GRID,
};
use crate::trace::{compare_with, gauss_sum, TraceFormula};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARITY: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

/// Pipelines selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Quantize,
    Trace,
    Spectrum,
    Ergodic,
    ThetaCheck,
    PeriodScan,
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Quantize => "quantize",
            Command::Trace => "trace",
            Command::Spectrum => "spectrum",
            Command::Ergodic => "ergodic",
            Command::ThetaCheck => "theta-check",
            Command::PeriodScan => "period-scan",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

/// Named tolerances with their defaults.
pub fn default_tolerances() -> BTreeMap<String, f64> {
    [
        ("unitarity", 1e-10),
        ("egorov", 1e-10),
        ("construction_paths", 1e-8),
        ("trace_magnitude", 1e-8),
        ("trace_phase", 1e-8),
        ("gauss_sum", 1e-12),
        ("projective_rep", 1e-12),
        ("eigen_residual", 1e-8),
        ("fourier_spectrum", 1e-8),
        ("parseval", 1e-10),
        ("completeness", 1e-10),
        ("period", 1e-8),
        ("theta", 1e-6),
        ("transformation_law", 1e-8),
        ("bridge", 1e-6),
        ("equidistribution", 1e-8),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

/// Everything [`run`] needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    /// Row-major `a, b, c, d`; validated by [`run`].
    pub g: Option<[i64; 4]>,
    pub moduli: Vec<u64>,
    pub observable: [i64; 2],
    pub tolerances: BTreeMap<String, f64>,
    pub output: PathBuf,
    pub format: Format,
    pub strict_theta: bool,
    pub level: Level,
    pub construction: Option<Construction>,
    pub k_max: usize,
    pub seed: u64,
    pub conventions: Conventions,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            g: None,
            moduli: Vec::new(),
            observable: [1, 0],
            tolerances: default_tolerances(),
            output: PathBuf::from("."),
            format: Format::Json,
            strict_theta: false,
            level: Level::Quick,
            construction: None,
            k_max: 4,
            seed: 20240601,
            conventions: Conventions::default(),
        }
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances
            .get(name)
            .copied()
            .or_else(|| default_tolerances().get(name).copied())
            .unwrap_or(1e-8)
    }

    pub fn validate(&self) -> Result<()> {
        if self.moduli.iter().any(|&n| n == 0) {
            return Err(Error::InvalidParameter("N must be at least 1".into()));
        }
        if self.moduli.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("N grid must be strictly increasing".into()));
        }
        if let Some((name, value)) = self.tolerances.iter().find(|(_, v)| !(**v > 0.0)) {
            return Err(Error::InvalidParameter(format!("tolerance {name} = {value} is not positive")));
        }
        if self.command != Command::VerifyAll && self.command != Command::ThetaCheck && self.moduli.is_empty() {
            return Err(Error::InvalidParameter("no N given".into()));
        }
        Ok(())
    }
}

/// Parse `"a,b,c,d"`.
pub fn parse_matrix(text: &str) -> Result<[i64; 4]> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidParameter(format!("matrix {text:?}: {e}")))?;
    parts
        .try_into()
        .map_err(|_| Error::InvalidParameter(format!("matrix {text:?} must have four entries")))
}

/// Parse `"lo..hi"` (inclusive), `"a,b,c"` or a single integer.
pub fn parse_moduli(text: &str) -> Result<Vec<u64>> {
    let bad = |e: &dyn std::fmt::Display| Error::InvalidParameter(format!("N grid {text:?}: {e}"));
    let grid: Vec<u64> = if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|e| bad(&e))?;
        let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|e| bad(&e))?;
        (lo..=hi).collect()
    } else {
        text.split(',').map(|p| p.trim().parse::<u64>()).collect::<std::result::Result<_, _>>().map_err(|e| bad(&e))?
    };
    if grid.is_empty() {
        return Err(bad(&"empty"));
    }
    if grid.iter().any(|&n| n == 0) {
        return Err(bad(&"N must be at least 1"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad(&"grid must be strictly increasing"));
    }
    Ok(grid)
}

/// Parse `"m,n"`.
pub fn parse_observable(text: &str) -> Result<[i64; 2]> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::InvalidParameter(format!("observable {text:?}: {e}")))?;
    parts
        .try_into()
        .map_err(|_| Error::InvalidParameter(format!("observable {text:?} must have two entries")))
}

/// Parse `"name=value"`.
pub fn parse_tolerance(text: &str) -> Result<(String, f64)> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| Error::InvalidParameter(format!("tolerance {text:?} must be name=value")))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|e| Error::InvalidParameter(format!("tolerance {text:?}: {e}")))?;
    Ok((name.trim().to_string(), value))
}

/// Exit status, files written and diagnostic lines.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub files: Vec<PathBuf>,
    pub messages: Vec<String>,
}

pub fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::Dimension { .. }
        | Error::NotSymplectic
        | Error::Degenerate(_)
        | Error::InvalidParameter(_)
        | Error::NotApplicable { .. }
        | Error::ModulusMismatch { .. } => EXIT_INVALID,
        Error::Parity(_) => EXIT_PARITY,
        Error::Numerical { .. }
        | Error::EigenResidual { .. }
        | Error::IllConditioned(_)
        | Error::PeriodNotFound { .. }
        | Error::Overflow(_) => EXIT_NUMERICAL,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_FAILURE,
    }
}

/// Run `f` on a pool capped by `CATMAP_THREADS` when that variable is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var("CATMAP_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Execute one configuration.
pub fn run(config: &RunConfig) -> RunOutcome {
    with_thread_cap(|| match run_inner(config) {
        Ok(outcome) => outcome,
        Err(e) => RunOutcome { exit_code: exit_code_for(&e), files: Vec::new(), messages: vec![e.to_string()] },
    })
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize, X: Serialize> {
    command: &'a str,
    #[serde(flatten)]
    report: &'a T,
    #[serde(flatten)]
    extra: &'a X,
    checks: &'a [CheckReport],
    conventions: &'a Conventions,
}

#[derive(Serialize)]
struct NoExtra {}

struct JobOutput {
    json: String,
    row: Vec<String>,
    checks: Vec<CheckReport>,
}

fn matrix_label(g: &IntegerSymplecticMatrix) -> String {
    g.matrix().as_slice().iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")
}

fn json_params(value: serde_json::Value) -> serde_json::Value {
    value
}

fn run_inner(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let g = match config.g {
        Some([a, b, c, d]) => Some(IntegerSymplecticMatrix::sl2(a, b, c, d)?),
        None => None,
    };
    let conv = config.conventions.clone().calibrate()?;
    std::fs::create_dir_all(&config.output)?;

    if config.command == Command::VerifyAll {
        return run_verify_all(config, g.as_ref(), &conv);
    }

    let g = g.unwrap_or_else(|| match config.command {
        Command::ThetaCheck => IntegerSymplecticMatrix::s(),
        _ => IntegerSymplecticMatrix::cat(),
    });
    let moduli = if config.moduli.is_empty() { vec![1, 2, 3, 4] } else { config.moduli.clone() };

    let mut messages = Vec::new();
    for &n in &moduli {
        if !theta_group_member(&g, n) {
            let msg = format!("warning: {g} is outside the theta group for N = {n}");
            if config.strict_theta {
                return Err(Error::Parity(msg));
            }
            messages.push(msg);
        }
    }

    let header: Vec<String> = match config.command {
        Command::Quantize => vec!["N", "construction", "unitarity_residual", "egorov_residual", "theta_group"],
        Command::Trace => vec!["N", "formula_re", "formula_im", "direct_re", "direct_im", "phase_ratio_re", "phase_ratio_im", "magnitude_error"],
        Command::Spectrum => vec!["N", "distinct_eigenvalues", "quantum_period", "max_eigen_residual", "star_discrepancy", "weyl_sum_1"],
        Command::Ergodic => vec!["N", "diagonal_variance", "ep_pairs", "mp_pairs", "parseval"],
        Command::ThetaCheck => vec!["N", "checks", "failed", "max_residual"],
        Command::PeriodScan => vec!["N", "arithmetic_period", "lifted_period", "quantum_period", "relation", "scalar_phase_re", "scalar_phase_im"],
        Command::VerifyAll => unreachable!("handled above"),
    }
    .into_iter()
    .map(String::from)
    .collect();

    let trace_formula = if config.command == Command::Trace { Some(TraceFormula::new(&g)?) } else { None };

    let results: Vec<Result<JobOutput>> = moduli
        .par_iter()
        .map(|&n| match config.command {
            Command::Quantize => job_quantize(config, &conv, &g, n),
            Command::Trace => job_trace(config, &conv, &g, n, trace_formula.as_ref().expect("built above")),
            Command::Spectrum => job_spectrum(config, &conv, &g, n),
            Command::Ergodic => job_ergodic(config, &conv, &g, n),
            Command::ThetaCheck => job_theta(config, &conv, &g, n),
            Command::PeriodScan => job_period(config, &conv, &g, n),
            Command::VerifyAll => unreachable!("handled above"),
        })
        .collect();

    let label = matrix_label(&g);
    let mut files = Vec::new();
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for (&n, result) in moduli.iter().zip(results) {
        let job = result?;
        for c in job.checks.iter().filter(|c| !c.pass) {
            failed.push(format!("N = {n}: {} residual {:e} > {:e}", c.check, c.residual, c.tolerance));
        }
        if config.format == Format::Json {
            let path = config.output.join(format!("{}_g{label}_N{n}.json", config.command.name()));
            std::fs::write(&path, job.json)?;
            files.push(path);
        }
        rows.push(job.row);
    }
    if config.format == Format::Csv {
        let path = config.output.join(format!("{}_g{label}.csv", config.command.name()));
        write_csv(&path, &header, &rows)?;
        files.push(path);
    }
    let exit_code = if failed.is_empty() { EXIT_OK } else { EXIT_NUMERICAL };
    messages.extend(failed);
    Ok(RunOutcome { exit_code, files, messages })
}

fn envelope_json<T: Serialize, X: Serialize>(
    command: Command,
    report: &T,
    extra: &X,
    checks: &[CheckReport],
    conv: &Conventions,
) -> Result<String> {
    to_json_string(&Envelope { command: command.name(), report, extra, checks, conventions: conv })
}

fn job_quantize(config: &RunConfig, conv: &Conventions, g: &IntegerSymplecticMatrix, n: u64) -> Result<JobOutput> {
    let q = match config.construction {
        Some(c) => quantize_with(g, n, conv, c)?,
        None => quantize(g, n, conv)?,
    };
    let params = json_params(serde_json::json!({ "N": n }));
    let checks = vec![
        CheckReport::new("unitarity", params.clone(), q.unitarity_residual, config.tolerance("unitarity")),
        CheckReport::new("egorov", params, q.egorov_residual, config.tolerance("egorov")),
    ];
    let row = vec![
        n.to_string(),
        serde_json::to_value(q.construction)?.as_str().unwrap_or_default().to_string(),
        csv_float(q.unitarity_residual),
        csv_float(q.egorov_residual),
        q.theta_group.to_string(),
    ];
    Ok(JobOutput { json: envelope_json(config.command, &q, &NoExtra {}, &checks, conv)?, row, checks })
}

#[derive(Serialize)]
struct TraceExtra {
    theta_group: bool,
    construction: Construction,
    /// Phase ratio divided by the calibration constant.
    #[serde(with = "crate::report::option_complex")]
    calibrated_phase_ratio: Option<Complex64>,
    fixed_point_bound: f64,
}

fn job_trace(
    config: &RunConfig,
    conv: &Conventions,
    g: &IntegerSymplecticMatrix,
    n: u64,
    formula: &TraceFormula,
) -> Result<JobOutput> {
    let q = quantize(g, n, conv)?;
    let report = compare_with(formula, g, n, q.operator.trace());
    let calibration = conv.trace_phase.unwrap_or(Complex64::new(1.0, 0.0));
    let extra = TraceExtra {
        theta_group: q.theta_group,
        construction: q.construction,
        calibrated_phase_ratio: report.phase_discrepancy.map(|p| p / calibration),
        fixed_point_bound: (formula.determinant().abs() as f64).sqrt(),
    };
    let params = json_params(serde_json::json!({ "N": n }));
    let checks = vec![CheckReport::new(
        "trace_magnitude",
        params,
        report.magnitude_error,
        config.tolerance("trace_magnitude"),
    )];
    let ratio = report.phase_discrepancy;
    let row = vec![
        n.to_string(),
        csv_float(report.formula_value.re),
        csv_float(report.formula_value.im),
        csv_float(report.direct_value.re),
        csv_float(report.direct_value.im),
        ratio.map_or(String::new(), |z| csv_float(z.re)),
        ratio.map_or(String::new(), |z| csv_float(z.im)),
        csv_float(report.magnitude_error),
    ];
    Ok(JobOutput { json: envelope_json(config.command, &report, &extra, &checks, conv)?, row, checks })
}

#[derive(Serialize)]
struct SpectrumExtra {
    equidistribution: crate::spectral::EquidistributionStats,
}

fn job_spectrum(config: &RunConfig, conv: &Conventions, g: &IntegerSymplecticMatrix, n: u64) -> Result<JobOutput> {
    let q = quantize(g, n, conv)?;
    let report = spectral_report(&q, DEFAULT_QUANTUM_PERIOD_CAP)?;
    let extra = SpectrumExtra { equidistribution: equidistribution_from_phases(g, &report.eigenphases, config.k_max) };
    let params = json_params(serde_json::json!({ "N": n }));
    let checks = vec![CheckReport::new(
        "eigen_residual",
        params,
        report.max_eigen_residual,
        config.tolerance("eigen_residual"),
    )];
    let row = vec![
        n.to_string(),
        report.multiplicities.len().to_string(),
        report.quantum_period.map_or(String::new(), |p| p.to_string()),
        csv_float(report.max_eigen_residual),
        csv_float(extra.equidistribution.star_discrepancy),
        extra.equidistribution.weyl_sums.first().map_or(String::new(), |w| csv_float(*w)),
    ];
    Ok(JobOutput { json: envelope_json(config.command, &report, &extra, &checks, conv)?, row, checks })
}

#[derive(Serialize)]
struct ErgodicExtra {
    parseval: f64,
}

/// Windows reported by the ergodic pipeline: pair statistic at `tau = 0`,
/// mixing at `tau = pi`, both with width `2 pi / N`, and the full window.
pub fn default_windows(modulus: u64) -> Vec<(f64, f64)> {
    let delta = 2.0 * PI / modulus as f64;
    vec![(0.0, delta), (PI, delta), (0.0, 2.0)]
}

fn job_ergodic(config: &RunConfig, conv: &Conventions, g: &IntegerSymplecticMatrix, n: u64) -> Result<JobOutput> {
    let q = quantize(g, n, conv)?;
    let eig = eig_unitary(&q.operator)?;
    let elements = MatrixElements::new(&eig, config.observable)?;
    let offdiag_sums = default_windows(n)
        .into_iter()
        .map(|(tau, delta)| Ok(OffDiagonalSum { tau, delta, value: elements.offdiagonal_sum(tau, delta)? }))
        .collect::<Result<Vec<_>>>()?;
    let report = crate::spectral::ErgodicityReport {
        g: g.clone(),
        modulus: n,
        observable: config.observable,
        diagonal_variance: elements.diagonal_variance(),
        offdiag_sums,
    };
    let parseval = elements.parseval();
    let completeness = (report.offdiag_sums[2].value + report.diagonal_variance - 1.0).abs();
    let params = json_params(serde_json::json!({ "N": n, "observable": config.observable }));
    let checks = vec![
        CheckReport::new("parseval", params.clone(), (parseval - 1.0).abs(), config.tolerance("parseval")),
        CheckReport::new("completeness", params, completeness, config.tolerance("completeness")),
    ];
    let row = vec![
        n.to_string(),
        csv_float(report.diagonal_variance),
        csv_float(report.offdiag_sums[0].value),
        csv_float(report.offdiag_sums[1].value),
        csv_float(parseval),
    ];
    Ok(JobOutput { json: envelope_json(config.command, &report, &ErgodicExtra { parseval }, &checks, conv)?, row, checks })
}

fn theta_points() -> Vec<UpperHalfPlanePoint> {
    [(0.0, 1.0), (1.0, 2.0), (0.0, 2.0)]
        .iter()
        .map(|&(re, im)| UpperHalfPlanePoint::new(Complex64::new(re, im)).expect("upper half-plane"))
        .collect()
}

/// Theta-function checks for one `N`: inner products against their closed
/// forms, the fitted transformation law for `g`, the bridge to `U_{g,N}` and
/// the projector composition factor.
pub fn theta_checks(
    g: &IntegerSymplecticMatrix,
    n: u64,
    grid: usize,
    seed: u64,
    conv: &Conventions,
    tol: impl Fn(&str) -> f64,
) -> Result<Vec<CheckReport>> {
    let kappa = conv.gaussian_normalization.unwrap_or_else(crate::theta::calibrate_gaussian_normalization);
    let mut checks = Vec::new();
    let points = theta_points();
    for (i, &t1) in points.iter().enumerate() {
        for &t2 in &points[i..] {
            let gram = theta_gram(t1, t2, n, grid);
            let closed = crate::theta::theta_closed_form(t1, t2, n) * kappa;
            let mut residual = 0.0f64;
            for r in 0..n as usize {
                for c in 0..n as usize {
                    let target = if r == c { closed } else { Complex64::new(0.0, 0.0) };
                    residual = residual.max((gram[(r, c)] - target).norm());
                }
            }
            checks.push(CheckReport::new(
                "theta_inner_products",
                serde_json::json!({ "N": n, "tau": [t1.value().re, t1.value().im], "tau_prime": [t2.value().re, t2.value().im], "grid": grid }),
                residual,
                tol("theta"),
            ));
        }
    }
    let i = UpperHalfPlanePoint::i();
    let two_i = UpperHalfPlanePoint::new(Complex64::new(0.0, 2.0))?;
    let factor = projector_composition_factor(i, two_i, 1);
    let cross = normalized_cross_gram(i, two_i, n, grid);
    let target = CMatrix::identity(n as usize, n as usize) * factor;
    let residual = (cross - target).iter().map(|z| z.norm()).fold(0.0, f64::max);
    checks.push(CheckReport::new(
        "projector_factor",
        serde_json::json!({ "N": n, "tau": [0.0, 1.0], "tau_prime": [0.0, 2.0], "grid": grid }),
        residual,
        tol("theta"),
    ));
    if theta_group_member(g, n) {
        let tau = UpperHalfPlanePoint::new(Complex64::new(0.1, 1.1))?;
        let residual = transformation_law_residual(g, n, tau, 20, seed, conv)?;
        checks.push(CheckReport::new(
            "transformation_law",
            serde_json::json!({ "N": n, "g": g.matrix().rows(), "samples": 20, "seed": seed }),
            residual,
            tol("transformation_law"),
        ));
        let deviation = bridge_deviation(g, n, tau, 20, seed, conv)?;
        checks.push(CheckReport::new(
            "transformation_bridge",
            serde_json::json!({ "N": n, "g": g.matrix().rows(), "samples": 20, "seed": seed }),
            deviation,
            tol("bridge"),
        ));
    }
    Ok(checks)
}

#[derive(Serialize)]
struct ThetaFile<'a> {
    g: &'a IntegerSymplecticMatrix,
    #[serde(rename = "N")]
    modulus: u64,
    #[serde(with = "crate::report::complex")]
    gaussian_overlap_ratio: Complex64,
}

fn job_theta(config: &RunConfig, conv: &Conventions, g: &IntegerSymplecticMatrix, n: u64) -> Result<JobOutput> {
    let grid = if config.level == Level::Full { 2 * DEFAULT_GRID } else { DEFAULT_GRID };
    let checks = theta_checks(g, n, grid, config.seed, conv, |name| config.tolerance(name))?;
    let i = UpperHalfPlanePoint::i();
    let file = ThetaFile { g, modulus: n, gaussian_overlap_ratio: gaussian_overlap(i, i, 1).ratio };
    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let row = vec![
        n.to_string(),
        checks.len().to_string(),
        checks.iter().filter(|c| !c.pass).count().to_string(),
        csv_float(max_residual),
    ];
    Ok(JobOutput { json: envelope_json(config.command, &file, &NoExtra {}, &checks, conv)?, row, checks })
}

#[derive(Serialize)]
struct PeriodFile<'a> {
    g: &'a IntegerSymplecticMatrix,
    #[serde(rename = "N")]
    modulus: u64,
    arithmetic_period: u64,
    lifted_period: u64,
    quantum_period: Option<u64>,
    #[serde(with = "crate::report::option_complex")]
    scalar_phase: Option<Complex64>,
    relation: Option<PeriodRelation>,
}

fn job_period(config: &RunConfig, conv: &Conventions, g: &IntegerSymplecticMatrix, n: u64) -> Result<JobOutput> {
    let arithmetic = arithmetic_period(g, n, DEFAULT_PERIOD_CAP)?;
    let lifted = lifted_period(g, n, DEFAULT_PERIOD_CAP)?;
    let q = quantize(g, n, conv)?;
    let eig = eig_unitary(&q.operator)?;
    let found = quantum_period(&q.operator, &eig, DEFAULT_QUANTUM_PERIOD_CAP);
    let file = PeriodFile {
        g,
        modulus: n,
        arithmetic_period: arithmetic,
        lifted_period: lifted,
        quantum_period: found.map(|p| p.period),
        scalar_phase: found.map(|p| p.scalar_phase),
        relation: found.map(|p| period_relation(p.period, arithmetic)),
    };
    let params = json_params(serde_json::json!({ "N": n }));
    let residual = found.map_or(f64::INFINITY, |p| p.residual);
    let checks = vec![CheckReport::new("period", params, residual, config.tolerance("period"))];
    let row = vec![
        n.to_string(),
        arithmetic.to_string(),
        lifted.to_string(),
        file.quantum_period.map_or(String::new(), |p| p.to_string()),
        file.relation.map_or(String::new(), |r| serde_json::to_value(r).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()),
        file.scalar_phase.map_or(String::new(), |z| csv_float(z.re)),
        file.scalar_phase.map_or(String::new(), |z| csv_float(z.im)),
    ];
    Ok(JobOutput { json: envelope_json(config.command, &file, &NoExtra {}, &checks, conv)?, row, checks })
}

/// Ten matrices used by the invariant suites.
pub fn standard_test_matrices() -> Vec<IntegerSymplecticMatrix> {
    [
        [0, -1, 1, 0],
        [1, 1, 0, 1],
        [1, 2, 0, 1],
        [2, 1, 1, 1],
        [1, 2, 1, 3],
        [3, 2, 1, 1],
        [2, 3, 1, 2],
        [5, 2, 2, 1],
        [7, 4, 5, 3],
        [4, 1, -1, 0],
    ]
    .iter()
    .map(|&[a, b, c, d]| IntegerSymplecticMatrix::sl2(a, b, c, d).expect("determinant one"))
    .collect()
}

/// One row of the verification matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub key: String,
    pub description: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub level: Level,
    pub suites: Vec<SuiteResult>,
    pub pass: bool,
}

impl VerifySummary {
    pub fn failed(&self) -> Vec<&SuiteResult> {
        self.suites.iter().filter(|s| !s.pass).collect()
    }
}

struct Suite {
    key: &'static str,
    description: &'static str,
    tolerance: f64,
    body: Box<dyn Fn() -> Result<(f64, usize)> + Sync + Send>,
}

fn max_dev(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn moduli_for(level: Level) -> Vec<u64> {
    match level {
        Level::Quick => (1..=32).collect(),
        Level::Full => {
            let mut v: Vec<u64> = (1..=64).collect();
            v.extend((96..=512).step_by(32));
            v.extend([127, 257, 509]);
            v.sort_unstable();
            v.dedup();
            v
        }
    }
}

fn brute_force_coset_check(m: &IntMatrix) -> Result<bool> {
    let cs = coset_representatives(m)?;
    let det = cs.index as i64;
    let dim = m.dim();
    // the class of v is the fractional part of M^{-1} v; compare via exact
    // adjugate arithmetic on the box [0, det)^dim
    let adj = adjugate(m);
    let key = |v: &[i64]| -> Vec<i64> {
        (0..dim)
            .map(|i| (0..dim).map(|j| adj[i][j] as i128 * v[j] as i128).sum::<i128>().rem_euclid(det as i128) as i64)
            .collect()
    };
    let mut classes = std::collections::HashSet::new();
    let mut v = vec![0i64; dim];
    loop {
        classes.insert(key(&v));
        let mut pos = dim;
        loop {
            if pos == 0 {
                let reps: std::collections::HashSet<Vec<i64>> =
                    cs.representatives.iter().map(|r| key(r)).collect();
                return Ok(classes.len() as u64 == cs.index && reps.len() as u64 == cs.index);
            }
            pos -= 1;
            v[pos] += 1;
            if v[pos] < det {
                break;
            }
            v[pos] = 0;
        }
    }
}

/// Integer adjugate, `adj(M) M = det(M) I` up to sign of the determinant.
fn adjugate(m: &IntMatrix) -> Vec<Vec<i64>> {
    let n = m.dim();
    let det = m.det();
    let sign: i64 = if det < num_bigint::BigInt::from(0) { -1 } else { 1 };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<num_bigint::BigInt>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| num_bigint::BigInt::from(m.get(r, c))).collect())
                        .collect();
                    let cof = crate::symplectic::determinant(&minor);
                    let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                    let v: i64 = num_traits::ToPrimitive::to_i64(&cof).unwrap_or(0) * s;
                    v * sign
                })
                .collect()
        })
        .collect()
}

fn build_suites(level: Level, extra: Option<&IntegerSymplecticMatrix>, conv: &Conventions, seed: u64, tol: &BTreeMap<String, f64>) -> Vec<Suite> {
    let t = |name: &str| tol.get(name).copied().or_else(|| default_tolerances().get(name).copied()).unwrap_or(1e-8);
    let mut matrices = standard_test_matrices();
    if let Some(g) = extra {
        if !matrices.contains(g) {
            matrices.push(g.clone());
        }
    }
    let moduli = moduli_for(level);
    let small: u64 = if level == Level::Quick { 16 } else { 32 };
    let mut suites: Vec<Suite> = Vec::new();

    suites.push(Suite {
        key: "gauss_sum",
        description: "direct quadratic Gauss sum against its closed form, N = 1..256",
        tolerance: t("gauss_sum"),
        body: Box::new(|| {
            let r = (1..=256u64).map(|n| { let s = gauss_sum(n); (s.direct - s.closed_form).norm() }).fold(0.0, f64::max);
            Ok((r, 256))
        }),
    });

    suites.push(Suite {
        key: "heisenberg_group",
        description: "associativity of the finite Heisenberg law (N <= 5) and the Weyl cocycle",
        tolerance: t("projective_rep"),
        body: Box::new(|| {
            let mut bad = 0usize;
            let mut cases = 0usize;
            for n in 1..=5u64 {
                let els: Vec<HeisenbergElement> = (0..n as i64)
                    .flat_map(|a| (0..n as i64).map(move |b| (a, b)))
                    .flat_map(|(a, b)| [0i64, 2].into_iter().map(move |j| HeisenbergElement::new(n, vec![a], vec![b], j)))
                    .collect::<Result<_>>()?;
                for x in &els {
                    for y in &els {
                        for z in &els {
                            let l = heisenberg_multiply(&heisenberg_multiply(x, y)?, z)?;
                            let r = heisenberg_multiply(x, &heisenberg_multiply(y, z)?)?;
                            cases += 1;
                            if l != r {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            let mut residual = bad as f64;
            for n in 1..=8u64 {
                let box_: Vec<[i64; 2]> = (-2..3).flat_map(|a| (-2..3).map(move |b| [a, b])).collect();
                let pairs: Vec<_> = box_.iter().flat_map(|&v| box_.iter().map(move |&w| (v, w))).collect();
                residual = residual.max(projective_rep_check(n, &pairs));
                cases += pairs.len();
            }
            Ok((residual, cases))
        }),
    });

    suites.push(Suite {
        key: "symplectic_cosets",
        description: "Hermite coset representatives against exhaustive box search, |det| <= 64",
        tolerance: 0.5,
        body: Box::new(|| {
            let mut bad = 0usize;
            let mut cases = 0usize;
            for a in -4i64..=4 {
                for b in -4i64..=4 {
                    for c in -4i64..=4 {
                        for d in -4i64..=4 {
                            let m = IntMatrix::from_row_major(2, vec![a, b, c, d])?;
                            let det = (a * d - b * c).abs();
                            if det == 0 || det > 64 || (a + b + c + d).rem_euclid(3) != 0 {
                                continue;
                            }
                            cases += 1;
                            if !brute_force_coset_check(&m)? {
                                bad += 1;
                            }
                        }
                    }
                }
            }
            Ok((bad as f64, cases))
        }),
    });

    suites.push(Suite {
        key: "generator_words",
        description: "Euclidean generator words multiply back exactly (100 random words)",
        tolerance: 0.5,
        body: Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let letters = [Generator::S, Generator::SInv, Generator::T, Generator::TInv];
            let mut bad = 0usize;
            for _ in 0..100 {
                let len = rng.gen_range(0..=20);
                let word = Word((0..len).map(|_| letters[rng.gen_range(0..4)]).collect());
                let g = word.product()?;
                if generator_decomposition(&g)?.product()? != g {
                    bad += 1;
                }
            }
            Ok((bad as f64, 100))
        }),
    });

    {
        let matrices = matrices.clone();
        let moduli = moduli.clone();
        let conv = conv.clone();
        suites.push(Suite {
            key: "unitarity",
            description: "unitarity of U_{g,N} over the test matrices and N grid",
            tolerance: t("unitarity"),
            body: Box::new(move || {
                let jobs: Vec<(usize, u64)> = (0..matrices.len()).flat_map(|i| moduli.iter().map(move |&n| (i, n))).collect();
                let r = jobs
                    .par_iter()
                    .map(|&(i, n)| quantize(&matrices[i], n, &conv).map(|q| q.unitarity_residual))
                    .collect::<Result<Vec<_>>>()?;
                Ok((r.iter().copied().fold(0.0, f64::max), jobs.len()))
            }),
        });
    }
    {
        let matrices = matrices.clone();
        let moduli = moduli.clone();
        let conv = conv.clone();
        suites.push(Suite {
            key: "exact_egorov",
            description: "U rho(v) U^* = c rho(g v) over the test matrices and N grid",
            tolerance: t("egorov"),
            body: Box::new(move || {
                let jobs: Vec<(usize, u64)> = (0..matrices.len()).flat_map(|i| moduli.iter().map(move |&n| (i, n))).collect();
                let r = jobs
                    .par_iter()
                    .map(|&(i, n)| quantize(&matrices[i], n, &conv).map(|q| q.egorov_residual))
                    .collect::<Result<Vec<_>>>()?;
                Ok((r.iter().copied().fold(0.0, f64::max), jobs.len()))
            }),
        });
    }
    {
        let matrices = matrices.clone();
        let conv = conv.clone();
        suites.push(Suite {
            key: "construction_paths",
            description: "transformation-law, word and averaging constructions agree up to a unit scalar",
            tolerance: t("construction_paths"),
            body: Box::new(move || {
                let mut worst = 0.0f64;
                let mut cases = 0;
                for g in &matrices {
                    let (_, _, c, _) = g.entries().expect("2x2");
                    for n in 1..=small {
                        let word = quantize_with(g, n, &conv, Construction::GeneratorWord)?;
                        if num_integer::Integer::gcd(&c, &(n as i64)) == 1 {
                            let tl = quantize_with(g, n, &conv, Construction::TransformationLaw)?;
                            worst = worst.max(phase_aligned_distance(tl.matrix(), word.matrix()).1);
                            cases += 1;
                        }
                        if n <= 12 {
                            let avg = quantize_with(g, n, &conv, Construction::Intertwiner)?;
                            worst = worst.max(phase_aligned_distance(avg.matrix(), word.matrix()).1);
                            cases += 1;
                        }
                    }
                }
                Ok((worst, cases))
            }),
        });
    }
    {
        let matrices = matrices.clone();
        let moduli = moduli.clone();
        let conv = conv.clone();
        suites.push(Suite {
            key: "trace_formula_magnitude",
            description: "|fixed-point formula| = |Tr U_{g,N}| for non-degenerate test matrices",
            tolerance: t("trace_magnitude"),
            body: Box::new(move || {
                let mut worst = 0.0f64;
                let mut cases = 0;
                for g in &matrices {
                    let Ok(formula) = TraceFormula::new(g) else { continue };
                    let r = moduli
                        .par_iter()
                        .map(|&n| quantize(g, n, &conv).map(|q| compare_with(&formula, g, n, q.operator.trace()).magnitude_error))
                        .collect::<Result<Vec<_>>>()?;
                    cases += r.len();
                    worst = r.into_iter().fold(worst, f64::max);
                }
                Ok((worst, cases))
            }),
        });
    }
    {
        let matrices = matrices.clone();
        let moduli = moduli.clone();
        let conv = conv.clone();
        suites.push(Suite {
            key: "trace_formula_phase",
            description: "formula/direct phase ratio constant across N on theta-group points",
            tolerance: t("trace_phase"),
            body: Box::new(move || {
                let mut worst = 0.0f64;
                let mut cases = 0;
                for g in &matrices {
                    let Ok(formula) = TraceFormula::new(g) else { continue };
                    let ratios = moduli
                        .par_iter()
                        .filter(|&&n| theta_group_member(g, n))
                        .map(|&n| quantize(g, n, &conv).map(|q| compare_with(&formula, g, n, q.operator.trace()).phase_discrepancy))
                        .collect::<Result<Vec<_>>>()?;
                    let ratios: Vec<Complex64> = ratios.into_iter().flatten().collect();
                    if let Some(first) = ratios.first() {
                        for r in &ratios {
                            worst = worst.max((r - first).norm());
                        }
                    }
                    cases += ratios.len();
                }
                Ok((worst, cases))
            }),
        });
    }
    {
        let n_max: u64 = if level == Level::Quick { 32 } else { 64 };
        suites.push(Suite {
            key: "fourier_spectrum",
            description: "eigenvalues of F(N) are fourth roots of unity with the closed-form multiplicities",
            tolerance: t("fourier_spectrum"),
            body: Box::new(move || {
                let r = (1..=n_max)
                    .into_par_iter()
                    .map(|n| {
                        let eig = eig_unitary(&quantize_s(n))?;
                        let mut counts = [0usize; 4];
                        let mut worst = 0.0f64;
                        for p in &eig.phases {
                            let q = p / (PI / 2.0);
                            let k = q.round();
                            worst = worst.max((Complex64::from_polar(1.0, *p) - Complex64::from_polar(1.0, k * PI / 2.0)).norm());
                            counts[(k as usize) % 4] += 1;
                        }
                        // counts are indexed by 1, i, -1, -i
                        let expect = fourier_multiplicities(n);
                        let found = [counts[0], counts[2], counts[3], counts[1]];
                        Ok(if found == expect { worst } else { f64::INFINITY })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((r.into_iter().fold(0.0, f64::max), n_max as usize))
            }),
        });
    }
    {
        let conv = conv.clone();
        let grid = if level == Level::Quick { 128 } else { DEFAULT_GRID };
        let n_max: u64 = 4;
        suites.push(Suite {
            key: "theta_functions",
            description: "theta inner products, projector factor and fitted transformation law (N <= 4)",
            tolerance: 1.0,
            body: Box::new(move || {
                let s = IntegerSymplecticMatrix::s();
                let mut worst_ratio = 0.0f64;
                let mut cases = 0;
                for n in 1..=n_max {
                    let tol = |name: &str| default_tolerances()[name];
                    for c in theta_checks(&s, n, grid, seed, &conv, tol)? {
                        worst_ratio = worst_ratio.max(c.residual / c.tolerance);
                        cases += 1;
                    }
                }
                let cat = IntegerSymplecticMatrix::cat();
                for n in [2u64, 4] {
                    let tau = UpperHalfPlanePoint::new(Complex64::new(0.1, 1.1))?;
                    let r = transformation_law_residual(&cat, n, tau, 20, seed, &conv)?;
                    worst_ratio = worst_ratio.max(r / default_tolerances()["transformation_law"]);
                    let b = bridge_deviation(&cat, n, tau, 20, seed, &conv)?;
                    worst_ratio = worst_ratio.max(b / default_tolerances()["bridge"]);
                    cases += 2;
                }
                Ok((worst_ratio, cases))
            }),
        });
    }
    {
        let conv = conv.clone();
        let n_max: u64 = if level == Level::Quick { 32 } else { 256 };
        suites.push(Suite {
            key: "equidistribution_bound",
            description: "|Tr U^k| <= sqrt|det(I - g^k)| for the Arnold map, k <= 4, and |Tr U| = 1",
            tolerance: t("equidistribution"),
            body: Box::new(move || {
                let cat = IntegerSymplecticMatrix::cat();
                let bounds: Vec<f64> = (1..=4u32)
                    .map(|k| Ok((TraceFormula::new(&cat.pow(k)?)?.determinant().abs() as f64).sqrt()))
                    .collect::<Result<_>>()?;
                let r = (2..=n_max)
                    .into_par_iter()
                    .map(|n| {
                        let q = quantize(&cat, n, &conv)?;
                        let mut power = q.matrix().clone();
                        let mut worst = (power.trace().norm() - 1.0).abs();
                        for bound in &bounds[1..] {
                            power = crate::operator::mul(&power, q.matrix());
                            worst = worst.max(power.trace().norm() - bound);
                        }
                        Ok(worst.max(0.0))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((r.into_iter().fold(0.0, f64::max), (n_max - 1) as usize * 4))
            }),
        });
    }
    {
        let conv = conv.clone();
        suites.push(Suite {
            key: "quantum_period",
            description: "spectral quantum period equals direct power iteration; U to the lifted order of g is scalar",
            tolerance: t("period"),
            body: Box::new(move || {
                let mut worst = 0.0f64;
                let mut cases = 0;
                for g in [IntegerSymplecticMatrix::cat(), IntegerSymplecticMatrix::s(), IntegerSymplecticMatrix::sl2(3, 2, 1, 1)?] {
                    for n in 1..=small {
                        let q = quantize(&g, n, &conv)?;
                        let eig = eig_unitary(&q.operator)?;
                        let fast = quantum_period(&q.operator, &eig, 10_000);
                        let slow = quantum_period_by_iteration(&q.operator, 10_000);
                        match (fast, slow) {
                            (Some(f), Some(s)) if f.period == s.period => worst = worst.max(f.residual),
                            _ => worst = f64::INFINITY,
                        }
                        let order = lifted_period(&g, n, DEFAULT_PERIOD_CAP)?;
                        let mut p = CMatrix::identity(n as usize, n as usize);
                        for _ in 0..order {
                            p = crate::operator::mul(&p, q.matrix());
                        }
                        let c = p[(0, 0)] / p[(0, 0)].norm();
                        worst = worst.max(max_dev(&p, &(CMatrix::identity(n as usize, n as usize) * c)));
                        cases += 2;
                    }
                }
                Ok((worst, cases))
            }),
        });
    }
    {
        let conv = conv.clone();
        let grid: Vec<u64> = if level == Level::Quick { vec![8, 16, 32] } else { vec![8, 16, 32, 64, 128, 256, 512] };
        suites.push(Suite {
            key: "ergodicity_sums",
            description: "Parseval identity and full-window completeness for the Arnold map, observable (1,0)",
            tolerance: t("parseval"),
            body: Box::new(move || {
                let cat = IntegerSymplecticMatrix::cat();
                let r = grid
                    .par_iter()
                    .map(|&n| {
                        let q = quantize(&cat, n, &conv)?;
                        let eig = eig_unitary(&q.operator)?;
                        let m = MatrixElements::new(&eig, [1, 0])?;
                        let full = m.offdiagonal_sum(0.0, 2.0)?;
                        Ok((m.parseval() - 1.0).abs().max((full + m.diagonal_variance() - 1.0).abs()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((r.into_iter().fold(0.0, f64::max), grid.len()))
            }),
        });
    }
    suites
}

/// Multiplicities of the eigenvalues `1, -1, -i, i` of the unitary DFT of
/// size `N`.
pub fn fourier_multiplicities(n: u64) -> [usize; 4] {
    let m = (n / 4) as usize;
    match n % 4 {
        0 => [m + 1, m, m, m - 1],
        1 => [m + 1, m, m, m],
        2 => [m + 1, m + 1, m, m],
        _ => [m + 1, m + 1, m + 1, m],
    }
}

/// Run every invariant suite.
pub fn verify_all(
    level: Level,
    extra: Option<&IntegerSymplecticMatrix>,
    conv: &Conventions,
    seed: u64,
    tolerances: &BTreeMap<String, f64>,
) -> VerifySummary {
    let suites = build_suites(level, extra, conv, seed, tolerances);
    let results: Vec<SuiteResult> = suites
        .iter()
        .map(|s| {
            let start = std::time::Instant::now();
            let r = (s.body)();
            if std::env::var_os("CATMAP_TIMING").is_some() {
                eprintln!("{} {:?}", s.key, start.elapsed());
            }
            r
        })
        .zip(&suites)
        .map(|(r, s)| match r {
            Ok((residual, cases)) => SuiteResult {
                key: s.key.to_string(),
                description: s.description.to_string(),
                pass: residual <= s.tolerance,
                residual,
                tolerance: s.tolerance,
                cases,
                detail: None,
            },
            Err(e) => SuiteResult {
                key: s.key.to_string(),
                description: s.description.to_string(),
                pass: false,
                residual: f64::INFINITY,
                tolerance: s.tolerance,
                cases: 0,
                detail: Some(e.to_string()),
            },
        })
        .collect();
    let pass = results.iter().all(|r| r.pass);
    VerifySummary { level, suites: results, pass }
}

#[derive(Serialize)]
struct VerifyFile<'a> {
    command: &'a str,
    #[serde(flatten)]
    summary: &'a VerifySummary,
    conventions: &'a Conventions,
}

fn run_verify_all(config: &RunConfig, g: Option<&IntegerSymplecticMatrix>, conv: &Conventions) -> Result<RunOutcome> {
    let summary = verify_all(config.level, g, conv, config.seed, &config.tolerances);
    let mut files = Vec::new();
    match config.format {
        Format::Json => {
            let path = config.output.join("verify_all.json");
            std::fs::write(&path, to_json_string(&VerifyFile { command: "verify-all", summary: &summary, conventions: conv })?)?;
            files.push(path);
        }
        Format::Csv => {
            let path = config.output.join("verify_all.csv");
            let header: Vec<String> = ["suite", "pass", "residual", "tolerance", "cases"].iter().map(|s| s.to_string()).collect();
            let rows: Vec<Vec<String>> = summary
                .suites
                .iter()
                .map(|s| vec![s.key.clone(), s.pass.to_string(), csv_float(s.residual), csv_float(s.tolerance), s.cases.to_string()])
                .collect();
            write_csv(&path, &header, &rows)?;
            files.push(path);
        }
    }
    let messages = summary
        .suites
        .iter()
        .map(|s| {
            format!(
                "{:<26} {}  residual {:.3e}  tolerance {:.1e}{}",
                s.key,
                if s.pass { "pass" } else { "FAIL" },
                s.residual,
                s.tolerance,
                s.detail.as_ref().map(|d| format!("  ({d})")).unwrap_or_default()
            )
        })
        .collect();
    Ok(RunOutcome { exit_code: if summary.pass { EXIT_OK } else { EXIT_NUMERICAL }, files, messages })
}

/// Path helper for tests and examples.
pub fn report_path(dir: &Path, command: Command, g: &IntegerSymplecticMatrix, n: u64) -> PathBuf {
    dir.join(format!("{}_g{}_N{n}.json", command.name(), matrix_label(g)))
}
