//! Eigen-decomposition of `U_{g,N}` and the statistics built on it.

use std::f64::consts::PI;

use nalgebra::linalg::Schur;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::heisenberg::WeylOperator;
use crate::metaplectic::{quantize, QuantizedMap};
use crate::operator::{mul, CMatrix, UnitaryOperator};
use crate::symplectic::IntegerSymplecticMatrix;

pub const EIGEN_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Eigenphases closer than this are reported as one eigenvalue.
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-6;

/// Tolerance for `|U^k - c I|` when certifying a quantum period.
pub const PERIOD_TOLERANCE: f64 = 1e-8;

pub const DEFAULT_QUANTUM_PERIOD_CAP: u64 = 100_000;

/// Slack added to spectral windows so that `delta >= 2` is all-inclusive.
const WINDOW_SLACK: f64 = 1e-12;

/// Orthonormal eigenbasis of a unitary with eigenphases in `[0, 2 pi)`,
/// sorted increasingly; column `j` of `vectors` belongs to `phases[j]`.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub phases: Vec<f64>,
    pub vectors: CMatrix,
    pub max_residual: f64,
    /// Largest `| |lambda| - 1 |` before renormalization.
    pub max_modulus_deviation: f64,
}

fn wrap_phase(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t >= 2.0 * PI {
        0.0
    } else {
        t
    }
}

const SCHUR_EPS: f64 = 1e-15;

/// Complex Schur form; for a unitary the triangular factor is diagonal up to
/// rounding, so the Schur vectors are eigenvectors. Each pair is certified.
pub fn eig_unitary(u: &UnitaryOperator) -> Result<Eigensystem> {
    let n = u.dim();
    // a machine-epsilon threshold can stall on exactly degenerate spectra
    let cap = 200 * n.max(10);
    let schur = Schur::try_new(u.matrix().clone(), SCHUR_EPS, cap)
        .or_else(|| Schur::try_new(u.matrix().clone(), 100.0 * SCHUR_EPS, cap))
        .ok_or_else(|| Error::Numerical { what: "Schur iteration did not converge".into(), residual: f64::NAN, tolerance: 0.0 })?;
    let (q, t) = schur.unpack();
    let mut order: Vec<(f64, usize, Complex64)> = (0..n)
        .map(|j| {
            let lambda = t[(j, j)];
            (wrap_phase(lambda.arg()), j, lambda)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));

    let uq = mul(u.matrix(), &q);
    let mut vectors = CMatrix::zeros(n, n);
    let mut phases = Vec::with_capacity(n);
    let mut max_residual = 0.0f64;
    let mut max_modulus_deviation = 0.0f64;
    for (col, &(phase, j, lambda)) in order.iter().enumerate() {
        max_modulus_deviation = max_modulus_deviation.max((lambda.norm() - 1.0).abs());
        let unit = Complex64::from_polar(1.0, phase);
        let v = q.column(j);
        let residual = (uq.column(j) - v * unit).norm();
        if !(residual <= EIGEN_RESIDUAL_TOLERANCE) {
            return Err(Error::EigenResidual { index: col, residual, tolerance: EIGEN_RESIDUAL_TOLERANCE });
        }
        max_residual = max_residual.max(residual);
        vectors.set_column(col, &v);
        phases.push(phase);
    }
    Ok(Eigensystem { phases, vectors, max_residual, max_modulus_deviation })
}

/// Sizes of the clusters of sorted eigenphases whose neighbours lie within
/// `tol`, treating the circle as closed.
pub fn multiplicities(phases: &[f64], tol: f64) -> Vec<usize> {
    if phases.is_empty() {
        return Vec::new();
    }
    let mut sizes = vec![1usize];
    for w in phases.windows(2) {
        if w[1] - w[0] <= tol {
            *sizes.last_mut().expect("nonempty") += 1;
        } else {
            sizes.push(1);
        }
    }
    let wrap_gap = phases[0] + 2.0 * PI - phases[phases.len() - 1];
    if sizes.len() > 1 && wrap_gap <= tol {
        let last = sizes.pop().expect("nonempty");
        sizes[0] += last;
    }
    sizes
}

/// Least `k` with `U^k` a unit scalar, and that scalar.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumPeriod {
    pub period: u64,
    #[serde(with = "crate::report::complex")]
    pub scalar_phase: Complex64,
    pub residual: f64,
}

fn matrix_power(m: &CMatrix, mut k: u64) -> CMatrix {
    let n = m.nrows();
    let mut result = CMatrix::identity(n, n);
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = mul(&result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base);
        }
    }
    result
}

/// Scalar `c` minimizing `|m - c I|` and the resulting max-entry residual.
fn scalar_fit(m: &CMatrix) -> (Complex64, f64) {
    let n = m.nrows();
    let tr = m.trace() / n as f64;
    let c = if tr.norm() > 0.0 { tr / tr.norm() } else { Complex64::new(1.0, 0.0) };
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let target = if i == j { c } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    (c, worst)
}

/// Candidates come from the eigenphases, each is certified by computing
/// `U^k` directly. Returns `None` when nothing is found up to `cap`.
pub fn quantum_period(u: &UnitaryOperator, eig: &Eigensystem, cap: u64) -> Option<QuantumPeriod> {
    let base = eig.phases[0];
    let deltas: Vec<f64> = eig.phases.iter().map(|p| p - base).collect();
    for k in 1..=cap {
        let kf = k as f64;
        let candidate = deltas.iter().all(|d| (Complex64::from_polar(1.0, kf * d) - 1.0).norm() <= 1e-6);
        if !candidate {
            continue;
        }
        let (scalar_phase, residual) = scalar_fit(&matrix_power(u.matrix(), k));
        if residual <= PERIOD_TOLERANCE {
            return Some(QuantumPeriod { period: k, scalar_phase, residual });
        }
    }
    None
}

/// Least `k <= cap` with `U^k` scalar, by plain repeated multiplication.
pub fn quantum_period_by_iteration(u: &UnitaryOperator, cap: u64) -> Option<QuantumPeriod> {
    let mut power = u.matrix().clone();
    for k in 1..=cap {
        let (scalar_phase, residual) = scalar_fit(&power);
        if residual <= PERIOD_TOLERANCE {
            return Some(QuantumPeriod { period: k, scalar_phase, residual });
        }
        power = mul(&power, u.matrix());
    }
    None
}

/// How a quantum period relates to the order of `g` mod `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodRelation {
    Equal,
    Divides,
    Multiple,
    Other,
}

pub fn period_relation(quantum: u64, arithmetic: u64) -> PeriodRelation {
    if quantum == arithmetic {
        PeriodRelation::Equal
    } else if arithmetic % quantum == 0 {
        PeriodRelation::Divides
    } else if quantum % arithmetic == 0 {
        PeriodRelation::Multiple
    } else {
        PeriodRelation::Other
    }
}

/// Spectral data of one `U_{g,N}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub g: IntegerSymplecticMatrix,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub eigenphases: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub quantum_period: Option<u64>,
    #[serde(with = "crate::report::option_complex")]
    pub scalar_phase: Option<Complex64>,
    pub max_eigen_residual: f64,
}

pub fn spectral_report(q: &QuantizedMap, period_cap: u64) -> Result<SpectralReport> {
    let eig = eig_unitary(&q.operator)?;
    let period = quantum_period(&q.operator, &eig, period_cap);
    Ok(SpectralReport {
        g: q.g.clone(),
        modulus: q.modulus,
        multiplicities: multiplicities(&eig.phases, MULTIPLICITY_TOLERANCE),
        eigenphases: eig.phases,
        quantum_period: period.map(|p| p.period),
        scalar_phase: period.map(|p| p.scalar_phase),
        max_eigen_residual: eig.max_residual,
    })
}

/// Weyl sums of the eigenphase measure and its star discrepancy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquidistributionStats {
    pub hyperbolic: bool,
    /// `|Tr U^k| / N` for `k = 1..k_max`.
    pub weyl_sums: Vec<f64>,
    pub star_discrepancy: f64,
}

/// `|sum_j exp(i k theta_j)| / N` for `k = 1..k_max`.
pub fn weyl_sums(phases: &[f64], k_max: usize) -> Vec<f64> {
    let n = phases.len() as f64;
    (1..=k_max)
        .map(|k| phases.iter().map(|t| Complex64::from_polar(1.0, k as f64 * t)).sum::<Complex64>().norm() / n)
        .collect()
}

/// Star discrepancy of `theta_j / 2 pi` for sorted phases in `[0, 2 pi)`.
pub fn star_discrepancy(sorted_phases: &[f64]) -> f64 {
    let n = sorted_phases.len() as f64;
    sorted_phases
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let u = t / (2.0 * PI);
            ((i + 1) as f64 / n - u).max(u - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

pub fn equidistribution_from_phases(g: &IntegerSymplecticMatrix, phases: &[f64], k_max: usize) -> EquidistributionStats {
    EquidistributionStats {
        hyperbolic: g.is_hyperbolic(),
        weyl_sums: weyl_sums(phases, k_max),
        star_discrepancy: star_discrepancy(phases),
    }
}

pub fn equidistribution_stats(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    k_max: usize,
    conv: &Conventions,
) -> Result<EquidistributionStats> {
    let q = quantize(g, modulus, conv)?;
    let eig = eig_unitary(&q.operator)?;
    Ok(equidistribution_from_phases(g, &eig.phases, k_max))
}

/// Matrix elements `<rho phi_i, phi_j>` of a Weyl observable in an eigenbasis.
#[derive(Clone, Debug)]
pub struct MatrixElements {
    phases: Vec<f64>,
    /// Entry `(j, i)` is `<rho phi_i, phi_j> = phi_j^* rho phi_i`.
    elements: CMatrix,
}

impl MatrixElements {
    pub fn new(eig: &Eigensystem, observable: [i64; 2]) -> Result<Self> {
        if observable == [0, 0] {
            return Err(Error::InvalidParameter("observable (0, 0) has nonzero average".into()));
        }
        let n = eig.phases.len() as u64;
        let rho = WeylOperator::new(n, observable[0], observable[1]);
        let elements = mul(&eig.vectors.adjoint(), &rho.left_mul(&eig.vectors));
        Ok(Self { phases: eig.phases.clone(), elements })
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    /// `(1/N) sum_j |<rho phi_j, phi_j>|^2`.
    pub fn diagonal_variance(&self) -> f64 {
        let n = self.dim();
        (0..n).map(|j| self.elements[(j, j)].norm_sqr()).sum::<f64>() / n as f64
    }

    pub fn max_diagonal_sq(&self) -> f64 {
        (0..self.dim()).map(|j| self.elements[(j, j)].norm_sqr()).fold(0.0, f64::max)
    }

    /// `(1/N) sum_{i != j, |exp(i(theta_i - theta_j)) - exp(i tau)| <= delta} |<rho phi_i, phi_j>|^2`.
    pub fn offdiagonal_sum(&self, tau: f64, delta: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(Error::InvalidParameter(format!("window width must be positive, got {delta}")));
        }
        let n = self.dim();
        let shift = Complex64::from_polar(1.0, tau);
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let gap = Complex64::from_polar(1.0, self.phases[i] - self.phases[j]);
                if (gap - shift).norm() <= delta + WINDOW_SLACK {
                    sum += self.elements[(j, i)].norm_sqr();
                }
            }
        }
        Ok(sum / n as f64)
    }

    /// `(1/N) sum_{i,j} |<rho phi_i, phi_j>|^2`, equal to 1 for a unitary `rho`.
    pub fn parseval(&self) -> f64 {
        self.elements.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.dim() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffDiagonalSum {
    pub tau: f64,
    pub delta: f64,
    pub value: f64,
}

/// Ergodicity and mixing statistics of one `(g, N)` and observable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErgodicityReport {
    pub g: IntegerSymplecticMatrix,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub observable: [i64; 2],
    pub diagonal_variance: f64,
    pub offdiag_sums: Vec<OffDiagonalSum>,
}

pub fn ergodicity_report(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    observable: [i64; 2],
    windows: &[(f64, f64)],
    conv: &Conventions,
) -> Result<ErgodicityReport> {
    let q = quantize(g, modulus, conv)?;
    let eig = eig_unitary(&q.operator)?;
    let elements = MatrixElements::new(&eig, observable)?;
    let offdiag_sums = windows
        .iter()
        .map(|&(tau, delta)| Ok(OffDiagonalSum { tau, delta, value: elements.offdiagonal_sum(tau, delta)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(ErgodicityReport {
        g: g.clone(),
        modulus,
        observable,
        diagonal_variance: elements.diagonal_variance(),
        offdiag_sums,
    })
}

/// Diagonal part only.
pub fn ergodicity_variance(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    observable: [i64; 2],
    conv: &Conventions,
) -> Result<ErgodicityReport> {
    ergodicity_report(g, modulus, observable, &[], conv)
}

pub fn offdiagonal_sums(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    observable: [i64; 2],
    tau: f64,
    delta: f64,
    conv: &Conventions,
) -> Result<f64> {
    Ok(ergodicity_report(g, modulus, observable, &[(tau, delta)], conv)?.offdiag_sums[0].value)
}

/// Fraction of consecutive steps along which `values` strictly decreases.
pub fn decreasing_fraction(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let down = values.windows(2).filter(|w| w[1] < w[0]).count();
    down as f64 / (values.len() - 1) as f64
}
