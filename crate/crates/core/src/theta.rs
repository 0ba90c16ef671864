//! Truncated theta lattice sums and the quadratures that tie them to the
//! finite quantization.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conventions::{principal_sqrt, Conventions};
use crate::error::{Error, Result};
use crate::metaplectic::{quantize, transformation_law_matrix};
use crate::operator::{phase_aligned_distance, CMatrix};
use crate::symplectic::{theta_group_member, IntegerSymplecticMatrix};

/// Condition number above which a sample set is rejected.
pub const MAX_CONDITION: f64 = 1e8;

/// Default quadrature resolution per axis.
pub const DEFAULT_GRID: usize = 256;

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexPoint", into = "ComplexPoint")]
pub struct UpperHalfPlanePoint(Complex64);

#[derive(Serialize, Deserialize)]
struct ComplexPoint {
    re: f64,
    im: f64,
}

impl TryFrom<ComplexPoint> for UpperHalfPlanePoint {
    type Error = Error;

    fn try_from(p: ComplexPoint) -> Result<Self> {
        Self::new(Complex64::new(p.re, p.im))
    }
}

impl From<UpperHalfPlanePoint> for ComplexPoint {
    fn from(p: UpperHalfPlanePoint) -> Self {
        ComplexPoint { re: p.0.re, im: p.0.im }
    }
}

impl UpperHalfPlanePoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if tau.im > 0.0 && tau.re.is_finite() && tau.im.is_finite() {
            Ok(Self(tau))
        } else {
            Err(Error::InvalidParameter(format!("tau = {tau} is not in the upper half-plane")))
        }
    }

    pub fn i() -> Self {
        Self(Complex64::new(0.0, 1.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    /// `g^{-1} tau = (d tau - b) / (-c tau + a)`.
    pub fn pull_back(&self, g: &IntegerSymplecticMatrix) -> Result<Self> {
        let (a, b, c, d) = g.sl2_entries()?;
        let tau = self.0;
        Self::new((tau * d as f64 - b as f64) / (tau * (-c as f64) + a as f64))
    }
}

/// Sign convention for the momentum variable inside the lattice sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaVariant {
    /// `q = xi + mu/N + gamma`.
    Displayed,
    /// `q = -xi + mu/N + gamma`.
    ReflectedMomentum,
}

/// Parameters of one truncated theta function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaEvalParams {
    pub tau: UpperHalfPlanePoint,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub characteristic: u64,
    pub radius: u32,
    pub variant: ThetaVariant,
}

/// `max(4, ceil(8 / sqrt(N Im tau)))`.
pub fn default_radius(tau: UpperHalfPlanePoint, modulus: u64) -> u32 {
    let r = (8.0 / (modulus as f64 * tau.im()).sqrt()).ceil();
    (r as u32).max(4)
}

impl ThetaEvalParams {
    pub fn new(tau: UpperHalfPlanePoint, modulus: u64, characteristic: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        Ok(Self {
            tau,
            modulus,
            characteristic: characteristic % modulus,
            radius: default_radius(tau, modulus),
            variant: ThetaVariant::Displayed,
        })
    }

    pub fn with_radius(mut self, radius: u32) -> Self {
        self.radius = radius.max(1);
        self
    }

    pub fn with_variant(mut self, variant: ThetaVariant) -> Self {
        self.variant = variant;
        self
    }

    /// `exp(-pi N Im(tau) (R - 1)^2)`, the size of the first omitted term.
    pub fn tail_bound(&self) -> f64 {
        let r = self.radius as f64 - 1.0;
        (-PI * self.modulus as f64 * self.tau.im() * r * r).exp()
    }
}

/// `exp(-2 pi i N t) sum_gamma exp(2 pi i N [tau q^2 / 2 + q x])` with
/// `q = xi + mu/N + gamma`, summed over `2R + 1` values of `gamma` centred on
/// the peak of the Gaussian.
pub fn theta_eval(p: &ThetaEvalParams, x: f64, xi: f64, t: f64) -> Complex64 {
    let n = p.modulus as f64;
    let tau = p.tau.value();
    let sign = match p.variant {
        ThetaVariant::Displayed => 1.0,
        ThetaVariant::ReflectedMomentum => -1.0,
    };
    let shift = sign * xi + p.characteristic as f64 / n;
    let centre = -shift.round() as i64;
    let r = p.radius as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for gamma in centre - r..=centre + r {
        let q = shift + gamma as f64;
        let modulus = (-PI * n * tau.im * q * q).exp();
        let phase = PI * n * tau.re * q * q + 2.0 * PI * n * q * x;
        sum += Complex64::from_polar(modulus, phase);
    }
    sum * Complex64::from_polar(1.0, -2.0 * PI * n * t)
}

/// Value in symmetric coordinates, `theta(x, xi, t + x xi / 2)`.
pub fn theta_eval_symmetric(p: &ThetaEvalParams, x: f64, xi: f64, t: f64) -> Complex64 {
    theta_eval(p, x, xi, t + 0.5 * x * xi)
}

/// Point of the Heisenberg group in polarized coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergPoint {
    pub x: f64,
    pub xi: f64,
    pub t: f64,
}

impl HeisenbergPoint {
    pub fn new(x: f64, xi: f64, t: f64) -> Self {
        Self { x, xi, t }
    }

    /// `(x, xi, t)(x', xi', t') = (x + x', xi + xi', t + t' + x xi')`.
    pub fn mul(&self, other: &Self) -> Self {
        Self { x: self.x + other.x, xi: self.xi + other.xi, t: self.t + other.t + self.x * other.xi }
    }
}

/// Largest `|theta(n p) - theta(p)|` over the given lattice elements `n`.
pub fn lattice_invariance_residual(params: &ThetaEvalParams, p: HeisenbergPoint, lattice: &[[i64; 3]]) -> f64 {
    let base = theta_eval(params, p.x, p.xi, p.t);
    lattice
        .iter()
        .map(|n| {
            let shifted = HeisenbergPoint::new(n[0] as f64, n[1] as f64, n[2] as f64).mul(&p);
            (theta_eval(params, shifted.x, shifted.xi, shifted.t) - base).norm()
        })
        .fold(0.0, f64::max)
}

fn adaptive_simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn step<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (fa + 4.0 * flm + fm) * ((m - a) / 6.0);
        let right = (fm + 4.0 * frm + fb) * ((b - m) / 6.0);
        let diff = left + right - whole;
        if depth == 0 || diff.norm() <= 15.0 * tol {
            return left + right + diff / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
    step(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Gaussian overlap: closed form and quadrature of the defining integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianOverlap {
    #[serde(with = "crate::report::complex")]
    pub closed_form: Complex64,
    #[serde(with = "crate::report::complex")]
    pub quadrature: Complex64,
    /// `quadrature / closed_form`.
    #[serde(with = "crate::report::complex")]
    pub ratio: Complex64,
}

/// `det(-i(tau - conj(tau')))^{-1/2}` for scalar `tau, tau'` in `n`
/// dimensions, next to `(int_R exp(i (tau - conj(tau')) xi^2 / 2) dxi)^n`.
pub fn gaussian_overlap(tau: UpperHalfPlanePoint, tau2: UpperHalfPlanePoint, n: u32) -> GaussianOverlap {
    let s = tau.value() - tau2.value().conj();
    let closed_form = principal_sqrt(Complex64::new(0.0, -1.0) * s).powi(-(n as i32));
    let width = (2.0 * 40.0 / (tau.im() + tau2.im())).sqrt();
    let integrand = |xi: f64| (Complex64::new(0.0, 0.5) * s * xi * xi).exp();
    let one_dim = adaptive_simpson(&integrand, -width, 0.0, 1e-15) + adaptive_simpson(&integrand, 0.0, width, 1e-15);
    let quadrature = one_dim.powi(n as i32);
    GaussianOverlap { closed_form, quadrature, ratio: quadrature / closed_form }
}

/// The single constant relating the Gaussian integral to its closed form,
/// measured at `tau = tau' = i`.
pub fn calibrate_gaussian_normalization() -> f64 {
    let i = UpperHalfPlanePoint::i();
    gaussian_overlap(i, i, 1).ratio.re
}

fn theta_samples(tau: UpperHalfPlanePoint, modulus: u64, mu: u64, grid: usize) -> Vec<Complex64> {
    let params = ThetaEvalParams::new(tau, modulus, mu).expect("positive modulus");
    let h = 1.0 / grid as f64;
    (0..grid * grid)
        .into_par_iter()
        .map(|k| theta_eval(&params, (k / grid) as f64 * h, (k % grid) as f64 * h, 0.0))
        .collect()
}

/// Gram matrix `G[mu][nu] = int int theta^tau_mu conj(theta^tau'_nu)` by the
/// trapezoid rule on a `grid x grid` lattice in `[0, 1)^2`.
pub fn theta_gram(tau: UpperHalfPlanePoint, tau2: UpperHalfPlanePoint, modulus: u64, grid: usize) -> CMatrix {
    let n = modulus as usize;
    let left: Vec<Vec<Complex64>> = (0..modulus).map(|mu| theta_samples(tau, modulus, mu, grid)).collect();
    let right: Vec<Vec<Complex64>> = if tau == tau2 {
        left.clone()
    } else {
        (0..modulus).map(|mu| theta_samples(tau2, modulus, mu, grid)).collect()
    };
    let w = 1.0 / (grid * grid) as f64;
    DMatrix::from_fn(n, n, |i, j| {
        left[i].iter().zip(&right[j]).map(|(p, q)| p * q.conj()).sum::<Complex64>() * w
    })
}

/// Quadrature of one theta inner product next to its closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaInnerProduct {
    #[serde(with = "crate::report::complex")]
    pub quadrature: Complex64,
    /// `delta (-2 pi i N (tau - conj(tau')))^{-1/2}`.
    #[serde(with = "crate::report::complex")]
    pub closed_form: Complex64,
    /// `closed_form` times the Gaussian normalization constant.
    #[serde(with = "crate::report::complex")]
    pub calibrated_closed_form: Complex64,
}

pub fn theta_closed_form(tau: UpperHalfPlanePoint, tau2: UpperHalfPlanePoint, modulus: u64) -> Complex64 {
    let s = tau.value() - tau2.value().conj();
    principal_sqrt(Complex64::new(0.0, -2.0 * PI * modulus as f64) * s).inv()
}

pub fn theta_inner_product(
    tau: UpperHalfPlanePoint,
    tau2: UpperHalfPlanePoint,
    mu: u64,
    mu2: u64,
    modulus: u64,
    grid: usize,
    normalization: f64,
) -> ThetaInnerProduct {
    let left = theta_samples(tau, modulus, mu, grid);
    let right = theta_samples(tau2, modulus, mu2, grid);
    let quadrature = left.iter().zip(&right).map(|(p, q)| p * q.conj()).sum::<Complex64>() / (grid * grid) as f64;
    let closed_form = if mu % modulus == mu2 % modulus {
        theta_closed_form(tau, tau2, modulus)
    } else {
        Complex64::new(0.0, 0.0)
    };
    ThetaInnerProduct { quadrature, closed_form, calibrated_closed_form: closed_form * normalization }
}

/// `(4 pi)^{n/2} (Im tau Im tau')^{n/4} / (-2 pi i (tau - conj(tau')))^{n/2}`.
pub fn projector_composition_factor(tau: UpperHalfPlanePoint, tau2: UpperHalfPlanePoint, n: u32) -> Complex64 {
    let s = tau.value() - tau2.value().conj();
    let root = principal_sqrt(Complex64::new(0.0, -2.0 * PI) * s);
    let scalar = (4.0 * PI).sqrt() * (tau.im() * tau2.im()).powf(0.25);
    (root.inv() * scalar).powi(n as i32)
}

/// Cross Gram matrix of the unit-normalized theta bases for `tau` and `tau'`.
pub fn normalized_cross_gram(tau: UpperHalfPlanePoint, tau2: UpperHalfPlanePoint, modulus: u64, grid: usize) -> CMatrix {
    let cross = theta_gram(tau, tau2, modulus, grid);
    let left = theta_gram(tau, tau, modulus, grid);
    let right = theta_gram(tau2, tau2, modulus, grid);
    let n = modulus as usize;
    DMatrix::from_fn(n, n, |i, j| cross[(i, j)] / (left[(i, i)].re * right[(j, j)].re).sqrt())
}

/// Least-squares fit of the transformation law at random sample points.
#[derive(Clone, Debug, Serialize)]
pub struct TransformationEstimate {
    pub g: IntegerSymplecticMatrix,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub tau: UpperHalfPlanePoint,
    pub tau_pulled_back: UpperHalfPlanePoint,
    /// `C[mu][nu]` with `theta^tau_mu(g p) = sum_nu C[mu][nu] theta^tau'_nu(p)`.
    #[serde(skip)]
    pub coefficients: CMatrix,
    /// Coefficients between unit-normalized bases, `C (Im tau / Im tau')^{1/4}`.
    #[serde(skip)]
    pub normalized: CMatrix,
    /// Scalar relating `normalized` to the unit-modulus closed-form matrix.
    #[serde(with = "crate::report::option_complex")]
    pub nu: Option<Complex64>,
    /// Max residual of the fitted law relative to the largest sampled value.
    pub residual: f64,
    pub condition_number: f64,
}

/// Fit `theta^tau_mu(x', xi', x' xi'/2) = sum_nu C[mu][nu] theta^tau'_nu(x, xi, x xi/2)`
/// with `(x', xi') = (a x - b xi, -c x + d xi)` and `tau' = g^{-1} tau`.
pub fn transformation_law_estimate(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    tau: UpperHalfPlanePoint,
    samples: usize,
    seed: u64,
    conv: &Conventions,
) -> Result<TransformationEstimate> {
    let (a, b, c, d) = g.sl2_entries()?;
    if !theta_group_member(g, modulus) {
        return Err(Error::Parity(format!("{g} is outside the theta group for N = {modulus}")));
    }
    let tau2 = tau.pull_back(g)?;
    let n = modulus as usize;
    let k = samples.max(4 * n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(f64, f64)> = (0..k).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    let target: Vec<ThetaEvalParams> =
        (0..modulus).map(|mu| ThetaEvalParams::new(tau, modulus, mu)).collect::<Result<_>>()?;
    let source: Vec<ThetaEvalParams> =
        (0..modulus).map(|mu| ThetaEvalParams::new(tau2, modulus, mu)).collect::<Result<_>>()?;
    let (a, b, c, d) = (a as f64, b as f64, c as f64, d as f64);
    let basis = DMatrix::from_fn(k, n, |row, nu| {
        let (x, xi) = points[row];
        theta_eval_symmetric(&source[nu], x, xi, 0.0)
    });
    let values = DMatrix::from_fn(k, n, |row, mu| {
        let (x, xi) = points[row];
        theta_eval_symmetric(&target[mu], a * x - b * xi, -c * x + d * xi, 0.0)
    });
    let svd = basis.clone().svd(true, true);
    let (lo, hi) = svd.singular_values.iter().fold((f64::MAX, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    let condition_number = hi / lo;
    if !(condition_number <= MAX_CONDITION) {
        return Err(Error::IllConditioned(condition_number));
    }
    let solution = svd.solve(&values, 0.0).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let fit = &basis * &solution;
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let residual = (fit - &values).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale;
    let coefficients = solution.transpose();
    let normalized = &coefficients * Complex64::new((tau.im() / tau2.im()).powf(0.25), 0.0);
    let nu = transformation_law_matrix(g, modulus, conv).ok().map(|tl| {
        let phases = tl.matrix() * Complex64::new((n as f64).sqrt(), 0.0);
        let num: Complex64 = phases.iter().zip(normalized.iter()).map(|(p, q)| p.conj() * q).sum();
        let den: f64 = phases.iter().map(|p| p.norm_sqr()).sum();
        num / den
    });
    Ok(TransformationEstimate {
        g: g.clone(),
        modulus,
        tau,
        tau_pulled_back: tau2,
        coefficients,
        normalized,
        nu,
        residual,
        condition_number,
    })
}

/// Max relative residual of the fitted transformation law.
pub fn transformation_law_residual(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    tau: UpperHalfPlanePoint,
    samples: usize,
    seed: u64,
    conv: &Conventions,
) -> Result<f64> {
    Ok(transformation_law_estimate(g, modulus, tau, samples, seed, conv)?.residual)
}

/// Max entry deviation between the fitted normalized coefficients and
/// `U_{g,N}` after optimal phase alignment.
pub fn bridge_deviation(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    tau: UpperHalfPlanePoint,
    samples: usize,
    seed: u64,
    conv: &Conventions,
) -> Result<f64> {
    let estimate = transformation_law_estimate(g, modulus, tau, samples, seed, conv)?;
    let q = quantize(g, modulus, conv)?;
    Ok(phase_aligned_distance(&estimate.normalized, q.matrix()).1)
}
