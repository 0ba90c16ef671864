//! Fixed-point trace formula and Gauss sums.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::conventions::{principal_sqrt, Conventions};
use crate::error::{Error, Result};
use crate::heisenberg::root_of_unity;
use crate::metaplectic::quantize;
use crate::symplectic::{coset_representatives, CosetSystem, IntMatrix, IntegerSymplecticMatrix};

/// Below this modulus a trace is treated as zero and has no phase.
pub const PHASE_FLOOR: f64 = 1e-9;

/// Exact inverse of a nonsingular integer matrix.
fn rational_inverse(m: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    let n = m.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(BigInt::from(m.get(i, j)))
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Degenerate("I - g is singular".into()))?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let v = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// The coset sum for a fixed non-degenerate `g`, reusable across `N`.
#[derive(Clone, Debug)]
pub struct TraceFormula {
    cosets: CosetSystem,
    inverse: Vec<Vec<BigRational>>,
    det: i64,
    half: usize,
}

impl TraceFormula {
    pub fn new(g: &IntegerSymplecticMatrix) -> Result<Self> {
        let i_minus_g = g.identity_minus()?;
        let det = i_minus_g
            .det()
            .to_i64()
            .ok_or(Error::Overflow("det(I - g)"))?;
        if det == 0 {
            return Err(Error::Degenerate(format!("det(I - g) = 0 for {g}")));
        }
        let cosets = coset_representatives(&g.minus_identity()?)?;
        let inverse = rational_inverse(&i_minus_g)?;
        Ok(Self { cosets, inverse, det, half: g.half_dim() })
    }

    pub fn cosets(&self) -> &CosetSystem {
        &self.cosets
    }

    /// `det(I - g)`.
    pub fn determinant(&self) -> i64 {
        self.det
    }

    /// Exponent `N (<m, n> - sigma((m, n), (I - g)^{-1} (m, n)))` reduced mod 2.
    pub fn exponent(&self, modulus: u64, v: &[i64]) -> BigRational {
        let n = self.half;
        let w: Vec<BigRational> = self
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (r, &x)| acc + r * BigRational::from_integer(BigInt::from(x)))
            })
            .collect();
        let int = |x: i64| BigRational::from_integer(BigInt::from(x));
        let mut e = BigRational::zero();
        for i in 0..n {
            e += int(v[i]) * int(v[n + i]);
            // sigma(v, w) = <v_xi, w_x> - <w_xi, v_x>
            e -= int(v[n + i]) * &w[i] - &w[n + i] * int(v[i]);
        }
        e *= int(modulus as i64);
        let two = BigInt::from(2);
        let numer = e.numer().mod_floor(&(&two * e.denom()));
        BigRational::new(numer, e.denom().clone())
    }

    /// Single coset term `exp(i pi * exponent)`.
    pub fn summand(&self, modulus: u64, v: &[i64]) -> Complex64 {
        let e = self.exponent(modulus, v);
        let x = e.numer().to_f64().unwrap_or(0.0) / e.denom().to_f64().unwrap_or(1.0);
        Complex64::from_polar(1.0, PI * x)
    }

    pub fn evaluate(&self, modulus: u64) -> Complex64 {
        let sum: Complex64 = self.cosets.representatives.iter().map(|v| self.summand(modulus, v)).sum();
        sum / principal_sqrt(Complex64::new(self.det as f64, 0.0))
    }
}

/// `det(I - g)^{-1/2} sum_cosets exp(i pi N [<m,n> - sigma((m,n), (I-g)^{-1}(m,n))])`.
pub fn trace_theorem_e(g: &IntegerSymplecticMatrix, modulus: u64) -> Result<Complex64> {
    Ok(TraceFormula::new(g)?.evaluate(modulus))
}

/// Both sides of the quadratic Gauss sum identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussSum {
    #[serde(rename = "N")]
    pub modulus: u64,
    #[serde(with = "crate::report::complex")]
    pub direct: Complex64,
    #[serde(with = "crate::report::complex")]
    pub closed_form: Complex64,
}

/// `N^{-1/2} sum_r exp(2 pi i r^2 / N)` and `2^{-1/2} e^{i pi/4} (1 + (-i)^N)`.
pub fn gauss_sum(modulus: u64) -> GaussSum {
    assert!(modulus > 0, "modulus must be positive");
    let nn = modulus as i128;
    let direct: Complex64 = (0..nn).map(|r| root_of_unity(2 * ((r * r) % nn), modulus)).sum::<Complex64>()
        / (modulus as f64).sqrt();
    let minus_i_pow = match modulus % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    let closed_form = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, PI / 4.0) * (1.0 + minus_i_pow);
    GaussSum { modulus, direct, closed_form }
}

/// Formula versus direct trace of the constructed operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub g: IntegerSymplecticMatrix,
    #[serde(rename = "N")]
    pub modulus: u64,
    #[serde(rename = "formula", with = "crate::report::complex")]
    pub formula_value: Complex64,
    #[serde(rename = "direct", with = "crate::report::complex")]
    pub direct_value: Complex64,
    /// `formula / direct` normalized; `None` when either side vanishes.
    #[serde(rename = "phase_ratio", with = "crate::report::option_complex")]
    pub phase_discrepancy: Option<Complex64>,
    pub magnitude_error: f64,
}

pub fn trace_compare(g: &IntegerSymplecticMatrix, modulus: u64, conv: &Conventions) -> Result<TraceReport> {
    let formula = TraceFormula::new(g)?;
    let q = quantize(g, modulus, conv)?;
    Ok(compare_with(&formula, g, modulus, q.operator.trace()))
}

pub(crate) fn compare_with(
    formula: &TraceFormula,
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    direct_value: Complex64,
) -> TraceReport {
    let formula_value = formula.evaluate(modulus);
    let phase_discrepancy = (formula_value.norm() > PHASE_FLOOR && direct_value.norm() > PHASE_FLOOR).then(|| {
        let r = formula_value / direct_value;
        r / r.norm()
    });
    TraceReport {
        g: g.clone(),
        modulus,
        formula_value,
        direct_value,
        phase_discrepancy,
        magnitude_error: (formula_value.norm() - direct_value.norm()).abs(),
    }
}

/// Phase ratio formula/direct for `S` at `N = 1`, the reference value
/// against which all other ratios are read.
pub fn calibrate_trace_phase(conv: &Conventions) -> Result<Complex64> {
    trace_compare(&IntegerSymplecticMatrix::s(), 1, conv)?
        .phase_discrepancy
        .ok_or_else(|| Error::Degenerate("reference trace vanished".into()))
}
