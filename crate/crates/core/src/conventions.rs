//! Phase and sign conventions shared by every construction.
//!
//! Reports embed a [`Conventions`] value so that numbers can be reproduced
//! by an implementation that makes different choices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Sign `s` in `rho(a, b) = exp(s * i pi a b / N) U^a V^b`.
pub const WEYL_ORDERING_SIGN: i64 = -1;

/// Symplectic form on integer vectors `(x, xi)`.
pub const SYMPLECTIC_FORM: &str = "sigma((x,xi),(x',xi')) = <xi,x'> - <xi',x>";

/// Diagonal phase attached to the shear `T = [[1,1],[0,1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ShearPhase {
    /// `exp(i pi mu^2 / N)`, intertwines the Weyl operators with `T`.
    Half,
    /// `exp(2 pi i mu^2 / N)`, which quantizes `T^2` instead.
    Full,
}

/// Record of all calibration choices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub symplectic_form: String,
    pub weyl_ordering: String,
    pub weyl_ordering_sign: i64,
    pub shear_phase: ShearPhase,
    /// For odd `N` replace `1/2` by `(N+1)/2` so that quadratic phases are
    /// periodic mod `N`.
    pub odd_modulus_lift: bool,
    pub sqrt_branch: String,
    /// Constant ratio formula/direct of the fixed-point trace for `S`.
    #[serde(with = "crate::report::option_complex")]
    pub trace_phase: Option<Complex64>,
    /// Ratio of the Gaussian integral to its closed form at `tau = tau' = i`.
    pub gaussian_normalization: Option<f64>,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            symplectic_form: SYMPLECTIC_FORM.to_string(),
            weyl_ordering: "rho(a,b) = exp(-i pi a b / N) U^a V^b".to_string(),
            weyl_ordering_sign: WEYL_ORDERING_SIGN,
            shear_phase: ShearPhase::Half,
            odd_modulus_lift: true,
            sqrt_branch: "principal, arg in (-pi, pi]".to_string(),
            trace_phase: None,
            gaussian_normalization: None,
        }
    }
}

impl Conventions {
    /// Default conventions with both calibration constants measured.
    pub fn calibrated() -> Result<Self> {
        Self::default().calibrate()
    }

    /// Fill in the calibration constants by running the reference checks.
    pub fn calibrate(mut self) -> Result<Self> {
        self.trace_phase = Some(crate::trace::calibrate_trace_phase(&self)?);
        self.gaussian_normalization = Some(crate::theta::calibrate_gaussian_normalization());
        Ok(self)
    }

    pub fn with_shear_phase(mut self, phase: ShearPhase) -> Self {
        self.shear_phase = phase;
        self
    }

    /// Exponent multiplier `k` such that the quadratic phase `1/2 * q` is
    /// realized as `exp(i pi k q / N)`.
    pub fn half_multiplier(&self, modulus: u64) -> i128 {
        if self.odd_modulus_lift && modulus % 2 == 1 {
            modulus as i128 + 1
        } else {
            1
        }
    }
}

/// Square root with the argument of `z` taken in `(-pi, pi]`.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    let mut theta = z.im.atan2(z.re);
    if theta <= -std::f64::consts::PI {
        theta = std::f64::consts::PI;
    }
    if z.im == 0.0 && z.re < 0.0 {
        theta = std::f64::consts::PI;
    }
    Complex64::from_polar(z.norm().sqrt(), theta / 2.0)
}
