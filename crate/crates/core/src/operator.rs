//! Dense unitary operators on `C^N`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Maximum accepted `max |(U*U - I)_ij|` for a constructed operator.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// A square complex matrix with its unitarity residual recorded at
/// construction time.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOperator {
    matrix: CMatrix,
    unitarity_residual: f64,
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for UnitaryOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let mut re = Vec::with_capacity(n * n);
        let mut im = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.matrix[(i, j)];
                re.push(z.re);
                im.push(z.im);
            }
        }
        OperatorRepr { dim: n, re, im }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitaryOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = OperatorRepr::deserialize(d)?;
        if r.re.len() != r.dim * r.dim || r.im.len() != r.dim * r.dim {
            return Err(serde::de::Error::custom("entry count does not match dim"));
        }
        let m = CMatrix::from_fn(r.dim, r.dim, |i, j| {
            Complex64::new(r.re[i * r.dim + j], r.im[i * r.dim + j])
        });
        UnitaryOperator::new(m).map_err(serde::de::Error::custom)
    }
}

fn split(m: &CMatrix) -> (DMatrix<f64>, DMatrix<f64>) {
    (m.map(|z| z.re), m.map(|z| z.im))
}

/// Complex product through four real products, which take the blocked
/// real kernel instead of the generic one.
pub fn mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "dimension mismatch");
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    CMatrix::from_fn(a.nrows(), b.ncols(), |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
}

/// `m^* m`.
pub fn gram(m: &CMatrix) -> CMatrix {
    let (a, b) = split(m);
    let (at, bt) = (a.transpose(), b.transpose());
    let re = &at * &a + &bt * &b;
    let x = &at * &b;
    CMatrix::from_fn(m.ncols(), m.ncols(), |i, j| Complex64::new(re[(i, j)], x[(i, j)] - x[(j, i)]))
}

/// `max_ij |(U*U - I)_ij|`.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let g = gram(m);
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let target = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// `max_ij |m_ij|`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Best unit scalar `c` minimizing `|a - c b|_F`, and the max-entry deviation
/// `max |a - c b|` for that choice.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> (Complex64, f64) {
    let inner: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let c = if inner.norm() > 0.0 { inner / inner.norm() } else { Complex64::new(1.0, 0.0) };
    let dev = a.iter().zip(b.iter()).map(|(x, y)| (x - c * y).norm()).fold(0.0, f64::max);
    (c, dev)
}

impl UnitaryOperator {
    /// Wrap `matrix`, failing if it is not square or not unitary to
    /// [`UNITARITY_TOLERANCE`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, UNITARITY_TOLERANCE)
    }

    pub fn with_tolerance(matrix: CMatrix, tolerance: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::InvalidParameter(format!(
                "operator must be square and nonempty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let residual = unitarity_residual(&matrix);
        if !(residual <= tolerance) {
            return Err(Error::Numerical { what: "unitarity".into(), residual, tolerance });
        }
        Ok(Self { matrix, unitarity_residual: residual })
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: CMatrix::identity(dim, dim), unitarity_residual: 0.0 }
    }

    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        let n = entries.len();
        let residual = entries.iter().map(|z| (z.norm_sqr() - 1.0).abs()).fold(0.0, f64::max);
        if !(residual <= UNITARITY_TOLERANCE) || n == 0 {
            return Err(Error::Numerical {
                what: "unitarity".into(),
                residual,
                tolerance: UNITARITY_TOLERANCE,
            });
        }
        let matrix = CMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { Complex64::new(0.0, 0.0) });
        Ok(Self { matrix, unitarity_residual: residual })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.unitarity_residual
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), unitarity_residual: self.unitarity_residual }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(mul(&self.matrix, &other.matrix))
    }

    pub fn scale(&self, c: Complex64) -> Result<Self> {
        Self::new(&self.matrix * c)
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn apply(&self, v: &nalgebra::DVector<Complex64>) -> nalgebra::DVector<Complex64> {
        &self.matrix * v
    }
}
