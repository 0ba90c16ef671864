//! The finite Heisenberg group over `Z/N` and its Weyl operators.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conventions::WEYL_ORDERING_SIGN;
use crate::error::{Error, Result};
use crate::operator::{CMatrix, UnitaryOperator};

/// `exp(i pi k / N)` with `k` reduced mod `2N` first.
pub(crate) fn root_of_unity(k: i128, modulus: u64) -> Complex64 {
    let two_n = 2 * modulus as i128;
    let k = k.rem_euclid(two_n);
    Complex64::from_polar(1.0, PI * k as f64 / modulus as f64)
}

/// Element `(a, b, exp(i pi j / N))` of the finite Heisenberg group.
///
/// The central part is stored as the exponent `j mod 2N`; for even `N`
/// only even `j` occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElement {
    #[serde(rename = "N")]
    pub modulus: u64,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub phase_exponent: u64,
}

impl HeisenbergElement {
    pub fn new(modulus: u64, a: Vec<i64>, b: Vec<i64>, phase_exponent: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        if a.len() != b.len() {
            return Err(Error::InvalidParameter("a and b must have equal length".into()));
        }
        let n = modulus as i64;
        let j = phase_exponent.rem_euclid(2 * n) as u64;
        if modulus % 2 == 0 && j % 2 == 1 {
            return Err(Error::InvalidParameter(format!(
                "exp(i pi {j}/{modulus}) is not of the form +-exp(2 pi i k/N)"
            )));
        }
        Ok(Self {
            modulus,
            a: a.into_iter().map(|x| x.rem_euclid(n)).collect(),
            b: b.into_iter().map(|x| x.rem_euclid(n)).collect(),
            phase_exponent: j,
        })
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        Self { modulus, a: vec![0; n], b: vec![0; n], phase_exponent: 0 }
    }

    pub fn phase(&self) -> Complex64 {
        root_of_unity(self.phase_exponent as i128, self.modulus)
    }

    pub fn inverse(&self) -> Self {
        let n = self.modulus as i64;
        Self {
            modulus: self.modulus,
            a: self.a.iter().map(|x| (-x).rem_euclid(n)).collect(),
            b: self.b.iter().map(|x| (-x).rem_euclid(n)).collect(),
            phase_exponent: (2 * self.modulus - self.phase_exponent) % (2 * self.modulus),
        }
    }
}

/// `sigma((x, xi), (x', xi')) = <xi, x'> - <xi', x>` on integer vectors.
pub fn symplectic_form(x: &[i64], xi: &[i64], x2: &[i64], xi2: &[i64]) -> i128 {
    let dot = |u: &[i64], v: &[i64]| u.iter().zip(v).map(|(p, q)| *p as i128 * *q as i128).sum::<i128>();
    dot(xi, x2) - dot(xi2, x)
}

/// Group law: add the vectors and multiply the phases by `exp(2 pi i sigma / N)`.
pub fn heisenberg_multiply(x: &HeisenbergElement, y: &HeisenbergElement) -> Result<HeisenbergElement> {
    if x.modulus != y.modulus {
        return Err(Error::ModulusMismatch { left: x.modulus, right: y.modulus });
    }
    if x.a.len() != y.a.len() {
        return Err(Error::InvalidParameter("elements have different ranks".into()));
    }
    let n = x.modulus as i64;
    let sigma = symplectic_form(&x.a, &x.b, &y.a, &y.b);
    let two_n = 2 * x.modulus as i128;
    let j = (x.phase_exponent as i128 + y.phase_exponent as i128 + 2 * sigma).rem_euclid(two_n);
    Ok(HeisenbergElement {
        modulus: x.modulus,
        a: x.a.iter().zip(&y.a).map(|(p, q)| (p + q).rem_euclid(n)).collect(),
        b: x.b.iter().zip(&y.b).map(|(p, q)| (p + q).rem_euclid(n)).collect(),
        phase_exponent: j as u64,
    })
}

/// `x y x^{-1} y^{-1}`.
pub fn commutator(x: &HeisenbergElement, y: &HeisenbergElement) -> Result<HeisenbergElement> {
    let xy = heisenberg_multiply(x, y)?;
    let xyx = heisenberg_multiply(&xy, &x.inverse())?;
    heisenberg_multiply(&xyx, &y.inverse())
}

/// `(-1)^{<m, n>}` for `h = (m, n)`.
///
/// # Panics
/// If `h` has odd length.
pub fn splitting_phase(h: &[i64]) -> Complex64 {
    assert!(h.len() % 2 == 0, "splitting phase needs an even-length vector");
    let n = h.len() / 2;
    let dot: i128 = (0..n).map(|i| h[i] as i128 * h[n + i] as i128).sum();
    if dot.rem_euclid(2) == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(-1.0, 0.0)
    }
}

/// The Weyl operator `rho(a, b) = exp(s i pi a b / N) U^a V^b` kept in
/// monomial form: column `j` is `coefficient(j) * e_{j + b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    pub modulus: u64,
    pub a: i64,
    pub b: i64,
}

impl WeylOperator {
    pub fn new(modulus: u64, a: i64, b: i64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self { modulus, a, b }
    }

    /// Target index of basis vector `j`.
    pub fn target(&self, j: usize) -> usize {
        (j as i64 + self.b).rem_euclid(self.modulus as i64) as usize
    }

    /// Exponent of `exp(i pi k / N)` carried by column `j`.
    fn exponent(&self, j: usize) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        WEYL_ORDERING_SIGN as i128 * a * b + 2 * a * (j as i128 + b)
    }

    pub fn coefficient(&self, j: usize) -> Complex64 {
        root_of_unity(self.exponent(j), self.modulus)
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let n = self.modulus as usize;
        let mut out = DVector::zeros(n);
        for j in 0..n {
            out[self.target(j)] = self.coefficient(j) * v[j];
        }
        out
    }

    /// `rho * m`.
    pub fn left_mul(&self, m: &CMatrix) -> CMatrix {
        let n = self.modulus as usize;
        let mut out = CMatrix::zeros(n, m.ncols());
        for j in 0..n {
            let c = self.coefficient(j);
            let t = self.target(j);
            for k in 0..m.ncols() {
                out[(t, k)] = c * m[(j, k)];
            }
        }
        out
    }

    /// `m * rho`.
    pub fn right_mul(&self, m: &CMatrix) -> CMatrix {
        let n = self.modulus as usize;
        let mut out = CMatrix::zeros(m.nrows(), n);
        for j in 0..n {
            let c = self.coefficient(j);
            let t = self.target(j);
            out.column_mut(j).copy_from(&(m.column(t) * c));
        }
        out
    }

    pub fn to_matrix(&self) -> CMatrix {
        let n = self.modulus as usize;
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            m[(self.target(j), j)] = self.coefficient(j);
        }
        m
    }
}

/// `rho_N(a, b)` as a dense unitary.
pub fn weyl_operator(modulus: u64, a: i64, b: i64) -> UnitaryOperator {
    UnitaryOperator::new(WeylOperator::new(modulus, a, b).to_matrix())
        .expect("monomial matrices with unit coefficients are unitary")
}

/// Cocycle `psi(v, w)` with `rho(v) rho(w) = psi(v, w) rho(v + w)`.
pub fn weyl_cocycle(modulus: u64, v: [i64; 2], w: [i64; 2]) -> Complex64 {
    let s = WEYL_ORDERING_SIGN as i128;
    let (a, b) = (v[0] as i128, v[1] as i128);
    let (a2, b2) = (w[0] as i128, w[1] as i128);
    root_of_unity(-s * (a * b2 + a2 * b) - 2 * a2 * b, modulus)
}

/// Max entry deviation of `rho(v) rho(w) - psi(v, w) rho(v + w)` over the
/// sampled pairs, computed with dense matrices.
pub fn projective_rep_check(modulus: u64, pairs: &[([i64; 2], [i64; 2])]) -> f64 {
    pairs
        .iter()
        .map(|&(v, w)| {
            let lhs = weyl_operator(modulus, v[0], v[1]).matrix() * weyl_operator(modulus, w[0], w[1]).matrix();
            let rhs = weyl_operator(modulus, v[0] + w[0], v[1] + w[1]).into_matrix() * weyl_cocycle(modulus, v, w);
            (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn central_elements_commute() {
        let z = HeisenbergElement::new(5, vec![0], vec![0], 3).unwrap();
        let e = HeisenbergElement::identity(5, 1);
        assert_eq!(heisenberg_multiply(&e, &z).unwrap(), z);
    }

    #[test]
    fn product_phase_and_commutator() {
        for n in 2..9u64 {
            let x = HeisenbergElement::new(n, vec![1], vec![0], 0).unwrap();
            let y = HeisenbergElement::new(n, vec![0], vec![1], 0).unwrap();
            let p = heisenberg_multiply(&x, &y).unwrap();
            // sigma((1,0),(0,1)) = -1
            assert!(close(p.phase(), Complex64::from_polar(1.0, -2.0 * PI / n as f64)));
            let c = commutator(&x, &y).unwrap();
            assert_eq!((c.a[0], c.b[0]), (0, 0));
            assert!(close(c.phase(), Complex64::from_polar(1.0, -4.0 * PI / n as f64)));
            assert!(close(c.phase().powu(2 * n as u32), Complex64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn modulus_mismatch() {
        let x = HeisenbergElement::identity(3, 1);
        let y = HeisenbergElement::identity(4, 1);
        assert!(matches!(heisenberg_multiply(&x, &y), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn odd_exponent_rejected_for_even_modulus() {
        assert!(HeisenbergElement::new(4, vec![0], vec![0], 1).is_err());
        assert!(HeisenbergElement::new(3, vec![0], vec![0], 1).is_ok());
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting_phase(&[0, 0]), Complex64::new(1.0, 0.0));
        assert_eq!(splitting_phase(&[1, 1]), Complex64::new(-1.0, 0.0));
        assert_eq!(splitting_phase(&[2, 3]), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn weyl_examples() {
        for n in 1..12u64 {
            let id = weyl_operator(n, 0, 0);
            assert_eq!(id.matrix(), &CMatrix::identity(n as usize, n as usize));
            let u = weyl_operator(n, 1, 0);
            for x in 0..n as usize {
                let expect = Complex64::from_polar(1.0, 2.0 * PI * x as f64 / n as f64);
                assert!(close(u.matrix()[(x, x)], expect));
            }
            let v = weyl_operator(n, 0, 1);
            let lhs = u.matrix() * v.matrix();
            let rhs = v.matrix() * u.matrix() * Complex64::from_polar(1.0, 2.0 * PI / n as f64);
            assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn inverse_is_negation() {
        let n = 7;
        for a in -3..4 {
            for b in -3..4 {
                let r = weyl_operator(n, a, b);
                let m = weyl_operator(n, -a, -b);
                let diff = m.matrix() - r.matrix().adjoint();
                assert!(diff.iter().all(|z| z.norm() < 1e-12));
            }
        }
    }

    #[test]
    fn monomial_products_match_dense() {
        let n = 6;
        let w = WeylOperator::new(n, 2, 5);
        let m = CMatrix::from_fn(6, 6, |i, j| Complex64::new(i as f64, j as f64 * 0.5));
        let dense = w.to_matrix();
        assert!((w.left_mul(&m) - &dense * &m).iter().all(|z| z.norm() < 1e-12));
        assert!((w.right_mul(&m) - &m * &dense).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn projective_check_small() {
        assert_eq!(projective_rep_check(1, &[([1, 2], [3, 4])]), 0.0);
        let basis = [[0, 0], [1, 0], [0, 1], [1, 1]];
        let mut pairs = Vec::new();
        for v in basis {
            for w in basis {
                pairs.push((v, w));
            }
        }
        assert!(projective_rep_check(4, &pairs) <= 1e-12);
        assert_eq!(projective_rep_check(5, &[([0, 0], [0, 0])]), 0.0);
    }
}
