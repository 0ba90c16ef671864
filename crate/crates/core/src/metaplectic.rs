//! Quantized cat maps `U_{g,N}` as explicit unitaries.
//!
//! Two independent constructions are available: the closed-form
//! transformation-law matrix (when `gcd(c, N) = 1`) and the product of
//! Fourier and shear operators along a word in `S, T`. A third, the
//! averaging intertwiner, is kept for cross-validation. All three are
//! brought to the global phase of the word construction.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::conventions::{principal_sqrt, Conventions, ShearPhase};
use crate::error::{Error, Result};
use crate::heisenberg::{root_of_unity, WeylOperator};
use crate::operator::{CMatrix, UnitaryOperator};
use crate::symplectic::{generator_decomposition, theta_group_member, Generator, IntegerSymplecticMatrix, Word};

/// Tolerance for the cross-path and cocycle consistency checks.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-8;

/// Which construction produced a [`QuantizedMap`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    TransformationLaw,
    GeneratorWord,
    Intertwiner,
}

/// `U_{g,N}` together with its provenance and certified residuals.
#[derive(Clone, Debug, Serialize)]
pub struct QuantizedMap {
    pub g: IntegerSymplecticMatrix,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub construction: Construction,
    pub unitarity_residual: f64,
    pub egorov_residual: f64,
    pub theta_group: bool,
    pub parity_warning: Option<String>,
    pub phase_convention: Conventions,
    #[serde(rename = "matrix")]
    pub operator: UnitaryOperator,
}

impl QuantizedMap {
    pub fn matrix(&self) -> &CMatrix {
        self.operator.matrix()
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }
}

fn parity_warning(g: &IntegerSymplecticMatrix, modulus: u64) -> Option<String> {
    (!theta_group_member(g, modulus))
        .then(|| format!("{g} is outside the theta group for N = {modulus} (N*a*c or N*b*d odd)"))
}

/// Finite Fourier transform `F(N)_{mu,alpha} = N^{-1/2} exp(-2 pi i mu alpha / N)`.
pub fn quantize_s(modulus: u64) -> UnitaryOperator {
    assert!(modulus > 0, "modulus must be positive");
    let n = modulus as usize;
    let scale = 1.0 / (n as f64).sqrt();
    let m = CMatrix::from_fn(n, n, |mu, alpha| {
        root_of_unity(-2 * (mu as i128) * (alpha as i128), modulus) * scale
    });
    UnitaryOperator::new(m).expect("the finite Fourier transform is unitary")
}

/// Exponent `k` such that the `mu`-th entry of the shear raised to `power`
/// is `exp(i pi k / N)`.
fn shear_exponent(conv: &Conventions, modulus: u64, power: i128, mu: usize) -> i128 {
    let q = power * (mu as i128) * (mu as i128);
    match conv.shear_phase {
        ShearPhase::Half => conv.half_multiplier(modulus) * q,
        ShearPhase::Full => 2 * q,
    }
}

/// Diagonal shear operator quantizing `T`; warns when `N` is odd.
pub fn quantize_t(modulus: u64, conv: &Conventions) -> (UnitaryOperator, Option<String>) {
    assert!(modulus > 0, "modulus must be positive");
    let entries: Vec<Complex64> = (0..modulus as usize)
        .map(|mu| root_of_unity(shear_exponent(conv, modulus, 1, mu), modulus))
        .collect();
    let op = UnitaryOperator::diagonal(&entries).expect("unit-modulus diagonal");
    (op, parity_warning(&IntegerSymplecticMatrix::t(), modulus))
}

fn inverse_mod(c: i64, modulus: u64) -> Option<i64> {
    let n = modulus as i64;
    let e = c.rem_euclid(n).extended_gcd(&n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

/// Closed-form matrix with entry `(mu, nu)` equal to
/// `N^{-1/2} exp(i pi h [c d alpha^2 + 2 b c alpha mu + a b mu^2] / N)` at
/// `alpha = c^{-1}(nu - a mu) mod N`, where `h` is the half multiplier.
/// The global phase is left as produced by the formula.
pub fn transformation_law_matrix(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    conv: &Conventions,
) -> Result<UnitaryOperator> {
    let (a, b, c, d) = g.sl2_entries()?;
    if modulus == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    let gcd = c.gcd(&(modulus as i64));
    let c_inv = inverse_mod(c, modulus).ok_or(Error::NotApplicable { gcd })?;
    let n = modulus as usize;
    let nn = modulus as i128;
    let h = conv.half_multiplier(modulus);
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    let scale = 1.0 / (n as f64).sqrt();
    let m = CMatrix::from_fn(n, n, |mu, nu| {
        let mu = mu as i128;
        let alpha = (c_inv as i128 * (nu as i128 - a * mu)).rem_euclid(nn);
        let q = (c * d).rem_euclid(2 * nn) * alpha * alpha + 2 * b * c * alpha * mu + a * b * mu * mu;
        root_of_unity(h * q.rem_euclid(2 * nn), modulus) * scale
    });
    UnitaryOperator::new(m)
}

/// Left-multiply the columns of `m` by the operator of `word`.
fn apply_word(word: &Word, modulus: u64, conv: &Conventions, m: &mut CMatrix) {
    let n = modulus as usize;
    let scale = 1.0 / (n as f64).sqrt();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let letters = word.letters();
    let mut i = letters.len();
    while i > 0 {
        match letters[i - 1] {
            letter @ (Generator::S | Generator::SInv) => {
                let fft = if letter == Generator::S { &forward } else { &inverse };
                for col in m.as_mut_slice().chunks_mut(n) {
                    fft.process(col);
                    for z in col.iter_mut() {
                        *z *= scale;
                    }
                }
                i -= 1;
            }
            Generator::T | Generator::TInv => {
                let mut power = 0i128;
                while i > 0 {
                    match letters[i - 1] {
                        Generator::T => power += 1,
                        Generator::TInv => power -= 1,
                        _ => break,
                    }
                    i -= 1;
                }
                let phases: Vec<Complex64> = (0..n)
                    .map(|mu| root_of_unity(shear_exponent(conv, modulus, power, mu), modulus))
                    .collect();
                for col in m.as_mut_slice().chunks_mut(n) {
                    for (z, p) in col.iter_mut().zip(&phases) {
                        *z *= p;
                    }
                }
            }
        }
    }
}

/// `U_word = prod U_letter` with `F(N)` for `S` and the shear for `T`.
pub fn generator_word_operator(word: &Word, modulus: u64, conv: &Conventions) -> Result<UnitaryOperator> {
    if modulus == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    let n = modulus as usize;
    let mut m = CMatrix::identity(n, n);
    apply_word(word, modulus, conv, &mut m);
    UnitaryOperator::new(m)
}

/// Coefficient and target of `rho(a, b) e_j` in the family used for averaging:
/// integer coordinates for even `N`, the mod-`N` periodic family for odd `N`.
fn averaging_term(modulus: u64, a: i128, b: i128, j: usize) -> (usize, Complex64) {
    let nn = modulus as i128;
    let lift = if modulus % 2 == 1 { nn + 1 } else { 1 };
    let target = (j as i128 + b).rem_euclid(nn) as usize;
    (target, root_of_unity(-lift * a * b + 2 * a * (j as i128 + b), modulus))
}

/// Average `sum_v rho(g v) X rho(v)^*` over `v in (Z/N)^2` for a matrix unit
/// `X`, followed by the polar decomposition. The phase is arbitrary.
pub fn averaging_intertwiner(g: &IntegerSymplecticMatrix, modulus: u64) -> Result<UnitaryOperator> {
    let (a, b, c, d) = g.sl2_entries()?;
    let n = modulus as usize;
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    for (j, k) in (0..n).flat_map(|j| (0..n).map(move |k| (j, k))) {
        let mut p = CMatrix::zeros(n, n);
        for v0 in 0..n as i128 {
            for v1 in 0..n as i128 {
                let (t1, c1) = averaging_term(modulus, a * v0 + b * v1, c * v0 + d * v1, j);
                let (t2, c2) = averaging_term(modulus, v0, v1, k);
                p[(t1, t2)] += c1 * c2.conj();
            }
        }
        let norm = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 * n as f64 {
            continue;
        }
        let svd = p.svd(true, true);
        let sv = &svd.singular_values;
        let (lo, hi) = sv.iter().fold((f64::MAX, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
        if hi - lo > CONSISTENCY_TOLERANCE * hi {
            return Err(Error::Numerical {
                what: "averaged intertwiner is not a multiple of a unitary".into(),
                residual: (hi - lo) / hi,
                tolerance: CONSISTENCY_TOLERANCE,
            });
        }
        let u = svd.u.expect("requested U");
        let v_t = svd.v_t.expect("requested V^*");
        return UnitaryOperator::new(crate::operator::mul(&u, &v_t));
    }
    Err(Error::Degenerate("every averaged matrix unit vanished".into()))
}

/// Multiply `op` by the unit scalar that makes its first column agree with
/// the word construction applied to `e_0`.
fn align_to_word(
    op: UnitaryOperator,
    word: &Word,
    modulus: u64,
    conv: &Conventions,
) -> Result<UnitaryOperator> {
    let n = modulus as usize;
    let mut e0 = CMatrix::zeros(n, 1);
    e0[(0, 0)] = Complex64::new(1.0, 0.0);
    apply_word(word, modulus, conv, &mut e0);
    let overlap: Complex64 = op.matrix().column(0).iter().zip(e0.iter()).map(|(x, y)| x.conj() * y).sum();
    let residual = (overlap.norm() - 1.0).abs();
    if residual > CONSISTENCY_TOLERANCE {
        return Err(Error::Numerical { what: "construction paths disagree".into(), residual, tolerance: CONSISTENCY_TOLERANCE });
    }
    op.scale(overlap / overlap.norm())
}

/// Build `U_{g,N}` with the requested construction.
pub fn quantize_with(
    g: &IntegerSymplecticMatrix,
    modulus: u64,
    conv: &Conventions,
    construction: Construction,
) -> Result<QuantizedMap> {
    if modulus == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    let word = generator_decomposition(g)?;
    let operator = match construction {
        Construction::GeneratorWord => generator_word_operator(&word, modulus, conv)?,
        Construction::TransformationLaw => {
            align_to_word(transformation_law_matrix(g, modulus, conv)?, &word, modulus, conv)?
        }
        Construction::Intertwiner => align_to_word(averaging_intertwiner(g, modulus)?, &word, modulus, conv)?,
    };
    let egorov_residual = egorov_residual_of(operator.matrix(), g, modulus);
    Ok(QuantizedMap {
        g: g.clone(),
        modulus,
        construction,
        unitarity_residual: operator.unitarity_residual(),
        egorov_residual,
        theta_group: theta_group_member(g, modulus),
        parity_warning: parity_warning(g, modulus),
        phase_convention: conv.clone(),
        operator,
    })
}

/// Transformation-law path when `gcd(c, N) = 1`, generator word otherwise.
pub fn quantize(g: &IntegerSymplecticMatrix, modulus: u64, conv: &Conventions) -> Result<QuantizedMap> {
    let (_, _, c, _) = g.sl2_entries()?;
    let construction = if modulus > 0 && c.gcd(&(modulus as i64)) == 1 {
        Construction::TransformationLaw
    } else {
        Construction::GeneratorWord
    };
    quantize_with(g, modulus, conv, construction)
}

/// `max_v min_c |U rho(v) U^* - c rho(g v mod N)|_F` over `v in {(1,0), (0,1)}`.
///
/// The Frobenius norm is unitarily invariant, so this equals
/// `|U rho(v) - c rho(g v) U|_F`, which costs `O(N^2)`; it bounds the
/// max-entry norm from above.
pub fn egorov_residual_of(u: &CMatrix, g: &IntegerSymplecticMatrix, modulus: u64) -> f64 {
    let n = modulus as i64;
    [[1i64, 0], [0, 1]]
        .iter()
        .map(|v| {
            let image = g.apply(v);
            let w = [image[0].rem_euclid(n as i128) as i64, image[1].rem_euclid(n as i128) as i64];
            let lhs = WeylOperator::new(modulus, v[0], v[1]).right_mul(u);
            let rhs = WeylOperator::new(modulus, w[0], w[1]).left_mul(u);
            let inner: Complex64 = rhs.iter().zip(lhs.iter()).map(|(x, y)| x.conj() * y).sum();
            let c = if inner.norm() > 0.0 { inner / inner.norm() } else { Complex64::new(1.0, 0.0) };
            lhs.iter().zip(rhs.iter()).map(|(x, y)| (x - c * y).norm_sqr()).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max)
}

pub fn egorov_residual(q: &QuantizedMap) -> f64 {
    egorov_residual_of(q.matrix(), &q.g, q.modulus)
}

/// Unit scalar `c` with `U_g U_h = c U_{gh}`.
pub fn cocycle(
    g: &IntegerSymplecticMatrix,
    h: &IntegerSymplecticMatrix,
    modulus: u64,
    conv: &Conventions,
) -> Result<Complex64> {
    let ug = quantize(g, modulus, conv)?;
    let uh = quantize(h, modulus, conv)?;
    let ugh = quantize(&g.compose(h)?, modulus, conv)?;
    let product = crate::operator::mul(ug.matrix(), uh.matrix());
    let target = ugh.matrix();
    let inner: Complex64 = target.iter().zip(product.iter()).map(|(x, y)| x.conj() * y).sum();
    let c = inner / inner.norm();
    let residual = product.iter().zip(target.iter()).map(|(p, t)| (p - c * t).norm()).fold(0.0, f64::max);
    if residual > CONSISTENCY_TOLERANCE {
        return Err(Error::Numerical { what: "cocycle".into(), residual, tolerance: CONSISTENCY_TOLERANCE });
    }
    Ok(c)
}

/// `m(g) = 2^{-n/2} det(A + D + i B - i C)^{1/2}`, principal branch.
pub fn multiplier_m(g: &IntegerSymplecticMatrix) -> Result<Complex64> {
    let n = g.half_dim();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let re = (g.get(i, j) + g.get(n + i, n + j)) as f64;
        let im = (g.get(i, n + j) - g.get(n + i, j)) as f64;
        Complex64::new(re, im)
    });
    let det = m.determinant();
    if det.norm() == 0.0 {
        return Err(Error::Degenerate("A + D + iB - iC is singular".into()));
    }
    Ok(principal_sqrt(det) * 2f64.powf(-(n as f64) / 2.0))
}

/// The index-reversal permutation `f(x) -> f(-x)`.
pub fn parity_operator(modulus: u64) -> CMatrix {
    let n = modulus as usize;
    CMatrix::from_fn(n, n, |i, j| {
        if (i + j) % n == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::operator::phase_aligned_distance;

    fn conv() -> Conventions {
        Conventions::default()
    }

    #[test]
    fn fourier_small_cases() {
        assert!((quantize_s(1).matrix()[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let f2 = quantize_s(2);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect = CMatrix::from_row_slice(2, 2, &[r.into(), r.into(), r.into(), (-r).into()]);
        assert!((f2.matrix() - expect).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn fourier_fourth_power() {
        for n in 1..=64 {
            let f = quantize_s(n);
            let f2 = f.matrix() * f.matrix();
            let f4 = &f2 * &f2;
            let dev = (f4 - CMatrix::identity(n as usize, n as usize)).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(dev < 1e-10, "N={n} dev={dev}");
        }
    }

    #[test]
    fn shear_small_cases() {
        let (t1, w1) = quantize_t(1, &conv());
        assert!((t1.matrix()[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(w1.is_some());
        let (t2, w2) = quantize_t(2, &conv());
        assert!(w2.is_none());
        assert!((t2.matrix()[(1, 1)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(t2.unitarity_residual(), 0.0);
    }

    #[test]
    fn transformation_law_needs_invertible_c() {
        let t = IntegerSymplecticMatrix::t();
        assert!(matches!(transformation_law_matrix(&t, 4, &conv()), Err(Error::NotApplicable { gcd: 4 })));
        let q = quantize(&t, 4, &conv()).unwrap();
        assert_eq!(q.construction, Construction::GeneratorWord);
    }

    #[test]
    fn transformation_law_for_s_is_fourier() {
        for n in 1..20 {
            let tl = transformation_law_matrix(&IntegerSymplecticMatrix::s(), n, &conv()).unwrap();
            let (_, dev) = phase_aligned_distance(tl.matrix(), quantize_s(n).matrix());
            assert!(dev < 1e-12, "N={n}");
        }
    }

    #[test]
    fn cat_map_at_five() {
        let q = quantize(&IntegerSymplecticMatrix::cat(), 5, &conv()).unwrap();
        assert_eq!(q.construction, Construction::TransformationLaw);
        assert!(q.unitarity_residual <= 1e-10);
        assert!(q.egorov_residual <= 1e-10);
        assert!(q.parity_warning.is_some());
    }

    #[test]
    fn identity_and_parity() {
        for n in 1..10 {
            let q = quantize(&IntegerSymplecticMatrix::identity(1), n, &conv()).unwrap();
            assert!((q.matrix() - CMatrix::identity(n as usize, n as usize)).iter().all(|z| z.norm() < 1e-14));
            let minus = IntegerSymplecticMatrix::s().compose(&IntegerSymplecticMatrix::s()).unwrap();
            let q = quantize(&minus, n, &conv()).unwrap();
            let (_, dev) = phase_aligned_distance(q.matrix(), &parity_operator(n));
            assert!(dev < 1e-12);
        }
    }

    #[test]
    fn paths_agree_for_cat_map() {
        let g = IntegerSymplecticMatrix::cat();
        for n in [2u64, 3, 5, 8, 9, 16] {
            let tl = quantize_with(&g, n, &conv(), Construction::TransformationLaw).unwrap();
            let word = quantize_with(&g, n, &conv(), Construction::GeneratorWord).unwrap();
            let avg = quantize_with(&g, n, &conv(), Construction::Intertwiner).unwrap();
            let (_, d1) = phase_aligned_distance(tl.matrix(), word.matrix());
            let (_, d2) = phase_aligned_distance(avg.matrix(), word.matrix());
            assert!(d1 <= 1e-8 && d2 <= 1e-8, "N={n}: {d1} {d2}");
            assert!((tl.matrix() - word.matrix()).iter().all(|z| z.norm() < 1e-8));
        }
    }

    #[test]
    fn egorov_examples() {
        let q = quantize(&IntegerSymplecticMatrix::identity(1), 6, &conv()).unwrap();
        assert!(q.egorov_residual < 1e-14);
        let q = quantize(&IntegerSymplecticMatrix::s(), 4, &conv()).unwrap();
        assert!(egorov_residual(&q) <= 1e-12);
    }

    #[test]
    fn full_shear_breaks_egorov() {
        let bad = conv().with_shear_phase(ShearPhase::Full);
        let q = quantize(&IntegerSymplecticMatrix::t(), 6, &bad).unwrap();
        assert!(q.egorov_residual > 1e-3);
        let t2 = IntegerSymplecticMatrix::t().pow(2).unwrap();
        let q = quantize(&t2, 6, &conv()).unwrap();
        let (_, dev) = phase_aligned_distance(q.matrix(), quantize_t(6, &bad).0.matrix());
        assert!(dev < 1e-12);
    }

    #[test]
    fn cocycle_examples() {
        let id = IntegerSymplecticMatrix::identity(1);
        let c = cocycle(&id, &id, 5, &conv()).unwrap();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let s = IntegerSymplecticMatrix::s();
        let c = cocycle(&s, &s.inverse(), 7, &conv()).unwrap();
        assert!((c.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multiplier_examples() {
        let one = multiplier_m(&IntegerSymplecticMatrix::identity(1)).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let s = multiplier_m(&IntegerSymplecticMatrix::s()).unwrap();
        let expect = Complex64::from_polar(1.0, -PI / 4.0);
        assert!((s - expect).norm() < 1e-15);
        let cat = multiplier_m(&IntegerSymplecticMatrix::cat()).unwrap();
        assert!((cat - Complex64::new(1.5f64.sqrt(), 0.0)).norm() < 1e-15);
    }
}
