//! Integer symplectic matrices, lattice cosets and orders mod `N`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of coset representatives we are willing to list.
pub const MAX_COSET_INDEX: u64 = 10_000_000;

/// Default iteration cap for [`arithmetic_period`].
pub const DEFAULT_PERIOD_CAP: u64 = 1_000_000;

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    entries: Vec<Vec<i64>>,
}

impl TryFrom<MatrixRepr> for IntMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        IntMatrix::from_rows(repr.entries)
    }
}

impl From<IntMatrix> for MatrixRepr {
    fn from(m: IntMatrix) -> Self {
        MatrixRepr { entries: m.rows() }
    }
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::Dimension { rows: dim, cols: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_row_major(dim: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::InvalidParameter(format!(
                "{} entries do not fill a {dim}x{dim} matrix",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1;
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim.max(1)).map(|r| r.to_vec()).take(self.dim).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: i128 = 0;
                for k in 0..n {
                    acc += self.get(i, k) as i128 * other.get(k, j) as i128;
                }
                data[i * n + j] = i64::try_from(acc).map_err(|_| Error::Overflow("matrix product"))?;
            }
        }
        Ok(IntMatrix { dim: n, data })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow("matrix difference")))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { dim: self.dim, data })
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i128> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) as i128 * v[j] as i128).sum())
            .collect()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        determinant(&to_big(self))
    }

    fn block(&self, row0: usize, col0: usize, size: usize) -> Vec<Vec<BigInt>> {
        (0..size)
            .map(|i| (0..size).map(|j| BigInt::from(self.get(row0 + i, col0 + j))).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

type BigMat = Vec<Vec<BigInt>>;

fn to_big(m: &IntMatrix) -> BigMat {
    m.rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
}

fn big_mul(a: &BigMat, b: &BigMat) -> BigMat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn big_transpose(a: &BigMat) -> BigMat {
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

fn big_sub(a: &BigMat, b: &BigMat) -> BigMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

fn big_is_identity(a: &BigMat) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

/// Bareiss fraction-free determinant.
pub(crate) fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: BigMat = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// True iff `m` is `2n x 2n`, satisfies the block identities
/// `A^T C = C^T A`, `B^T D = D^T B`, `A^T D - C^T B = I` and has determinant 1.
pub fn is_integer_symplectic(m: &IntMatrix) -> Result<bool> {
    let dim = m.dim();
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::Dimension { rows: dim, cols: dim });
    }
    let n = dim / 2;
    let (a, b, c, d) = (m.block(0, 0, n), m.block(0, n, n), m.block(n, 0, n), m.block(n, n, n));
    let (at, bt, ct, dt) = (big_transpose(&a), big_transpose(&b), big_transpose(&c), big_transpose(&d));
    let ok = big_mul(&at, &c) == big_mul(&ct, &a)
        && big_mul(&bt, &d) == big_mul(&dt, &b)
        && big_is_identity(&big_sub(&big_mul(&at, &d), &big_mul(&ct, &b)))
        && m.det().is_one();
    Ok(ok)
}

/// An element of `Sp(2n, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct IntegerSymplecticMatrix {
    matrix: IntMatrix,
}

impl TryFrom<IntMatrix> for IntegerSymplecticMatrix {
    type Error = Error;

    fn try_from(m: IntMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<IntegerSymplecticMatrix> for IntMatrix {
    fn from(g: IntegerSymplecticMatrix) -> Self {
        g.matrix
    }
}

impl fmt::Display for IntegerSymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

impl IntegerSymplecticMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if is_integer_symplectic(&matrix)? {
            Ok(Self { matrix })
        } else {
            Err(Error::NotSymplectic)
        }
    }

    /// `[[a, b], [c, d]]` with `ad - bc = 1`.
    pub fn sl2(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(IntMatrix::from_row_major(2, vec![a, b, c, d])?)
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: IntMatrix::identity(2 * n) }
    }

    /// `S = [[0, -1], [1, 0]]`.
    pub fn s() -> Self {
        Self { matrix: IntMatrix { dim: 2, data: vec![0, -1, 1, 0] } }
    }

    /// `T = [[1, 1], [0, 1]]`.
    pub fn t() -> Self {
        Self { matrix: IntMatrix { dim: 2, data: vec![1, 1, 0, 1] } }
    }

    /// The Arnold cat map `[[2, 1], [1, 1]]`.
    pub fn cat() -> Self {
        Self { matrix: IntMatrix { dim: 2, data: vec![2, 1, 1, 1] } }
    }

    pub fn half_dim(&self) -> usize {
        self.matrix.dim / 2
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.matrix.get(i, j)
    }

    /// Entries `(a, b, c, d)` of a `2 x 2` matrix.
    pub fn entries(&self) -> Option<(i64, i64, i64, i64)> {
        match self.matrix.as_slice() {
            &[a, b, c, d] => Some((a, b, c, d)),
            _ => None,
        }
    }

    pub(crate) fn sl2_entries(&self) -> Result<(i64, i64, i64, i64)> {
        self.entries()
            .ok_or_else(|| Error::InvalidParameter("operation needs a 2x2 matrix".into()))
    }

    pub fn trace(&self) -> i64 {
        (0..self.matrix.dim).map(|i| self.get(i, i)).sum()
    }

    /// `|tr g| > 2`; for `2 x 2` this rules out root-of-unity eigenvalues.
    pub fn is_hyperbolic(&self) -> bool {
        self.half_dim() == 1 && self.trace().abs() > 2
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self { matrix: self.matrix.mul(&other.matrix)? })
    }

    /// `g^{-1} = [[D^T, -B^T], [-C^T, A^T]]`.
    pub fn inverse(&self) -> Self {
        let n = self.half_dim();
        let dim = 2 * n;
        let mut data = vec![0; dim * dim];
        for i in 0..n {
            for j in 0..n {
                data[i * dim + j] = self.get(n + j, n + i);
                data[i * dim + n + j] = -self.get(j, n + i);
                data[(n + i) * dim + j] = -self.get(n + j, i);
                data[(n + i) * dim + n + j] = self.get(j, i);
            }
        }
        Self { matrix: IntMatrix { dim, data } }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::identity(self.half_dim());
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// `g - I`.
    pub fn minus_identity(&self) -> Result<IntMatrix> {
        self.matrix.sub(&IntMatrix::identity(self.matrix.dim))
    }

    /// `I - g`.
    pub fn identity_minus(&self) -> Result<IntMatrix> {
        IntMatrix::identity(self.matrix.dim).sub(&self.matrix)
    }

    /// Image of an integer vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i128> {
        self.matrix.apply(v)
    }
}

/// Every entry of `N A C^T` and `N B D^T` is even.
pub fn theta_group_member(g: &IntegerSymplecticMatrix, modulus: u64) -> bool {
    if modulus % 2 == 0 {
        return true;
    }
    let n = g.half_dim();
    // A C^T pairs rows of the top block with rows of the bottom block.
    let ac_even = (0..n).all(|i| {
        (0..n).all(|j| (0..n).map(|k| (g.get(i, k) & 1) * (g.get(n + j, k) & 1)).sum::<i64>() % 2 == 0)
    });
    let bd_even = (0..n).all(|i| {
        (0..n).all(|j| (0..n).map(|k| (g.get(i, n + k) & 1) * (g.get(n + j, n + k) & 1)).sum::<i64>() % 2 == 0)
    });
    ac_even && bd_even
}

/// Complete system of representatives for `Z^{2n} / M Z^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSystem {
    pub modulus_matrix: IntMatrix,
    /// Lower-triangular Hermite form `H = M U`, `U` unimodular.
    pub hermite: IntMatrix,
    pub representatives: Vec<Vec<i64>>,
    pub index: u64,
}

impl CosetSystem {
    /// Canonical representative of the class of `v`.
    pub fn reduce(&self, v: &[i128]) -> Vec<i64> {
        let dim = self.hermite.dim();
        let mut w = v.to_vec();
        for i in 0..dim {
            let h = self.hermite.get(i, i) as i128;
            let q = w[i].div_euclid(h);
            if q != 0 {
                for r in i..dim {
                    w[r] -= q * self.hermite.get(r, i) as i128;
                }
            }
        }
        w.into_iter().map(|x| x as i64).collect()
    }
}

/// Column-style Hermite normal form: returns `H` lower triangular with
/// positive diagonal and `0 <= H[i][j] < H[i][i]` for `j < i`.
pub fn hermite_normal_form(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.dim();
    let mut h = to_big(m);
    for i in 0..n {
        for j in i + 1..n {
            if h[i][j].is_zero() {
                continue;
            }
            let a = h[i][i].clone();
            let b = h[i][j].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (p, q) = (&a / &g, &b / &g);
            for row in h.iter_mut().skip(i) {
                let ci = row[i].clone();
                let cj = row[j].clone();
                row[i] = &x * &ci + &y * &cj;
                row[j] = &p * &cj - &q * &ci;
            }
        }
        if h[i][i].is_zero() {
            return Err(Error::Degenerate("modulus matrix is singular".into()));
        }
        if h[i][i].is_negative() {
            for row in h.iter_mut().skip(i) {
                row[i] = -row[i].clone();
            }
        }
        for j in 0..i {
            let q = h[i][j].div_floor(&h[i][i]);
            if !q.is_zero() {
                for row in h.iter_mut().skip(i) {
                    let v = &row[j] - &q * &row[i];
                    row[j] = v;
                }
            }
        }
    }
    let data = h
        .into_iter()
        .flatten()
        .map(|x| x.to_i64().ok_or(Error::Overflow("Hermite form")))
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_row_major(n, data)
}

/// Representatives of `Z^{2n} / M Z^{2n}`, one per point of the box
/// `prod [0, H_ii)` spanned by the Hermite diagonal.
pub fn coset_representatives(m: &IntMatrix) -> Result<CosetSystem> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::Degenerate("modulus matrix is singular".into()));
    }
    let index = det
        .abs()
        .to_u64()
        .filter(|&d| d <= MAX_COSET_INDEX)
        .ok_or_else(|| Error::InvalidParameter(format!("coset index {det} is too large to enumerate")))?;
    let hermite = hermite_normal_form(m)?;
    let diag: Vec<i64> = (0..m.dim()).map(|i| hermite.get(i, i)).collect();
    debug_assert_eq!(diag.iter().product::<i64>() as u64, index);

    let mut representatives = Vec::with_capacity(index as usize);
    let mut current = vec![0i64; diag.len()];
    loop {
        representatives.push(current.clone());
        let mut pos = diag.len();
        loop {
            if pos == 0 {
                return Ok(CosetSystem { modulus_matrix: m.clone(), hermite, representatives, index });
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < diag[pos] {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// Least `k >= 1` with `g^k = I (mod N)`.
pub fn arithmetic_period(g: &IntegerSymplecticMatrix, modulus: u64, cap: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    let dim = g.matrix.dim;
    let n = modulus as i128;
    let base: Vec<i128> = g.matrix.data.iter().map(|&x| (x as i128).rem_euclid(n)).collect();
    let identity: Vec<i128> = IntMatrix::identity(dim).data.iter().map(|&x| (x as i128) % n).collect();
    let mut power = base.clone();
    let mut k = 1u64;
    loop {
        if power == identity {
            return Ok(k);
        }
        if k >= cap {
            return Err(Error::PeriodNotFound { cap });
        }
        let mut next = vec![0i128; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = 0i128;
                for l in 0..dim {
                    acc = (acc + power[i * dim + l] * base[l * dim + j]) % n;
                }
                next[i * dim + j] = acc;
            }
        }
        power = next;
        k += 1;
    }
}

/// Order of `g` modulo `2N` for even `N` and modulo `N` for odd `N`.
///
/// For even `N` the Weyl operators depend on their label modulo `2N`, so
/// `U_{g,N}` raised to the plain mod-`N` order can still be a nontrivial
/// half-period translation; this power is always a scalar.
pub fn lifted_period(g: &IntegerSymplecticMatrix, modulus: u64, cap: u64) -> Result<u64> {
    let m = if modulus % 2 == 0 { modulus.checked_mul(2).ok_or(Error::Overflow("2N"))? } else { modulus };
    arithmetic_period(g, m, cap)
}

/// Generators of `SL(2, Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    S,
    SInv,
    T,
    TInv,
}

impl Generator {
    pub fn matrix(self) -> IntegerSymplecticMatrix {
        match self {
            Generator::S => IntegerSymplecticMatrix::s(),
            Generator::SInv => IntegerSymplecticMatrix::s().inverse(),
            Generator::T => IntegerSymplecticMatrix::t(),
            Generator::TInv => IntegerSymplecticMatrix::t().inverse(),
        }
    }
}

/// A word in the generators; the product is taken left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self) -> Result<IntegerSymplecticMatrix> {
        self.0
            .iter()
            .try_fold(IntegerSymplecticMatrix::identity(1), |acc, l| acc.compose(&l.matrix()))
    }

    fn push_power(&mut self, k: &BigInt, up: Generator, down: Generator) -> Result<()> {
        let count = k.abs().to_usize().ok_or(Error::Overflow("generator exponent"))?;
        let letter = if k.is_negative() { down } else { up };
        self.0.extend(std::iter::repeat(letter).take(count));
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                Generator::S => "S",
                Generator::SInv => "S^-1",
                Generator::T => "T",
                Generator::TInv => "T^-1",
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Euclidean reduction `g = T^{k1} S T^{k2} S ... R` with `R` upper triangular.
pub fn generator_decomposition(g: &IntegerSymplecticMatrix) -> Result<Word> {
    let (a, b, c, d) = g.sl2_entries()?;
    let (mut a, mut b, mut c, mut d) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
    let mut word = Word::default();
    while !c.is_zero() {
        // nearest integer to a/c; on ties take the smaller one
        let twice = BigInt::from(2) * &a + &c;
        let k = if c.is_positive() {
            (twice - BigInt::one()).div_floor(&(BigInt::from(2) * &c))
        } else {
            (-twice - BigInt::one()).div_floor(&(BigInt::from(-2) * &c))
        };
        let a1 = &a - &k * &c;
        let b1 = &b - &k * &d;
        word.push_power(&k, Generator::T, Generator::TInv)?;
        word.0.push(Generator::S);
        // S^{-1} [[a1, b1], [c, d]] = [[c, d], [-a1, -b1]]
        a = c;
        b = d;
        c = -a1;
        d = -b1;
    }
    if a.is_one() {
        word.push_power(&b, Generator::T, Generator::TInv)?;
    } else {
        word.0.push(Generator::S);
        word.0.push(Generator::S);
        word.push_power(&-b, Generator::T, Generator::TInv)?;
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn symplectic_examples() {
        assert!(is_integer_symplectic(&IntMatrix::identity(2)).unwrap());
        assert!(is_integer_symplectic(&m(&[&[2, 1], &[1, 1]])).unwrap());
        assert!(!is_integer_symplectic(&m(&[&[1, 1], &[1, 1]])).unwrap());
        assert!(matches!(is_integer_symplectic(&IntMatrix::identity(3)), Err(Error::Dimension { .. })));
    }

    #[test]
    fn four_dimensional_block_check() {
        // block diagonal embedding of two SL(2) elements
        let g = m(&[&[2, 0, 1, 0], &[0, 0, 0, -1], &[1, 0, 1, 0], &[0, 1, 0, 0]]);
        assert!(is_integer_symplectic(&g).unwrap());
        let bad = m(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!is_integer_symplectic(&bad).unwrap());
    }

    #[test]
    fn theta_examples() {
        assert!(theta_group_member(&IntegerSymplecticMatrix::s(), 3));
        assert!(theta_group_member(&IntegerSymplecticMatrix::cat(), 2));
        assert!(!theta_group_member(&IntegerSymplecticMatrix::cat(), 3));
        assert!(!theta_group_member(&IntegerSymplecticMatrix::t(), 5));
    }

    #[test]
    fn coset_examples() {
        let cat = IntegerSymplecticMatrix::cat();
        let cs = coset_representatives(&cat.minus_identity().unwrap()).unwrap();
        assert_eq!(cs.index, 1);
        assert_eq!(cs.representatives, vec![vec![0, 0]]);

        let cs = coset_representatives(&m(&[&[-1, -1], &[1, -1]])).unwrap();
        assert_eq!(cs.index, 2);
        assert_eq!(cs.representatives.len(), 2);

        assert!(matches!(coset_representatives(&IntMatrix::zeros(2)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn period_examples() {
        for n in 1..10 {
            assert_eq!(arithmetic_period(&IntegerSymplecticMatrix::identity(1), n, 10).unwrap(), 1);
        }
        assert_eq!(arithmetic_period(&IntegerSymplecticMatrix::s(), 2, 10).unwrap(), 2);
        assert_eq!(arithmetic_period(&IntegerSymplecticMatrix::s(), 3, 10).unwrap(), 4);
        assert_eq!(arithmetic_period(&IntegerSymplecticMatrix::cat(), 5, 100).unwrap(), 10);
        assert!(matches!(
            arithmetic_period(&IntegerSymplecticMatrix::cat(), 5, 3),
            Err(Error::PeriodNotFound { cap: 3 })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let s = generator_decomposition(&IntegerSymplecticMatrix::s()).unwrap();
        assert_eq!(s.letters(), &[Generator::S]);
        let t = generator_decomposition(&IntegerSymplecticMatrix::t()).unwrap();
        assert_eq!(t.letters(), &[Generator::T]);
        let cat = IntegerSymplecticMatrix::cat();
        assert_eq!(generator_decomposition(&cat).unwrap().product().unwrap(), cat);
        let minus = IntegerSymplecticMatrix::sl2(-1, 3, 0, -1).unwrap();
        assert_eq!(generator_decomposition(&minus).unwrap().product().unwrap(), minus);
    }

    #[test]
    fn inverse_and_json() {
        let g = IntegerSymplecticMatrix::sl2(7, 4, 5, 3).unwrap();
        assert_eq!(g.compose(&g.inverse()).unwrap(), IntegerSymplecticMatrix::identity(1));
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"entries":[[7,4],[5,3]]}"#);
        let back: IntegerSymplecticMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<IntegerSymplecticMatrix>(r#"{"entries":[[1,1],[1,1]]}"#).is_err());
    }
}
