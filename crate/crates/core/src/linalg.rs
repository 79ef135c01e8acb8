//! Minimal dense complex linear algebra for the 2-, 4-, 8- and 16-dimensional
//! operators used throughout the crate.
//!
//! Values are immutable: every operation returns a fresh matrix or vector.
//! Qubit 0 is the most significant bit of a basis index, so for three qubits
//! the basis runs `|000⟩, |001⟩, …, |111⟩` and `kron(a, b)` places `a` on the
//! leading qubits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default tolerance for relation checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Off-diagonal target of the Jacobi sweeps, relative to the Frobenius norm.
pub const EIGH_TARGET: f64 = 1e-12;

const MAX_SWEEPS: usize = 64;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{iθ}`
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from nested rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                op: "from_rows",
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { C64::new(0.0, 0.0) })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Zero-based entry access.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.cols.max(1)).map(<[C64]>::to_vec).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self` acts on the more significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(C64::conj).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(C64::norm_sqr).sum::<f64>().sqrt()
    }

    /// `‖a − a†‖_F / ‖a‖_F`, or the absolute residual when `a` vanishes.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        let norm = self.frobenius_norm();
        if norm > 0.0 {
            acc.sqrt() / norm
        } else {
            acc.sqrt()
        }
    }

    pub fn apply(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.dim(), 1),
            });
        }
        Ok(ComplexVector::new(
            (0..self.rows)
                .map(|i| {
                    self.data[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(v.as_slice())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.data.chunks(self.cols.max(1)) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Operator forms panic on shape mismatch, like ndarray; the checked methods
// above return errors instead.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul<&ComplexMatrix> for C64 {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        rhs.scale(self)
    }
}

impl Mul<&ComplexMatrix> for f64 {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        rhs.scale(C64::new(self, 0.0))
    }
}

/// `ab − ba`
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) - &(b * a)
}

/// `ab + ba`
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) + &(b * a)
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

/// `‖a − b‖_F`
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "frobenius_distance",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Dense complex column vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    data: Vec<C64>,
}

impl ComplexVector {
    pub fn new(data: Vec<C64>) -> Self {
        Self { data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![C64::new(0.0, 0.0); dim])
    }

    /// Unit vector `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[k] = C64::new(1.0, 0.0);
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn get(&self, i: usize) -> C64 {
        self.data[i]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(C64::norm_sqr).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.data.iter().map(|z| z * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect())
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(C64::new(1.0 / n, 0.0))
    }

    /// `|self⟩⟨other|`
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| self.data[i] * other.data[j].conj())
    }

    /// `|self⟩⟨self|`
    pub fn projector(&self) -> ComplexMatrix {
        self.outer(self)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).norm()
    }
}

/// Orthogonal projector onto the span of `vectors` (which need not be
/// orthonormal). Vectors whose residual after orthogonalisation falls below
/// `tol` are treated as linearly dependent and dropped.
pub fn span_projector(vectors: &[ComplexVector], tol: f64) -> ComplexMatrix {
    let dim = vectors.first().map_or(0, ComplexVector::dim);
    let basis = gram_schmidt(vectors, tol);
    basis
        .iter()
        .fold(ComplexMatrix::zeros(dim, dim), |acc, u| &acc + &u.projector())
}

/// Modified Gram-Schmidt with re-orthogonalisation.
pub fn gram_schmidt(vectors: &[ComplexVector], tol: f64) -> Vec<ComplexVector> {
    let mut basis: Vec<ComplexVector> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for u in &basis {
                r = r.sub(&u.scale(u.inner(&r)));
            }
        }
        let n = r.norm();
        if n > tol {
            basis.push(r.scale(C64::new(1.0 / n, 0.0)));
        }
    }
    basis
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal, same order as `eigenvalues`.
    pub eigenvectors: Vec<ComplexVector>,
}

impl EigenDecomposition {
    /// Eigenvectors as the columns of a unitary matrix.
    pub fn vectors_as_columns(&self) -> ComplexMatrix {
        let n = self.eigenvectors.len();
        let dim = self.eigenvectors.first().map_or(0, ComplexVector::dim);
        ComplexMatrix::from_fn(dim, n, |i, j| self.eigenvectors[j].get(i))
    }

    /// `V diag(f(λ)) V†`
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let dim = self.eigenvectors.first().map_or(0, ComplexVector::dim);
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .fold(ComplexMatrix::zeros(dim, dim), |acc, (&l, v)| {
                &acc + &(f(l) * &v.projector())
            })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }
}

/// Hermitian eigensolver.
///
/// The n×n Hermitian `a = S + iK` is embedded in the real symmetric 2n×2n
/// matrix `[[S, −K], [K, S]]`, which is diagonalised by cyclic Jacobi
/// rotations. Every eigenvalue of `a` appears twice in the embedding; complex
/// eigenvectors are recovered from each cluster of real ones by pivoted
/// Gram-Schmidt. Degenerate eigenvalues come back with an arbitrary
/// orthonormal basis of their eigenspace.
pub fn eigh(a: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let residual = a.hermiticity_residual();
    if residual > tol {
        return Err(Error::NotHermitian { residual });
    }
    let n = a.rows();
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok(EigenDecomposition {
            eigenvalues: vec![0.0; n],
            eigenvectors: (0..n).map(|k| ComplexVector::basis(n, k)).collect(),
        });
    }

    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            // symmetrise so the embedding is exactly symmetric
            let z = (a.get(i, j) + a.get(j, i).conj()) * 0.5;
            s[i * m + j] = z.re;
            s[(i + n) * m + (j + n)] = z.re;
            s[i * m + (j + n)] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    let (values, vectors) = jacobi_symmetric(s, m, scale * std::f64::consts::SQRT_2)?;

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]));

    // Cluster the doubled real spectrum, then pull complex vectors out of
    // each cluster.
    let cluster_tol = 1e-9 * scale;
    let mut complex_pairs: Vec<(f64, ComplexVector)> = Vec::with_capacity(n);
    let mut start = 0;
    while start < m {
        let mut end = start + 1;
        while end < m && values[order[end]] - values[order[end - 1]] <= cluster_tol {
            end += 1;
        }
        let candidates: Vec<ComplexVector> = order[start..end]
            .iter()
            .map(|&col| {
                ComplexVector::new(
                    (0..n)
                        .map(|i| c64(vectors[i * m + col], vectors[(i + n) * m + col]))
                        .collect(),
                )
            })
            .collect();
        let want = (end - start).div_ceil(2);
        for u in pivoted_gram_schmidt(candidates, want) {
            complex_pairs.push((0.0, u));
        }
        start = end;
    }

    // Gram-Schmidt across clusters guards against a cluster that returned a
    // vector overlapping another cluster's span.
    let raw: Vec<ComplexVector> = complex_pairs.into_iter().map(|(_, v)| v).collect();
    let basis = gram_schmidt(&raw, 1e-6);
    if basis.len() != n {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off: f64::NAN,
        });
    }
    let mut pairs: Vec<(f64, ComplexVector)> = basis
        .into_iter()
        .map(|v| {
            let av = a.apply(&v).expect("square matrix");
            (v.inner(&av).re, v)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Greedy Gram-Schmidt that always takes the candidate with the largest
/// remaining component, stopping after `want` vectors.
fn pivoted_gram_schmidt(mut candidates: Vec<ComplexVector>, want: usize) -> Vec<ComplexVector> {
    let mut out: Vec<ComplexVector> = Vec::with_capacity(want);
    while out.len() < want && !candidates.is_empty() {
        let (best, norm) = candidates
            .iter()
            .enumerate()
            .map(|(k, v)| (k, v.norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty");
        if norm < 0.25 {
            break;
        }
        let mut u = candidates.swap_remove(best).scale(c64(1.0 / norm, 0.0));
        for w in &out {
            u = u.sub(&w.scale(w.inner(&u)));
        }
        u = u.normalized();
        for c in candidates.iter_mut() {
            *c = c.sub(&u.scale(u.inner(c)));
        }
        out.push(u);
    }
    out
}

/// Cyclic Jacobi on a dense real symmetric matrix (row-major, `m`×`m`).
/// Returns eigenvalues (unsorted) and the eigenvector matrix (columns).
fn jacobi_symmetric(mut s: Vec<f64>, m: usize, norm: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut v = vec![0.0; m * m];
    for i in 0..m {
        v[i * m + i] = 1.0;
    }
    let off = |s: &[f64]| -> f64 {
        let mut acc = 0.0;
        for p in 0..m {
            for q in 0..m {
                if p != q {
                    acc += s[p * m + q] * s[p * m + q];
                }
            }
        }
        acc.sqrt()
    };

    let target = EIGH_TARGET * norm;
    let mut converged_at = None;
    for sweep in 0..MAX_SWEEPS {
        let current = off(&s);
        if current == 0.0 {
            break;
        }
        if current <= target {
            // one polishing sweep past the target
            match converged_at {
                Some(_) => break,
                None => converged_at = Some(sweep),
            }
        }
        for p in 0..m - 1 {
            for q in p + 1..m {
                let apq = s[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = s[p * m + p];
                let aqq = s[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let skp = s[k * m + p];
                    let skq = s[k * m + q];
                    s[k * m + p] = c * skp - sn * skq;
                    s[k * m + q] = sn * skp + c * skq;
                }
                for k in 0..m {
                    let spk = s[p * m + k];
                    let sqk = s[q * m + k];
                    s[p * m + k] = c * spk - sn * sqk;
                    s[q * m + k] = sn * spk + c * sqk;
                }
                for k in 0..m {
                    let vkp = v[k * m + p];
                    let vkq = v[k * m + q];
                    v[k * m + p] = c * vkp - sn * vkq;
                    v[k * m + q] = sn * vkp + c * vkq;
                }
            }
        }
    }
    let remaining = off(&s);
    if remaining > target {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off: remaining,
        });
    }
    Ok(((0..m).map(|i| s[i * m + i]).collect(), v))
}

/// Reduced density matrix on the qubits in `keep` (qubit 0 most significant).
/// The kept qubits keep their relative order in the output.
pub fn partial_trace(rho: &ComplexMatrix, keep: &[usize], n_qubits: usize) -> Result<ComplexMatrix> {
    let dim = 1usize
        .checked_shl(n_qubits as u32)
        .ok_or_else(|| Error::InvalidQubits {
            keep: keep.to_vec(),
            n_qubits,
        })?;
    if rho.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch {
            op: "partial_trace",
            left: rho.shape(),
            right: (dim, dim),
        });
    }
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&q| q >= n_qubits) {
        return Err(Error::InvalidQubits {
            keep: keep.to_vec(),
            n_qubits,
        });
    }
    let traced: Vec<usize> = (0..n_qubits).filter(|q| !kept.contains(q)).collect();
    let bit = |q: usize| n_qubits - 1 - q;
    let spread = |value: usize, qubits: &[usize]| -> usize {
        qubits
            .iter()
            .enumerate()
            .map(|(pos, &q)| ((value >> (qubits.len() - 1 - pos)) & 1) << bit(q))
            .sum()
    };

    let out_dim = 1 << kept.len();
    let env_dim = 1 << traced.len();
    Ok(ComplexMatrix::from_fn(out_dim, out_dim, |i, j| {
        let (ri, rj) = (spread(i, &kept), spread(j, &kept));
        (0..env_dim)
            .map(|t| {
                let e = spread(t, &traced);
                rho.get(ri | e, rj | e)
            })
            .sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(0.0, -1.0)],
            vec![c64(0.0, 1.0), c64(0.0, 0.0)],
        ])
        .unwrap()
    }

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = ComplexMatrix::from_fn(n, n, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        0.5 * &(&g + &g.dagger())
    }

    #[test]
    fn identity_products() {
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(&i4 * &i4, i4);
        let y = sigma_y();
        assert!(frobenius_distance(&(&y * &y), &ComplexMatrix::identity(2)).unwrap() < 1e-15);
        assert_eq!(ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(2)), i4);
    }

    #[test]
    fn matmul_rejects_bad_shapes() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(frobenius_distance(&a, &ComplexMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn frobenius_of_sigma_y_pair() {
        let y = sigma_y();
        let d = frobenius_distance(&y, &(-&y)).unwrap();
        // two unit-modulus entries, each differing by 2
        assert!((d - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(frobenius_distance(&y, &y).unwrap(), 0.0);
    }

    #[test]
    fn eigh_small_cases() {
        let e = eigh(&ComplexMatrix::identity(2), DEFAULT_TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0]);
        let e = eigh(&sigma_y(), DEFAULT_TOL).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigh_rejects_non_hermitian_input() {
        let a = ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(eigh(&a, DEFAULT_TOL), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            eigh(&ComplexMatrix::zeros(2, 3), DEFAULT_TOL),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        for &n in &[2usize, 4, 8] {
            for seed in 0..100 {
                let a = random_hermitian(n, seed);
                let e = eigh(&a, DEFAULT_TOL).unwrap();
                let tol = 1e-10;
                let err = frobenius_distance(&a, &e.reconstruct()).unwrap();
                assert!(err <= 10.0 * tol * a.frobenius_norm(), "n={n} seed={seed} err={err}");
                for w in e.eigenvalues.windows(2) {
                    assert!(w[0] <= w[1]);
                }
                for (j, u) in e.eigenvectors.iter().enumerate() {
                    for (k, v) in e.eigenvectors.iter().enumerate() {
                        let expect = if j == k { 1.0 } else { 0.0 };
                        assert!((u.inner(v) - c64(expect, 0.0)).norm() < tol);
                    }
                    let av = a.apply(u).unwrap();
                    let r = av.sub(&u.scale(c64(e.eigenvalues[j], 0.0))).norm();
                    assert!(r <= tol * a.frobenius_norm());
                }
            }
        }
    }

    #[test]
    fn eigh_handles_exact_degeneracy() {
        // diag(1,1,2) in a rotated basis
        let d = ComplexMatrix::from_diag(&[c64(1.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0)]);
        let u = eigh(&random_hermitian(3, 7), DEFAULT_TOL).unwrap().vectors_as_columns();
        let a = &(&u * &d) * &u.dagger();
        let e = eigh(&a, DEFAULT_TOL).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert!((e.eigenvalues[2] - 2.0).abs() < 1e-12);
        assert!(frobenius_distance(&a, &e.reconstruct()).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_product_and_ghz() {
        let s000 = ComplexVector::basis(8, 0).projector();
        let ab = partial_trace(&s000, &[0, 1], 3).unwrap();
        assert_eq!(ab, ComplexVector::basis(4, 0).projector());

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![c64(0.0, 0.0); 8];
        amps[0] = c64(r, 0.0);
        amps[7] = c64(r, 0.0);
        let ghz = ComplexVector::new(amps).projector();
        let ab = partial_trace(&ghz, &[0, 1], 3).unwrap();
        let expect = ComplexMatrix::from_diag(&[c64(0.5, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.5, 0.0)]);
        assert!(frobenius_distance(&ab, &expect).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_picks_the_right_qubits() {
        // |0⟩_A |1⟩_B |0⟩_C
        let rho = ComplexVector::basis(8, 0b010).projector();
        let b = partial_trace(&rho, &[1], 3).unwrap();
        assert_eq!(b, ComplexVector::basis(2, 1).projector());
        let ac = partial_trace(&rho, &[0, 2], 3).unwrap();
        assert_eq!(ac, ComplexVector::basis(4, 0).projector());
    }

    #[test]
    fn partial_trace_rejects_bad_input() {
        let rho = ComplexMatrix::identity(8);
        assert!(partial_trace(&rho, &[0, 3], 3).is_err());
        assert!(partial_trace(&rho, &[1, 1], 3).is_err());
        assert!(partial_trace(&ComplexMatrix::identity(4), &[0], 3).is_err());
    }

    proptest! {
        #[test]
        fn dagger_is_an_involution(entries in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 12)) {
            let a = ComplexMatrix::from_vec(3, 4, entries.iter().map(|&(r, i)| c64(r, i)).collect()).unwrap();
            prop_assert_eq!(a.dagger().dagger(), a);
        }

        #[test]
        fn kron_is_associative(
            a in proptest::collection::vec(-3i32..3, 4),
            b in proptest::collection::vec(-3i32..3, 4),
            c in proptest::collection::vec(-3i32..3, 4),
        ) {
            let m = |v: &[i32]| ComplexMatrix::from_vec(2, 2, v.iter().map(|&x| c64(x as f64, -(x as f64) / 2.0)).collect()).unwrap();
            let (a, b, c) = (m(&a), m(&b), m(&c));
            prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
        }

        #[test]
        fn partial_trace_preserves_trace_and_positivity(seed in 0u64..500, keep in prop_oneof![
            Just(vec![0usize]), Just(vec![1]), Just(vec![2]), Just(vec![0, 1]), Just(vec![1, 2]), Just(vec![0, 2])
        ]) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let psi = ComplexVector::new((0..8).map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()).normalized();
            let red = partial_trace(&psi.projector(), &keep, 3).unwrap();
            prop_assert!((red.trace() - c64(1.0, 0.0)).norm() < 1e-12);
            let e = eigh(&red, DEFAULT_TOL).unwrap();
            prop_assert!(e.eigenvalues[0] >= -1e-10);
        }
    }
}
