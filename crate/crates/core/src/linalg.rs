//! Dense complex matrix kernel.
//!
//! Everything here works on small square matrices (at most a few hundred rows in
//! practice). Storage and the heavy lifting (Hermitian eigensolver, complex Schur
//! form, SVD) are delegated to `nalgebra`; this module pins the conventions the
//! rest of the crate relies on: descending eigenvalue order, explicit Hermiticity
//! and PSD tolerances, and clamping of rounding-level negative eigenvalues.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for Hermiticity and PSD checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest imaginary part tolerated on the spin-flip product spectrum.
pub const SPIN_FLIP_IMAG_TOL: f64 = 1e-9;

const SCHUR_MAX_ITER: usize = 10_000;

/// Dense square complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Builds a `dim x dim` matrix from row-major entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::WrongDimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn from_real_row_major(dim: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_row_major(dim, &c)
    }

    /// Wraps an existing nalgebra matrix. Panics if it is not square.
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "ComplexMatrix must be square");
        Self(m)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Self(m)
    }

    /// Outer product `|v><v|` of an (unnormalized) vector.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        Self(DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()))
    }

    /// Pauli `sigma_x`.
    pub fn pauli_x() -> Self {
        Self::from_real_row_major(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    /// Pauli `sigma_y`.
    pub fn pauli_y() -> Self {
        let i = Complex64::i();
        let z = Complex64::new(0.0, 0.0);
        Self::from_row_major(2, &[z, -i, i, z]).unwrap()
    }

    /// Pauli `sigma_z`.
    pub fn pauli_z() -> Self {
        Self::from_diagonal(&[1.0, -1.0])
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |m - m^dagger|` over entries.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        Ok(())
    }

    /// Symmetrized copy `(m + m^dagger) / 2`.
    fn hermitian_part(&self) -> DMatrix<Complex64> {
        (&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex64 {
        &mut self.0[idx]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
pub fn herm_eigvals(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    m.check_hermitian(tol)?;
    let eig = SymmetricEigen::new(m.hermitian_part());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Returns the eigenvalues in descending order together with the matching
/// eigenvectors as columns of a unitary matrix.
pub fn herm_eigh(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    m.check_hermitian(tol)?;
    let eig = SymmetricEigen::new(m.hermitian_part());
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((vals, ComplexMatrix(vecs)))
}

/// Eigenvalues of a general complex square matrix, via the complex Schur form.
///
/// Returned in the order they appear on the Schur diagonal (no sorting).
pub fn general_eigvals(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = m.dim();
    if n == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let schur = Schur::try_new(m.0.clone(), f64::EPSILON, SCHUR_MAX_ITER).ok_or_else(|| {
        Error::ConvergenceFailure(format!(
            "complex Schur iteration on a {n}x{n} matrix exceeded {SCHUR_MAX_ITER} sweeps"
        ))
    })?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Trace norm: the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    m.0.clone().singular_values().iter().sum()
}

/// Principal square root of a PSD matrix.
///
/// Eigenvalues in `[-tol, 0)` are clamped to zero before rooting.
pub fn sqrt_psd(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let (vals, vecs) = herm_eigh(m, tol)?;
    if let Some(&min) = vals.last() {
        if min < -tol {
            return Err(Error::NotPsd { eigenvalue: min, tol });
        }
    }
    let n = m.dim();
    let roots: Vec<f64> = vals.iter().map(|&v| v.max(0.0).sqrt()).collect();
    let v = &vecs.0;
    let out = DMatrix::from_fn(n, n, |i, j| {
        (0..n).fold(Complex64::new(0.0, 0.0), |acc, k| {
            acc + v[(i, k)] * v[(j, k)].conj() * roots[k]
        })
    });
    Ok(ComplexMatrix(out))
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix(a.0.kronecker(&b.0))
}

/// Kronecker product of a sequence of matrices, left to right.
pub fn kron_all<'a, I>(factors: I) -> Option<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    factors.into_iter().fold(None, |acc, m| match acc {
        None => Some(m.clone()),
        Some(a) => Some(kron(&a, m)),
    })
}
