//! Multipartite states and their tensor-structure operations.
//!
//! Tensor layout is big-endian: factor 0 is the slowest-varying index, so the
//! basis ket `|a b c>` of three qubits sits at position `4a + 2b + c`. Factor
//! indices in this module are 0-based.
//!
//! Random sampling uses ChaCha8 (`rand_chacha`), seeded from a `u64`. Each
//! independent sample owns its own ChaCha stream number, so a sweep produces
//! the same states no matter how it is split across threads. Complex Gaussian
//! amplitudes come from the Box–Muller transform applied to pairs of uniforms.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_eigvals, ComplexMatrix, DEFAULT_TOL};

/// Normalization tolerance for pure states.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance for the density-matrix invariants (Hermiticity, trace, PSD).
pub const DENSITY_TOL: f64 = 1e-10;

/// Pure state on a tensor product of `factor_dims.len()` factors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    factor_dims: Vec<usize>,
}

/// Density operator tagged with its tensor factor dimensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    factor_dims: Vec<usize>,
}

/// Bipartition of the factors into `side_a` and its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSpec {
    side_a: Vec<usize>,
    n_factors: usize,
}

/// JSON document shared by pure states (`re`/`im` of length `D`) and density
/// matrices (`re`/`im` row-major, length `D*D`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateJson {
    pub factor_dims: Vec<usize>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

fn check_dims(factor_dims: &[usize]) -> Result<usize> {
    if factor_dims.is_empty() {
        return Err(Error::InvalidState("factor_dims is empty".into()));
    }
    if let Some(d) = factor_dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidState(format!("factor dimension {d} < 2")));
    }
    Ok(factor_dims.iter().product())
}

/// Big-endian digits of `index` in the mixed radix `dims`.
pub(crate) fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

fn compose(digits: impl Iterator<Item = (usize, usize)>) -> usize {
    digits.fold(0, |acc, (digit, dim)| acc * dim + digit)
}

/// Splits every basis index into `(index over keep, index over rest)`.
fn split_indices(dims: &[usize], keep: &[usize]) -> (usize, usize, Vec<(usize, usize)>) {
    let rest: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let dim_keep: usize = keep.iter().map(|&i| dims[i]).product();
    let dim_rest: usize = rest.iter().map(|&i| dims[i]).product();
    let total: usize = dims.iter().product();
    let table = (0..total)
        .map(|idx| {
            let d = digits(idx, dims);
            let k = compose(keep.iter().map(|&i| (d[i], dims[i])));
            let r = compose(rest.iter().map(|&i| (d[i], dims[i])));
            (k, r)
        })
        .collect();
    (dim_keep, dim_rest, table)
}

impl PureState {
    /// Validated constructor; the norm must already be 1 within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex64>, factor_dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&factor_dims)?;
        if amplitudes.len() != total {
            return Err(Error::WrongDimension(format!(
                "{} amplitudes for factor_dims {:?} (product {total})",
                amplitudes.len(),
                factor_dims
            )));
        }
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(Self {
            amplitudes,
            factor_dims,
        })
    }

    /// Rescales the amplitudes to unit norm first.
    pub fn normalized(amplitudes: Vec<Complex64>, factor_dims: Vec<usize>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(amplitudes.iter().map(|a| a / norm).collect(), factor_dims)
    }

    pub fn from_real(amplitudes: &[f64], factor_dims: Vec<usize>) -> Result<Self> {
        Self::normalized(
            amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            factor_dims,
        )
    }

    /// Computational basis ket with the given digits.
    pub fn basis(factor_dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        let total = check_dims(&factor_dims)?;
        if digits.len() != factor_dims.len() || digits.iter().zip(&factor_dims).any(|(a, d)| a >= d)
        {
            return Err(Error::InvalidState(format!(
                "basis digits {digits:?} do not fit {factor_dims:?}"
            )));
        }
        let idx = compose(digits.iter().copied().zip(factor_dims.iter().copied()));
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        amps[idx] = Complex64::new(1.0, 0.0);
        Self::new(amps, factor_dims)
    }

    /// `(|00> + |11>)/sqrt(2)`.
    pub fn bell() -> Self {
        Self::from_real(&[1.0, 0.0, 0.0, 1.0], vec![2, 2]).unwrap()
    }

    /// `n`-qubit GHZ state.
    pub fn ghz(n: usize) -> Result<Self> {
        let total = 1usize << n;
        let mut amps = vec![0.0; total];
        amps[0] = 1.0;
        amps[total - 1] = 1.0;
        Self::from_real(&amps, vec![2; n])
    }

    /// `n`-qubit W state.
    pub fn w(n: usize) -> Result<Self> {
        let total = 1usize << n;
        let mut amps = vec![0.0; total];
        for k in 0..n {
            amps[1 << k] = 1.0;
        }
        Self::from_real(&amps, vec![2; n])
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        let mut dims = self.factor_dims.clone();
        dims.extend_from_slice(&other.factor_dims);
        PureState {
            amplitudes: amps,
            factor_dims: dims,
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn n_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitudes reshaped as a `dim(A) x dim(B)` matrix for the bipartition.
    pub fn bipartite_matrix(&self, part: &PartitionSpec) -> Result<DMatrix<Complex64>> {
        part.check_against(self.n_factors())?;
        let (da, db, table) = split_indices(&self.factor_dims, &part.side_a);
        let mut m = DMatrix::zeros(da, db);
        for (amp, &(a, b)) in self.amplitudes.iter().zip(&table) {
            m[(a, b)] = *amp;
        }
        Ok(m)
    }

    /// Reduced state on the factors listed in `keep` (original order preserved).
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = sorted_unique(keep);
        let n = self.n_factors();
        if keep.is_empty() || keep.len() > n || keep.iter().any(|&i| i >= n) {
            return Err(Error::InvalidPartition(format!(
                "cannot keep factors {keep:?} of a {n}-factor state"
            )));
        }
        if keep.len() == n {
            return Ok(density_from_pure(self));
        }
        let part = PartitionSpec::new(keep.clone(), n)?;
        let m = self.bipartite_matrix(&part)?;
        let rho = &m * m.adjoint();
        Ok(DensityMatrix {
            matrix: ComplexMatrix::from_dmatrix(rho),
            factor_dims: keep.iter().map(|&i| self.factor_dims[i]).collect(),
        })
    }

    /// Applies a local unitary on each factor (`unitaries[i]` acts on factor `i`).
    pub fn apply_local(&self, unitaries: &[ComplexMatrix]) -> Result<PureState> {
        if unitaries.len() != self.n_factors()
            || unitaries.iter().zip(&self.factor_dims).any(|(u, &d)| u.dim() != d)
        {
            return Err(Error::WrongDimension(
                "one unitary per factor with matching dimension required".into(),
            ));
        }
        let full = crate::linalg::kron_all(unitaries).expect("non-empty");
        let v = nalgebra::DVector::from_column_slice(&self.amplitudes);
        let out = full.as_dmatrix() * v;
        PureState::normalized(out.iter().copied().collect(), self.factor_dims.clone())
    }
}

impl DensityMatrix {
    /// Validated constructor: Hermitian, unit trace and PSD within [`DENSITY_TOL`].
    pub fn new(matrix: ComplexMatrix, factor_dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&factor_dims)?;
        if matrix.dim() != total {
            return Err(Error::WrongDimension(format!(
                "{0}x{0} matrix for factor_dims {factor_dims:?}",
                matrix.dim()
            )));
        }
        let eig = herm_eigvals(&matrix, DENSITY_TOL)?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        if let Some(&min) = eig.last() {
            if min < -DENSITY_TOL {
                return Err(Error::NotPsd {
                    eigenvalue: min,
                    tol: DENSITY_TOL,
                });
            }
        }
        Ok(Self {
            matrix,
            factor_dims,
        })
    }

    /// Convex mixture `sum_i w_i |psi_i><psi_i|` (weights renormalized).
    pub fn mixture(weights: &[f64], states: &[PureState]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::InvalidState("weights/states length mismatch".into()));
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidState("negative mixture weight".into()));
        }
        let total: f64 = weights.iter().sum();
        let dims = states[0].factor_dims.clone();
        let mut acc = ComplexMatrix::zeros(states[0].dim());
        for (w, s) in weights.iter().zip(states) {
            if s.factor_dims != dims {
                return Err(Error::WrongDimension("mixed factor_dims in mixture".into()));
            }
            acc = &acc + &ComplexMatrix::outer(&s.amplitudes).scale(w / total);
        }
        Self::new(acc, dims)
    }

    /// Maximally mixed state on the given factors.
    pub fn maximally_mixed(factor_dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&factor_dims)?;
        Self::new(
            ComplexMatrix::identity(total).scale(1.0 / total as f64),
            factor_dims,
        )
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn n_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix.as_dmatrix().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues, descending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        herm_eigvals(&self.matrix, DENSITY_TOL)
    }
}

impl PartitionSpec {
    /// `side_a` must be a nonempty proper subset of `0..n_factors`.
    pub fn new(side_a: impl IntoIterator<Item = usize>, n_factors: usize) -> Result<Self> {
        let side_a = sorted_unique(&side_a.into_iter().collect::<Vec<_>>());
        if side_a.is_empty() || side_a.len() >= n_factors || side_a.iter().any(|&i| i >= n_factors)
        {
            return Err(Error::InvalidPartition(format!(
                "side A {side_a:?} is not a nonempty proper subset of {n_factors} factors"
            )));
        }
        Ok(Self { side_a, n_factors })
    }

    /// The `A1 | A2 ... An` cut.
    pub fn first_vs_rest(n_factors: usize) -> Result<Self> {
        Self::new([0], n_factors)
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> Vec<usize> {
        (0..self.n_factors)
            .filter(|i| !self.side_a.contains(i))
            .collect()
    }

    pub fn n_factors(&self) -> usize {
        self.n_factors
    }

    pub(crate) fn check_against(&self, n_factors: usize) -> Result<()> {
        if self.n_factors != n_factors {
            return Err(Error::InvalidPartition(format!(
                "partition over {} factors applied to a {n_factors}-factor state",
                self.n_factors
            )));
        }
        Ok(())
    }
}

fn sorted_unique(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `|psi><psi|`.
pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    DensityMatrix {
        matrix: ComplexMatrix::outer(&psi.amplitudes),
        factor_dims: psi.factor_dims.clone(),
    }
}

/// Traces out the listed factors; surviving factors keep their relative order.
pub fn partial_trace(rho: &DensityMatrix, traced_out: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_factors();
    let traced = sorted_unique(traced_out);
    if traced.is_empty() || traced.len() >= n || traced.iter().any(|&i| i >= n) {
        return Err(Error::InvalidPartition(format!(
            "traced-out set {traced:?} must be a nonempty proper subset of {n} factors"
        )));
    }
    let keep: Vec<usize> = (0..n).filter(|i| !traced.contains(i)).collect();
    let (dk, dt, table) = split_indices(&rho.factor_dims, &keep);
    let mut full_of = vec![0usize; dk * dt];
    for (full, &(k, t)) in table.iter().enumerate() {
        full_of[k * dt + t] = full;
    }
    let m = rho.matrix.as_dmatrix();
    let out = DMatrix::from_fn(dk, dk, |i, j| {
        (0..dt).fold(Complex64::new(0.0, 0.0), |acc, t| {
            acc + m[(full_of[i * dt + t], full_of[j * dt + t])]
        })
    });
    Ok(DensityMatrix {
        matrix: ComplexMatrix::from_dmatrix(out),
        factor_dims: keep.iter().map(|&i| rho.factor_dims[i]).collect(),
    })
}

/// Transposes the factors in `subsystem.side_a()` and leaves the rest alone.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: &PartitionSpec) -> Result<ComplexMatrix> {
    subsystem.check_against(rho.n_factors())?;
    Ok(partial_transpose_matrix(
        &rho.matrix,
        &rho.factor_dims,
        &subsystem.side_a,
    ))
}

pub(crate) fn partial_transpose_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    transposed: &[usize],
) -> ComplexMatrix {
    let total = m.dim();
    let all_digits: Vec<Vec<usize>> = (0..total).map(|i| digits(i, dims)).collect();
    let mut out = ComplexMatrix::zeros(total);
    for i in 0..total {
        for j in 0..total {
            let mut di = all_digits[i].clone();
            let mut dj = all_digits[j].clone();
            for &f in transposed {
                std::mem::swap(&mut di[f], &mut dj[f]);
            }
            let ii = compose(di.into_iter().zip(dims.iter().copied()));
            let jj = compose(dj.into_iter().zip(dims.iter().copied()));
            out[(ii, jj)] = m[(i, j)];
        }
    }
    out
}

/// Three-qubit generalized Schmidt form with `l0, l1 e^{i theta}, l4` on
/// `|000>, |100>, |111>`, `l2` on the `A1A2`-entangling term `|110>` and
/// `l3` on the `A1A3`-entangling term `|101>`, so that
/// `C(A1A2) = 2 l0 l2` and `C(A1A3) = 2 l0 l3`.
pub fn gsd_state(lambdas: [f64; 5], theta: f64) -> Result<PureState> {
    if let Some(l) = lambdas.iter().find(|&&l| l < 0.0 || !l.is_finite()) {
        return Err(Error::InvalidState(format!("coefficient {l} must be >= 0")));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    let norm2: f64 = lambdas.iter().map(|l| l * l).sum();
    if (norm2 - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NotNormalized(norm2));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = Complex64::new(lambdas[0], 0.0);
    amps[0b100] = Complex64::from_polar(lambdas[1], theta);
    amps[0b110] = Complex64::new(lambdas[2], 0.0);
    amps[0b101] = Complex64::new(lambdas[3], 0.0);
    amps[0b111] = Complex64::new(lambdas[4], 0.0);
    PureState::normalized(amps, vec![2, 2, 2])
}

/// Generator for sample `stream` of a seeded run.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian (real and imaginary parts each N(0, 1/2)) by Box–Muller.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    // u1 in (0, 1] keeps ln finite
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    let radius = (-u1.ln()).sqrt();
    Complex64::from_polar(radius, 2.0 * PI * u2)
}

/// Haar-random pure state drawn from `rng`.
pub fn random_pure_from<R: Rng + ?Sized>(factor_dims: &[usize], rng: &mut R) -> Result<PureState> {
    let total = check_dims(factor_dims)?;
    let amps: Vec<Complex64> = (0..total).map(|_| complex_gaussian(rng)).collect();
    PureState::normalized(amps, factor_dims.to_vec())
}

/// Haar-random pure state, deterministic in `seed`.
pub fn random_pure(factor_dims: &[usize], seed: u64) -> Result<PureState> {
    random_pure_from(factor_dims, &mut sample_rng(seed, 0))
}

/// Haar-random unitary (QR of a Ginibre matrix with the phase fix on R's diagonal).
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_dmatrix(q)
}

impl TryFrom<StateJson> for PureState {
    type Error = Error;
    fn try_from(j: StateJson) -> Result<Self> {
        if j.re.len() != j.im.len() {
            return Err(Error::InvalidState("re/im length mismatch".into()));
        }
        let amps = j
            .re
            .iter()
            .zip(&j.im)
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        PureState::new(amps, j.factor_dims)
    }
}

impl From<PureState> for StateJson {
    fn from(s: PureState) -> Self {
        StateJson {
            re: s.amplitudes.iter().map(|a| a.re).collect(),
            im: s.amplitudes.iter().map(|a| a.im).collect(),
            factor_dims: s.factor_dims,
        }
    }
}

impl TryFrom<StateJson> for DensityMatrix {
    type Error = Error;
    fn try_from(j: StateJson) -> Result<Self> {
        if j.re.len() != j.im.len() {
            return Err(Error::InvalidState("re/im length mismatch".into()));
        }
        let total: usize = j.factor_dims.iter().product();
        let entries: Vec<Complex64> = j
            .re
            .iter()
            .zip(&j.im)
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        DensityMatrix::new(ComplexMatrix::from_row_major(total, &entries)?, j.factor_dims)
    }
}

impl From<DensityMatrix> for StateJson {
    fn from(d: DensityMatrix) -> Self {
        let entries = d.matrix.to_row_major();
        StateJson {
            re: entries.iter().map(|a| a.re).collect(),
            im: entries.iter().map(|a| a.im).collect(),
            factor_dims: d.factor_dims,
        }
    }
}
