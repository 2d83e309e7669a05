//! Entanglement measures: closed forms and the convex-roof dispatcher.
//!
//! Negativity follows the `||rho^{T_A}||_tr - 1` convention (no factor 1/2), so
//! on a pure two-qubit state it coincides with the concurrence.

mod roof;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    general_eigvals, herm_eigh, herm_eigvals, kron, sqrt_psd, trace_norm, ComplexMatrix,
    DEFAULT_TOL, SPIN_FLIP_IMAG_TOL,
};
use crate::qstate::{partial_transpose, DensityMatrix, PartitionSpec, PureState, StateJson};

pub use roof::{convex_roof, Direction, OptimizerBudget};

/// Measure values in `[-ZERO_CLAMP, 0)` are rounding noise and read as 0.
pub const ZERO_CLAMP: f64 = 1e-12;

/// Eigenvalues of a density matrix at or below this are treated as exact zeros
/// when factorizing `rho = X X^dagger`.
pub(crate) const RANK_CUTOFF: f64 = 1e-14;

/// Agreement required between the two pure-state negativity formulas.
pub const NEGATIVITY_FORMS_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Concurrence,
    Negativity,
    /// Convex-roof extended negativity.
    Cren,
    NegativityOfAssistance,
    ConcurrenceOfAssistance,
    EntanglementOfFormation,
}

/// Either a pure state or a density matrix.
#[derive(Clone, Copy, Debug)]
pub enum StateRef<'a> {
    Pure(&'a PureState),
    Mixed(&'a DensityMatrix),
}

impl<'a> From<&'a PureState> for StateRef<'a> {
    fn from(s: &'a PureState) -> Self {
        StateRef::Pure(s)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(s: &'a DensityMatrix) -> Self {
        StateRef::Mixed(s)
    }
}

/// Pure-state ensemble `{p_i, |phi_i>}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleDecomposition {
    pub weights: Vec<f64>,
    pub states: Vec<PureState>,
}

impl EnsembleDecomposition {
    pub fn new(weights: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if weights.is_empty() || weights.len() != states.len() {
            return Err(Error::InvalidState(
                "ensemble needs one weight per state".into(),
            ));
        }
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidState("ensemble weight < 0".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!("weights sum to {total}")));
        }
        let dims = states[0].factor_dims();
        if states.iter().any(|s| s.factor_dims() != dims) {
            return Err(Error::WrongDimension("ensemble states differ in factor_dims".into()));
        }
        Ok(Self { weights, states })
    }

    pub fn singleton(psi: PureState) -> Self {
        Self {
            weights: vec![1.0],
            states: vec![psi],
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `sum_i p_i |phi_i><phi_i|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = self.states[0].dim();
        self.weights
            .iter()
            .zip(&self.states)
            .fold(ComplexMatrix::zeros(dim), |acc, (w, s)| {
                &acc + &ComplexMatrix::outer(s.amplitudes()).scale(*w)
            })
    }

    /// Ensemble average of a pure-state measure.
    pub fn average<F>(&self, mut f: F) -> Result<f64>
    where
        F: FnMut(&PureState) -> Result<f64>,
    {
        let mut acc = 0.0;
        for (w, s) in self.weights.iter().zip(&self.states) {
            acc += w * f(s)?;
        }
        Ok(acc)
    }

    /// JSON form: `{"weights": [...], "states": [{factor_dims, re, im}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let states: Vec<StateJson> = self.states.iter().cloned().map(StateJson::from).collect();
        serde_json::json!({ "weights": self.weights, "states": states })
    }
}

fn clamp_measure(v: f64) -> f64 {
    if v < ZERO_CLAMP {
        0.0
    } else {
        v
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.factor_dims() != [2, 2] {
        return Err(Error::WrongDimension(format!(
            "two-qubit formula applied to factor_dims {:?}",
            rho.factor_dims()
        )));
    }
    Ok(())
}

/// Eigenvalues of the reduced state on side A, descending and clamped at 0.
fn schmidt_weights(psi: &PureState, part: &PartitionSpec) -> Result<Vec<f64>> {
    let m = psi.bipartite_matrix(part)?;
    let (rows, cols) = m.shape();
    let gram = if rows <= cols {
        &m * m.adjoint()
    } else {
        m.adjoint() * &m
    };
    let vals = herm_eigvals(&ComplexMatrix::from_dmatrix(gram), DEFAULT_TOL)?;
    Ok(vals.into_iter().map(|v| v.max(0.0)).collect())
}

fn reduced_side_a(psi: &PureState, part: &PartitionSpec) -> Result<ComplexMatrix> {
    let m = psi.bipartite_matrix(part)?;
    Ok(ComplexMatrix::from_dmatrix(&m * m.adjoint()))
}

/// `C(|psi>) = sqrt(2 (1 - tr rho_A^2))`.
pub fn concurrence_pure(psi: &PureState, part: &PartitionSpec) -> Result<f64> {
    let rho_a = reduced_side_a(psi, part)?;
    let purity: f64 = rho_a.as_dmatrix().iter().map(|z| z.norm_sqr()).sum();
    Ok((2.0 * clamp_measure(1.0 - purity)).sqrt())
}

fn sigma_yy() -> ComplexMatrix {
    kron(&ComplexMatrix::pauli_y(), &ComplexMatrix::pauli_y())
}

/// Square roots of the spin-flip spectrum, `lambda_1 >= ... >= lambda_4`.
///
/// With `rho = X X^dagger` (X built from the eigenvectors of rho with nonzero
/// weight), the nonzero eigenvalues of `rho (Y⊗Y) rho^* (Y⊗Y)` are the squared
/// singular values of the symmetric matrix `X^T (Y⊗Y) X`.
pub fn spin_flip_roots(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let (vals, vecs) = herm_eigh(rho.matrix(), DEFAULT_TOL)?;
    let kept: Vec<usize> = (0..4).filter(|&i| vals[i] > RANK_CUTOFF).collect();
    if kept.is_empty() {
        return Err(Error::InvalidState("density matrix has no support".into()));
    }
    let v = vecs.as_dmatrix();
    let x = DMatrix::from_fn(4, kept.len(), |r, c| v[(r, kept[c])] * vals[kept[c]].sqrt());
    let tau = x.transpose() * sigma_yy().as_dmatrix() * &x;
    let mut sv: Vec<f64> = tau.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let mut out = [0.0; 4];
    for (slot, s) in out.iter_mut().zip(sv) {
        *slot = s;
    }
    Ok(out)
}

/// Same roots taken literally from the spectrum of `rho (Y⊗Y) rho^* (Y⊗Y)`.
///
/// Real parts are clamped at 0 before rooting; an imaginary part above
/// [`SPIN_FLIP_IMAG_TOL`] is an error. Near-zero eigenvalues carry rounding noise
/// of order 1e-16 which becomes ~1e-8 after the square root, so this route is
/// kept as an independent check rather than the production path.
pub fn spin_flip_roots_via_product(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let yy = sigma_yy();
    let rho_tilde = &(&yy * &rho.matrix().conj()) * &yy;
    let product = rho.matrix() * &rho_tilde;
    let eig = general_eigvals(&product)?;
    let mut roots = Vec::with_capacity(4);
    for z in eig {
        if z.im.abs() > SPIN_FLIP_IMAG_TOL {
            return Err(Error::InternalInconsistency(format!(
                "spin-flip product eigenvalue {z} has a non-negligible imaginary part"
            )));
        }
        roots.push(z.re.max(0.0).sqrt());
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok([roots[0], roots[1], roots[2], roots[3]])
}

/// Two-qubit concurrence, `max(l1 - l2 - l3 - l4, 0)`.
pub fn concurrence_wootters(rho: &DensityMatrix) -> Result<f64> {
    let l = spin_flip_roots(rho)?;
    Ok(clamp_measure(l[0] - l[1] - l[2] - l[3]))
}

/// Two-qubit concurrence of assistance, `l1 + l2 + l3 + l4`.
///
/// Because pure two-qubit negativity equals concurrence, this is also the
/// two-qubit negativity of assistance.
pub fn concurrence_of_assistance_2q(rho: &DensityMatrix) -> Result<f64> {
    Ok(spin_flip_roots(rho)?.iter().sum())
}

/// `||rho^{T_A}||_tr - 1`.
pub fn negativity(rho: &DensityMatrix, part: &PartitionSpec) -> Result<f64> {
    let pt = partial_transpose(rho, part)?;
    Ok(clamp_measure(trace_norm(&pt) - 1.0))
}

/// Pure-state negativity, evaluated two ways that must agree:
/// `2 sum_{i<j} s_i s_j` over Schmidt coefficients `s_i`, and
/// `(tr sqrt(rho_A))^2 - 1` through the matrix square root.
pub fn negativity_pure(psi: &PureState, part: &PartitionSpec) -> Result<f64> {
    let (pairwise, trace_form) = negativity_pure_forms(psi, part)?;
    if (pairwise - trace_form).abs() > NEGATIVITY_FORMS_TOL {
        return Err(Error::InternalInconsistency(format!(
            "negativity forms disagree: {pairwise} vs {trace_form}"
        )));
    }
    Ok(clamp_measure(pairwise))
}

/// Both pure-state negativity forms, unclamped: `(pairwise, trace_sqrt)`.
pub fn negativity_pure_forms(psi: &PureState, part: &PartitionSpec) -> Result<(f64, f64)> {
    let coeffs: Vec<f64> = schmidt_weights(psi, part)?
        .into_iter()
        .map(f64::sqrt)
        .collect();
    let mut pairwise = 0.0;
    for i in 0..coeffs.len() {
        for j in (i + 1)..coeffs.len() {
            pairwise += coeffs[i] * coeffs[j];
        }
    }
    pairwise *= 2.0;
    let root = sqrt_psd(&reduced_side_a(psi, part)?, DEFAULT_TOL)?;
    let tr = root.trace().re;
    Ok((pairwise, tr * tr - 1.0))
}

fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Two-qubit entanglement of formation `h((1 + sqrt(1 - C^2)) / 2)`, in bits.
pub fn eof_2q(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence_wootters(rho)?.min(1.0);
    Ok(binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0))
}

/// Von Neumann entropy (bits) of the side-A reduction of a pure state.
pub fn entanglement_entropy(psi: &PureState, part: &PartitionSpec) -> Result<f64> {
    Ok(schmidt_weights(psi, part)?
        .into_iter()
        .filter(|&w| w > 0.0)
        .map(|w| -w * w.log2())
        .sum::<f64>()
        .max(0.0))
}

fn is_two_qubit_cut(rho: &DensityMatrix, part: &PartitionSpec) -> bool {
    rho.factor_dims() == [2, 2] && part.n_factors() == 2
}

/// Generic measure evaluation.
///
/// Closed forms are used where they exist (pure states; two-qubit Wootters for
/// concurrence and CREN; two-qubit spin-flip trace for the assisted measures);
/// remaining combinations fall back to [`convex_roof`] with `budget`.
pub fn measure(
    state: StateRef<'_>,
    part: &PartitionSpec,
    kind: MeasureKind,
    budget: &OptimizerBudget,
) -> Result<f64> {
    use MeasureKind::*;
    match state {
        StateRef::Pure(psi) => match kind {
            Concurrence | ConcurrenceOfAssistance => concurrence_pure(psi, part),
            Negativity | Cren | NegativityOfAssistance => negativity_pure(psi, part),
            EntanglementOfFormation => entanglement_entropy(psi, part),
        },
        StateRef::Mixed(rho) => {
            part.check_against(rho.n_factors())?;
            let two_qubit = is_two_qubit_cut(rho, part);
            match kind {
                Negativity => negativity(rho, part),
                Concurrence | Cren if two_qubit => concurrence_wootters(rho),
                ConcurrenceOfAssistance | NegativityOfAssistance if two_qubit => {
                    concurrence_of_assistance_2q(rho)
                }
                EntanglementOfFormation if two_qubit => eof_2q(rho),
                Concurrence => Ok(convex_roof(rho, part, Concurrence, Direction::Min, budget)?.0),
                Cren => Ok(convex_roof(rho, part, Negativity, Direction::Min, budget)?.0),
                ConcurrenceOfAssistance => {
                    Ok(convex_roof(rho, part, Concurrence, Direction::Max, budget)?.0)
                }
                NegativityOfAssistance => {
                    Ok(convex_roof(rho, part, Negativity, Direction::Max, budget)?.0)
                }
                EntanglementOfFormation => Err(Error::Unsupported(format!(
                    "entanglement of formation for mixed factor_dims {:?}",
                    rho.factor_dims()
                ))),
            }
        }
    }
}

/// Per-row weighted measure used by the optimizer and the closed forms alike.
///
/// For an unnormalized vector `w = sqrt(p) |phi>` returns `p * f(|phi>)`.
pub(crate) fn weighted_pure_value(kind: MeasureKind, gram: &DMatrix<Complex64>) -> f64 {
    let n = gram.nrows();
    if n == 2 {
        // both measures reduce to 2 sqrt(det) on a qubit side
        let det = gram[(0, 0)].re * gram[(1, 1)].re - gram[(0, 1)].norm_sqr();
        return 2.0 * det.max(0.0).sqrt();
    }
    let p: f64 = (0..n).map(|i| gram[(i, i)].re).sum();
    match kind {
        MeasureKind::Concurrence => {
            let tr2: f64 = gram.iter().map(|z| z.norm_sqr()).sum();
            (2.0 * (p * p - tr2).max(0.0)).sqrt()
        }
        MeasureKind::Negativity => {
            let eig = nalgebra::SymmetricEigen::new(gram.clone());
            let s: f64 = eig.eigenvalues.iter().map(|&e| e.max(0.0).sqrt()).sum();
            (s * s - p).max(0.0)
        }
        _ => unreachable!("only concurrence and negativity have pure-state forms here"),
    }
}
