//! Brute-force convex roof over pure-state decompositions.
//!
//! Every ensemble of at most `L` states realizing `rho` has the form
//! `w_j = sum_i U_{ji} sqrt(mu_i) |e_i>` for an `L x L` unitary `U`, where
//! `(mu_i, |e_i>)` is the eigen-ensemble of `rho`. The search therefore runs
//! over unitaries: each restart draws a Haar-random `U` (restart 0 starts from
//! the eigen-ensemble itself) and then sweeps over all row pairs, applying the
//! best 2x2 Givens rotation found by a coarse grid followed by a compass search.
//! Rotations keep the ensemble exact, so a `Min` result is always an upper
//! bound of the true roof and a `Max` result a lower bound.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    concurrence_pure, negativity_pure, weighted_pure_value, EnsembleDecomposition, MeasureKind,
    RANK_CUTOFF,
};
use crate::error::{Error, Result};
use crate::linalg::{herm_eigh, DEFAULT_TOL};
use crate::qstate::{digits, random_unitary, sample_rng, DensityMatrix, PartitionSpec, PureState};

const THETA_GRID: usize = 8;
const PHI_GRID: usize = 4;
const MIN_STEP: f64 = 1e-7;
const SWEEP_TOL: f64 = 1e-13;
/// Moves must beat the incumbent by this relative margin, so the search
/// cannot drift along rounding-level plateaus.
const IMPROVE_TOL: f64 = 1e-14;
const MAX_COMPASS_STEPS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Min,
    Max,
}

/// Search budget for [`convex_roof`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerBudget {
    /// Number of independent restarts `R`.
    pub restarts: usize,
    /// Ensemble size cap `L`; `None` means twice the rank of the state.
    pub max_ensemble: Option<usize>,
    /// Upper limit on full pair sweeps per restart.
    pub max_sweeps: usize,
    pub seed: u64,
}

impl Default for OptimizerBudget {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_ensemble: None,
            max_sweeps: 60,
            seed: 0,
        }
    }
}

impl OptimizerBudget {
    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_ensemble(mut self, l: usize) -> Self {
        self.max_ensemble = Some(l);
        self
    }
}

/// Reshaping of a state vector into a `rows x cols` Schmidt matrix, with the
/// smaller side as rows.
struct Layout {
    rows: usize,
    cols: usize,
    /// basis index -> (row, col)
    position: Vec<(usize, usize)>,
}

impl Layout {
    fn new(dims: &[usize], part: &PartitionSpec) -> Self {
        let a = part.side_a().to_vec();
        let b = part.side_b();
        let da: usize = a.iter().map(|&i| dims[i]).product();
        let db: usize = b.iter().map(|&i| dims[i]).product();
        let (row_side, col_side, rows, cols) = if da <= db {
            (a, b, da, db)
        } else {
            (b, a, db, da)
        };
        let total: usize = dims.iter().product();
        let index = |d: &[usize], side: &[usize]| side.iter().fold(0, |acc, &f| acc * dims[f] + d[f]);
        let position = (0..total)
            .map(|idx| {
                let d = digits(idx, dims);
                (index(&d, &row_side), index(&d, &col_side))
            })
            .collect();
        Self {
            rows,
            cols,
            position,
        }
    }

    fn fill(&self, w: &[Complex64], m: &mut DMatrix<Complex64>) {
        m.fill(Complex64::new(0.0, 0.0));
        for (amp, &(r, c)) in w.iter().zip(&self.position) {
            m[(r, c)] = *amp;
        }
    }
}

/// `out = x y^dagger`.
fn cross_gram(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>, out: &mut DMatrix<Complex64>) {
    let (rows, cols) = x.shape();
    for i in 0..rows {
        for j in 0..rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..cols {
                acc += x[(i, k)] * y[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
}

struct Problem<'a> {
    kind: MeasureKind,
    layout: &'a Layout,
    sign: f64,
}

struct Scratch {
    ma: DMatrix<Complex64>,
    mb: DMatrix<Complex64>,
    gaa: DMatrix<Complex64>,
    gbb: DMatrix<Complex64>,
    gab: DMatrix<Complex64>,
    g: DMatrix<Complex64>,
}

impl Problem<'_> {
    fn scratch(&self) -> Scratch {
        let (r, c) = (self.layout.rows, self.layout.cols);
        Scratch {
            ma: DMatrix::zeros(r, c),
            mb: DMatrix::zeros(r, c),
            gaa: DMatrix::zeros(r, r),
            gbb: DMatrix::zeros(r, r),
            gab: DMatrix::zeros(r, r),
            g: DMatrix::zeros(r, r),
        }
    }

    fn row_value(&self, w: &[Complex64], s: &mut Scratch) -> f64 {
        self.layout.fill(w, &mut s.ma);
        cross_gram(&s.ma, &s.ma, &mut s.g);
        weighted_pure_value(self.kind, &s.g)
    }

    /// Loads the Gram blocks `A A^+`, `B B^+`, `A B^+` of a row pair.
    fn load_pair(&self, wa: &[Complex64], wb: &[Complex64], s: &mut Scratch) {
        self.layout.fill(wa, &mut s.ma);
        self.layout.fill(wb, &mut s.mb);
        cross_gram(&s.ma, &s.ma, &mut s.gaa);
        cross_gram(&s.mb, &s.mb, &mut s.gbb);
        cross_gram(&s.ma, &s.mb, &mut s.gab);
    }

    /// Objective (minimization form) after rotating the loaded pair by
    /// `a' = cos a - e^{i phi} sin b`, `b' = e^{-i phi} sin a + cos b`.
    ///
    /// With `H = e^{-i phi} A B^+ + e^{i phi} B A^+` the rotated Grams are
    /// `c^2 AA^+ + s^2 BB^+ -/+ c s H`.
    fn rotated_pair(&self, theta: f64, phi: f64, s: &mut Scratch) -> f64 {
        let (sin, cos) = theta.sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        let n = s.g.nrows();
        let (cc, ss, cs) = (cos * cos, sin * sin, cos * sin);
        let mut v = 0.0;
        for sign in [-1.0, 1.0] {
            let (wa, wb) = if sign < 0.0 { (cc, ss) } else { (ss, cc) };
            for i in 0..n {
                for j in 0..n {
                    let h = e.conj() * s.gab[(i, j)] + e * s.gab[(j, i)].conj();
                    s.g[(i, j)] = s.gaa[(i, j)] * wa + s.gbb[(i, j)] * wb + h * (sign * cs);
                }
            }
            v += weighted_pure_value(self.kind, &s.g);
        }
        self.sign * v
    }

    /// Best rotation for one pair; `None` if nothing beats the identity.
    fn best_rotation(&self, wa: &[Complex64], wb: &[Complex64], s: &mut Scratch) -> Option<(f64, f64, f64)> {
        self.load_pair(wa, wb, s);
        let base = self.rotated_pair(0.0, 0.0, s);
        let mut best = (base, 0.0, 0.0);
        for i in 1..THETA_GRID {
            let theta = PI * i as f64 / THETA_GRID as f64;
            for j in 0..PHI_GRID {
                let phi = 2.0 * PI * j as f64 / PHI_GRID as f64;
                let v = self.rotated_pair(theta, phi, s);
                if v < best.0 {
                    best = (v, theta, phi);
                }
            }
        }
        let mut h_theta = PI / THETA_GRID as f64 / 2.0;
        let mut h_phi = PI / PHI_GRID as f64;
        let mut iterations = 0;
        while h_theta > MIN_STEP && iterations < MAX_COMPASS_STEPS {
            iterations += 1;
            let (t0, p0) = (best.1, best.2);
            let threshold = best.0 - IMPROVE_TOL * best.0.abs().max(1.0);
            let mut moved = false;
            for (dt, dp) in [(h_theta, 0.0), (-h_theta, 0.0), (0.0, h_phi), (0.0, -h_phi)] {
                let v = self.rotated_pair(t0 + dt, p0 + dp, s);
                if v < threshold && v < best.0 {
                    best = (v, t0 + dt, p0 + dp);
                    moved = true;
                }
            }
            if !moved {
                h_theta *= 0.5;
                h_phi *= 0.5;
            }
        }
        if best.0 < base - 1e-15 * base.abs().max(1.0) {
            Some(best)
        } else {
            None
        }
    }

    fn apply(&self, rows: &mut [Vec<Complex64>], a: usize, b: usize, theta: f64, phi: f64) {
        let (sin, cos) = theta.sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        let (lo, hi) = rows.split_at_mut(a.max(b));
        let (ra, rb) = if a < b { (&mut lo[a], &mut hi[0]) } else { (&mut hi[0], &mut lo[b]) };
        for (x, y) in ra.iter_mut().zip(rb.iter_mut()) {
            (*x, *y) = (*x * cos - e * *y * sin, e.conj() * *x * sin + *y * cos);
        }
    }

    fn total(&self, rows: &[Vec<Complex64>], s: &mut Scratch) -> f64 {
        rows.iter().map(|w| self.row_value(w, s)).sum()
    }

    fn optimize(&self, rows: &mut [Vec<Complex64>], max_sweeps: usize) -> f64 {
        let mut s = self.scratch();
        let mut current = self.sign * self.total(rows, &mut s);
        for _ in 0..max_sweeps {
            for a in 0..rows.len() {
                for b in (a + 1)..rows.len() {
                    if let Some((_, theta, phi)) = self.best_rotation(&rows[a], &rows[b], &mut s) {
                        self.apply(rows, a, b, theta, phi);
                    }
                }
            }
            let next = self.sign * self.total(rows, &mut s);
            let gain = current - next;
            current = next;
            if gain < SWEEP_TOL {
                break;
            }
        }
        self.sign * current
    }
}

/// Convex-roof extension of `kind` (concurrence or negativity) on `rho`.
///
/// `Direction::Min` gives the roof (an upper estimate of it), `Direction::Max`
/// the roof of assistance (a lower estimate). Deterministic in `budget.seed`;
/// restart `k` draws from stream `k`, so a larger `restarts` only adds
/// candidates.
pub fn convex_roof(
    rho: &DensityMatrix,
    part: &PartitionSpec,
    kind: MeasureKind,
    direction: Direction,
    budget: &OptimizerBudget,
) -> Result<(f64, EnsembleDecomposition)> {
    if !matches!(kind, MeasureKind::Concurrence | MeasureKind::Negativity) {
        return Err(Error::Unsupported(format!(
            "convex roof is defined here for concurrence and negativity, not {kind:?}"
        )));
    }
    part.check_against(rho.n_factors())?;
    if budget.restarts == 0 {
        return Err(Error::OptimizerFailure("budget allows zero restarts".into()));
    }
    let dims = rho.factor_dims().to_vec();
    let dim = rho.dim();
    let (vals, vecs) = herm_eigh(rho.matrix(), DEFAULT_TOL)?;
    let support: Vec<usize> = (0..dim).filter(|&i| vals[i] > RANK_CUTOFF).collect();
    let rank = support.len();
    if rank == 0 {
        return Err(Error::OptimizerFailure("state has empty support".into()));
    }
    let v = vecs.as_dmatrix();

    if rank == 1 {
        let amps: Vec<Complex64> = (0..dim).map(|r| v[(r, support[0])]).collect();
        let psi = PureState::normalized(amps, dims)?;
        let value = match kind {
            MeasureKind::Concurrence => concurrence_pure(&psi, part)?,
            _ => negativity_pure(&psi, part)?,
        };
        return Ok((value, EnsembleDecomposition::singleton(psi)));
    }

    let ensemble = budget.max_ensemble.unwrap_or(2 * rank).max(rank);
    let layout = Layout::new(&dims, part);
    let problem = Problem {
        kind,
        layout: &layout,
        sign: match direction {
            Direction::Min => 1.0,
            Direction::Max => -1.0,
        },
    };
    let weighted: Vec<Vec<Complex64>> = support
        .iter()
        .map(|&c| (0..dim).map(|r| v[(r, c)] * vals[c].sqrt()).collect())
        .collect();

    let runs: Vec<(f64, Vec<Vec<Complex64>>)> = (0..budget.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rows = initial_rows(&weighted, ensemble, dim, budget.seed, restart as u64);
            let value = problem.optimize(&mut rows, budget.max_sweeps);
            (value, rows)
        })
        .collect();

    let mut best: Option<(f64, Vec<Vec<Complex64>>)> = None;
    for (value, rows) in runs {
        if !value.is_finite() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, _)) => problem.sign * value < problem.sign * b,
        };
        if better {
            best = Some((value, rows));
        }
    }
    let (value, rows) =
        best.ok_or_else(|| Error::OptimizerFailure("no restart produced a finite value".into()))?;
    let decomposition = to_ensemble(&rows, &dims)?;
    Ok((value.max(0.0), decomposition))
}

fn initial_rows(
    weighted: &[Vec<Complex64>],
    ensemble: usize,
    dim: usize,
    seed: u64,
    restart: u64,
) -> Vec<Vec<Complex64>> {
    let rank = weighted.len();
    if restart == 0 {
        let mut rows = weighted.to_vec();
        rows.resize(ensemble, vec![Complex64::new(0.0, 0.0); dim]);
        return rows;
    }
    let mut rng = sample_rng(seed, restart);
    let u = random_unitary(ensemble, &mut rng);
    (0..ensemble)
        .map(|j| {
            (0..dim)
                .map(|k| (0..rank).map(|i| u[(j, i)] * weighted[i][k]).sum())
                .collect()
        })
        .collect()
}

fn to_ensemble(rows: &[Vec<Complex64>], dims: &[usize]) -> Result<EnsembleDecomposition> {
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for w in rows {
        let p: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        if p <= 1e-15 {
            continue;
        }
        weights.push(p);
        states.push(PureState::normalized(w.clone(), dims.to_vec())?);
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    EnsembleDecomposition::new(weights, states)
}
