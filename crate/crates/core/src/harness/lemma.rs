//! Exhaustive grids over the two scalar kernel inequalities.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{Grid, VerificationSummary};
use crate::bounds::{lemma1_gap, lemma2_gap};
use crate::error::{Error, Result};

/// Gaps below `-LEMMA_TOL` count as violations.
pub const LEMMA_TOL: f64 = 1e-12;

/// Grid over `(x, w, k, t)` with `t = k * t_ratio`, `t_ratio >= 1`; `w` is
/// `p` for the first kernel and `q` for the second.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaGrid {
    pub x: Grid,
    pub weight: Grid,
    pub k: Grid,
    pub t_ratio: Grid,
}

impl LemmaGrid {
    /// `x` in `[0, 1/2]`, `p` in `[1/2, 1]`, `k` in `[1, 3]`, `t/k` in `[1, 5]`.
    pub fn lemma1_default() -> Self {
        Self {
            x: Grid::new(0.0, 0.5, 0.05).unwrap(),
            weight: Grid::new(0.5, 1.0, 0.05).unwrap(),
            k: Grid::new(1.0, 3.0, 0.25).unwrap(),
            t_ratio: Grid::new(1.0, 5.0, 0.1).unwrap(),
        }
    }

    /// `x` in `[1, 3]`, `q` in `[0.05, 1]`, `k` in `[1, 3]`, `t/k` in `[1, 5]`.
    pub fn lemma2_default() -> Self {
        Self {
            x: Grid::new(1.0, 3.0, 0.1).unwrap(),
            weight: Grid::new(0.05, 1.0, 0.05).unwrap(),
            k: Grid::new(1.0, 3.0, 0.25).unwrap(),
            t_ratio: Grid::new(1.0, 5.0, 0.1).unwrap(),
        }
    }

    pub fn default_for(which: u8) -> Result<Self> {
        match which {
            1 => Ok(Self::lemma1_default()),
            2 => Ok(Self::lemma2_default()),
            _ => Err(Error::DomainError(format!("lemma {which} does not exist; use 1 or 2"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaPoint {
    pub x: f64,
    pub weight: f64,
    pub k: f64,
    pub t: f64,
    pub gap: f64,
}

/// Every grid point with its gap, in `x, weight, k, t` nesting order.
pub fn lemma_grid_points(which: u8, grid: &LemmaGrid) -> Result<Vec<LemmaPoint>> {
    let gap: fn(f64, f64, f64, f64) -> Result<f64> = match which {
        1 => lemma1_gap,
        2 => lemma2_gap,
        _ => return Err(Error::DomainError(format!("lemma {which} does not exist; use 1 or 2"))),
    };
    if grid.t_ratio.min() < 1.0 {
        return Err(Error::DomainError(format!(
            "t_ratio grid starts at {} < 1, so t < k",
            grid.t_ratio.min()
        )));
    }
    let ratios = grid.t_ratio.points();
    let ks = grid.k.points();
    let ws = grid.weight.points();
    let mut out = Vec::with_capacity(grid.x.len() * ws.len() * ks.len() * ratios.len());
    for x in grid.x.points() {
        for &w in &ws {
            for &k in &ks {
                for &ratio in &ratios {
                    let t = if ratio == 1.0 { k } else { k * ratio };
                    out.push(LemmaPoint {
                        x,
                        weight: w,
                        k,
                        t,
                        gap: gap(t, k, w, x)?,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Minimum gap over the grid and its location; violations are gaps below
/// `-1e-12`. `extra` carries the extreme gaps on the `t = k` slice, where
/// both kernels have equality.
pub fn lemma_grid(which: u8, grid: &LemmaGrid) -> Result<VerificationSummary> {
    let start = Instant::now();
    let points = lemma_grid_points(which, grid)?;
    let mut summary = VerificationSummary::new(format!("lemma{which}_grid"), LEMMA_TOL, None);
    summary.samples_total = points.len();
    let mut diag_min = f64::INFINITY;
    let mut diag_abs = 0.0f64;
    for p in &points {
        if summary.record(p.gap) {
            summary.worst_location = [
                ("x".to_string(), p.x),
                ("weight".to_string(), p.weight),
                ("k".to_string(), p.k),
                ("t".to_string(), p.t),
            ]
            .into();
        }
        if p.t == p.k {
            diag_min = diag_min.min(p.gap);
            diag_abs = diag_abs.max(p.gap.abs());
        }
    }
    summary.extra.insert("min_gap_at_t_eq_k".into(), diag_min);
    summary.extra.insert("max_abs_gap_at_t_eq_k".into(), diag_abs);
    summary.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(summary)
}
