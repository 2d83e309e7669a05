//! Verification sweeps, figure data and worked-example reproduction.
//!
//! Everything here is deterministic in its inputs: random samples draw from
//! `sample_rng(seed, index)`, so results do not depend on the rayon thread
//! count, and CSV rows are written in grid or sample order.

mod lemma;
mod reproduce;
mod sweep;
mod verify;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::BoundDomain;
use crate::error::{Error, Result};

pub use lemma::{lemma_grid, lemma_grid_points, LemmaGrid, LemmaPoint, LEMMA_TOL};
pub use reproduce::{
    example1_state, example1_table, example2_state, example2_table, run_example1, run_example2,
    tripartite_concurrences, ExampleRow, ExampleRun, EXAMPLE_TOL,
};
pub use sweep::{sweep, SweepRow, SweepRun};
pub use verify::{
    verify_monogamy, verify_polygamy, SampleRecord, VerifyOptions, VerifyRun, MONOGAMY_TOL,
    POLYGAMY_ORACLE_TOL,
};

/// Inclusive arithmetic grid `min, min + step, ..., <= max`; JSON form `[min, max, step]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Grid {
    min: f64,
    max: f64,
    step: f64,
}

impl Grid {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(Error::DomainError(format!("grid ({min}, {max}, {step}) is not finite")));
        }
        if step <= 0.0 {
            return Err(Error::DomainError(format!("grid step {step} must be > 0")));
        }
        if max < min {
            return Err(Error::DomainError(format!("grid max {max} < min {min}")));
        }
        Ok(Self { min, max, step })
    }

    pub fn single(value: f64) -> Result<Self> {
        Self::new(value, value, 1.0)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Points `min + i * step`; a last point within `1e-9 * step` of `max` snaps to `max`.
    pub fn points(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let v = self.min + i as f64 * self.step;
                if (v - self.max).abs() <= 1e-9 * self.step {
                    self.max
                } else {
                    v
                }
            })
            .collect()
    }
}

impl TryFrom<[f64; 3]> for Grid {
    type Error = Error;

    fn try_from(v: [f64; 3]) -> Result<Self> {
        Grid::new(v[0], v[1], v[2])
    }
}

impl From<Grid> for [f64; 3] {
    fn from(g: Grid) -> Self {
        [g.min, g.max, g.step]
    }
}

/// Named three-qubit states available to [`sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedState {
    Example1,
    Example2,
    Ghz,
    W,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSource {
    Named(NamedState),
    Random { seed: u64, count: usize },
}

/// Configuration of a parameter sweep, also accepted by `example1`/`example2`
/// for their grids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_family")]
    pub family: BoundDomain,
    /// `alpha` for monogamy, `beta` for polygamy.
    pub exponent_grid: Grid,
    /// `r` for monogamy, `s` for polygamy.
    #[serde(alias = "s_grid")]
    pub r_grid: Grid,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default = "default_k")]
    pub k: f64,
    #[serde(default = "default_source")]
    pub source: StateSource,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_family() -> BoundDomain {
    BoundDomain::Monogamy
}

fn default_k() -> f64 {
    1.0
}

fn default_source() -> StateSource {
    StateSource::Named(NamedState::Example1)
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig =
            serde_json::from_str(text).map_err(|e| Error::DomainError(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if let StateSource::Random { count: 0, .. } = self.source {
            return Err(Error::DomainError("random source needs count >= 1".into()));
        }
        Ok(())
    }

    /// Default grids of the first worked example: `alpha` in `[0, 1]` step 0.01, `r` in `[2, 5]` step 0.05.
    pub fn example1_default() -> Self {
        Self {
            family: BoundDomain::Monogamy,
            exponent_grid: Grid { min: 0.0, max: 1.0, step: 0.01 },
            r_grid: Grid { min: 2.0, max: 5.0, step: 0.05 },
            p: Some(0.5),
            q: None,
            k: std::f64::consts::SQRT_2,
            source: StateSource::Named(NamedState::Example1),
            out: None,
        }
    }

    /// Default grids of the second worked example: `beta` in `[-2, 0]` step 0.02, `s` in `[2, 5]` step 0.05.
    pub fn example2_default() -> Self {
        Self {
            family: BoundDomain::ConcurrencePolygamy,
            exponent_grid: Grid { min: -2.0, max: 0.0, step: 0.02 },
            r_grid: Grid { min: 2.0, max: 5.0, step: 0.05 },
            p: None,
            q: Some(0.5),
            k: 6f64.sqrt() / 2.0,
            source: StateSource::Named(NamedState::Example2),
            out: None,
        }
    }
}

/// Side tally for the base inequality checked alongside a theorem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseTally {
    pub label: String,
    pub violations: usize,
    pub worst_slack: Option<f64>,
}

/// Outcome of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub check: String,
    pub samples_total: usize,
    /// Samples where a branch condition (or pattern) matched.
    pub samples_applicable: usize,
    /// Applicable samples with slack below `-tolerance`.
    pub violations: usize,
    pub worst_slack: Option<f64>,
    pub runtime_seconds: f64,
    pub seed: Option<u64>,
    pub tolerance: f64,
    /// Samples whose chain step pattern the chained bound does not cover.
    #[serde(default)]
    pub unsupported_patterns: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseTally>,
    /// Coordinates of the worst slack.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub worst_location: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
}

impl VerificationSummary {
    fn new(check: impl Into<String>, tolerance: f64, seed: Option<u64>) -> Self {
        Self {
            check: check.into(),
            samples_total: 0,
            samples_applicable: 0,
            violations: 0,
            worst_slack: None,
            runtime_seconds: 0.0,
            seed,
            tolerance,
            unsupported_patterns: 0,
            base: None,
            worst_location: BTreeMap::new(),
            extra: BTreeMap::new(),
        }
    }

    /// Records one applicable slack; returns true when it is a new worst.
    fn record(&mut self, slack: f64) -> bool {
        self.samples_applicable += 1;
        if slack < -self.tolerance {
            self.violations += 1;
        }
        let worse = self.worst_slack.is_none_or(|w| slack < w);
        if worse {
            self.worst_slack = Some(slack);
        }
        worse
    }

    /// True when neither the main check nor the base check found a violation.
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.base.as_ref().is_none_or(|b| b.violations == 0)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

impl BaseTally {
    fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            violations: 0,
            worst_slack: None,
        }
    }

    fn record(&mut self, slack: f64, tol: f64) {
        if slack < -tol {
            self.violations += 1;
        }
        if self.worst_slack.is_none_or(|w| slack < w) {
            self.worst_slack = Some(slack);
        }
    }
}

/// Writes serializable rows as CSV with a header; floats use shortest round-trip form.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let file = BufWriter::new(File::create(path)?);
    let mut w = csv::Writer::from_writer(file);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_hit_endpoints() {
        let g = Grid::new(0.0, 1.0, 0.01).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 101);
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[100], 1.0);
        let r = Grid::new(2.0, 5.0, 0.05).unwrap().points();
        assert_eq!(r.len(), 61);
        assert_eq!(*r.last().unwrap(), 5.0);
        assert_eq!(Grid::single(2.5).unwrap().points(), vec![2.5]);
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(Grid::new(0.0, 1.0, 0.0).is_err());
        assert!(Grid::new(1.0, 0.0, 0.1).is_err());
        assert!(serde_json::from_str::<Grid>("[0, 1, -1]").is_err());
    }

    #[test]
    fn config_accepts_s_grid_alias() {
        let cfg = SweepConfig::from_json(
            r#"{"family": "concurrence_polygamy", "exponent_grid": [-1, 0, 0.5],
                "s_grid": [2, 3, 1], "q": 0.5, "k": 1.2,
                "source": {"random": {"seed": 3, "count": 4}}}"#,
        )
        .unwrap();
        assert_eq!(cfg.r_grid.points(), vec![2.0, 3.0]);
        assert_eq!(cfg.source, StateSource::Random { seed: 3, count: 4 });
        let bad = SweepConfig::from_json(
            r#"{"exponent_grid": [0, 1, 0.5], "r_grid": [2, 3, 1],
                "source": {"random": {"seed": 3, "count": 0}}}"#,
        );
        assert!(matches!(bad, Err(Error::DomainError(_))));
    }

    #[test]
    fn summary_record_counts() {
        let mut s = VerificationSummary::new("t", 1e-9, Some(1));
        s.samples_total = 3;
        s.record(0.1);
        s.record(-1e-10);
        s.record(-1e-3);
        assert_eq!(s.samples_applicable, 3);
        assert_eq!(s.violations, 1);
        assert_eq!(s.worst_slack, Some(-1e-3));
        assert!(!s.passed());
    }
}
