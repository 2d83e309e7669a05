//! The two worked three-qubit examples and their figure grids.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use super::{BaseTally, Grid, VerificationSummary};
use crate::bounds::{mono_pair_bound, poly_pair_bound_concurrence, BoundParams};
use crate::error::{Error, Result};
use crate::measures::{concurrence_pure, concurrence_wootters};
use crate::qstate::{gsd_state, PartitionSpec, PureState};

/// Pointwise tolerance of the example orderings.
pub const EXAMPLE_TOL: f64 = 1e-12;

/// `lambda0 = lambda2 = 1/2`, `lambda3 = sqrt(2)/2`.
pub fn example1_state() -> PureState {
    gsd_state([0.5, 0.0, 0.5, 0.5f64.sqrt(), 0.0], 0.0).expect("normalized")
}

/// `lambda0 = lambda3 = 1/2`, `lambda1 = lambda2 = lambda4 = sqrt(6)/6`.
pub fn example2_state() -> PureState {
    let s6 = 6f64.sqrt() / 6.0;
    gsd_state([0.5, s6, s6, 0.5, s6], 0.0).expect("normalized")
}

/// `(C(A1|A2A3), C(A1A2), C(A1A3))` of a three-qubit pure state.
pub fn tripartite_concurrences(psi: &PureState) -> Result<(f64, f64, f64)> {
    if psi.factor_dims() != [2, 2, 2] {
        return Err(Error::WrongDimension(format!(
            "expected three qubits, got factor_dims {:?}",
            psi.factor_dims()
        )));
    }
    let joint = concurrence_pure(psi, &PartitionSpec::first_vs_rest(3)?)?;
    let c12 = concurrence_wootters(&psi.reduced(&[0, 1])?)?;
    let c13 = concurrence_wootters(&psi.reduced(&[0, 2])?)?;
    Ok((joint, c12, c13))
}

/// One grid point. For the monogamy example `zprime = z1 - z2`, for the
/// polygamy example `zprime = z2 - z1`; both are the improvement over the
/// comparator and are claimed nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExampleRow {
    pub exponent: f64,
    pub power: f64,
    pub lhs: f64,
    pub z1: f64,
    pub z2: f64,
    pub zprime: f64,
}

#[derive(Clone, Debug)]
pub struct ExampleRun {
    pub header: [&'static str; 6],
    pub rows: Vec<ExampleRow>,
    pub summary: VerificationSummary,
}

impl ExampleRun {
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        w.write_record(self.header)?;
        for r in &self.rows {
            w.serialize((r.exponent, r.power, r.lhs, r.z1, r.z2, r.zprime))?;
        }
        w.flush()?;
        Ok(())
    }

    fn into_asserted(self) -> Result<Self> {
        if self.summary.passed() {
            return Ok(self);
        }
        let b = self.summary.base.as_ref().expect("examples carry a comparator tally");
        Err(Error::AssertionFailure(format!(
            "{}: {} bound violations (worst slack {:?}), {} comparator violations (worst {:?}); worst at {:?}",
            self.summary.check,
            self.summary.violations,
            self.summary.worst_slack,
            b.violations,
            b.worst_slack,
            self.summary.worst_location
        )))
    }
}

fn check_grid(name: &str, grid: &Grid, lo: f64, hi: f64) -> Result<()> {
    if grid.min() < lo || grid.max() > hi {
        return Err(Error::DomainError(format!(
            "{name} grid [{}, {}] leaves [{lo}, {hi}]",
            grid.min(),
            grid.max()
        )));
    }
    Ok(())
}

/// Orientation of the two checks for one row.
enum Ordering {
    /// `lhs >= z1 >= z2`
    Descending,
    /// `lhs <= z1 <= z2`
    Ascending,
}

fn tabulate(
    check: &str,
    header: [&'static str; 6],
    exponents: &Grid,
    powers: &Grid,
    ordering: Ordering,
    mut eval: impl FnMut(f64, f64) -> Result<(f64, f64, f64)>,
) -> Result<ExampleRun> {
    let start = Instant::now();
    let mut summary = VerificationSummary::new(check, EXAMPLE_TOL, None);
    let mut comparator = BaseTally::new(match ordering {
        Ordering::Descending => "z1 >= z2",
        Ordering::Ascending => "z1 <= z2",
    });
    let mut rows = Vec::with_capacity(exponents.len() * powers.len());
    for e in exponents.points() {
        for pw in powers.points() {
            let (lhs, z1, z2) = eval(e, pw)?;
            let (bound_slack, zprime) = match ordering {
                Ordering::Descending => (lhs - z1, z1 - z2),
                Ordering::Ascending => (z1 - lhs, z2 - z1),
            };
            summary.samples_total += 1;
            if summary.record(bound_slack) {
                summary.worst_location = [(header[0].into(), e), (header[1].into(), pw)].into();
            }
            comparator.record(zprime, EXAMPLE_TOL);
            rows.push(ExampleRow {
                exponent: e,
                power: pw,
                lhs,
                z1,
                z2,
                zprime,
            });
        }
    }
    let min_zprime = rows.iter().map(|r| r.zprime).fold(f64::INFINITY, f64::min);
    summary.extra.insert("min_zprime".into(), min_zprime);
    if let Some(worst) = rows.iter().min_by(|a, b| a.zprime.total_cmp(&b.zprime)) {
        summary.extra.insert(format!("min_zprime_{}", header[0]), worst.exponent);
        summary.extra.insert(format!("min_zprime_{}", header[1]), worst.power);
    }
    summary.base = Some(comparator);
    summary.runtime_seconds = start.elapsed().as_secs_f64();
    Ok(ExampleRun {
        header,
        rows,
        summary,
    })
}

/// Monogamy example grid without asserting the orderings.
///
/// `lhs = C(A1|A2A3)^alpha`, `z1` the bound with `p = 1/2`, `k = sqrt 2`,
/// `z2` the `p = 1` comparator, all from concurrences computed on the state.
pub fn example1_table(alpha: &Grid, r: &Grid) -> Result<ExampleRun> {
    check_grid("alpha", alpha, 0.0, 1.0)?;
    check_grid("r", r, 2.0, f64::INFINITY)?;
    let (joint, c12, c13) = tripartite_concurrences(&example1_state())?;
    let k = std::f64::consts::SQRT_2;
    tabulate(
        "example1",
        ["alpha", "r", "lhs", "z1", "z2", "zprime"],
        alpha,
        r,
        Ordering::Descending,
        |a, r| {
            let rep = mono_pair_bound(c12, c13, &BoundParams::monogamy(k, 0.5, a, r))?.against(joint)?;
            Ok((rep.lhs.unwrap_or(f64::NAN), rep.bound, rep.comparator_bound.unwrap_or(f64::NAN)))
        },
    )
}

/// Polygamy example grid without asserting the orderings.
///
/// `lhs = C(A1|A2A3)^beta`, `z1` the bound with `q = 1/2`, `k = sqrt(6)/2`,
/// `z2 = (C12^beta + C13^beta) / 2`.
pub fn example2_table(beta: &Grid, s: &Grid) -> Result<ExampleRun> {
    check_grid("beta", beta, f64::NEG_INFINITY, 0.0)?;
    check_grid("s", s, 2.0, 5.0)?;
    let (joint, c12, c13) = tripartite_concurrences(&example2_state())?;
    let k = 6f64.sqrt() / 2.0;
    tabulate(
        "example2",
        ["beta", "s", "lhs", "z1", "z2", "zprime"],
        beta,
        s,
        Ordering::Ascending,
        |b, s| {
            let rep = poly_pair_bound_concurrence(c12, c13, &BoundParams::polygamy(k, 0.5, b, s))?
                .against(joint)?;
            Ok((rep.lhs.unwrap_or(f64::NAN), rep.bound, rep.comparator_bound.unwrap_or(f64::NAN)))
        },
    )
}

/// Tabulates the monogamy example, writes `out` if given, then asserts
/// `lhs >= z1 >= z2 - 1e-12` at every point.
pub fn run_example1(alpha: &Grid, r: &Grid, out: Option<&Path>) -> Result<ExampleRun> {
    let run = example1_table(alpha, r)?;
    if let Some(path) = out {
        run.write_csv(path)?;
    }
    run.into_asserted()
}

/// Tabulates the polygamy example, writes `out` if given, then asserts
/// `lhs <= z1 <= z2 + 1e-12` at every point.
pub fn run_example2(beta: &Grid, s: &Grid, out: Option<&Path>) -> Result<ExampleRun> {
    let run = example2_table(beta, s)?;
    if let Some(path) = out {
        run.write_csv(path)?;
    }
    run.into_asserted()
}
