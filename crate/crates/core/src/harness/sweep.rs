//! Parameter sweeps of the pair bounds over a set of three-qubit states.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::reproduce::{example1_state, example2_state, tripartite_concurrences};
use super::verify::{MONOGAMY_TOL, POLYGAMY_ORACLE_TOL};
use super::{write_csv, NamedState, StateSource, SweepConfig, VerificationSummary};
use crate::bounds::{
    mono_pair_bound, poly_pair_bound_concurrence, poly_pair_bound_noa, BoundDomain, BoundParams,
    BoundReport,
};
use crate::error::{Error, Result};
use crate::measures::{convex_roof, negativity_pure, Direction, MeasureKind, OptimizerBudget};
use crate::qstate::{random_pure_from, sample_rng, PartitionSpec, PureState};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub state: usize,
    pub exponent: f64,
    pub power: f64,
    pub joint: f64,
    pub x12: f64,
    pub x13: f64,
    pub lhs: Option<f64>,
    pub bound: Option<f64>,
    pub slack: Option<f64>,
    pub branch: String,
    pub comparator: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct SweepRun {
    pub rows: Vec<SweepRow>,
    pub summary: VerificationSummary,
}

fn states(source: &StateSource) -> Result<Vec<PureState>> {
    match *source {
        StateSource::Named(name) => Ok(vec![match name {
            NamedState::Example1 => example1_state(),
            NamedState::Example2 => example2_state(),
            NamedState::Ghz => PureState::ghz(3)?,
            NamedState::W => PureState::w(3)?,
        }]),
        StateSource::Random { seed, count } => (0..count)
            .map(|i| random_pure_from(&[2, 2, 2], &mut sample_rng(seed, i as u64)))
            .collect(),
    }
}

/// `(joint, x12, x13)` for the measure the family bounds.
fn values(psi: &PureState, family: BoundDomain, budget: &OptimizerBudget) -> Result<(f64, f64, f64)> {
    match family {
        BoundDomain::Monogamy | BoundDomain::ConcurrencePolygamy => tripartite_concurrences(psi),
        BoundDomain::NegativityPolygamy => {
            let joint = negativity_pure(psi, &PartitionSpec::first_vs_rest(3)?)?;
            let cut = PartitionSpec::first_vs_rest(2)?;
            let pair = |j: usize| -> Result<f64> {
                let rho = psi.reduced(&[0, j])?;
                Ok(convex_roof(&rho, &cut, MeasureKind::Negativity, Direction::Max, budget)?.0)
            };
            Ok((joint, pair(1)?, pair(2)?))
        }
    }
}

fn params_at(cfg: &SweepConfig, e: f64, pw: f64) -> Result<BoundParams> {
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| Error::DomainError(format!("{:?} sweep needs `{name}`", cfg.family)))
    };
    let params = match cfg.family {
        BoundDomain::Monogamy => BoundParams::monogamy(cfg.k, need(cfg.p, "p")?, e, pw),
        _ => BoundParams::polygamy(cfg.k, need(cfg.q, "q")?, e, pw),
    };
    params.validate(cfg.family)?;
    Ok(params)
}

fn evaluate(family: BoundDomain, x12: f64, x13: f64, params: &BoundParams) -> Result<BoundReport> {
    match family {
        BoundDomain::Monogamy => mono_pair_bound(x12, x13, params),
        BoundDomain::ConcurrencePolygamy => poly_pair_bound_concurrence(x12, x13, params),
        BoundDomain::NegativityPolygamy => poly_pair_bound_noa(x12, x13, params),
    }
}

/// Evaluates the family's pair bound at every `(exponent, power)` grid point
/// for every state of the source. All grid points are validated before any
/// state is touched. Rows are ordered by state, then exponent, then power;
/// they are written to `cfg.out` when set.
pub fn sweep(cfg: &SweepConfig, tolerance: Option<f64>) -> Result<SweepRun> {
    cfg.validate()?;
    let start = Instant::now();
    let exps = cfg.exponent_grid.points();
    let pows = cfg.r_grid.points();
    let mut grid = Vec::with_capacity(exps.len() * pows.len());
    for &e in &exps {
        for &pw in &pows {
            grid.push((e, pw, params_at(cfg, e, pw)?));
        }
    }
    let seed = match cfg.source {
        StateSource::Random { seed, .. } => Some(seed),
        StateSource::Named(_) => None,
    };
    let psis = states(&cfg.source)?;
    let measured = psis
        .par_iter()
        .enumerate()
        .map(|(i, psi)| {
            let budget = OptimizerBudget::default().with_seed(seed.unwrap_or(0).wrapping_add(i as u64));
            values(psi, cfg.family, &budget)
        })
        .collect::<Result<Vec<_>>>()?;

    let tol = tolerance.unwrap_or(match cfg.family {
        BoundDomain::NegativityPolygamy => POLYGAMY_ORACLE_TOL,
        _ => MONOGAMY_TOL,
    });
    let mut summary = VerificationSummary::new(
        format!("sweep_{}", serde_json::to_value(cfg.family)?.as_str().unwrap_or("family")),
        tol,
        seed,
    );
    let mut rows = Vec::with_capacity(psis.len() * grid.len());
    let mut inapplicable = 0usize;
    for (state, &(joint, x12, x13)) in measured.iter().enumerate() {
        for (e, pw, params) in &grid {
            summary.samples_total += 1;
            let res = evaluate(cfg.family, x12, x13, params).and_then(|r| r.against(joint));
            let mut row = SweepRow {
                state,
                exponent: *e,
                power: *pw,
                joint,
                x12,
                x13,
                lhs: None,
                bound: None,
                slack: None,
                branch: String::new(),
                comparator: None,
            };
            match res {
                Ok(rep) => {
                    let slack = rep.slack.expect("set by against");
                    if summary.record(slack) {
                        summary.worst_location = [
                            ("state".to_string(), state as f64),
                            ("exponent".to_string(), *e),
                            ("power".to_string(), *pw),
                        ]
                        .into();
                    }
                    row.branch = serde_json::to_value(rep.branch)?
                        .as_str()
                        .unwrap_or("chain")
                        .to_string();
                    row.lhs = rep.lhs;
                    row.bound = Some(rep.bound);
                    row.slack = Some(slack);
                    row.comparator = rep.comparator_bound;
                }
                Err(Error::NoBranch(_)) => {
                    inapplicable += 1;
                    row.branch = "no_branch".into();
                }
                Err(Error::ZeroMeasure(_)) => {
                    inapplicable += 1;
                    row.branch = "zero_measure".into();
                }
                Err(e) => return Err(e),
            }
            rows.push(row);
        }
    }
    summary.extra.insert("inapplicable".into(), inapplicable as f64);
    summary.runtime_seconds = start.elapsed().as_secs_f64();
    if let Some(path) = &cfg.out {
        write_csv(path, &rows)?;
    }
    Ok(SweepRun { rows, summary })
}
