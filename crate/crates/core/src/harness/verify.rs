//! Monte-Carlo verification over Haar-random pure states.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{BaseTally, VerificationSummary};
use crate::bounds::{
    mono_chain_bound, mono_pair_bound, poly_pair_bound_concurrence, poly_pair_bound_noa,
    BoundDomain, BoundParams, BoundReport, Branch,
};
use crate::error::{Error, Result};
use crate::measures::{
    concurrence_pure, concurrence_wootters, convex_roof, negativity_pure, Direction, MeasureKind,
    OptimizerBudget,
};
use crate::qstate::{random_pure_from, sample_rng, PartitionSpec, PureState};

/// Default slack tolerance for checks built on exact measures.
pub const MONOGAMY_TOL: f64 = 1e-9;
/// Default slack tolerance when pair values come from the roof-maximum optimizer.
pub const POLYGAMY_ORACLE_TOL: f64 = 5e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// `None` picks [`MONOGAMY_TOL`] or [`POLYGAMY_ORACLE_TOL`] by check.
    pub tolerance: Option<f64>,
    pub budget: OptimizerBudget,
}

impl VerifyOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            tolerance: None,
            budget: OptimizerBudget::default(),
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }

    pub fn with_budget(mut self, budget: OptimizerBudget) -> Self {
        self.budget = budget;
        self
    }

    fn sample_budget(&self, index: usize) -> OptimizerBudget {
        self.budget
            .clone()
            .with_seed(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index as u64))
    }
}

/// Per-sample CSV record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub joint: f64,
    /// `x(A1A2);x(A1A3);...`
    pub pairs: String,
    /// `x(A1|A3..An);...;x(A1|An)` for chains, empty otherwise.
    pub tails: String,
    pub base_slack: f64,
    pub bound: Option<f64>,
    pub slack: Option<f64>,
    /// Matched branch, or `no_branch`, `unsupported_pattern`, `zero_measure`.
    pub branch: String,
}

#[derive(Clone, Debug)]
pub struct VerifyRun {
    pub summary: VerificationSummary,
    pub records: Vec<SampleRecord>,
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(";")
}

fn branch_label(b: Branch) -> String {
    match b {
        Branch::A13Dominant => "a13_dominant".into(),
        Branch::A12Dominant => "a12_dominant".into(),
        Branch::ChainAllTailDominant => "chain_all_tail_dominant".into(),
        Branch::ChainAllPairDominant => "chain_all_pair_dominant".into(),
        Branch::ChainMixed { m } => format!("chain_mixed_m{m}"),
    }
}

/// Maps expected "inapplicable" errors to a label; everything else propagates.
fn outcome(res: Result<BoundReport>, joint: f64) -> Result<(Option<BoundReport>, String)> {
    match res.and_then(|r| r.against(joint)) {
        Ok(rep) => {
            let label = branch_label(rep.branch);
            Ok((Some(rep), label))
        }
        Err(Error::NoBranch(_)) => Ok((None, "no_branch".into())),
        Err(Error::PatternUnsupported(_)) => Ok((None, "unsupported_pattern".into())),
        Err(Error::ZeroMeasure(_)) => Ok((None, "zero_measure".into())),
        Err(e) => Err(e),
    }
}

fn record(
    index: usize,
    joint: f64,
    pairs: &[f64],
    tails: &[f64],
    base_slack: f64,
    (rep, branch): (Option<BoundReport>, String),
) -> SampleRecord {
    SampleRecord {
        index,
        joint,
        pairs: join(pairs),
        tails: join(tails),
        base_slack,
        bound: rep.as_ref().map(|r| r.bound),
        slack: rep.and_then(|r| r.slack),
        branch,
    }
}

/// Monogamy check of one `n`-qubit pure state, `n` in {3, 4}.
///
/// Pairs use Wootters; the joint value uses the pure-state formula; for
/// `n = 4` the tail `C(A1|A3A4)` of the mixed three-qubit reduction is the
/// roof-minimum optimizer value. The base slack is
/// `C^2(A1|rest) - sum_j C^2(A1Aj)`.
pub fn monogamy_sample(
    index: usize,
    psi: &PureState,
    params: &BoundParams,
    budget: &OptimizerBudget,
) -> Result<SampleRecord> {
    let n = psi.n_factors();
    if !(n == 3 || n == 4) || psi.factor_dims().iter().any(|&d| d != 2) {
        return Err(Error::DomainError(format!(
            "monogamy check needs 3 or 4 qubits, got factor_dims {:?}",
            psi.factor_dims()
        )));
    }
    let joint = concurrence_pure(psi, &PartitionSpec::first_vs_rest(n)?)?;
    let pairs = (1..n)
        .map(|j| concurrence_wootters(&psi.reduced(&[0, j])?))
        .collect::<Result<Vec<_>>>()?;
    let base_slack = joint * joint - pairs.iter().map(|c| c * c).sum::<f64>();
    if n == 3 {
        let res = mono_pair_bound(pairs[0], pairs[1], params);
        return Ok(record(index, joint, &pairs, &[], base_slack, outcome(res, joint)?));
    }
    let rest = psi.reduced(&[0, 2, 3])?;
    let (tail, _) = convex_roof(
        &rest,
        &PartitionSpec::first_vs_rest(3)?,
        MeasureKind::Concurrence,
        Direction::Min,
        budget,
    )?;
    let tails = [tail, pairs[2]];
    let res = mono_chain_bound(&pairs, &tails, params);
    Ok(record(index, joint, &pairs, &tails, base_slack, outcome(res, joint)?))
}

/// Polygamy check of one three-qubit pure state.
///
/// `Concurrence`: pairs via Wootters, base check is the averaged comparator.
/// `NegativityOfAssistance`: the joint value is exact (pure state), pairs
/// come from the roof-maximum optimizer, which can only under-estimate them
/// and so only tightens the check; the base check is
/// `N_a(A1|A2A3) <= N_a(A1A2) + N_a(A1A3)`.
pub fn polygamy_sample(
    index: usize,
    psi: &PureState,
    params: &BoundParams,
    measure: MeasureKind,
    budget: &OptimizerBudget,
) -> Result<SampleRecord> {
    if psi.factor_dims() != [2, 2, 2] {
        return Err(Error::DomainError(format!(
            "polygamy check needs 3 qubits, got factor_dims {:?}",
            psi.factor_dims()
        )));
    }
    let cut = PartitionSpec::first_vs_rest(3)?;
    match measure {
        MeasureKind::Concurrence => {
            let joint = concurrence_pure(psi, &cut)?;
            let c12 = concurrence_wootters(&psi.reduced(&[0, 1])?)?;
            let c13 = concurrence_wootters(&psi.reduced(&[0, 2])?)?;
            let res = poly_pair_bound_concurrence(c12, c13, params);
            let out = outcome(res, joint)?;
            let base_slack = match (&out.0, out.0.as_ref().and_then(|r| r.comparator_bound)) {
                (Some(rep), Some(z2)) => z2 - rep.lhs.unwrap_or(f64::NAN),
                _ => f64::NAN,
            };
            Ok(record(index, joint, &[c12, c13], &[], base_slack, out))
        }
        MeasureKind::NegativityOfAssistance => {
            let joint = negativity_pure(psi, &cut)?;
            let pair_cut = PartitionSpec::first_vs_rest(2)?;
            let mut pairs = [0.0; 2];
            for (slot, j) in pairs.iter_mut().zip([1, 2]) {
                let rho = psi.reduced(&[0, j])?;
                *slot = convex_roof(&rho, &pair_cut, MeasureKind::Negativity, Direction::Max, budget)?.0;
            }
            let base_slack = pairs[0] + pairs[1] - joint;
            let res = poly_pair_bound_noa(pairs[0], pairs[1], params);
            Ok(record(index, joint, &pairs, &[], base_slack, outcome(res, joint)?))
        }
        other => Err(Error::DomainError(format!(
            "polygamy verification covers concurrence and negativity of assistance, not {other:?}"
        ))),
    }
}

fn summarize(
    check: String,
    base_label: &str,
    opts: &VerifyOptions,
    tol: f64,
    records: &[SampleRecord],
    start: Instant,
) -> VerificationSummary {
    let mut summary = VerificationSummary::new(check, tol, Some(opts.seed));
    let mut base = BaseTally::new(base_label);
    summary.samples_total = records.len();
    let mut no_branch = 0usize;
    let mut zero = 0usize;
    for r in records {
        if r.base_slack.is_finite() {
            base.record(r.base_slack, tol);
        }
        match (r.slack, r.branch.as_str()) {
            (Some(s), _) => {
                if summary.record(s) {
                    summary.worst_location = [("sample".to_string(), r.index as f64)].into();
                }
            }
            (None, "unsupported_pattern") => summary.unsupported_patterns += 1,
            (None, "zero_measure") => zero += 1,
            (None, _) => no_branch += 1,
        }
    }
    summary.extra.insert("no_branch".into(), no_branch as f64);
    if zero > 0 {
        summary.extra.insert("zero_measure".into(), zero as f64);
    }
    summary.base = Some(base);
    summary.runtime_seconds = start.elapsed().as_secs_f64();
    summary
}

/// Checks the base inequality and the matching pair (n = 3) or chain (n = 4)
/// monogamy bound on `opts.samples` Haar-random pure states.
pub fn verify_monogamy(opts: &VerifyOptions, params: &BoundParams, n_qubits: usize) -> Result<VerifyRun> {
    params.validate(BoundDomain::Monogamy)?;
    if !(n_qubits == 3 || n_qubits == 4) {
        return Err(Error::DomainError(format!("n_qubits = {n_qubits}; expected 3 or 4")));
    }
    let start = Instant::now();
    let dims = vec![2; n_qubits];
    let records = (0..opts.samples)
        .into_par_iter()
        .map(|i| {
            let psi = random_pure_from(&dims, &mut sample_rng(opts.seed, i as u64))?;
            monogamy_sample(i, &psi, params, &opts.sample_budget(i))
        })
        .collect::<Result<Vec<_>>>()?;
    let tol = opts.tolerance.unwrap_or(MONOGAMY_TOL);
    let summary = summarize(
        format!("monogamy_n{n_qubits}"),
        "C^2(A1|rest) >= sum_j C^2(A1Aj)",
        opts,
        tol,
        &records,
        start,
    );
    Ok(VerifyRun { summary, records })
}

/// Checks the polygamy pair bound for `measure` on random three-qubit pure states.
pub fn verify_polygamy(opts: &VerifyOptions, params: &BoundParams, measure: MeasureKind) -> Result<VerifyRun> {
    let (domain, base_label, default_tol) = match measure {
        MeasureKind::Concurrence => (
            BoundDomain::ConcurrencePolygamy,
            "C^beta(A1|A2A3) <= (C12^beta + C13^beta) / 2",
            MONOGAMY_TOL,
        ),
        MeasureKind::NegativityOfAssistance => (
            BoundDomain::NegativityPolygamy,
            "N_a(A1|A2A3) <= N_a(A1A2) + N_a(A1A3)",
            POLYGAMY_ORACLE_TOL,
        ),
        other => {
            return Err(Error::DomainError(format!(
                "polygamy verification covers concurrence and negativity of assistance, not {other:?}"
            )))
        }
    };
    params.validate(domain)?;
    let start = Instant::now();
    let records = (0..opts.samples)
        .into_par_iter()
        .map(|i| {
            let psi = random_pure_from(&[2, 2, 2], &mut sample_rng(opts.seed, i as u64))?;
            polygamy_sample(i, &psi, params, measure, &opts.sample_budget(i))
        })
        .collect::<Result<Vec<_>>>()?;
    let tol = opts.tolerance.unwrap_or(default_tol);
    let check = match measure {
        MeasureKind::Concurrence => "polygamy_concurrence",
        _ => "polygamy_negativity_of_assistance",
    };
    let summary = summarize(check.into(), base_label, opts, tol, &records, start);
    Ok(VerifyRun { summary, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ghz_monogamy_is_trivial() {
        let ghz = PureState::ghz(3).unwrap();
        let params = BoundParams::monogamy(1.0, 0.5, 1.0, 2.0);
        let rec = monogamy_sample(0, &ghz, &params, &OptimizerBudget::default()).unwrap();
        assert_eq!(rec.pairs, "0.0;0.0");
        assert_relative_eq!(rec.base_slack, 1.0, epsilon = 1e-12);
        assert!(rec.slack.unwrap() >= 0.0);
    }

    #[test]
    fn w_state_saturates_base_inequality() {
        let w = PureState::w(3).unwrap();
        let params = BoundParams::monogamy(1.0, 0.5, 1.0, 2.0);
        let rec = monogamy_sample(0, &w, &params, &OptimizerBudget::default()).unwrap();
        assert_relative_eq!(rec.joint, 2.0 * 2f64.sqrt() / 3.0, epsilon = 1e-12);
        assert!(rec.base_slack.abs() < 1e-12);
        assert!(rec.slack.unwrap() >= -1e-12);
    }

    #[test]
    fn ghz_negativity_of_assistance() {
        let ghz = PureState::ghz(3).unwrap();
        let params = BoundParams::polygamy(1.0, 0.5, 2.0, 1.0);
        let budget = OptimizerBudget::default().with_restarts(8);
        let rec =
            polygamy_sample(0, &ghz, &params, MeasureKind::NegativityOfAssistance, &budget).unwrap();
        assert_relative_eq!(rec.joint, 1.0, epsilon = 1e-12);
        for v in rec.pairs.split(';') {
            assert_relative_eq!(v.parse::<f64>().unwrap(), 1.0, epsilon = 1e-6);
        }
        assert!(rec.bound.unwrap() >= 1.0);
    }

    #[test]
    fn out_of_domain_parameters_are_rejected() {
        let opts = VerifyOptions::new(4, 0);
        let alpha_eq_r = BoundParams::monogamy(1.0, 0.5, 2.0, 2.0);
        assert!(matches!(verify_monogamy(&opts, &alpha_eq_r, 3), Err(Error::DomainError(_))));
        let ok = BoundParams::monogamy(1.0, 0.5, 1.0, 2.0);
        assert!(matches!(verify_monogamy(&opts, &ok, 5), Err(Error::DomainError(_))));
        let poly = BoundParams::polygamy(1.0, 0.5, 2.0, 1.0);
        assert!(matches!(
            verify_polygamy(&opts, &poly, MeasureKind::Concurrence),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn small_runs_are_deterministic() {
        let opts = VerifyOptions::new(16, 9);
        let params = BoundParams::monogamy(1.0, 0.5, 1.0, 2.0);
        let a = verify_monogamy(&opts, &params, 3).unwrap();
        let b = verify_monogamy(&opts, &params, 3).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.summary.violations, 0);
        assert_eq!(a.summary.samples_total, 16);
    }
}
