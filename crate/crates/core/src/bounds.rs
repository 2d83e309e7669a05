//! Scalar monogamy and polygamy bound evaluators.
//!
//! All evaluators take measure *values*, never states, so the same code serves
//! concurrence, CREN, entanglement of formation or any assisted measure: feed
//! the values of whichever measure is being bounded.
//!
//! Every bound has the shape `coef * x_small^e + l * x_big^e` (pair) or a
//! chained version of it, where, with `w` the weight parameter (`p` for
//! monogamy, `q` for polygamy), `y` the ratio exponent `e / power`:
//!
//! ```text
//! coef = w^y,    l = ((1 + k)^y - w^y) / k^y
//! ```
//!
//! Monogamy uses `(w, e, power) = (p, alpha, r)`, polygamy `(q, beta, s)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::ZERO_CLAMP;

/// Relative tolerance on branch conditions such as `x13^r >= k x12^r`.
pub const BRANCH_REL_TOL: f64 = 1e-9;

/// Parameter tuple shared by all bound families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub p: f64,
    pub q: f64,
    pub k: f64,
    pub alpha: f64,
    pub beta: f64,
    pub r: f64,
    pub s: f64,
}

/// Which family a parameter tuple is validated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDomain {
    /// `k >= 1, 1/2 <= p <= 1, r >= 2, 0 <= alpha <= r/2`.
    Monogamy,
    /// `k >= 1, 0 < q <= 1, s >= 2, beta <= 0`.
    ConcurrencePolygamy,
    /// `k >= 1, 0 < q <= 1, 0 < s <= 1, beta >= s`.
    NegativityPolygamy,
}

impl BoundDomain {
    pub fn is_polygamy(self) -> bool {
        !matches!(self, BoundDomain::Monogamy)
    }
}

impl BoundParams {
    pub fn monogamy(k: f64, p: f64, alpha: f64, r: f64) -> Self {
        Self {
            p,
            q: 1.0,
            k,
            alpha,
            beta: 0.0,
            r,
            s: r,
        }
    }

    pub fn polygamy(k: f64, q: f64, beta: f64, s: f64) -> Self {
        Self {
            p: 1.0,
            q,
            k,
            alpha: 0.0,
            beta,
            r: s,
            s,
        }
    }

    pub fn validate(&self, domain: BoundDomain) -> Result<()> {
        let all = [self.p, self.q, self.k, self.alpha, self.beta, self.r, self.s];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::DomainError(format!("non-finite parameter in {self:?}")));
        }
        let fail = |msg: String| Err(Error::DomainError(msg));
        if self.k < 1.0 {
            return fail(format!("k = {} < 1", self.k));
        }
        match domain {
            BoundDomain::Monogamy => {
                if !(0.5..=1.0).contains(&self.p) {
                    return fail(format!("p = {} outside [1/2, 1]", self.p));
                }
                if self.r < 2.0 {
                    return fail(format!("r = {} < 2", self.r));
                }
                if self.alpha < 0.0 || self.alpha > self.r / 2.0 {
                    return fail(format!("alpha = {} outside [0, r/2 = {}]", self.alpha, self.r / 2.0));
                }
            }
            BoundDomain::ConcurrencePolygamy | BoundDomain::NegativityPolygamy => {
                if !(self.q > 0.0 && self.q <= 1.0) {
                    return fail(format!("q = {} outside (0, 1]", self.q));
                }
                if domain == BoundDomain::ConcurrencePolygamy {
                    if self.s < 2.0 {
                        return fail(format!("s = {} < 2", self.s));
                    }
                    if self.beta > 0.0 {
                        return fail(format!("beta = {} > 0", self.beta));
                    }
                } else {
                    if !(self.s > 0.0 && self.s <= 1.0) {
                        return fail(format!("s = {} outside (0, 1]", self.s));
                    }
                    if self.beta < self.s {
                        return fail(format!("beta = {} < s = {}", self.beta, self.s));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(weight, exponent, power)` for the family.
    fn family(&self, domain: BoundDomain) -> (f64, f64, f64) {
        match domain {
            BoundDomain::Monogamy => (self.p, self.alpha, self.r),
            _ => (self.q, self.beta, self.s),
        }
    }

    /// The factor `l = ((1+k)^y - w^y) / k^y`, `y = exponent / power`.
    pub fn l_factor(&self, domain: BoundDomain) -> f64 {
        let (w, e, pw) = self.family(domain);
        l_factor(self.k, w, e / pw)
    }
}

fn l_factor(k: f64, w: f64, y: f64) -> f64 {
    ((1.0 + k).powf(y) - w.powf(y)) / k.powf(y)
}

/// Which hypothesis of the theorem was matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `x13^r >= k x12^r`: the `A1A3` term carries `l`.
    A13Dominant,
    /// `x12^r >= k x13^r`: the `A1A2` term carries `l`.
    A12Dominant,
    /// Every step has `k x_{A1Ai}^r <= x_{A1|A(i+1)..An}^r`.
    ChainAllTailDominant,
    /// Every step has `x_{A1Aj}^r >= k x_{A1|A(j+1)..An}^r`.
    ChainAllPairDominant,
    /// Steps `2..=m` tail-dominant, steps `m+1..=n-1` pair-dominant.
    ChainMixed { m: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
enum Sense {
    /// `lhs >= bound`
    #[default]
    Lower,
    /// `lhs <= bound`
    Upper,
}

/// Evaluated bound, optionally compared against the measured left-hand side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Joint-bipartition measure raised to the exponent (set by [`BoundReport::against`]).
    pub lhs: Option<f64>,
    pub bound: f64,
    /// `lhs - bound` for monogamy, `bound - lhs` for polygamy.
    pub slack: Option<f64>,
    pub branch: Branch,
    pub comparator_bound: Option<f64>,
    pub params: BoundParams,
    #[serde(skip)]
    sense: Sense,
    #[serde(skip)]
    exponent: f64,
}

impl BoundReport {
    /// Fills `lhs` and `slack` from the measured joint value.
    pub fn against(mut self, joint: f64) -> Result<Self> {
        let lhs = power(clamp(joint), self.exponent)?;
        self.lhs = Some(lhs);
        self.slack = Some(match self.sense {
            Sense::Lower => lhs - self.bound,
            Sense::Upper => self.bound - lhs,
        });
        Ok(self)
    }

    pub fn is_monogamy(&self) -> bool {
        self.sense == Sense::Lower
    }

    /// True when the slack is known and at least `-tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.slack.is_some_and(|s| s >= -tol)
    }
}

fn clamp(x: f64) -> f64 {
    if x < ZERO_CLAMP {
        0.0
    } else {
        x
    }
}

/// `x^e` with `0^0 = 1`; `0^e` for `e < 0` is an error.
fn power(x: f64, e: f64) -> Result<f64> {
    if x == 0.0 {
        if e == 0.0 {
            return Ok(1.0);
        }
        if e < 0.0 {
            return Err(Error::ZeroMeasure(format!("0 raised to {e}")));
        }
        return Ok(0.0);
    }
    Ok(x.powf(e))
}

/// `a >= b` up to the relative branch tolerance.
fn at_least(a: f64, b: f64) -> bool {
    a >= b - BRANCH_REL_TOL * a.abs().max(b.abs())
}

fn check_inputs(values: &[f64]) -> Result<()> {
    if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < -ZERO_CLAMP) {
        return Err(Error::DomainError(format!("measure value {v} must be >= 0")));
    }
    Ok(())
}

/// Gap `(1+t)^x - [p^x + ((1+k)^x - p^x)/k^x t^x]` of the monogamy kernel.
pub fn lemma1_gap(t: f64, k: f64, p: f64, x: f64) -> Result<f64> {
    if !(k >= 1.0 && t >= k && (0.5..=1.0).contains(&p) && (0.0..=0.5).contains(&x)) {
        return Err(Error::DomainError(format!(
            "lemma 1 needs k >= 1, t >= k, 1/2 <= p <= 1, 0 <= x <= 1/2; got t={t}, k={k}, p={p}, x={x}"
        )));
    }
    let rhs = p.powf(x) + l_factor(k, p, x) * t.powf(x);
    Ok((1.0 + t).powf(x) - rhs)
}

/// Gap `[q^x + ((1+k)^x - q^x)/k^x t^x] - (1+t)^x` of the polygamy kernel.
pub fn lemma2_gap(t: f64, k: f64, q: f64, x: f64) -> Result<f64> {
    if !(q > 0.0 && q <= 1.0 && k >= 1.0 && t >= k && (x >= 1.0 || x <= 0.0)) {
        return Err(Error::DomainError(format!(
            "lemma 2 needs 0 < q <= 1, k >= 1, t >= k, x >= 1 or x <= 0; got t={t}, k={k}, q={q}, x={x}"
        )));
    }
    let rhs = q.powf(x) + l_factor(k, q, x) * t.powf(x);
    Ok(rhs - (1.0 + t).powf(x))
}

/// Chained sum over pair values already raised to the exponent.
///
/// `m` counts the leading tail-dominant steps plus one: `m = n - 1` is the
/// all-tail-dominant form, `m = 1` the all-pair-dominant form.
fn chain_sum(coef: f64, l: f64, powered: &[f64], m: usize) -> f64 {
    // powered[j - 2] holds the A1Aj term, j = 2..=n
    let n = powered.len() + 1;
    let v = |j: usize| powered[j - 2];
    let mut head = 0.0;
    for j in 2..=m {
        head += l.powi((j - 2) as i32) * v(j);
    }
    let mut middle = 0.0;
    for j in (m + 1)..n {
        middle += coef.powi((j - m - 1) as i32) * v(j);
    }
    coef * head
        + l.powi(m as i32) * middle
        + l.powi(m as i32 - 1) * coef.powi((n - m - 1) as i32) * v(n)
}

struct Evaluated {
    bound: f64,
    branch: Branch,
}

/// Pair bound in either direction; shared by all three pair theorems.
fn pair_bound(x12: f64, x13: f64, params: &BoundParams, domain: BoundDomain) -> Result<Evaluated> {
    let (w, e, pw) = params.family(domain);
    let (x12, x13) = (clamp(x12), clamp(x13));
    let coef = w.powf(e / pw);
    let l = l_factor(params.k, w, e / pw);
    let (a12, a13) = (power(x12, pw)?, power(x13, pw)?);
    let powered = [power(x12, e)?, power(x13, e)?];
    if at_least(a13, params.k * a12) {
        Ok(Evaluated {
            bound: chain_sum(coef, l, &powered, 2),
            branch: Branch::A13Dominant,
        })
    } else if at_least(a12, params.k * a13) {
        Ok(Evaluated {
            bound: chain_sum(coef, l, &powered, 1),
            branch: Branch::A12Dominant,
        })
    } else {
        Err(Error::NoBranch(format!(
            "neither {x13}^{pw} >= {k} * {x12}^{pw} nor the converse",
            k = params.k
        )))
    }
}

/// Chain classification: largest `m` such that steps `2..=m` are
/// tail-dominant and the rest pair-dominant.
fn chain_bound(
    pairs: &[f64],
    tails: &[f64],
    params: &BoundParams,
    domain: BoundDomain,
) -> Result<Evaluated> {
    if pairs.len() < 2 || tails.len() + 1 != pairs.len() {
        return Err(Error::DomainError(format!(
            "chain needs n-1 >= 2 pair values and n-2 tail values; got {} and {}",
            pairs.len(),
            tails.len()
        )));
    }
    check_inputs(pairs)?;
    check_inputs(tails)?;
    let (w, e, pw) = params.family(domain);
    let k = params.k;
    let mut tail_dom = Vec::with_capacity(tails.len());
    let mut pair_dom = Vec::with_capacity(tails.len());
    for (&x, &t) in pairs.iter().zip(tails) {
        let (x, t) = (power(clamp(x), pw)?, power(clamp(t), pw)?);
        tail_dom.push(at_least(t, k * x));
        pair_dom.push(at_least(x, k * t));
    }
    let steps = tails.len();
    let split = (0..=steps)
        .rev()
        .find(|&a| tail_dom[..a].iter().all(|&b| b) && pair_dom[a..].iter().all(|&b| b))
        .ok_or_else(|| {
            let pattern: String = tail_dom
                .iter()
                .zip(&pair_dom)
                .map(|(&t, &p)| match (t, p) {
                    (true, true) => '=',
                    (true, false) => '<',
                    (false, true) => '>',
                    (false, false) => '?',
                })
                .collect();
            Error::PatternUnsupported(format!(
                "step pattern {pattern} ('<' tail-dominant, '>' pair-dominant) is not of the form <..<>..>"
            ))
        })?;
    let m = split + 1;
    let n = pairs.len() + 1;
    let branch = if m == n - 1 {
        Branch::ChainAllTailDominant
    } else if m == 1 {
        Branch::ChainAllPairDominant
    } else {
        Branch::ChainMixed { m }
    };
    let powered = pairs
        .iter()
        .map(|&x| power(clamp(x), e))
        .collect::<Result<Vec<_>>>()?;
    let coef = w.powf(e / pw);
    let l = l_factor(k, w, e / pw);
    Ok(Evaluated {
        bound: chain_sum(coef, l, &powered, m),
        branch,
    })
}

fn report(ev: Evaluated, params: &BoundParams, domain: BoundDomain, comparator: Option<f64>) -> BoundReport {
    let (_, exponent, _) = params.family(domain);
    BoundReport {
        lhs: None,
        bound: ev.bound,
        slack: None,
        branch: ev.branch,
        comparator_bound: comparator,
        params: *params,
        sense: if domain.is_polygamy() {
            Sense::Upper
        } else {
            Sense::Lower
        },
        exponent,
    }
}

/// Tripartite monogamy lower bound on `C^alpha(A1|A2A3)` from `C(A1A2)`, `C(A1A3)`.
///
/// The comparator is the `p = 1` member of the same family.
pub fn mono_pair_bound(c12: f64, c13: f64, params: &BoundParams) -> Result<BoundReport> {
    params.validate(BoundDomain::Monogamy)?;
    check_inputs(&[c12, c13])?;
    let ev = pair_bound(c12, c13, params, BoundDomain::Monogamy)?;
    let comparator = match ev.branch {
        Branch::A12Dominant => comparator_ref15(c13, c12, params.k, params.alpha, params.r),
        _ => comparator_ref15(c12, c13, params.k, params.alpha, params.r),
    };
    Ok(report(ev, params, BoundDomain::Monogamy, Some(comparator)))
}

/// n-partite chained monogamy bound.
///
/// `c_pairs = [x(A1A2), ..., x(A1An)]`; `c_tails = [x(A1|A3..An), ..., x(A1|An)]`
/// are used only to classify each step.
pub fn mono_chain_bound(c_pairs: &[f64], c_tails: &[f64], params: &BoundParams) -> Result<BoundReport> {
    params.validate(BoundDomain::Monogamy)?;
    let ev = chain_bound(c_pairs, c_tails, params, BoundDomain::Monogamy)?;
    Ok(report(ev, params, BoundDomain::Monogamy, None))
}

fn reject_zero_for_negative_beta(values: &[f64], beta: f64) -> Result<()> {
    if beta < 0.0 && values.iter().any(|&v| clamp(v) == 0.0) {
        return Err(Error::ZeroMeasure(format!(
            "a measure vanishes and beta = {beta} < 0; the inequality is trivial there"
        )));
    }
    Ok(())
}

/// Polygamy upper bound on `C^beta(A1|A2A3)` for `beta <= 0`, `s >= 2`.
pub fn poly_pair_bound_concurrence(c12: f64, c13: f64, params: &BoundParams) -> Result<BoundReport> {
    params.validate(BoundDomain::ConcurrencePolygamy)?;
    check_inputs(&[c12, c13])?;
    reject_zero_for_negative_beta(&[c12, c13], params.beta)?;
    let ev = pair_bound(c12, c13, params, BoundDomain::ConcurrencePolygamy)?;
    let comparator = comparator_ref7(c12, c13, params.beta)?;
    Ok(report(ev, params, BoundDomain::ConcurrencePolygamy, Some(comparator)))
}

/// Polygamy upper bound on `N_a^beta(A1|A2A3)` for `beta >= s`, `0 < s <= 1`.
pub fn poly_pair_bound_noa(n12: f64, n13: f64, params: &BoundParams) -> Result<BoundReport> {
    params.validate(BoundDomain::NegativityPolygamy)?;
    check_inputs(&[n12, n13])?;
    let ev = pair_bound(n12, n13, params, BoundDomain::NegativityPolygamy)?;
    Ok(report(ev, params, BoundDomain::NegativityPolygamy, None))
}

/// n-partite chained polygamy bound, same step rules as [`mono_chain_bound`].
///
/// `domain` selects the parameter regime: `NegativityPolygamy` for
/// `beta >= s, 0 < s <= 1` or `ConcurrencePolygamy` for `beta <= 0, s >= 2`.
pub fn poly_chain_bound(
    values: &[f64],
    tails: &[f64],
    params: &BoundParams,
    domain: BoundDomain,
) -> Result<BoundReport> {
    if !domain.is_polygamy() {
        return Err(Error::DomainError("poly_chain_bound needs a polygamy domain".into()));
    }
    params.validate(domain)?;
    reject_zero_for_negative_beta(values, params.beta)?;
    reject_zero_for_negative_beta(tails, params.beta)?;
    let ev = chain_bound(values, tails, params, domain)?;
    Ok(report(ev, params, domain, None))
}

/// `x12^alpha + ((1+k)^{alpha/r} - 1)/k^{alpha/r} x13^alpha`, the `p = 1` bound.
pub fn comparator_ref15(c12: f64, c13: f64, k: f64, alpha: f64, r: f64) -> f64 {
    let y = alpha / r;
    let powered = [
        power(clamp(c12), alpha).unwrap_or(f64::INFINITY),
        power(clamp(c13), alpha).unwrap_or(f64::INFINITY),
    ];
    chain_sum(1f64.powf(y), l_factor(k, 1.0, y), &powered, 2)
}

/// `(x12^beta + x13^beta) / 2`.
pub fn comparator_ref7(c12: f64, c13: f64, beta: f64) -> Result<f64> {
    Ok(0.5 * (power(clamp(c12), beta)? + power(clamp(c13), beta)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn lemma1_examples() {
        assert!(lemma1_gap(2.0, 2.0, 0.7, 0.3).unwrap().abs() < 1e-12);
        assert_eq!(lemma1_gap(7.0, 1.5, 0.6, 0.0).unwrap(), 0.0);
        let h = 0.5f64.sqrt();
        let want = 2.0 - (h + (SQRT2 - h) * 3f64.sqrt());
        assert_relative_eq!(lemma1_gap(3.0, 1.0, 0.5, 0.5).unwrap(), want, epsilon = 1e-15);
        assert!(want > 0.0);
        assert!(lemma1_gap(0.5, 1.0, 0.5, 0.5).is_err());
        assert!(lemma1_gap(2.0, 1.0, 0.4, 0.5).is_err());
        assert!(lemma1_gap(2.0, 1.0, 0.5, 0.6).is_err());
    }

    #[test]
    fn lemma2_examples() {
        assert!(lemma2_gap(3.0, 3.0, 0.4, 1.0).unwrap().abs() < 1e-12);
        assert_eq!(lemma2_gap(9.0, 2.0, 0.3, 0.0).unwrap(), 0.0);
        assert_relative_eq!(lemma2_gap(4.0, 2.0, 0.5, 2.0).unwrap(), 10.25, epsilon = 1e-12);
        assert!(lemma2_gap(4.0, 2.0, 0.5, 0.5).is_err());
        assert!(lemma2_gap(4.0, 2.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn example1_pair_bound() {
        let params = BoundParams::monogamy(SQRT2, 0.5, 1.0, 2.0);
        let rep = mono_pair_bound(0.5, SQRT2 / 2.0, &params).unwrap();
        let want = 0.5f64.sqrt() * 0.5
            + ((1.0 + SQRT2).sqrt() - 0.5f64.sqrt()) / 2f64.powf(0.25) * (SQRT2 / 2.0);
        assert_relative_eq!(rep.bound, want, epsilon = 1e-15);
        assert_eq!(rep.branch, Branch::A13Dominant);
        assert!(rep.bound <= 3f64.sqrt() / 2.0);
        assert!(rep.bound >= rep.comparator_bound.unwrap());
        let rep = rep.against(3f64.sqrt() / 2.0).unwrap();
        assert!(rep.slack.unwrap() >= 0.0);
    }

    #[test]
    fn mono_degenerate_cases() {
        let params = BoundParams::monogamy(1.0, 0.5, 1.0, 2.0);
        let rep = mono_pair_bound(0.0, 0.8, &params).unwrap();
        assert!(rep.bound <= 0.8);
        let rep = mono_pair_bound(0.3, 0.0, &params).unwrap();
        assert_eq!(rep.branch, Branch::A12Dominant);
        let zero_alpha = BoundParams::monogamy(1.0, 0.5, 0.0, 2.0);
        let rep = mono_pair_bound(0.4, 0.6, &zero_alpha).unwrap().against(0.7).unwrap();
        assert_eq!(rep.bound, 1.0);
        assert_eq!(rep.lhs, Some(1.0));
    }

    #[test]
    fn mono_no_branch_and_domain() {
        let params = BoundParams::monogamy(4.0, 0.5, 1.0, 2.0);
        assert!(matches!(
            mono_pair_bound(0.5, 0.6, &params),
            Err(Error::NoBranch(_))
        ));
        let bad = BoundParams::monogamy(1.0, 0.5, 2.0, 2.0);
        assert!(matches!(mono_pair_bound(0.5, 0.6, &bad), Err(Error::DomainError(_))));
    }

    #[test]
    fn chain_n3_equals_pair() {
        let params = BoundParams::monogamy(1.2, 0.6, 0.8, 3.0);
        for (a, b) in [(0.2, 0.7), (0.7, 0.2), (0.0, 0.5)] {
            let pair = mono_pair_bound(a, b, &params).unwrap();
            let chain = mono_chain_bound(&[a, b], &[b], &params).unwrap();
            assert!((pair.bound - chain.bound).abs() <= 1e-14);
        }
    }

    #[test]
    fn chain_all_tail_dominant_n4() {
        let params = BoundParams::monogamy(1.0, 0.5, 1.0, 2.0);
        let (a, b, c) = (0.2, 0.3, 0.4);
        // tails: C(A1|A3A4) large, C(A1|A4) = c
        let rep = mono_chain_bound(&[a, b, c], &[0.9, c], &params).unwrap();
        let pp = 0.5f64.sqrt();
        let l = params.l_factor(BoundDomain::Monogamy);
        let want = pp * (a + l * b) + l * l * c;
        assert_eq!(rep.branch, Branch::ChainAllTailDominant);
        assert_relative_eq!(rep.bound, want, epsilon = 1e-15);
    }

    #[test]
    fn chain_mixed_and_unsupported() {
        let params = BoundParams::monogamy(1.5, 0.5, 1.0, 2.0);
        // step 2 tail-dominant, step 3 pair-dominant -> m = 2
        let rep = mono_chain_bound(&[0.1, 0.8, 0.2], &[0.9, 0.2], &params).unwrap();
        assert_eq!(rep.branch, Branch::ChainMixed { m: 2 });
        let pp = 0.5f64.sqrt();
        let l = params.l_factor(BoundDomain::Monogamy);
        let want = pp * 0.1 + l * l * 0.8 + l * pp * 0.2;
        assert_relative_eq!(rep.bound, want, epsilon = 1e-15);
        // pair-dominant then tail-dominant is not covered
        let err = mono_chain_bound(&[0.9, 0.1, 0.8], &[0.2, 0.8], &params);
        assert!(matches!(err, Err(Error::PatternUnsupported(_))));
    }

    #[test]
    fn example2_pair_bound_and_comparator() {
        let k = 6f64.sqrt() / 2.0;
        let c12 = 6f64.sqrt() / 6.0;
        let params = BoundParams::polygamy(k, 0.5, -1.0, 2.0);
        let rep = poly_pair_bound_concurrence(c12, 0.5, &params).unwrap();
        assert_eq!(rep.branch, Branch::A13Dominant);
        assert_relative_eq!(
            rep.comparator_bound.unwrap(),
            0.5 * (6f64.sqrt() + 2.0),
            epsilon = 1e-14
        );
        let rep = rep.against(21f64.sqrt() / 6.0).unwrap();
        assert!(rep.slack.unwrap() >= 0.0);
        assert!(rep.bound <= rep.comparator_bound.unwrap());
    }

    #[test]
    fn poly_concurrence_special_cases() {
        let zero_beta = BoundParams::polygamy(1.0, 0.5, 0.0, 2.0);
        let rep = poly_pair_bound_concurrence(0.3, 0.4, &zero_beta).unwrap();
        assert_eq!(rep.bound, 1.0);
        let p = BoundParams::polygamy(1.0, 0.5, -1.5, 3.0);
        let c: f64 = 0.4;
        let rep = poly_pair_bound_concurrence(c, c, &p).unwrap();
        assert_relative_eq!(rep.bound, 2f64.powf(-0.5) * c.powf(-1.5), epsilon = 1e-13);
        assert!(matches!(
            poly_pair_bound_concurrence(0.0, 0.4, &p),
            Err(Error::ZeroMeasure(_))
        ));
    }

    #[test]
    fn noa_equality_point() {
        // beta = s and x13^s = k x12^s: bound = x12^s + x13^s
        let (s, k, q) = (0.5, 2.0, 0.3);
        let x12: f64 = 0.25;
        let x13 = (k * x12.powf(s)).powf(1.0 / s);
        let params = BoundParams::polygamy(k, q, s, s);
        let rep = poly_pair_bound_noa(x12, x13, &params).unwrap();
        assert_relative_eq!(rep.bound, x12.powf(s) + x13.powf(s), epsilon = 1e-14);
        let rep = poly_pair_bound_noa(0.0, 0.5, &BoundParams::polygamy(1.0, 0.5, 2.0, 1.0)).unwrap();
        assert_eq!(rep.branch, Branch::A13Dominant);
        assert!(rep.bound >= 0.25);
    }

    #[test]
    fn poly_chain_all_pair_dominant_n4() {
        let params = BoundParams::polygamy(1.0, 0.5, 2.0, 1.0);
        let (v2, v3, v4) = (0.9, 0.5, 0.2);
        let rep =
            poly_chain_bound(&[v2, v3, v4], &[0.3, v4], &params, BoundDomain::NegativityPolygamy)
                .unwrap();
        assert_eq!(rep.branch, Branch::ChainAllPairDominant);
        let q = 0.25;
        let l = params.l_factor(BoundDomain::NegativityPolygamy);
        let want = l * (v2 * v2 + q * v3 * v3) + q * q * v4 * v4;
        assert_relative_eq!(rep.bound, want, epsilon = 1e-15);
        let pair = poly_pair_bound_noa(0.6, 0.3, &params).unwrap();
        let chain =
            poly_chain_bound(&[0.6, 0.3], &[0.3], &params, BoundDomain::NegativityPolygamy).unwrap();
        assert!((pair.bound - chain.bound).abs() <= 1e-14);
    }

    #[test]
    fn comparator_ref15_is_p_one() {
        let (k, alpha, r) = (1.3, 0.7, 2.5);
        let p1 = BoundParams::monogamy(k, 1.0, alpha, r);
        let rep = mono_pair_bound(0.3, 0.6, &p1).unwrap();
        assert_eq!(rep.bound, comparator_ref15(0.3, 0.6, k, alpha, r));
    }

    #[test]
    fn comparator_ref7_cases() {
        assert_eq!(comparator_ref7(0.3, 0.7, 0.0).unwrap(), 1.0);
        assert_relative_eq!(comparator_ref7(0.4, 0.4, -1.3).unwrap(), 0.4f64.powf(-1.3));
        assert!(comparator_ref7(0.0, 0.4, -1.0).is_err());
    }

    #[test]
    fn report_json_fields() {
        let rep = mono_pair_bound(0.5, 0.7, &BoundParams::monogamy(1.0, 0.5, 1.0, 2.0))
            .unwrap()
            .against(0.9)
            .unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(|s| s.as_str()).collect();
        keys.sort();
        assert_eq!(keys, ["bound", "branch", "comparator_bound", "lhs", "params", "slack"]);
        assert_eq!(v["branch"], "a13_dominant");
    }
}
