//! Sign certification of the four psi-difference bounds that drive the
//! monotone-witness functions:
//!
//! * L1: `lam ln(1-q) + mu ln[p]_q + lam psi_q(g) - mu psi_pq(g) <= 0`
//!   for `lam >= mu > 0`;
//! * L2: `lam ln(1-q) - mu ln(1-q)/k + lam psi_q(g) - mu psi_qk(g) <= 0`
//!   for `lam >= mu > 0`, `k >= 1`;
//! * L3: `mu ln[p]_q - lam ln k / k + lam gamma/k + lam/g
//!   + lam psi_k(g) - mu psi_pq(g) > 0` for `lam, mu > 0`, `k > 0`;
//! * L4: `lam gamma/k + lam/g - ln(k^lam (1-q)^mu)/k
//!   + lam psi_k(g) - mu psi_qk(g) > 0` for `lam, mu > 0`, `k > 0`.
//!
//! Each evaluator computes the expression twice — once by composing the
//! psi operations (direct) and once through the collapsed series the
//! bound reduces to — and refuses to certify when the two routes
//! disagree beyond the combined tail bounds plus round-off slack. The
//! verdict comes from the collapsed form, and a sign is certified only
//! when its magnitude exceeds the truncation tail.
//!
//! `psi_pq` here is always the finite series form, the shape the bounds
//! are stated in.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gamma::ln_q_bracket;
use crate::psi::{psi_k, psi_pq_series, psi_q, psi_qk};
use crate::series::{k_harmonic_series, q_power_series, q_power_series_finite, SeriesSum};
use crate::types::{
    check_k, check_p, check_positive, check_q, EvalPoint, ScalePair, SeriesBudget, SignCertificate,
    SignCheckInputs, SignVerdict,
};

/// Round-off allowance added to dual-form comparisons: combined tail
/// bounds alone are unsatisfiable in f64 when both routes are exact.
pub(crate) fn roundoff_slack(scale: f64) -> f64 {
    1e-12 * scale.abs().max(1.0)
}

pub(crate) fn check_dual_forms(
    context: &'static str,
    direct: f64,
    direct_tail: f64,
    collapsed: f64,
    collapsed_tail: f64,
    scale: f64,
) -> Result<()> {
    let tolerance = direct_tail + collapsed_tail + roundoff_slack(scale);
    if (direct - collapsed).abs() > tolerance {
        Err(Error::InconsistentForms {
            context,
            direct,
            collapsed,
            tolerance,
        })
    } else {
        Ok(())
    }
}

fn series_budget_scaled(budget: SeriesBudget, scale: f64) -> SeriesBudget {
    SeriesBudget {
        tail_tol: budget.tail_tol / scale,
        max_terms: budget.max_terms,
    }
}

/// `sum q^{nkg}/(1-q^{nk})` reused by L2/L4; zero when q^k underflows.
fn qk_power_series(q: f64, k: f64, g: f64, budget: SeriesBudget) -> Result<SeriesSum> {
    let base = (k * q.ln()).exp();
    if base == 0.0 {
        return Ok(SeriesSum {
            value: 0.0,
            tail_bound: 0.0,
            terms: 0,
        });
    }
    q_power_series(base, g, budget)
}

fn certificate(
    inputs: SignCheckInputs,
    direct: (f64, f64),
    collapsed: (f64, f64),
    exploratory: bool,
) -> SignCertificate {
    SignCertificate {
        inputs,
        direct_value: direct.0,
        direct_tail: direct.1,
        value: collapsed.0,
        tail_bound: collapsed.1,
        verdict: SignVerdict::certify(collapsed.0, collapsed.1),
        exploratory,
    }
}

fn lemma1_eval(
    lambda: f64,
    mu: f64,
    p: u32,
    q: f64,
    gt: f64,
    budget: SeriesBudget,
    exploratory: bool,
) -> Result<SignCertificate> {
    check_positive("lambda", lambda)?;
    check_positive("mu", mu)?;
    check_p(p)?;
    check_q(q)?;
    check_positive("g(t)", gt)?;
    let ln_q = q.ln();
    let g = EvalPoint::new(gt)?;

    let psi_q_v = psi_q(q, g, budget)?;
    let psi_pq_v = psi_pq_series(p, q, g)?;
    let ln_1mq = (-q).ln_1p();
    let ln_pq = ln_q_bracket(p as f64, q)?;
    let direct = lambda * ln_1mq + mu * ln_pq + lambda * psi_q_v.value - mu * psi_pq_v.value;
    let direct_tail = lambda * psi_q_v.tail_bound;

    let inner = series_budget_scaled(budget, -ln_q * lambda);
    let s_inf = q_power_series(q, gt, inner)?;
    let s_fin = q_power_series_finite(q, gt, p);
    let collapsed = ln_q * (lambda * s_inf.value - mu * s_fin);
    let collapsed_tail = -ln_q * lambda * s_inf.tail_bound;

    let scale = (lambda * ln_1mq).abs()
        + (mu * ln_pq).abs()
        + (lambda * psi_q_v.value).abs()
        + (mu * psi_pq_v.value).abs();
    check_dual_forms(
        "lemma1",
        direct,
        direct_tail,
        collapsed,
        collapsed_tail,
        scale,
    )?;

    let inputs = SignCheckInputs {
        check: "lemma1",
        lambda: Some(lambda),
        mu: Some(mu),
        p: Some(p),
        q: Some(q),
        k: None,
        gt: Some(gt),
        t: None,
        tail_tol: budget.tail_tol,
        max_terms: budget.max_terms,
    };
    Ok(certificate(
        inputs,
        (direct, direct_tail),
        (collapsed, collapsed_tail),
        exploratory,
    ))
}

/// L1 under its hypotheses (`lam >= mu` enforced through [`ScalePair`]).
pub fn lemma1_value(
    scale: &ScalePair,
    p: u32,
    q: f64,
    gt: f64,
    budget: SeriesBudget,
) -> Result<SignCertificate> {
    if !scale.is_ordered() {
        return Err(Error::domain("lemma1 requires a lambda >= mu ordered pair"));
    }
    lemma1_eval(scale.lambda(), scale.mu(), p, q, gt, budget, false)
}

/// L1 evaluated outside its hypotheses (any positive pair); the
/// certificate is flagged exploratory.
pub fn lemma1_exploratory(
    lambda: f64,
    mu: f64,
    p: u32,
    q: f64,
    gt: f64,
    budget: SeriesBudget,
) -> Result<SignCertificate> {
    lemma1_eval(lambda, mu, p, q, gt, budget, true)
}

fn lemma2_eval(
    lambda: f64,
    mu: f64,
    q: f64,
    k: f64,
    gt: f64,
    budget: SeriesBudget,
    exploratory: bool,
) -> Result<SignCertificate> {
    check_positive("lambda", lambda)?;
    check_positive("mu", mu)?;
    check_q(q)?;
    check_k(k)?;
    check_positive("g(t)", gt)?;
    let ln_q = q.ln();
    let g = EvalPoint::new(gt)?;

    let psi_q_v = psi_q(q, g, budget)?;
    let psi_qk_v = psi_qk(q, k, g, budget)?;
    let ln_1mq = (-q).ln_1p();
    let direct = lambda * ln_1mq - mu * ln_1mq / k + lambda * psi_q_v.value - mu * psi_qk_v.value;
    let direct_tail = lambda * psi_q_v.tail_bound + mu * psi_qk_v.tail_bound;

    let inner = series_budget_scaled(budget, -ln_q * (lambda + mu));
    let s_q = q_power_series(q, gt, inner)?;
    let s_qk = qk_power_series(q, k, gt, inner)?;
    let collapsed = ln_q * (lambda * s_q.value - mu * s_qk.value);
    let collapsed_tail = -ln_q * (lambda * s_q.tail_bound + mu * s_qk.tail_bound);

    let scale = (lambda * ln_1mq).abs()
        + (mu * ln_1mq / k).abs()
        + (lambda * psi_q_v.value).abs()
        + (mu * psi_qk_v.value).abs();
    check_dual_forms(
        "lemma2",
        direct,
        direct_tail,
        collapsed,
        collapsed_tail,
        scale,
    )?;

    let inputs = SignCheckInputs {
        check: "lemma2",
        lambda: Some(lambda),
        mu: Some(mu),
        p: None,
        q: Some(q),
        k: Some(k),
        gt: Some(gt),
        t: None,
        tail_tol: budget.tail_tol,
        max_terms: budget.max_terms,
    };
    Ok(certificate(
        inputs,
        (direct, direct_tail),
        (collapsed, collapsed_tail),
        exploratory,
    ))
}

/// L2 under its hypotheses: ordered pair and `k >= 1`.
pub fn lemma2_value(
    scale: &ScalePair,
    q: f64,
    k: f64,
    gt: f64,
    budget: SeriesBudget,
) -> Result<SignCertificate> {
    if !scale.is_ordered() {
        return Err(Error::domain("lemma2 requires a lambda >= mu ordered pair"));
    }
    if k.is_nan() || k < 1.0 {
        return Err(Error::Domain(format!("lemma2 requires k >= 1, got {k}")));
    }
    lemma2_eval(scale.lambda(), scale.mu(), q, k, gt, budget, false)
}

/// L2 outside its hypotheses (any positive pair, any k > 0).
pub fn lemma2_exploratory(
    lambda: f64,
    mu: f64,
    q: f64,
    k: f64,
    gt: f64,
    budget: SeriesBudget,
) -> Result<SignCertificate> {
    lemma2_eval(lambda, mu, q, k, gt, budget, true)
}

#[allow(clippy::too_many_arguments)]
fn lemma3_eval(
    lambda: f64,
    mu: f64,
    k: f64,
    p: u32,
    q: f64,
    gt: f64,
    budget: SeriesBudget,
    exploratory: bool,
) -> Result<SignCertificate> {
    check_positive("lambda", lambda)?;
    check_positive("mu", mu)?;
    check_k(k)?;
    check_p(p)?;
    check_q(q)?;
    check_positive("g(t)", gt)?;
    let ln_q = q.ln();
    let g = EvalPoint::new(gt)?;

    let psi_k_v = psi_k(k, g, budget)?;
    let psi_pq_v = psi_pq_series(p, q, g)?;
    let ln_pq = ln_q_bracket(p as f64, q)?;
    let head =
        mu * ln_pq - lambda * k.ln() / k + lambda * crate::types::EULER_GAMMA / k + lambda / gt;
    let direct = head + lambda * psi_k_v.value - mu * psi_pq_v.value;
    let direct_tail = lambda * psi_k_v.tail_bound;

    let s_k = k_harmonic_series(k, gt, series_budget_scaled(budget, lambda))?;
    let s_fin = q_power_series_finite(q, gt, p);
    let collapsed = lambda * s_k.value - mu * ln_q * s_fin;
    let collapsed_tail = lambda * s_k.tail_bound;

    let scale = head.abs() + (lambda * psi_k_v.value).abs() + (mu * psi_pq_v.value).abs();
    check_dual_forms(
        "lemma3",
        direct,
        direct_tail,
        collapsed,
        collapsed_tail,
        scale,
    )?;

    let inputs = SignCheckInputs {
        check: "lemma3",
        lambda: Some(lambda),
        mu: Some(mu),
        p: Some(p),
        q: Some(q),
        k: Some(k),
        gt: Some(gt),
        t: None,
        tail_tol: budget.tail_tol,
        max_terms: budget.max_terms,
    };
    Ok(certificate(
        inputs,
        (direct, direct_tail),
        (collapsed, collapsed_tail),
        exploratory,
    ))
}

/// L3 under its hypotheses (both exponents positive, unordered; any k > 0).
pub fn lemma3_value(
    scale: &ScalePair,
    k: f64,
    p: u32,
    q: f64,
    gt: f64,
    budget: SeriesBudget,
) -> Result<SignCertificate> {
    lemma3_eval(scale.lambda(), scale.mu(), k, p, q, gt, budget, false)
}

fn lemma4_eval(
    lambda: f64,
    mu: f64,
    q: f64,
    k: f64,
    gt: f64,
    budget: SeriesBudget,
    exploratory: bool,
) -> Result<SignCertificate> {
    check_positive("lambda", lambda)?;
    check_positive("mu", mu)?;
    check_q(q)?;
    check_k(k)?;
    check_positive("g(t)", gt)?;
    let ln_q = q.ln();
    let g = EvalPoint::new(gt)?;

    let psi_k_v = psi_k(k, g, budget)?;
    let psi_qk_v = psi_qk(q, k, g, budget)?;
    let ln_1mq = (-q).ln_1p();
    // ln(k^lam (1-q)^mu)/k = (lam ln k + mu ln(1-q))/k
    let head =
        lambda * crate::types::EULER_GAMMA / k + lambda / gt - (lambda * k.ln() + mu * ln_1mq) / k;
    let direct = head + lambda * psi_k_v.value - mu * psi_qk_v.value;
    let direct_tail = lambda * psi_k_v.tail_bound + mu * psi_qk_v.tail_bound;

    let s_k = k_harmonic_series(k, gt, series_budget_scaled(budget, 2.0 * lambda))?;
    let s_qk = qk_power_series(q, k, gt, series_budget_scaled(budget, 2.0 * mu * -ln_q))?;
    let collapsed = lambda * s_k.value - mu * ln_q * s_qk.value;
    let collapsed_tail = lambda * s_k.tail_bound + mu * -ln_q * s_qk.tail_bound;

    let scale = head.abs() + (lambda * psi_k_v.value).abs() + (mu * psi_qk_v.value).abs();
    check_dual_forms(
        "lemma4",
        direct,
        direct_tail,
        collapsed,
        collapsed_tail,
        scale,
    )?;

    let inputs = SignCheckInputs {
        check: "lemma4",
        lambda: Some(lambda),
        mu: Some(mu),
        p: None,
        q: Some(q),
        k: Some(k),
        gt: Some(gt),
        t: None,
        tail_tol: budget.tail_tol,
        max_terms: budget.max_terms,
    };
    Ok(certificate(
        inputs,
        (direct, direct_tail),
        (collapsed, collapsed_tail),
        exploratory,
    ))
}

/// L4 under its hypotheses (both exponents positive, unordered; any k > 0).
pub fn lemma4_value(
    scale: &ScalePair,
    q: f64,
    k: f64,
    gt: f64,
    budget: SeriesBudget,
) -> Result<SignCertificate> {
    lemma4_eval(scale.lambda(), scale.mu(), q, k, gt, budget, false)
}

/// One point of the certification grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaCase {
    pub lemma: u8,
    pub lambda: f64,
    pub mu: f64,
    pub p: Option<u32>,
    pub q: f64,
    pub k: Option<f64>,
    pub gt: f64,
}

pub const DEFAULT_P_GRID: [u32; 5] = [1, 2, 5, 10, 50];
pub const DEFAULT_Q_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
pub const DEFAULT_K_GE1_GRID: [f64; 4] = [1.0, 1.5, 2.0, 5.0];
pub const DEFAULT_K_POS_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 5.0];
pub const DEFAULT_SCALE_GRID: [(f64, f64); 4] = [(1.0, 1.0), (2.0, 1.0), (1.0, 0.5), (5.0, 0.1)];
pub const DEFAULT_GT_GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];

/// The default hypothesis-respecting grid: 3,900 cases across L1–L4.
pub fn default_lemma_grid() -> Vec<LemmaCase> {
    default_lemma_grid_with(
        &DEFAULT_P_GRID,
        &DEFAULT_Q_GRID,
        &DEFAULT_K_GE1_GRID,
        &DEFAULT_K_POS_GRID,
        &DEFAULT_SCALE_GRID,
        &DEFAULT_GT_GRID,
    )
}

/// Grid construction with explicit axes; the k axis is split into its
/// `k >= 1` restriction for L2 and the unrestricted positive axis for
/// L3/L4.
pub fn default_lemma_grid_with(
    ps: &[u32],
    qs: &[f64],
    ks_ge1: &[f64],
    ks_pos: &[f64],
    scales: &[(f64, f64)],
    gts: &[f64],
) -> Vec<LemmaCase> {
    let mut grid = Vec::new();
    for &(lambda, mu) in scales {
        for &q in qs {
            for &gt in gts {
                for &p in ps {
                    grid.push(LemmaCase {
                        lemma: 1,
                        lambda,
                        mu,
                        p: Some(p),
                        q,
                        k: None,
                        gt,
                    });
                }
                for &k in ks_ge1 {
                    grid.push(LemmaCase {
                        lemma: 2,
                        lambda,
                        mu,
                        p: None,
                        q,
                        k: Some(k),
                        gt,
                    });
                }
                for &k in ks_pos {
                    for &p in ps {
                        grid.push(LemmaCase {
                            lemma: 3,
                            lambda,
                            mu,
                            p: Some(p),
                            q,
                            k: Some(k),
                            gt,
                        });
                    }
                    grid.push(LemmaCase {
                        lemma: 4,
                        lambda,
                        mu,
                        p: None,
                        q,
                        k: Some(k),
                        gt,
                    });
                }
            }
        }
    }
    grid
}

/// Evaluate one grid case under the lemma's hypotheses.
pub fn evaluate_case(case: &LemmaCase, budget: SeriesBudget) -> Result<SignCertificate> {
    match case.lemma {
        1 => {
            let s = ScalePair::ordered(case.lambda, case.mu)?;
            lemma1_value(
                &s,
                case.p.ok_or_else(|| Error::domain("lemma1 needs p"))?,
                case.q,
                case.gt,
                budget,
            )
        }
        2 => {
            let s = ScalePair::ordered(case.lambda, case.mu)?;
            lemma2_value(
                &s,
                case.q,
                case.k.ok_or_else(|| Error::domain("lemma2 needs k"))?,
                case.gt,
                budget,
            )
        }
        3 => {
            let s = ScalePair::free(case.lambda, case.mu)?;
            lemma3_value(
                &s,
                case.k.ok_or_else(|| Error::domain("lemma3 needs k"))?,
                case.p.ok_or_else(|| Error::domain("lemma3 needs p"))?,
                case.q,
                case.gt,
                budget,
            )
        }
        4 => {
            let s = ScalePair::free(case.lambda, case.mu)?;
            lemma4_value(
                &s,
                case.q,
                case.k.ok_or_else(|| Error::domain("lemma4 needs k"))?,
                case.gt,
                budget,
            )
        }
        other => Err(Error::Domain(format!("no such lemma: {other}"))),
    }
}

/// Evaluate one grid case with hypothesis checks relaxed; the resulting
/// certificate is exploratory.
pub fn evaluate_case_exploratory(
    case: &LemmaCase,
    budget: SeriesBudget,
) -> Result<SignCertificate> {
    match case.lemma {
        1 => lemma1_eval(
            case.lambda,
            case.mu,
            case.p.unwrap_or(1),
            case.q,
            case.gt,
            budget,
            true,
        ),
        2 => lemma2_eval(
            case.lambda,
            case.mu,
            case.q,
            case.k.unwrap_or(1.0),
            case.gt,
            budget,
            true,
        ),
        3 => lemma3_eval(
            case.lambda,
            case.mu,
            case.k.unwrap_or(1.0),
            case.p.unwrap_or(1),
            case.q,
            case.gt,
            budget,
            true,
        ),
        4 => lemma4_eval(
            case.lambda,
            case.mu,
            case.q,
            case.k.unwrap_or(1.0),
            case.gt,
            budget,
            true,
        ),
        other => Err(Error::Domain(format!("no such lemma: {other}"))),
    }
}

/// The sign each lemma certifies on its hypothesis domain.
pub fn expected_verdict(lemma: u8) -> SignVerdict {
    match lemma {
        1 | 2 => SignVerdict::CertifiedNonpositive,
        _ => SignVerdict::CertifiedPositive,
    }
}

/// A certificate counts as a violation when it robustly certifies the
/// sign opposite to the lemma's claim. Inconclusive is not a violation.
pub fn is_violation(cert: &SignCertificate) -> bool {
    if cert.exploratory {
        return false;
    }
    let expected = match cert.inputs.check {
        "lemma1" => expected_verdict(1),
        "lemma2" => expected_verdict(2),
        "lemma3" => expected_verdict(3),
        "lemma4" => expected_verdict(4),
        _ => return false,
    };
    cert.verdict != SignVerdict::Inconclusive && cert.verdict != expected
}

/// Run a grid, optionally across threads; certificate order always
/// matches grid order.
pub fn run_lemma_cases(
    grid: &[LemmaCase],
    budget: SeriesBudget,
    parallel: bool,
) -> Result<Vec<SignCertificate>> {
    if parallel {
        grid.par_iter().map(|c| evaluate_case(c, budget)).collect()
    } else {
        grid.iter().map(|c| evaluate_case(c, budget)).collect()
    }
}

/// The full default suite.
pub fn run_lemma_suite(budget: SeriesBudget, parallel: bool) -> Result<Vec<SignCertificate>> {
    run_lemma_cases(&default_lemma_grid(), budget, parallel)
}
