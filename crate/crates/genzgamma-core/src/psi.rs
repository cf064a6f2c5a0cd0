//! The classical psi (digamma) function and its five generalizations,
//! evaluated from their series characterizations with certified
//! truncation tails.
//!
//! Two (p,q)-psi evaluators coexist on purpose. `psi_pq_series` is the
//! finite sum `ln[p]_q + ln q sum_{n=1}^p q^{nt}/(1-q^n)` consumed by the
//! sign bounds; `psi_pq_definitional` is the exact log-derivative of the
//! (p,q)-Gamma product. They disagree for finite p, and that discrepancy
//! is a first-class, reportable quantity here — neither evaluator is
//! silently preferred.

use crate::error::{Error, Result};
use crate::gamma::ln_q_bracket;
use crate::series::{k_harmonic_series, q_power_series, KahanSum};
use crate::types::{check_k, check_p, check_q, EvalPoint, PsiValue, SeriesBudget, EULER_GAMMA};

// Asymptotic digamma coefficients: B_{2j}/(2j) for the tail
// ln x - 1/(2x) - sum B_{2j}/(2j x^{2j}).
const S3: f64 = 1.0 / 12.0;
const S4: f64 = 1.0 / 120.0;
const S5: f64 = 1.0 / 252.0;
const S6: f64 = 1.0 / 240.0;
const S7: f64 = 1.0 / 132.0;
const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

/// psi(t) for t > 0, by upward recurrence into the asymptotic regime.
/// Absolute error is below 1e-13 on the whole positive axis.
pub fn psi_classical(t: EvalPoint) -> PsiValue {
    let mut x = t.get();
    let mut acc = 0.0;
    while x < ASYMPTOTIC_THRESHOLD {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let mut r = 1.0 / x;
    acc += x.ln() - 0.5 * r;
    r *= r;
    acc -= r * (S3 - r * (S4 - r * (S5 - r * (S6 - r * S7))));
    PsiValue {
        value: acc,
        tail_bound: 1e-13 + 1e-15 * acc.abs(),
    }
}

/// p-psi: `ln p - sum_{n=0}^{p} 1/(n+t)`, an exact finite sum.
pub fn psi_p(p: u32, t: EvalPoint) -> Result<PsiValue> {
    check_p(p)?;
    let t = t.get();
    let mut acc = KahanSum::default();
    for n in 0..=(p as u64) {
        acc.add(1.0 / (t + n as f64));
    }
    Ok(PsiValue {
        value: (p as f64).ln() - acc.value(),
        tail_bound: 0.0,
    })
}

/// q-psi: `-ln(1-q) + ln q sum_{n>=1} q^{nt}/(1-q^n)` with a geometric
/// tail bound.
pub fn psi_q(q: f64, t: EvalPoint, budget: SeriesBudget) -> Result<PsiValue> {
    check_q(q)?;
    let t = t.get();
    let ln_q = q.ln();
    let inner = SeriesBudget {
        tail_tol: budget.tail_tol / (-ln_q),
        max_terms: budget.max_terms,
    };
    let sum = q_power_series(q, t, inner).map_err(|e| scale_budget_err(e, -ln_q))?;
    Ok(PsiValue {
        value: -(-q).ln_1p() + ln_q * sum.value,
        tail_bound: -ln_q * sum.tail_bound,
    })
}

/// k-psi: `(ln k - gamma)/k - 1/t + sum_{n>=1} t/(nk(nk+t))`.
pub fn psi_k(k: f64, t: EvalPoint, budget: SeriesBudget) -> Result<PsiValue> {
    check_k(k)?;
    let t = t.get();
    let sum = k_harmonic_series(k, t, budget)?;
    Ok(PsiValue {
        value: (k.ln() - EULER_GAMMA) / k - 1.0 / t + sum.value,
        tail_bound: sum.tail_bound,
    })
}

/// (p,q)-psi, series form: `ln[p]_q + ln q sum_{n=1}^{p} q^{nt}/(1-q^n)`.
/// Exact finite sum; this is the form the sign bounds consume.
pub fn psi_pq_series(p: u32, q: f64, t: EvalPoint) -> Result<PsiValue> {
    check_p(p)?;
    check_q(q)?;
    let t = t.get();
    let ln_q = q.ln();
    let mut acc = KahanSum::default();
    for n in 1..=(p as u64) {
        let nf = n as f64;
        acc.add((nf * t * ln_q).exp() / (-(nf * ln_q).exp_m1()));
    }
    Ok(PsiValue {
        value: ln_q_bracket(p as f64, q)? + ln_q * acc.value(),
        tail_bound: 0.0,
    })
}

/// (p,q)-psi, definitional form: the exact log-derivative of the
/// (p,q)-Gamma product, `ln[p]_q + ln q sum_{j=0}^{p} q^{t+j}/(1-q^{t+j})`.
pub fn psi_pq_definitional(p: u32, q: f64, t: EvalPoint) -> Result<PsiValue> {
    check_p(p)?;
    check_q(q)?;
    let t = t.get();
    let ln_q = q.ln();
    let mut acc = KahanSum::default();
    for j in 0..=(p as u64) {
        let e = (t + j as f64) * ln_q;
        acc.add(e.exp() / (-e.exp_m1()));
    }
    Ok(PsiValue {
        value: ln_q_bracket(p as f64, q)? + ln_q * acc.value(),
        tail_bound: 0.0,
    })
}

/// (q,k)-psi: `-ln(1-q)/k + ln q sum_{n>=1} q^{nkt}/(1-q^{nk})`.
pub fn psi_qk(q: f64, k: f64, t: EvalPoint, budget: SeriesBudget) -> Result<PsiValue> {
    check_q(q)?;
    check_k(k)?;
    let t = t.get();
    let ln_q = q.ln();
    let head = -(-q).ln_1p() / k;
    // The series in q^{nk} is the q-power series with base q^k.
    let base = (k * ln_q).exp();
    if base == 0.0 {
        // q^k underflows: every term is zero and so is the true tail.
        return Ok(PsiValue {
            value: head,
            tail_bound: 0.0,
        });
    }
    let inner = SeriesBudget {
        tail_tol: budget.tail_tol / (-ln_q),
        max_terms: budget.max_terms,
    };
    let sum = q_power_series(base, t, inner).map_err(|e| scale_budget_err(e, -ln_q))?;
    Ok(PsiValue {
        value: head + ln_q * sum.value,
        tail_bound: -ln_q * sum.tail_bound,
    })
}

fn scale_budget_err(e: Error, factor: f64) -> Error {
    match e {
        Error::BudgetExceeded {
            requested,
            achieved,
            terms,
        } => Error::BudgetExceeded {
            requested: requested * factor,
            achieved: achieved * factor,
            terms,
        },
        other => other,
    }
}
