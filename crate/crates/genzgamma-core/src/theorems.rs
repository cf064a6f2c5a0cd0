//! Monotone-witness construction and double-inequality chain
//! certification for the four Gamma-ratio theorems.
//!
//! Each theorem is certified through a log-space auxiliary function
//! whose derivative is `g'(t)` times the matching lemma expression:
//!
//! * `G` (theorem 1, non-increasing):
//!   `ln G = lam g ln(1-q) + mu g ln[p]_q + lam ln Gamma_q(g) - mu ln Gamma_pq(g)`
//! * `H` (theorem 2, non-increasing):
//!   `ln H = (lam - mu/k) g ln(1-q) + lam ln Gamma_q(g) - mu ln Gamma_qk(g)`
//! * `S` (theorem 3, increasing):
//!   `ln S = lam ln g - (lam/k) g ln k + (lam gamma/k) g + mu g ln[p]_q
//!           + lam ln Gamma_k(g) - mu ln Gamma_pq(g)`
//! * `T` (theorem 4, increasing):
//!   `ln T = lam ln g + (lam gamma/k) g - (lam/k) g ln k - (mu/k) g ln(1-q)
//!           + lam ln Gamma_k(g) - mu ln Gamma_qk(g)`
//!
//! The (p,q)-Gamma factor inside `G` and `S` is the series-anchored
//! evaluator ([`crate::gamma::log_gamma_pq_series`]), whose
//! log-derivative is exactly the finite psi sum the lemmas use; with the
//! product form the derivative identity tying the witnesses to the
//! lemmas would fail by an O(1) amount at small p.
//!
//! The displayed inequality chains compare the witness at 0, x, y after
//! adding an x-dependent offset that cancels in all orderings, so
//! `verify_chain` computes both routes and refuses to certify when they
//! drift apart beyond round-off and tail bounds.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{ln_q_bracket, log_gamma_k, log_gamma_pq_series, log_gamma_q, log_gamma_qk};
use crate::lemmas::{lemma1_value, lemma2_value, lemma3_value, lemma4_value, roundoff_slack};
use crate::types::{
    check_k, check_p, check_q, EvalPoint, GFunction, ScalePair, SeriesBudget, SignCertificate,
    EULER_GAMMA,
};

/// The four auxiliary functions, named as in the proofs they mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AuxFunction {
    G,
    H,
    S,
    T,
}

impl AuxFunction {
    pub fn theorem_id(self) -> u8 {
        match self {
            AuxFunction::G => 1,
            AuxFunction::H => 2,
            AuxFunction::S => 3,
            AuxFunction::T => 4,
        }
    }

    pub fn for_theorem(id: u8) -> Result<Self> {
        match id {
            1 => Ok(AuxFunction::G),
            2 => Ok(AuxFunction::H),
            3 => Ok(AuxFunction::S),
            4 => Ok(AuxFunction::T),
            other => Err(Error::Domain(format!("no such theorem: {other}"))),
        }
    }

    /// Expected monotonicity: true = non-increasing (G, H),
    /// false = strictly increasing (S, T).
    pub fn expects_nonincreasing(self) -> bool {
        matches!(self, AuxFunction::G | AuxFunction::H)
    }
}

/// Validated parameter record for one theorem instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremParams {
    pub aux: AuxFunction,
    pub scale: ScalePair,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    pub g: GFunction,
    pub budget: SeriesBudget,
}

impl TheoremParams {
    /// Theorem 1: `lam >= mu`, p in N, q in (0,1).
    pub fn theorem1(
        scale: ScalePair,
        p: u32,
        q: f64,
        g: GFunction,
        budget: SeriesBudget,
    ) -> Result<Self> {
        if !scale.is_ordered() {
            return Err(Error::domain("theorem 1 requires lambda >= mu"));
        }
        check_p(p)?;
        check_q(q)?;
        Ok(TheoremParams {
            aux: AuxFunction::G,
            scale,
            p: Some(p),
            q: Some(q),
            k: None,
            g,
            budget,
        })
    }

    /// Theorem 2: `lam >= mu`, q in (0,1), k >= 1.
    pub fn theorem2(
        scale: ScalePair,
        q: f64,
        k: f64,
        g: GFunction,
        budget: SeriesBudget,
    ) -> Result<Self> {
        if !scale.is_ordered() {
            return Err(Error::domain("theorem 2 requires lambda >= mu"));
        }
        check_q(q)?;
        if k.is_nan() || k < 1.0 {
            return Err(Error::Domain(format!("theorem 2 requires k >= 1, got {k}")));
        }
        Ok(TheoremParams {
            aux: AuxFunction::H,
            scale,
            p: None,
            q: Some(q),
            k: Some(k),
            g,
            budget,
        })
    }

    /// Theorem 3: lam, mu > 0 unordered; k > 0; p in N; q in (0,1).
    pub fn theorem3(
        scale: ScalePair,
        k: f64,
        p: u32,
        q: f64,
        g: GFunction,
        budget: SeriesBudget,
    ) -> Result<Self> {
        check_k(k)?;
        check_p(p)?;
        check_q(q)?;
        Ok(TheoremParams {
            aux: AuxFunction::S,
            scale,
            p: Some(p),
            q: Some(q),
            k: Some(k),
            g,
            budget,
        })
    }

    /// Theorem 4: lam, mu > 0 unordered; k > 0; q in (0,1).
    pub fn theorem4(
        scale: ScalePair,
        q: f64,
        k: f64,
        g: GFunction,
        budget: SeriesBudget,
    ) -> Result<Self> {
        check_q(q)?;
        check_k(k)?;
        Ok(TheoremParams {
            aux: AuxFunction::T,
            scale,
            p: None,
            q: Some(q),
            k: Some(k),
            g,
            budget,
        })
    }

    fn p(&self) -> Result<u32> {
        self.p
            .ok_or_else(|| Error::domain("p is unused for this theorem"))
    }

    fn q(&self) -> Result<f64> {
        self.q
            .ok_or_else(|| Error::domain("q is unused for this theorem"))
    }

    fn k(&self) -> Result<f64> {
        self.k
            .ok_or_else(|| Error::domain("k is unused for this theorem"))
    }
}

/// Log value and propagated tail bound of the auxiliary function at t >= 0.
pub fn log_aux(params: &TheoremParams, t: f64) -> Result<(f64, f64)> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Domain(format!(
            "witness argument must be >= 0, got {t}"
        )));
    }
    let gt = params.g.eval(t);
    let g = EvalPoint::new(gt)?;
    let (lambda, mu) = (params.scale.lambda(), params.scale.mu());
    let budget = params.budget;
    match params.aux {
        AuxFunction::G => {
            let q = params.q()?;
            let p = params.p()?;
            let gq = log_gamma_q(q, g, budget)?;
            let gpq = log_gamma_pq_series(p, q, g)?;
            let value = lambda * gt * (-q).ln_1p()
                + mu * gt * ln_q_bracket(p as f64, q)?
                + lambda * gq.log_value
                - mu * gpq.log_value;
            Ok((value, lambda * gq.tail_bound))
        }
        AuxFunction::H => {
            let q = params.q()?;
            let k = params.k()?;
            let gq = log_gamma_q(q, g, budget)?;
            let gqk = log_gamma_qk(q, k, g, budget)?;
            let value =
                (lambda - mu / k) * gt * (-q).ln_1p() + lambda * gq.log_value - mu * gqk.log_value;
            Ok((value, lambda * gq.tail_bound + mu * gqk.tail_bound))
        }
        AuxFunction::S => {
            let q = params.q()?;
            let p = params.p()?;
            let k = params.k()?;
            let gk = log_gamma_k(k, g)?;
            let gpq = log_gamma_pq_series(p, q, g)?;
            let value = lambda * gt.ln() - lambda * gt * k.ln() / k
                + lambda * EULER_GAMMA * gt / k
                + mu * gt * ln_q_bracket(p as f64, q)?
                + lambda * gk.log_value
                - mu * gpq.log_value;
            Ok((value, lambda * gk.tail_bound))
        }
        AuxFunction::T => {
            let q = params.q()?;
            let k = params.k()?;
            let gk = log_gamma_k(k, g)?;
            let gqk = log_gamma_qk(q, k, g, budget)?;
            let value = lambda * gt.ln() + lambda * EULER_GAMMA * gt / k
                - lambda * gt * k.ln() / k
                - mu * gt * (-q).ln_1p() / k
                + lambda * gk.log_value
                - mu * gqk.log_value;
            Ok((value, lambda * gk.tail_bound + mu * gqk.tail_bound))
        }
    }
}

/// The lemma expression driving the derivative of the witness, evaluated
/// at g(t): `d/dt ln F(t) = g'(t) * lemma(g(t))` exactly.
pub fn matching_lemma_value(params: &TheoremParams, t: f64) -> Result<SignCertificate> {
    let gt = params.g.eval(t);
    match params.aux {
        AuxFunction::G => lemma1_value(&params.scale, params.p()?, params.q()?, gt, params.budget),
        AuxFunction::H => lemma2_value(&params.scale, params.q()?, params.k()?, gt, params.budget),
        AuxFunction::S => lemma3_value(
            &params.scale,
            params.k()?,
            params.p()?,
            params.q()?,
            gt,
            params.budget,
        ),
        AuxFunction::T => lemma4_value(&params.scale, params.q()?, params.k()?, gt, params.budget),
    }
}

/// One sampled point of a monotone witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneSample {
    pub t: f64,
    pub log_value: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonotoneVerdict {
    CertifiedMonotone,
    Violation { t_lo: f64, t_hi: f64 },
    Inconclusive,
}

/// Sampled evidence that a witness is monotone in its expected direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneWitness {
    pub function: AuxFunction,
    pub params: TheoremParams,
    pub samples: Vec<MonotoneSample>,
    pub verdict: MonotoneVerdict,
}

/// Default witness sampling grid: spans the near-zero and asymptotic
/// regimes of every shipped g family.
pub const DEFAULT_T_GRID: [f64; 8] = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0];

/// Evaluate the witness over `t_grid` (strictly increasing, at least 8
/// points, starting at 0) and certify its monotonicity direction with
/// tail-aware comparisons. `G`/`H` are certified non-strictly, `S`/`T`
/// strictly: a step inside the error band downgrades them to
/// inconclusive instead of certifying.
pub fn certify_monotone(params: &TheoremParams, t_grid: &[f64]) -> Result<MonotoneWitness> {
    if t_grid.len() < 8 {
        return Err(Error::domain("witness grid needs at least 8 points"));
    }
    if t_grid[0] != 0.0 {
        return Err(Error::domain(
            "witness grid must include t = 0 as its first point",
        ));
    }
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("witness grid must be strictly increasing"));
    }
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let (log_value, tail_bound) = log_aux(params, t)?;
        samples.push(MonotoneSample {
            t,
            log_value,
            tail_bound,
        });
    }
    let nonincreasing = params.aux.expects_nonincreasing();
    let mut strict_everywhere = true;
    for w in samples.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let step = hi.log_value - lo.log_value;
        let tol =
            lo.tail_bound + hi.tail_bound + roundoff_slack(lo.log_value.abs() + hi.log_value.abs());
        let robust_violation = if nonincreasing {
            step > tol
        } else {
            step < -tol
        };
        if robust_violation {
            return Ok(MonotoneWitness {
                function: params.aux,
                params: *params,
                samples,
                verdict: MonotoneVerdict::Violation {
                    t_lo: lo.t,
                    t_hi: hi.t,
                },
            });
        }
        if !nonincreasing && step <= tol {
            strict_everywhere = false;
        }
    }
    let verdict = if nonincreasing || strict_everywhere {
        MonotoneVerdict::CertifiedMonotone
    } else {
        MonotoneVerdict::Inconclusive
    };
    Ok(MonotoneWitness {
        function: params.aux,
        params: *params,
        samples,
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainVerdict {
    Certified,
    Violation,
    Inconclusive,
}

/// Verdict for one displayed double inequality at a sampled (0, x, y).
///
/// For theorems 1–2 the chain is `left >= mid >= right` and margins are
/// `(left - mid, mid - right)`; for theorems 3–4 it is
/// `left < mid < right` with margins `(mid - left, right - mid)`. In
/// both cases the margins are nonnegative exactly when the chain holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainCertificate {
    pub theorem_id: u8,
    pub params: TheoremParams,
    pub x: f64,
    pub y: f64,
    pub left_log: f64,
    pub mid_log: f64,
    pub right_log: f64,
    pub margins: [f64; 2],
    pub tolerances: [f64; 2],
    pub verdict: ChainVerdict,
}

/// Evaluate the displayed chain of `theorem_id` at `0 < x < y`, checking
/// the direct formulas against the monotone-witness route.
pub fn verify_chain(
    theorem_id: u8,
    x: f64,
    y: f64,
    params: &TheoremParams,
) -> Result<ChainCertificate> {
    let aux = AuxFunction::for_theorem(theorem_id)?;
    if aux != params.aux {
        return Err(Error::Domain(format!(
            "theorem {theorem_id} does not match params for {:?}",
            params.aux
        )));
    }
    if !(0.0 < x && x < y && y.is_finite()) {
        return Err(Error::Domain(format!(
            "chain points must satisfy 0 < x < y, got ({x}, {y})"
        )));
    }
    let (lambda, mu) = (params.scale.lambda(), params.scale.mu());
    let g0 = params.g.eval(0.0);
    let gx = params.g.eval(x);
    let gy = params.g.eval(y);

    // Direct route: the displayed ratios in log space. `shift` is
    // g(.) - g(x) and vanishes for the middle term.
    let chain_logs = |g_at: f64, is_mid: bool| -> Result<(f64, f64)> {
        let ge = EvalPoint::new(g_at)?;
        let shift = if is_mid { 0.0 } else { g_at - gx };
        let ln_g_ratio = if is_mid { 0.0 } else { g_at.ln() - gx.ln() };
        match params.aux {
            AuxFunction::G => {
                let q = params.q()?;
                let p = params.p()?;
                let gq = log_gamma_q(q, ge, params.budget)?;
                let gpq = log_gamma_pq_series(p, q, ge)?;
                Ok((
                    lambda * shift * (-q).ln_1p()
                        + mu * shift * ln_q_bracket(p as f64, q)?
                        + lambda * gq.log_value
                        - mu * gpq.log_value,
                    lambda * gq.tail_bound,
                ))
            }
            AuxFunction::H => {
                let q = params.q()?;
                let k = params.k()?;
                let gq = log_gamma_q(q, ge, params.budget)?;
                let gqk = log_gamma_qk(q, k, ge, params.budget)?;
                Ok((
                    (lambda - mu / k) * shift * (-q).ln_1p() + lambda * gq.log_value
                        - mu * gqk.log_value,
                    lambda * gq.tail_bound + mu * gqk.tail_bound,
                ))
            }
            AuxFunction::S => {
                let q = params.q()?;
                let p = params.p()?;
                let k = params.k()?;
                let gk = log_gamma_k(k, ge)?;
                let gpq = log_gamma_pq_series(p, q, ge)?;
                Ok((
                    lambda * ln_g_ratio - lambda * shift * k.ln() / k
                        + lambda * EULER_GAMMA * shift / k
                        + mu * shift * ln_q_bracket(p as f64, q)?
                        + lambda * gk.log_value
                        - mu * gpq.log_value,
                    lambda * gk.tail_bound,
                ))
            }
            AuxFunction::T => {
                let q = params.q()?;
                let k = params.k()?;
                let gk = log_gamma_k(k, ge)?;
                let gqk = log_gamma_qk(q, k, ge, params.budget)?;
                Ok((
                    lambda * ln_g_ratio + lambda * EULER_GAMMA * shift / k
                        - lambda * shift * k.ln() / k
                        - mu * shift * (-q).ln_1p() / k
                        + lambda * gk.log_value
                        - mu * gqk.log_value,
                    lambda * gk.tail_bound + mu * gqk.tail_bound,
                ))
            }
        }
    };
    let (left_log, left_tail) = chain_logs(g0, false)?;
    let (mid_log, mid_tail) = chain_logs(gx, true)?;
    let (right_log, right_tail) = chain_logs(gy, false)?;

    // Witness route: the same gaps must come out of the monotone
    // function samples.
    let (u0, u0_tail) = log_aux(params, 0.0)?;
    let (ux, ux_tail) = log_aux(params, x)?;
    let (uy, uy_tail) = log_aux(params, y)?;
    let route_scale = u0.abs() + ux.abs() + uy.abs() + left_log.abs();
    let route_checks = [
        (
            left_log - mid_log,
            u0 - ux,
            left_tail + mid_tail + u0_tail + ux_tail,
        ),
        (
            mid_log - right_log,
            ux - uy,
            mid_tail + right_tail + ux_tail + uy_tail,
        ),
    ];
    for (direct, witness, tails) in route_checks {
        let tol = tails + roundoff_slack(route_scale);
        if (direct - witness).abs() > tol {
            return Err(Error::InconsistentRoutes(format!(
                "theorem {theorem_id} at (x={x}, y={y}): direct gap {direct:.17e} vs witness gap {witness:.17e} (tol {tol:.3e})"
            )));
        }
    }

    let tol1 = left_tail + mid_tail + roundoff_slack(left_log.abs() + mid_log.abs());
    let tol2 = mid_tail + right_tail + roundoff_slack(mid_log.abs() + right_log.abs());
    let (margins, verdict) = if aux.expects_nonincreasing() {
        // left >= mid >= right, non-strict
        let m = [left_log - mid_log, mid_log - right_log];
        let verdict = if m[0] < -tol1 || m[1] < -tol2 {
            ChainVerdict::Violation
        } else {
            ChainVerdict::Certified
        };
        (m, verdict)
    } else {
        // left < mid < right, strict: certification needs margin > tol
        let m = [mid_log - left_log, right_log - mid_log];
        let verdict = if m[0] < -tol1 || m[1] < -tol2 {
            ChainVerdict::Violation
        } else if m[0] > tol1 && m[1] > tol2 {
            ChainVerdict::Certified
        } else {
            ChainVerdict::Inconclusive
        };
        (m, verdict)
    };
    Ok(ChainCertificate {
        theorem_id,
        params: *params,
        x,
        y,
        left_log,
        mid_log,
        right_log,
        margins,
        tolerances: [tol1, tol2],
        verdict,
    })
}

/// One point of the theorem certification grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremCase {
    pub theorem_id: u8,
    pub params: TheoremParams,
    pub x: f64,
    pub y: f64,
}

pub const DEFAULT_XY_GRID: [(f64, f64); 3] = [(0.25, 0.75), (0.5, 1.5), (1.0, 3.0)];

/// Default g families: the two affine instantiations that recover the
/// earlier specializations (one of them unit-slope, paired with
/// lam = mu = 1 in the grid) plus a bounded increasing family.
pub fn default_g_functions() -> Vec<GFunction> {
    vec![
        GFunction::affine(1.0, 1.0).unwrap(),
        GFunction::affine(0.5, 2.0).unwrap(),
        GFunction::affine_unit_slope(1.0).unwrap(),
        GFunction::exponential_saturating(0.5, 2.0).unwrap(),
    ]
}

/// Default chain grid: 2,592 hypothesis-respecting cases across the four
/// theorems, every g family and every (x, y) pair, including pairs
/// inside (0, 1).
pub fn default_theorem_grid() -> Vec<TheoremCase> {
    let scales = [(1.0, 1.0), (2.0, 1.0), (1.0, 0.5), (5.0, 0.1)];
    let qs = [0.1, 0.5, 0.9];
    let ps = [1u32, 5, 50];
    let ks_ge1 = [1.0, 2.0, 5.0];
    let ks_pos = [0.25, 1.0, 2.5];
    let budget = SeriesBudget::default();
    let mut grid = Vec::new();
    for g in default_g_functions() {
        for &(l, m) in &scales {
            let ordered = ScalePair::ordered(l, m).unwrap();
            for &q in &qs {
                for &(x, y) in &DEFAULT_XY_GRID {
                    for &p in &ps {
                        let params = TheoremParams::theorem1(ordered, p, q, g, budget).unwrap();
                        grid.push(TheoremCase {
                            theorem_id: 1,
                            params,
                            x,
                            y,
                        });
                        for &k in &ks_pos {
                            let params =
                                TheoremParams::theorem3(ordered, k, p, q, g, budget).unwrap();
                            grid.push(TheoremCase {
                                theorem_id: 3,
                                params,
                                x,
                                y,
                            });
                        }
                    }
                    for &k in &ks_ge1 {
                        let params = TheoremParams::theorem2(ordered, q, k, g, budget).unwrap();
                        grid.push(TheoremCase {
                            theorem_id: 2,
                            params,
                            x,
                            y,
                        });
                    }
                    for &k in &ks_pos {
                        let params = TheoremParams::theorem4(ordered, q, k, g, budget).unwrap();
                        grid.push(TheoremCase {
                            theorem_id: 4,
                            params,
                            x,
                            y,
                        });
                    }
                }
            }
        }
    }
    grid
}

/// Run chain verification over a grid; order is preserved.
pub fn run_theorem_cases(grid: &[TheoremCase], parallel: bool) -> Result<Vec<ChainCertificate>> {
    if parallel {
        grid.par_iter()
            .map(|c| verify_chain(c.theorem_id, c.x, c.y, &c.params))
            .collect()
    } else {
        grid.iter()
            .map(|c| verify_chain(c.theorem_id, c.x, c.y, &c.params))
            .collect()
    }
}

/// The full default suite.
pub fn run_theorem_suite(parallel: bool) -> Result<Vec<ChainCertificate>> {
    run_theorem_cases(&default_theorem_grid(), parallel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SeriesBudget {
        SeriesBudget::default()
    }

    fn t1_params() -> TheoremParams {
        TheoremParams::theorem1(
            ScalePair::ordered(1.0, 1.0).unwrap(),
            5,
            0.5,
            GFunction::affine(1.0, 1.0).unwrap(),
            budget(),
        )
        .unwrap()
    }

    #[test]
    fn g_witness_is_nonincreasing_on_direct_samples() {
        let params = t1_params();
        let v0 = log_aux(&params, 0.0).unwrap().0;
        let v1 = log_aux(&params, 1.0).unwrap().0;
        let v2 = log_aux(&params, 2.0).unwrap().0;
        assert!(v0 >= v1 && v1 >= v2, "{v0} {v1} {v2}");
        let witness = certify_monotone(&params, &DEFAULT_T_GRID).unwrap();
        assert_eq!(witness.verdict, MonotoneVerdict::CertifiedMonotone);
    }

    #[test]
    fn g_witness_finite_on_wide_range() {
        let params = t1_params();
        for i in 0..=20 {
            let t = 5.0 * i as f64;
            let (v, _) = log_aux(&params, t).unwrap();
            assert!(v.is_finite(), "t={t}");
        }
    }

    #[test]
    fn h_witness_constant_at_k_one_equal_scales() {
        let params = TheoremParams::theorem2(
            ScalePair::ordered(1.0, 1.0).unwrap(),
            0.5,
            1.0,
            GFunction::affine(1.0, 1.0).unwrap(),
            budget(),
        )
        .unwrap();
        let (v0, b0) = log_aux(&params, 0.0).unwrap();
        let (v3, b3) = log_aux(&params, 3.0).unwrap();
        assert!((v0 - v3).abs() <= b0 + b3 + 1e-11, "{v0} vs {v3}");
        let witness = certify_monotone(&params, &DEFAULT_T_GRID).unwrap();
        assert_eq!(witness.verdict, MonotoneVerdict::CertifiedMonotone);
    }

    #[test]
    fn h_witness_nonincreasing() {
        let params = TheoremParams::theorem2(
            ScalePair::ordered(1.0, 1.0).unwrap(),
            0.5,
            2.0,
            GFunction::affine(1.0, 1.0).unwrap(),
            budget(),
        )
        .unwrap();
        let witness = certify_monotone(&params, &DEFAULT_T_GRID).unwrap();
        assert_eq!(witness.verdict, MonotoneVerdict::CertifiedMonotone);
        assert!(witness
            .samples
            .windows(2)
            .all(|w| w[1].log_value <= w[0].log_value + w[0].tail_bound + w[1].tail_bound + 1e-11));
    }

    #[test]
    fn s_witness_strictly_increasing() {
        let params = TheoremParams::theorem3(
            ScalePair::free(1.0, 1.0).unwrap(),
            1.0,
            5,
            0.5,
            GFunction::affine(1.0, 1.0).unwrap(),
            budget(),
        )
        .unwrap();
        let grid = [0.0, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 16.0];
        let witness = certify_monotone(&params, &grid).unwrap();
        assert_eq!(witness.verdict, MonotoneVerdict::CertifiedMonotone);
        assert!(witness
            .samples
            .windows(2)
            .all(|w| w[1].log_value > w[0].log_value));
    }

    #[test]
    fn t_witness_increasing_all_g_families() {
        for g in default_g_functions() {
            let params =
                TheoremParams::theorem4(ScalePair::free(1.0, 1.0).unwrap(), 0.5, 2.0, g, budget())
                    .unwrap();
            let witness = certify_monotone(&params, &DEFAULT_T_GRID).unwrap();
            assert_eq!(
                witness.verdict,
                MonotoneVerdict::CertifiedMonotone,
                "g = {g:?}"
            );
        }
    }

    #[test]
    fn derivative_matches_lemma_expression() {
        // central difference of the witness log vs g'(t) * lemma value
        let h = 1e-4;
        let params_list = [
            t1_params(),
            TheoremParams::theorem2(
                ScalePair::ordered(2.0, 1.0).unwrap(),
                0.3,
                2.0,
                GFunction::exponential_saturating(0.5, 2.0).unwrap(),
                budget(),
            )
            .unwrap(),
            TheoremParams::theorem3(
                ScalePair::free(0.5, 2.0).unwrap(),
                0.7,
                3,
                0.6,
                GFunction::affine(0.5, 2.0).unwrap(),
                budget(),
            )
            .unwrap(),
            TheoremParams::theorem4(
                ScalePair::free(1.5, 0.2).unwrap(),
                0.8,
                0.5,
                GFunction::affine_unit_slope(1.0).unwrap(),
                budget(),
            )
            .unwrap(),
        ];
        for params in params_list {
            for t in [0.3, 1.0, 2.7] {
                let up = log_aux(&params, t + h).unwrap().0;
                let dn = log_aux(&params, t - h).unwrap().0;
                let fd = (up - dn) / (2.0 * h);
                let lemma = matching_lemma_value(&params, t).unwrap();
                let want = params.g.deriv(t) * lemma.value;
                assert!(
                    (fd - want).abs() <= 1e-6,
                    "{:?} t={t}: fd {fd} vs {want}",
                    params.aux
                );
            }
        }
    }

    #[test]
    fn chain_certificates_for_known_points() {
        // theorem 1 at (0.5, 1.5)
        let cert = verify_chain(1, 0.5, 1.5, &t1_params()).unwrap();
        assert_eq!(cert.verdict, ChainVerdict::Certified);
        assert!(cert.left_log >= cert.mid_log && cert.mid_log >= cert.right_log);
        assert!(cert.margins[0] >= 0.0 && cert.margins[1] >= 0.0);

        // theorem 4 at (1, 2): strict ordering
        let params = TheoremParams::theorem4(
            ScalePair::free(1.0, 1.0).unwrap(),
            0.5,
            2.0,
            GFunction::affine(1.0, 1.0).unwrap(),
            budget(),
        )
        .unwrap();
        let cert = verify_chain(4, 1.0, 2.0, &params).unwrap();
        assert_eq!(cert.verdict, ChainVerdict::Certified);
        assert!(cert.left_log < cert.mid_log && cert.mid_log < cert.right_log);
    }

    #[test]
    fn chain_margins_shrink_as_y_approaches_x() {
        let params = t1_params();
        let wide = verify_chain(1, 0.5, 1.5, &params).unwrap();
        let narrow = verify_chain(1, 0.5, 0.5 + 1e-6, &params).unwrap();
        assert!(narrow.margins[1] < wide.margins[1]);
        assert!(narrow.margins[1].abs() < 1e-4);
    }

    #[test]
    fn chain_rejects_bad_points() {
        let params = t1_params();
        assert!(verify_chain(1, 0.0, 1.0, &params).is_err());
        assert!(verify_chain(1, 2.0, 1.0, &params).is_err());
        assert!(verify_chain(3, 0.5, 1.0, &params).is_err()); // wrong aux
    }

    #[test]
    fn monotone_grid_preconditions() {
        let params = t1_params();
        assert!(certify_monotone(&params, &[0.0, 1.0, 2.0]).is_err());
        let no_zero = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0];
        assert!(certify_monotone(&params, &no_zero).is_err());
        let unsorted = [0.0, 2.0, 1.0, 3.0, 4.0, 5.0, 6.0, 7.0];
        assert!(certify_monotone(&params, &unsorted).is_err());
    }

    #[test]
    fn out_of_hypothesis_violations_are_reportable() {
        // lam < mu breaks theorem 1's ordering; build the params by hand
        // and look for a monotonicity violation, reported not asserted.
        let params = TheoremParams {
            aux: AuxFunction::G,
            scale: ScalePair::free(0.25, 2.0).unwrap(),
            p: Some(1),
            q: Some(0.5),
            k: None,
            g: GFunction::affine(1.0, 1.0).unwrap(),
            budget: budget(),
        };
        let witness = certify_monotone(&params, &DEFAULT_T_GRID).unwrap();
        println!("out-of-hypothesis G witness verdict: {:?}", witness.verdict);
        assert!(matches!(
            witness.verdict,
            MonotoneVerdict::Violation { .. } | MonotoneVerdict::CertifiedMonotone
        ));
    }

    #[test]
    fn default_grid_composition() {
        let grid = default_theorem_grid();
        assert_eq!(grid.len(), 2592);
        assert_eq!(grid.iter().filter(|c| c.theorem_id == 1).count(), 432);
        assert_eq!(grid.iter().filter(|c| c.theorem_id == 2).count(), 432);
        assert_eq!(grid.iter().filter(|c| c.theorem_id == 3).count(), 1296);
        assert_eq!(grid.iter().filter(|c| c.theorem_id == 4).count(), 432);
        // the unit-slope instantiation with lam = mu = 1 is present
        assert!(grid.iter().any(|c| {
            matches!(c.params.g, GFunction::AffineUnitSlope { .. })
                && c.params.scale.lambda() == 1.0
                && c.params.scale.mu() == 1.0
        }));
    }
}
