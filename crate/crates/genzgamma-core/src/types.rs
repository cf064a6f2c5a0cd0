//! Shared domain types: validated parameters, budgets and value-with-bound
//! records carried through every evaluator.

use serde::Serialize;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant, 20 digits.
pub const EULER_GAMMA: f64 = 0.57721566490153286061;

/// A strictly positive evaluation point `t`.
///
/// Every family in this crate is defined for `t > 0` only; `t <= 0` is a
/// domain error (poles or undefined), not a NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EvalPoint(f64);

impl EvalPoint {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t > 0.0 {
            Ok(EvalPoint(t))
        } else {
            Err(Error::Domain(format!(
                "evaluation point must be finite and > 0, got {t}"
            )))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for EvalPoint {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        EvalPoint::new(t)
    }
}

/// Truncation policy for the infinite-series evaluators: an absolute
/// tolerance on the certified tail bound plus a hard cap on summed terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesBudget {
    pub tail_tol: f64,
    pub max_terms: usize,
}

impl SeriesBudget {
    pub fn new(tail_tol: f64, max_terms: usize) -> Result<Self> {
        if !(tail_tol.is_finite() && tail_tol > 0.0) {
            return Err(Error::Domain(format!(
                "tail_tol must be > 0, got {tail_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be >= 1"));
        }
        Ok(SeriesBudget {
            tail_tol,
            max_terms,
        })
    }
}

impl Default for SeriesBudget {
    /// `tail_tol = 1e-12`, `max_terms = 10^6`: double-precision floor with
    /// headroom for the slowest admissible parameters.
    fn default() -> Self {
        SeriesBudget {
            tail_tol: 1e-12,
            max_terms: 1_000_000,
        }
    }
}

/// Bundle of generalization parameters. A `None` field means the parameter
/// is unused by the family at hand; reading an unused parameter is an error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamSet {
    pub p: Option<u32>,
    pub q: Option<f64>,
    pub k: Option<f64>,
}

impl ParamSet {
    pub fn new(p: Option<u32>, q: Option<f64>, k: Option<f64>) -> Result<Self> {
        if let Some(p) = p {
            check_p(p)?;
        }
        if let Some(q) = q {
            check_q(q)?;
        }
        if let Some(k) = k {
            check_k(k)?;
        }
        Ok(ParamSet { p, q, k })
    }

    pub fn p_only(p: u32) -> Result<Self> {
        Self::new(Some(p), None, None)
    }

    pub fn q_only(q: f64) -> Result<Self> {
        Self::new(None, Some(q), None)
    }

    pub fn k_only(k: f64) -> Result<Self> {
        Self::new(None, None, Some(k))
    }

    pub fn pq(p: u32, q: f64) -> Result<Self> {
        Self::new(Some(p), Some(q), None)
    }

    pub fn qk(q: f64, k: f64) -> Result<Self> {
        Self::new(None, Some(q), Some(k))
    }

    pub fn p(&self) -> Result<u32> {
        self.p
            .ok_or_else(|| Error::domain("parameter p is unused for this family"))
    }

    pub fn q(&self) -> Result<f64> {
        self.q
            .ok_or_else(|| Error::domain("parameter q is unused for this family"))
    }

    pub fn k(&self) -> Result<f64> {
        self.k
            .ok_or_else(|| Error::domain("parameter k is unused for this family"))
    }
}

pub(crate) fn check_p(p: u32) -> Result<()> {
    if p >= 1 {
        Ok(())
    } else {
        Err(Error::domain("p must be a positive integer"))
    }
}

pub(crate) fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && 0.0 < q && q < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "q must lie in the open interval (0, 1), got {q}"
        )))
    }
}

pub(crate) fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("k must be > 0, got {k}")))
    }
}

pub(crate) fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be finite and > 0, got {x}"
        )))
    }
}

/// A log-space Gamma-family value together with the certified absolute
/// error introduced by series truncation (0 for closed forms; round-off
/// is excluded by definition).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGammaValue {
    pub log_value: f64,
    pub tail_bound: f64,
}

/// A psi-family value with its certified truncation tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// Constraint attached to an exponent pair `(lambda, mu)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScaleOrdering {
    /// `lambda >= mu > 0`, the hypothesis of the q-side sign bounds.
    LambdaGeMu,
    /// `lambda > 0`, `mu > 0`, no order between them.
    Free,
}

/// Exponent pair `(lambda, mu)` with its ordering constraint enforced at
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalePair {
    lambda: f64,
    mu: f64,
    ordering: ScaleOrdering,
}

impl ScalePair {
    /// Pair constrained by `lambda >= mu > 0`.
    pub fn ordered(lambda: f64, mu: f64) -> Result<Self> {
        check_positive("lambda", lambda)?;
        check_positive("mu", mu)?;
        if lambda < mu {
            return Err(Error::Domain(format!(
                "ordering constraint violated: lambda ({lambda}) < mu ({mu})"
            )));
        }
        Ok(ScalePair {
            lambda,
            mu,
            ordering: ScaleOrdering::LambdaGeMu,
        })
    }

    /// Pair with both exponents positive and otherwise unconstrained.
    pub fn free(lambda: f64, mu: f64) -> Result<Self> {
        check_positive("lambda", lambda)?;
        check_positive("mu", mu)?;
        Ok(ScalePair {
            lambda,
            mu,
            ordering: ScaleOrdering::Free,
        })
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    #[inline]
    pub fn mu(&self) -> f64 {
        self.mu
    }

    #[inline]
    pub fn ordering(&self) -> ScaleOrdering {
        self.ordering
    }

    /// True when the pair was built under the `lambda >= mu` constraint.
    #[inline]
    pub fn is_ordered(&self) -> bool {
        self.ordering == ScaleOrdering::LambdaGeMu
    }
}

/// A positive, strictly increasing, differentiable function on `[0, inf)`
/// from a small closed family, with exact derivative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GFunction {
    /// `g(t) = alpha + beta t`, `alpha > 0`, `beta > 0`.
    Affine { alpha: f64, beta: f64 },
    /// `g(t) = alpha + t`, `alpha > 0`.
    AffineUnitSlope { alpha: f64 },
    /// `g(t) = alpha + beta (1 - e^{-t})`, `alpha > 0`, `beta > 0`.
    ExponentialSaturating { alpha: f64, beta: f64 },
}

impl GFunction {
    pub fn affine(alpha: f64, beta: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        Ok(GFunction::Affine { alpha, beta })
    }

    pub fn affine_unit_slope(alpha: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        Ok(GFunction::AffineUnitSlope { alpha })
    }

    pub fn exponential_saturating(alpha: f64, beta: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        Ok(GFunction::ExponentialSaturating { alpha, beta })
    }

    /// g(t), positive for all t >= 0.
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            GFunction::Affine { alpha, beta } => alpha + beta * t,
            GFunction::AffineUnitSlope { alpha } => alpha + t,
            GFunction::ExponentialSaturating { alpha, beta } => alpha + beta * (-(-t).exp_m1()),
        }
    }

    /// Exact derivative g'(t), strictly positive.
    pub fn deriv(&self, t: f64) -> f64 {
        match *self {
            GFunction::Affine { beta, .. } => beta,
            GFunction::AffineUnitSlope { .. } => 1.0,
            GFunction::ExponentialSaturating { beta, .. } => beta * (-t).exp(),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            GFunction::Affine { .. } => "affine",
            GFunction::AffineUnitSlope { .. } => "affine_unit_slope",
            GFunction::ExponentialSaturating { .. } => "exponential_saturating",
        }
    }
}

/// Ternary outcome of a sign check: a sign is certified only when the
/// computed magnitude exceeds the truncation tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    CertifiedNonpositive,
    CertifiedPositive,
    Inconclusive,
}

impl SignVerdict {
    /// Robust classification of `value` against `tail_bound`.
    pub fn certify(value: f64, tail_bound: f64) -> Self {
        if value > tail_bound {
            SignVerdict::CertifiedPositive
        } else if -value > tail_bound {
            SignVerdict::CertifiedNonpositive
        } else {
            SignVerdict::Inconclusive
        }
    }

    /// Short token used in CSV region maps.
    pub fn short_token(&self) -> &'static str {
        match self {
            SignVerdict::CertifiedNonpositive => "nonpositive",
            SignVerdict::CertifiedPositive => "positive",
            SignVerdict::Inconclusive => "inconclusive",
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SignVerdict::CertifiedNonpositive => "certified_nonpositive",
            SignVerdict::CertifiedPositive => "certified_positive",
            SignVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Full parameter record of one sign check, echoed into certificates so
/// a report line is self-describing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignCheckInputs {
    pub check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    pub tail_tol: f64,
    pub max_terms: usize,
}

/// Machine-readable verdict for one sign check. Both evaluation routes
/// are retained: `value`/`tail_bound` come from the collapsed-series
/// form (which decides the verdict), `direct_value`/`direct_tail` from
/// the psi-composition form; the two were verified to agree within the
/// combined bounds before this certificate was issued.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignCertificate {
    pub inputs: SignCheckInputs,
    pub direct_value: f64,
    pub direct_tail: f64,
    pub value: f64,
    pub tail_bound: f64,
    pub verdict: SignVerdict,
    /// True when the inputs violate the check's hypotheses and the
    /// evaluation was requested anyway; exploratory certificates never
    /// count as violations.
    pub exploratory: bool,
}

/// Format a float with 17 significant digits, enough to round-trip any
/// f64 exactly. Used by every textual artifact that must be reproducible.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
