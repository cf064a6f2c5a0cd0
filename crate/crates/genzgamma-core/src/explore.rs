//! Grid/scan engine for the two open sign questions:
//!
//! * P1: `ln p + ln(1-q) + psi_q(t) - psi_p(t)
//!        = sum_{n=0}^{p} 1/(n+t) + ln q sum_{n>=1} q^{nt}/(1-q^n)`,
//! * P2: `-ln[p]_q - ln(1-q)/k + psi_pq(t) - psi_qk(t)
//!        = ln q [sum_{n=1}^{p} q^{nt}/(1-q^n) - sum_{n>=1} q^{nkt}/(1-q^{nk})]`,
//!
//! whose signs are not settled analytically. Every grid point is
//! evaluated through both the psi-difference form and the series form,
//! certified ternarily, and sign-change boundaries between robustly
//! opposite neighbors are refined by bisection along each continuous
//! axis. No sign expectation is asserted anywhere: the output is a map.

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gamma::ln_q_bracket;
use crate::lemmas::check_dual_forms;
use crate::psi::{psi_p, psi_pq_series, psi_q, psi_qk};
use crate::series::{q_power_series, q_power_series_finite, KahanSum, SeriesSum};
use crate::types::{
    check_k, check_p, check_q, fmt_f64, EvalPoint, SeriesBudget, SignCertificate, SignCheckInputs,
    SignVerdict,
};

/// Coordinate resolution of bisection-refined sign boundaries.
pub const BOUNDARY_RESOLUTION: f64 = 1e-6;

/// Hard cap on scan size.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ProblemId {
    P1,
    P2,
}

impl ProblemId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemId::P1 => "P1",
            ProblemId::P2 => "P2",
        }
    }

    /// Canonical axis order for this problem.
    pub fn axis_names(&self) -> &'static [AxisName] {
        match self {
            ProblemId::P1 => &[AxisName::P, AxisName::Q, AxisName::T],
            ProblemId::P2 => &[AxisName::P, AxisName::Q, AxisName::K, AxisName::T],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisName {
    P,
    Q,
    K,
    T,
}

impl AxisName {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisName::P => "p",
            AxisName::Q => "q",
            AxisName::K => "k",
            AxisName::T => "t",
        }
    }

    /// The p axis is integer-valued; boundaries are refined only along
    /// continuous axes.
    pub fn is_continuous(&self) -> bool {
        !matches!(self, AxisName::P)
    }
}

/// One named scan axis with its explicit grid values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub name: AxisName,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: AxisName, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidGrid(format!(
                "axis {} is empty",
                name.as_str()
            )));
        }
        for &v in &values {
            match name {
                AxisName::P => {
                    if !(v.is_finite() && v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64) {
                        return Err(Error::InvalidGrid(format!(
                            "p axis values must be positive integers, got {v}"
                        )));
                    }
                }
                AxisName::Q => check_q(v).map_err(|e| Error::InvalidGrid(e.to_string()))?,
                AxisName::K => check_k(v).map_err(|e| Error::InvalidGrid(e.to_string()))?,
                AxisName::T => {
                    EvalPoint::new(v).map_err(|e| Error::InvalidGrid(e.to_string()))?;
                }
            }
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(format!(
                "axis {} must be strictly increasing",
                name.as_str()
            )));
        }
        Ok(Axis { name, values })
    }
}

/// A refined sign-change location between two adjacent grid points of
/// opposite certified sign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub axis: AxisName,
    /// Coordinates of the other axes, in canonical order.
    pub fixed: Vec<(AxisName, f64)>,
    /// Refined crossing location along `axis`, to [`BOUNDARY_RESOLUTION`].
    pub location: f64,
    #[serde(serialize_with = "short_verdict")]
    pub lo_verdict: SignVerdict,
    #[serde(serialize_with = "short_verdict")]
    pub hi_verdict: SignVerdict,
}

fn short_verdict<S: Serializer>(v: &SignVerdict, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(v.short_token())
}

fn short_verdicts<S: Serializer>(
    vs: &Vec<SignVerdict>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        seq.serialize_element(v.short_token())?;
    }
    seq.end()
}

/// Dense sign map over a scan grid, in row-major order of the declared
/// axes, plus the refined boundaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionMap {
    pub problem: ProblemId,
    pub axes: Vec<Axis>,
    pub values: Vec<f64>,
    pub tail_bounds: Vec<f64>,
    #[serde(serialize_with = "short_verdicts")]
    pub verdicts: Vec<SignVerdict>,
    pub boundaries: Vec<BoundaryPoint>,
}

/// P1 at (p, q, t): both forms, ternary verdict from the series form.
pub fn problem1_value(p: u32, q: f64, t: f64, budget: SeriesBudget) -> Result<SignCertificate> {
    check_p(p)?;
    check_q(q)?;
    let te = EvalPoint::new(t)?;
    let ln_q = q.ln();

    let psi_q_v = psi_q(q, te, budget)?;
    let psi_p_v = psi_p(p, te)?;
    let direct = (p as f64).ln() + (-q).ln_1p() + psi_q_v.value - psi_p_v.value;
    let direct_tail = psi_q_v.tail_bound;

    let mut head = KahanSum::default();
    for n in 0..=(p as u64) {
        head.add(1.0 / (n as f64 + t));
    }
    let inner = SeriesBudget {
        tail_tol: budget.tail_tol / -ln_q,
        max_terms: budget.max_terms,
    };
    let s_inf = q_power_series(q, t, inner)?;
    let series = head.value() + ln_q * s_inf.value;
    let series_tail = -ln_q * s_inf.tail_bound;

    let scale = (p as f64).ln().abs() + psi_q_v.value.abs() + psi_p_v.value.abs() + head.value();
    check_dual_forms("problem1", direct, direct_tail, series, series_tail, scale)?;

    let inputs = SignCheckInputs {
        check: "problem1",
        lambda: None,
        mu: None,
        p: Some(p),
        q: Some(q),
        k: None,
        gt: None,
        t: Some(t),
        tail_tol: budget.tail_tol,
        max_terms: budget.max_terms,
    };
    Ok(SignCertificate {
        inputs,
        direct_value: direct,
        direct_tail,
        value: series,
        tail_bound: series_tail,
        verdict: SignVerdict::certify(series, series_tail),
        exploratory: false,
    })
}

/// P2 at (p, q, k, t): both forms, ternary verdict from the series form.
/// The (p,q)-psi inside the difference form is the finite series shape.
pub fn problem2_value(
    p: u32,
    q: f64,
    k: f64,
    t: f64,
    budget: SeriesBudget,
) -> Result<SignCertificate> {
    check_p(p)?;
    check_q(q)?;
    check_k(k)?;
    let te = EvalPoint::new(t)?;
    let ln_q = q.ln();

    let psi_pq_v = psi_pq_series(p, q, te)?;
    let psi_qk_v = psi_qk(q, k, te, budget)?;
    let ln_pq = ln_q_bracket(p as f64, q)?;
    let direct = -ln_pq - (-q).ln_1p() / k + psi_pq_v.value - psi_qk_v.value;
    let direct_tail = psi_qk_v.tail_bound;

    let s_fin = q_power_series_finite(q, t, p);
    let inner = SeriesBudget {
        tail_tol: budget.tail_tol / -ln_q,
        max_terms: budget.max_terms,
    };
    let base = (k * ln_q).exp();
    let s_qk = if base == 0.0 {
        SeriesSum {
            value: 0.0,
            tail_bound: 0.0,
            terms: 0,
        }
    } else {
        q_power_series(base, t, inner)?
    };
    let series = ln_q * (s_fin - s_qk.value);
    let series_tail = -ln_q * s_qk.tail_bound;

    let scale = ln_pq.abs() + psi_pq_v.value.abs() + psi_qk_v.value.abs();
    check_dual_forms("problem2", direct, direct_tail, series, series_tail, scale)?;

    let inputs = SignCheckInputs {
        check: "problem2",
        lambda: None,
        mu: None,
        p: Some(p),
        q: Some(q),
        k: Some(k),
        gt: None,
        t: Some(t),
        tail_tol: budget.tail_tol,
        max_terms: budget.max_terms,
    };
    Ok(SignCertificate {
        inputs,
        direct_value: direct,
        direct_tail,
        value: series,
        tail_bound: series_tail,
        verdict: SignVerdict::certify(series, series_tail),
        exploratory: false,
    })
}

fn eval_point(problem: ProblemId, coords: &[f64], budget: SeriesBudget) -> Result<SignCertificate> {
    match problem {
        ProblemId::P1 => problem1_value(coords[0] as u32, coords[1], coords[2], budget),
        ProblemId::P2 => problem2_value(coords[0] as u32, coords[1], coords[2], coords[3], budget),
    }
}

/// Scan the problem expression over the axes (canonical order required),
/// certify signs pointwise and refine boundaries between certified
/// opposite-sign neighbors along every continuous axis.
///
/// `workers = 1` runs on the current thread; `workers = 0` uses one
/// worker per core; any other value pins the pool size. Results are
/// aggregated in row-major grid order regardless.
pub fn scan(
    problem: ProblemId,
    axes: Vec<Axis>,
    budget: SeriesBudget,
    workers: usize,
) -> Result<RegionMap> {
    let expected = problem.axis_names();
    if axes.len() != expected.len() || axes.iter().zip(expected).any(|(a, want)| a.name != *want) {
        return Err(Error::InvalidGrid(format!(
            "{} scans over axes ({}) in that order",
            problem.as_str(),
            expected
                .iter()
                .map(|a| a.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let dims: Vec<usize> = axes.iter().map(|a| a.values.len()).collect();
    let total: usize = dims.iter().product();
    if total > MAX_GRID_POINTS {
        return Err(Error::InvalidGrid(format!(
            "grid has {total} points, cap is {MAX_GRID_POINTS}"
        )));
    }

    let coords_of = |idx: usize| -> Vec<f64> {
        let mut rem = idx;
        let mut coords = vec![0.0; dims.len()];
        for d in (0..dims.len()).rev() {
            coords[d] = axes[d].values[rem % dims[d]];
            rem /= dims[d];
        }
        coords
    };

    let evaluate_all = || -> Result<Vec<SignCertificate>> {
        (0..total)
            .into_par_iter()
            .map(|idx| eval_point(problem, &coords_of(idx), budget))
            .collect()
    };
    let certs: Vec<SignCertificate> = if workers == 1 {
        (0..total)
            .map(|idx| eval_point(problem, &coords_of(idx), budget))
            .collect::<Result<_>>()?
    } else if workers == 0 {
        evaluate_all()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidGrid(format!("worker pool: {e}")))?;
        pool.install(evaluate_all)?
    };

    let values: Vec<f64> = certs.iter().map(|c| c.value).collect();
    let tail_bounds: Vec<f64> = certs.iter().map(|c| c.tail_bound).collect();
    let verdicts: Vec<SignVerdict> = certs.iter().map(|c| c.verdict).collect();

    // Strides for walking lines along one axis.
    let mut strides = vec![1usize; dims.len()];
    for d in (0..dims.len().saturating_sub(1)).rev() {
        strides[d] = strides[d + 1] * dims[d + 1];
    }

    let mut boundaries = Vec::new();
    for (d, axis) in axes.iter().enumerate() {
        if !axis.name.is_continuous() || dims[d] < 2 {
            continue;
        }
        // All lines along axis d, in row-major order of the other axes.
        let line_count = total / dims[d];
        for line in 0..line_count {
            let mut rem = line;
            let mut base = 0usize;
            let mut fixed = Vec::with_capacity(dims.len() - 1);
            for dd in (0..dims.len()).rev() {
                if dd == d {
                    continue;
                }
                let i = rem % dims[dd];
                rem /= dims[dd];
                base += i * strides[dd];
                fixed.push((axes[dd].name, axes[dd].values[i]));
            }
            fixed.reverse();
            for i in 0..dims[d] - 1 {
                let lo_idx = base + i * strides[d];
                let hi_idx = base + (i + 1) * strides[d];
                let (lo_v, hi_v) = (verdicts[lo_idx], verdicts[hi_idx]);
                let opposite = matches!(
                    (lo_v, hi_v),
                    (
                        SignVerdict::CertifiedPositive,
                        SignVerdict::CertifiedNonpositive
                    ) | (
                        SignVerdict::CertifiedNonpositive,
                        SignVerdict::CertifiedPositive
                    )
                );
                if !opposite {
                    continue;
                }
                let mut lo = axis.values[i];
                let mut hi = axis.values[i + 1];
                let lo_positive = lo_v == SignVerdict::CertifiedPositive;
                let mut coords = coords_of(lo_idx);
                while hi - lo > BOUNDARY_RESOLUTION {
                    let mid = 0.5 * (lo + hi);
                    coords[d] = mid;
                    let cert = eval_point(problem, &coords, budget)?;
                    if (cert.value > 0.0) == lo_positive {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                boundaries.push(BoundaryPoint {
                    axis: axis.name,
                    fixed: fixed.clone(),
                    location: 0.5 * (lo + hi),
                    lo_verdict: lo_v,
                    hi_verdict: hi_v,
                });
            }
        }
    }

    Ok(RegionMap {
        problem,
        axes,
        values,
        tail_bounds,
        verdicts,
        boundaries,
    })
}

/// Default P1 axes: p in 1..=20, q from 0.05 to 0.95 in steps of 0.05,
/// t log-spaced over [0.1, 10] with 20 points.
pub fn default_p1_axes() -> Vec<Axis> {
    let p: Vec<f64> = (1..=20).map(|i| i as f64).collect();
    let q: Vec<f64> = (1..=19).map(|i| i as f64 * 0.05).collect();
    let t: Vec<f64> = log_spaced(0.1, 10.0, 20);
    vec![
        Axis::new(AxisName::P, p).unwrap(),
        Axis::new(AxisName::Q, q).unwrap(),
        Axis::new(AxisName::T, t).unwrap(),
    ]
}

/// Default P2 axes: p in 1..=10, q from 0.1 to 0.9 in steps of 0.1,
/// k in {0.25, 0.5, 1, 2, 4} (crossing k = 1), t log-spaced over
/// [0.1, 10] with 10 points.
pub fn default_p2_axes() -> Vec<Axis> {
    let p: Vec<f64> = (1..=10).map(|i| i as f64).collect();
    let q: Vec<f64> = (1..=9).map(|i| i as f64 * 0.1).collect();
    let k = vec![0.25, 0.5, 1.0, 2.0, 4.0];
    let t = log_spaced(0.1, 10.0, 10);
    vec![
        Axis::new(AxisName::P, p).unwrap(),
        Axis::new(AxisName::Q, q).unwrap(),
        Axis::new(AxisName::K, k).unwrap(),
        Axis::new(AxisName::T, t).unwrap(),
    ]
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|j| (la + (lb - la) * j as f64 / (n - 1) as f64).exp())
        .collect()
}

impl RegionMap {
    /// CSV projection: one row per grid point in row-major order,
    /// coordinates first, then value, tail bound and verdict. Floats are
    /// rendered with 17 significant digits so equal runs are equal bytes.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for axis in &self.axes {
            out.push_str(axis.name.as_str());
            out.push(',');
        }
        out.push_str("value,tail_bound,verdict\n");
        let dims: Vec<usize> = self.axes.iter().map(|a| a.values.len()).collect();
        for idx in 0..self.values.len() {
            let mut rem = idx;
            let mut coords = vec![0.0; dims.len()];
            for d in (0..dims.len()).rev() {
                coords[d] = self.axes[d].values[rem % dims[d]];
                rem /= dims[d];
            }
            for (d, c) in coords.iter().enumerate() {
                if self.axes[d].name == AxisName::P {
                    out.push_str(&format!("{}", *c as u64));
                } else {
                    out.push_str(&fmt_f64(*c));
                }
                out.push(',');
            }
            out.push_str(&fmt_f64(self.values[idx]));
            out.push(',');
            out.push_str(&fmt_f64(self.tail_bounds[idx]));
            out.push(',');
            out.push_str(self.verdicts[idx].short_token());
            out.push('\n');
        }
        out
    }

    /// Canonical JSON artifact: axes metadata, dense verdict array and
    /// refined boundaries.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("region map serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SeriesBudget {
        SeriesBudget::default()
    }

    #[test]
    fn problem1_brute_force_point() {
        // mpmath: P1(1, 0.5, 1) = 0.386323785084008910798 (positive)
        let cert = problem1_value(1, 0.5, 1.0, budget()).unwrap();
        assert!((cert.value - 0.386323785084008910798).abs() < 1e-12);
        assert_eq!(cert.verdict, SignVerdict::CertifiedPositive);
    }

    #[test]
    fn problem1_large_t_is_positive() {
        // both tails vanish; the harmonic head is positive
        let cert = problem1_value(7, 0.5, 100.0, budget()).unwrap();
        assert_eq!(cert.verdict, SignVerdict::CertifiedPositive);
        assert!(cert.value > 0.0 && cert.value < 0.1);
    }

    #[test]
    fn problem1_q_near_one_probe() {
        // sign recorded, no expectation asserted; mpmath value -2.16
        let cert = problem1_value(10, 0.99, 1.0, budget()).unwrap();
        assert!((cert.value - (-2.159999429310894917827)).abs() < 1e-9);
        println!(
            "P1(10, 0.99, 1) = {} [{}]",
            cert.value,
            cert.verdict.short_token()
        );
    }

    #[test]
    fn problem2_k_one_sign_is_forced() {
        // at k = 1 the bracket collapses to minus the series tail
        // -sum_{n>p} q^{nt}/(1-q^n) < 0, so times ln q < 0 the value is
        // positive for any finite p
        for (p, q, t) in [(1u32, 0.5, 1.0), (5, 0.3, 0.7), (20, 0.9, 2.0)] {
            let cert = problem2_value(p, q, 1.0, t, budget()).unwrap();
            assert_eq!(
                cert.verdict,
                SignVerdict::CertifiedPositive,
                "p={p} q={q} t={t}"
            );
        }
        // spot value: p=1, q=0.5, t=1 gives |ln 0.5| (EB - 1) where EB is
        // the full sum 1.6066951524152917638
        let cert = problem2_value(1, 0.5, 1.0, 1.0, budget()).unwrap();
        let want = std::f64::consts::LN_2 * (1.6066951524152917638 - 1.0);
        assert!((cert.value - want).abs() < 1e-12, "got {}", cert.value);
    }

    #[test]
    fn problem2_k_dependence() {
        // mpmath: P2(5,0.5,0.5,1) = +2.3536, P2(5,0.5,2,1) = -0.79990
        let below = problem2_value(5, 0.5, 0.5, 1.0, budget()).unwrap();
        assert!((below.value - 2.353583088127675720534).abs() < 1e-12);
        assert_eq!(below.verdict, SignVerdict::CertifiedPositive);
        let above = problem2_value(5, 0.5, 2.0, 1.0, budget()).unwrap();
        assert!((above.value - (-0.7999039912334922385934)).abs() < 1e-12);
        assert_eq!(above.verdict, SignVerdict::CertifiedNonpositive);
    }

    #[test]
    fn degenerate_single_cell_map() {
        let axes = vec![
            Axis::new(AxisName::P, vec![3.0]).unwrap(),
            Axis::new(AxisName::Q, vec![0.5]).unwrap(),
            Axis::new(AxisName::T, vec![1.0]).unwrap(),
        ];
        let map = scan(ProblemId::P1, axes, budget(), 1).unwrap();
        assert_eq!(map.values.len(), 1);
        assert!(map.boundaries.is_empty());
    }

    #[test]
    fn scan_is_row_major_and_deterministic() {
        let axes = vec![
            Axis::new(AxisName::P, vec![1.0, 2.0]).unwrap(),
            Axis::new(AxisName::Q, vec![0.3, 0.6]).unwrap(),
            Axis::new(AxisName::T, vec![0.5, 5.0]).unwrap(),
        ];
        let a = scan(ProblemId::P1, axes.clone(), budget(), 1).unwrap();
        let b = scan(ProblemId::P1, axes.clone(), budget(), 2).unwrap();
        assert_eq!(a, b);
        // row-major: last axis varies fastest
        let direct = problem1_value(1, 0.3, 5.0, budget()).unwrap();
        assert_eq!(a.values[1], direct.value);
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn boundaries_refine_k_crossings() {
        // P2 with a k axis crossing 1: adjacent verdicts differ there
        let axes = vec![
            Axis::new(AxisName::P, vec![5.0]).unwrap(),
            Axis::new(AxisName::Q, vec![0.5]).unwrap(),
            Axis::new(AxisName::K, vec![0.25, 0.5, 1.0, 2.0, 4.0]).unwrap(),
            Axis::new(AxisName::T, vec![1.0]).unwrap(),
        ];
        let map = scan(ProblemId::P2, axes, budget(), 1).unwrap();
        let k_bounds: Vec<_> = map
            .boundaries
            .iter()
            .filter(|b| b.axis == AxisName::K)
            .collect();
        assert!(!k_bounds.is_empty(), "expected a sign change along k");
        for b in k_bounds {
            // re-probe both sides of the refined location
            let lo =
                problem2_value(5, 0.5, b.location - BOUNDARY_RESOLUTION, 1.0, budget()).unwrap();
            let hi =
                problem2_value(5, 0.5, b.location + BOUNDARY_RESOLUTION, 1.0, budget()).unwrap();
            assert!(
                lo.verdict == b.lo_verdict || lo.verdict == SignVerdict::Inconclusive,
                "lo probe {:?}",
                lo.verdict
            );
            assert!(
                hi.verdict == b.hi_verdict || hi.verdict == SignVerdict::Inconclusive,
                "hi probe {:?}",
                hi.verdict
            );
        }
    }

    #[test]
    fn csv_header_contract() {
        let axes = vec![
            Axis::new(AxisName::P, vec![1.0]).unwrap(),
            Axis::new(AxisName::Q, vec![0.5]).unwrap(),
            Axis::new(AxisName::T, vec![1.0]).unwrap(),
        ];
        let map = scan(ProblemId::P1, axes, budget(), 1).unwrap();
        let csv = map.to_csv();
        assert!(csv.starts_with("p,q,t,value,tail_bound,verdict\n"), "{csv}");
        // p column is an integer literal
        assert!(csv.lines().nth(1).unwrap().starts_with("1,"));
    }

    #[test]
    fn axis_validation() {
        assert!(Axis::new(AxisName::P, vec![1.5]).is_err());
        assert!(Axis::new(AxisName::Q, vec![0.5, 0.4]).is_err());
        assert!(Axis::new(AxisName::T, vec![]).is_err());
        // wrong axis order is rejected
        let axes = vec![
            Axis::new(AxisName::Q, vec![0.5]).unwrap(),
            Axis::new(AxisName::P, vec![1.0]).unwrap(),
            Axis::new(AxisName::T, vec![1.0]).unwrap(),
        ];
        assert!(scan(ProblemId::P1, axes, budget(), 1).is_err());
    }

    #[test]
    fn oversized_grid_rejected() {
        let p: Vec<f64> = (1..=500).map(|i| i as f64).collect();
        let q: Vec<f64> = (1..=199).map(|i| i as f64 * 0.005).collect();
        let t: Vec<f64> = log_spaced(0.1, 10.0, 150);
        let axes = vec![
            Axis::new(AxisName::P, p).unwrap(),
            Axis::new(AxisName::Q, q).unwrap(),
            Axis::new(AxisName::T, t).unwrap(),
        ];
        assert!(matches!(
            scan(ProblemId::P1, axes, budget(), 1),
            Err(Error::InvalidGrid(_))
        ));
    }
}
