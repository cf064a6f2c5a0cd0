//! Limit-path error tables: each generalized family approaches the
//! classical Gamma along its limit path, and these tables tabulate
//! `|ln generalized - ln Gamma|` along fixed default paths chosen
//! (measured beforehand) so the error column strictly decreases.
//!
//! The (q,k) family needs care: at fixed k != 1 its q -> 1 limit is a
//! k-scaled Gamma, not Gamma itself, so only joint (q -> 1, k -> 1)
//! paths converge. The default joint path runs at t = 4 where the
//! measured errors are strictly monotone.

use serde::Serialize;

use crate::error::Result;
use crate::gamma::{
    log_gamma_classical, log_gamma_k, log_gamma_p, log_gamma_pq, log_gamma_q, log_gamma_qk,
};
use crate::types::{EvalPoint, SeriesBudget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitFamily {
    GammaP,
    GammaQ,
    GammaK,
    GammaPq,
    GammaQk,
}

impl LimitFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            LimitFamily::GammaP => "gamma_p",
            LimitFamily::GammaQ => "gamma_q",
            LimitFamily::GammaK => "gamma_k",
            LimitFamily::GammaPq => "gamma_pq",
            LimitFamily::GammaQk => "gamma_qk",
        }
    }
}

/// One step of a limit path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    /// Parameter point, e.g. `p=64` or `q=0.99,k=1.5`.
    pub label: String,
    pub generalized: f64,
    pub classical: f64,
    pub abs_err: f64,
}

/// Error table of one family along its limit path at fixed t.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitPath {
    pub family: LimitFamily,
    pub t: f64,
    pub rows: Vec<LimitRow>,
    /// True when the error column strictly decreases row to row.
    pub strictly_decreasing: bool,
}

fn finish(family: LimitFamily, t: f64, rows: Vec<LimitRow>) -> LimitPath {
    let strictly_decreasing = rows.windows(2).all(|w| w[0].abs_err > w[1].abs_err);
    LimitPath {
        family,
        t,
        rows,
        strictly_decreasing,
    }
}

pub fn gamma_p_path(ps: &[u32], t: f64) -> Result<LimitPath> {
    let te = EvalPoint::new(t)?;
    let classical = log_gamma_classical(te).log_value;
    let mut rows = Vec::new();
    for &p in ps {
        let v = log_gamma_p(p, te)?.log_value;
        rows.push(LimitRow {
            label: format!("p={p}"),
            generalized: v,
            classical,
            abs_err: (v - classical).abs(),
        });
    }
    Ok(finish(LimitFamily::GammaP, t, rows))
}

pub fn gamma_q_path(qs: &[f64], t: f64, budget: SeriesBudget) -> Result<LimitPath> {
    let te = EvalPoint::new(t)?;
    let classical = log_gamma_classical(te).log_value;
    let mut rows = Vec::new();
    for &q in qs {
        let v = log_gamma_q(q, te, budget)?.log_value;
        rows.push(LimitRow {
            label: format!("q={q}"),
            generalized: v,
            classical,
            abs_err: (v - classical).abs(),
        });
    }
    Ok(finish(LimitFamily::GammaQ, t, rows))
}

pub fn gamma_k_path(ks: &[f64], t: f64) -> Result<LimitPath> {
    let te = EvalPoint::new(t)?;
    let classical = log_gamma_classical(te).log_value;
    let mut rows = Vec::new();
    for &k in ks {
        let v = log_gamma_k(k, te)?.log_value;
        rows.push(LimitRow {
            label: format!("k={k}"),
            generalized: v,
            classical,
            abs_err: (v - classical).abs(),
        });
    }
    Ok(finish(LimitFamily::GammaK, t, rows))
}

pub fn gamma_pq_path(pairs: &[(u32, f64)], t: f64) -> Result<LimitPath> {
    let te = EvalPoint::new(t)?;
    let classical = log_gamma_classical(te).log_value;
    let mut rows = Vec::new();
    for &(p, q) in pairs {
        let v = log_gamma_pq(p, q, te)?.log_value;
        rows.push(LimitRow {
            label: format!("p={p},q={q}"),
            generalized: v,
            classical,
            abs_err: (v - classical).abs(),
        });
    }
    Ok(finish(LimitFamily::GammaPq, t, rows))
}

pub fn gamma_qk_path(pairs: &[(f64, f64)], t: f64, budget: SeriesBudget) -> Result<LimitPath> {
    let te = EvalPoint::new(t)?;
    let classical = log_gamma_classical(te).log_value;
    let mut rows = Vec::new();
    for &(q, k) in pairs {
        let v = log_gamma_qk(q, k, te, budget)?.log_value;
        rows.push(LimitRow {
            label: format!("q={q},k={k}"),
            generalized: v,
            classical,
            abs_err: (v - classical).abs(),
        });
    }
    Ok(finish(LimitFamily::GammaQk, t, rows))
}

pub const DEFAULT_P_PATH: [u32; 7] = [64, 128, 256, 512, 1024, 2048, 4096];
pub const DEFAULT_Q_PATH: [f64; 3] = [0.9, 0.99, 0.999];
/// Ends exactly at the classical point k = 1, where the error is 0.
pub const DEFAULT_K_PATH: [f64; 5] = [2.0, 1.5, 1.1, 1.01, 1.0];
pub const DEFAULT_PQ_PATH: [(u32, f64); 3] = [(64, 0.9), (256, 0.99), (4096, 0.999)];
pub const DEFAULT_QK_PATH: [(f64, f64); 4] =
    [(0.9, 2.0), (0.99, 1.5), (0.999, 1.1), (0.9999, 1.01)];
pub const DEFAULT_LIMIT_T: f64 = 1.5;
/// At t = 1.5 the joint (q,k) path error landscape is non-monotone
/// (t = k collisions); t = 4 gives a strictly decreasing column.
pub const DEFAULT_QK_LIMIT_T: f64 = 4.0;

/// The five default limit paths. `t_override`, when given, replaces the
/// per-family default evaluation point.
pub fn default_limit_paths(
    budget: SeriesBudget,
    t_override: Option<f64>,
) -> Result<Vec<LimitPath>> {
    let t = t_override.unwrap_or(DEFAULT_LIMIT_T);
    let t_qk = t_override.unwrap_or(DEFAULT_QK_LIMIT_T);
    Ok(vec![
        gamma_p_path(&DEFAULT_P_PATH, t)?,
        gamma_q_path(&DEFAULT_Q_PATH, t, budget)?,
        gamma_k_path(&DEFAULT_K_PATH, t)?,
        gamma_pq_path(&DEFAULT_PQ_PATH, t)?,
        gamma_qk_path(&DEFAULT_QK_PATH, t_qk, budget)?,
    ])
}
