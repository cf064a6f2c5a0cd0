//! `genzgamma`: evaluate the generalized Gamma/psi families, run the
//! sign-certification suites, tabulate limit decay and map open-problem
//! sign regions.
//!
//! Exit codes: 0 success, 1 certified violation (or route disagreement),
//! 2 invalid input, 3 series budget exhaustion.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use genzgamma_core::error::Error as CoreError;
use genzgamma_core::explore::{default_p1_axes, default_p2_axes, scan, Axis, AxisName, ProblemId};
use genzgamma_core::gamma::{
    log_gamma_classical, log_gamma_k, log_gamma_p, log_gamma_pq, log_gamma_q, log_gamma_qk,
};
use genzgamma_core::lemmas::{
    self, default_lemma_grid_with, evaluate_case, evaluate_case_exploratory, is_violation,
    LemmaCase,
};
use genzgamma_core::limits::{
    default_limit_paths, gamma_k_path, gamma_p_path, gamma_pq_path, gamma_q_path, gamma_qk_path,
    LimitPath, DEFAULT_K_PATH, DEFAULT_PQ_PATH, DEFAULT_P_PATH, DEFAULT_QK_PATH, DEFAULT_Q_PATH,
};
use genzgamma_core::psi::{psi_k, psi_p, psi_pq_definitional, psi_pq_series, psi_q, psi_qk};
use genzgamma_core::theorems::{
    run_theorem_cases, AuxFunction, ChainVerdict, TheoremCase, TheoremParams, DEFAULT_XY_GRID,
};
use genzgamma_core::{fmt_f64, EvalPoint, GFunction, ScalePair, SeriesBudget, SignVerdict};
use report::{budget_json, csv_opt_f64, csv_opt_u32, RunReport, Summary};

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn invalid(msg: impl Into<String>) -> CoreError {
    CoreError::Domain(msg.into())
}

#[derive(Parser)]
#[command(
    name = "genzgamma",
    version,
    about = "Generalized Gamma/psi evaluators, inequality certification and sign-region scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Absolute tolerance on certified series truncation tails.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tail_tol: f64,

    /// Hard cap on summed series terms per evaluation.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_terms: usize,

    /// Output format (JSON is the canonical report; CSV is a projection).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to this path (explore writes <out>.csv and
    /// <out>.json artifacts).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads: 1 = serial, 0 = one per core, n = fixed pool.
    /// Defaults to $GENZGAMMA_WORKERS, then 1.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FunctionName {
    GammaP,
    GammaQ,
    GammaK,
    GammaPq,
    GammaQk,
    PsiP,
    PsiQ,
    PsiK,
    PsiPq,
    PsiQk,
    Classical,
}

impl FunctionName {
    fn as_str(&self) -> &'static str {
        match self {
            FunctionName::GammaP => "gamma_p",
            FunctionName::GammaQ => "gamma_q",
            FunctionName::GammaK => "gamma_k",
            FunctionName::GammaPq => "gamma_pq",
            FunctionName::GammaQk => "gamma_qk",
            FunctionName::PsiP => "psi_p",
            FunctionName::PsiQ => "psi_q",
            FunctionName::PsiK => "psi_k",
            FunctionName::PsiPq => "psi_pq",
            FunctionName::PsiQk => "psi_qk",
            FunctionName::Classical => "classical",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GFamilyArg {
    Affine,
    AffineUnitSlope,
    ExponentialSaturating,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    #[value(name = "P1", alias = "p1")]
    P1,
    #[value(name = "P2", alias = "p2")]
    P2,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at a list of points.
    Eval {
        #[arg(value_enum)]
        function: FunctionName,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        k: Option<f64>,
        /// Evaluation points (comma-separated or repeated).
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
    },
    /// Certify the four sign bounds over a parameter grid.
    VerifyLemmas {
        /// Exponent list, zipped pairwise with --mu.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        mu: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<f64>>,
        /// g(t) values the bounds are checked at.
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
        /// Evaluate even when hypotheses are violated; results are
        /// exploratory and never fail the run.
        #[arg(long)]
        allow_out_of_hypothesis: bool,
    },
    /// Verify the four double-inequality chains over a parameter grid.
    VerifyTheorems {
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        mu: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<f64>>,
        /// Restrict to one g family (default: all shipped families).
        #[arg(long, value_enum)]
        g: Option<GFamilyArg>,
        /// alpha parameter for --g (default 1).
        #[arg(long)]
        alpha: Option<f64>,
        /// beta parameter for --g (default 1).
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        allow_out_of_hypothesis: bool,
    },
    /// Tabulate |generalized - classical| along each family's limit path.
    Limits {
        /// Evaluation point override (defaults: 1.5, and 4 for the
        /// joint (q,k) path).
        #[arg(long)]
        t: Option<f64>,
    },
    /// Scan an open-problem expression and map its sign regions.
    Explore {
        #[arg(value_enum)]
        problem: ProblemArg,
        /// p axis as lo:hi (integers, step 1).
        #[arg(long)]
        p_range: Option<String>,
        /// q axis as lo:hi:count (linear).
        #[arg(long)]
        q_range: Option<String>,
        /// k axis as lo:hi:count (linear).
        #[arg(long)]
        k_range: Option<String>,
        /// t axis as lo:hi:count (linear; the default axis is log-spaced).
        #[arg(long)]
        t_range: Option<String>,
        /// Truncate the grid to at most this many points.
        #[arg(long)]
        max_points: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &CoreError) -> u8 {
    match e {
        CoreError::Domain(_) | CoreError::InvalidGrid(_) => 2,
        CoreError::BudgetExceeded { .. } => 3,
        CoreError::InconsistentForms { .. } | CoreError::InconsistentRoutes(_) => 1,
    }
}

fn resolve_workers(flag: Option<usize>) -> Result<usize, CoreError> {
    if let Some(w) = flag {
        return Ok(w);
    }
    match std::env::var("GENZGAMMA_WORKERS") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| invalid(format!("GENZGAMMA_WORKERS must be an integer, got {s:?}"))),
        Err(_) => Ok(1),
    }
}

/// Run `f` under the requested worker policy: serial, the global rayon
/// pool, or a pinned pool.
fn with_workers<T: Send>(
    workers: usize,
    f: impl FnOnce(bool) -> Result<T, CoreError> + Send,
) -> Result<T, CoreError> {
    match workers {
        1 => f(false),
        0 => f(true),
        n => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| invalid(format!("worker pool: {e}")))?;
            pool.install(|| f(true))
        }
    }
}

fn run(cli: Cli) -> Result<u8, CoreError> {
    let budget = SeriesBudget::new(cli.tail_tol, cli.max_terms)?;
    let workers = resolve_workers(cli.workers)?;
    let start = Instant::now();
    let (mut report, exit) = match &cli.command {
        Command::Eval {
            function,
            p,
            q,
            k,
            t,
        } => cmd_eval(*function, *p, *q, *k, t, budget)?,
        Command::VerifyLemmas {
            lambda,
            mu,
            p,
            q,
            k,
            t,
            allow_out_of_hypothesis,
        } => cmd_verify_lemmas(
            lambda.as_deref(),
            mu.as_deref(),
            p.as_deref(),
            q.as_deref(),
            k.as_deref(),
            t.as_deref(),
            *allow_out_of_hypothesis,
            budget,
            workers,
        )?,
        Command::VerifyTheorems {
            lambda,
            mu,
            p,
            q,
            k,
            g,
            alpha,
            beta,
            allow_out_of_hypothesis,
        } => cmd_verify_theorems(
            lambda.as_deref(),
            mu.as_deref(),
            p.as_deref(),
            q.as_deref(),
            k.as_deref(),
            *g,
            *alpha,
            *beta,
            *allow_out_of_hypothesis,
            budget,
            workers,
        )?,
        Command::Limits { t } => cmd_limits(*t, budget)?,
        Command::Explore {
            problem,
            p_range,
            q_range,
            k_range,
            t_range,
            max_points,
        } => {
            return cmd_explore(
                *problem,
                p_range.as_deref(),
                q_range.as_deref(),
                k_range.as_deref(),
                t_range.as_deref(),
                *max_points,
                budget,
                workers,
                &cli,
            );
        }
    };
    report.wall_clock_secs = start.elapsed().as_secs_f64();
    emit_report(&report, &cli)?;
    Ok(exit)
}

fn emit_report(report: &RunReport, cli: &Cli) -> Result<(), CoreError> {
    let rendered = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.csv.clone(),
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, rendered)
                .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
            println!(
                "wrote {} report to {} ({} passed, {} failed, {} inconclusive)",
                report.command,
                path.display(),
                report.summary.passed,
                report.summary.failed,
                report.summary.inconclusive
            );
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

fn cmd_eval(
    function: FunctionName,
    p: Option<u32>,
    q: Option<f64>,
    k: Option<f64>,
    points: &[f64],
    budget: SeriesBudget,
) -> Result<(RunReport, u8), CoreError> {
    let need = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| invalid(format!("{} requires --{name}", function.as_str())))
    };
    let need_p = || p.ok_or_else(|| invalid(format!("{} requires --p", function.as_str())));

    let mut checks = Vec::new();
    let mut lines = Vec::new();
    let mut csv = String::from("function,p,q,k,t,value,log_value,tail_bound\n");
    for &t in points {
        let te = EvalPoint::new(t)?;
        let (value, log_value, tail, extra): (f64, Option<f64>, f64, Option<Value>) = match function
        {
            FunctionName::Classical => {
                let v = log_gamma_classical(te);
                (v.log_value.exp(), Some(v.log_value), v.tail_bound, None)
            }
            FunctionName::GammaP => {
                let v = log_gamma_p(need_p()?, te)?;
                (v.log_value.exp(), Some(v.log_value), v.tail_bound, None)
            }
            FunctionName::GammaQ => {
                let v = log_gamma_q(need("q", q)?, te, budget)?;
                (v.log_value.exp(), Some(v.log_value), v.tail_bound, None)
            }
            FunctionName::GammaK => {
                let v = log_gamma_k(need("k", k)?, te)?;
                (v.log_value.exp(), Some(v.log_value), v.tail_bound, None)
            }
            FunctionName::GammaPq => {
                let v = log_gamma_pq(need_p()?, need("q", q)?, te)?;
                (v.log_value.exp(), Some(v.log_value), v.tail_bound, None)
            }
            FunctionName::GammaQk => {
                let v = log_gamma_qk(need("q", q)?, need("k", k)?, te, budget)?;
                (v.log_value.exp(), Some(v.log_value), v.tail_bound, None)
            }
            FunctionName::PsiP => {
                let v = psi_p(need_p()?, te)?;
                (v.value, None, v.tail_bound, None)
            }
            FunctionName::PsiQ => {
                let v = psi_q(need("q", q)?, te, budget)?;
                (v.value, None, v.tail_bound, None)
            }
            FunctionName::PsiK => {
                let v = psi_k(need("k", k)?, te, budget)?;
                (v.value, None, v.tail_bound, None)
            }
            FunctionName::PsiPq => {
                // finite series form; the definitional log-derivative
                // and the discrepancy between the two are surfaced
                let pp = need_p()?;
                let qq = need("q", q)?;
                let s = psi_pq_series(pp, qq, te)?;
                let d = psi_pq_definitional(pp, qq, te)?;
                let extra = json!({
                    "definitional_value": d.value,
                    "series_vs_definitional_discrepancy": (s.value - d.value).abs(),
                });
                (s.value, None, s.tail_bound, Some(extra))
            }
            FunctionName::PsiQk => {
                let v = psi_qk(need("q", q)?, need("k", k)?, te, budget)?;
                (v.value, None, v.tail_bound, None)
            }
        };
        let mut record = json!({
            "function": function.as_str(),
            "t": t,
            "value": value,
            "tail_bound": tail,
        });
        if let Some(lv) = log_value {
            record["log_value"] = json!(lv);
        }
        if let Some(p) = p {
            record["p"] = json!(p);
        }
        if let Some(q) = q {
            record["q"] = json!(q);
        }
        if let Some(k) = k {
            record["k"] = json!(k);
        }
        if let Some(extra) = extra {
            for (key, v) in extra.as_object().unwrap() {
                record[key.as_str()] = v.clone();
            }
        }
        checks.push(record);

        let mut args = Vec::new();
        if let Some(p) = p {
            args.push(format!("p={p}"));
        }
        if let Some(q) = q {
            args.push(format!("q={q}"));
        }
        if let Some(k) = k {
            args.push(format!("k={k}"));
        }
        args.push(format!("t={t}"));
        lines.push(match log_value {
            Some(lv) => format!(
                "{}({}) = {} (log {}, tail_bound {})",
                function.as_str(),
                args.join(", "),
                fmt_f64(value),
                fmt_f64(lv),
                fmt_f64(tail)
            ),
            None => format!(
                "{}({}) = {} (tail_bound {})",
                function.as_str(),
                args.join(", "),
                fmt_f64(value),
                fmt_f64(tail)
            ),
        });
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            function.as_str(),
            csv_opt_u32(p),
            csv_opt_f64(q),
            csv_opt_f64(k),
            fmt_f64(t),
            fmt_f64(value),
            csv_opt_f64(log_value),
            fmt_f64(tail)
        ));
    }

    let n = checks.len();
    let report = RunReport {
        command: "eval",
        version: VERSION,
        config: json!({
            "function": function.as_str(),
            "p": p, "q": q, "k": k, "points": points,
            "budget": budget_json(budget),
        }),
        summary: Summary {
            passed: n,
            failed: 0,
            inconclusive: 0,
        },
        checks: Value::Array(checks),
        wall_clock_secs: 0.0,
        text_lines: lines,
        csv,
    };
    Ok((report, 0))
}

// ---------------------------------------------------------------------------
// verify-lemmas
// ---------------------------------------------------------------------------

fn zip_scales(
    lambda: Option<&[f64]>,
    mu: Option<&[f64]>,
    default: &[(f64, f64)],
) -> Result<Vec<(f64, f64)>, CoreError> {
    match (lambda, mu) {
        (None, None) => Ok(default.to_vec()),
        (Some(l), Some(m)) if l.len() == m.len() && !l.is_empty() => {
            Ok(l.iter().copied().zip(m.iter().copied()).collect())
        }
        _ => Err(invalid(
            "--lambda and --mu must both be given, with the same number of values",
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify_lemmas(
    lambda: Option<&[f64]>,
    mu: Option<&[f64]>,
    p: Option<&[u32]>,
    q: Option<&[f64]>,
    k: Option<&[f64]>,
    gt: Option<&[f64]>,
    exploratory: bool,
    budget: SeriesBudget,
    workers: usize,
) -> Result<(RunReport, u8), CoreError> {
    let scales = zip_scales(lambda, mu, &lemmas::DEFAULT_SCALE_GRID)?;
    let ps = p
        .map(<[u32]>::to_vec)
        .unwrap_or_else(|| lemmas::DEFAULT_P_GRID.to_vec());
    let qs = q
        .map(<[f64]>::to_vec)
        .unwrap_or_else(|| lemmas::DEFAULT_Q_GRID.to_vec());
    let gts = gt
        .map(<[f64]>::to_vec)
        .unwrap_or_else(|| lemmas::DEFAULT_GT_GRID.to_vec());
    let (ks_ge1, ks_pos) = match k {
        Some(ks) => {
            let ge1: Vec<f64> = if exploratory {
                ks.to_vec()
            } else {
                ks.iter().copied().filter(|&k| k >= 1.0).collect()
            };
            (ge1, ks.to_vec())
        }
        None => (
            lemmas::DEFAULT_K_GE1_GRID.to_vec(),
            lemmas::DEFAULT_K_POS_GRID.to_vec(),
        ),
    };
    let grid = default_lemma_grid_with(&ps, &qs, &ks_ge1, &ks_pos, &scales, &gts);
    if grid.is_empty() {
        return Err(invalid("the requested grid is empty"));
    }

    let eval = |case: &LemmaCase| {
        if exploratory {
            evaluate_case_exploratory(case, budget)
        } else {
            evaluate_case(case, budget)
        }
    };
    let certs = with_workers(workers, |parallel| {
        if parallel {
            use rayon::prelude::*;
            grid.par_iter().map(eval).collect::<Result<Vec<_>, _>>()
        } else {
            grid.iter().map(eval).collect()
        }
    })?;

    let failed = certs.iter().filter(|c| is_violation(c)).count();
    let inconclusive = certs
        .iter()
        .filter(|c| c.verdict == SignVerdict::Inconclusive)
        .count();
    let passed = certs.len() - failed - inconclusive;

    let mut lines = Vec::new();
    if exploratory {
        lines.push(
            "exploratory run: hypothesis checks relaxed, sign flips are informational".into(),
        );
        for c in &certs {
            let expected = lemmas::expected_verdict(match c.inputs.check {
                "lemma1" => 1,
                "lemma2" => 2,
                "lemma3" => 3,
                _ => 4,
            });
            if c.verdict != SignVerdict::Inconclusive && c.verdict != expected {
                lines.push(format!(
                    "exploratory sign flip: {} value {} inputs {}",
                    c.inputs.check,
                    fmt_f64(c.value),
                    serde_json::to_string(&c.inputs).unwrap()
                ));
            }
        }
    }
    for c in certs.iter().filter(|c| is_violation(c)) {
        lines.push(format!(
            "VIOLATION {} value {} tail {} inputs {}",
            c.inputs.check,
            fmt_f64(c.value),
            fmt_f64(c.tail_bound),
            serde_json::to_string(&c.inputs).unwrap()
        ));
    }
    lines.push(format!(
        "{} checks, {failed} violations, {inconclusive} inconclusive",
        certs.len()
    ));

    let mut csv = String::from(
        "lemma,lambda,mu,p,q,k,gt,direct_value,collapsed_value,tail_bound,verdict,exploratory\n",
    );
    for c in &certs {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            c.inputs.check,
            csv_opt_f64(c.inputs.lambda),
            csv_opt_f64(c.inputs.mu),
            csv_opt_u32(c.inputs.p),
            csv_opt_f64(c.inputs.q),
            csv_opt_f64(c.inputs.k),
            csv_opt_f64(c.inputs.gt),
            fmt_f64(c.direct_value),
            fmt_f64(c.value),
            fmt_f64(c.tail_bound),
            c.verdict.as_str(),
            c.exploratory
        ));
    }

    let exit = if failed > 0 { 1 } else { 0 };
    let report = RunReport {
        command: "verify-lemmas",
        version: VERSION,
        config: json!({
            "grid": {
                "scales": scales, "p": ps, "q": qs,
                "k_ge1": ks_ge1, "k_pos": ks_pos, "gt": gts,
            },
            "allow_out_of_hypothesis": exploratory,
            "budget": budget_json(budget),
            "workers": workers,
        }),
        summary: Summary {
            passed,
            failed,
            inconclusive,
        },
        checks: serde_json::to_value(&certs).unwrap(),
        wall_clock_secs: 0.0,
        text_lines: lines,
        csv,
    };
    Ok((report, exit))
}

// ---------------------------------------------------------------------------
// verify-theorems
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_verify_theorems(
    lambda: Option<&[f64]>,
    mu: Option<&[f64]>,
    p: Option<&[u32]>,
    q: Option<&[f64]>,
    k: Option<&[f64]>,
    g: Option<GFamilyArg>,
    alpha: Option<f64>,
    beta: Option<f64>,
    exploratory: bool,
    budget: SeriesBudget,
    workers: usize,
) -> Result<(RunReport, u8), CoreError> {
    let scales = zip_scales(
        lambda,
        mu,
        &[(1.0, 1.0), (2.0, 1.0), (1.0, 0.5), (5.0, 0.1)],
    )?;
    let ps = p.map(<[u32]>::to_vec).unwrap_or_else(|| vec![1, 5, 50]);
    let qs = q
        .map(<[f64]>::to_vec)
        .unwrap_or_else(|| vec![0.1, 0.5, 0.9]);
    let (ks_ge1, ks_pos) = match k {
        Some(ks) => {
            let ge1: Vec<f64> = if exploratory {
                ks.to_vec()
            } else {
                ks.iter().copied().filter(|&k| k >= 1.0).collect()
            };
            (ge1, ks.to_vec())
        }
        None => (vec![1.0, 2.0, 5.0], vec![0.25, 1.0, 2.5]),
    };
    let gs: Vec<GFunction> = match g {
        Some(fam) => {
            let a = alpha.unwrap_or(1.0);
            let b = beta.unwrap_or(1.0);
            vec![match fam {
                GFamilyArg::Affine => GFunction::affine(a, b)?,
                GFamilyArg::AffineUnitSlope => GFunction::affine_unit_slope(a)?,
                GFamilyArg::ExponentialSaturating => GFunction::exponential_saturating(a, b)?,
            }]
        }
        None => genzgamma_core::theorems::default_g_functions(),
    };

    // Grid construction: under --allow-out-of-hypothesis the ordered-pair
    // and k >= 1 constraints of theorems 1-2 are bypassed by building the
    // parameter records directly.
    let mut grid: Vec<TheoremCase> = Vec::new();
    for &g in &gs {
        for &(l, m) in &scales {
            for &qv in &qs {
                for &(x, y) in &DEFAULT_XY_GRID {
                    for &pv in &ps {
                        let params = if exploratory {
                            TheoremParams {
                                aux: AuxFunction::G,
                                scale: ScalePair::free(l, m)?,
                                p: Some(pv),
                                q: Some(qv),
                                k: None,
                                g,
                                budget,
                            }
                        } else {
                            TheoremParams::theorem1(ScalePair::ordered(l, m)?, pv, qv, g, budget)?
                        };
                        grid.push(TheoremCase {
                            theorem_id: 1,
                            params,
                            x,
                            y,
                        });
                        for &kv in &ks_pos {
                            let params = TheoremParams::theorem3(
                                ScalePair::free(l, m)?,
                                kv,
                                pv,
                                qv,
                                g,
                                budget,
                            )?;
                            grid.push(TheoremCase {
                                theorem_id: 3,
                                params,
                                x,
                                y,
                            });
                        }
                    }
                    for &kv in &ks_ge1 {
                        let params = if exploratory {
                            TheoremParams {
                                aux: AuxFunction::H,
                                scale: ScalePair::free(l, m)?,
                                p: None,
                                q: Some(qv),
                                k: Some(kv),
                                g,
                                budget,
                            }
                        } else {
                            TheoremParams::theorem2(ScalePair::ordered(l, m)?, qv, kv, g, budget)?
                        };
                        grid.push(TheoremCase {
                            theorem_id: 2,
                            params,
                            x,
                            y,
                        });
                    }
                    for &kv in &ks_pos {
                        let params =
                            TheoremParams::theorem4(ScalePair::free(l, m)?, qv, kv, g, budget)?;
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

    let certs = with_workers(workers, |parallel| run_theorem_cases(&grid, parallel))?;
    let violations = certs
        .iter()
        .filter(|c| c.verdict == ChainVerdict::Violation)
        .count();
    let failed = if exploratory { 0 } else { violations };
    let inconclusive = certs
        .iter()
        .filter(|c| c.verdict == ChainVerdict::Inconclusive)
        .count();
    let passed = certs.len() - violations - inconclusive;

    let mut lines = Vec::new();
    if exploratory {
        lines.push(
            "exploratory run: hypothesis checks relaxed, chain flips are informational".into(),
        );
    }
    for c in certs
        .iter()
        .filter(|c| c.verdict == ChainVerdict::Violation)
    {
        lines.push(format!(
            "{} theorem {} at (x={}, y={}): margins [{}, {}] params {}",
            if exploratory {
                "exploratory chain flip:"
            } else {
                "VIOLATION"
            },
            c.theorem_id,
            c.x,
            c.y,
            fmt_f64(c.margins[0]),
            fmt_f64(c.margins[1]),
            serde_json::to_string(&c.params).unwrap()
        ));
    }
    lines.push(format!(
        "{} chains, {violations} violations, {inconclusive} inconclusive",
        certs.len()
    ));

    let mut csv = String::from(
        "theorem,g,lambda,mu,p,q,k,x,y,left_log,mid_log,right_log,margin_1,margin_2,verdict\n",
    );
    for c in &certs {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:?}\n",
            c.theorem_id,
            c.params.g.family_name(),
            fmt_f64(c.params.scale.lambda()),
            fmt_f64(c.params.scale.mu()),
            csv_opt_u32(c.params.p),
            csv_opt_f64(c.params.q),
            csv_opt_f64(c.params.k),
            fmt_f64(c.x),
            fmt_f64(c.y),
            fmt_f64(c.left_log),
            fmt_f64(c.mid_log),
            fmt_f64(c.right_log),
            fmt_f64(c.margins[0]),
            fmt_f64(c.margins[1]),
            c.verdict
        ));
    }

    let exit = if failed > 0 { 1 } else { 0 };
    let report = RunReport {
        command: "verify-theorems",
        version: VERSION,
        config: json!({
            "grid": {
                "scales": scales, "p": ps, "q": qs, "k_ge1": ks_ge1, "k_pos": ks_pos,
                "g": gs, "xy": DEFAULT_XY_GRID,
            },
            "allow_out_of_hypothesis": exploratory,
            "budget": budget_json(budget),
            "workers": workers,
        }),
        summary: Summary {
            passed,
            failed,
            inconclusive,
        },
        checks: serde_json::to_value(&certs).unwrap(),
        wall_clock_secs: 0.0,
        text_lines: lines,
        csv,
    };
    Ok((report, exit))
}

// ---------------------------------------------------------------------------
// limits
// ---------------------------------------------------------------------------

fn cmd_limits(t: Option<f64>, budget: SeriesBudget) -> Result<(RunReport, u8), CoreError> {
    let paths: Vec<LimitPath> = match t {
        None => default_limit_paths(budget, None)?,
        Some(t) => vec![
            gamma_p_path(&DEFAULT_P_PATH, t)?,
            gamma_q_path(&DEFAULT_Q_PATH, t, budget)?,
            gamma_k_path(&DEFAULT_K_PATH, t)?,
            gamma_pq_path(&DEFAULT_PQ_PATH, t)?,
            gamma_qk_path(&DEFAULT_QK_PATH, t, budget)?,
        ],
    };

    let failed = paths.iter().filter(|p| !p.strictly_decreasing).count();
    let passed = paths.len() - failed;
    let mut lines = Vec::new();
    let mut csv = String::from("family,t,step,generalized,classical,abs_err\n");
    for path in &paths {
        lines.push(format!(
            "{} at t={} [{}]",
            path.family.as_str(),
            path.t,
            if path.strictly_decreasing {
                "strictly decreasing"
            } else {
                "NOT DECREASING"
            }
        ));
        for row in &path.rows {
            lines.push(format!(
                "  {:<18} |ln generalized - ln classical| = {}",
                row.label,
                fmt_f64(row.abs_err)
            ));
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                path.family.as_str(),
                fmt_f64(path.t),
                row.label,
                fmt_f64(row.generalized),
                fmt_f64(row.classical),
                fmt_f64(row.abs_err)
            ));
        }
    }

    let exit = if failed > 0 { 1 } else { 0 };
    let report = RunReport {
        command: "limits",
        version: VERSION,
        config: json!({
            "t_override": t,
            "paths": {
                "gamma_p": DEFAULT_P_PATH, "gamma_q": DEFAULT_Q_PATH,
                "gamma_k": DEFAULT_K_PATH, "gamma_pq": DEFAULT_PQ_PATH,
                "gamma_qk": DEFAULT_QK_PATH,
            },
            "budget": budget_json(budget),
        }),
        summary: Summary {
            passed,
            failed,
            inconclusive: 0,
        },
        checks: serde_json::to_value(&paths).unwrap(),
        wall_clock_secs: 0.0,
        text_lines: lines,
        csv,
    };
    Ok((report, exit))
}

// ---------------------------------------------------------------------------
// explore
// ---------------------------------------------------------------------------

fn parse_int_range(s: &str) -> Result<Vec<f64>, CoreError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(invalid(format!("integer range must be lo:hi, got {s:?}")));
    }
    let lo: u32 = parts[0]
        .parse()
        .map_err(|_| invalid(format!("bad integer range bound {:?}", parts[0])))?;
    let hi: u32 = parts[1]
        .parse()
        .map_err(|_| invalid(format!("bad integer range bound {:?}", parts[1])))?;
    if lo < 1 || hi < lo {
        return Err(invalid(format!(
            "integer range must satisfy 1 <= lo <= hi, got {s:?}"
        )));
    }
    Ok((lo..=hi).map(|v| v as f64).collect())
}

fn parse_lin_range(s: &str) -> Result<Vec<f64>, CoreError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(invalid(format!("range must be lo:hi:count, got {s:?}")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| invalid(format!("bad range bound {:?}", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| invalid(format!("bad range bound {:?}", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| invalid(format!("bad range count {:?}", parts[2])))?;
    if count == 0 || !(lo.is_finite() && hi.is_finite()) || (count > 1 && hi <= lo) {
        return Err(invalid(format!("bad range {s:?}")));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..count)
        .map(|j| lo + (hi - lo) * j as f64 / (count - 1) as f64)
        .collect())
}

/// Deterministically shrink the grid until it fits `max_points`,
/// repeatedly halving the longest axis.
fn truncate_axes(axes: &mut [Axis], max_points: usize) {
    loop {
        let total: usize = axes.iter().map(|a| a.values.len()).product();
        if total <= max_points {
            return;
        }
        let longest = axes
            .iter()
            .enumerate()
            .max_by_key(|(_, a)| a.values.len())
            .map(|(i, _)| i)
            .unwrap();
        let len = axes[longest].values.len();
        axes[longest].values.truncate(len.div_ceil(2));
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_explore(
    problem: ProblemArg,
    p_range: Option<&str>,
    q_range: Option<&str>,
    k_range: Option<&str>,
    t_range: Option<&str>,
    max_points: Option<usize>,
    budget: SeriesBudget,
    workers: usize,
    cli: &Cli,
) -> Result<u8, CoreError> {
    let start = Instant::now();
    let problem_id = match problem {
        ProblemArg::P1 => ProblemId::P1,
        ProblemArg::P2 => ProblemId::P2,
    };
    let mut axes = match problem_id {
        ProblemId::P1 => default_p1_axes(),
        ProblemId::P2 => default_p2_axes(),
    };
    if matches!(problem_id, ProblemId::P1) && k_range.is_some() {
        return Err(invalid("P1 has no k axis"));
    }
    for (range, name) in [
        (p_range, AxisName::P),
        (q_range, AxisName::Q),
        (k_range, AxisName::K),
        (t_range, AxisName::T),
    ] {
        if let Some(spec) = range {
            let values = if name == AxisName::P {
                parse_int_range(spec)?
            } else {
                parse_lin_range(spec)?
            };
            let slot = axes
                .iter_mut()
                .find(|a| a.name == name)
                .expect("axis exists");
            *slot = Axis::new(name, values)?;
        }
    }
    if let Some(cap) = max_points {
        if cap == 0 {
            return Err(invalid("--max-points must be >= 1"));
        }
        truncate_axes(&mut axes, cap);
    }

    let map = scan(problem_id, axes, budget, workers)?;
    let tally = |v: SignVerdict| map.verdicts.iter().filter(|&&x| x == v).count();
    let positive = tally(SignVerdict::CertifiedPositive);
    let nonpositive = tally(SignVerdict::CertifiedNonpositive);
    let inconclusive = tally(SignVerdict::Inconclusive);
    let elapsed = start.elapsed().as_secs_f64();

    match &cli.out {
        Some(base) => {
            let csv_path = base.with_extension("csv");
            let json_path = base.with_extension("json");
            std::fs::write(&csv_path, map.to_csv())
                .map_err(|e| invalid(format!("cannot write {}: {e}", csv_path.display())))?;
            std::fs::write(&json_path, map.to_json())
                .map_err(|e| invalid(format!("cannot write {}: {e}", json_path.display())))?;
            println!(
                "scanned {} points ({positive} positive, {nonpositive} nonpositive, {inconclusive} inconclusive), {} boundaries; wrote {} and {} in {elapsed:.2}s",
                map.values.len(),
                map.boundaries.len(),
                csv_path.display(),
                json_path.display()
            );
        }
        None => match cli.format {
            Format::Csv => print!("{}", map.to_csv()),
            Format::Json => println!("{}", map.to_json()),
            Format::Text => {
                println!(
                    "{}: scanned {} points over {} axes in {elapsed:.2}s",
                    map.problem.as_str(),
                    map.values.len(),
                    map.axes.len()
                );
                println!(
                    "verdicts: {positive} positive, {nonpositive} nonpositive, {inconclusive} inconclusive"
                );
                println!("boundaries: {}", map.boundaries.len());
                for b in &map.boundaries {
                    let fixed: Vec<String> = b
                        .fixed
                        .iter()
                        .map(|(n, v)| format!("{}={v}", n.as_str()))
                        .collect();
                    println!(
                        "  {} = {} at ({}) [{} -> {}]",
                        b.axis.as_str(),
                        fmt_f64(b.location),
                        fixed.join(", "),
                        b.lo_verdict.short_token(),
                        b.hi_verdict.short_token()
                    );
                }
            }
        },
    }
    Ok(0)
}
