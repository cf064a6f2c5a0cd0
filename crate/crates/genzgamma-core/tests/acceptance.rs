//! Acceptance suite: the seven exit criteria of this artifact, one test
//! per criterion, each printing a PASS line with its measurements
//! (visible with `--nocapture`).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use genzgamma_core::explore::{default_p1_axes, scan, ProblemId, BOUNDARY_RESOLUTION};
use genzgamma_core::gamma::{
    ln_q_bracket, log_gamma_k, log_gamma_p, log_gamma_pq, log_gamma_q, log_gamma_qk,
};
use genzgamma_core::lemmas::{default_lemma_grid, is_violation, run_lemma_cases};
use genzgamma_core::limits::default_limit_paths;
use genzgamma_core::psi::{psi_k, psi_p, psi_pq_definitional, psi_pq_series};
use genzgamma_core::quad::gamma_k_integral;
use genzgamma_core::theorems::{
    certify_monotone, default_theorem_grid, log_aux, matching_lemma_value, run_theorem_cases,
    AuxFunction, ChainVerdict, MonotoneVerdict, TheoremParams, DEFAULT_T_GRID,
};
use genzgamma_core::{EvalPoint, GFunction, ScalePair, SeriesBudget, SignVerdict, EULER_GAMMA};

fn pt(t: f64) -> EvalPoint {
    EvalPoint::new(t).unwrap()
}

fn budget() -> SeriesBudget {
    SeriesBudget::default()
}

/// Criterion 1: zero certified sign violations for the four bounds over
/// the default grid (>= 2,000 hypothesis-respecting points), dual-form
/// agreement at every point (enforced inside the evaluators), within
/// 2 minutes.
#[test]
fn acceptance_1_lemma_suite() {
    let start = Instant::now();
    let grid = default_lemma_grid();
    assert!(grid.len() >= 2000, "grid too small: {}", grid.len());
    let certs = run_lemma_cases(&grid, budget(), true).expect("dual-form agreement");
    let violations = certs.iter().filter(|c| is_violation(c)).count();
    let inconclusive = certs
        .iter()
        .filter(|c| c.verdict == SignVerdict::Inconclusive)
        .count();
    let elapsed = start.elapsed();
    assert_eq!(violations, 0, "certified sign violations found");
    assert!(
        elapsed.as_secs_f64() <= 120.0,
        "lemma suite took {elapsed:?}"
    );
    println!(
        "ACCEPTANCE 1 (lemma suite): PASS - {} points, 0 violations, {} inconclusive, {:.2}s",
        certs.len(),
        inconclusive,
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: all four chains hold at every sampled (0, x, y) over the
/// default grid (including the affine and unit-slope instantiations);
/// the monotone-witness route agrees with the direct chain route
/// exactly; within 5 minutes.
#[test]
fn acceptance_2_theorem_suite() {
    let start = Instant::now();
    let grid = default_theorem_grid();
    let certs = run_theorem_cases(&grid, true).expect("route agreement");
    let mut not_certified = 0usize;
    for cert in &certs {
        if cert.verdict != ChainVerdict::Certified {
            not_certified += 1;
            eprintln!(
                "chain not certified: theorem {} x={} y={} margins {:?}",
                cert.theorem_id, cert.x, cert.y, cert.margins
            );
        }
    }
    assert_eq!(not_certified, 0);

    // witness route: every case's monotone witness certifies, and its
    // ordering at {0, x, y} matches the chain verdict exactly
    for case in &grid {
        let mut grid_t: Vec<f64> = DEFAULT_T_GRID.to_vec();
        for v in [case.x, case.y] {
            if !grid_t.contains(&v) {
                grid_t.push(v);
            }
        }
        grid_t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let witness = certify_monotone(&case.params, &grid_t).unwrap();
        assert_eq!(
            witness.verdict,
            MonotoneVerdict::CertifiedMonotone,
            "theorem {} witness not monotone",
            case.theorem_id
        );
        let at = |t: f64| witness.samples.iter().find(|s| s.t == t).unwrap();
        let (u0, ux, uy) = (at(0.0), at(case.x), at(case.y));
        let ordered = if case.theorem_id <= 2 {
            u0.log_value + u0.tail_bound + ux.tail_bound + 1e-9 >= ux.log_value
                && ux.log_value + ux.tail_bound + uy.tail_bound + 1e-9 >= uy.log_value
        } else {
            u0.log_value < ux.log_value && ux.log_value < uy.log_value
        };
        assert!(
            ordered,
            "witness ordering broke for theorem {}",
            case.theorem_id
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() <= 300.0,
        "theorem suite took {elapsed:?}"
    );
    println!(
        "ACCEPTANCE 2 (theorem suite): PASS - {} chains certified, witness route agrees, {:.2}s",
        certs.len(),
        elapsed.as_secs_f64()
    );
}

/// Criterion 3: for each of G, H, S, T the central-difference
/// log-derivative matches g'(t) x (matching lemma expression) to 1e-6
/// absolute on 200 random valid inputs.
#[test]
fn acceptance_3_derivative_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a3a_9d2e);
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    for aux in [
        AuxFunction::G,
        AuxFunction::H,
        AuxFunction::S,
        AuxFunction::T,
    ] {
        for _ in 0..200 {
            let mu = rng.gen_range(0.1..2.0);
            let lambda = mu + rng.gen_range(0.0..2.0);
            let scale = ScalePair::ordered(lambda, mu).unwrap();
            let p = rng.gen_range(1u32..=20);
            let q = rng.gen_range(0.1..0.9);
            let g = match rng.gen_range(0u8..3) {
                0 => GFunction::affine(rng.gen_range(0.3..2.0), rng.gen_range(0.3..2.0)),
                1 => GFunction::affine_unit_slope(rng.gen_range(0.3..2.0)),
                _ => GFunction::exponential_saturating(
                    rng.gen_range(0.3..2.0),
                    rng.gen_range(0.3..2.0),
                ),
            }
            .unwrap();
            let params = match aux {
                AuxFunction::G => TheoremParams::theorem1(scale, p, q, g, budget()),
                AuxFunction::H => {
                    TheoremParams::theorem2(scale, q, rng.gen_range(1.0..3.0), g, budget())
                }
                AuxFunction::S => {
                    TheoremParams::theorem3(scale, rng.gen_range(0.3..3.0), p, q, g, budget())
                }
                AuxFunction::T => {
                    TheoremParams::theorem4(scale, q, rng.gen_range(0.3..3.0), g, budget())
                }
            }
            .unwrap();
            let t = rng.gen_range(0.2..4.0);
            let fd = (log_aux(&params, t + h).unwrap().0 - log_aux(&params, t - h).unwrap().0)
                / (2.0 * h);
            let lemma = matching_lemma_value(&params, t).unwrap();
            let want = params.g.deriv(t) * lemma.value;
            let err = (fd - want).abs();
            worst = worst.max(err);
            assert!(err <= 1e-6, "{aux:?}: |fd - g' lemma| = {err:.3e} at t={t}");
        }
    }
    println!(
        "ACCEPTANCE 3 (derivative identities): PASS - 4 x 200 random inputs, worst error {worst:.3e}"
    );
}

/// Criterion 4: quadrature oracle agreement for the k-Gamma integral on
/// the 16-point grid at 1e-8, and closed-form trivial values exact to
/// round-off.
#[test]
fn acceptance_4_special_function_correctness() {
    // quadrature oracle
    let mut worst: f64 = 0.0;
    for k in [0.5, 1.0, 2.0, 3.0] {
        for t in [0.5, 1.0, 1.7, 4.0] {
            let oracle = gamma_k_integral(k, t, 1e-11).unwrap().ln();
            let fast = log_gamma_k(k, pt(t)).unwrap().log_value;
            let err = (oracle - fast).abs();
            worst = worst.max(err);
            assert!(
                err <= 1e-8,
                "k={k} t={t}: |ln quad - ln scaled| = {err:.3e}"
            );
        }
    }

    // closed-form trivial values
    for p in [1u32, 2, 5, 50] {
        let v = log_gamma_p(p, pt(1.0)).unwrap().log_value;
        assert!((v - (p as f64 / (p as f64 + 1.0)).ln()).abs() < 1e-12);
    }
    for q in [0.3, 0.5, 0.7] {
        let v = log_gamma_q(q, pt(1.0), budget()).unwrap();
        assert!(v.log_value.abs() <= v.tail_bound + 1e-12);
        let v = log_gamma_q(q, pt(2.0), budget()).unwrap();
        assert!(v.log_value.abs() <= v.tail_bound + 1e-12);
    }
    for k in [0.5, 1.0, 2.5] {
        let v = log_gamma_k(k, pt(k)).unwrap().log_value;
        assert!(v.abs() < 1e-13);
        let v = log_gamma_qk(0.4, k, pt(k), budget()).unwrap().log_value;
        assert_eq!(v, 0.0);
    }
    for (p, q) in [(1u32, 0.5), (7, 0.3), (40, 0.9)] {
        let v = log_gamma_pq(p, q, pt(1.0)).unwrap().log_value;
        let want = ln_q_bracket(p as f64, q).unwrap() - ln_q_bracket(p as f64 + 1.0, q).unwrap();
        assert!((v - want).abs() < 1e-12);
    }
    let v = psi_k(1.0, pt(1.0), budget()).unwrap();
    assert!((v.value + EULER_GAMMA).abs() <= v.tail_bound + 1e-12);
    for p in [1u32, 3, 10, 100] {
        let v = psi_p(p, pt(1.0)).unwrap().value;
        let harmonic: f64 = (1..=(p + 1) as u64).map(|j| 1.0 / j as f64).sum();
        assert!((v - ((p as f64).ln() - harmonic)).abs() < 1e-12);
    }
    println!(
        "ACCEPTANCE 4 (special functions): PASS - 16-point quadrature grid worst {worst:.3e}, trivial values exact"
    );
}

/// Criterion 5: strictly decreasing error columns along every default
/// limit path, with an exact zero at the classical parameter point.
#[test]
fn acceptance_5_limit_decay() {
    let paths = default_limit_paths(budget(), None).unwrap();
    for path in &paths {
        assert!(
            path.strictly_decreasing,
            "{} error column is not strictly decreasing: {:?}",
            path.family.as_str(),
            path.rows.iter().map(|r| r.abs_err).collect::<Vec<_>>()
        );
    }
    // k path ends at the classical point with exactly zero error
    let k_path = paths
        .iter()
        .find(|p| p.family.as_str() == "gamma_k")
        .unwrap();
    assert_eq!(k_path.rows.last().unwrap().abs_err, 0.0);
    println!(
        "ACCEPTANCE 5 (limit decay): PASS - {} paths strictly decreasing, k-path endpoint exact",
        paths.len()
    );
}

/// Criterion 6: the (p,q)-psi discrepancy at (1, 0.5, 1) equals
/// |ln 0.5|/3 to 1e-12 and shrinks as p grows.
#[test]
fn acceptance_6_discrepancy_surfacing() {
    let s = psi_pq_series(1, 0.5, pt(1.0)).unwrap().value;
    let d = psi_pq_definitional(1, 0.5, pt(1.0)).unwrap().value;
    let gap = (s - d).abs();
    let want = std::f64::consts::LN_2 / 3.0;
    assert!(
        (gap - want).abs() <= 1e-12,
        "gap {gap} vs |ln 0.5|/3 = {want}"
    );

    let mut prev = f64::INFINITY;
    for p in [1u32, 2, 4, 8, 16, 32] {
        let s = psi_pq_series(p, 0.5, pt(1.0)).unwrap().value;
        let d = psi_pq_definitional(p, 0.5, pt(1.0)).unwrap().value;
        let gap = (s - d).abs();
        assert!(gap < prev, "discrepancy did not shrink at p={p}");
        prev = gap;
    }
    println!(
        "ACCEPTANCE 6 (discrepancy surfacing): PASS - gap(1,0.5,1) = |ln 0.5|/3 within 1e-12, strictly shrinking in p"
    );
}

/// Criterion 7: two runs of the default P1 scan produce byte-identical
/// CSV, and every refined boundary re-probed at +-1e-6 shows the two
/// adjacent verdicts (or inconclusive).
#[test]
fn acceptance_7_explorer_reproducibility() {
    let run = || scan(ProblemId::P1, default_p1_axes(), budget(), 0).unwrap();
    let a = run();
    let b = run();
    let csv_a = a.to_csv();
    assert_eq!(csv_a.as_bytes(), b.to_csv().as_bytes(), "CSV runs differ");
    assert_eq!(a.to_json(), b.to_json(), "JSON runs differ");

    let mut probed = 0usize;
    for bp in &a.boundaries {
        let coord = |name: &str| -> f64 {
            bp.fixed
                .iter()
                .find(|(n, _)| n.as_str() == name)
                .map(|(_, v)| *v)
                .expect("fixed coordinate")
        };
        let eval = |loc: f64| -> SignVerdict {
            let (p, q, t) = match bp.axis.as_str() {
                "q" => (coord("p") as u32, loc, coord("t")),
                "t" => (coord("p") as u32, coord("q"), loc),
                other => panic!("unexpected P1 boundary axis {other}"),
            };
            genzgamma_core::explore::problem1_value(p, q, t, budget())
                .unwrap()
                .verdict
        };
        let lo = eval(bp.location - BOUNDARY_RESOLUTION);
        let hi = eval(bp.location + BOUNDARY_RESOLUTION);
        assert!(
            lo == bp.lo_verdict || lo == SignVerdict::Inconclusive,
            "lo probe mismatch at {:?}",
            bp
        );
        assert!(
            hi == bp.hi_verdict || hi == SignVerdict::Inconclusive,
            "hi probe mismatch at {:?}",
            bp
        );
        probed += 1;
    }
    println!(
        "ACCEPTANCE 7 (explorer reproducibility): PASS - {} grid points byte-identical across runs, {} boundaries re-probed",
        a.values.len(),
        probed
    );
}
