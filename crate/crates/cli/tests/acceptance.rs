//! Acceptance suite. One test per criterion; each prints a single
//! `criterion N [pass]` line with its measured numbers when it holds (a
//! failed assertion fails the test and marks the criterion red).
//!
//! Run with `cargo test -p two-ion-jcm-cli --test acceptance -- --nocapture`.

use std::f64::consts::TAU;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use two_ion_jcm::analysis::revival_estimate;
use two_ion_jcm::coupling::{chain_coefficients, ChainClass};
use two_ion_jcm::dynamics::populations;
use two_ion_jcm::propagator::chain_propagator;
use two_ion_jcm::specialfn::{laguerre, laguerre_reference};
use two_ion_jcm::{ModelParams, MotionalState};
use two_ion_jcm_cli::config::FigureId;
use two_ion_jcm_cli::pipeline::{figure_config, figure_envelope, resolve_params, simulate, verify};

/// Criterion 1: the closed form and the brute-force evolution agree to
/// 1e-8 over 200 uniform samples for the fig1, fig2a and fig3a presets,
/// each within the runtime budget.
#[test]
fn criterion_1_oracle_equivalence() {
    for id in [FigureId::Fig1, FigureId::Fig2a, FigureId::Fig3a] {
        let cfg = figure_config(id, None, Some(200)).unwrap();
        let started = Instant::now();
        let report = verify(&cfg).unwrap();
        let elapsed = started.elapsed().as_secs_f64();
        assert!(
            report.max_error <= 1e-8,
            "{}: max |Δρ| = {:.3e} exceeds 1e-8",
            id.name(),
            report.max_error
        );
        assert!(elapsed <= 60.0, "{}: verification took {elapsed:.1} s (> 60 s)", id.name());
        println!(
            "criterion 1 [pass] {}: max |Δρ| = {:.3e} over 200 points, oracle dim {}, {:.1} s",
            id.name(),
            report.max_error,
            report.oracle_dim,
            elapsed
        );
    }
}

/// Criterion 2: a thousand random chain propagators are unitary to 1e-12.
#[test]
fn criterion_2_unitarity_suite() {
    let mut rng = ChaCha12Rng::seed_from_u64(0x0114_51C0_FFEE);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let eta = rng.random_range(0.05..=0.5);
        let k = rng.random_range(1..=3usize);
        let n = rng.random_range(0..=200usize);
        let t = rng.random_range(0.0..=1e-3);
        let params = ModelParams::new(eta, TAU * 500e3, k, 200 + 2 * k, 1e-12).unwrap();
        let block = chain_propagator(&chain_coefficients(&params, n), t);
        let defect = block.u.unitarity_defect();
        worst = worst.max(defect);
        assert!(defect <= 1e-12, "eta={eta} k={k} n={n} t={t}: defect {defect:.3e}");
    }
    println!("criterion 2 [pass]: 1000 random blocks, worst ‖U†U − I‖ = {worst:.3e}");
}

/// Criterion 3: every preset trace is normalized within its certified tail
/// bound plus 1e-9, and the tail bound itself stays below 1e-11 at the
/// default tolerance.
#[test]
fn criterion_3_normalization() {
    for id in FigureId::ALL {
        let cfg = figure_config(id, None, None).unwrap();
        let out = simulate(&cfg).unwrap();
        let trace = &out.trace;
        assert!(trace.tail_bound <= 1e-11, "{}: tail bound {:.3e}", id.name(), trace.tail_bound);
        let mut worst: f64 = 0.0;
        for i in 0..trace.times.len() {
            let defect = (trace.rho_11[i] + trace.rho_00[i] + trace.rho_m1m1[i] - 1.0).abs();
            worst = worst.max(defect);
            assert!(
                defect <= trace.tail_bound + 1e-9,
                "{} sample {i}: defect {defect:.3e} vs tail {:.3e}",
                id.name(),
                trace.tail_bound
            );
        }
        println!(
            "criterion 3 [pass] {}: worst |Σρ − 1| = {worst:.3e}, tail bound {:.3e}",
            id.name(),
            trace.tail_bound
        );
    }
}

/// Criterion 4: each full chain's population triple sums to exactly its
/// weight (probability conservation pins the squared denominator in the
/// ground-level term).
#[test]
fn criterion_4_per_chain_conservation() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xC0A1_E5CE);
    let mut checked = 0usize;
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let eta = rng.random_range(0.05..=0.5);
        let k = rng.random_range(1..=3usize);
        let n = rng.random_range(2 * k..=200usize);
        let t = rng.random_range(0.0..=2e-3);
        let params = ModelParams::new(eta, TAU * 500e3, k, 200 + 2 * k, 1e-12).unwrap();
        let coeffs = chain_coefficients(&params, n);
        assert_eq!(coeffs.chain_class, ChainClass::Full);
        let pops = chain_propagator(&coeffs, t).ground_column_populations();
        let defect = (pops.iter().sum::<f64>() - 1.0).abs();
        worst = worst.max(defect);
        assert!(defect <= 1e-12, "eta={eta} k={k} n={n} t={t}: defect {defect:.3e}");
        checked += 1;
    }
    println!("criterion 4 [pass]: {checked} full chains, worst |Σ − 1| = {worst:.3e}");
}

/// Criterion 5: the k = 1, |1⟩ Fock trace is exactly the printed two-level
/// flopping at B(1) = √2 Ω e^{−η²/2} η.
#[test]
fn criterion_5_single_phonon_reduction() {
    let eta = 0.1f64;
    let rabi = TAU * 500e3;
    let params = ModelParams::new(eta, rabi, 1, 2, 1e-12).unwrap();
    let b1 = 2f64.sqrt() * rabi * (-eta * eta / 2.0).exp() * eta;
    let times: Vec<f64> = (0..400).map(|i| 40e-6 * i as f64 / 399.0).collect();
    let trace = populations(&params, &MotionalState::Fock { n0: 1 }, &times).unwrap();
    let mut worst: f64 = 0.0;
    for (i, &t) in times.iter().enumerate() {
        let dev00 = (trace.rho_00[i] - (b1 * t).sin().powi(2)).abs();
        let devm1 = (trace.rho_m1m1[i] - (b1 * t).cos().powi(2)).abs();
        worst = worst.max(dev00).max(devm1);
        assert!(dev00 <= 1e-12 && devm1 <= 1e-12, "t={t}: {dev00:.3e}/{devm1:.3e}");
        assert_eq!(trace.rho_11[i], 0.0);
    }
    println!("criterion 5 [pass]: worst deviation from sin²/cos²(B(1)t) = {worst:.3e}");
}

/// Criterion 6: collapse and revival. fig1's middle level collapses and
/// revives; its revival sits within ±25% of the first-order rephasing time
/// of its own oscillation content. The middle level's per-chain signal is
/// sin²(√(A²+B²) t) — frequency 2√(A²+B²) — so neighboring chains rephase
/// at π/Δ, half of the 2π/Δ that applies to observables oscillating at the
/// chain frequency itself; the upper level carries such a component and is
/// checked against the undivided estimate. fig2a also revives, and fig2b's
/// contrast stays strictly below fig2a's.
#[test]
fn criterion_6_collapse_and_revival() {
    // fig1, middle level
    let cfg = figure_config(FigureId::Fig1, None, None).unwrap();
    let params = resolve_params(&cfg).unwrap();
    let out = simulate(&cfg).unwrap();
    let envelope = figure_envelope(&out).unwrap();

    let chain_rephasing = revival_estimate(&params, 10).expect("nondegenerate frequencies") * 1e6;
    let middle_estimate = chain_rephasing / 2.0;

    let collapse = envelope.rho_00.collapse_time_us.expect("fig1 rho_00 collapse");
    let revival = envelope.rho_00.revival_time_us.expect("fig1 rho_00 revival");
    assert!(collapse < revival, "collapse {collapse} us after revival {revival} us");
    let middle_ratio = revival / middle_estimate;
    assert!(
        (0.75..=1.25).contains(&middle_ratio),
        "fig1 rho_00 revival {revival:.1} us vs estimate {middle_estimate:.1} us (ratio {middle_ratio:.3})"
    );

    // upper level against the chain-frequency estimate 2π/Δ
    let upper_revival = envelope.rho_11.revival_time_us.expect("fig1 rho_11 revival");
    let upper_ratio = upper_revival / chain_rephasing;
    assert!(
        (0.75..=1.25).contains(&upper_ratio),
        "fig1 rho_11 revival {upper_revival:.1} us vs estimate {chain_rephasing:.1} us (ratio {upper_ratio:.3})"
    );

    // fig2a revives; fig2b stays obscure
    let fig2a = figure_envelope(&simulate(&figure_config(FigureId::Fig2a, None, None).unwrap()).unwrap()).unwrap();
    fig2a.rho_00.collapse_time_us.expect("fig2a rho_00 collapse");
    fig2a.rho_00.revival_time_us.expect("fig2a rho_00 revival");
    let fig2b = figure_envelope(&simulate(&figure_config(FigureId::Fig2b, None, None).unwrap()).unwrap()).unwrap();
    assert!(
        fig2b.rho_00.revival_contrast < fig2a.rho_00.revival_contrast,
        "contrast fig2b {:.3} !< fig2a {:.3}",
        fig2b.rho_00.revival_contrast,
        fig2a.rho_00.revival_contrast
    );

    println!(
        "criterion 6 [pass]: fig1 rho_00 collapse {collapse:.1} us, revival {revival:.1} us \
         ({middle_ratio:.2}× the π/Δ rephasing of its doubled frequency; rho_11 at {upper_ratio:.2}× 2π/Δ); \
         fig2a revival {:.1} us; contrast fig2a {:.3} > fig2b {:.3}",
        fig2a.rho_00.revival_time_us.unwrap(),
        fig2a.rho_00.revival_contrast,
        fig2b.rho_00.revival_contrast
    );
}

/// Criterion 7: the production Laguerre recurrence agrees with the
/// explicit alternating sum to 1e-10 relative for every n ≤ 30, k ≤ 4.
#[test]
fn criterion_7_laguerre_cross_check() {
    let mut worst: f64 = 0.0;
    for n in 0..=30usize {
        for k in 0..=4usize {
            for x in [0.01f64, 0.04, 0.16] {
                let fast = laguerre::<f64>(n, k, x);
                let reference = laguerre_reference::<f64>(n, k, x);
                let rel = (fast - reference).abs() / reference.abs().max(1e-300);
                worst = worst.max(rel);
                assert!(rel <= 1e-10, "n={n} k={k} x={x}: rel {rel:.3e}");
            }
        }
    }
    println!("criterion 7 [pass]: worst relative deviation = {worst:.3e} over n ≤ 30, k ≤ 4");
}

/// Criterion 8: fig1's CSV is byte-identical across repeated runs and
/// across worker thread counts.
#[test]
fn criterion_8_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for (tag, threads) in [("a", "1"), ("b", "1"), ("c", "4")] {
        let out_dir = dir.path().join(tag);
        let status = Command::new(env!("CARGO_BIN_EXE_two-ion-jcm"))
            .args(["figure", "fig1", "--out-dir", out_dir.to_str().unwrap()])
            .env("RAYON_NUM_THREADS", threads)
            .status()
            .expect("binary runs");
        assert!(status.success());
        runs.push(std::fs::read(out_dir.join("fig1.csv")).unwrap());
    }
    assert_eq!(runs[0], runs[1], "consecutive single-thread runs differ");
    assert_eq!(runs[0], runs[2], "thread count changed the bytes");
    println!("criterion 8 [pass]: fig1 CSV identical across reruns and thread counts ({} bytes)", runs[0].len());
}
