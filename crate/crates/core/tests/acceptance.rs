//! Acceptance suite. Each test prints one pass/fail line with its runtime
//! and enforces the stated runtime budget; run with `--nocapture` to see the
//! lines as they complete.

use std::time::Instant;

use icor_core::core_math::{id, ig, shaping_loss};
use icor_core::gap::{
    gap_scan, pam_p2p_gap, side_info_gap, sumrate_factor_minimum, GapScanReport, Regime,
    ScanConfig,
};
use icor_core::gauss_mi::{mi_pam_awgn, pam_input_numeric_region};
use icor_core::gdof::{gdof_gic_region, gdof_icor_region, wcurve};
use icor_core::lda::{
    known_optimal_inputs, lda_max_sumrate, lda_region, lda_uniform_normalized_sumrate,
    LdaChannel, OptimizerConfig,
};
use icor_core::regions::{mixed_input_region, pam_input_region, td_sumrate, DIRECTIONS};
use icor_core::{ChannelGains, QuadConfig, SymmetricChannel};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion<F>(number: u32, what: &str, budget_secs: f64, body: F)
where
    F: FnOnce() -> Result<(), String>,
{
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => {
            println!("criterion {number:02} PASS ({elapsed:6.2}s)  {what}");
            assert!(
                elapsed < budget_secs,
                "criterion {number} exceeded its {budget_secs}s budget ({elapsed:.2}s)"
            );
        }
        Err(msg) => {
            println!("criterion {number:02} FAIL ({elapsed:6.2}s)  {what}: {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($arg)+)),
        }
    };
}

#[test]
fn criterion_01_discrete_mi_sandwich() {
    criterion(
        1,
        "discrete-input MI sandwiched between its firm bounds on the full grid",
        10.0,
        || {
            let cfg = QuadConfig::default();
            let mut snrs = vec![0.1];
            snrs.extend((0..=6).map(|k| 10f64.powi(k)));
            for n in 1..=16u32 {
                for &snr in &snrs {
                    let v = mi_pam_awgn(n, snr, &cfg).map_err(|e| e.to_string())?;
                    let lo = id(n, snr).unwrap();
                    let cap = (n as f64) * (n as f64) - 1.0;
                    let hi = ig(cap.min(snr)).unwrap();
                    ensure!(lo <= v, "n={n} snr={snr}: lower bound {lo} > mi {v}");
                    ensure!(v <= hi + 1e-6, "n={n} snr={snr}: mi {v} > upper bound {hi}");
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_02_reference_input_certification() {
    criterion(
        2,
        "reference input pairs attain the W-curve exactly on all five channels",
        1.0,
        || {
            let expected = [0.5, 2.0 / 3.0, 0.5, 2.0 / 3.0, 1.0];
            let rows = known_optimal_inputs();
            ensure!(rows.len() == 5, "expected five reference rows");
            for ((ch, p1, p2), want) in rows.iter().zip(expected) {
                let region = lda_region(ch, p1, p2).map_err(|e| e.to_string())?;
                let normalized = region.max_sum_rate() / (2.0 * ch.n11() as f64);
                let target = wcurve(ch.alpha());
                // Dyadic pmfs keep every entropy exact: zero tolerance.
                ensure!(
                    normalized == target && normalized == want,
                    "channel {ch:?}: normalized {normalized} vs wcurve {target} (want {want})"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_03_optimizer_reaches_certified_values() {
    criterion(
        3,
        "sum-rate optimizer reaches the certified values with the default config",
        60.0,
        || {
            let cfg = OptimizerConfig::default();
            for (ch, p1, p2) in known_optimal_inputs() {
                let certified = lda_region(&ch, &p1, &p2)
                    .map_err(|e| e.to_string())?
                    .max_sum_rate();
                let (value, q1, q2) = lda_max_sumrate(&ch, &cfg).map_err(|e| e.to_string())?;
                ensure!(
                    value >= certified - 1e-3,
                    "channel {ch:?}: optimizer {value} below certified {certified}"
                );
                // The returned pmfs must reproduce the reported value.
                let replay = lda_region(&ch, &q1, &q2)
                    .map_err(|e| e.to_string())?
                    .max_sum_rate();
                ensure!(
                    (replay - value).abs() < 1e-9,
                    "channel {ch:?}: replay {replay} vs reported {value}"
                );
            }
            let uniform = lda_uniform_normalized_sumrate(&LdaChannel::symmetric(3, 4))
                .map_err(|e| e.to_string())?;
            ensure!(uniform == 0.5, "fair-coin baseline at (3,4): {uniform} != 1/2");
            Ok(())
        },
    );
}

#[test]
fn criterion_04_gdof_equality() {
    criterion(
        4,
        "oblivious-receiver gDoF region equals the classical region on the alpha grid",
        5.0,
        || {
            for k in 0..=300 {
                let alpha = k as f64 * 0.01;
                let icor = gdof_icor_region(alpha);
                let gic = gdof_gic_region(alpha);
                for &[a1, a2] in DIRECTIONS.iter() {
                    let a = icor.support(a1, a2);
                    let b = gic.support(a1, a2);
                    ensure!(
                        (a - b).abs() <= 1e-9,
                        "alpha={alpha} direction ({a1},{a2}): {a} vs {b}"
                    );
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_05_point_to_point_gap_bound() {
    criterion(
        5,
        "point-to-point PAM gap bounded by the shaping-plus-integer constant, worst near snr 3",
        1.0,
        || {
            let bound = 0.5 * (4.0 * std::f64::consts::PI * std::f64::consts::E / 3.0).log2();
            let mut worst = (0.0, f64::NEG_INFINITY);
            for k in 0..10_000 {
                let snr = 10f64.powf(-2.0 + 10.0 * k as f64 / 9_999.0);
                let g = pam_p2p_gap(snr);
                ensure!(g <= bound + 1e-9, "snr={snr}: gap {g} above bound {bound}");
                if g > worst.1 {
                    worst = (snr, g);
                }
            }
            ensure!(
                worst.1 >= bound - 0.02,
                "grid max {} more than 0.02 below the bound {bound}",
                worst.1
            );
            ensure!(
                worst.0 > 2.5 && worst.0 < 3.0,
                "worst case at snr={}, expected just below 3",
                worst.0
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_06_side_information_gap() {
    criterion(
        6,
        "noisy-copy side-information penalty at most half a bit on the INR grid",
        1.0,
        || {
            for k in 0..=2_000 {
                let inr = 10f64.powf(-3.0 + 15.0 * k as f64 / 2_000.0);
                let g = side_info_gap(inr);
                ensure!(g <= 0.5, "inr={inr}: {g} above 1/2");
            }
            ensure!(side_info_gap(0.0) == 0.0, "zero INR must give zero gap");
            Ok(())
        },
    );
}

fn regime_max(report: &GapScanReport, regime: Regime) -> Result<f64, String> {
    report
        .regime_max(regime)
        .ok_or_else(|| format!("grid never touched the {regime:?} regime"))
}

#[test]
fn criterion_07_constant_gap_scan() {
    criterion(
        7,
        "per-regime gap maxima on the 40x40 grid stay below the analytic constants",
        120.0,
        || {
            let mut grid = Vec::with_capacity(1600);
            for i in 0..40 {
                let snr = 10f64.powf(8.0 * i as f64 / 39.0);
                for j in 0..40 {
                    let alpha = 3.0 * j as f64 / 39.0;
                    grid.push((snr, alpha));
                }
            }
            let report = gap_scan(&grid, &ScanConfig::default()).map_err(|e| e.to_string())?;
            report.assert_within_bounds().map_err(|e| e.to_string())?;

            let strong_bound = shaping_loss() + 1.0;
            let weak_bound = 0.5 * (8.0 * std::f64::consts::PI * std::f64::consts::E).log2();
            let vs = regime_max(&report, Regime::VeryStrong)?;
            let st = regime_max(&report, Regime::Strong)?;
            let mw = regime_max(&report, Regime::ModeratelyWeak)?;
            let ns = regime_max(&report, Regime::Noisy)?;
            ensure!(vs <= strong_bound + 1e-3, "very strong max {vs} > {strong_bound}");
            ensure!(st <= strong_bound + 1e-3, "strong max {st} > {strong_bound}");
            ensure!(mw <= weak_bound + 1e-3, "moderately weak max {mw} > {weak_bound}");
            ensure!(ns <= 0.6, "noisy max {ns} > 0.6");
            Ok(())
        },
    );
}

#[test]
fn criterion_08_redundancy_factor_minimum() {
    criterion(
        8,
        "redundancy-factor minimum and its location recovered numerically",
        1.0,
        || {
            let (value, y) = sumrate_factor_minimum();
            ensure!(
                (0.7357..=0.7361).contains(&value),
                "minimum {value} outside [0.7357, 0.7361]"
            );
            let expect = (7f64.sqrt() + 2.0) / 3.0;
            ensure!(
                (y - expect).abs() <= 1e-4,
                "argmin y={y}, expected {expect}"
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_09_discrete_input_beats_time_division_at_high_snr() {
    criterion(
        9,
        "sixth-root constellation rule beats time division above 40 dB and nears 2/3 at 70 dB",
        120.0,
        || {
            let cfg = QuadConfig::default();
            let alpha = 4.0 / 3.0;
            let mut value_at_70 = 0.0;
            for snr_db in (40..=70).step_by(1) {
                let snr = 10f64.powf(snr_db as f64 / 10.0);
                let sym = SymmetricChannel::new(snr, alpha).unwrap();
                let ch = ChannelGains::symmetric(&sym);
                let n = snr.powf(1.0 / 6.0).floor() as u32;
                let region = pam_input_numeric_region(&ch, n.max(1), &cfg)
                    .map_err(|e| e.to_string())?;
                let norm = region.max_sum_rate() / (2.0 * ig(snr).unwrap());
                ensure!(
                    norm > 0.5,
                    "snr {snr_db} dB: normalized sum rate {norm} does not beat 1/2"
                );
                let td = td_sumrate(snr) / (2.0 * ig(snr).unwrap());
                ensure!(
                    norm > td,
                    "snr {snr_db} dB: normalized sum rate {norm} below time division {td}"
                );
                if snr_db == 70 {
                    value_at_70 = norm;
                }
            }
            ensure!(
                (value_at_70 - 2.0 / 3.0).abs() <= 0.08,
                "normalized sum rate at 70 dB is {value_at_70}, not within 0.08 of 2/3"
            );
            Ok(())
        },
    );
}

#[test]
fn criterion_10_cross_module_consistency() {
    criterion(
        10,
        "closed-form regions inside numeric regions on 100 random channels; zero split exact",
        120.0,
        || {
            let cfg = QuadConfig::default();
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
            for trial in 0..100 {
                let ch = ChannelGains::new(
                    rng.random::<f64>() * 6.0,
                    rng.random::<f64>() * 6.0,
                    rng.random::<f64>() * 6.0,
                    rng.random::<f64>() * 6.0,
                )
                .unwrap();
                let n = 1 + rng.random::<u32>() % 8;
                let closed = pam_input_region(&ch, n).unwrap();
                let numeric =
                    pam_input_numeric_region(&ch, n, &cfg).map_err(|e| e.to_string())?;
                for (c, m) in closed.constraints().iter().zip(numeric.constraints()) {
                    ensure!(
                        c.b <= m.b + 1e-6,
                        "trial {trial} direction {:?}: closed {} above numeric {}",
                        c.a,
                        c.b,
                        m.b
                    );
                }
                let zero_split = mixed_input_region(&ch, n, 0.0, 0.0).unwrap();
                ensure!(
                    zero_split == closed,
                    "trial {trial}: zero-split mixed region differs from the PAM region"
                );
            }
            Ok(())
        },
    );
}
