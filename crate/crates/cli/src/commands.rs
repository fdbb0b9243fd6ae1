//! Subcommand implementations.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use icor_core::core_math::{id, ig, nd, shaping_loss};
use icor_core::gap::{
    gap_scan as run_gap_scan, pam_p2p_gap, side_info_gap, sumrate_factor_minimum, Regime,
    ScanConfig,
};
use icor_core::gauss_mi::{mi_pam_awgn, pam_input_numeric_region};
use icor_core::gdof::{gdof_gic_region, gdof_icor_region, wcurve as wcurve_value};
use icor_core::lda::{
    known_optimal_inputs, lda_max_sumrate, lda_region, lda_uniform_normalized_sumrate, LdaChannel,
};
use icor_core::regions::{
    etw_outer, gaussian_outer_region, gg_sumrate, mixed_input_etw_region, mixed_input_region,
    pam_input_region, td_sumrate, RateRegion, DIRECTIONS,
};
use icor_core::{ChannelGains, SymmetricChannel};

use crate::config::RunConfig;
use crate::grid;
use crate::output::{write_file, Sink};
use crate::{CliError, Scheme};

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Builds the symmetric channel from dB gains. The library parameterizes the
/// cross links by an exponent, so an SNR of exactly 0 dB only admits an INR
/// of 0 dB.
fn symmetric_from_db(snr_db: f64, inr_db: f64) -> Result<SymmetricChannel, CliError> {
    let snr = db_to_linear(snr_db);
    let inr = db_to_linear(inr_db);
    let alpha = if snr_db == 0.0 {
        if inr_db != 0.0 {
            return Err(CliError::Usage(
                "snr of exactly 0 dB only supports inr of 0 dB (the cross link is \
                 parameterized as an exponent of the direct link)"
                    .into(),
            ));
        }
        1.0
    } else {
        inr.ln() / snr.ln()
    };
    if alpha < 0.0 {
        return Err(CliError::Usage(format!(
            "inr {inr_db} dB with snr {snr_db} dB gives a negative interference exponent"
        )));
    }
    SymmetricChannel::new(snr, alpha).map_err(Into::into)
}

pub fn wcurve(cfg: &RunConfig, alphas: &str, out: &Sink) -> Result<(), CliError> {
    let grid = grid::parse(alphas, "alpha")?;
    let mut csv = format!("{}\nalpha,d_w,d_gg,d_td\n", cfg.stamp());
    for alpha in grid {
        let d_w = wcurve_value(alpha);
        let d_gg = 0.5 + (0.5 - alpha).max(0.0);
        let _ = writeln!(csv, "{alpha:.6},{d_w:.6},{d_gg:.6},0.500000");
    }
    out.write(&csv)
}

#[derive(Serialize)]
struct LdaReport {
    ns: u32,
    ni: u32,
    q: u32,
    alpha: f64,
    wcurve: f64,
    uniform_normalized: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimized: Option<LdaOptimized>,
}

#[derive(Serialize)]
struct LdaOptimized {
    value_bits: f64,
    normalized: f64,
    p1: Vec<f64>,
    p2: Vec<f64>,
}

pub fn lda(
    cfg: &RunConfig,
    ns: u32,
    ni: u32,
    optimize: bool,
    csv: Option<&Path>,
    out: &Sink,
) -> Result<(), CliError> {
    if ns == 0 {
        return Err(CliError::Usage("ns must be at least 1".into()));
    }
    let ch = LdaChannel::symmetric(ns, ni);
    let alpha = ch.alpha();
    let uniform = lda_uniform_normalized_sumrate(&ch)?;
    let optimized = if optimize {
        let (value, p1, p2) = lda_max_sumrate(&ch, &cfg.optimizer())?;
        Some(LdaOptimized {
            value_bits: value,
            normalized: value / (2.0 * ns as f64),
            p1: p1.probs().to_vec(),
            p2: p2.probs().to_vec(),
        })
    } else {
        None
    };
    let report = LdaReport {
        ns,
        ni,
        q: ch.q(),
        alpha,
        wcurve: wcurve_value(alpha),
        uniform_normalized: uniform,
        optimized,
    };
    if let Some(path) = csv {
        let mut row = format!("{}\nalpha,uniform_normalized,optimized_normalized,wcurve\n", cfg.stamp());
        let opt = report
            .optimized
            .as_ref()
            .map(|o| format!("{:.6}", o.normalized))
            .unwrap_or_default();
        let _ = writeln!(
            row,
            "{alpha:.6},{uniform:.6},{opt},{:.6}",
            wcurve_value(alpha)
        );
        write_file(path, &row)?;
    }
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    out.write(&json)
}

pub fn fig3(
    cfg: &RunConfig,
    snr_db: &str,
    alpha: f64,
    check: bool,
    out: &Sink,
) -> Result<(), CliError> {
    if alpha < 0.0 {
        return Err(CliError::Usage("alpha must be nonnegative".into()));
    }
    let grid = grid::parse(snr_db, "snr_db")?;
    let quad = cfg.quad();
    let mut csv = format!("{}\nsnr_db,td_norm,gg_norm,dg_norm\n", cfg.stamp());
    for &db in &grid {
        let snr = db_to_linear(db);
        let sym = SymmetricChannel::new(snr, alpha)?;
        let ch = ChannelGains::symmetric(&sym);
        let denom = 2.0 * ig(snr)?;
        if denom == 0.0 {
            return Err(CliError::Usage("snr of -inf dB is not supported".into()));
        }
        let n = snr.powf(1.0 / 6.0).floor().max(1.0) as u32;
        let dg = pam_input_numeric_region(&ch, n, &quad)?.max_sum_rate() / denom;
        let td = td_sumrate(snr) / denom;
        let gg = gg_sumrate(&sym) / denom;
        if check && db >= 40.0 && dg <= td {
            return Err(CliError::Failure(format!(
                "discrete input does not beat time division at {db} dB: {dg:.6} <= {td:.6}"
            )));
        }
        let _ = writeln!(csv, "{db:.6},{td:.6},{gg:.6},{dg:.6}");
    }
    out.write(&csv)
}

pub fn gdof(cfg: &RunConfig, alphas: &str, out: &Sink) -> Result<(), CliError> {
    let grid = grid::parse(alphas, "alpha")?;
    let mut csv = format!("{}\nalpha,direction_a1,direction_a2,b_inner,b_outer\n", cfg.stamp());
    for &alpha in &grid {
        let inner = gdof_icor_region(alpha);
        let outer = gdof_gic_region(alpha);
        for &[a1, a2] in DIRECTIONS.iter() {
            let bi = inner.support(a1, a2);
            let bo = outer.support(a1, a2);
            if (bi - bo).abs() > 1e-9 {
                return Err(CliError::Failure(format!(
                    "gDoF regions disagree at alpha={alpha}, direction ({a1},{a2}): \
                     inner {bi} vs outer {bo}"
                )));
            }
            let _ = writeln!(csv, "{alpha:.6},{a1},{a2},{bi:.6},{bo:.6}");
        }
    }
    out.write(&csv)
}

pub fn gap_scan(
    cfg: &RunConfig,
    snr_db: &str,
    alphas: &str,
    summary: Option<&Path>,
    out: &Sink,
) -> Result<(), CliError> {
    let snrs = grid::parse(snr_db, "snr_db")?;
    let alpha_grid = grid::parse(alphas, "alpha")?;
    let mut grid_points = Vec::with_capacity(snrs.len() * alpha_grid.len());
    for &db in &snrs {
        for &alpha in &alpha_grid {
            grid_points.push((db_to_linear(db), alpha));
        }
    }
    let report = run_gap_scan(&grid_points, &cfg.scan())?;
    let mut csv = format!("{}\nsnr_db,alpha,regime,gap_bits,bound_bits,pass\n", cfg.stamp());
    for row in &report.rows {
        let _ = writeln!(
            csv,
            "{:.6},{:.6},{},{:.6},{:.6},{}",
            10.0 * row.snr.log10(),
            row.alpha,
            row.regime.label(),
            row.gap_bits,
            row.bound_bits,
            row.pass
        );
    }
    out.write(&csv)?;
    let summary_json = report.summary_json();
    match summary {
        Some(path) => write_file(path, &summary_json)?,
        None => eprintln!("{summary_json}"),
    }
    report.assert_within_bounds()?;
    Ok(())
}

#[derive(Serialize)]
struct RegionReport {
    scheme: String,
    snr: f64,
    inr: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d2: Option<f64>,
    region: RateRegion,
    vertices: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct SumrateReport {
    scheme: String,
    snr: f64,
    inr: f64,
    gg_sumrate_bits: f64,
    td_sumrate_bits: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn region(
    _cfg: &RunConfig,
    snr_db: f64,
    inr_db: f64,
    scheme: Scheme,
    n: Option<u32>,
    d1: f64,
    d2: f64,
    out: &Sink,
) -> Result<(), CliError> {
    let sym = symmetric_from_db(snr_db, inr_db)?;
    let snr = sym.snr();
    let inr = sym.inr();
    if scheme == Scheme::Gg {
        let report = SumrateReport {
            scheme: "gg".into(),
            snr,
            inr,
            gg_sumrate_bits: gg_sumrate(&sym),
            td_sumrate_bits: td_sumrate(snr),
        };
        let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
        json.push('\n');
        return out.write(&json);
    }
    let n_used = match scheme {
        Scheme::Pam | Scheme::Mixed | Scheme::MixedEtw => Some(match n {
            Some(v) if v >= 1 => v,
            Some(_) => return Err(CliError::Usage("n must be at least 1".into())),
            None => nd(snr)?,
        }),
        _ => None,
    };
    let gains = ChannelGains::symmetric(&sym);
    let (name, region): (&str, RateRegion) = match scheme {
        Scheme::Pam => ("pam", pam_input_region(&gains, n_used.unwrap())?),
        Scheme::Mixed => (
            "mixed",
            mixed_input_region(&gains, n_used.unwrap(), d1, d2)?,
        ),
        Scheme::MixedEtw => ("mixed-etw", mixed_input_etw_region(&sym, n_used.unwrap())?),
        Scheme::EtwOuter => ("etw-outer", etw_outer(&sym)),
        Scheme::GaussOuter => ("gauss-outer", gaussian_outer_region(&sym)),
        Scheme::Gg => unreachable!(),
    };
    let report = RegionReport {
        scheme: name.into(),
        snr,
        inr,
        n: n_used,
        d1: (scheme == Scheme::Mixed).then_some(d1),
        d2: (scheme == Scheme::Mixed).then_some(d2),
        vertices: region.vertices().iter().map(|v| [v.r1, v.r2]).collect(),
        region,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    out.write(&json)
}

pub fn selftest(cfg: &RunConfig, out: &Sink) -> Result<(), CliError> {
    let mut log = String::new();
    fn fail(name: &str, detail: String) -> CliError {
        CliError::Failure(format!("selftest {name} failed: {detail}"))
    }

    // Scalar functions.
    {
        let ok = (ig(3.0).unwrap() - 1.0).abs() < 1e-12
            && (id(2, 100.0).unwrap() - (1.0 - shaping_loss())).abs() < 1e-12
            && nd(15.0).unwrap() == 4;
        if !ok {
            return Err(fail("scalar-functions", "spot values drifted".into()));
        }
        log.push_str("selftest: scalar functions ok\n");
    }

    // W-curve values.
    {
        if (wcurve_value(4.0 / 3.0) - 2.0 / 3.0).abs() > 1e-12 || wcurve_value(0.0) != 1.0 {
            return Err(fail("wcurve", "values drifted".into()));
        }
        log.push_str("selftest: wcurve ok\n");
    }

    // Reference deterministic inputs attain the W-curve exactly.
    for (ch, p1, p2) in known_optimal_inputs() {
        let r = lda_region(&ch, &p1, &p2)?;
        let normalized = r.max_sum_rate() / (2.0 * ch.n11() as f64);
        if normalized != wcurve_value(ch.alpha()) {
            return Err(fail(
                "reference-inputs",
                format!("{ch:?}: {normalized} vs {}", wcurve_value(ch.alpha())),
            ));
        }
    }
    log.push_str("selftest: reference deterministic inputs ok\n");

    // Point-to-point gap and side-information penalty.
    {
        let bound = shaping_loss() + 1.0;
        for k in 0..1000 {
            let snr = 10f64.powf(-2.0 + 8.0 * k as f64 / 999.0);
            if pam_p2p_gap(snr) > bound + 1e-9 {
                return Err(fail("p2p-gap", format!("exceeded at snr={snr}")));
            }
        }
        if side_info_gap(1e9) > 0.5 {
            return Err(fail("side-info-gap", "exceeded 1/2".into()));
        }
        log.push_str("selftest: point-to-point and side-information gaps ok\n");
    }

    // Redundancy-factor minimum.
    {
        let (value, y) = sumrate_factor_minimum();
        if !(0.7357..=0.7361).contains(&value) || (y - (7f64.sqrt() + 2.0) / 3.0).abs() > 1e-4 {
            return Err(fail("factor-minimum", format!("value={value}, y={y}")));
        }
        log.push_str("selftest: redundancy-factor minimum ok\n");
    }

    // gDoF equality on a coarse grid.
    for k in 0..=30 {
        let alpha = k as f64 * 0.1;
        let inner = gdof_icor_region(alpha);
        let outer = gdof_gic_region(alpha);
        for &[a1, a2] in DIRECTIONS.iter() {
            if (inner.support(a1, a2) - outer.support(a1, a2)).abs() > 1e-9 {
                return Err(fail("gdof-equality", format!("alpha={alpha}")));
            }
        }
    }
    log.push_str("selftest: gDoF equality ok\n");

    // One quadrature sandwich point.
    {
        let v = mi_pam_awgn(4, 15.0, &cfg.quad())?;
        if !(id(4, 15.0).unwrap() <= v && v <= ig(15.0).unwrap() + 1e-9) {
            return Err(fail("mi-sandwich", format!("v={v}")));
        }
        log.push_str("selftest: discrete-input MI sandwich ok\n");
    }

    // Small constant-gap scan.
    {
        let mut grid = Vec::new();
        for i in 0..10 {
            let snr = 10f64.powf(8.0 * i as f64 / 9.0);
            for j in 0..10 {
                grid.push((snr, j as f64 / 3.0));
            }
        }
        let report = run_gap_scan(&grid, &ScanConfig { tol_bits: cfg.gap_tol })?;
        report.assert_within_bounds()?;
        for regime in Regime::ALL {
            if let Some(m) = report.regime_max(regime) {
                let _ = writeln!(
                    log,
                    "selftest: gap scan {} max {:.4} bits ok",
                    regime.label(),
                    m
                );
            }
        }
    }

    log.push_str("selftest passed\n");
    out.write(&log)
}
