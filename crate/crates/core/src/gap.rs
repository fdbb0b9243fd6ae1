//! The constant-gap program for the symmetric Gaussian channel: classify the
//! interference regime, pick the constellation size for each corner point,
//! assemble the achievable region, and measure the per-user gap to the
//! classical outer bound.
//!
//! The analytic per-regime gap constants are `0.5 log2(4 pi e / 3)` (shaping
//! loss plus integer penalty) in very strong and strong interference,
//! `0.5 log2(8 pi e)` in moderately weak interference, and half a bit (plus a
//! power-grid discretization allowance) in noisy interference.

use rayon::prelude::*;
use serde::Serialize;

use crate::core_math::{igf, ndf, shaping_loss, ChannelGains, SymmetricChannel};
use crate::regions::{
    etw_outer, gap_between, hull_union, pam_input_region, Constraint, RateRegion,
};
use crate::{Error, Result};

/// Interference regimes of the symmetric channel, partitioned by the
/// relative size of SNR and INR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    VeryStrong,
    Strong,
    ModeratelyWeak,
    Noisy,
}

impl Regime {
    pub const ALL: [Regime; 4] = [
        Regime::VeryStrong,
        Regime::Strong,
        Regime::ModeratelyWeak,
        Regime::Noisy,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Regime::VeryStrong => "very_strong",
            Regime::Strong => "strong",
            Regime::ModeratelyWeak => "moderately_weak",
            Regime::Noisy => "noisy",
        }
    }
}

/// Exactly one regime holds for every `(snr, inr)` pair:
/// very strong when `snr (1 + snr) <= inr`, strong when `snr <= inr` below
/// that, moderately weak when `inr <= snr <= inr (1 + inr)`, noisy when
/// `inr (1 + inr) < snr`.
pub fn classify_regime(snr: f64, inr: f64) -> Regime {
    debug_assert!(snr >= 0.0 && inr >= 0.0);
    if snr * (1.0 + snr) <= inr {
        Regime::VeryStrong
    } else if snr <= inr {
        Regime::Strong
    } else if snr <= inr * (1.0 + inr) {
        Regime::ModeratelyWeak
    } else {
        Regime::Noisy
    }
}

/// Corner points of the per-regime achievability constructions, each with
/// its own constellation-size rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerPoint {
    /// Very strong interference, single corner.
    VeryStrong,
    /// Strong interference, the corner favoring user 1.
    StrongP1,
    /// Strong interference, the corner favoring user 2.
    StrongP2,
    /// Moderately weak interference, the corner favoring user 1.
    WeakP1,
    /// Moderately weak interference, the corner favoring user 2.
    WeakP2,
}

impl CornerPoint {
    fn regime(&self) -> Regime {
        match self {
            CornerPoint::VeryStrong => Regime::VeryStrong,
            CornerPoint::StrongP1 | CornerPoint::StrongP2 => Regime::Strong,
            CornerPoint::WeakP1 | CornerPoint::WeakP2 => Regime::ModeratelyWeak,
        }
    }
}

/// Constellation size for a regime corner: `nd` of the effective SNR seen by
/// the discrete part at that corner. Errors if `(snr, inr)` does not lie in
/// the corner's regime.
pub fn pick_n(corner: CornerPoint, snr: f64, inr: f64) -> Result<u32> {
    if !snr.is_finite() || snr < 0.0 || !inr.is_finite() || inr < 0.0 {
        return Err(Error::Domain("pick_n needs finite nonnegative snr/inr".into()));
    }
    let regime = classify_regime(snr, inr);
    if regime != corner.regime() {
        return Err(Error::Domain(format!(
            "corner {corner:?} belongs to the {:?} regime, but ({snr}, {inr}) is {regime:?}",
            corner.regime()
        )));
    }
    let arg = match corner {
        CornerPoint::VeryStrong | CornerPoint::StrongP1 => snr,
        CornerPoint::StrongP2 => inr / (1.0 + snr),
        CornerPoint::WeakP1 => inr * inr / (1.0 + snr + 2.0 * inr),
        CornerPoint::WeakP2 => snr * inr / ((1.0 + inr) * (1.0 + inr) + snr),
    };
    Ok(ndf(arg))
}

/// Power levels of the noisy-regime grid: zero plus half-exponent steps from
/// `2^-15` to `1`. The useful interfering power scales like `1/inr`, so the
/// levels must be log spaced to keep the discretization cost below the 0.1-bit
/// allowance at every INR the regime admits.
fn power_grid() -> Vec<f64> {
    let mut levels = vec![0.0];
    levels.extend((0..=30).rev().map(|k| 2f64.powf(-(k as f64) / 2.0)));
    levels
}

/// The moderately weak corner regions: the symmetric mixed-input bound
/// further lower bounded so the constellation size disappears, leaving only
/// the corner's effective-SNR choice `x`.
fn weak_corner_region(snr: f64, inr: f64, corner: CornerPoint) -> RateRegion {
    let s = snr;
    let i = inr;
    let sl = shaping_loss();
    let x1 = i * i / (1.0 + s + 2.0 * i);
    let x2 = s * i / ((1.0 + i) * (1.0 + i) + s);
    let x = match corner {
        CornerPoint::WeakP1 => x1,
        CornerPoint::WeakP2 => x2,
        _ => unreachable!("weak_corner_region is only called with weak corners"),
    };
    let b1 = igf(x) - 1.0 - sl + igf(s / (1.0 + 2.0 * i));
    let b2 = igf(i * i / ((1.0 + i) * (1.0 + s) + i)) - sl + igf(0.5 * s) - igf(x);
    let b12 = igf(x1.min(x2)) - 1.0 + igf(i + s / (1.0 + i)) - igf(i / (1.0 + i))
        + igf(s / (1.0 + 2.0 * i))
        - 2.0 * sl;
    RateRegion::new(vec![
        Constraint::new(1, 0, b1),
        Constraint::new(0, 1, b2),
        Constraint::new(1, 1, b12),
    ])
    .expect("corner-region constraints are well formed")
}

/// Achievable region used against the outer bound, assembled per regime:
///
/// * very strong: the PAM-input region at `nd(snr)` with the sum bound
///   dropped (receiver 1 can peel the interference first; the drop condition
///   is re-checked and the bound kept if it ever failed);
/// * strong: hull of the two PAM-input corner constructions and the
///   single-user points;
/// * moderately weak: hull of the two mixed-input corner constructions and
///   the single-user points;
/// * noisy: hull of Gaussian treat-interference-as-noise rectangles over a
///   log-spaced power grid.
pub fn inner_assembly(sym: &SymmetricChannel) -> RateRegion {
    let snr = sym.snr();
    let inr = sym.inr();
    let gains = ChannelGains::symmetric(sym);
    let single_user = [
        RateRegion::rectangle(igf(snr), 0.0),
        RateRegion::rectangle(0.0, igf(snr)),
    ];
    match classify_regime(snr, inr) {
        Regime::VeryStrong => {
            let region = pam_input_region(&gains, ndf(snr)).expect("n >= 1");
            if igf(snr) <= igf(inr / (1.0 + snr)) {
                let kept: Vec<Constraint> = region
                    .constraints()
                    .iter()
                    .filter(|c| c.a != [1, 1])
                    .copied()
                    .collect();
                RateRegion::new(kept).expect("single-rate bounds remain")
            } else {
                region
            }
        }
        Regime::Strong => {
            let p1 = pam_input_region(&gains, ndf(snr)).expect("n >= 1");
            let p2 = pam_input_region(&gains, ndf(inr / (1.0 + snr))).expect("n >= 1");
            hull_union(&[p1, p2, single_user[0].clone(), single_user[1].clone()])
                .expect("nonempty list")
        }
        Regime::ModeratelyWeak => {
            let c1 = weak_corner_region(snr, inr, CornerPoint::WeakP1);
            let c2 = weak_corner_region(snr, inr, CornerPoint::WeakP2);
            hull_union(&[c1, c2, single_user[0].clone(), single_user[1].clone()])
                .expect("nonempty list")
        }
        Regime::Noisy => {
            let levels = power_grid();
            let mut rects = Vec::with_capacity(levels.len() * levels.len());
            for &p1 in &levels {
                for &p2 in &levels {
                    rects.push(RateRegion::rectangle(
                        igf(p1 * snr / (1.0 + p2 * inr)),
                        igf(p2 * snr / (1.0 + p1 * inr)),
                    ));
                }
            }
            hull_union(&rects).expect("nonempty list")
        }
    }
}

/// Analytic per-user gap bound for a regime, in bits. The noisy bound
/// includes the +0.1 allowance for the finite power grid.
pub fn regime_gap_bound(regime: Regime) -> f64 {
    match regime {
        Regime::VeryStrong | Regime::Strong => shaping_loss() + 1.0,
        Regime::ModeratelyWeak => 0.5 * (8.0 * std::f64::consts::PI * std::f64::consts::E).log2(),
        Regime::Noisy => 0.5 + 0.1,
    }
}

/// Configuration of [`gap_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    /// Slack added to the analytic bounds of the very-strong, strong, and
    /// moderately weak regimes when judging a point.
    pub tol_bits: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { tol_bits: 1e-3 }
    }
}

/// One scanned grid point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapScanRow {
    pub snr: f64,
    pub alpha: f64,
    pub regime: Regime,
    pub gap_bits: f64,
    pub bound_bits: f64,
    pub pass: bool,
}

/// Scan result: per-point gaps and per-regime maxima.
#[derive(Debug, Clone, Serialize)]
pub struct GapScanReport {
    pub rows: Vec<GapScanRow>,
    pub tol_bits: f64,
}

impl GapScanReport {
    /// Largest measured gap in a regime, if the grid touched it.
    pub fn regime_max(&self, regime: Regime) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.regime == regime)
            .map(|r| r.gap_bits)
            .fold(None, |acc, g| Some(acc.map_or(g, |m: f64| m.max(g))))
    }

    /// First failing point, if any.
    pub fn assert_within_bounds(&self) -> Result<()> {
        match self.rows.iter().find(|r| !r.pass) {
            None => Ok(()),
            Some(r) => Err(Error::GapExceeded {
                snr: r.snr,
                alpha: r.alpha,
                gap: r.gap_bits,
                bound: r.bound_bits,
            }),
        }
    }

    /// JSON summary with the per-regime maxima and bounds.
    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry {
            regime: &'static str,
            max_gap_bits: Option<f64>,
            bound_bits: f64,
            points: usize,
        }
        let entries: Vec<Entry> = Regime::ALL
            .iter()
            .map(|&r| Entry {
                regime: r.label(),
                max_gap_bits: self.regime_max(r),
                bound_bits: regime_gap_bound(r),
                points: self.rows.iter().filter(|row| row.regime == r).count(),
            })
            .collect();
        serde_json::to_string_pretty(&entries).expect("summary serialization cannot fail")
    }
}

/// Measures `gap_between(etw_outer, inner_assembly)` on every `(snr, alpha)`
/// grid point and checks the per-regime analytic bounds.
pub fn gap_scan(grid: &[(f64, f64)], cfg: &ScanConfig) -> Result<GapScanReport> {
    if grid.is_empty() {
        return Err(Error::Domain("gap_scan needs a nonempty grid".into()));
    }
    let rows: Vec<GapScanRow> = grid
        .par_iter()
        .map(|&(snr, alpha)| {
            let sym = SymmetricChannel::new(snr, alpha)?;
            Ok(scan_point(&sym, cfg))
        })
        .collect::<Result<_>>()?;
    Ok(GapScanReport {
        rows,
        tol_bits: cfg.tol_bits,
    })
}

fn scan_point(sym: &SymmetricChannel, cfg: &ScanConfig) -> GapScanRow {
    let regime = classify_regime(sym.snr(), sym.inr());
    let outer = etw_outer(sym);
    let inner = inner_assembly(sym);
    let gap = gap_between(&outer, &inner);
    let bound = regime_gap_bound(regime);
    // The noisy bound already carries its discretization allowance.
    let slack = if regime == Regime::Noisy { 0.0 } else { cfg.tol_bits };
    GapScanRow {
        snr: sym.snr(),
        alpha: sym.alpha(),
        regime,
        gap_bits: gap,
        bound_bits: bound,
        pass: gap <= bound + slack,
    }
}

/// Point-to-point gap between the Gaussian-input rate and the firm PAM rate
/// bound at the `nd(snr)` constellation: shaping loss plus the integer
/// penalty `0.5 log2((1 + snr) / nd(snr)^2)`. Bounded by
/// `0.5 log2(4 pi e / 3)`, approached as `snr` grows to 3 from below.
pub fn pam_p2p_gap(snr: f64) -> f64 {
    debug_assert!(snr >= 0.0);
    let n = ndf(snr) as f64;
    igf(snr) - (igf(n * n - 1.0) - shaping_loss())
}

/// Exact rate penalty of handing the oblivious receiver a conditionally
/// independent noisy copy of the interference instead of the interference
/// itself, for jointly Gaussian statistics: `0.5 log2(1 + inr / (1 + inr))`.
/// Strictly below half a bit for every finite INR.
pub fn side_info_gap(inr: f64) -> f64 {
    debug_assert!(inr >= 0.0);
    igf(inr / (1.0 + inr))
}

/// The bracketed factor of the weak-regime sum-rate redundancy condition.
/// Defined for `inr <= snr <= inr (1 + inr)`; takes values in about
/// `[0.7359, 1]` there.
pub fn sumrate_factor(sym: &SymmetricChannel) -> Result<f64> {
    let s = sym.snr();
    let i = sym.inr();
    if !(i <= s && s <= i * (1.0 + i)) {
        return Err(Error::Domain(format!(
            "sumrate factor needs inr <= snr <= inr(1+inr), got snr={s}, inr={i}"
        )));
    }
    Ok((1.0 + 2.0 * i) * (1.0 + 0.5 * s) / ((1.0 + i) * (1.0 + s) + i))
}

/// Whether the sum-rate constraint of the weak-regime corner region is
/// redundant, which selects the corner-matching targets of the gap argument.
pub fn sumrate_redundancy_check(sym: &SymmetricChannel) -> Result<bool> {
    let factor = sumrate_factor(sym)?;
    let s = sym.snr();
    let i = sym.inr();
    let x1 = i * i / (1.0 + s + 2.0 * i);
    let x2 = s * i / ((1.0 + i) * (1.0 + i) + s);
    Ok(1.0 + x1.min(x2) >= factor * (1.0 + x2))
}

/// Numeric minimum of the rational factor
/// `f(x, y) = (1 + 2y)(1 + x/2) / ((1 + x)(1 + y) + x)` over the regime set
/// `{1 <= y <= x <= y(1 + y)}`, with the minimizing `y`. The minimum is
/// about 0.7359 at `y = (sqrt(7) + 2) / 3`, `x = y(1 + y)`.
///
/// This is the closed-form-minimizable variant of the redundancy factor; the
/// condition factor of [`sumrate_factor`] differs by one term in the
/// denominator and stays strictly above this floor on the same set.
pub fn sumrate_factor_minimum() -> (f64, f64) {
    let f = |x: f64, y: f64| (1.0 + 2.0 * y) * (1.0 + 0.5 * x) / ((1.0 + x) * (1.0 + y) + x);
    // Inner minimization over x by golden-section search on [y, y(1+y)].
    let inner_min = |y: f64| {
        let (mut a, mut b) = (y, y * (1.0 + y));
        let phi = 0.5 * (5.0_f64.sqrt() - 1.0);
        for _ in 0..120 {
            let c = b - phi * (b - a);
            let d = a + phi * (b - a);
            if f(c, y) < f(d, y) {
                b = d;
            } else {
                a = c;
            }
        }
        f(0.5 * (a + b), y)
    };
    // Coarse scan over y, then golden-section refinement around the best.
    let mut best_y = 1.0;
    let mut best = inner_min(1.0);
    let mut y = 1.0;
    while y <= 50.0 {
        let v = inner_min(y);
        if v < best {
            best = v;
            best_y = y;
        }
        y += 0.01;
    }
    let (mut a, mut b) = ((best_y - 0.02).max(1.0), best_y + 0.02);
    let phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    for _ in 0..200 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if inner_min(c) < inner_min(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let y_star = 0.5 * (a + b);
    (inner_min(y_star), y_star)
}
