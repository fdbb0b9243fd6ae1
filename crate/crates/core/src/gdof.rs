//! Generalized-degrees-of-freedom regions of the symmetric channel at high
//! SNR, where `inr = snr^alpha` and rates are normalized by `0.5 log2(snr)`.
//!
//! The oblivious-receiver constructions achieve the full-codebook-knowledge
//! gDoF region in every interference regime; [`gdof_icor_region`] assembles
//! the per-regime constructions and the crate's tests verify the equality
//! against [`gdof_gic_region`] direction by direction.

use crate::regions::{hull_union, Constraint, RateRegion};

/// gDoF regions share the polytope structure of rate regions, over `(d1, d2)`.
pub type GdofRegion = RateRegion;

#[inline]
fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// Optimal normalized symmetric sum capacity with full codebook knowledge:
/// `min(1, max(alpha/2, 1 - alpha/2), max(alpha, 1 - alpha))`.
pub fn wcurve(alpha: f64) -> f64 {
    debug_assert!(alpha >= 0.0);
    1.0_f64
        .min((alpha / 2.0).max(1.0 - alpha / 2.0))
        .min(alpha.max(1.0 - alpha))
}

/// gDoF region of the classical symmetric Gaussian channel. The slope-2
/// constraints are active only for `alpha` in `[1/2, 1]`.
pub fn gdof_gic_region(alpha: f64) -> GdofRegion {
    debug_assert!(alpha >= 0.0);
    let mut constraints = vec![
        Constraint::new(1, 0, 1.0),
        Constraint::new(0, 1, 1.0),
        Constraint::new(1, 1, alpha.max(2.0 - alpha)),
        Constraint::new(1, 1, (2.0 * alpha).max(2.0 - 2.0 * alpha)),
    ];
    if (0.5..=1.0).contains(&alpha) {
        constraints.push(Constraint::new(2, 1, 2.0));
        constraints.push(Constraint::new(1, 2, 2.0));
    }
    RateRegion::new(constraints).expect("gdof constraints are well formed")
}

/// Achievable gDoF region of the PAM-plus-Gaussian input with constellation
/// exponent `beta` (the discrete input carries `beta` of the direct link's
/// prelog).
pub fn gdof_pam_input(alpha: f64, beta: f64) -> GdofRegion {
    debug_assert!(alpha >= 0.0 && beta >= 0.0);
    let d1 = beta.min(1.0);
    let d2 = beta.min(pos(alpha - 1.0)) + 1.0 - beta.min(alpha);
    let sum = beta.min(pos(1.0 - alpha)) + alpha;
    RateRegion::new(vec![
        Constraint::new(1, 0, d1),
        Constraint::new(0, 1, d2),
        Constraint::new(1, 1, sum),
    ])
    .expect("gdof constraints are well formed")
}

/// Achievable gDoF region of the mixed input with the standard power splits.
pub fn gdof_mixed_input(alpha: f64, beta: f64) -> GdofRegion {
    debug_assert!(alpha >= 0.0 && beta >= 0.0);
    let d1 = beta.min(1.0 + alpha - 1.0_f64.max(alpha)) + pos(1.0 - alpha);
    let d2 = beta.min(pos(alpha - 1.0)) + 1.0 - beta.min(alpha);
    let sum = beta.min(pos(1.0 + alpha - 1.0_f64.max(2.0 * alpha)))
        + alpha.max(1.0 - alpha)
        + beta.min(pos(2.0 * alpha - 1.0_f64.max(alpha)))
        + pos(1.0 - alpha)
        - beta.min(alpha);
    RateRegion::new(vec![
        Constraint::new(1, 0, d1),
        Constraint::new(0, 1, d2),
        Constraint::new(1, 1, sum),
    ])
    .expect("gdof constraints are well formed")
}

/// gDoF region achievable without the interferer's codebook at one receiver,
/// assembled per interference regime:
///
/// * `alpha >= 2`: the PAM input with `beta = 1` (the sum constraint is
///   redundant there);
/// * `1 <= alpha < 2`: hull of the two PAM-input corner constructions;
/// * `1/2 < alpha < 1`: hull of the two mixed-input corner constructions and
///   the two single-user points;
/// * `alpha <= 1/2`: treating interference as noise with power control, which
///   achieves the full region directly.
pub fn gdof_icor_region(alpha: f64) -> GdofRegion {
    debug_assert!(alpha >= 0.0);
    if alpha >= 2.0 {
        gdof_pam_input(alpha, 1.0)
    } else if alpha >= 1.0 {
        hull_union(&[gdof_pam_input(alpha, 1.0), gdof_pam_input(alpha, alpha - 1.0)])
            .expect("hull of nonempty list")
    } else if alpha > 0.5 {
        hull_union(&[
            RateRegion::rectangle(1.0, 0.0),
            RateRegion::rectangle(0.0, 1.0),
            gdof_mixed_input(alpha, 2.0 * alpha - 1.0),
            gdof_mixed_input(alpha, 1.0 - alpha),
        ])
        .expect("hull of nonempty list")
    } else {
        gdof_gic_region(alpha)
    }
}
