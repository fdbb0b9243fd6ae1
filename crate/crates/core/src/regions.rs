//! Two-dimensional downward-closed rate polytopes over the fixed direction
//! set {(1,0), (0,1), (1,1), (2,1), (1,2)}, plus the closed-form inner and
//! outer region constructors for the Gaussian channel.
//!
//! Every region is the set `{(r1, r2) >= 0 : a1 r1 + a2 r2 <= b for all
//! constraints}`. The fixed directions cover every bound used by the region
//! formulas and by the classical outer bound, so projecting a convex hull
//! back onto them (a supporting-function computation) is exact for all
//! comparisons made in this crate.

use serde::{Deserialize, Serialize};

use crate::core_math::{idf, igf, shaping_loss, ChannelGains, SymmetricChannel};
use crate::{Error, Result};

/// The admissible constraint directions, in canonical order.
pub const DIRECTIONS: [[u32; 2]; 5] = [[1, 0], [0, 1], [1, 1], [2, 1], [1, 2]];

/// Tolerance for vertex membership tests, in bits.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Tolerance of the per-user gap bisection, in bits.
pub const GAP_TOL: f64 = 1e-6;

const VERTEX_MERGE_TOL: f64 = 1e-12;

/// One half-plane `a[0] r1 + a[1] r2 <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub a: [u32; 2],
    pub b: f64,
}

impl Constraint {
    pub fn new(a1: u32, a2: u32, b: f64) -> Self {
        Self { a: [a1, a2], b }
    }
}

/// A nonnegative rate pair in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    fn dot(&self, a: [u32; 2]) -> f64 {
        a[0] as f64 * self.r1 + a[1] as f64 * self.r2
    }
}

/// Downward-closed 2-D polytope over the fixed direction set. Also used for
/// gDoF regions, which share the structure with `(d1, d2)` in place of
/// `(R1, R2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRegion {
    constraints: Vec<Constraint>,
}

impl RateRegion {
    /// Builds a region from constraints. Constraints sharing a direction are
    /// merged by keeping the smaller bound; the `(1,0)` and `(0,1)`
    /// constraints must both be present.
    pub fn new(constraints: Vec<Constraint>) -> Result<Self> {
        let mut merged: Vec<Constraint> = Vec::with_capacity(constraints.len());
        for c in constraints {
            if !DIRECTIONS.contains(&c.a) {
                return Err(Error::Domain(format!(
                    "constraint direction {:?} is not in the fixed set",
                    c.a
                )));
            }
            if !c.b.is_finite() {
                return Err(Error::Domain("constraint bound must be finite".into()));
            }
            match merged.iter_mut().find(|m| m.a == c.a) {
                Some(m) => m.b = m.b.min(c.b),
                None => merged.push(c),
            }
        }
        if !merged.iter().any(|c| c.a == [1, 0]) || !merged.iter().any(|c| c.a == [0, 1]) {
            return Err(Error::Domain(
                "region must constrain both single-rate directions".into(),
            ));
        }
        merged.sort_by_key(|c| DIRECTIONS.iter().position(|d| *d == c.a).unwrap());
        Ok(Self { constraints: merged })
    }

    /// Downward closure of the single point `(r1, r2)`.
    pub fn rectangle(r1: f64, r2: f64) -> Self {
        Self::new(vec![Constraint::new(1, 0, r1), Constraint::new(0, 1, r2)]).unwrap()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Bound stored for a direction, if present.
    pub fn bound(&self, a1: u32, a2: u32) -> Option<f64> {
        self.constraints
            .iter()
            .find(|c| c.a == [a1, a2])
            .map(|c| c.b)
    }

    /// Membership test with the given tolerance in bits.
    pub fn contains(&self, p: RatePair, tol: f64) -> bool {
        if p.r1 < -tol || p.r2 < -tol {
            return false;
        }
        self.constraints.iter().all(|c| p.dot(c.a) <= c.b + tol)
    }

    /// All extreme points of the polytope, axis intercepts included, sorted
    /// by `r1` ascending; points closer than 1e-12 are merged.
    pub fn vertices(&self) -> Vec<RatePair> {
        let mut lines: Vec<(f64, f64, f64)> = self
            .constraints
            .iter()
            .map(|c| (c.a[0] as f64, c.a[1] as f64, c.b))
            .collect();
        lines.push((1.0, 0.0, 0.0));
        lines.push((0.0, 1.0, 0.0));
        let mut pts: Vec<RatePair> = Vec::new();
        for i in 0..lines.len() {
            for j in (i + 1)..lines.len() {
                let (a1, a2, b1) = lines[i];
                let (c1, c2, b2) = lines[j];
                let det = a1 * c2 - a2 * c1;
                if det.abs() < 1e-12 {
                    continue;
                }
                let r1 = (b1 * c2 - b2 * a2) / det;
                let r2 = (a1 * b2 - c1 * b1) / det;
                let p = RatePair::new(r1.max(0.0), r2.max(0.0));
                // Clamping may move the point off the lines; only keep it if
                // it still satisfies everything.
                if r1 < -MEMBERSHIP_TOL || r2 < -MEMBERSHIP_TOL {
                    continue;
                }
                if self.contains(p, MEMBERSHIP_TOL) {
                    pts.push(p);
                }
            }
        }
        pts.sort_by(|p, q| {
            p.r1.total_cmp(&q.r1)
                .then_with(|| p.r2.total_cmp(&q.r2))
        });
        pts.dedup_by(|p, q| {
            (p.r1 - q.r1).abs() <= VERTEX_MERGE_TOL && (p.r2 - q.r2).abs() <= VERTEX_MERGE_TOL
        });
        pts
    }

    /// Supporting-function value `max a . r` over the region.
    pub fn support(&self, a1: u32, a2: u32) -> f64 {
        self.vertices()
            .iter()
            .map(|v| v.dot([a1, a2]))
            .fold(0.0, f64::max)
    }

    /// Largest achievable sum rate in the region.
    pub fn max_sum_rate(&self) -> f64 {
        self.support(1, 1)
    }

    /// Canonical form: every bound tightened to the supporting-function value
    /// and constraints that do not shape the polytope removed, in a fixed
    /// order so equal polytopes serialize identically.
    pub fn canonicalized(&self) -> RateRegion {
        let mut kept: Vec<Constraint> = DIRECTIONS
            .iter()
            .map(|&[a1, a2]| Constraint::new(a1, a2, self.support(a1, a2)))
            .collect();
        for dir in [[2u32, 1u32], [1, 2], [1, 1]] {
            let Some(pos) = kept.iter().position(|c| c.a == dir) else {
                continue;
            };
            let b = kept[pos].b;
            let mut without = kept.clone();
            without.remove(pos);
            let candidate = RateRegion {
                constraints: without.clone(),
            };
            if candidate.support(dir[0], dir[1]) <= b + 1e-12 {
                kept = without;
            }
        }
        RateRegion { constraints: kept }
    }

    /// JSON form `{"constraints":[{"a":[1,0],"b":...}, ...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("region serialization cannot fail")
    }

    /// CSV vertex list with columns `r1,r2`.
    pub fn vertices_csv(&self) -> String {
        let mut out = String::from("r1,r2\n");
        for v in self.vertices() {
            out.push_str(&format!("{},{}\n", v.r1, v.r2));
        }
        out
    }
}

/// Tightest region over the fixed directions containing the convex hull of
/// the union of the given regions.
pub fn hull_union(regions: &[RateRegion]) -> Result<RateRegion> {
    if regions.is_empty() {
        return Err(Error::Domain("hull_union of an empty list".into()));
    }
    let mut verts: Vec<RatePair> = Vec::new();
    for r in regions {
        verts.extend(r.vertices());
    }
    let constraints = DIRECTIONS
        .iter()
        .map(|&[a1, a2]| {
            let b = verts
                .iter()
                .map(|v| v.dot([a1, a2]))
                .fold(0.0, f64::max);
            Constraint::new(a1, a2, b)
        })
        .collect();
    Ok(RateRegion { constraints }.canonicalized())
}

/// Smallest per-user shrink `g >= 0` such that every vertex `(r1, r2)` of
/// `outer`, moved to `([r1-g]^+, [r2-g]^+)`, lies in `inner`. Valid because
/// both regions are downward closed and convex. Returns infinity if `inner`
/// does not even contain the origin.
pub fn gap_between(outer: &RateRegion, inner: &RateRegion) -> f64 {
    let verts = outer.vertices();
    if verts.is_empty() {
        return 0.0;
    }
    let ok = |g: f64| {
        verts.iter().all(|v| {
            inner.contains(
                RatePair::new((v.r1 - g).max(0.0), (v.r2 - g).max(0.0)),
                MEMBERSHIP_TOL,
            )
        })
    };
    if ok(0.0) {
        return 0.0;
    }
    let mut hi = verts
        .iter()
        .map(|v| v.r1.max(v.r2))
        .fold(0.0, f64::max)
        + 1.0;
    if !ok(hi) {
        return f64::INFINITY;
    }
    let mut lo = 0.0;
    while hi - lo > GAP_TOL {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[inline]
fn sq(x: f64) -> f64 {
    x * x
}

/// Achievable region with an `n`-point PAM input at transmitter 1 and a
/// Gaussian input at transmitter 2, the interference treated by joint
/// decoding at receiver 1 and by estimation at receiver 2.
pub fn pam_input_region(ch: &ChannelGains, n: u32) -> Result<RateRegion> {
    if n == 0 {
        return Err(Error::Domain("constellation size must be >= 1".into()));
    }
    let (g11, g12, g21, g22) = (sq(ch.h11), sq(ch.h12), sq(ch.h21), sq(ch.h22));
    let cap = sq(n as f64) - 1.0;
    let b1 = idf(n, g11);
    let b2 = idf(n, g21 / (1.0 + g22)) + igf(g22) - igf(cap.min(g21));
    let b12 = idf(n, g11 / (1.0 + g12)) + igf(g12);
    RateRegion::new(vec![
        Constraint::new(1, 0, b1),
        Constraint::new(0, 1, b2),
        Constraint::new(1, 1, b12),
    ])
}

/// Achievable region with mixed inputs: transmitter 1 splits power between a
/// PAM part and a Gaussian part (`delta1` on the Gaussian part), transmitter
/// 2 between a common and a private Gaussian part (`delta2` on the private
/// part). With both splits zero this is exactly the PAM-input region.
pub fn mixed_input_region(
    ch: &ChannelGains,
    n: u32,
    delta1: f64,
    delta2: f64,
) -> Result<RateRegion> {
    if n == 0 {
        return Err(Error::Domain("constellation size must be >= 1".into()));
    }
    for (name, d) in [("delta1", delta1), ("delta2", delta2)] {
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::Domain(format!("{name} must lie in [0, 1], got {d}")));
        }
    }
    // The stated mixed-input bounds do not collapse to the pure-PAM bounds at
    // zero splits (the sum bound keeps a residual estimation term), but the
    // scheme itself does; delegate so the degenerate split is exact.
    if delta1 == 0.0 && delta2 == 0.0 {
        return pam_input_region(ch, n);
    }
    let (g11, g12, g21, g22) = (sq(ch.h11), sq(ch.h12), sq(ch.h21), sq(ch.h22));
    let cap = sq(n as f64) - 1.0;
    let keep1 = 1.0 - delta1;

    let b1 = idf(n, g11 * keep1 / (1.0 + g11 * delta1 + g12 * delta2))
        + igf(g11 * delta1 / (1.0 + g12 * delta2));

    let b2 = idf(n, g21 * keep1 / (1.0 + g21 * delta1 + g22))
        + igf(g22 / (1.0 + g21 * delta1))
        - igf(cap.min(g21 * keep1 / (1.0 + g21 * delta1)));

    let b12 = idf(n, g11 * keep1 / (1.0 + g11 * delta1 + g12))
        + igf(g11 * delta1 + g12)
        - igf(g12 * delta2)
        + idf(n, g21 * keep1 / (1.0 + g21 * delta1 + g22 * delta2))
        + igf(g22 * delta2 / (1.0 + g21 * delta1))
        - igf(cap.min(g21 * keep1 / (1.0 + g21 * delta1)));

    RateRegion::new(vec![
        Constraint::new(1, 0, b1),
        Constraint::new(0, 1, b2),
        Constraint::new(1, 1, b12),
    ])
}

/// Symmetric-channel lower bound on the mixed-input region for the power
/// splits `delta1 = delta2 = 1 / (1 + inr)`, in the further-lower-bounded
/// form used by the constant-gap argument (the positive parts of the
/// discrete-input bounds are dropped).
pub fn mixed_input_etw_region(sym: &SymmetricChannel, n: u32) -> Result<RateRegion> {
    if n == 0 {
        return Err(Error::Domain("constellation size must be >= 1".into()));
    }
    let s = sym.snr();
    let i = sym.inr();
    let cap = sq(n as f64) - 1.0;
    let sl = shaping_loss();

    let b1 = igf(cap.min(s * i / (1.0 + s + 2.0 * i))) - sl + igf(s / (1.0 + 2.0 * i));

    let b2 = igf(cap.min(i * i / ((1.0 + i) * (1.0 + s) + i))) - sl + igf(0.5 * s)
        - igf(cap.min(i * i / (1.0 + 2.0 * i)));

    let b12 = igf(cap.min(s * i / (sq(1.0 + i) + s))) - sl
        + igf(i + s / (1.0 + i))
        - igf(i / (1.0 + i))
        + igf(cap.min(i * i / (1.0 + s + 2.0 * i)))
        - sl
        + igf(s / (1.0 + 2.0 * i))
        - igf(cap.min(i * i / (1.0 + 2.0 * i)));

    RateRegion::new(vec![
        Constraint::new(1, 0, b1),
        Constraint::new(0, 1, b2),
        Constraint::new(1, 1, b12),
    ])
}

/// Sum rate with independent Gaussian inputs at both transmitters.
pub fn gg_sumrate(sym: &SymmetricChannel) -> f64 {
    let s = sym.snr();
    let i = sym.inr();
    let branch_singles = igf(s) + igf(s / (1.0 + i));
    let branch_side_info = igf(s / (1.0 + i)) + igf(i + s / (1.0 + i));
    branch_singles.min(branch_side_info)
}

/// Sum rate of time division with Gaussian codebooks: each user active half
/// the time at double power.
pub fn td_sumrate(snr: f64) -> f64 {
    debug_assert!(snr >= 0.0);
    igf(2.0 * snr)
}

/// Classical outer bound for the symmetric Gaussian channel with full
/// codebook knowledge, including the `2R1+R2` and `R1+2R2` constraints.
pub fn etw_outer(sym: &SymmetricChannel) -> RateRegion {
    let s = sym.snr();
    let i = sym.inr();
    let single = igf(s);
    let kra = (igf(s) - igf(i)).max(0.0) + igf(s + i);
    let mimo_like = 2.0 * igf(i + s / (1.0 + i));
    let slope = kra + igf(i + s / (1.0 + i));
    RateRegion::new(vec![
        Constraint::new(1, 0, single),
        Constraint::new(0, 1, single),
        Constraint::new(1, 1, kra),
        Constraint::new(1, 1, mimo_like),
        Constraint::new(2, 1, slope),
        Constraint::new(1, 2, slope),
    ])
    .expect("outer-bound constraints are well formed")
}

/// The oblivious-receiver outer bound evaluated for independent Gaussian
/// inputs without time sharing. The sum bound carries the side-information
/// term of the noisy input copy given to the oblivious receiver; its maximum
/// sum rate equals [`gg_sumrate`].
pub fn gaussian_outer_region(sym: &SymmetricChannel) -> RateRegion {
    let s = sym.snr();
    let i = sym.inr();
    RateRegion::new(vec![
        Constraint::new(1, 0, igf(s)),
        Constraint::new(0, 1, igf(s / (1.0 + i))),
        Constraint::new(1, 1, igf(s + i) + igf(s / sq(1.0 + i))),
    ])
    .expect("outer-bound constraints are well formed")
}
