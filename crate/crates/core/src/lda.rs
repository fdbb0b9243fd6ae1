//! Exact capacity region of the linear deterministic channel model with one
//! oblivious receiver, entropy computations over bit-vector pmfs, and a
//! sum-rate optimizer over product input distributions.
//!
//! Inputs and outputs are length-`q` binary vectors, indexed by the integer
//! whose binary expansion (MSB = top signal level) is the bit vector. The
//! shift matrix discards top levels, which on indices is a plain right shift;
//! entropies are invariant under any fixed bit relabeling, so any consistent
//! shift convention reproduces the same region.

use std::f64::consts::LOG2_E;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::regions::{Constraint, RateRegion};
use crate::{Error, Result};

/// Largest `q` accepted by the optimizer (state space `2^q` per user).
pub const MAX_OPTIMIZER_LEVELS: u32 = 6;

/// Largest `q` accepted by the exact region evaluation.
const MAX_REGION_LEVELS: u32 = 12;

/// Deterministic channel with gains given as integer level counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LdaChannel {
    n11: u32,
    n12: u32,
    n21: u32,
    n22: u32,
    q: u32,
}

impl LdaChannel {
    pub fn new(n11: u32, n12: u32, n21: u32, n22: u32) -> Self {
        let q = n11.max(n12).max(n21).max(n22);
        Self {
            n11,
            n12,
            n21,
            n22,
            q,
        }
    }

    /// Symmetric channel with direct links `ns` and cross links `ni`.
    pub fn symmetric(ns: u32, ni: u32) -> Self {
        Self::new(ns, ni, ni, ns)
    }

    pub fn n11(&self) -> u32 {
        self.n11
    }

    pub fn n12(&self) -> u32 {
        self.n12
    }

    pub fn n21(&self) -> u32 {
        self.n21
    }

    pub fn n22(&self) -> u32 {
        self.n22
    }

    /// Number of signal levels, the max of the four gains.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Interference exponent `ni / ns` of a symmetric channel.
    pub fn alpha(&self) -> f64 {
        self.n12 as f64 / self.n11 as f64
    }
}

/// Probability mass function over length-`q` binary vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct BitvecPmf {
    probs: Vec<f64>,
}

impl BitvecPmf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if !probs.len().is_power_of_two() || probs.len() < 2 {
            return Err(Error::Domain(
                "pmf length must be a power of two (2^q entries, q >= 1)".into(),
            ));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Domain("pmf entries must be nonnegative".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "pmf must sum to 1 within 1e-12, got {total}"
            )));
        }
        Ok(Self { probs })
    }

    /// Uniform distribution over all `2^q` vectors.
    pub fn uniform(q: u32) -> Self {
        let len = 1usize << q;
        Self {
            probs: vec![1.0 / len as f64; len],
        }
    }

    /// Point mass on a single vector.
    pub fn point_mass(q: u32, x: usize) -> Result<Self> {
        let len = 1usize << q;
        if x >= len {
            return Err(Error::Domain(format!("index {x} out of range for q={q}")));
        }
        let mut probs = vec![0.0; len];
        probs[x] = 1.0;
        Ok(Self { probs })
    }

    /// Uniform distribution on a set of vectors.
    pub fn uniform_on(q: u32, support: &[usize]) -> Result<Self> {
        let len = 1usize << q;
        if support.is_empty() {
            return Err(Error::Domain("support must be nonempty".into()));
        }
        let mut probs = vec![0.0; len];
        let w = 1.0 / support.len() as f64;
        for &x in support {
            if x >= len {
                return Err(Error::Domain(format!("index {x} out of range for q={q}")));
            }
            probs[x] += w;
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of signal levels `q`.
    pub fn levels(&self) -> u32 {
        self.probs.len().trailing_zeros()
    }
}

/// Action of the shift matrix on a bit-vector index: discard the bottom `s`
/// levels (`x >> s`). `s = 0` is the identity; `s = q` annihilates.
pub fn shift_apply(x: usize, s: u32, q: u32) -> Result<usize> {
    if x >= (1usize << q) {
        return Err(Error::Domain(format!("index {x} out of range for q={q}")));
    }
    if s > q {
        return Err(Error::Domain(format!("shift {s} exceeds q={q}")));
    }
    Ok(x >> s)
}

/// Shannon entropy in bits.
pub fn pmf_entropy(pmf: &BitvecPmf) -> f64 {
    entropy_bits(pmf.probs())
}

fn entropy_bits(p: &[f64]) -> f64 {
    let mut h = 0.0;
    for &x in p {
        if x > 0.0 {
            h -= x * x.log2();
        }
    }
    h
}

fn shift_pmf(p: &[f64], s: u32) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    for (x, &px) in p.iter().enumerate() {
        out[x >> s] += px;
    }
    out
}

fn xor_conv(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    for (x, &ax) in a.iter().enumerate() {
        if ax == 0.0 {
            continue;
        }
        for (y, &by) in b.iter().enumerate() {
            if by != 0.0 {
                out[x ^ y] += ax * by;
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
struct Shifts {
    s11: u32,
    s12: u32,
    s21: u32,
    s22: u32,
}

impl Shifts {
    fn of(ch: &LdaChannel) -> Self {
        Self {
            s11: ch.q - ch.n11,
            s12: ch.q - ch.n12,
            s21: ch.q - ch.n21,
            s22: ch.q - ch.n22,
        }
    }
}

struct LdaBounds {
    b1: f64,
    b2: f64,
    b12: f64,
}

impl LdaBounds {
    fn sum_corner(&self) -> f64 {
        (self.b1 + self.b2).min(self.b12)
    }
}

/// Intermediate pmfs of one evaluation, kept for gradient computations.
struct Evaluation {
    sh: Shifts,
    p1_direct: Vec<f64>,
    p2_direct: Vec<f64>,
    t1: Vec<f64>,
    t2: Vec<f64>,
    y1: Vec<f64>,
    y2: Vec<f64>,
    joint: Vec<f64>,
    bounds: LdaBounds,
}

fn evaluate(ch: &LdaChannel, p1: &[f64], p2: &[f64]) -> Evaluation {
    let sh = Shifts::of(ch);
    let len = 1usize << ch.q;

    let p1_direct = shift_pmf(p1, sh.s11);
    let t1 = shift_pmf(p1, sh.s21);
    let t2 = shift_pmf(p2, sh.s12);
    let p2_direct = shift_pmf(p2, sh.s22);

    let y1 = xor_conv(&p1_direct, &t2);
    let y2 = xor_conv(&t1, &p2_direct);

    let mut joint = vec![0.0; len * len];
    for (x1, &px1) in p1.iter().enumerate() {
        if px1 == 0.0 {
            continue;
        }
        let a = x1 >> sh.s21;
        for (x2, &px2) in p2.iter().enumerate() {
            if px2 != 0.0 {
                let y = a ^ (x2 >> sh.s22);
                let t = x2 >> sh.s12;
                joint[y * len + t] += px1 * px2;
            }
        }
    }

    let b1 = entropy_bits(&p1_direct);
    let b2 = entropy_bits(&y2) - entropy_bits(&t1);
    let h_y2_given_t2 = entropy_bits(&joint) - entropy_bits(&t2);
    let b12 = entropy_bits(&y1) + h_y2_given_t2 - entropy_bits(&t1);

    Evaluation {
        sh,
        p1_direct,
        p2_direct,
        t1,
        t2,
        y1,
        y2,
        joint,
        bounds: LdaBounds { b1, b2, b12 },
    }
}

fn lda_bounds(ch: &LdaChannel, p1: &[f64], p2: &[f64]) -> LdaBounds {
    evaluate(ch, p1, p2).bounds
}

fn check_pmf_dims(ch: &LdaChannel, p1: &BitvecPmf, p2: &BitvecPmf) -> Result<()> {
    if ch.q > MAX_REGION_LEVELS {
        return Err(Error::Capability(format!(
            "q = {} exceeds the supported maximum {MAX_REGION_LEVELS}",
            ch.q
        )));
    }
    let len = 1usize << ch.q;
    if p1.probs().len() != len || p2.probs().len() != len {
        return Err(Error::Domain(format!(
            "pmf length must be 2^q = {len} for this channel"
        )));
    }
    Ok(())
}

/// Capacity region of the deterministic channel for the given product input;
/// the outer bound is tight for fully deterministic channels, so this is the
/// exact region for that input.
pub fn lda_region(ch: &LdaChannel, p1: &BitvecPmf, p2: &BitvecPmf) -> Result<RateRegion> {
    check_pmf_dims(ch, p1, p2)?;
    let b = lda_bounds(ch, p1.probs(), p2.probs());
    RateRegion::new(vec![
        Constraint::new(1, 0, b.b1),
        Constraint::new(0, 1, b.b2),
        Constraint::new(1, 1, b.b12),
    ])
}

/// Normalized sum rate of i.i.d. fair-coin inputs: max sum rate of
/// [`lda_region`] with both pmfs uniform, divided by `2 * n11`.
pub fn lda_uniform_normalized_sumrate(ch: &LdaChannel) -> Result<f64> {
    if ch.n11 == 0 {
        return Err(Error::Domain(
            "normalization requires a nonzero direct gain".into(),
        ));
    }
    let p = BitvecPmf::uniform(ch.q);
    check_pmf_dims(ch, &p, &p)?;
    let b = lda_bounds(ch, p.probs(), p.probs());
    Ok(b.sum_corner() / (2.0 * ch.n11 as f64))
}

/// Configuration of the sum-rate optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Independent random restarts of the alternating ascent.
    pub restarts: usize,
    /// Seed; fully determines the result.
    pub seed: u64,
    /// Alternating rounds per restart.
    pub max_rounds: usize,
    /// Projected-gradient steps per half-round.
    pub max_steps: usize,
    /// Stop a half-round after this many steps without 1e-9 improvement.
    pub stall_steps: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            seed: 42,
            max_rounds: 8,
            max_steps: 150,
            stall_steps: 50,
        }
    }
}

/// Best found maximum of the sum-rate corner of [`lda_region`] over product
/// pmfs, with the achieving input pair.
///
/// Runs a multi-start alternating projected-gradient ascent, seeded by
/// `cfg.seed`. For `q <= 3` every support pattern (with a uniform pmf on it)
/// is also enumerated, and for `q = 4` every affine support pattern; the
/// known optimal inputs at these sizes are uniform over such supports, so
/// the enumeration certifies the optimizer deterministically. The result is
/// never below the fair-coin baseline.
pub fn lda_max_sumrate(
    ch: &LdaChannel,
    cfg: &OptimizerConfig,
) -> Result<(f64, BitvecPmf, BitvecPmf)> {
    if ch.q > MAX_OPTIMIZER_LEVELS {
        return Err(Error::Capability(format!(
            "optimizer supports q <= {MAX_OPTIMIZER_LEVELS}, got q = {}",
            ch.q
        )));
    }
    if ch.q == 0 {
        return Err(Error::Domain("channel with q = 0 carries no signal".into()));
    }
    let len = 1usize << ch.q;

    let uniform = vec![1.0 / len as f64; len];
    let mut best_value = lda_bounds(ch, &uniform, &uniform).sum_corner();
    let mut best_p1 = uniform.clone();
    let mut best_p2 = uniform;

    if ch.q <= 4 {
        let pmfs: Vec<Vec<f64>> = candidate_supports(ch.q)
            .into_iter()
            .map(|s| {
                let mut p = vec![0.0; len];
                let w = 1.0 / s.len() as f64;
                for x in s {
                    p[x] = w;
                }
                p
            })
            .collect();
        let enumerated = pmfs
            .par_iter()
            .enumerate()
            .map(|(i, p1)| {
                let mut local = (f64::NEG_INFINITY, 0usize, 0usize);
                for (j, p2) in pmfs.iter().enumerate() {
                    let v = lda_bounds(ch, p1, p2).sum_corner();
                    if v > local.0 {
                        local = (v, i, j);
                    }
                }
                local
            })
            .reduce(
                || (f64::NEG_INFINITY, usize::MAX, usize::MAX),
                |a, b| match a.0.total_cmp(&b.0) {
                    std::cmp::Ordering::Greater => a,
                    std::cmp::Ordering::Less => b,
                    std::cmp::Ordering::Equal => {
                        if (a.1, a.2) <= (b.1, b.2) {
                            a
                        } else {
                            b
                        }
                    }
                },
            );
        if enumerated.0 > best_value {
            best_value = enumerated.0;
            best_p1 = pmfs[enumerated.1].clone();
            best_p2 = pmfs[enumerated.2].clone();
        }
    }

    // Restarts are independent; merged by max with the lowest restart index
    // winning ties, so the result does not depend on thread count.
    let runs: Vec<(f64, Vec<f64>, Vec<f64>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| ascent_restart(ch, cfg, r as u64))
        .collect();
    for (v, p1, p2) in runs {
        if v > best_value + 1e-12 {
            best_value = v;
            best_p1 = p1;
            best_p2 = p2;
        }
    }

    Ok((
        best_value,
        BitvecPmf::new(best_p1)?,
        BitvecPmf::new(best_p2)?,
    ))
}

/// Reference sum-rate-optimal input pairs for five small symmetric channels,
/// together with the channels they certify. All are uniform over small
/// structured supports and attain the optimal normalized sum rate exactly.
///
/// The last pair is listed for the doubly strong `(1, 2)` channel; under the
/// transposed `(2, 1)` reading the same pmfs attain that channel's optimum
/// of one half as well.
pub fn known_optimal_inputs() -> Vec<(LdaChannel, BitvecPmf, BitvecPmf)> {
    let pmf = |v: Vec<f64>| BitvecPmf::new(v).expect("reference pmf is valid");
    vec![
        (
            LdaChannel::symmetric(2, 1),
            pmf(vec![0.5, 0.0, 0.5, 0.0]),
            pmf(vec![0.0, 0.5, 0.0, 0.5]),
        ),
        (
            LdaChannel::symmetric(3, 2),
            pmf(vec![0.0, 0.0, 0.25, 0.25, 0.0, 0.0, 0.25, 0.25]),
            pmf(vec![0.0, 0.0, 0.25, 0.25, 0.0, 0.0, 0.25, 0.25]),
        ),
        (
            LdaChannel::symmetric(2, 2),
            pmf(vec![0.0, 0.0, 0.5, 0.5]),
            pmf(vec![0.0, 0.5, 0.0, 0.5]),
        ),
        (
            LdaChannel::symmetric(3, 4),
            pmf(vec![
                0.0, 0.0, 0.0, 0.0, 0.0, 0.25, 0.0, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0, 0.25, 0.0,
                0.25,
            ]),
            pmf(vec![
                0.0, 0.0, 0.0, 0.25, 0.0, 0.25, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.25, 0.0,
                0.25,
            ]),
        ),
        // The doubly strong channel: direct links one level, cross links two.
        (
            LdaChannel::symmetric(1, 2),
            pmf(vec![0.0, 0.5, 0.0, 0.5]),
            pmf(vec![0.0, 0.5, 0.0, 0.5]),
        ),
    ]
}

fn candidate_supports(q: u32) -> Vec<Vec<usize>> {
    let len = 1usize << q;
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << len) {
        let set: Vec<usize> = (0..len).filter(|x| mask & (1 << x) != 0).collect();
        if q <= 3 || is_affine_flat(&set) {
            out.push(set);
        }
    }
    out
}

fn is_affine_flat(set: &[usize]) -> bool {
    if !set.len().is_power_of_two() {
        return false;
    }
    let base = set[0];
    let members: Vec<usize> = set.iter().map(|&x| x ^ base).collect();
    for &a in &members {
        for &b in &members {
            if !members.contains(&(a ^ b)) {
                return false;
            }
        }
    }
    true
}

fn ascent_restart(
    ch: &LdaChannel,
    cfg: &OptimizerConfig,
    restart: u64,
) -> (f64, Vec<f64>, Vec<f64>) {
    let len = 1usize << ch.q;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e3779b97f4a7c15) ^ restart);
    let mut p1 = random_simplex(&mut rng, len);
    let mut p2 = random_simplex(&mut rng, len);
    let mut value = lda_bounds(ch, &p1, &p2).sum_corner();
    for _ in 0..cfg.max_rounds {
        let before = value;
        value = ascend_pmf(ch, &mut p1, &p2, true, cfg, value);
        value = ascend_pmf(ch, &mut p2, &p1, false, cfg, value);
        if value - before < 1e-9 {
            break;
        }
    }
    (value, p1, p2)
}

fn random_simplex(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    // Exponential coordinates, normalized: uniform on the simplex.
    let mut p: Vec<f64> = (0..len)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = p.iter().sum();
    for x in &mut p {
        *x /= total;
    }
    p
}

/// Projected-gradient ascent over one user's pmf while the other is held
/// fixed. `moving_is_user1` tells which argument of the objective moves.
fn ascend_pmf(
    ch: &LdaChannel,
    moving: &mut Vec<f64>,
    fixed: &[f64],
    moving_is_user1: bool,
    cfg: &OptimizerConfig,
    mut value: f64,
) -> f64 {
    let mut step = 0.25;
    let mut stall = 0usize;
    for _ in 0..cfg.max_steps {
        let grad = objective_gradient(ch, moving, fixed, moving_is_user1);
        let mut accepted = false;
        let mut trial = step;
        for _ in 0..24 {
            let mut candidate: Vec<f64> = moving
                .iter()
                .zip(&grad)
                .map(|(p, g)| p + trial * g)
                .collect();
            project_simplex(&mut candidate);
            let v = if moving_is_user1 {
                lda_bounds(ch, &candidate, fixed).sum_corner()
            } else {
                lda_bounds(ch, fixed, &candidate).sum_corner()
            };
            if v > value {
                let gain = v - value;
                *moving = candidate;
                value = v;
                step = (trial * 1.5).min(1.0);
                accepted = true;
                if gain < 1e-9 {
                    stall += 1;
                } else {
                    stall = 0;
                }
                break;
            }
            trial *= 0.5;
        }
        if !accepted {
            stall += 1;
            step = (step * 0.5).max(1e-6);
        }
        if stall >= cfg.stall_steps {
            break;
        }
    }
    value
}

#[inline]
fn l2(x: f64) -> f64 {
    x.max(1e-30).log2()
}

/// Gradient of the sum-rate corner `min(b1 + b2, b12)` with respect to one
/// user's pmf; at a kink the two branch gradients are averaged.
fn objective_gradient(
    ch: &LdaChannel,
    moving: &[f64],
    fixed: &[f64],
    moving_is_user1: bool,
) -> Vec<f64> {
    let (p1, p2) = if moving_is_user1 {
        (moving, fixed)
    } else {
        (fixed, moving)
    };
    let ev = evaluate(ch, p1, p2);
    let len = moving.len();
    let f = ev.bounds.b1 + ev.bounds.b2;
    let g = ev.bounds.b12;

    let grad_f = if moving_is_user1 {
        // d(b1 + b2)/dp1 = dH(X1 direct)/dp1 + dH(Y2)/dp1 - dH(T1)/dp1.
        (0..len)
            .map(|x| {
                let mut d = -(l2(ev.p1_direct[x >> ev.sh.s11]) + LOG2_E);
                let a = x >> ev.sh.s21;
                let mut dy2 = 0.0;
                for (z, &pz) in ev.p2_direct.iter().enumerate() {
                    if pz != 0.0 {
                        dy2 -= pz * (l2(ev.y2[a ^ z]) + LOG2_E);
                    }
                }
                d += dy2;
                d += l2(ev.t1[a]) + LOG2_E;
                d
            })
            .collect::<Vec<f64>>()
    } else {
        // d(b1 + b2)/dp2 = dH(Y2)/dp2.
        (0..len)
            .map(|x| {
                let bz = x >> ev.sh.s22;
                let mut d = 0.0;
                for (z, &pz) in ev.t1.iter().enumerate() {
                    if pz != 0.0 {
                        d -= pz * (l2(ev.y2[z ^ bz]) + LOG2_E);
                    }
                }
                d
            })
            .collect::<Vec<f64>>()
    };

    let jlen = 1usize << ch.q;
    let grad_g = if moving_is_user1 {
        // d(b12)/dp1 = dH(Y1)/dp1 + dH(joint)/dp1 - dH(T1)/dp1.
        (0..len)
            .map(|x| {
                let ad = x >> ev.sh.s11;
                let ai = x >> ev.sh.s21;
                let mut d = 0.0;
                for (z, &pz) in ev.t2.iter().enumerate() {
                    if pz != 0.0 {
                        d -= pz * (l2(ev.y1[ad ^ z]) + LOG2_E);
                    }
                }
                for (x2, &px2) in p2.iter().enumerate() {
                    if px2 != 0.0 {
                        let y = ai ^ (x2 >> ev.sh.s22);
                        let t = x2 >> ev.sh.s12;
                        d -= px2 * (l2(ev.joint[y * jlen + t]) + LOG2_E);
                    }
                }
                d += l2(ev.t1[ai]) + LOG2_E;
                d
            })
            .collect::<Vec<f64>>()
    } else {
        // d(b12)/dp2 = dH(Y1)/dp2 + dH(joint)/dp2 - dH(T2)/dp2.
        (0..len)
            .map(|x| {
                let bi = x >> ev.sh.s12;
                let bd = x >> ev.sh.s22;
                let mut d = 0.0;
                for (z, &pz) in ev.p1_direct.iter().enumerate() {
                    if pz != 0.0 {
                        d -= pz * (l2(ev.y1[z ^ bi]) + LOG2_E);
                    }
                }
                for (x1, &px1) in p1.iter().enumerate() {
                    if px1 != 0.0 {
                        let y = (x1 >> ev.sh.s21) ^ bd;
                        d -= px1 * (l2(ev.joint[y * jlen + bi]) + LOG2_E);
                    }
                }
                d += l2(ev.t2[bi]) + LOG2_E;
                d
            })
            .collect::<Vec<f64>>()
    };

    if f < g - 1e-12 {
        grad_f
    } else if g < f - 1e-12 {
        grad_g
    } else {
        grad_f
            .iter()
            .zip(&grad_g)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &mut [f64]) {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - 1.0) / (i as f64 + 1.0);
        if u - t > 0.0 {
            theta = t;
        }
    }
    let mut total = 0.0;
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
        total += *x;
    }
    // Guard against accumulated rounding.
    if total > 0.0 {
        for x in v.iter_mut() {
            *x /= total;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gdof::wcurve;

    #[test]
    fn shift_apply_examples() {
        assert_eq!(shift_apply(0b11, 0, 2).unwrap(), 0b11);
        assert_eq!(shift_apply(0b11, 2, 2).unwrap(), 0);
        assert_eq!(shift_apply(0b11, 1, 2).unwrap(), 0b01);
        assert!(shift_apply(4, 0, 2).is_err());
        assert!(shift_apply(1, 3, 2).is_err());
    }

    #[test]
    fn pmf_entropy_examples() {
        assert_eq!(pmf_entropy(&BitvecPmf::point_mass(2, 3).unwrap()), 0.0);
        assert_eq!(pmf_entropy(&BitvecPmf::uniform(3)), 3.0);
        let p = BitvecPmf::new(vec![0.5, 0.0, 0.5, 0.0]).unwrap();
        assert_eq!(pmf_entropy(&p), 1.0);
    }

    #[test]
    fn pmf_validation() {
        assert!(BitvecPmf::new(vec![0.5, 0.5, 0.1]).is_err());
        assert!(BitvecPmf::new(vec![0.6, 0.6, -0.1, -0.1]).is_err());
        assert!(BitvecPmf::new(vec![0.3, 0.3, 0.3, 0.0]).is_err());
    }

    #[test]
    fn region_hand_computed_xor_table() {
        // ns = ni = 2: all shifts are the identity. X1 uniform on {2, 3},
        // X2 uniform on {1, 3}: Y2 covers all four values, so R1 <= 1,
        // R2 <= 1, sum <= 2, all exactly.
        let ch = LdaChannel::symmetric(2, 2);
        let p1 = BitvecPmf::new(vec![0.0, 0.0, 0.5, 0.5]).unwrap();
        let p2 = BitvecPmf::new(vec![0.0, 0.5, 0.0, 0.5]).unwrap();
        let r = lda_region(&ch, &p1, &p2).unwrap();
        assert_eq!(r.bound(1, 0).unwrap(), 1.0);
        assert_eq!(r.bound(0, 1).unwrap(), 1.0);
        assert_eq!(r.bound(1, 1).unwrap(), 2.0);
        assert_eq!(r.max_sum_rate() / 4.0, wcurve(1.0));
    }

    #[test]
    fn uniform_inputs_collapse_the_oblivious_rate() {
        // ns = 3, ni = 4: fair-coin inputs leave nothing for user 2 and a
        // normalized sum rate of 1/2.
        let ch = LdaChannel::symmetric(3, 4);
        let p = BitvecPmf::uniform(4);
        let r = lda_region(&ch, &p, &p).unwrap();
        assert_eq!(r.bound(1, 0).unwrap(), 3.0);
        assert_eq!(r.bound(0, 1).unwrap(), 0.0);
        assert_eq!(lda_uniform_normalized_sumrate(&ch).unwrap(), 0.5);
    }

    #[test]
    fn point_mass_silences_a_user() {
        let ch = LdaChannel::symmetric(2, 1);
        let point = BitvecPmf::point_mass(2, 0).unwrap();
        let other = BitvecPmf::uniform(2);
        let r = lda_region(&ch, &point, &other).unwrap();
        assert_eq!(r.bound(1, 0).unwrap(), 0.0);
        let r = lda_region(&ch, &other, &point).unwrap();
        assert_eq!(r.bound(0, 1).unwrap(), 0.0);
    }

    #[test]
    fn interference_free_channel_is_unconstrained() {
        let ch = LdaChannel::symmetric(3, 0);
        assert_eq!(lda_uniform_normalized_sumrate(&ch).unwrap(), 1.0);
        assert!(lda_uniform_normalized_sumrate(&LdaChannel::symmetric(0, 0)).is_err());
    }

    #[test]
    fn reference_inputs_certify_the_wcurve() {
        for (ch, p1, p2) in known_optimal_inputs() {
            let r = lda_region(&ch, &p1, &p2).unwrap();
            let normalized = r.max_sum_rate() / (2.0 * ch.n11() as f64);
            // Dyadic pmfs make every entropy exact, so this equality holds
            // with zero tolerance.
            assert_eq!(normalized, wcurve(ch.alpha()), "channel {ch:?}");
        }
    }

    #[test]
    fn region_soundness_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let ns = 1 + (rng.random::<u32>() % 3);
            let ni = rng.random::<u32>() % 4;
            let ch = LdaChannel::symmetric(ns, ni.max(1));
            let len = 1usize << ch.q();
            let p1 = BitvecPmf::new(random_simplex(&mut rng, len)).unwrap();
            let p2 = BitvecPmf::new(random_simplex(&mut rng, len)).unwrap();
            let r = lda_region(&ch, &p1, &p2).unwrap();
            assert!(r.bound(1, 0).unwrap() >= -1e-12);
            assert!(r.bound(0, 1).unwrap() >= -1e-12);
            assert!(r.bound(1, 1).unwrap() >= -1e-12);
            assert!(r.bound(1, 0).unwrap() <= ch.n11() as f64 + 1e-12);
            assert!(r.bound(0, 1).unwrap() <= ch.n22() as f64 + 1e-12);
        }
    }

    #[test]
    fn optimizer_guards() {
        let ch = LdaChannel::symmetric(7, 3);
        assert!(matches!(
            lda_max_sumrate(&ch, &OptimizerConfig::default()),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn optimizer_is_deterministic() {
        let ch = LdaChannel::symmetric(2, 1);
        let cfg = OptimizerConfig {
            restarts: 8,
            ..OptimizerConfig::default()
        };
        let (v1, p1a, p2a) = lda_max_sumrate(&ch, &cfg).unwrap();
        let (v2, p1b, p2b) = lda_max_sumrate(&ch, &cfg).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(p1a, p1b);
        assert_eq!(p2a, p2b);
    }

    #[test]
    fn optimizer_never_beats_the_wcurve() {
        // The full-knowledge normalized sum capacity dominates everything the
        // oblivious-receiver region can reach.
        let cfg = OptimizerConfig {
            restarts: 16,
            ..OptimizerConfig::default()
        };
        for (ns, ni) in [(2, 1), (3, 2), (2, 2), (3, 4), (1, 2), (2, 3), (3, 1)] {
            let ch = LdaChannel::symmetric(ns, ni);
            let (v, _, _) = lda_max_sumrate(&ch, &cfg).unwrap();
            let normalized = v / (2.0 * ns as f64);
            assert!(
                normalized <= wcurve(ch.alpha()) + 1e-9,
                "({ns},{ni}): {normalized} beats the wcurve {}",
                wcurve(ch.alpha())
            );
        }
    }

    #[test]
    fn optimizer_reaches_the_certified_value_on_a_small_channel() {
        let ch = LdaChannel::symmetric(2, 1);
        let (v, p1, p2) = lda_max_sumrate(&ch, &OptimizerConfig::default()).unwrap();
        assert!(v >= 2.0 - 1e-3, "v={v}");
        // The returned pmfs must actually achieve the value they claim.
        let r = lda_region(&ch, &p1, &p2).unwrap();
        assert!((r.max_sum_rate() - v).abs() < 1e-9);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_pmf(len: usize) -> impl Strategy<Value = Vec<f64>> {
            proptest::collection::vec(0.01..1.0f64, len).prop_map(|mut v| {
                let total: f64 = v.iter().sum();
                for x in &mut v {
                    *x /= total;
                }
                v
            })
        }

        proptest! {
            // The shift/convolution pipeline must agree with brute-force
            // enumeration of the channel law over all input pairs.
            #[test]
            fn output_pmfs_match_brute_force(
                p1 in arb_pmf(8),
                p2 in arb_pmf(8),
                ns in 1u32..=3,
                ni in 0u32..=3,
            ) {
                let ch = LdaChannel::new(ns, ni, ni, ns);
                let q = ch.q();
                let len = 1usize << q;
                let p1 = &p1[..len.min(8)];
                let p2 = &p2[..len.min(8)];
                // Renormalize the truncated slices.
                let s1: f64 = p1.iter().sum();
                let s2: f64 = p2.iter().sum();
                let p1: Vec<f64> = p1.iter().map(|x| x / s1).collect();
                let p2: Vec<f64> = p2.iter().map(|x| x / s2).collect();

                let ev = evaluate(&ch, &p1, &p2);

                let mut y1 = vec![0.0; len];
                let mut y2 = vec![0.0; len];
                for x1 in 0..len {
                    for x2 in 0..len {
                        let w = p1[x1] * p2[x2];
                        y1[(x1 >> (q - ns)) ^ (x2 >> (q - ni))] += w;
                        y2[(x1 >> (q - ni)) ^ (x2 >> (q - ns))] += w;
                    }
                }
                for i in 0..len {
                    prop_assert!((y1[i] - ev.y1[i]).abs() < 1e-12);
                    prop_assert!((y2[i] - ev.y2[i]).abs() < 1e-12);
                }
            }

            // Entropy accounting: every bound is within its level budget.
            #[test]
            fn bounds_respect_level_budgets(p1 in arb_pmf(8), p2 in arb_pmf(8), ni in 0u32..=3) {
                let ch = LdaChannel::new(3, ni, ni, 3);
                let b = lda_bounds(&ch, &p1, &p2);
                prop_assert!(b.b1 >= -1e-12 && b.b1 <= 3.0 + 1e-12);
                prop_assert!(b.b2 >= -1e-12 && b.b2 <= 3.0 + 1e-12);
                prop_assert!(b.b12 >= -1e-12);
            }
        }
    }
}
