//! Shared test utilities: a seeded Monte-Carlo differential-entropy
//! estimator, independent of the quadrature code it is used to validate.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Monte-Carlo estimate of the differential entropy (bits) of an
/// equal-variance Gaussian mixture, with the standard error of the mean.
/// Density evaluation is written out here rather than calling the library.
pub fn mc_mixture_entropy(
    means: &[f64],
    weights: &[f64],
    sigma: f64,
    samples: usize,
    seed: u64,
) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ln2 = std::f64::consts::LN_2;
    let norm = (sigma * (2.0 * std::f64::consts::PI).sqrt()).ln();
    let inv2s2 = 0.5 / (sigma * sigma);

    let log_density = |y: f64| -> f64 {
        let mut amax = f64::NEG_INFINITY;
        for m in means {
            let a = -(y - m) * (y - m) * inv2s2;
            if a > amax {
                amax = a;
            }
        }
        let mut acc = 0.0;
        for (m, w) in means.iter().zip(weights) {
            let a = -(y - m) * (y - m) * inv2s2;
            acc += w * (a - amax).exp();
        }
        amax + acc.ln() - norm
    };

    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..samples {
        // Draw the component from the weights, then Box-Muller for the noise.
        let u: f64 = rng.random();
        let mut cum = 0.0;
        let mut mean = *means.last().unwrap();
        for (m, w) in means.iter().zip(weights) {
            cum += w;
            if u < cum {
                mean = *m;
                break;
            }
        }
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        let z = (-2.0 * (1.0 - u1).ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        let y = mean + sigma * z;
        let x = -log_density(y) / ln2;
        sum += x;
        sumsq += x * x;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sumsq - sum * sum / n) / (n - 1.0);
    (mean, (var / n).sqrt())
}
