//! Scalar bound functions and channel parameterizations shared by the rest of
//! the crate.
//!
//! `ig` is the Gaussian-input rate of a point-to-point AWGN link, `id` the
//! firm lower bound on the rate achievable by an equally likely, unit-energy,
//! equally spaced discrete input with a given number of points, and `nd` the
//! largest constellation size whose saturation rate does not exceed the link
//! capacity. Everything is in bits per channel use with base-2 logarithms.

use std::f64::consts::{E, LOG2_E, PI};

use crate::{Error, Result};

/// Largest `x` accepted by [`nd`]; keeps the constellation size inside `u32`.
const ND_MAX_ARG: f64 = 4.0e18;

#[inline]
fn ensure_nonneg(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "{what} requires a finite nonnegative argument, got {x}"
        )));
    }
    Ok(())
}

/// `0.5 * log2(1 + x)`: rate of a Gaussian input over an AWGN link at SNR `x`.
pub fn ig(x: f64) -> Result<f64> {
    ensure_nonneg(x, "ig")?;
    Ok(igf(x))
}

/// Rate lower bound for an `n`-point uniform PAM input at SNR `x`:
/// `[ig(min(n^2 - 1, x)) - shaping_loss()]^+`.
pub fn id(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("id requires n >= 1".into()));
    }
    ensure_nonneg(x, "id")?;
    Ok(idf(n, x))
}

/// Constellation-size rule `floor(sqrt(1 + x))`.
pub fn nd(x: f64) -> Result<u32> {
    ensure_nonneg(x, "nd")?;
    if x > ND_MAX_ARG {
        return Err(Error::Domain(format!("nd argument {x} too large")));
    }
    Ok(ndf(x))
}

/// The rate penalty of a one-dimensional lattice input relative to a Gaussian
/// input: `0.5 * log2(pi * e / 3)`, about 0.7546 bits.
pub fn shaping_loss() -> f64 {
    0.5 * (PI * E / 3.0).log2()
}

#[inline]
pub(crate) fn igf(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "igf argument must be nonnegative, got {x}");
    // log1p keeps full precision near x = 0 and never overflows for any
    // representable x.
    0.5 * x.ln_1p() * LOG2_E
}

#[inline]
pub(crate) fn idf(n: u32, x: f64) -> f64 {
    debug_assert!(n >= 1);
    let cap = (n as f64) * (n as f64) - 1.0;
    (igf(cap.min(x)) - shaping_loss()).max(0.0)
}

#[inline]
pub(crate) fn ndf(x: f64) -> u32 {
    debug_assert!(x >= 0.0);
    let y = 1.0 + x;
    let mut n = y.sqrt().floor() as u64;
    // Fix up floating error at perfect squares.
    while ((n + 1) as f64) * ((n + 1) as f64) <= y {
        n += 1;
    }
    while n > 1 && (n as f64) * (n as f64) > y {
        n -= 1;
    }
    n.max(1) as u32
}

/// Real channel coefficients of the two-user Gaussian channel. The squared
/// gains are the SNR/INR quantities used by the region constructors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    pub h11: f64,
    pub h12: f64,
    pub h21: f64,
    pub h22: f64,
}

impl ChannelGains {
    pub fn new(h11: f64, h12: f64, h21: f64, h22: f64) -> Result<Self> {
        for (name, h) in [("h11", h11), ("h12", h12), ("h21", h21), ("h22", h22)] {
            if !h.is_finite() {
                return Err(Error::Domain(format!("channel gain {name} must be finite")));
            }
        }
        Ok(Self { h11, h12, h21, h22 })
    }

    /// Gains of the symmetric channel: direct links `sqrt(snr)`, cross links
    /// `sqrt(inr)`.
    pub fn symmetric(sym: &SymmetricChannel) -> Self {
        let d = sym.snr().sqrt();
        let c = sym.inr().sqrt();
        Self {
            h11: d,
            h12: c,
            h21: c,
            h22: d,
        }
    }
}

/// Symmetric channel parameterized by `(snr, alpha)` with `inr = snr^alpha`.
/// The INR is always derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricChannel {
    snr: f64,
    alpha: f64,
}

impl SymmetricChannel {
    pub fn new(snr: f64, alpha: f64) -> Result<Self> {
        if !snr.is_finite() || snr < 0.0 {
            return Err(Error::Domain(format!("snr must be finite and >= 0, got {snr}")));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::Domain(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        Ok(Self { snr, alpha })
    }

    pub fn snr(&self) -> f64 {
        self.snr
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn inr(&self) -> f64 {
        self.snr.powf(self.alpha)
    }
}
