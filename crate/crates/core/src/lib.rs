//! Numerical toolkit for the two-user interference channel in which one
//! receiver does not know the interfering transmitter's codebook.
//!
//! The crate computes and cross-verifies:
//!
//! * closed-form inner (achievable) and outer rate regions for the real
//!   Gaussian channel, with discrete (PAM), Gaussian, and mixed inputs
//!   ([`regions`]);
//! * quadrature-grade mutual information and differential entropy for the
//!   same inputs, used to validate the closed forms ([`gauss_mi`]);
//! * generalized-degrees-of-freedom regions at high SNR ([`gdof`]);
//! * the exact capacity region of the linear deterministic channel model,
//!   including a sum-rate optimizer over input distributions ([`lda`]);
//! * the constant-gap program: regime classification, constellation-size
//!   selection, inner-bound assembly, and gap measurement against the
//!   classical outer bound ([`gap`]).
//!
//! All rates are in bits per channel use, all logarithms are base 2, and all
//! SNR/INR quantities are linear (never dB) inside the library.
//!
//! ```
//! use icor_core::SymmetricChannel;
//! use icor_core::gap::inner_assembly;
//! use icor_core::regions::{etw_outer, gap_between};
//!
//! // Moderately weak interference: the achievable region tracks the
//! // full-knowledge outer bound to within the analytic constant.
//! let sym = SymmetricChannel::new(1e4, 0.75)?;
//! let gap = gap_between(&etw_outer(&sym), &inner_assembly(&sym));
//! assert!(gap < 3.05);
//! # Ok::<(), icor_core::Error>(())
//! ```

pub mod core_math;
pub mod gap;
pub mod gauss_mi;
pub mod gdof;
pub mod lda;
pub mod regions;

mod error;
mod quad;

pub use core_math::{ChannelGains, SymmetricChannel};
pub use error::{Error, Result};
pub use gauss_mi::{GaussianMixture1D, QuadConfig};
pub use gdof::GdofRegion;
pub use lda::{BitvecPmf, LdaChannel, OptimizerConfig};
pub use regions::{Constraint, RatePair, RateRegion};
