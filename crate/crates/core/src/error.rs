use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature did not reach the requested tolerance; carries the
    /// achieved error estimate in bits.
    #[error("quadrature did not converge: achieved {achieved:.3e} bits, requested {requested:.3e} bits")]
    Quadrature { achieved: f64, requested: f64 },

    /// The problem size exceeds what the implementation supports.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// A measured gap exceeded its analytic bound during a scan.
    #[error("gap bound exceeded at snr={snr:.6e}, alpha={alpha}: {gap:.6} > {bound:.6} bits")]
    GapExceeded {
        snr: f64,
        alpha: f64,
        gap: f64,
        bound: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
