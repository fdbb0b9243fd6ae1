//! Run configuration: defaults, JSON config file, flag overrides (flags win).

use serde::{Deserialize, Serialize};

use crate::{Cli, CliError};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub seed: u64,
    pub gh_nodes: usize,
    pub restarts: usize,
    pub quad_tol: f64,
    pub gap_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            gh_nodes: 96,
            restarts: 64,
            quad_tol: 1e-8,
            gap_tol: 1e-3,
        }
    }
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let mut cfg = match &cli.config {
            None => RunConfig::default(),
            Some(path) => {
                let raw = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                serde_json::from_str(&raw).map_err(|e| {
                    CliError::Usage(format!("invalid config {}: {e}", path.display()))
                })?
            }
        };
        if let Some(seed) = cli.seed {
            cfg.seed = seed;
        }
        if let Some(nodes) = cli.gh_nodes {
            cfg.gh_nodes = nodes;
        }
        if let Some(restarts) = cli.restarts {
            cfg.restarts = restarts;
        }
        if let Some(tol) = cli.quad_tol {
            cfg.quad_tol = tol;
        }
        if let Some(tol) = cli.gap_tol {
            cfg.gap_tol = tol;
        }
        Ok(cfg)
    }

    pub fn quad(&self) -> icor_core::QuadConfig {
        icor_core::QuadConfig {
            gh_nodes: self.gh_nodes,
            tol_bits: self.quad_tol,
        }
    }

    pub fn optimizer(&self) -> icor_core::OptimizerConfig {
        icor_core::OptimizerConfig {
            restarts: self.restarts,
            seed: self.seed,
            ..icor_core::OptimizerConfig::default()
        }
    }

    pub fn scan(&self) -> icor_core::gap::ScanConfig {
        icor_core::gap::ScanConfig {
            tol_bits: self.gap_tol,
        }
    }

    /// FNV-1a hash of the serialized effective config, recorded in every CSV
    /// comment line so outputs are traceable to their settings.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let mut h: u64 = 0xcbf29ce484222325;
        for b in json.as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }

    /// The `# tool version, config hash` comment line carried by every CSV.
    pub fn stamp(&self) -> String {
        format!("# icor {} config={}", env!("CARGO_PKG_VERSION"), self.hash())
    }
}
