//! Length budgets for the star router and its gadgets. The numbers live in
//! `constants.toml`; `FS_CONSTANTS` points at a replacement file.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUILT_IN: &str = include_str!("../constants.toml");

/// Each budget is the constant times a power of n: rotations `c_rot*n^2`,
/// transport `c_tt*n^2`, transpositions `c_et*n^3`, three-cycles
/// `c_3c*n^2`, double transpositions `c_dt*n^3`, star routing `k_star*n^4`
/// and exchange routing `k_dense*n^6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    pub c_rot: u64,
    pub c_tt: u64,
    pub c_et: u64,
    pub c_3c: u64,
    pub c_dt: u64,
    pub k_star: u64,
    pub k_dense: u64,
}

impl Constants {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("constants: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain integers serialize")
    }

    pub fn built_in() -> Self {
        Constants::parse(BUILT_IN).expect("shipped constants parse")
    }

    /// `FS_CONSTANTS` if set, else the shipped file.
    pub fn load() -> Result<Self> {
        match std::env::var_os("FS_CONSTANTS") {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.to_string_lossy())))?;
                Constants::parse(&text)
            }
            None => Ok(Constants::built_in()),
        }
    }

    /// Loaded once per process; a broken override falls back to the
    /// shipped numbers.
    pub fn get() -> &'static Constants {
        static LOADED: OnceLock<Constants> = OnceLock::new();
        LOADED.get_or_init(|| Constants::load().unwrap_or_else(|_| Constants::built_in()))
    }

    pub fn star_budget(&self, n: usize) -> u64 {
        self.k_star.saturating_mul((n as u64).pow(4))
    }

    pub fn rotation_budget(&self, n: usize) -> u64 {
        self.c_rot * (n as u64).pow(2)
    }

    pub fn transport_budget(&self, n: usize) -> u64 {
        self.c_tt * (n as u64).pow(2)
    }

    pub fn transposition_budget(&self, n: usize) -> u64 {
        self.c_et * (n as u64).pow(3)
    }

    pub fn three_cycle_budget(&self, n: usize) -> u64 {
        self.c_3c * (n as u64).pow(2)
    }

    pub fn double_transposition_budget(&self, n: usize) -> u64 {
        self.c_dt * (n as u64).pow(3)
    }

    pub fn dense_budget(&self, n: usize) -> u64 {
        self.k_dense.saturating_mul((n as u64).saturating_pow(6))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_round_trips() {
        let c = Constants::built_in();
        assert_eq!(Constants::parse(&c.to_toml()).unwrap(), c);
        assert_eq!(c.star_budget(2), 16 * c.k_star);
    }
}
