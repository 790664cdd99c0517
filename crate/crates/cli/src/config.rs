use std::path::Path;

use anyhow::Context;
use serde::Deserialize;

use mrspec_core::{Error, PotentialParams};

pub const CONFIG_ENV: &str = "MRSPEC_CONFIG";

/// Keys accepted in the `MRSPEC_CONFIG` file; names mirror the command-line flags.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    #[serde(rename = "A")]
    pub a: Option<f64>,
    pub alpha: Option<f64>,
    pub b: Option<f64>,
    pub c0: Option<f64>,
    pub mu: Option<f64>,
    pub hbar: Option<f64>,
    pub hulthen_convention: Option<bool>,
    pub beta: Option<f64>,
    pub beta_prime: Option<f64>,
    pub m: Option<i32>,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub nr: Option<u32>,
    pub l: Option<f64>,
    pub tolerance: Option<f64>,
    pub mode: Option<String>,
}

impl FileConfig {
    pub fn from_env() -> anyhow::Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)),
            _ => Ok(Self::default()),
        }
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
            .with_context(|| format!("reading {CONFIG_ENV}"))?;
        let cfg = toml::from_str(&text)
            .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
            .with_context(|| format!("parsing {CONFIG_ENV}"))?;
        Ok(cfg)
    }
}

/// Potential parameters after applying flags over the config file over built-in defaults.
#[derive(Debug, Clone, Copy)]
pub struct Model {
    pub a: f64,
    pub alpha: f64,
    pub b: f64,
    pub c0: f64,
    pub mu: f64,
    pub hbar: f64,
}

impl Default for Model {
    fn default() -> Self {
        Self { a: 80.0, alpha: 1.0, b: 40.0, c0: 1.0 / 12.0, mu: 1.0, hbar: 1.0 }
    }
}

impl Model {
    pub fn params(&self) -> mrspec_core::Result<PotentialParams<f64>> {
        PotentialParams::with_units(self.a, self.alpha, self.b, self.mu, self.hbar, self.c0)
    }
}
