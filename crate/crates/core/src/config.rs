//! Flat `key = value` settings file. Every key is optional; command-line
//! flags override whatever is set here. The API key is never read from
//! this file, only from the environment.
//!
//! ```toml
//! endpoint = "https://api.openai.com/v1/chat/completions"
//! model_id = "gpt-4-0125-preview"
//! temperature = 0.0
//! retries = 3
//! timeout_secs = 120
//! expansion_budget = 5000000
//! max_depth = 64
//! bench_repetitions = 5
//! ```

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;
use thiserror::Error;

use crate::cta::LiveConfig;

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub endpoint: Option<String>,
    pub model_id: Option<String>,
    pub temperature: Option<f64>,
    pub retries: Option<u32>,
    pub timeout_secs: Option<u64>,
    pub expansion_budget: Option<u64>,
    pub max_depth: Option<u32>,
    pub bench_repetitions: Option<u32>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: toml::de::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let s = Self::parse(&text).map_err(|source| ConfigError::Parse {
            path: path.to_path_buf(),
            source,
        })?;
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<(), ConfigError> {
        if let Some(t) = self.temperature {
            if !(0.0..=2.0).contains(&t) {
                return Err(ConfigError::Invalid(format!("temperature {t} outside 0..=2")));
            }
        }
        if self.max_depth == Some(0) {
            return Err(ConfigError::Invalid("max_depth must be positive".into()));
        }
        Ok(())
    }

    /// Live transport settings: defaults, then this file, then the
    /// environment for the key.
    pub fn live_config(&self) -> LiveConfig {
        let mut c = LiveConfig::from_env();
        if let Some(e) = &self.endpoint {
            c.endpoint = e.clone();
        }
        if let Some(m) = &self.model_id {
            c.model_id = m.clone();
        }
        if let Some(t) = self.temperature {
            c.temperature = t;
        }
        if let Some(r) = self.retries {
            c.retries = r;
        }
        if let Some(s) = self.timeout_secs {
            c.timeout = Duration::from_secs(s);
        }
        c
    }
}
