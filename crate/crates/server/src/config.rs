//! TOML configuration: listen address plus engine defaults.
//!
//! ```toml
//! [server]
//! port = 8080
//!
//! [view]
//! step_percent = 20
//!
//! [relevance]
//! damping = 0.85
//! kce_weights = [0.5, 0.3, 0.2]
//! ```

use std::path::{Path, PathBuf};

use ontoview_core::engine::EngineConfig;
use serde::{Deserialize, Serialize};

/// Names the config file when `--config` is not given.
pub const CONFIG_ENV: &str = "ONTOVIEW_CONFIG";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid configuration {path}: {source}")]
    Toml {
        path: PathBuf,
        source: toml::de::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ListenConfig {
    pub host: String,
    pub port: u16,
    /// Largest accepted request body in bytes.
    pub max_body_bytes: usize,
}

impl Default for ListenConfig {
    fn default() -> Self {
        ListenConfig {
            host: "127.0.0.1".into(),
            port: 8080,
            max_body_bytes: 64 << 20,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub server: ListenConfig,
    #[serde(flatten)]
    pub engine: EngineConfig,
}

impl Config {
    pub fn parse(text: &str, path: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Toml {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// Reads `explicit`, else the file named by `ONTOVIEW_CONFIG`, else
    /// returns the defaults.
    pub fn load(explicit: Option<&Path>) -> Result<Self, ConfigError> {
        match explicit {
            Some(p) => Self::from_file(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
                _ => Ok(Config::default()),
            },
        }
    }
}
