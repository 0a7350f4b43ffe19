//! Optional TOML configuration. Command-line flags override every key.
//!
//! ```toml
//! format = "json"
//! seed = 7
//! data_dir = "/srv/data"
//!
//! [optimizer]
//! multistart_count = 12
//! ```

use std::path::{Path, PathBuf};

use anyhow::Context;
use nwte::fit::OptimizerConfig;
use serde::Deserialize;

use crate::output::Format;

/// Environment variable naming the default data directory.
pub const DATA_DIR_VAR: &str = "NWTE_DATA_DIR";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub data_dir: Option<PathBuf>,
    pub optimizer: Option<OptimizerConfig>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Settings after merging flags, config file, environment and defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub format: Format,
    pub seed: u64,
    pub data_dir: Option<PathBuf>,
    pub optimizer: OptimizerConfig,
}

impl Settings {
    pub fn merge(
        file: FileConfig,
        format: Option<Format>,
        seed: Option<u64>,
        data_dir: Option<PathBuf>,
        env_dir: Option<PathBuf>,
    ) -> Self {
        Settings {
            format: format.or(file.format).unwrap_or(Format::Csv),
            seed: seed.or(file.seed).unwrap_or(1),
            data_dir: data_dir.or(file.data_dir).or(env_dir),
            optimizer: file.optimizer.unwrap_or_default(),
        }
    }
}
