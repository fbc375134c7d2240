//! Run configuration: a plain key=value file, environment overrides, and
//! command-line flags layered in that order.

use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("io error reading config: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad config line {line}: {msg}")]
    BadLine { line: usize, msg: String },
}

/// Tool-level settings. Defaults are safe for a small laptop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub threads: usize,
    /// conjugation-orbit cap for exact class labels
    pub orbit_cap: usize,
    /// element-search group-order guard
    pub order_cap: u128,
    /// directory of group data files (also via MFORGE_DATA_DIR)
    pub data_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threads: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            orbit_cap: 1_000_000,
            order_cap: 200_000_000,
            data_dir: None,
        }
    }
}

impl RunConfig {
    /// Reads a `key = value` file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        let text = std::fs::read_to_string(path)?;
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::BadLine {
                line: idx + 1,
                msg: "expected key = value".into(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |msg: &str| ConfigError::BadLine {
                line: idx + 1,
                msg: msg.to_string(),
            };
            match key {
                "threads" => cfg.threads = value.parse().map_err(|_| bad("bad thread count"))?,
                "orbit-cap" => cfg.orbit_cap = value.parse().map_err(|_| bad("bad orbit cap"))?,
                "order-cap" => cfg.order_cap = value.parse().map_err(|_| bad("bad order cap"))?,
                "data-dir" => cfg.data_dir = Some(PathBuf::from(value)),
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    /// Applies the environment override for the data directory.
    pub fn with_env(mut self) -> RunConfig {
        if let Ok(dir) = std::env::var("MFORGE_DATA_DIR") {
            if !dir.is_empty() {
                self.data_dir = Some(PathBuf::from(dir));
            }
        }
        self
    }
}

/// Loads an atlas entry, preferring a group data file from the data
/// directory when one exists.
pub fn load_or_build_entry(
    label: &str,
    data_dir: Option<&Path>,
) -> Result<crate::atlas::AtlasEntry, crate::atlas::AtlasError> {
    if let Some(dir) = data_dir {
        let candidate = dir.join(format!("{label}.grp"));
        if candidate.is_file() {
            return crate::atlas::load_group_file(&candidate);
        }
    }
    crate::atlas::build_entry(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_file() {
        let dir = std::env::temp_dir().join("mforge-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("mforge.conf");
        std::fs::write(
            &path,
            "# comment\nthreads = 3\norbit-cap=500\norder-cap = 1000000\ndata-dir = /tmp/xyz\n",
        )
        .unwrap();
        let cfg = RunConfig::from_file(&path).unwrap();
        assert_eq!(cfg.threads, 3);
        assert_eq!(cfg.orbit_cap, 500);
        assert_eq!(cfg.order_cap, 1_000_000);
        assert_eq!(cfg.data_dir, Some(PathBuf::from("/tmp/xyz")));
    }

    #[test]
    fn rejects_unknown_keys() {
        let dir = std::env::temp_dir().join("mforge-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.conf");
        std::fs::write(&path, "shoes = 2\n").unwrap();
        assert!(matches!(
            RunConfig::from_file(&path),
            Err(ConfigError::BadLine { line: 1, .. })
        ));
    }
}
