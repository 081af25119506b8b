//! `key=value` configuration files.
//!
//! ```text
//! # comments and blank lines are ignored
//! cap = 50000
//! threads = 4
//! cache_bytes = 67108864
//! ```
//!
//! Precedence, lowest first: built-in defaults, the file, `PG_CAP`, flags.

use pg_core::cache::DEFAULT_CACHE_BYTES;
use pg_core::DEFAULT_CAP;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key {key:?} given twice")]
    Duplicate { line: usize, key: String },
    #[error("{origin}: invalid value {value:?} for {key} (expected a positive integer)")]
    BadValue { origin: String, key: String, value: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

/// Resolved settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub cap: usize,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
    pub cache_bytes: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { cap: DEFAULT_CAP, threads: None, cache_bytes: DEFAULT_CACHE_BYTES }
    }
}

/// Settings from one source; unset keys fall through to lower layers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layer {
    pub cap: Option<usize>,
    pub threads: Option<usize>,
    pub cache_bytes: Option<usize>,
}

fn positive(origin: &str, key: &str, value: &str) -> Result<usize, ConfigError> {
    match value.trim().parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(ConfigError::BadValue { origin: origin.into(), key: key.into(), value: value.into() }),
    }
}

pub fn parse(text: &str) -> Result<Layer, ConfigError> {
    let mut layer = Layer::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let key = key.trim();
        let slot = match key {
            "cap" => &mut layer.cap,
            "threads" => &mut layer.threads,
            "cache_bytes" => &mut layer.cache_bytes,
            "" => return Err(ConfigError::Syntax { line }),
            _ => return Err(ConfigError::UnknownKey { line, key: key.into() }),
        };
        if slot.is_some() {
            return Err(ConfigError::Duplicate { line, key: key.into() });
        }
        *slot = Some(positive(&format!("line {line}"), key, value)?);
    }
    Ok(layer)
}

pub fn load(path: &str) -> Result<Layer, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.into(), msg: e.to_string() })?;
    parse(&text)
}

impl Config {
    /// Applies `file`, then the `PG_CAP` value, then `flags` over the defaults.
    pub fn resolve(file: Option<&Layer>, env_cap: Option<&str>, flags: &Layer) -> Result<Config, ConfigError> {
        let mut c = Config::default();
        let mut apply = |l: &Layer| {
            c.cap = l.cap.unwrap_or(c.cap);
            c.threads = l.threads.or(c.threads);
            c.cache_bytes = l.cache_bytes.unwrap_or(c.cache_bytes);
        };
        if let Some(f) = file {
            apply(f);
        }
        if let Some(v) = env_cap {
            apply(&Layer { cap: Some(positive("PG_CAP", "cap", v)?), ..Layer::default() });
        }
        apply(flags);
        Ok(c)
    }
}
