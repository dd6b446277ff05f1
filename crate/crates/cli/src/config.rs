//! `key = value` run configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! backend = ion
//! shots = 512
//! epsilon = 0.02, -0.015, 0.01, -0.02, 0.005
//! output_pgm = fig2b.pgm
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use ptq_core::experiment::{BackendConfig, BackendKind, Grid, DEFAULT_EPSILON};
use ptq_core::pt_model::Observable;
use thiserror::Error;

pub const KEYS: &[&str] = &[
    "backend",
    "shots",
    "seed",
    "r_min",
    "r_max",
    "r_steps",
    "t_min",
    "t_max",
    "t_steps",
    "observable",
    "ions",
    "epsilon",
    "confusion_file",
    "output_csv",
    "output_pgm",
];

pub const DEFAULT_CSV: &str = "ptqsim.csv";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    /// Malformed line, unknown key or unparseable value. Line 0 denotes a
    /// command-line override.
    #[error("{}: {msg}", location(*line))]
    Parse { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Validation(String),
}

fn location(line: usize) -> String {
    if line == 0 {
        "command line".to_string()
    } else {
        format!("config line {line}")
    }
}

/// Where the readout confusion matrix comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum ConfusionSource {
    Identity,
    SyntheticDefault,
    File(PathBuf),
}

impl fmt::Display for ConfusionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfusionSource::Identity => f.write_str("identity"),
            ConfusionSource::SyntheticDefault => f.write_str("synthetic default"),
            ConfusionSource::File(p) => write!(f, "file {}", p.display()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub backend: BackendConfig,
    pub grid: Grid,
    pub observable: Observable,
    pub output_csv: PathBuf,
    pub output_pgm: Option<PathBuf>,
    pub confusion_file: Option<PathBuf>,
    /// Per-ion over-rotations were left at their synthetic defaults.
    pub epsilon_is_default: bool,
}

impl RunConfig {
    pub fn confusion_source(&self) -> ConfusionSource {
        match (&self.confusion_file, self.backend.kind) {
            (Some(p), _) => ConfusionSource::File(p.clone()),
            (None, BackendKind::Theory) => ConfusionSource::Identity,
            (None, _) => ConfusionSource::SyntheticDefault,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        parse_config("").expect("defaults are valid")
    }
}

pub fn parse_observable(s: &str) -> Option<Observable> {
    match s {
        "return_prob" | "return_probability" => Some(Observable::ReturnProbability),
        "postselected" => Some(Observable::Postselected),
        _ => None,
    }
}

pub fn observable_name(o: Observable) -> &'static str {
    match o {
        Observable::ReturnProbability => "return_prob",
        Observable::Postselected => "postselected",
    }
}

/// Parses a configuration file with no overrides.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with(text, &[])
}

/// Parses `text`, then applies `overrides` (`(key, value)` pairs, typically
/// from command-line flags) on top. Later assignments win.
pub fn parse_config_with(text: &str, overrides: &[(&str, String)]) -> Result<RunConfig, ConfigError> {
    let mut entries: Vec<(usize, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Parse { line, msg: format!("expected `key = value`, got `{content}`") });
        };
        entries.push((line, key.trim().to_string(), value.trim().to_string()));
    }
    entries.extend(overrides.iter().map(|(k, v)| (0, k.to_string(), v.clone())));

    let mut raw = Raw::default();
    for (line, key, value) in entries {
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::Parse { line, msg: format!("unknown key `{key}`") });
        }
        raw.set(line, key, value);
    }
    raw.build()
}

#[derive(Default)]
struct Raw {
    values: Vec<(usize, String, String)>,
}

impl Raw {
    fn set(&mut self, line: usize, key: String, value: String) {
        self.values.retain(|(_, k, _)| *k != key);
        self.values.push((line, key, value));
    }

    fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.values.iter().find(|(_, k, _)| k == key).map(|(l, _, v)| (*l, v.as_str()))
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse::<T>()
                .map(Some)
                .map_err(|e| ConfigError::Parse { line, msg: format!("bad value `{v}` for `{key}`: {e}") }),
        }
    }

    fn path(&self, key: &str) -> Result<Option<PathBuf>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((_, "")) => Err(ConfigError::Validation(format!("`{key}` must not be empty"))),
            Some((_, v)) => Ok(Some(PathBuf::from(v))),
        }
    }

    /// Integer that must be at least 1; negative and zero values are
    /// validation errors rather than parse errors.
    fn positive(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        match self.parsed::<i128>(key)? {
            None => Ok(None),
            Some(v) if v >= 1 && v <= i128::from(u64::MAX) => Ok(Some(v as u64)),
            Some(v) => Err(ConfigError::Validation(format!("`{key}` must be a positive integer, got {v}"))),
        }
    }

    fn build(self) -> Result<RunConfig, ConfigError> {
        let kind = match self.get("backend") {
            None => BackendKind::Theory,
            Some((_, v)) => v.parse::<BackendKind>().map_err(|_| {
                ConfigError::Validation(format!("backend must be theory, ion or transmon, got `{v}`"))
            })?,
        };
        let mut backend = BackendConfig::for_kind(kind);
        if let Some(shots) = self.positive("shots")? {
            backend.shots = shots;
        }
        if let Some(seed) = self.parsed::<u64>("seed")? {
            backend.seed = seed;
        }
        if let Some(ions) = self.positive("ions")? {
            backend.ion_count = usize::try_from(ions).map_err(|_| ConfigError::Validation("too many ions".into()))?;
        }
        let epsilon_is_default = self.get("epsilon").is_none();
        backend.epsilon = match self.get("epsilon") {
            Some((line, v)) => v
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| ConfigError::Parse { line, msg: format!("bad epsilon entry `{}`: {e}", s.trim()) })
                })
                .collect::<Result<_, _>>()?,
            None if kind == BackendKind::Ion => {
                DEFAULT_EPSILON.iter().copied().cycle().take(backend.ion_count).collect()
            }
            None => vec![0.0; backend.ion_count],
        };

        let defaults = Grid::default();
        let grid = Grid {
            r_min: self.parsed("r_min")?.unwrap_or(defaults.r_min),
            r_max: self.parsed("r_max")?.unwrap_or(defaults.r_max),
            r_steps: self.positive("r_steps")?.map_or(defaults.r_steps, |v| v as usize),
            t_min: self.parsed("t_min")?.unwrap_or(defaults.t_min),
            t_max: self.parsed("t_max")?.unwrap_or(defaults.t_max),
            t_steps: self.positive("t_steps")?.map_or(defaults.t_steps, |v| v as usize),
        };
        grid.validate().map_err(|e| ConfigError::Validation(e.to_string()))?;

        let observable = match self.get("observable") {
            None => Observable::default(),
            Some((_, v)) => parse_observable(v).ok_or_else(|| {
                ConfigError::Validation(format!("observable must be return_prob or postselected, got `{v}`"))
            })?,
        };

        if kind == BackendKind::Ion {
            backend.validate().map_err(|e| ConfigError::Validation(e.to_string()))?;
        } else if let Some(e) = backend.epsilon.iter().find(|e| e.is_nan() || e.abs() >= 0.5) {
            return Err(ConfigError::Validation(format!("epsilon {e} must satisfy |epsilon| < 0.5")));
        }

        Ok(RunConfig {
            backend,
            grid,
            observable,
            output_csv: self.path("output_csv")?.unwrap_or_else(|| PathBuf::from(DEFAULT_CSV)),
            output_pgm: self.path("output_pgm")?,
            confusion_file: self.path("confusion_file")?,
            epsilon_is_default,
        })
    }
}
