//! Option layering: command-line flag, then config file, then environment,
//! then built-in default.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use toml::{Table, Value};

use crate::args::{BoundarySide, Format, GlobalArgs, Spacing};
use crate::error::CliError;

pub const PRECISION_ENV: &str = "FIVEVERTEX_PRECISION";
pub const BUDGET_ENV: &str = "FIVEVERTEX_BUDGET";

pub const DEFAULT_PRECISION: usize = fivevertex::verify::convergence::DEFAULT_PRECISION_BITS;
pub const MIN_PRECISION: usize = 64;

/// Keys accepted in a config file.
const KNOWN_KEYS: [&str; 24] = [
    "format", "output", "precision", "budget", "N", "M", "L", "x", "delta", "alpha", "no-loggas", "lambda", "mu",
    "x-start", "x-stop", "count", "spacing", "points", "contour", "radius", "boundary-side", "suite", "max-n", "sizes",
];

/// Conversion from a TOML value; `None` on a type mismatch.
pub trait FromToml: Sized {
    fn from_toml(value: &Value) -> Option<Self>;
}

impl FromToml for f64 {
    fn from_toml(value: &Value) -> Option<Self> {
        match value {
            Value::Float(v) => Some(*v),
            Value::Integer(v) => Some(*v as f64),
            _ => None,
        }
    }
}

macro_rules! integer_from_toml {
    ($($t:ty),*) => {$(
        impl FromToml for $t {
            fn from_toml(value: &Value) -> Option<Self> {
                value.as_integer().and_then(|v| <$t>::try_from(v).ok())
            }
        }
    )*};
}
integer_from_toml!(u64, usize, u128);

impl FromToml for bool {
    fn from_toml(value: &Value) -> Option<Self> {
        value.as_bool()
    }
}

impl FromToml for String {
    fn from_toml(value: &Value) -> Option<Self> {
        match value {
            Value::String(s) => Some(s.clone()),
            Value::Integer(v) => Some(v.to_string()),
            Value::Float(v) => Some(v.to_string()),
            _ => None,
        }
    }
}

impl FromToml for PathBuf {
    fn from_toml(value: &Value) -> Option<Self> {
        value.as_str().map(PathBuf::from)
    }
}

/// Arrays element-wise; a scalar is a one-element list.
impl<T: FromToml> FromToml for Vec<T> {
    fn from_toml(value: &Value) -> Option<Self> {
        match value {
            Value::Array(items) => items.iter().map(T::from_toml).collect(),
            other => T::from_toml(other).map(|v| vec![v]),
        }
    }
}

macro_rules! enum_from_toml {
    ($($t:ty),*) => {$(
        impl FromToml for $t {
            fn from_toml(value: &Value) -> Option<Self> {
                value.as_str().and_then(|s| <$t as ValueEnum>::from_str(s, false).ok())
            }
        }
    )*};
}
enum_from_toml!(Format, Spacing, BoundarySide);

/// Resolved global options plus the config table for command options.
#[derive(Debug)]
pub struct Settings {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub precision: usize,
    pub budget: u128,
    config: Table,
}

fn load_config(path: &Path) -> Result<Table, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config file {}: {e}", path.display())))?;
    let table: Table = text
        .parse()
        .map_err(|e| CliError::usage(format!("invalid config file {}: {e}", path.display())))?;
    if let Some(key) = table.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(CliError::usage(format!(
            "unknown key '{key}' in config file {}; known keys: {}",
            path.display(),
            KNOWN_KEYS.join(", ")
        )));
    }
    Ok(table)
}

fn from_env<T: std::str::FromStr>(name: &str) -> Result<Option<T>, CliError> {
    match std::env::var(name) {
        Ok(text) => text
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::usage(format!("cannot parse {name}='{text}'"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::usage(format!("{name}: {e}"))),
    }
}

impl Settings {
    pub fn resolve(global: &GlobalArgs) -> Result<Self, CliError> {
        let config = match &global.config {
            Some(path) => load_config(path)?,
            None => Table::new(),
        };
        let mut settings = Self { format: Format::Csv, output: None, precision: DEFAULT_PRECISION, budget: 0, config };
        settings.format = settings.pick(global.format, "format")?.unwrap_or_default();
        settings.output = settings.pick(global.output.clone(), "output")?;
        settings.precision = match settings.pick(global.precision, "precision")? {
            Some(p) => p,
            None => from_env(PRECISION_ENV)?.unwrap_or(DEFAULT_PRECISION),
        };
        if settings.precision < MIN_PRECISION {
            return Err(CliError::usage(format!(
                "precision must be at least {MIN_PRECISION} bits, got {}",
                settings.precision
            )));
        }
        settings.budget = match settings.pick(global.budget, "budget")? {
            Some(b) => b,
            None => from_env(BUDGET_ENV)?.unwrap_or(fivevertex::exact::DEFAULT_WORK_BUDGET),
        };
        Ok(settings)
    }

    /// The flag if given, otherwise the config entry under `key`.
    pub fn pick<T: FromToml>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.config
            .get(key)
            .map(|v| T::from_toml(v).ok_or_else(|| CliError::usage(format!("config key '{key}' has the wrong type"))))
            .transpose()
    }

    /// Like [`Settings::pick`] but the value must come from somewhere.
    pub fn require<T: FromToml>(&self, flag: Option<T>, key: &str) -> Result<T, CliError> {
        self.pick(flag, key)?
            .ok_or_else(|| CliError::usage(format!("missing --{key} (flag or config key)")))
    }

    /// A boolean switch: set on the command line or `true` in the config.
    pub fn switch(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        Ok(flag || self.pick(None, key)?.unwrap_or(false))
    }

    pub fn sink(&self) -> Result<Box<dyn Write>, CliError> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).map_err(|e| CliError::io(format!("cannot create {}", path.display()), e))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}
