//! Resolution of settings: command-line flag, then config file, then default.

use std::path::PathBuf;
use std::str::FromStr;

use explicit_core::config::KeyValues;
use explicit_core::dirichlet::CACHE_ENV;
use explicit_core::{Error, Result};

use crate::output::Format;
use crate::Cli;

pub const MAX_DESK_MODULUS: u64 = 200;
pub const MAX_DESK_HEIGHT: f64 = 1e3;
const DEFAULT_CACHE_DIR: &str = "zero_cache";

const KNOWN_KEYS: &[&str] = &[
    "alpha",
    "eta",
    "qmax",
    "height",
    "samples",
    "k",
    "seed",
    "cache_dir",
    "format",
    "density_leading_constant",
    "selberg_error_budget",
    "convexity_implied_constant",
    "rademacher_constant",
    "harmonic_error_constant",
    "prime_sum_ratio",
];

pub struct RunConfig {
    pub format: Format,
    pub cache_dir: PathBuf,
    pub unsafe_scale: bool,
    pub file: KeyValues,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(p) => KeyValues::load(p)?,
            None => KeyValues::default(),
        };
        if let Some(k) = file.keys().find(|k| !KNOWN_KEYS.contains(k)) {
            return Err(Error::Parse(format!("unknown config key {k:?}")));
        }
        let format = if cli.json {
            Format::Json
        } else if let Some(f) = cli.format {
            f
        } else {
            file.get_parsed::<Format>("format")?.unwrap_or(Format::Table)
        };
        let cache_dir = match &cli.cache_dir {
            Some(d) => d.clone(),
            None => match std::env::var_os(CACHE_ENV) {
                Some(d) => PathBuf::from(d),
                None => file.get("cache_dir").unwrap_or(DEFAULT_CACHE_DIR).into(),
            },
        };
        Ok(Self {
            format,
            cache_dir,
            unsafe_scale: cli.unsafe_scale,
            file,
        })
    }

    /// The flag if given, else the config entry, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        Ok(self.file.get_parsed(key)?.unwrap_or(default))
    }

    pub fn guard(&self, q: u64, height: f64) -> Result<()> {
        if self.unsafe_scale {
            return Ok(());
        }
        if q > MAX_DESK_MODULUS || height > MAX_DESK_HEIGHT {
            return Err(Error::Domain(format!(
                "q = {q}, T = {height} exceeds the desk-scale limits (q ≤ {MAX_DESK_MODULUS}, T ≤ {MAX_DESK_HEIGHT}); pass --unsafe to override"
            )));
        }
        Ok(())
    }
}
