//! `key=value` config files and their merge with command-line flags.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use micropolar::Moduli;

use crate::args::ModuliArgs;
use crate::error::CliError;

/// Values from an optional config file. Keys use the long flag spelling;
/// underscores are accepted for dashes.
#[derive(Debug, Default)]
pub struct Settings {
    file: BTreeMap<String, String>,
    source: Option<PathBuf>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl Settings {
    pub fn load(path: Option<&Path>, known: &[&str]) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Settings::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::file(path, e))?;
        let mut file = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("{}:{}: expected key=value", path.display(), n + 1)))?;
            let key = normalize(k);
            if !known.contains(&key.as_str()) {
                return Err(CliError::usage(format!(
                    "{}:{}: unknown key {key:?} for this command",
                    path.display(),
                    n + 1
                )));
            }
            file.insert(key, v.trim().to_string());
        }
        Ok(Settings {
            file,
            source: Some(path.to_path_buf()),
        })
    }

    fn file_value<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e| {
                CliError::usage(format!(
                    "{}: bad value {v:?} for {key}: {e}",
                    self.source.as_deref().unwrap_or(Path::new("config")).display()
                ))
            }),
        }
    }

    /// Flag, else config file, else nothing.
    pub fn opt<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.file_value(key),
        }
    }

    pub fn get<T: FromStr>(&self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError>
    where
        T::Err: Display,
    {
        Ok(self.opt(key, flag)?.unwrap_or(default))
    }

    /// Positive finite number.
    pub fn positive(&self, key: &str, flag: Option<f64>, default: f64) -> Result<f64, CliError> {
        let v = self.get(key, flag, default)?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(CliError::usage(format!("{key} must be positive, got {v}")))
        }
    }

    pub fn path(&self, key: &str, flag: Option<&PathBuf>) -> Option<PathBuf> {
        flag.cloned().or_else(|| self.file.get(key).map(PathBuf::from))
    }

    pub fn choice<E: ValueEnum>(&self, key: &str, flag: Option<E>) -> Result<Option<E>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => E::from_str(v, true)
                .map(Some)
                .map_err(|e| CliError::usage(format!("bad value {v:?} for {key}: {e}"))),
        }
    }

    pub fn string(&self, key: &str, flag: Option<&String>) -> Option<String> {
        flag.cloned().or_else(|| self.file.get(key).cloned())
    }

    /// Exactly one of (λ1, λ2) and (c1, c2, c3), or `None` if neither is
    /// present.
    pub fn moduli(&self, m: &ModuliArgs) -> Result<Option<Moduli<f64>>, CliError> {
        let l1 = self.opt("lambda1", m.lambda1)?;
        let l2 = self.opt("lambda2", m.lambda2)?;
        let c = [self.opt("c1", m.c1)?, self.opt("c2", m.c2)?, self.opt("c3", m.c3)?];
        let any_lambda = l1.is_some() || l2.is_some();
        let any_c = c.iter().any(Option::is_some);
        match (any_lambda, any_c) {
            (false, false) => Ok(None),
            (true, true) => Err(CliError::usage("give either lambda1/lambda2 or c1/c2/c3, not both")),
            (true, false) => match (l1, l2) {
                (Some(a), Some(b)) => Ok(Some(Moduli::from_couplings(a, b)?)),
                _ => Err(CliError::usage("lambda1 and lambda2 must be given together")),
            },
            (false, true) => match c {
                [Some(a), Some(b), Some(d)] => Ok(Some(Moduli::from_elastic(a, b, d)?)),
                _ => Err(CliError::usage("c1, c2 and c3 must be given together")),
            },
        }
    }

    pub fn require_moduli(&self, m: &ModuliArgs) -> Result<Moduli<f64>, CliError> {
        self.moduli(m)?
            .ok_or_else(|| CliError::usage("moduli required: give lambda1 and lambda2, or c1, c2 and c3"))
    }
}

pub const MODULI_KEYS: [&str; 5] = ["lambda1", "lambda2", "c1", "c2", "c3"];
pub const SHOOTING_KEYS: [&str; 4] = ["slope0", "rmax", "tol", "dr"];
