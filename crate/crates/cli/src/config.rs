//! `key = value` parameter files.
//!
//! ```text
//! # hydrogen, fine-structure units
//! z = -1
//! kappa = 1
//! compton = 0.0072973525693
//! omega = 1
//! ```
//!
//! Blank lines and `#` comments are ignored. Unknown keys are rejected.

use std::fmt;
use std::str::FromStr;

use crate::error::CliError;

/// CODATA fine-structure constant: `λ̄` in Bohr-radius units.
pub const DEFAULT_COMPTON: f64 = 7.2973525693e-3;
pub const DEFAULT_OMEGA: f64 = 1.0;

/// Parameters read from a file; absent keys stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ParamFile {
    pub z: Option<f64>,
    pub kappa: Option<i32>,
    pub compton: Option<f64>,
    pub omega: Option<f64>,
}

impl FromStr for ParamFile {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let mut out = ParamFile::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| CliError::config(format!("line {}: {key} = {value:?} is not {what}", lineno + 1));
            match key {
                "z" => out.z = Some(value.parse().map_err(|_| bad("a number"))?),
                "kappa" => out.kappa = Some(value.parse().map_err(|_| bad("an integer"))?),
                "compton" => out.compton = Some(value.parse().map_err(|_| bad("a number"))?),
                "omega" => out.omega = Some(value.parse().map_err(|_| bad("a number"))?),
                other => return Err(CliError::config(format!("line {}: unknown key {other:?}", lineno + 1))),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ParamFile {
    /// Writes the keys that are set, in a fixed order. Reals use the
    /// shortest representation that parses back to the same `f64`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(z) = self.z {
            writeln!(f, "z = {z:?}")?;
        }
        if let Some(k) = self.kappa {
            writeln!(f, "kappa = {k}")?;
        }
        if let Some(c) = self.compton {
            writeln!(f, "compton = {c:?}")?;
        }
        if let Some(w) = self.omega {
            writeln!(f, "omega = {w:?}")?;
        }
        Ok(())
    }
}

impl ParamFile {
    pub fn read(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: ParamFile) -> ParamFile {
        ParamFile {
            z: over.z.or(self.z),
            kappa: over.kappa.or(self.kappa),
            compton: over.compton.or(self.compton),
            omega: over.omega.or(self.omega),
        }
    }
}
