//! Run configuration: defaults, a flat key=value file, the
//! STOKESFORGE_PRECISION variable and command-line flags, in increasing
//! order of priority.

use std::fmt;
use std::path::{Path, PathBuf};

use rug::Rational;
use stokesforge::models::ModelId;

pub const DEFAULT_PRECISION: u32 = 50;
pub const DEFAULT_ORDER: usize = 20;
pub const PRECISION_ENV: &str = "STOKESFORGE_PRECISION";

#[derive(Debug, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AMode {
    Symbolic,
    Preferred,
    Value(Rational),
}

impl AMode {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s.trim() {
            "symbolic" => Ok(AMode::Symbolic),
            "preferred" => Ok(AMode::Preferred),
            v => v.parse::<Rational>().map(AMode::Value).map_err(|_| ConfigError(format!("a must be symbolic, preferred or a rational, got `{v}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub models: Vec<ModelId>,
    pub precision: u32,
    pub series_order: usize,
    /// Decimal strings, parsed per command.
    pub z_samples: Vec<String>,
    pub output_dir: PathBuf,
    pub a_mode: AMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            models: ModelId::ALL.to_vec(),
            precision: DEFAULT_PRECISION,
            series_order: DEFAULT_ORDER,
            z_samples: Vec::new(),
            output_dir: PathBuf::from("stokesforge-out"),
            a_mode: AMode::Symbolic,
        }
    }
}

/// Values given on the command line; `None` leaves the lower layers alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub model: Option<String>,
    pub precision: Option<u32>,
    pub series_order: Option<usize>,
    pub z_samples: Option<String>,
    pub output_dir: Option<PathBuf>,
    pub a: Option<String>,
}

pub fn parse_models(s: &str) -> Result<Vec<ModelId>, ConfigError> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(ModelId::ALL.to_vec());
    }
    ModelId::parse(s.trim()).map(|m| vec![m]).map_err(|e| ConfigError(e.to_string()))
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.trim().parse().map_err(|_| ConfigError(format!("{key}: not a number: `{v}`")))
}

fn split_samples(v: &str) -> Vec<String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

impl RunConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "model" => self.models = parse_models(value)?,
            "precision" | "precision_digits" => self.precision = parse_num(key, value)?,
            "series_order" => self.series_order = parse_num(key, value)?,
            "z_samples" => self.z_samples = split_samples(value),
            "output_dir" => self.output_dir = PathBuf::from(value.trim()),
            "a" | "a_mode" => self.a_mode = AMode::parse(value)?,
            _ => return Err(ConfigError(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError(format!("line {}: expected key=value", i + 1)))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn load(file: Option<&Path>, env_precision: Option<&str>, o: &Overrides) -> Result<Self, ConfigError> {
        let mut c = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
            c.apply_text(&text)?;
        }
        if let Some(v) = env_precision {
            c.precision = parse_num(PRECISION_ENV, v)?;
        }
        if let Some(m) = &o.model {
            c.models = parse_models(m)?;
        }
        if let Some(p) = o.precision {
            c.precision = p;
        }
        if let Some(n) = o.series_order {
            c.series_order = n;
        }
        if let Some(z) = &o.z_samples {
            c.z_samples = split_samples(z);
        }
        if let Some(d) = &o.output_dir {
            c.output_dir = d.clone();
        }
        if let Some(a) = &o.a {
            c.a_mode = AMode::parse(a)?;
        }
        if c.series_order < 10 {
            return Err(ConfigError(format!("series_order must be at least 10, got {}", c.series_order)));
        }
        Ok(c)
    }

    /// Matching and continuation need at least 30 digits.
    pub fn require_matching_precision(&self) -> Result<(), ConfigError> {
        if self.precision < 30 {
            return Err(ConfigError(format!("precision must be at least 30 digits, got {}", self.precision)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layering() {
        let dir = std::env::temp_dir().join(format!("sf-config-{}", std::process::id()));
        std::fs::write(&dir, "# run\nmodel = Y6\nprecision = 80\nz_samples = 1.5, 2\na = 3/2\n").unwrap();
        let c = RunConfig::load(Some(&dir), None, &Overrides::default()).unwrap();
        assert_eq!(c.models, vec![ModelId::Y6]);
        assert_eq!(c.precision, 80);
        assert_eq!(c.z_samples, vec!["1.5", "2"]);
        assert_eq!(c.a_mode, AMode::Value(Rational::from((3, 2))));
        let env = RunConfig::load(Some(&dir), Some("90"), &Overrides::default()).unwrap();
        assert_eq!(env.precision, 90);
        let flags = Overrides { precision: Some(40), model: Some("all".into()), ..Default::default() };
        let c = RunConfig::load(Some(&dir), Some("90"), &flags).unwrap();
        assert_eq!((c.precision, c.models.len()), (40, 4));
        std::fs::remove_file(dir).unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let mut c = RunConfig::default();
        assert!(c.apply_text("colour = blue").is_err());
        assert!(c.apply_text("precision").is_err());
        assert!(c.apply_text("model = Y7").is_err());
        let o = Overrides { series_order: Some(5), ..Default::default() };
        assert!(RunConfig::load(None, None, &o).is_err());
        let low = RunConfig { precision: 20, ..Default::default() };
        assert!(low.require_matching_precision().is_err());
    }
}
