//! Flat `key = value` configuration, its command-line mirror and sweep
//! specifications.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::model::{thresholds_from_rates, Geometry, NetworkConfig, RateThresholds};
use crate::numerics::QuadratureSpec;
use crate::simulator::SimConfig;

use super::CliError;

/// Quantity a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Eavesdropper distance.
    U,
    /// Common threshold μ = σ = γ.
    Gamma,
    /// Receiver threshold with σ held fixed.
    Mu,
    /// Eavesdropper threshold with μ held fixed.
    Sigma,
    /// Secrecy rate in bits with R_t held fixed.
    Rs,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::U => "u",
            SweepVariable::Gamma => "gamma",
            SweepVariable::Mu => "mu",
            SweepVariable::Sigma => "sigma",
            SweepVariable::Rs => "rs",
        }
    }

    pub fn is_rate(self) -> bool {
        self != SweepVariable::U
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVariable {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "u" => Ok(SweepVariable::U),
            "gamma" => Ok(SweepVariable::Gamma),
            "mu" => Ok(SweepVariable::Mu),
            "sigma" => Ok(SweepVariable::Sigma),
            "rs" => Ok(SweepVariable::Rs),
            other => Err(CliError::Config(format!(
                "unknown sweep variable '{other}', expected u, gamma, mu, sigma or rs"
            ))),
        }
    }
}

/// Spacing of sweep points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "linear" | "lin" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            other => Err(CliError::Config(format!(
                "unknown scale '{other}', expected linear or log"
            ))),
        }
    }
}

/// A one-dimensional grid over a sweep variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, lo: f64, hi: f64, points: usize, scale: Scale) -> Result<Self, CliError> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(CliError::Config(format!(
                "sweep needs finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        if points < 2 {
            return Err(CliError::Config(format!("sweep needs at least 2 points, got {points}")));
        }
        if scale == Scale::Log && lo <= 0.0 {
            return Err(CliError::Config(format!("log sweep needs lo > 0, got {lo}")));
        }
        Ok(Self {
            variable,
            lo,
            hi,
            points,
            scale,
        })
    }

    /// Grid values from `lo` to `hi` inclusive.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / last;
                match (i, self.scale) {
                    (0, _) => self.lo,
                    (i, _) if i == self.points - 1 => self.hi,
                    (_, Scale::Linear) => self.lo + t * (self.hi - self.lo),
                    (_, Scale::Log) => 10f64.powf(self.lo.log10() + t * (self.hi.log10() - self.lo.log10())),
                }
            })
            .collect()
    }
}

/// Every configurable value, each optional so that layers can be merged:
/// built-in defaults, then a figure preset, then a config file, then flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub geometry: Option<Geometry>,
    pub lambda: Option<f64>,
    pub eta: Option<f64>,
    pub d0: Option<f64>,
    pub u: Option<f64>,
    pub rt: Option<f64>,
    pub rs: Option<f64>,
    pub mu: Option<f64>,
    pub sigma: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub truncation_radius: Option<f64>,
    pub antithetic: Option<bool>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub sweep: Option<SweepVariable>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub points: Option<usize>,
    pub scale: Option<Scale>,
}

/// Keys accepted in configuration files.
pub const CONFIG_KEYS: [&str; 21] = [
    "geometry",
    "lambda",
    "eta",
    "d0",
    "u",
    "rt",
    "rs",
    "mu",
    "sigma",
    "seed",
    "samples",
    "truncation_radius",
    "antithetic",
    "abs_tol",
    "rel_tol",
    "max_subdivisions",
    "sweep",
    "lo",
    "hi",
    "points",
    "scale",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value '{}' for key '{key}'", value.trim())))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value.trim() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(CliError::Config(format!("invalid boolean '{other}' for key '{key}'"))),
    }
}

impl Settings {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim();
        match key {
            "geometry" => {
                self.geometry = Some(
                    value
                        .parse()
                        .map_err(|e: crate::Error| CliError::Config(e.to_string()))?,
                )
            }
            "lambda" => self.lambda = Some(parse(key, value)?),
            "eta" => self.eta = Some(parse(key, value)?),
            "d0" => self.d0 = Some(parse(key, value)?),
            "u" => self.u = Some(parse(key, value)?),
            "rt" => self.rt = Some(parse(key, value)?),
            "rs" => self.rs = Some(parse(key, value)?),
            "mu" => self.mu = Some(parse(key, value)?),
            "sigma" => self.sigma = Some(parse(key, value)?),
            "seed" => self.seed = Some(parse(key, value)?),
            "samples" => self.samples = Some(parse(key, value)?),
            "truncation_radius" => self.truncation_radius = Some(parse(key, value)?),
            "antithetic" => self.antithetic = Some(parse_bool(key, value)?),
            "abs_tol" => self.abs_tol = Some(parse(key, value)?),
            "rel_tol" => self.rel_tol = Some(parse(key, value)?),
            "max_subdivisions" => self.max_subdivisions = Some(parse(key, value)?),
            "sweep" => self.sweep = Some(value.parse()?),
            "lo" => self.lo = Some(parse(key, value)?),
            "hi" => self.hi = Some(parse(key, value)?),
            "points" => self.points = Some(parse(key, value)?),
            "scale" => self.scale = Some(value.parse()?),
            other => {
                return Err(CliError::Config(format!(
                    "unknown key '{other}'; accepted keys: {}",
                    CONFIG_KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Parses `key = value` lines; blank lines and lines starting with `#`
    /// are ignored, and a trailing `# comment` is stripped.
    pub fn parse_config(text: &str) -> Result<Self, CliError> {
        let mut settings = Settings::default();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected 'key = value', got '{line}'", number + 1))
            })?;
            settings
                .set(key, value)
                .map_err(|e| CliError::Config(format!("line {}: {e}", number + 1)))?;
        }
        Ok(settings)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse_config(&text)
    }

    /// Values of `other` take precedence over those of `self`.
    pub fn overlay(self, other: &Settings) -> Settings {
        macro_rules! pick {
            ($($field:ident),*) => {
                Settings { $($field: other.$field.or(self.$field)),* }
            };
        }
        pick!(
            geometry,
            lambda,
            eta,
            d0,
            u,
            rt,
            rs,
            mu,
            sigma,
            seed,
            samples,
            truncation_radius,
            antithetic,
            abs_tol,
            rel_tol,
            max_subdivisions,
            sweep,
            lo,
            hi,
            points,
            scale
        )
    }

    pub fn network(&self) -> Result<NetworkConfig, CliError> {
        Ok(NetworkConfig::new(
            self.geometry.unwrap_or(Geometry::Corner),
            self.lambda.unwrap_or(0.2),
            self.eta.unwrap_or(4.0),
            self.d0.unwrap_or(1.0),
            self.u.unwrap_or(1.0),
        )?)
    }

    /// Thresholds from `rt`/`rs` (defaults 1 and 0 bits), with `mu` and
    /// `sigma` overriding the derived SIR levels when given.
    pub fn rates(&self) -> Result<RateThresholds, CliError> {
        let base = thresholds_from_rates(self.rt.unwrap_or(1.0), self.rs.unwrap_or(0.0))?;
        if self.mu.is_none() && self.sigma.is_none() {
            return Ok(base);
        }
        Ok(RateThresholds::from_sir(
            self.mu.unwrap_or(base.mu),
            self.sigma.unwrap_or(base.sigma),
        )?)
    }

    pub fn quadrature(&self) -> Result<QuadratureSpec, CliError> {
        let d = QuadratureSpec::default();
        Ok(QuadratureSpec::new(
            self.abs_tol.unwrap_or(d.abs_tol),
            self.rel_tol.unwrap_or(d.rel_tol),
            self.max_subdivisions.unwrap_or(d.max_subdivisions),
        )?)
    }

    pub fn simulation(&self, cfg: &NetworkConfig) -> Result<SimConfig, CliError> {
        let mut sim = SimConfig::new(cfg, self.seed.unwrap_or(1), self.samples.unwrap_or(100_000))?;
        if let Some(radius) = self.truncation_radius {
            sim = sim.with_truncation_radius(cfg, radius)?;
        }
        Ok(sim.with_antithetic(self.antithetic.unwrap_or(false)))
    }

    /// The configured sweep, or `None` when no sweep variable is set.
    pub fn sweep_spec(&self) -> Result<Option<SweepSpec>, CliError> {
        let Some(variable) = self.sweep else {
            if self.lo.is_some() || self.hi.is_some() || self.points.is_some() {
                return Err(CliError::Config("lo, hi and points need a sweep variable".into()));
            }
            return Ok(None);
        };
        let (lo, hi) = match (self.lo, self.hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(CliError::Config(format!("sweep over {variable} needs lo and hi"))),
        };
        SweepSpec::new(
            variable,
            lo,
            hi,
            self.points.unwrap_or(21),
            self.scale.unwrap_or(Scale::Linear),
        )
        .map(Some)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_config_with_comments() {
        let s = Settings::parse_config("# network\ngeometry = bulk\nlambda=0.05 # thinned\n\nu = 2\nsweep = gamma\nlo = 0.01\nhi = 100\nscale = log\n")
            .unwrap();
        assert_eq!(s.geometry, Some(Geometry::Bulk));
        assert_eq!(s.lambda, Some(0.05));
        assert_eq!(s.u, Some(2.0));
        let sweep = s.sweep_spec().unwrap().unwrap();
        assert_eq!(sweep.variable, SweepVariable::Gamma);
        assert_eq!(sweep.scale, Scale::Log);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(Settings::parse_config("lamda = 1"), Err(CliError::Config(_))));
        assert!(matches!(Settings::parse_config("eta = four"), Err(CliError::Config(_))));
        assert!(matches!(Settings::parse_config("just text"), Err(CliError::Config(_))));
    }

    #[test]
    fn overlay_prefers_the_upper_layer() {
        let base = Settings {
            lambda: Some(0.2),
            u: Some(1.0),
            ..Settings::default()
        };
        let top = Settings {
            u: Some(3.0),
            ..Settings::default()
        };
        let merged = base.overlay(&top);
        assert_eq!(merged.lambda, Some(0.2));
        assert_eq!(merged.u, Some(3.0));
    }

    #[test]
    fn sweep_grids() {
        let lin = SweepSpec::new(SweepVariable::U, 0.0, 1.0, 5, Scale::Linear)
            .unwrap()
            .values();
        assert_eq!(lin, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let log = SweepSpec::new(SweepVariable::Gamma, 0.01, 100.0, 5, Scale::Log)
            .unwrap()
            .values();
        assert!((log[2] - 1.0).abs() < 1e-12);
        assert_eq!(log[4], 100.0);
        assert!(SweepSpec::new(SweepVariable::U, 1.0, 1.0, 5, Scale::Linear).is_err());
        assert!(SweepSpec::new(SweepVariable::U, 0.0, 1.0, 1, Scale::Linear).is_err());
        assert!(SweepSpec::new(SweepVariable::Gamma, 0.0, 1.0, 3, Scale::Log).is_err());
    }

    #[test]
    fn rates_default_and_overrides() {
        let s = Settings::default();
        let r = s.rates().unwrap();
        assert_eq!((r.mu, r.sigma), (1.0, 1.0));
        let s = Settings {
            mu: Some(10.0),
            sigma: Some(3.0),
            ..Settings::default()
        };
        let r = s.rates().unwrap();
        assert_eq!((r.mu, r.sigma), (10.0, 3.0));
        let bad = Settings {
            rs: Some(2.0),
            ..Settings::default()
        };
        assert!(bad.rates().is_err());
    }
}
