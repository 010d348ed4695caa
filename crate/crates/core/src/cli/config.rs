use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::eigen::{DEFAULT_EIGEN_TOL, DEFAULT_PAIRING_TOL};
use crate::expr::{Expr, ParamEnv, ParseError};
use crate::grid::Grid;
use crate::model::PotentialSpec;
use crate::verify::{Identity, Tolerances};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {source}")]
    Expr {
        field: &'static str,
        #[source]
        source: ParseError,
    },
    #[error("field `{field}`: unbound parameter(s) {}", names.join(", "))]
    Unbound {
        field: &'static str,
        names: Vec<String>,
    },
    #[error("field `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
    #[error("unknown identity `{0}`; expected one of anti_pseudo, pseudo, pt_symmetry, eta_hermiticity, corollary1, commutator_tau")]
    UnknownIdentity(String),
    #[error("csv output is only available for the spectrum command")]
    CsvNeedsSpectrum,
}

fn default_mass() -> f64 {
    0.5
}

fn default_vector() -> String {
    "0".into()
}

/// Optional per-run overrides of the default thresholds.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub exact: Option<f64>,
    pub discretization: Option<f64>,
    pub parity: Option<f64>,
    pub eigen: Option<f64>,
    pub pairing: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceConfig {
    pub grid_points: Vec<usize>,
    pub identity: String,
}

/// The JSON configuration document.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(rename = "potential_V")]
    pub potential_v: String,
    #[serde(rename = "potential_A", default = "default_vector")]
    pub potential_a: String,
    #[serde(default = "default_mass")]
    pub mass: f64,
    pub half_width: f64,
    pub grid_points: usize,
    /// Complex values as `[re, im]`.
    #[serde(default)]
    pub params: BTreeMap<String, [f64; 2]>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    #[serde(default)]
    pub convergence: Option<ConvergenceConfig>,
}

/// Effective thresholds for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunTolerances {
    pub verify: Tolerances,
    pub eigen: f64,
    pub pairing: f64,
}

/// A checked configuration, ready to build from.
#[derive(Debug, Clone)]
pub struct Setup {
    pub config: Config,
    pub spec: PotentialSpec,
    pub grid: Grid,
    pub tolerances: RunTolerances,
}

fn positive(field: &'static str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::Invalid {
            field,
            message: format!("must be a positive finite number, got {v}"),
        })
    }
}

pub(crate) fn check_grid_points(field: &'static str, n: usize) -> Result<(), ConfigError> {
    if n < 5 || n % 2 == 0 {
        return Err(ConfigError::Invalid {
            field,
            message: format!("must be an odd integer >= 5, got {n}"),
        });
    }
    Ok(())
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Config::from_json(&text)
    }

    pub fn params(&self) -> ParamEnv {
        self.params
            .iter()
            .map(|(k, [re, im])| (k.clone(), Complex64::new(*re, *im)))
            .collect()
    }

    pub fn tolerances(&self) -> Result<RunTolerances, ConfigError> {
        let base = Tolerances::default();
        let o = &self.tolerances;
        let pick = |field, v: Option<f64>, default| v.map_or(Ok(default), |v| positive(field, v));
        Ok(RunTolerances {
            verify: Tolerances {
                exact: pick("tolerances.exact", o.exact, base.exact)?,
                discretization: pick("tolerances.discretization", o.discretization, base.discretization)?,
                parity: pick("tolerances.parity", o.parity, base.parity)?,
            },
            eigen: pick("tolerances.eigen", o.eigen, DEFAULT_EIGEN_TOL)?,
            pairing: pick("tolerances.pairing", o.pairing, DEFAULT_PAIRING_TOL)?,
        })
    }

    /// Parses the expressions and checks every field.
    pub fn setup(self) -> Result<Setup, ConfigError> {
        let scalar = Expr::parse(&self.potential_v).map_err(|source| ConfigError::Expr {
            field: "potential_V",
            source,
        })?;
        let vector = Expr::parse(&self.potential_a).map_err(|source| ConfigError::Expr {
            field: "potential_A",
            source,
        })?;
        positive("mass", self.mass)?;
        positive("half_width", self.half_width)?;
        check_grid_points("grid_points", self.grid_points)?;
        for (name, [re, im]) in &self.params {
            if !(re.is_finite() && im.is_finite()) {
                return Err(ConfigError::Invalid {
                    field: "params",
                    message: format!("`{name}` is not finite"),
                });
            }
        }
        let params = self.params();
        for (field, expr) in [("potential_V", &scalar), ("potential_A", &vector)] {
            let names = params.unbound(expr);
            if !names.is_empty() {
                return Err(ConfigError::Unbound { field, names });
            }
        }
        let grid = Grid::new(self.half_width, self.grid_points).map_err(|e| ConfigError::Invalid {
            field: "grid_points",
            message: e.to_string(),
        })?;
        let tolerances = self.tolerances()?;
        Ok(Setup {
            spec: PotentialSpec {
                scalar,
                vector,
                mass: self.mass,
                params,
            },
            grid,
            tolerances,
            config: self,
        })
    }
}

pub fn parse_identity(name: &str) -> Result<Identity, ConfigError> {
    Identity::from_name(name).ok_or_else(|| ConfigError::UnknownIdentity(name.to_owned()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = Config::from_json(r#"{"potential_V": "x^2", "half_width": 5, "grid_points": 11}"#).unwrap();
        assert_eq!(c.mass, 0.5);
        assert_eq!(c.potential_a, "0");
        let s = c.setup().unwrap();
        assert_eq!(s.grid.len(), 11);
        assert_eq!(s.tolerances.pairing, DEFAULT_PAIRING_TOL);
    }

    #[test]
    fn errors_name_the_field() {
        let msg = |json: &str| match Config::from_json(json).and_then(Config::setup) {
            Err(e) => e.to_string(),
            Ok(_) => panic!("accepted {json}"),
        };
        assert!(msg(r#"{"potential_V": "x^2", "grid_points": 11}"#).contains("half_width"));
        assert!(msg(r#"{"potential_V": "x^2", "half_width": 5, "grid_points": 11, "colour": 1}"#).contains("colour"));
        assert!(msg(r#"{"potential_V": "2x", "half_width": 5, "grid_points": 11}"#).contains("potential_V"));
        assert!(msg(r#"{"potential_V": "x", "potential_A": "g*x", "half_width": 5, "grid_points": 11}"#)
            .contains("potential_A"));
        assert!(msg(r#"{"potential_V": "x", "half_width": 5, "grid_points": 10}"#).contains("grid_points"));
        assert!(msg(r#"{"potential_V": "x", "half_width": -1, "grid_points": 11}"#).contains("half_width"));
        assert!(msg(r#"{"potential_V": "x", "half_width": 1, "grid_points": 11, "tolerances": {"exact": 0}}"#)
            .contains("tolerances.exact"));
    }

    #[test]
    fn params_are_complex_pairs() {
        let c = Config::from_json(
            r#"{"potential_V": "x^2", "potential_A": "g*x", "half_width": 6, "grid_points": 31, "params": {"g": [0, 1]}}"#,
        )
        .unwrap();
        assert_eq!(c.params().get("g"), Some(Complex64::new(0.0, 1.0)));
        assert!(c.setup().is_ok());
    }
}
