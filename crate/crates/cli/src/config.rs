//! Job configuration: JSON file keys merged with command-line flags.
//!
//! ```json
//! {
//!   "potential": { "kind": "yukawa", "g": "1", "lambda": "1/10", "coeffs": null },
//!   "mass": "1",
//!   "states": [[0, 0], [1, 0]],
//!   "order": 6,
//!   "pade": [[3, 3]],
//!   "validate": true,
//!   "tol": 1e-8
//! }
//! ```
//!
//! Rationals are `"p/q"` or integer strings (bare JSON integers are also
//! accepted). Floats are rejected.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use hbar_lpt::rational::parse_rational;
use hbar_lpt::{PotentialKind, QuantumState, Rational, ScreenedPotentialSpec};
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

pub const DEFAULT_ORDER: usize = 6;
pub const DEFAULT_DIGITS: usize = 12;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown output format `{other}` (json|csv)")),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPotential {
    kind: Option<String>,
    g: Option<Value>,
    lambda: Option<Value>,
    coeffs: Option<Vec<Value>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    potential: Option<RawPotential>,
    mass: Option<Value>,
    states: Option<Vec<(u32, u32)>>,
    order: Option<usize>,
    pade: Option<Vec<(usize, usize)>>,
    validate: Option<bool>,
    tol: Option<f64>,
}

/// Flag values; `None` leaves the config file (or default) in place.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub config: Option<String>,
    pub kind: Option<String>,
    pub g: Option<String>,
    pub lambda: Option<String>,
    pub coeffs: Option<String>,
    pub mass: Option<String>,
    pub states: Vec<String>,
    pub order: Option<usize>,
    pub pade: Vec<String>,
    pub validate: bool,
    pub tol: Option<f64>,
    pub output: Option<OutputFormat>,
    pub digits: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub potential: ScreenedPotentialSpec,
    pub mass: Rational,
    pub states: Vec<QuantumState>,
    pub order: usize,
    pub order_given: bool,
    pub pade: Vec<(usize, usize)>,
    pub validate: bool,
    pub tol: f64,
    pub output: OutputFormat,
    pub digits: usize,
}

fn field_rational(value: &Value, field: &str) -> Result<Rational, CliError> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => {
            return Err(CliError::Config(format!(
                "field `{field}`: expected a \"p/q\" or integer string, got {other}"
            )))
        }
    };
    flag_rational(&text, field)
}

fn flag_rational(text: &str, field: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|_| {
        CliError::Config(format!(
            "field `{field}`: cannot parse `{text}` as a rational (use \"p/q\" or an integer)"
        ))
    })
}

fn parse_pair(text: &str, field: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Config(format!("field `{field}`: expected `a,b`, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn read_raw(path: &str) -> Result<RawConfig, CliError> {
    let text = fs::read_to_string(Path::new(path))
        .map_err(|e| CliError::Config(format!("cannot read config `{path}`: {e}")))?;
    parse_raw(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{path}: {msg}")),
        other => other,
    })
}

fn parse_raw(text: &str) -> Result<RawConfig, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column()))
    })
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Self::assemble(parse_raw(text)?, &Overrides::default())
    }

    pub fn resolve(flags: &Overrides) -> Result<Self, CliError> {
        let raw = match &flags.config {
            Some(path) => read_raw(path)?,
            None => RawConfig::default(),
        };
        Self::assemble(raw, flags)
    }

    fn assemble(raw: RawConfig, flags: &Overrides) -> Result<Self, CliError> {
        let pot = raw.potential.unwrap_or_default();

        let coeffs = match &flags.coeffs {
            Some(list) => Some(
                list.split(',')
                    .enumerate()
                    .map(|(i, t)| flag_rational(t, &format!("coeffs[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None => pot
                .coeffs
                .as_ref()
                .map(|list| {
                    list.iter()
                        .enumerate()
                        .map(|(i, v)| field_rational(v, &format!("potential.coeffs[{i}]")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?,
        };

        let kind_text = flags.kind.clone().or(pot.kind);
        let kind = match (&kind_text, &coeffs) {
            (Some(k), _) => PotentialKind::from_str(k)
                .map_err(|e| CliError::Config(format!("field `potential.kind`: {e}")))?,
            (None, Some(_)) => PotentialKind::Custom,
            (None, None) => {
                return Err(CliError::Config(
                    "field `potential.kind` is required (or give `potential.coeffs`)".into(),
                ))
            }
        };

        let g = match (&flags.g, &pot.g) {
            (Some(t), _) => flag_rational(t, "g")?,
            (None, Some(v)) => field_rational(v, "potential.g")?,
            (None, None) => Rational::one(),
        };
        let lambda = match (&flags.lambda, &pot.lambda) {
            (Some(t), _) => flag_rational(t, "lambda")?,
            (None, Some(v)) => field_rational(v, "potential.lambda")?,
            (None, None) => Rational::zero(),
        };

        let potential = if kind == PotentialKind::Custom {
            let coeffs = coeffs.ok_or_else(|| {
                CliError::Config("field `potential.coeffs` is required for kind `custom`".into())
            })?;
            ScreenedPotentialSpec::custom(coeffs)
        } else {
            ScreenedPotentialSpec::new(kind, g, lambda)
        }
        .map_err(|e| CliError::Config(format!("field `potential`: {e}")))?;

        let mass = match (&flags.mass, &raw.mass) {
            (Some(t), _) => flag_rational(t, "mass")?,
            (None, Some(v)) => field_rational(v, "mass")?,
            (None, None) => Rational::one(),
        };

        let states: Vec<QuantumState> = if !flags.states.is_empty() {
            flags
                .states
                .iter()
                .map(|s| {
                    parse_pair(s, "state").and_then(|(n, l)| {
                        let n = u32::try_from(n).map_err(|_| CliError::Config(format!("state `{s}` out of range")))?;
                        let l = u32::try_from(l).map_err(|_| CliError::Config(format!("state `{s}` out of range")))?;
                        Ok(QuantumState::new(n, l))
                    })
                })
                .collect::<Result<_, _>>()?
        } else {
            raw.states
                .unwrap_or_else(|| vec![(0, 0)])
                .into_iter()
                .map(|(n, l)| QuantumState::new(n, l))
                .collect()
        };
        if states.is_empty() {
            return Err(CliError::Config("field `states` must not be empty".into()));
        }

        let order_given = flags.order.is_some() || raw.order.is_some();
        let order = flags.order.or(raw.order).unwrap_or(DEFAULT_ORDER);

        let pade = if !flags.pade.is_empty() {
            flags
                .pade
                .iter()
                .map(|p| parse_pair(p, "pade"))
                .collect::<Result<_, _>>()?
        } else {
            raw.pade.unwrap_or_default()
        };

        let tol = flags.tol.or(raw.tol).unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(CliError::Config(format!("field `tol` must be positive, got {tol}")));
        }

        Ok(Self {
            potential,
            mass,
            states,
            order,
            order_given,
            pade,
            validate: flags.validate || raw.validate.unwrap_or(false),
            tol,
            output: flags.output.unwrap_or_default(),
            digits: flags.digits.unwrap_or(DEFAULT_DIGITS),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hbar_lpt::rational::frac;

    #[test]
    fn full_config() {
        let cfg = JobConfig::from_json(
            r#"{"potential":{"kind":"yukawa","g":"1","lambda":"1/10"},
                "mass":"2","states":[[0,0],[1,2]],"order":4,"pade":[[2,2]],
                "validate":true,"tol":1e-8}"#,
        )
        .unwrap();
        assert_eq!(cfg.potential.kind(), PotentialKind::Yukawa);
        assert_eq!(cfg.potential.lambda(), &frac(1, 10));
        assert_eq!(cfg.mass, frac(2, 1));
        assert_eq!(cfg.states, vec![QuantumState::new(0, 0), QuantumState::new(1, 2)]);
        assert_eq!(cfg.order, 4);
        assert_eq!(cfg.pade, vec![(2, 2)]);
        assert!(cfg.validate);
    }

    #[test]
    fn coeffs_imply_custom() {
        let cfg = JobConfig::from_json(r#"{"potential":{"coeffs":["-1","1/10", 2]}}"#).unwrap();
        assert_eq!(cfg.potential.kind(), PotentialKind::Custom);
        assert_eq!(cfg.potential.custom_coeffs().unwrap().len(), 3);
    }

    #[test]
    fn floats_are_rejected_with_field_name() {
        let err = JobConfig::from_json(r#"{"potential":{"kind":"yukawa","lambda":0.1}}"#).unwrap_err();
        assert!(err.to_string().contains("potential.lambda"), "{err}");
        let err = JobConfig::from_json(r#"{"potential":{"kind":"yukawa","lambda":"0.1"}}"#).unwrap_err();
        assert!(err.to_string().contains("potential.lambda"), "{err}");
    }

    #[test]
    fn unknown_keys_report_position() {
        let err = JobConfig::from_json("{\n  \"potential\": {\"kind\": \"coulomb\"},\n  \"oder\": 3\n}")
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3") && msg.contains("oder"), "{msg}");
    }

    #[test]
    fn missing_kind() {
        assert!(JobConfig::from_json("{}").is_err());
        assert!(JobConfig::from_json(r#"{"potential":{"kind":"custom"}}"#).is_err());
        assert!(JobConfig::from_json(r#"{"potential":{"kind":"yukawa","g":"-1"}}"#).is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let flags = Overrides {
            kind: Some("hulthen".into()),
            lambda: Some("1/3".into()),
            states: vec!["2,1".into()],
            ..Default::default()
        };
        let raw = parse_raw(r#"{"potential":{"kind":"yukawa","lambda":"1/10"},"states":[[0,0]]}"#).unwrap();
        let cfg = JobConfig::assemble(raw, &flags).unwrap();
        assert_eq!(cfg.potential.kind(), PotentialKind::Hulthen);
        assert_eq!(cfg.potential.lambda(), &frac(1, 3));
        assert_eq!(cfg.states, vec![QuantumState::new(2, 1)]);
    }
}
