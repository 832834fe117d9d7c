//! Serialized report shapes. Rationals travel as `"p/q"` strings with a
//! parallel fixed-digit decimal rendered half-to-even.

use hbar_lpt::rational::{parse_rational, to_decimal, to_string};
use hbar_lpt::{EnergySeries, LaurentTable, QuantumState, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub i: usize,
    pub rational: String,
    pub decimal: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub potential: String,
    pub kind: String,
    pub coefficients: Vec<Coefficient>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub k: usize,
    pub rational: String,
    pub decimal: String,
}

impl Term {
    pub fn new(k: usize, value: &Rational, digits: usize) -> Self {
        Self {
            k,
            rational: to_string(value),
            decimal: to_decimal(value, digits),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateEnergies {
    pub n: u32,
    pub l: u32,
    #[serde(rename = "N")]
    pub multiplicity: u32,
    pub energies: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergiesReport {
    pub potential: String,
    pub mass: String,
    pub order: usize,
    pub decimal_digits: usize,
    pub states: Vec<StateEnergies>,
}

impl EnergiesReport {
    pub fn build(
        mass: &Rational,
        results: &[(EnergySeries, Option<LaurentTable>)],
        digits: usize,
    ) -> Self {
        let potential = results.first().map(|(s, _)| s.label().to_string()).unwrap_or_default();
        let order = results.first().map_or(0, |(s, _)| s.order());
        let states = results
            .iter()
            .map(|(series, table)| {
                let st = series.state();
                StateEnergies {
                    n: st.n(),
                    l: st.l(),
                    multiplicity: st.multiplicity(),
                    energies: series
                        .values()
                        .iter()
                        .enumerate()
                        .map(|(k, e)| Term::new(k, e, digits))
                        .collect(),
                    table: table
                        .as_ref()
                        .map(|t| t.rows().iter().map(|row| row.iter().map(to_string).collect()).collect()),
                }
            })
            .collect();
        Self {
            potential,
            mass: to_string(mass),
            order,
            decimal_digits: digits,
            states,
        }
    }

    /// Rebuilds the exact series (and tables, when present) from the report.
    pub fn parse(&self) -> Result<(Rational, Vec<(EnergySeries, Option<LaurentTable>)>), CliError> {
        let bad = |e: hbar_lpt::Error| CliError::Config(e.to_string());
        let mass = parse_rational(&self.mass).map_err(bad)?;
        let mut out = Vec::with_capacity(self.states.len());
        for st in &self.states {
            let values = st
                .energies
                .iter()
                .map(|t| parse_rational(&t.rational))
                .collect::<Result<Vec<_>, _>>()
                .map_err(bad)?;
            let series = EnergySeries::new(values, QuantumState::new(st.n, st.l), self.potential.clone())
                .map_err(bad)?;
            let table = st
                .table
                .as_ref()
                .map(|rows| {
                    let grid = rows
                        .iter()
                        .map(|row| row.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    LaurentTable::from_rows(grid)
                })
                .transpose()
                .map_err(bad)?;
            out.push((series, table));
        }
        Ok((mass, out))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PadeEntry {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub rational: Option<String>,
    pub decimal: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ratio {
    pub k: usize,
    /// `|E_{k+1}/E_k|`, `null` when either term is zero.
    pub ratio: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub ratios: Vec<Ratio>,
    pub zero_terms: Vec<usize>,
    pub smallest_term: Option<usize>,
    pub divergent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSum {
    pub n: u32,
    pub l: u32,
    #[serde(rename = "N")]
    pub multiplicity: u32,
    pub partial_sums: Vec<Term>,
    pub pade: Vec<PadeEntry>,
    pub diagnostics: DiagnosticsReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<StateValidation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumReport {
    pub potential: String,
    pub order: usize,
    pub states: Vec<StateSum>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationStatus {
    Ok,
    ExceedsTol,
    Unavailable,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateValidation {
    pub n: u32,
    pub l: u32,
    pub method: String,
    pub estimate: Option<String>,
    pub estimate_rational: Option<String>,
    pub oracle: Option<String>,
    pub abs_dev: Option<String>,
    pub rel_dev: Option<String>,
    pub status: ValidationStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub potential: String,
    pub order: usize,
    pub tol: f64,
    pub states: Vec<StateValidation>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn float(x: f64, digits: usize) -> String {
    format!("{x:.digits$}")
}

pub fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

/// Minimal CSV writer; fields never contain separators or quotes.
#[derive(Debug, Default)]
pub struct Csv(String);

impl Csv {
    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for f in fields {
            if !first {
                self.0.push(',');
            }
            self.0.push_str(f.as_ref());
            first = false;
        }
        self.0.push('\n');
    }

    pub fn blank(&mut self) {
        self.0.push('\n');
    }

    pub fn finish(self) -> String {
        self.0
    }
}

pub fn num_den(value: &Rational) -> (String, String) {
    (value.numer().to_string(), value.denom().to_string())
}
