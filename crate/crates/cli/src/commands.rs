use hbar_lpt::rational::{to_decimal, to_f64, to_string};
use hbar_lpt::{
    diagnostics, expand, pade, partial_sums, solve, taylor_coefficients, EnergySeries,
    LaurentTable, PotentialSeries, RadialGrid, Rational,
};
use rayon::prelude::*;

use crate::config::{JobConfig, OutputFormat, DEFAULT_ORDER};
use crate::output::{
    float, num_den, sci, to_json, Coefficient, Csv, DiagnosticsReport, EnergiesReport, PadeEntry,
    Ratio, SeriesReport, StateSum, StateValidation, SumReport, Term, ValidationReport,
    ValidationStatus,
};
use crate::CliError;

/// Tolerance handed to the eigensolver; `--tol` only gates the comparison.
pub const ORACLE_TOL: f64 = 1e-10;

pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, exit_code: 0 }
    }
}

fn computation(e: hbar_lpt::Error) -> CliError {
    CliError::Computation(e.to_string())
}

fn potential_series(cfg: &JobConfig) -> Result<PotentialSeries, CliError> {
    PotentialSeries::from_spec(&cfg.potential, cfg.mass.clone(), cfg.order).map_err(computation)
}

fn run_states(cfg: &JobConfig) -> Result<Vec<(EnergySeries, LaurentTable)>, CliError> {
    let pot = potential_series(cfg)?;
    cfg.states
        .par_iter()
        .map(|&st| expand(&pot, st, cfg.order).map_err(computation))
        .collect()
}

pub fn cmd_series(cfg: &JobConfig, count: Option<usize>) -> Result<Outcome, CliError> {
    let count = match (count, cfg.potential.custom_coeffs()) {
        (Some(c), _) => c,
        (None, _) if cfg.order_given => cfg.order,
        (None, Some(c)) => c.len() - 1,
        (None, None) => DEFAULT_ORDER,
    };
    let coeffs = taylor_coefficients(&cfg.potential, count).map_err(computation)?;
    let out = match cfg.output {
        OutputFormat::Json => to_json(&SeriesReport {
            potential: cfg.potential.label(),
            kind: cfg.potential.kind().name().to_string(),
            coefficients: coeffs
                .iter()
                .enumerate()
                .map(|(i, v)| Coefficient {
                    i,
                    rational: to_string(v),
                    decimal: to_decimal(v, cfg.digits),
                })
                .collect(),
        }),
        OutputFormat::Csv => {
            let mut csv = Csv::default();
            csv.row(["i", "numerator", "denominator", "decimal"]);
            for (i, v) in coeffs.iter().enumerate() {
                let (n, d) = num_den(v);
                csv.row([i.to_string(), n, d, to_decimal(v, cfg.digits)]);
            }
            csv.finish()
        }
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_energies(cfg: &JobConfig, with_table: bool) -> Result<Outcome, CliError> {
    let results: Vec<(EnergySeries, Option<LaurentTable>)> = run_states(cfg)?
        .into_iter()
        .map(|(e, t)| (e, with_table.then_some(t)))
        .collect();
    let out = match cfg.output {
        OutputFormat::Json => to_json(&EnergiesReport::build(&cfg.mass, &results, cfg.digits)),
        OutputFormat::Csv => {
            let mut csv = Csv::default();
            csv.row(["n", "l", "k", "numerator", "denominator", "decimal"]);
            for (series, _) in &results {
                let st = series.state();
                for (k, e) in series.values().iter().enumerate() {
                    let (n, d) = num_den(e);
                    csv.row([st.n().to_string(), st.l().to_string(), k.to_string(), n, d, to_decimal(e, cfg.digits)]);
                }
            }
            if with_table {
                csv.blank();
                csv.row(["n", "l", "k", "i", "numerator", "denominator", "decimal"]);
                for (series, table) in &results {
                    let st = series.state();
                    let Some(table) = table else { continue };
                    for (k, row) in table.rows().iter().enumerate() {
                        for (i, c) in row.iter().enumerate() {
                            let (n, d) = num_den(c);
                            csv.row([
                                st.n().to_string(),
                                st.l().to_string(),
                                k.to_string(),
                                i.to_string(),
                                n,
                                d,
                                to_decimal(c, cfg.digits),
                            ]);
                        }
                    }
                }
            }
            csv.finish()
        }
    };
    Ok(Outcome::ok(out))
}

fn pade_entries(series: &EnergySeries, requested: &[(usize, usize)], digits: usize) -> Vec<PadeEntry> {
    requested
        .iter()
        .map(|&(l, m)| match pade(series, l, m) {
            Ok(p) => match p.estimate() {
                Some(v) => PadeEntry {
                    l,
                    m,
                    rational: Some(to_string(&v)),
                    decimal: Some(to_decimal(&v, digits)),
                    error: None,
                },
                None => PadeEntry {
                    l,
                    m,
                    rational: None,
                    decimal: None,
                    error: Some("pole at the evaluation point".into()),
                },
            },
            Err(e) => PadeEntry {
                l,
                m,
                rational: None,
                decimal: None,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

fn diagnostics_report(series: &EnergySeries, digits: usize) -> DiagnosticsReport {
    let d = diagnostics(series);
    DiagnosticsReport {
        ratios: d
            .ratios
            .iter()
            .enumerate()
            .map(|(k, r)| Ratio {
                k,
                ratio: r.as_ref().map(|r| to_decimal(r, digits)),
            })
            .collect(),
        zero_terms: d.zero_terms,
        smallest_term: d.smallest_term,
        divergent: d.divergent,
    }
}

pub fn cmd_sum(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let results = run_states(cfg)?;
    let mut exit_code = 0;
    let states: Vec<StateSum> = results
        .par_iter()
        .map(|(series, _)| {
            let st = series.state();
            StateSum {
                n: st.n(),
                l: st.l(),
                multiplicity: st.multiplicity(),
                partial_sums: partial_sums(series)
                    .iter()
                    .enumerate()
                    .map(|(k, s)| Term::new(k, s, cfg.digits))
                    .collect(),
                pade: pade_entries(series, &cfg.pade, cfg.digits),
                diagnostics: diagnostics_report(series, cfg.digits),
                validation: cfg.validate.then(|| validate_state(cfg, series)),
            }
        })
        .collect();
    if cfg.validate {
        exit_code = validation_exit(states.iter().filter_map(|s| s.validation.as_ref()));
    }
    let out = match cfg.output {
        OutputFormat::Json => to_json(&SumReport {
            potential: cfg.potential.label(),
            order: cfg.order,
            states,
        }),
        OutputFormat::Csv => {
            let mut csv = Csv::default();
            csv.row(["n", "l", "quantity", "label", "value"]);
            for s in &states {
                let (n, l) = (s.n.to_string(), s.l.to_string());
                for t in &s.partial_sums {
                    csv.row([&n, &l, "partial_sum", &t.k.to_string(), &t.rational]);
                }
                for p in &s.pade {
                    let label = format!("{}/{}", p.l, p.m);
                    let value = p.rational.clone().unwrap_or_else(|| "error".into());
                    csv.row([&n, &l, "pade", &label, &value]);
                }
                for r in &s.diagnostics.ratios {
                    let value = r.ratio.clone().unwrap_or_else(|| "undefined".into());
                    csv.row([&n, &l, "ratio", &r.k.to_string(), &value]);
                }
                let smallest = s.diagnostics.smallest_term.map_or("none".into(), |k| k.to_string());
                csv.row([&n, &l, "smallest_term", "", &smallest]);
                csv.row([&n, &l, "divergent", "", &s.diagnostics.divergent.to_string()]);
                if let Some(v) = &s.validation {
                    let value = v.rel_dev.clone().unwrap_or_else(|| status_name(v.status).into());
                    csv.row([&n, &l, "rel_dev", &v.method, &value]);
                }
            }
            csv.finish()
        }
    };
    Ok(Outcome { stdout: out, exit_code })
}

fn status_name(s: ValidationStatus) -> &'static str {
    match s {
        ValidationStatus::Ok => "ok",
        ValidationStatus::ExceedsTol => "exceeds_tol",
        ValidationStatus::Unavailable => "unavailable",
        ValidationStatus::Error => "error",
    }
}

/// Series estimate: the first requested Padé, otherwise the partial sum.
fn estimate(cfg: &JobConfig, series: &EnergySeries) -> (String, Result<Rational, String>) {
    match cfg.pade.first() {
        Some(&(l, m)) => {
            let method = format!("pade[{l}/{m}]");
            let value = pade(series, l, m)
                .map_err(|e| e.to_string())
                .and_then(|p| p.estimate().ok_or_else(|| "pole at the evaluation point".to_string()));
            (method, value)
        }
        None => (format!("partial_sum[{}]", series.order()), Ok(series.total())),
    }
}

fn validate_state(cfg: &JobConfig, series: &EnergySeries) -> StateValidation {
    let st = series.state();
    let (method, value) = estimate(cfg, series);
    let mut report = StateValidation {
        n: st.n(),
        l: st.l(),
        method,
        estimate: None,
        estimate_rational: None,
        oracle: None,
        abs_dev: None,
        rel_dev: None,
        status: ValidationStatus::Error,
        message: None,
    };
    let value = match value {
        Ok(v) => v,
        Err(msg) => {
            report.message = Some(msg);
            return report;
        }
    };
    report.estimate = Some(to_decimal(&value, cfg.digits));
    report.estimate_rational = Some(to_string(&value));

    if !cfg.potential.has_closed_form() {
        report.status = ValidationStatus::Unavailable;
        report.message = Some("validation unavailable: potential has no closed form".into());
        return report;
    }
    let mass = to_f64(&cfg.mass);
    let g = to_f64(cfg.potential.g());
    let oracle = RadialGrid::for_state(g, mass, st)
        .and_then(|grid| solve(&cfg.potential, mass, st, grid, ORACLE_TOL));
    match oracle {
        Ok(res) => {
            let est = to_f64(&value);
            let abs = (est - res.energy).abs();
            let rel = abs / res.energy.abs();
            report.oracle = Some(float(res.energy, cfg.digits));
            report.abs_dev = Some(sci(abs));
            report.rel_dev = Some(sci(rel));
            report.status = if rel <= cfg.tol {
                ValidationStatus::Ok
            } else {
                ValidationStatus::ExceedsTol
            };
        }
        Err(e) => report.message = Some(e.to_string()),
    }
    report
}

fn validation_exit<'a>(reports: impl Iterator<Item = &'a StateValidation>) -> i32 {
    let mut code = 0;
    for r in reports {
        match r.status {
            ValidationStatus::Error => return 2,
            ValidationStatus::ExceedsTol => code = 3,
            _ => {}
        }
    }
    code
}

pub fn cmd_validate(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let results = run_states(cfg)?;
    let states: Vec<StateValidation> = results
        .par_iter()
        .map(|(series, _)| validate_state(cfg, series))
        .collect();
    let exit_code = validation_exit(states.iter());
    let out = match cfg.output {
        OutputFormat::Json => to_json(&ValidationReport {
            potential: cfg.potential.label(),
            order: cfg.order,
            tol: cfg.tol,
            states,
        }),
        OutputFormat::Csv => {
            let mut csv = Csv::default();
            csv.row(["n", "l", "method", "estimate", "oracle", "abs_dev", "rel_dev", "status"]);
            for s in &states {
                let dash = || "".to_string();
                csv.row([
                    s.n.to_string(),
                    s.l.to_string(),
                    s.method.clone(),
                    s.estimate.clone().unwrap_or_else(dash),
                    s.oracle.clone().unwrap_or_else(dash),
                    s.abs_dev.clone().unwrap_or_else(dash),
                    s.rel_dev.clone().unwrap_or_else(dash),
                    status_name(s.status).to_string(),
                ]);
            }
            csv.finish()
        }
    };
    Ok(Outcome { stdout: out, exit_code })
}

/// Re-renders a JSON energies report; a fixed point for well-formed input.
pub fn roundtrip_energies(json: &str) -> Result<String, CliError> {
    let report: EnergiesReport =
        serde_json::from_str(json).map_err(|e| CliError::Config(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let (mass, results) = report.parse()?;
    Ok(to_json(&EnergiesReport::build(&mass, &results, report.decimal_digits)))
}
