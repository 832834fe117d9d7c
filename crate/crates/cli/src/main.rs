use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hbar_lpt_cli::commands::{cmd_energies, cmd_series, cmd_sum, cmd_validate, Outcome};
use hbar_lpt_cli::config::{JobConfig, OutputFormat, Overrides};
use hbar_lpt_cli::CliError;

/// ħ-expansion energies for screened Coulomb bound states.
#[derive(Debug, Parser)]
#[command(name = "hbar-lpt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the potential coefficients V_0..V_count.
    Series {
        #[command(flatten)]
        job: JobArgs,
        /// Highest coefficient index (defaults to the order).
        #[arg(long)]
        count: Option<usize>,
    },
    /// Energy corrections E_0..E_K per state.
    Energies {
        #[command(flatten)]
        job: JobArgs,
        /// Also emit the Laurent coefficient grid.
        #[arg(long)]
        table: bool,
    },
    /// Partial sums, Padé estimates and divergence diagnostics.
    Sum {
        #[command(flatten)]
        job: JobArgs,
    },
    /// Compare the series estimate against the shooting eigensolver.
    Validate {
        #[command(flatten)]
        job: JobArgs,
    },
}

#[derive(Debug, Args)]
struct JobArgs {
    /// JSON job file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<String>,
    /// coulomb | yukawa | hulthen | exp-cosine | custom
    #[arg(long)]
    kind: Option<String>,
    /// Coupling strength, "p/q" or integer.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Screening parameter, "p/q" or integer.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Comma-separated coefficients for kind custom, e.g. "-1,1/10".
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mass: Option<String>,
    /// State as "n,l"; repeatable.
    #[arg(long = "state")]
    states: Vec<String>,
    /// Expansion order K.
    #[arg(long)]
    order: Option<usize>,
    /// Padé degrees as "L,M"; repeatable.
    #[arg(long)]
    pade: Vec<String>,
    /// Run the eigensolver comparison as part of `sum`.
    #[arg(long)]
    validate: bool,
    /// Relative deviation allowed by validation.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    output: Option<OutputFormat>,
    #[arg(long = "decimal-digits")]
    decimal_digits: Option<usize>,
}

impl JobArgs {
    fn resolve(self) -> Result<JobConfig, CliError> {
        JobConfig::resolve(&Overrides {
            config: self.config,
            kind: self.kind,
            g: self.g,
            lambda: self.lambda,
            coeffs: self.coeffs,
            mass: self.mass,
            states: self.states,
            order: self.order,
            pade: self.pade,
            validate: self.validate,
            tol: self.tol,
            output: self.output,
            digits: self.decimal_digits,
        })
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Series { job, count } => cmd_series(&job.resolve()?, count),
        Command::Energies { job, table } => cmd_energies(&job.resolve()?, table),
        Command::Sum { job } => cmd_sum(&job.resolve()?),
        Command::Validate { job } => cmd_validate(&job.resolve()?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("hbar-lpt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
