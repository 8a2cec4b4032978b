//! `mills`: tables, reports and verification for Gaussian tail bounds.
//!
//! Exit codes: 0 success, 1 invariant violation, 2 configuration or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mills::bounds::{self, parse_bound_list, BoundId};
use mills::inverse::{self, Estimate};
use mills::report::{self, format_number, CommandConfig, Format};
use mills::{gauss, Error};

#[derive(Parser)]
#[command(
    name = "mills",
    version,
    about = "Gaussian tail integral bounds and inverse Q-function estimates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct XRange {
    #[arg(long, allow_negative_numbers = true)]
    x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    step: Option<f64>,
    /// Comma list of bound ids or groups (gordon, bs, thm3, corollary, all)
    #[arg(long)]
    bounds: Option<String>,
    /// Divide bound columns by the reference tail integral
    #[arg(long)]
    normalized: bool,
}

#[derive(Args, Clone)]
struct AlphaRange {
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    points_per_decade: Option<usize>,
}

#[derive(Args, Clone)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reference tail integral and bounds on an x grid
    BoundsTable {
        #[command(flatten)]
        range: XRange,
        #[command(flatten)]
        output: Output,
    },
    /// Exact inverse Q, closed-form estimates and certified bounds on an alpha grid
    InverseTable {
        #[command(flatten)]
        range: AlphaRange,
        #[command(flatten)]
        output: Output,
    },
    /// Empirical status of the conjectured inverse orderings
    ConjectureScan {
        #[command(flatten)]
        range: AlphaRange,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant suite
    Verify {
        #[arg(long, default_value_t = 2000)]
        grid_points: usize,
    },
    /// Data for one of the four standard figures (1-3 bounds, 4 inverse)
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        number: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Mill's ratio R(x)
    MillsRatio {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Tail integral M(x), linear and log
    Tail {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Q(x), linear and log
    Q {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Exact inverse of Q
    InverseQ {
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Value of one bound
    Bound {
        id: String,
        #[arg(allow_negative_numbers = true)]
        x: f64,
        /// Evaluate outside the proven validity interval
        #[arg(long)]
        force: bool,
    },
    /// Compare the reference with a set of bounds at one x
    Compare {
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value = "all")]
        bounds: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Abscissa where a bound starts to hold
    Crossover {
        id: String,
        lo: f64,
        hi: f64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
    /// Relative residual of the integral identity at x
    Identity {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// R(x) * sqrt(1 + x^2)
    Asymptotic {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Positive root of u^4 + u^2 - 1
    CrossoverConstant,
    /// Binary entropy in nats
    Entropy {
        #[arg(allow_negative_numbers = true)]
        p: f64,
    },
    /// Closed-form inverse estimate (low1, low2 or upp)
    Estimate {
        which: String,
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Certified inverse bound from a proven tail bound
    InvertBound {
        id: String,
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
    },
    /// The bound catalog as JSON
    Catalog,
}

fn x_config(range: &XRange, base: CommandConfig) -> Result<CommandConfig, Error> {
    Ok(CommandConfig {
        x_min: range.x_min.unwrap_or(base.x_min),
        x_max: range.x_max.unwrap_or(base.x_max),
        step: range.step.unwrap_or(base.step),
        bounds: match &range.bounds {
            Some(list) => parse_bound_list(list)?,
            None => base.bounds.clone(),
        },
        normalized: range.normalized || base.normalized,
        ..base
    })
}

fn alpha_config(range: &AlphaRange) -> CommandConfig {
    let base = CommandConfig::figure(4);
    CommandConfig {
        alpha_min: range.alpha_min.unwrap_or(base.alpha_min),
        alpha_max: range.alpha_max.unwrap_or(base.alpha_max),
        points_per_decade: range.points_per_decade.unwrap_or(base.points_per_decade),
        ..base
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Error> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn bound_id(s: &str) -> Result<BoundId, Error> {
    s.parse()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::BoundsTable { range, output } => {
            let config = x_config(&range, CommandConfig::figure(1))?;
            let table = report::cmd_bounds_table(&config)?;
            emit(&output, &table.render(output.format.unwrap_or_default()))?;
        }
        Command::InverseTable { range, output } => {
            let table = report::cmd_inverse_table(&alpha_config(&range))?;
            emit(&output, &table.render(output.format.unwrap_or_default()))?;
        }
        Command::ConjectureScan { range, output } => {
            let text = report::cmd_conjecture_scan(
                &alpha_config(&range),
                output.format.unwrap_or(Format::Json),
            )?;
            emit(&output, &text)?;
        }
        Command::Verify { grid_points } => {
            let outcome = report::cmd_verify(&CommandConfig {
                grid_points,
                ..CommandConfig::default()
            })?;
            print!("{}", outcome.summary());
            return Ok(ExitCode::from(outcome.exit_code() as u8));
        }
        Command::Figure { number, output } => {
            let format = output.format.unwrap_or_default();
            let text = if number == 4 {
                report::cmd_inverse_table(&CommandConfig::figure(4))?.render(format)
            } else {
                report::cmd_bounds_table(&CommandConfig::figure(number))?.render(format)
            };
            emit(&output, &text)?;
        }
        Command::MillsRatio { x } => println!("{}", format_number(gauss::mills_ratio(x)?)),
        Command::Tail { x } => {
            let m = gauss::tail_integral(x)?;
            println!("{},{}", format_number(m.linear), format_number(m.log_value));
        }
        Command::Q { x } => {
            let q = gauss::q_value(x)?;
            println!("{},{}", format_number(q.linear), format_number(q.log_value));
        }
        Command::InverseQ { alpha } => println!("{}", format_number(gauss::inverse_q(alpha)?)),
        Command::Bound { id, x, force } => {
            println!(
                "{}",
                format_number(bounds::evaluate_bound(bound_id(&id)?, x, force)?)
            )
        }
        Command::Compare {
            x,
            bounds: list,
            format,
        } => {
            let row = bounds::compare_at(x, &parse_bound_list(&list)?)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&row).expect("rows serialize")
                ),
                Format::Csv => print!("{}", report::describe_comparison(&row)),
            }
        }
        Command::Crossover { id, lo, hi, tol } => {
            println!(
                "{}",
                format_number(bounds::empirical_crossover(bound_id(&id)?, lo, hi, tol)?)
            )
        }
        Command::Identity { x } => println!("{}", format_number(bounds::identity_residual(x)?)),
        Command::Asymptotic { x } => println!("{}", format_number(bounds::asymptotic_ratio(x)?)),
        Command::CrossoverConstant => println!("{}", format_number(bounds::crossover_constant())),
        Command::Entropy { p } => println!("{}", format_number(inverse::binary_entropy(p)?)),
        Command::Estimate { which, alpha } => {
            let estimate: Estimate = which.parse()?;
            println!("{}", format_number(estimate.evaluate(alpha)?))
        }
        Command::InvertBound { id, alpha } => {
            println!(
                "{}",
                format_number(inverse::invert_bound(bound_id(&id)?, alpha)?)
            )
        }
        Command::Catalog => println!(
            "{}",
            serde_json::to_string_pretty(&bounds::bound_catalog()).expect("catalog serializes")
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
