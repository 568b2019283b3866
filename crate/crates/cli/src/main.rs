//! `pendulum`: spectra, figure data and self-checks for the quantum pendulum.

use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pendulum_core::emit::{self, Format, Frame, Metadata};
use pendulum_core::figures::{build_figure, FigureDataset, FigureId, FigureOptions};
use pendulum_core::mathieu::{spectrum_for_q, DEFAULT_TOL};
use pendulum_core::selftest::run_selftest;
use pendulum_core::{Error, Parity, PendulumConfig};

#[derive(Parser, Debug)]
#[command(name = "pendulum", version, about = "Quantum pendulum spectra and timescales")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Merged even/odd spectrum, lowest states first.
    Spectrum {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 40)]
        count: usize,
        #[arg(long, value_enum, default_value_t = ParityFilter::All)]
        parity: ParityFilter,
        #[arg(long, value_enum, default_value_t = FrameArg::Physical)]
        frame: FrameArg,
    },
    /// Data behind one of the standard figures.
    Figure {
        #[arg(value_parser = parse_figure)]
        id: FigureId,
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Drop series of perturbative order above this.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, default_value_t = 200.0)]
        q_max: f64,
        #[arg(long, default_value_t = 201)]
        q_points: usize,
        #[arg(long, default_value_t = 6)]
        curves: usize,
        #[arg(long, default_value_t = 400)]
        curve_points: usize,
    },
    /// Perturbation-engine benchmarks; exits nonzero on any failure.
    Selftest {
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct SystemArgs {
    #[arg(long, conflicts_with = "q")]
    hbar: Option<f64>,
    #[arg(long, conflicts_with = "q")]
    mass: Option<f64>,
    #[arg(long, conflicts_with = "q")]
    length: Option<f64>,
    #[arg(long, conflicts_with = "q")]
    v0: Option<f64>,
    /// Mathieu parameter; energies are then in units with ħ = 1, I = 1/2.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    /// key=value file with hbar, mass, length, v0.
    #[arg(long, conflicts_with = "q")]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq)]
enum ParityFilter {
    All,
    Even,
    Odd,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq)]
enum FrameArg {
    Physical,
    Mathieu,
}

fn parse_figure(s: &str) -> Result<FigureId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Resolved system: the physical configuration, and whether it came from `--q`.
struct System {
    cfg: Option<PendulumConfig>,
    q: f64,
    energy_unit: f64,
}

impl SystemArgs {
    fn resolve(&self) -> Result<System, Failure> {
        if let Some(q) = self.q {
            if !q.is_finite() {
                return Err(Failure::Usage(format!("q must be finite, got {q}")));
            }
            return Ok(System {
                cfg: None,
                q,
                energy_unit: 0.25,
            });
        }
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                PendulumConfig::from_key_values(&text)?
            }
            None => PendulumConfig::nominal(),
        };
        cfg.hbar = self.hbar.unwrap_or(cfg.hbar);
        cfg.mass = self.mass.unwrap_or(cfg.mass);
        cfg.length = self.length.unwrap_or(cfg.length);
        cfg.v0 = self.v0.unwrap_or(cfg.v0);
        cfg.validate()?;
        Ok(System {
            q: cfg.q(),
            energy_unit: cfg.energy_unit(),
            cfg: Some(cfg),
        })
    }
}

impl System {
    /// Physical parameters, inventing `ħ = 1, μ = 1/2, l = 1` for a bare `q`.
    fn physical(&self) -> Result<PendulumConfig, Failure> {
        match self.cfg {
            Some(cfg) => Ok(cfg),
            None => PendulumConfig::new(1.0, 0.5, 1.0, self.q.abs() / 2.0).map_err(Failure::from),
        }
    }
}

enum Failure {
    Usage(String),
    Core(Error),
    Io(io::Error),
    ChecksFailed(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn format_of(arg: FormatArg) -> Format {
    match arg {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn write_output(output: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => emit::write_to(io::stdout().lock(), text)?,
    }
    Ok(())
}

/// `order` suffix of a series id such as `rotor_order4`.
fn series_order(id: &str) -> Option<u32> {
    id.rsplit_once("order").and_then(|(_, k)| k.parse().ok())
}

fn keep_orders(mut dataset: FigureDataset, max: Option<u32>) -> FigureDataset {
    if let Some(max) = max {
        dataset.series.retain(|s| series_order(&s.id).is_none_or(|k| k <= max));
    }
    dataset
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Spectrum {
            system,
            output,
            count,
            parity,
            frame,
        } => {
            if count == 0 {
                return Err(Failure::Usage("count must be positive".into()));
            }
            let sys = system.resolve()?;
            let mut table = spectrum_for_q(sys.q, sys.energy_unit, count, system.tol)?;
            match parity {
                ParityFilter::All => {}
                ParityFilter::Even => table.entries.retain(|e| e.label.parity == Parity::Even),
                ParityFilter::Odd => table.entries.retain(|e| e.label.parity == Parity::Odd),
            }
            let frame = match frame {
                FrameArg::Physical => Frame::Physical,
                FrameArg::Mathieu => Frame::Mathieu,
            };
            let meta = Metadata::new("spectrum", frame, sys.cfg, sys.q, sys.energy_unit)
                .with_arg("count", count)
                .with_arg("parity", format!("{parity:?}").to_lowercase())
                .with_arg("tol", system.tol);
            write_output(
                &output,
                &emit::encode_spectrum(&table, &meta, format_of(output.format))?,
            )
        }
        Command::Figure {
            id,
            system,
            output,
            count,
            order,
            q_max,
            q_points,
            curves,
            curve_points,
        } => {
            let sys = system.resolve()?;
            let cfg = sys.physical()?;
            let opts = FigureOptions {
                count,
                tol: system.tol,
                q_max,
                q_points,
                curves,
                curve_points,
            };
            let dataset = keep_orders(build_figure(id, &cfg, &opts)?, order);
            let mut meta = Metadata::new("figure", Frame::Physical, Some(cfg), sys.q, sys.energy_unit)
                .with_arg("count", count)
                .with_arg("tol", system.tol)
                .with_arg("curve_points", curve_points);
            if id == FigureId::Fig1 {
                meta = meta
                    .with_arg("q_max", q_max)
                    .with_arg("q_points", q_points)
                    .with_arg("curves", curves);
            }
            if let Some(order) = order {
                meta = meta.with_arg("order", order);
            }
            write_output(
                &output,
                &emit::encode_figure(&dataset, &meta, format_of(output.format))?,
            )
        }
        Command::Selftest { output } => {
            let report = run_selftest()?;
            let text = match output.format {
                FormatArg::Json => format!(
                    "{:#}\n",
                    serde_json::json!({ "provenance": emit::PROVENANCE, "passed": report.all_passed(), "checks": report.checks })
                ),
                FormatArg::Csv => {
                    let mut s = format!(
                        "# {}\nname,passed,value,target,tolerance\n",
                        serde_json::json!({ "provenance": emit::PROVENANCE, "kind": "selftest", "passed": report.all_passed() })
                    );
                    for c in &report.checks {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            c.name,
                            c.passed,
                            emit::format_float(c.value),
                            emit::format_float(c.target),
                            emit::format_float(c.tolerance)
                        ));
                    }
                    s
                }
            };
            write_output(&output, &text)?;
            let failed = report.failures().count();
            if failed > 0 {
                return Err(Failure::ChecksFailed(failed));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e @ Error::NotConverged { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::ChecksFailed(n)) => {
            eprintln!("selftest: {n} check(s) failed");
            ExitCode::from(1)
        }
    }
}
