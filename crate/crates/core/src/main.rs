//! `apcw` — simulate the opto-mechanics of a suspended double-nanobeam
//! photonic crystal waveguide.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use apcw::cli::{
    cmd_coupling, cmd_modes, cmd_report, cmd_spectrum, resolve_outdir, CouplingOptions,
    ModesOptions, RegimeFlag,
};
use apcw::config::ScenarioConfig;
use apcw::error::Error;
use apcw::mech::BoundaryCondition;

#[derive(Parser)]
#[command(
    name = "apcw",
    version,
    about = "Mechanical eigenmodes, thermal noise spectra, and homodyne transduction of a suspended double-nanobeam waveguide"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario configuration (JSON with unit-suffixed values).
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// RNG seed; identical config and seed give bit-identical outputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory (overrides APCW_OUT and the config).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Echo the fully resolved configuration (defaults included) and exit.
    #[arg(long)]
    print_config: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic and finite-element mode tables with their comparison.
    Modes {
        #[command(flatten)]
        common: Common,
        /// Number of modes.
        #[arg(long, default_value_t = 5)]
        pmax: usize,
        /// Finite elements in the 1D mesh.
        #[arg(long, default_value_t = 200)]
        elements: usize,
        /// Override the boundary condition from the config.
        #[arg(long, value_enum)]
        boundary: Option<BoundaryFlag>,
    },
    /// Synthesize a homodyne trace and its Welch spectrum with peak labels.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Transduction regime.
        #[arg(long, value_enum, default_value_t = RegimeFlag::Dispersive)]
        regime: RegimeFlag,
    },
    /// Sensitivity and ground-state figure-of-merit block.
    Report {
        #[command(flatten)]
        common: Common,
    },
    /// Transduction factor, resonance ladder, and coupling-rate sweep.
    Coupling {
        #[command(flatten)]
        common: Common,
        /// Sweep start frequency, Hz.
        #[arg(long)]
        nu_start: Option<f64>,
        /// Sweep stop frequency, Hz.
        #[arg(long)]
        nu_stop: Option<f64>,
        /// Sweep points.
        #[arg(long, default_value_t = 241)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum BoundaryFlag {
    Hinged,
    Clamped,
}

impl From<BoundaryFlag> for BoundaryCondition {
    fn from(b: BoundaryFlag) -> Self {
        match b {
            BoundaryFlag::Hinged => BoundaryCondition::HingedHinged,
            BoundaryFlag::Clamped => BoundaryCondition::ClampedClamped,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = serde_json::json!({
                "error": { "kind": e.kind(), "message": e.to_string() }
            });
            eprintln!("{payload}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> apcw::Result<()> {
    match cli.command {
        Command::Modes {
            common,
            pmax,
            elements,
            boundary,
        } => {
            let config = load(&common)?;
            if common.print_config {
                println!("{}", config.to_pretty_json());
                return Ok(());
            }
            let outdir = resolve_outdir(common.out.as_deref(), &config);
            let opts = ModesOptions {
                p_max: pmax,
                elements,
                boundary: boundary.map(Into::into),
            };
            let summary = cmd_modes(&config, &opts, &outdir)?;
            println!(
                "modes: f1_fem = {:.6e} Hz{} -> {}",
                summary.f1_fem,
                summary
                    .max_rel_error
                    .map(|e| format!(", max |fem/analytic - 1| = {e:.2e}"))
                    .unwrap_or_default(),
                outdir.display()
            );
            Ok(())
        }
        Command::Spectrum { common, regime } => {
            let config = load(&common)?;
            if common.print_config {
                println!("{}", config.to_pretty_json());
                return Ok(());
            }
            let outdir = resolve_outdir(common.out.as_deref(), &config);
            let summary = cmd_spectrum(&config, regime, common.seed, &outdir)?;
            for w in &summary.warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "spectrum [{}]: {} peaks, rms phase at f1 = {:.3e} rad -> {}",
                summary.regime,
                summary.peaks.len(),
                summary.rms_phase_f1,
                outdir.display()
            );
            Ok(())
        }
        Command::Report { common } => {
            let config = load(&common)?;
            if common.print_config {
                println!("{}", config.to_pretty_json());
                return Ok(());
            }
            let outdir = resolve_outdir(common.out.as_deref(), &config);
            let summary = cmd_report(&config, &outdir)?;
            print!("{}", summary.report.render_text());
            println!("written to {}", outdir.display());
            Ok(())
        }
        Command::Coupling {
            common,
            nu_start,
            nu_stop,
            points,
        } => {
            let config = load(&common)?;
            if common.print_config {
                println!("{}", config.to_pretty_json());
                return Ok(());
            }
            if points < 2 {
                return Err(Error::Domain("sweep needs at least 2 points".into()));
            }
            let outdir = resolve_outdir(common.out.as_deref(), &config);
            let opts = CouplingOptions {
                nu_start,
                nu_stop,
                points,
                ..CouplingOptions::default()
            };
            let summary = cmd_coupling(&config, &opts, &outdir)?;
            if summary.truncated {
                eprintln!("warning: sweep truncated below the band edge");
            }
            println!(
                "coupling: G(nu_1) = {:.4e} Hz at nu_1 = {:.6e} Hz -> {}",
                summary.coupling_at_nu1,
                summary.nu_1,
                outdir.display()
            );
            Ok(())
        }
    }
}

fn load(common: &Common) -> apcw::Result<ScenarioConfig> {
    ScenarioConfig::from_file(&common.config)
}
