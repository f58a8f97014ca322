use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use caustic_cli::commands;
use caustic_cli::config::ScenarioConfig;
use caustic_cli::CliError;
use caustic_core::Scheme;

/// Near-field caustic beam experiments: synthesize array phase profiles and
/// evaluate secrecy performance around an eavesdropping-uncertainty region.
#[derive(Parser)]
#[command(name = "caustic", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for emitted files.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the configured scheme (repeatable for `sweep`).
    #[arg(long)]
    scheme: Vec<String>,
    /// Override a config field by dot path, e.g. --set sampling.rings=32
    /// (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Reserved for future randomized modes; all current outputs are
    /// deterministic.
    #[arg(long)]
    #[allow(unused)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the per-element phase profile (profile.csv).
    Profile {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Render the normalized field map (field.csv, field.pgm).
    Field {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sweep transmit power and report robust rates (report.csv).
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Lowest transmit power in dBm.
        #[arg(long, default_value_t = 10.0)]
        p_min_dbm: f64,
        /// Highest transmit power in dBm.
        #[arg(long, default_value_t = 30.0)]
        p_max_dbm: f64,
        /// Number of equispaced power points (>= 2).
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
    /// Check departure rays against the scheme's geometry (validate.csv).
    Validate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Time profile synthesis (timing.csv).
    Bench {
        #[command(flatten)]
        common: CommonArgs,
        /// Repetitions per timed scheme.
        #[arg(long, default_value_t = 100)]
        repeats: usize,
    },
}

fn parse_schemes(names: &[String]) -> Result<Vec<Scheme>, CliError> {
    names
        .iter()
        .map(|n| n.parse::<Scheme>().map_err(|e| CliError::Config(e.to_string())))
        .collect()
}

/// Load the config, applying --set overrides and, when present, a single
/// --scheme override.
fn load(common: &CommonArgs) -> Result<(ScenarioConfig, Vec<Scheme>), CliError> {
    let mut overrides = common.set.clone();
    let schemes = parse_schemes(&common.scheme)?;
    if schemes.len() == 1 {
        overrides.push(format!("scheme={}", schemes[0]));
    }
    let cfg = ScenarioConfig::from_file(&common.config, &overrides)?;
    Ok((cfg, schemes))
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Profile { common } => {
            let (cfg, schemes) = load(&common)?;
            if schemes.len() > 1 {
                return Err(CliError::Config(
                    "profile takes at most one --scheme".into(),
                ));
            }
            commands::write_config_echo(&cfg, &common.out)?;
            commands::cmd_profile(&cfg.resolve()?, &common.out)
        }
        Command::Field { common } => {
            let (cfg, schemes) = load(&common)?;
            if schemes.len() > 1 {
                return Err(CliError::Config("field takes at most one --scheme".into()));
            }
            commands::write_config_echo(&cfg, &common.out)?;
            commands::cmd_field(&cfg.resolve()?, &common.out)
        }
        Command::Sweep {
            common,
            p_min_dbm,
            p_max_dbm,
            steps,
        } => {
            let (cfg, mut schemes) = load(&common)?;
            if schemes.is_empty() {
                schemes = vec![
                    Scheme::Steering,
                    Scheme::Focusing,
                    Scheme::Proposed,
                    Scheme::Eigen,
                ];
            }
            commands::write_config_echo(&cfg, &common.out)?;
            commands::cmd_sweep(
                &cfg.resolve()?,
                &common.out,
                p_min_dbm,
                p_max_dbm,
                steps,
                &schemes,
            )
        }
        Command::Validate { common } => {
            let (cfg, schemes) = load(&common)?;
            if schemes.len() > 1 {
                return Err(CliError::Config(
                    "validate takes at most one --scheme".into(),
                ));
            }
            commands::write_config_echo(&cfg, &common.out)?;
            commands::cmd_validate(&cfg.resolve()?, &common.out)
        }
        Command::Bench { common, repeats } => {
            let (cfg, mut schemes) = load(&common)?;
            if schemes.is_empty() {
                schemes = Scheme::ALL.to_vec();
            }
            commands::write_config_echo(&cfg, &common.out)?;
            commands::cmd_bench(&cfg.resolve()?, &common.out, repeats, &schemes)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("caustic: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
