//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 configuration error,
//! 3 data or file error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Parser, Subcommand};

use crate::config::parse_config;
use crate::engine::{init_world, SimParams, WorldState};
use crate::error::SwarmError;
use crate::metrics::{
    continue_series, deposit_rate, metrics_row, metrics_table, null_params, record, MetricsRecord,
};
use crate::render::render_layer;
use crate::snapshot;

pub const SNAPSHOT_FILE: &str = "snapshot.swrm";
pub const IMAGE_FILE: &str = "canvas.ppm";
pub const METRICS_FILE: &str = "metrics.tsv";

#[derive(Parser, Debug)]
#[command(
    name = "swarm-canvas",
    version,
    about = "Stigmergic swarm painting simulator"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate from a config file and write snapshot, image and metrics.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write `snapshot_<tick>.swrm` every N ticks.
        #[arg(long, value_name = "N")]
        snapshot_every: Option<u64>,
    },
    /// Render a snapshot to a PPM image.
    Render {
        snapshot: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Render the live (decaying) field instead of the configured layer.
        #[arg(long)]
        live: bool,
    },
    /// Print the metrics of a snapshot as a one-row table.
    Metrics { snapshot: PathBuf },
    /// Continue a snapshot for N more ticks.
    Resume {
        snapshot: PathBuf,
        #[arg(long)]
        ticks: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_name = "N")]
        snapshot_every: Option<u64>,
    },
    /// Run the uncoupled null model matched to the configured run's ink budget.
    Nullrun {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Config(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Config(m) | CliError::Data(m) => m,
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

fn read_config(path: &Path) -> Result<SimParams, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_config(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn read_snapshot(path: &Path) -> Result<WorldState, CliError> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    snapshot::decode(&bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

fn engine_err(e: SwarmError) -> CliError {
    match e {
        SwarmError::Snapshot(_) => CliError::Data(e.to_string()),
        SwarmError::Observer { .. } => CliError::Data(e.to_string()),
        _ => CliError::Config(e.to_string()),
    }
}

fn render(world: &WorldState, live: bool) -> Result<Vec<u8>, CliError> {
    let layer = if live {
        world.field().values()
    } else {
        world.render_layer()
    };
    let p = world.params();
    render_layer(layer, p.width, p.height, p.channels, &p.palette)
        .map_err(|e| CliError::Data(e.to_string()))
}

/// Advance `world` by `ticks`, writing periodic snapshots, then the final
/// snapshot, image and metrics table into `out`.
fn simulate_into(
    mut world: WorldState,
    ticks: u64,
    out: &Path,
    snapshot_every: Option<u64>,
) -> Result<WorldState, CliError> {
    if snapshot_every == Some(0) {
        return Err(CliError::Usage("--snapshot-every must be >= 1".into()));
    }
    fs::create_dir_all(out).map_err(|e| io_err(out, e))?;
    let mut series: Vec<MetricsRecord> = vec![record(&world)];
    let every = world.params().metrics_every;
    let last = world.tick() + ticks;
    let mut io_failure = None;
    world
        .run(ticks, |w| {
            if w.tick() % every == 0 || w.tick() == last {
                series.push(record(w));
            }
            if let Some(n) = snapshot_every {
                if w.tick() % n == 0 {
                    let path = out.join(format!("snapshot_{:08}.swrm", w.tick()));
                    if let Err(e) = fs::write(&path, snapshot::encode(w)) {
                        let msg = format!("{}: {e}", path.display());
                        io_failure = Some(msg.clone());
                        return Err(msg);
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| match io_failure.take() {
            Some(msg) => CliError::Data(msg),
            None => engine_err(e),
        })?;
    write(&out.join(SNAPSHOT_FILE), &snapshot::encode(&world))?;
    write(&out.join(IMAGE_FILE), &render(&world, false)?)?;
    write(
        &out.join(METRICS_FILE),
        metrics_table(&series, world.params().channels).as_bytes(),
    )?;
    Ok(world)
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            config,
            out,
            snapshot_every,
        } => {
            let params = read_config(&config)?;
            let world = init_world(&params).map_err(engine_err)?;
            simulate_into(world, params.ticks, &out, snapshot_every)?;
        }
        Command::Render {
            snapshot,
            out,
            live,
        } => {
            let world = read_snapshot(&snapshot)?;
            write(&out, &render(&world, live)?)?;
        }
        Command::Metrics { snapshot } => {
            let world = read_snapshot(&snapshot)?;
            let table = metrics_table(&[], world.params().channels);
            let _ = writeln!(stdout, "{table}{}", metrics_row(&record(&world)));
        }
        Command::Resume {
            snapshot,
            ticks,
            out,
            snapshot_every,
        } => {
            let world = read_snapshot(&snapshot)?;
            simulate_into(world, ticks, &out, snapshot_every)?;
        }
        Command::Nullrun { config, out } => {
            let params = read_config(&config)?;
            let mut coupled = init_world(&params).map_err(engine_err)?;
            let mut scratch = Vec::new();
            continue_series(&mut coupled, params.ticks, &mut scratch).map_err(engine_err)?;
            let rate = deposit_rate(&coupled).unwrap_or(params.behavior.p0);
            let null = init_world(&null_params(&params, rate)).map_err(engine_err)?;
            let null = simulate_into(null, params.ticks, &out, None)?;
            let null_rate = deposit_rate(&null).unwrap_or(rate);
            let _ = writeln!(
                stdout,
                "coupled deposit rate\t{}",
                crate::metrics::format_sig9(rate)
            );
            let _ = writeln!(
                stdout,
                "null deposit rate\t{}",
                crate::metrics::format_sig9(null_rate)
            );
        }
    }
    Ok(())
}

/// Parse `args` (including the program name) and run the command. Returns
/// the process exit status.
pub fn cli_main<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}
