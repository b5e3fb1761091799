use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use courtcast_core::export::{parse_script, run_export, ExportFormat, ExportSpec};
use courtcast_core::fixture::{demo_game, FixtureSpec};
use courtcast_core::ingest::{load_dataset, write_dataset, ValidatedDataset};
use courtcast_core::model::LayerId;
use courtcast_core::session::Session;
use courtcast_core::stream::{serve, Hub, Pacing};
use tracing_subscriber::EnvFilter;

const EXIT_INVALID: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

#[derive(Parser)]
#[command(name = "courtcast", version, about = "Replay basketball tracking data with live visualization layers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a dataset and print record counts.
    Validate {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Serve the replay over WebSocket at /stream.
    ///
    /// Post-shot labels are shown whenever a shot has just happened, even
    /// with shot_label off; the toggle controls the live zone labels.
    Serve {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, default_value = "127.0.0.1:8765")]
        bind: String,
        #[command(flatten)]
        layers: LayerArg,
        /// Start playing immediately.
        #[arg(long)]
        play: bool,
    },
    /// Compose frames without pacing and write JSONL or SVG.
    Export {
        #[arg(long)]
        manifest: PathBuf,
        /// First frame time to include (default: first frame).
        #[arg(long, allow_hyphen_values = true)]
        from_ms: Option<i64>,
        /// Exclusive end time (default: after the last frame).
        #[arg(long, allow_hyphen_values = true)]
        to_ms: Option<i64>,
        #[command(flatten)]
        layers: LayerArg,
        #[arg(long, default_value = "jsonl")]
        format: ExportFormat,
        /// Output file (jsonl) or directory (svg).
        #[arg(long)]
        out: PathBuf,
        /// JSONL command script: {"at_ms": .., "command": {"type": ..}} per line.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Write the synthetic demo game as a dataset directory.
    Fixture {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = FixtureSpec::default().duration_ms)]
        duration_ms: i64,
        #[arg(long, default_value_t = FixtureSpec::default().seed)]
        seed: u64,
    },
}

#[derive(Args)]
struct LayerArg {
    /// Comma-separated layers to enable, e.g. defense,team_panel. Empty for none.
    #[arg(long, default_value = "shot_label,offense,defense,shot_chart,team_panel")]
    layers: String,
}

impl LayerArg {
    fn parse(&self) -> Result<BTreeSet<LayerId>, Failure> {
        LayerId::parse_list(&self.layers).map_err(|e| Failure::runtime("UNKNOWN_LAYER", e))
    }
}

struct Failure {
    exit: u8,
    code: &'static str,
    message: String,
}

impl Failure {
    fn runtime(code: &'static str, e: impl std::fmt::Display) -> Self {
        Failure { exit: EXIT_RUNTIME, code, message: e.to_string() }
    }
}

fn load(manifest: &Path) -> Result<ValidatedDataset, Failure> {
    load_dataset(manifest).map_err(|e| Failure { exit: EXIT_INVALID, code: e.code(), message: e.to_string() })
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_env("COURTCAST_LOG").unwrap_or_else(|_| EnvFilter::new("warn")))
        .with_writer(std::io::stderr)
        .init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error [{}]: {}", f.code, f.message);
            ExitCode::from(f.exit)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { manifest } => {
            let d = load(&manifest)?;
            println!("tracking: {} frames, events: {}", d.tracking.len(), d.events.len());
            println!("shot table: {} players", d.shots.players.len());
            Ok(())
        }
        Command::Serve { manifest, bind, layers, play } => {
            let layers = layers.parse()?;
            let d = load(&manifest)?;
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::runtime("IO_ERROR", e))?;
            runtime.block_on(cmd_serve(d, &bind, layers, play))
        }
        Command::Export { manifest, from_ms, to_ms, layers, format, out, script } => {
            let layers = layers.parse()?;
            let script = match script {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::runtime("IO_ERROR", format!("{}: {e}", path.display())))?;
                    parse_script(&text).map_err(|e| Failure::runtime(e.code(), e))?
                }
                None => Vec::new(),
            };
            let d = Arc::new(load(&manifest)?);
            let spec = ExportSpec {
                from_ms: from_ms.or(d.first_t_ms()).unwrap_or(0),
                to_ms: to_ms.or(d.last_t_ms().map(|t| t + 1)).unwrap_or(0),
                layers,
                format,
                out,
                script,
            };
            let n = run_export(d, &spec).map_err(|e| Failure::runtime(e.code(), e))?;
            println!("exported {n} frames to {}", spec.out.display());
            Ok(())
        }
        Command::Fixture { out, duration_ms, seed } => {
            let spec = FixtureSpec { duration_ms, seed, ..Default::default() };
            let d = demo_game(spec);
            let manifest = write_dataset(&d, &out).map_err(|e| Failure::runtime(e.code(), e))?;
            println!("wrote {} ({} frames, {} events)", manifest.display(), d.tracking.len(), d.events.len());
            Ok(())
        }
    }
}

async fn cmd_serve(d: ValidatedDataset, bind: &str, layers: BTreeSet<LayerId>, play: bool) -> Result<(), Failure> {
    let mut session = Session::new(d, layers).map_err(|e| Failure::runtime(e.code(), e))?;
    if play {
        session.play();
    }
    let server = serve(Hub::spawn(session, Pacing::RealTime), bind)
        .await
        .map_err(|e| Failure::runtime(e.code(), e))?;
    println!("listening on {}", server.url());
    tokio::signal::ctrl_c().await.map_err(|e| Failure::runtime("IO_ERROR", e))?;
    tracing::info!("shutting down");
    server.shutdown().await;
    Ok(())
}
