//! Headless export of composed frames.
//!
//! Frames with `from_ms <= t_ms < to_ms` are composed without pacing and
//! written either as JSON lines (one canonical [`FrameBundle`] per line) or
//! as one SVG file per frame. An optional command script replays client
//! commands at given clock times.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical;
use crate::ingest::ValidatedDataset;
use crate::model::LayerId;
use crate::render::render_svg;
use crate::session::{FrameBundle, Session, SessionError};
use crate::stream::{ClientCommand, DecodeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Jsonl,
    Svg,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" => Ok(ExportFormat::Jsonl),
            "svg" => Ok(ExportFormat::Svg),
            other => Err(format!("unknown format `{other}` (expected jsonl or svg)")),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Jsonl => "jsonl",
            ExportFormat::Svg => "svg",
        })
    }
}

/// A client command applied before the first frame with `t_ms >= at_ms`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScriptedCommand {
    pub at_ms: i64,
    pub command: ClientCommand,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExportSpec {
    pub from_ms: i64,
    pub to_ms: i64,
    pub layers: BTreeSet<LayerId>,
    pub format: ExportFormat,
    /// A file for JSONL, a directory for SVG.
    pub out: PathBuf,
    pub script: Vec<ScriptedCommand>,
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("from_ms {from_ms} is after to_ms {to_ms}")]
    InvalidRange { from_ms: i64, to_ms: i64 },
    #[error("script command at {at_ms} ms failed: {source}")]
    Script { at_ms: i64, source: SessionError },
    #[error("script line {line}: {source}")]
    ScriptDecode { line: usize, source: DecodeError },
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl ExportError {
    pub fn code(&self) -> &'static str {
        match self {
            ExportError::InvalidRange { .. } => "INVALID_RANGE",
            ExportError::Script { source, .. } | ExportError::Session(source) => source.code(),
            ExportError::ScriptDecode { .. } => DecodeError::CODE,
            ExportError::Io { .. } => "IO_ERROR",
        }
    }
}

/// Parses a command script: one `{"at_ms": .., "command": {..}}` per line.
/// Commands keep file order among equal times.
pub fn parse_script(text: &str) -> Result<Vec<ScriptedCommand>, ExportError> {
    let mut script = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cmd: ScriptedCommand = serde_json::from_str(line).map_err(|e| ExportError::ScriptDecode {
            line: i + 1,
            source: DecodeError { offset: e.column().saturating_sub(1), reason: e.to_string() },
        })?;
        script.push(cmd);
    }
    script.sort_by_key(|c| c.at_ms);
    Ok(script)
}

fn apply(session: &mut Session, cmd: &ClientCommand) -> Result<(), SessionError> {
    match cmd {
        ClientCommand::Toggle { layer, on } => session.toggle(layer, *on),
        ClientCommand::Play => {
            session.play();
            Ok(())
        }
        ClientCommand::Pause => {
            session.pause();
            Ok(())
        }
        ClientCommand::Seek { t_ms } => session.seek(*t_ms),
        ClientCommand::Rate { multiplier } => session.set_rate(*multiplier),
        ClientCommand::Ping => Ok(()),
    }
}

/// Composes every frame in `[from_ms, to_ms)`.
pub fn export_frames(
    dataset: Arc<ValidatedDataset>,
    spec: &ExportSpec,
) -> Result<Vec<FrameBundle>, ExportError> {
    if spec.from_ms > spec.to_ms {
        return Err(ExportError::InvalidRange { from_ms: spec.from_ms, to_ms: spec.to_ms });
    }
    let start = dataset.tracking.partition_point(|f| f.t_ms < spec.from_ms);
    let Some(first) = dataset.tracking.get(start).map(|f| f.t_ms) else {
        return Ok(Vec::new());
    };
    let mut session = Session::new(dataset, spec.layers.clone())?;
    session.seek(first)?;

    let mut bundles = Vec::new();
    let mut next = 0;
    while session.clock_ms() < spec.to_ms {
        let clock = session.clock_ms();
        while let Some(sc) = spec.script.get(next).filter(|c| c.at_ms <= clock) {
            apply(&mut session, &sc.command)
                .map_err(|source| ExportError::Script { at_ms: sc.at_ms, source })?;
            next += 1;
        }
        if session.clock_ms() >= spec.to_ms {
            break;
        }
        bundles.push(session.compose());
        if session.advance().is_err() {
            break;
        }
    }
    Ok(bundles)
}

pub fn jsonl_lines(bundles: &[FrameBundle]) -> String {
    let mut out = String::new();
    for b in bundles {
        out.push_str(&canonical::to_canonical_string(b).expect("bundle serializes"));
        out.push('\n');
    }
    out
}

pub fn svg_file_name(index: usize, bundle: &FrameBundle) -> String {
    format!("frame_{index:05}_{}.svg", bundle.t_ms())
}

/// Runs the export and writes the output; returns the number of frames.
pub fn run_export(dataset: Arc<ValidatedDataset>, spec: &ExportSpec) -> Result<usize, ExportError> {
    let bundles = export_frames(Arc::clone(&dataset), spec)?;
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| ExportError::Io { path, source }
    };
    match spec.format {
        ExportFormat::Jsonl => {
            if let Some(parent) = spec.out.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(io(parent))?;
            }
            std::fs::write(&spec.out, jsonl_lines(&bundles)).map_err(io(&spec.out))?;
        }
        ExportFormat::Svg => {
            std::fs::create_dir_all(&spec.out).map_err(io(&spec.out))?;
            for (i, b) in bundles.iter().enumerate() {
                let path = spec.out.join(svg_file_name(i, b));
                std::fs::write(&path, render_svg(b, &dataset.meta)).map_err(io(&path))?;
            }
        }
    }
    Ok(bundles.len())
}
