use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical;
use crate::ingest::{TeamColors, ValidatedDataset};
use crate::model::{CourtGeometry, GameEvent, LayerDescriptor, LayerId};
use crate::session::FrameBundle;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub home_team: String,
    pub away_team: String,
    pub frames: usize,
    pub events: usize,
    pub first_t_ms: i64,
    pub last_t_ms: i64,
    pub frame_rate_hz: f64,
}

impl DatasetSummary {
    pub fn of(dataset: &ValidatedDataset) -> Self {
        DatasetSummary {
            home_team: dataset.meta.home_team.clone(),
            away_team: dataset.meta.away_team.clone(),
            frames: dataset.tracking.len(),
            events: dataset.events.len(),
            first_t_ms: dataset.first_t_ms().unwrap_or(0),
            last_t_ms: dataset.last_t_ms().unwrap_or(0),
            frame_rate_hz: dataset.meta.frame_rate_hz,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ServerMessage {
    Hello {
        summary: DatasetSummary,
        geometry: CourtGeometry,
        team_colors: TeamColors,
        layers: Vec<LayerDescriptor>,
        enabled: BTreeSet<LayerId>,
    },
    /// `seq` increases by one per FRAME on a connection; `t_ms` does too
    /// except across a backward SEEK.
    Frame { seq: u64, bundle: Box<FrameBundle> },
    LayerState { enabled: BTreeSet<LayerId>, playing: bool, rate: f64 },
    Event { event: GameEvent },
    Error { code: String, detail: String },
    End,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClientCommand {
    /// Layer names are kept as text so an unknown one can be answered with
    /// UNKNOWN_LAYER rather than a decode error.
    Toggle { layer: String, on: bool },
    Play,
    Pause,
    Seek { t_ms: i64 },
    Rate { multiplier: f64 },
    Ping,
}

impl ClientCommand {
    pub fn toggle(layer: LayerId, on: bool) -> Self {
        ClientCommand::Toggle { layer: layer.as_str().to_string(), on }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("DECODE_ERROR at byte {offset}: {reason}")]
pub struct DecodeError {
    pub offset: usize,
    pub reason: String,
}

impl DecodeError {
    pub const CODE: &'static str = "DECODE_ERROR";

    pub fn to_message(&self) -> ServerMessage {
        ServerMessage::Error { code: Self::CODE.into(), detail: self.to_string() }
    }
}

fn encode_value<T: Serialize>(msg: &T) -> Vec<u8> {
    canonical::to_canonical_string(msg)
        .expect("protocol messages always serialize")
        .into_bytes()
}

fn decode_value<T: for<'de> Deserialize<'de>>(bytes: &[u8]) -> Result<T, DecodeError> {
    serde_json::from_slice(bytes).map_err(|e| DecodeError {
        offset: byte_offset(bytes, e.line(), e.column()),
        reason: e.to_string(),
    })
}

/// serde_json reports 1-based line and column; turn that into an offset.
fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    if line <= 1 {
        return column.min(bytes.len());
    }
    let line_start = bytes
        .iter()
        .enumerate()
        .filter(|(_, b)| **b == b'\n')
        .nth(line - 2)
        .map_or(0, |(i, _)| i + 1);
    (line_start + column).min(bytes.len())
}

impl ServerMessage {
    /// Canonical JSON text; floats are rounded to 3 decimals.
    pub fn encode(&self) -> Vec<u8> {
        encode_value(self)
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, DecodeError> {
        decode_value(bytes)
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            ServerMessage::Hello { .. } => "HELLO",
            ServerMessage::Frame { .. } => "FRAME",
            ServerMessage::LayerState { .. } => "LAYER_STATE",
            ServerMessage::Event { .. } => "EVENT",
            ServerMessage::Error { .. } => "ERROR",
            ServerMessage::End => "END",
        }
    }
}

impl ClientCommand {
    pub fn encode(&self) -> Vec<u8> {
        encode_value(self)
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, DecodeError> {
        decode_value(bytes)
    }
}
