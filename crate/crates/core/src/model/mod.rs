//! Domain types shared by every stage of the replay pipeline.
//!
//! All distances are in feet and all times in integer milliseconds since the
//! start of the game.

mod box_score;
mod color;
mod court;
mod layers;
mod shots;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use box_score::{BoxScore, GameBoxScores};
pub use color::{color_bin, ColorBin};
pub use court::{CourtGeometry, HoopEnd, Zone};
pub use layers::{describe_layers, ContextId, LayerDescriptor, LayerId, Mark};
pub use shots::{LeagueAverages, ZoneCount, ZonedShotTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("value must be finite, got {0}")]
    NonFinite(f64),
    #[error("unknown layer `{0}`")]
    UnknownLayer(String),
    #[error("unknown zone `{0}`")]
    UnknownZone(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Team {
    Home,
    Away,
}

impl Team {
    pub fn other(self) -> Team {
        match self {
            Team::Home => Team::Away,
            Team::Away => Team::Home,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Team::Home => "HOME",
            Team::Away => "AWAY",
        }
    }
}

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A position on the court floor, in feet.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BallPosition {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BallPosition {
    pub fn ground(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerPosition {
    pub team: Team,
    pub player_id: String,
    pub x: f64,
    pub y: f64,
}

impl PlayerPosition {
    pub fn pos(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// One sample of the tracking feed: ten players and the ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackingFrame {
    pub t_ms: i64,
    pub period: u8,
    pub game_clock_s: f64,
    pub ball: BallPosition,
    pub players: Vec<PlayerPosition>,
}

impl TrackingFrame {
    pub fn player(&self, player_id: &str) -> Option<&PlayerPosition> {
        self.players.iter().find(|p| p.player_id == player_id)
    }

    pub fn team_players(&self, team: Team) -> impl Iterator<Item = &PlayerPosition> {
        self.players.iter().filter(move |p| p.team == team)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Action {
    #[serde(rename = "SHOT_2PT")]
    Shot2pt,
    #[serde(rename = "SHOT_3PT")]
    Shot3pt,
    FreeThrow,
    Rebound,
    Assist,
    Block,
    Steal,
    Turnover,
    Foul,
    Substitution,
    PeriodStart,
    PeriodEnd,
}

impl Action {
    pub const ALL: [Action; 12] = [
        Action::Shot2pt,
        Action::Shot3pt,
        Action::FreeThrow,
        Action::Rebound,
        Action::Assist,
        Action::Block,
        Action::Steal,
        Action::Turnover,
        Action::Foul,
        Action::Substitution,
        Action::PeriodStart,
        Action::PeriodEnd,
    ];

    /// Field-goal attempts (free throws excluded).
    pub fn is_field_goal(self) -> bool {
        matches!(self, Action::Shot2pt | Action::Shot3pt)
    }

    /// Actions that must carry a MADE/MISSED outcome.
    pub fn has_outcome(self) -> bool {
        matches!(self, Action::Shot2pt | Action::Shot3pt | Action::FreeThrow)
    }

    pub fn is_period_marker(self) -> bool {
        matches!(self, Action::PeriodStart | Action::PeriodEnd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Made,
    Missed,
    None,
}

/// A play-by-play record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameEvent {
    pub t_ms: i64,
    pub team: Team,
    pub player_id: String,
    pub action: Action,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loc: Option<Point>,
}

impl GameEvent {
    pub fn is_made(&self) -> bool {
        self.outcome == Outcome::Made
    }
}

impl FromStr for Team {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "HOME" => Ok(Team::Home),
            "AWAY" => Ok(Team::Away),
            other => Err(format!("unknown team `{other}`")),
        }
    }
}
