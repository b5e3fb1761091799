//! Per-frame spatial rules and stat derivations behind the five layers.
//!
//! Everything here is a pure function of its inputs.

mod charts;
mod defense;
mod hull;
mod labels;
mod offense;
mod possession;
mod zones;

use thiserror::Error;

use crate::model::{GameBoxScores, GameEvent};

pub use charts::{shot_chart, team_panel, Leader, ShotChartPayload, ShotMarker, StatRow, TeamPanelPayload};
pub use defense::{
    classify_defenders, strong_side, Connector, CourtSide, DefenseAssignment, BALL_DEFENDER_FT,
    HELPER_FT, PASSED_DEFENDER_FT,
};
pub use hull::{convex_hull, focus_area, point_in_convex_polygon, polygon_area, MIN_FOCUS_AREA_SQ_FT};
pub use labels::{
    dynamic_shot_label, static_shot_label, DynamicShotLabel, Hotness, StaticShotLabel,
    HOT_EPSILON_PCT, STATIC_LABEL_TTL_MS,
};
pub use offense::{
    ball_handler, offense_payload, open_space_radius, trails, OffensePayload, OffensePlayer,
    HANDLER_MAX_BALL_HEIGHT_FT, HANDLER_RADIUS_FT, MAX_OPEN_RADIUS_FT, TRAIL_SAMPLE_MS,
    TRAIL_WINDOW_MS,
};
pub use possession::{possession, possession_state, possession_transition, PossessionState};
pub use zones::classify_zone;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("point ({x}, {y}) is not in the half-court of the given hoop")]
    PointInWrongHalf { x: f64, y: f64 },
    #[error("ball handler {0} is not in the frame")]
    HandlerNotInFrame(String),
    #[error("player {0} is not in the frame")]
    PlayerNotInFrame(String),
    #[error("player {0} is in the backcourt")]
    PlayerInBackcourt(String),
    #[error("player {0} has no row in the shot table")]
    PlayerNotInTable(String),
}

/// Tallies every event with `t_ms <= up_to_t`. `events` must be time-ordered.
pub fn accumulate_box_score(events: &[GameEvent], up_to_t: i64) -> GameBoxScores {
    let mut box_scores = GameBoxScores::default();
    for e in events.iter().take_while(|e| e.t_ms <= up_to_t) {
        box_scores.apply(e);
    }
    box_scores
}
