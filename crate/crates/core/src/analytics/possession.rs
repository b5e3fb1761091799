use serde::{Deserialize, Serialize};

use crate::model::{Action, GameEvent, Team, TrackingFrame};

use super::offense::{frame_index_at, HANDLER_RADIUS_FT};

/// Frames of uninterrupted proximity needed before the tracking fallback
/// assigns possession.
const SUSTAINED_FRAMES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PossessionState {
    pub team: Team,
    /// When this possession began.
    pub since_ms: i64,
}

/// Team that gains the ball because of `event`, if the event changes or
/// re-establishes possession.
pub fn possession_transition(event: &GameEvent) -> Option<Team> {
    match event.action {
        Action::Rebound | Action::Steal | Action::PeriodStart => Some(event.team),
        Action::Turnover => Some(event.team.other()),
        Action::Shot2pt | Action::Shot3pt | Action::FreeThrow if event.is_made() => {
            Some(event.team.other())
        }
        _ => None,
    }
}

pub fn possession(events: &[GameEvent], tracking: &[TrackingFrame], t: i64) -> Option<Team> {
    possession_state(events, tracking, t).map(|s| s.team)
}

/// Possession at `t`: the latest possession-changing event at or before `t`,
/// or, before any such event, the team whose player has been nearest the
/// ball (within 3 ft) for the last three frames.
pub fn possession_state(
    events: &[GameEvent],
    tracking: &[TrackingFrame],
    t: i64,
) -> Option<PossessionState> {
    events
        .iter()
        .take_while(|e| e.t_ms <= t)
        .filter_map(|e| possession_transition(e).map(|team| PossessionState { team, since_ms: e.t_ms }))
        .last()
        .or_else(|| proximity_possession(tracking, t))
}

fn nearest_team(frame: &TrackingFrame) -> Option<Team> {
    let ball = frame.ball.ground();
    frame
        .players
        .iter()
        .map(|p| (p.pos().dist(ball), p))
        .filter(|(d, _)| *d <= HANDLER_RADIUS_FT)
        .min_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.player_id.cmp(&b.1.player_id)))
        .map(|(_, p)| p.team)
}

pub(crate) fn proximity_possession(tracking: &[TrackingFrame], t: i64) -> Option<PossessionState> {
    let idx = frame_index_at(tracking, t)?;
    let team = nearest_team(&tracking[idx])?;
    let streak = tracking[..=idx]
        .iter()
        .rev()
        .take_while(|f| nearest_team(f) == Some(team))
        .count();
    (streak >= SUSTAINED_FRAMES).then(|| PossessionState {
        team,
        since_ms: tracking[idx + 1 - streak].t_ms,
    })
}
