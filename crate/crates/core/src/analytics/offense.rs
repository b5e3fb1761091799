use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::{Point, Team, TrackingFrame};

use super::AnalyticsError;

/// The handler must be this close to the ball's floor projection.
pub const HANDLER_RADIUS_FT: f64 = 3.0;
/// Above this the ball is in flight and nobody handles it.
pub const HANDLER_MAX_BALL_HEIGHT_FT: f64 = 10.0;
pub const MAX_OPEN_RADIUS_FT: f64 = 8.0;
pub const TRAIL_WINDOW_MS: i64 = 6000;
/// 5 Hz.
pub const TRAIL_SAMPLE_MS: i64 = 200;

/// The offense player holding the ball, if any. Ties go to the smaller id.
pub fn ball_handler(frame: &TrackingFrame, offense: Team) -> Option<String> {
    if frame.ball.z > HANDLER_MAX_BALL_HEIGHT_FT {
        return None;
    }
    let ball = frame.ball.ground();
    frame
        .team_players(offense)
        .map(|p| (p.pos().dist(ball), &p.player_id))
        .filter(|(d, _)| *d <= HANDLER_RADIUS_FT)
        .min_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)))
        .map(|(_, id)| id.clone())
}

/// Radius of the open-space circle: half the distance to the nearest
/// opponent, capped at 8 ft.
pub fn open_space_radius(frame: &TrackingFrame, player_id: &str) -> Result<f64, AnalyticsError> {
    let player = frame
        .player(player_id)
        .ok_or_else(|| AnalyticsError::PlayerNotInFrame(player_id.to_string()))?;
    let nearest = frame
        .team_players(player.team.other())
        .map(|d| d.pos().dist(player.pos()))
        .min_by(f64::total_cmp);
    Ok(nearest.map_or(MAX_OPEN_RADIUS_FT, |d| (d / 2.0).min(MAX_OPEN_RADIUS_FT)))
}

/// Index of the latest frame at or before `t_ms`.
pub(crate) fn frame_index_at(tracking: &[TrackingFrame], t_ms: i64) -> Option<usize> {
    tracking.partition_point(|f| f.t_ms <= t_ms).checked_sub(1)
}

/// Movement history of each offense player over the current possession,
/// capped at the last 6 s and sampled every 200 ms ending at `t_now`.
/// Positions hold between frames; samples before the first frame use it.
pub fn trails(
    tracking: &[TrackingFrame],
    t_now: i64,
    possession_start_ms: i64,
    offense: Team,
) -> BTreeMap<String, Vec<Point>> {
    let mut out = BTreeMap::new();
    let Some(now_idx) = frame_index_at(tracking, t_now) else {
        return out;
    };
    let window_start = possession_start_ms.max(t_now - TRAIL_WINDOW_MS);
    let mut sample_times: Vec<i64> = (0..)
        .map(|k| t_now - k * TRAIL_SAMPLE_MS)
        .take_while(|&s| s >= window_start)
        .collect();
    sample_times.reverse();

    for p in tracking[now_idx].team_players(offense) {
        out.insert(p.player_id.clone(), Vec::with_capacity(sample_times.len()));
    }
    for s in sample_times {
        let frame = &tracking[frame_index_at(tracking, s).unwrap_or(0)];
        for (id, trail) in out.iter_mut() {
            if let Some(p) = frame.player(id) {
                trail.push(p.pos());
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OffensePlayer {
    pub player_id: String,
    pub trail: Vec<Point>,
    pub open_radius_ft: f64,
    pub is_handler: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OffensePayload {
    pub players: Vec<OffensePlayer>,
}

/// Trails plus open-space circles for every offense player in the frame at
/// `t_now`.
pub fn offense_payload(
    tracking: &[TrackingFrame],
    t_now: i64,
    possession_start_ms: i64,
    offense: Team,
    handler: Option<&str>,
) -> OffensePayload {
    let Some(idx) = frame_index_at(tracking, t_now) else {
        return OffensePayload::default();
    };
    let frame = &tracking[idx];
    let players = trails(tracking, t_now, possession_start_ms, offense)
        .into_iter()
        .map(|(player_id, trail)| OffensePlayer {
            open_radius_ft: open_space_radius(frame, &player_id).unwrap_or(MAX_OPEN_RADIUS_FT),
            is_handler: handler == Some(player_id.as_str()),
            player_id,
            trail,
        })
        .collect();
    OffensePayload { players }
}
