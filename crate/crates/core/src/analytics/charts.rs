use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::{color_bin, BoxScore, ColorBin, GameEvent, LeagueAverages, Point, Zone, ZonedShotTable};

use super::AnalyticsError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotMarker {
    pub t_ms: i64,
    pub loc: Point,
    pub made: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotChartPayload {
    pub player_id: String,
    pub zone_bins: BTreeMap<Zone, ColorBin>,
    pub shot_markers: Vec<ShotMarker>,
    pub panel: BoxScore,
}

/// Season heat map by zone, this game's field-goal attempts, and the
/// player's running box score. Zones without season attempts are YELLOW.
pub fn shot_chart(
    player_id: &str,
    game_events_so_far: &[GameEvent],
    shots: &ZonedShotTable,
) -> Result<ShotChartPayload, AnalyticsError> {
    if !shots.contains_player(player_id) {
        return Err(AnalyticsError::PlayerNotInTable(player_id.to_string()));
    }
    let zone_bins = Zone::ALL
        .into_iter()
        .map(|z| {
            let bin = shots
                .player_zone_pct(player_id, z)
                .and_then(|pct| color_bin(pct - shots.league_pct(z)).ok())
                .unwrap_or(ColorBin::Yellow);
            (z, bin)
        })
        .collect();

    let mut panel = BoxScore::default();
    let mut shot_markers = Vec::new();
    for e in game_events_so_far.iter().filter(|e| e.player_id == player_id) {
        panel.apply(e);
        if let (true, Some(loc)) = (e.action.is_field_goal(), e.loc) {
            shot_markers.push(ShotMarker { t_ms: e.t_ms, loc, made: e.is_made() });
        }
    }
    Ok(ShotChartPayload { player_id: player_id.to_string(), zone_bins, shot_markers, panel })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Leader {
    Home,
    Away,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatRow {
    pub name: String,
    pub home_value: f64,
    pub away_value: f64,
    pub leader: Leader,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub home_bin: Option<ColorBin>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub away_bin: Option<ColorBin>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeamPanelPayload {
    pub rows: Vec<StatRow>,
}

fn leader(home: f64, away: f64, lower_is_better: bool) -> Leader {
    let (home, away) = if lower_is_better { (-home, -away) } else { (home, away) };
    if home > away {
        Leader::Home
    } else if away > home {
        Leader::Away
    } else {
        Leader::Tie
    }
}

fn counting_row(name: &str, home: u32, away: u32, lower_is_better: bool) -> StatRow {
    let (h, a) = (home as f64, away as f64);
    StatRow {
        name: name.to_string(),
        home_value: h,
        away_value: a,
        leader: leader(h, a, lower_is_better),
        home_bin: None,
        away_bin: None,
    }
}

/// A team with no attempts shows 0% and a neutral bin.
fn shooting_row(name: &str, home: Option<f64>, away: Option<f64>, league: f64) -> StatRow {
    let bin = |pct: Option<f64>| {
        pct.and_then(|p| color_bin(p - league).ok()).unwrap_or(ColorBin::Yellow)
    };
    let (h, a) = (home.unwrap_or(0.0), away.unwrap_or(0.0));
    StatRow {
        name: name.to_string(),
        home_value: h,
        away_value: a,
        leader: leader(h, a, false),
        home_bin: Some(bin(home)),
        away_bin: Some(bin(away)),
    }
}

pub fn team_panel(home: &BoxScore, away: &BoxScore, league: &LeagueAverages) -> TeamPanelPayload {
    TeamPanelPayload {
        rows: vec![
            counting_row("points", home.points, away.points, false),
            shooting_row("fg_pct", home.fg_pct(), away.fg_pct(), league.fg_pct),
            shooting_row("tp_pct", home.tp_pct(), away.tp_pct(), league.tp_pct),
            shooting_row("ft_pct", home.ft_pct(), away.ft_pct(), league.ft_pct),
            counting_row("rebounds", home.rebounds, away.rebounds, false),
            counting_row("assists", home.assists, away.assists, false),
            counting_row("blocks", home.blocks, away.blocks, false),
            counting_row("steals", home.steals, away.steals, false),
            counting_row("turnovers", home.turnovers, away.turnovers, true),
        ],
    }
}
