use serde::{Deserialize, Serialize};

use crate::model::{BoxScore, CourtGeometry, GameEvent, Outcome, Point, Team, TrackingFrame, Zone, ZonedShotTable};

use super::{classify_zone, AnalyticsError};

/// How long the post-shot label stays on court.
pub const STATIC_LABEL_TTL_MS: i64 = 5000;
/// Percentages within this many points of the league average are neutral.
pub const HOT_EPSILON_PCT: f64 = 0.001;

/// Outcome label pinned at the shot location.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaticShotLabel {
    pub player_id: String,
    pub team: Team,
    pub loc: Point,
    pub outcome: Outcome,
    pub game_fg_pct: f64,
    pub season_fg_pct: f64,
    pub created_at_ms: i64,
    pub expires_at_ms: i64,
}

impl StaticShotLabel {
    pub fn is_live(&self, clock_ms: i64) -> bool {
        self.created_at_ms <= clock_ms && clock_ms < self.expires_at_ms
    }
}

/// Builds the post-shot label. `game_stats_after_shot` must already include
/// the shot itself.
pub fn static_shot_label(
    shot: &GameEvent,
    game_stats_after_shot: &BoxScore,
    season_fg_pct: f64,
) -> StaticShotLabel {
    StaticShotLabel {
        player_id: shot.player_id.clone(),
        team: shot.team,
        loc: shot.loc.unwrap_or_default(),
        outcome: shot.outcome,
        game_fg_pct: game_stats_after_shot.fg_pct().unwrap_or(0.0),
        season_fg_pct,
        created_at_ms: shot.t_ms,
        expires_at_ms: shot.t_ms + STATIC_LABEL_TTL_MS,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Hotness {
    Hot,
    Cold,
    Neutral,
}

impl Hotness {
    pub fn compare(pct: f64, reference: f64) -> Hotness {
        if pct > reference + HOT_EPSILON_PCT {
            Hotness::Hot
        } else if pct < reference - HOT_EPSILON_PCT {
            Hotness::Cold
        } else {
            Hotness::Neutral
        }
    }
}

/// Season percentage from the zone a player is standing in, compared to the
/// league. `zone_pct` is `None` when the player has no attempts there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicShotLabel {
    pub player_id: String,
    pub zone: Zone,
    pub zone_pct: Option<f64>,
    pub hot: Hotness,
}

pub fn dynamic_shot_label(
    frame: &TrackingFrame,
    player_id: &str,
    shots: &ZonedShotTable,
    hoop: Point,
    geom: &CourtGeometry,
) -> Result<DynamicShotLabel, AnalyticsError> {
    let player = frame
        .player(player_id)
        .ok_or_else(|| AnalyticsError::PlayerNotInFrame(player_id.to_string()))?;
    if !shots.contains_player(player_id) {
        return Err(AnalyticsError::PlayerNotInTable(player_id.to_string()));
    }
    let zone = classify_zone(player.pos(), hoop, geom)
        .map_err(|_| AnalyticsError::PlayerInBackcourt(player_id.to_string()))?;
    let zone_pct = shots.player_zone_pct(player_id, zone);
    let hot = zone_pct.map_or(Hotness::Neutral, |p| Hotness::compare(p, shots.league_pct(zone)));
    Ok(DynamicShotLabel { player_id: player_id.to_string(), zone, zone_pct, hot })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Action, BallPosition, PlayerPosition, ZoneCount};
    use std::collections::BTreeMap;

    fn shot(t_ms: i64, outcome: Outcome) -> GameEvent {
        GameEvent {
            t_ms,
            team: Team::Home,
            player_id: "H1".into(),
            action: Action::Shot2pt,
            outcome,
            loc: Some(Point::new(12.0, 20.0)),
        }
    }

    #[test]
    fn static_label_arithmetic() {
        // 2/5 before, makes this one -> 3/6.
        let after = BoxScore { fgm: 3, fga: 6, points: 6, ..Default::default() };
        let l = static_shot_label(&shot(1000, Outcome::Made), &after, 48.0);
        assert_eq!(l.outcome, Outcome::Made);
        assert_eq!(l.game_fg_pct, 50.0);
        assert_eq!(l.season_fg_pct, 48.0);
        assert_eq!(l.expires_at_ms, 6000);
        assert_eq!(l.expires_at_ms - l.created_at_ms, STATIC_LABEL_TTL_MS);
        assert_eq!(l.loc, Point::new(12.0, 20.0));

        let after = BoxScore { fga: 1, ..Default::default() };
        assert_eq!(static_shot_label(&shot(0, Outcome::Missed), &after, 40.0).game_fg_pct, 0.0);

        let after = BoxScore { fgm: 1, fga: 1, points: 2, ..Default::default() };
        assert_eq!(static_shot_label(&shot(0, Outcome::Made), &after, 40.0).game_fg_pct, 100.0);
    }

    #[test]
    fn ttl_window() {
        let l = static_shot_label(&shot(1000, Outcome::Made), &BoxScore::default(), 0.0);
        assert!(!l.is_live(999));
        assert!(l.is_live(1000));
        assert!(l.is_live(5960));
        assert!(!l.is_live(6000));
    }

    fn table(rim: ZoneCount) -> ZonedShotTable {
        let mut t = ZonedShotTable::default();
        t.players.insert("H1".into(), BTreeMap::from([(Zone::Rim, rim)]));
        for z in Zone::ALL {
            t.league.insert(z, 55.0);
        }
        t
    }

    fn frame(x: f64, y: f64) -> TrackingFrame {
        let mut players = vec![PlayerPosition { team: Team::Home, player_id: "H1".into(), x, y }];
        for i in 2..=5 {
            players.push(PlayerPosition { team: Team::Home, player_id: format!("H{i}"), x: 30.0, y: 5.0 * i as f64 });
        }
        for i in 1..=5 {
            players.push(PlayerPosition { team: Team::Away, player_id: format!("A{i}"), x: 20.0, y: 5.0 * i as f64 });
        }
        TrackingFrame { t_ms: 0, period: 1, game_clock_s: 0.0, ball: BallPosition::default(), players }
    }

    const HOOP: Point = Point::new(5.25, 25.0);

    #[test]
    fn dynamic_label_hot_cold_neutral() {
        let g = CourtGeometry::default();
        let t = table(ZoneCount { made: 60, attempts: 100 });
        let l = dynamic_shot_label(&frame(8.0, 25.0), "H1", &t, HOOP, &g).unwrap();
        assert_eq!((l.zone, l.zone_pct, l.hot), (Zone::Rim, Some(60.0), Hotness::Hot));

        let t = table(ZoneCount { made: 11, attempts: 20 });
        let l = dynamic_shot_label(&frame(8.0, 25.0), "H1", &t, HOOP, &g).unwrap();
        assert_eq!(l.hot, Hotness::Neutral);

        let t = table(ZoneCount { made: 10, attempts: 20 });
        let l = dynamic_shot_label(&frame(8.0, 25.0), "H1", &t, HOOP, &g).unwrap();
        assert_eq!(l.hot, Hotness::Cold);

        // No attempts from mid-range.
        let l = dynamic_shot_label(&frame(18.0, 25.0), "H1", &t, HOOP, &g).unwrap();
        assert_eq!((l.zone, l.zone_pct, l.hot), (Zone::MidLeft, None, Hotness::Neutral));
    }

    #[test]
    fn dynamic_label_errors() {
        let g = CourtGeometry::default();
        let t = table(ZoneCount { made: 1, attempts: 2 });
        assert_eq!(
            dynamic_shot_label(&frame(70.0, 25.0), "H1", &t, HOOP, &g),
            Err(AnalyticsError::PlayerInBackcourt("H1".into()))
        );
        assert_eq!(
            dynamic_shot_label(&frame(8.0, 25.0), "H2", &t, HOOP, &g),
            Err(AnalyticsError::PlayerNotInTable("H2".into()))
        );
    }
}
