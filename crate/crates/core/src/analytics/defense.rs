use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::{CourtGeometry, Point, TrackingFrame};

use super::{focus_area, AnalyticsError};

/// Defender within this distance of the handler is the ball defender.
pub const BALL_DEFENDER_FT: f64 = 6.0;
/// Ball-defender distance once the handler has beaten the defender.
pub const PASSED_DEFENDER_FT: f64 = 3.0;
/// Helpers: within twice the ball-defender distance.
pub const HELPER_FT: f64 = 12.0;

/// Width-wise half of the court.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CourtSide {
    LowY,
    HighY,
}

/// The side(s) of the court the handler is on. A handler exactly on the
/// center line is on both.
pub fn strong_side(handler: Point, geom: &CourtGeometry) -> BTreeSet<CourtSide> {
    let mid = geom.mid_y();
    let mut sides = BTreeSet::new();
    if handler.y <= mid {
        sides.insert(CourtSide::LowY);
    }
    if handler.y >= mid {
        sides.insert(CourtSide::HighY);
    }
    sides
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub defender_id: String,
    pub handler_id: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DefenseAssignment {
    pub handler_id: String,
    pub ball_defenders: BTreeSet<String>,
    pub helpers: BTreeSet<String>,
    pub connector_lines: Vec<Connector>,
    pub focus_area: Option<Vec<Point>>,
}

/// Labels each defender relative to the ball handler.
///
/// A defender is "passed" when farther from the attacked hoop than the
/// handler; a passed defender only counts as the ball defender inside the
/// tighter 3 ft radius. Helpers are everyone else within 12 ft. The focus
/// area is the hull of the ball defenders plus the strong-side helpers.
pub fn classify_defenders(
    frame: &TrackingFrame,
    handler_id: &str,
    hoop: Point,
    geom: &CourtGeometry,
) -> Result<DefenseAssignment, AnalyticsError> {
    let handler = frame
        .player(handler_id)
        .ok_or_else(|| AnalyticsError::HandlerNotInFrame(handler_id.to_string()))?;
    let hpos = handler.pos();
    let handler_to_hoop = hpos.dist(hoop);
    let strong = strong_side(hpos, geom);

    let mut out = DefenseAssignment { handler_id: handler_id.to_string(), ..Default::default() };
    let mut key_points = Vec::new();
    for d in frame.team_players(handler.team.other()) {
        let dpos = d.pos();
        let r = dpos.dist(hpos);
        let passed = dpos.dist(hoop) > handler_to_hoop;
        let limit = if passed { PASSED_DEFENDER_FT } else { BALL_DEFENDER_FT };
        if r <= limit {
            out.ball_defenders.insert(d.player_id.clone());
            out.connector_lines.push(Connector {
                defender_id: d.player_id.clone(),
                handler_id: handler_id.to_string(),
            });
            key_points.push(dpos);
        } else if r <= HELPER_FT {
            out.helpers.insert(d.player_id.clone());
            if !strong.is_disjoint(&strong_side(dpos, geom)) {
                key_points.push(dpos);
            }
        }
    }
    if key_points.len() >= 3 {
        out.focus_area = focus_area(&key_points);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BallPosition, PlayerPosition, Team};

    const HOOP: Point = Point::new(5.25, 25.0);

    fn frame(defenders: &[(f64, f64)]) -> TrackingFrame {
        let mut players = vec![PlayerPosition { team: Team::Home, player_id: "H1".into(), x: 20.0, y: 25.0 }];
        for i in 2..=5 {
            players.push(PlayerPosition { team: Team::Home, player_id: format!("H{i}"), x: 40.0, y: 5.0 * i as f64 });
        }
        for (i, &(x, y)) in defenders.iter().enumerate() {
            players.push(PlayerPosition { team: Team::Away, player_id: format!("A{}", i + 1), x, y });
        }
        TrackingFrame {
            t_ms: 0,
            period: 1,
            game_clock_s: 700.0,
            ball: BallPosition { x: 20.5, y: 25.0, z: 4.0 },
            players,
        }
    }

    fn classify(defenders: &[(f64, f64)]) -> DefenseAssignment {
        classify_defenders(&frame(defenders), "H1", HOOP, &CourtGeometry::default()).unwrap()
    }

    fn set(ids: &[&str]) -> BTreeSet<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ball_defender_helper_and_passed() {
        let far = (80.0, 45.0);
        // Between the handler and the hoop: not passed, r = 4 <= 6.
        let a = classify(&[(16.0, 25.0), far, far, far, far]);
        assert_eq!(a.ball_defenders, set(&["A1"]));
        assert_eq!(a.connector_lines, vec![Connector { defender_id: "A1".into(), handler_id: "H1".into() }]);

        let a = classify(&[(30.0, 25.0), far, far, far, far]);
        assert!(a.ball_defenders.is_empty());
        assert_eq!(a.helpers, set(&["A1"]));

        // 20.75 ft from the hoop vs the handler's 14.75: passed, so 6 ft is too far.
        let a = classify(&[(26.0, 25.0), far, far, far, far]);
        assert!(a.ball_defenders.is_empty());
        assert_eq!(a.helpers, set(&["A1"]));

        // (24, 25) is also behind the handler (18.75 > 14.75), so r = 4 only makes a helper.
        let a = classify(&[(24.0, 25.0), far, far, far, far]);
        assert!(a.ball_defenders.is_empty());
        assert_eq!(a.helpers, set(&["A1"]));

        let a = classify(&[(22.5, 25.0), far, far, far, far]);
        assert_eq!(a.ball_defenders, set(&["A1"]));
    }

    #[test]
    fn nobody_close() {
        let far = (80.0, 45.0);
        let a = classify(&[far, far, far, far, far]);
        assert!(a.ball_defenders.is_empty() && a.helpers.is_empty() && a.connector_lines.is_empty());
        assert_eq!(a.focus_area, None);
    }

    #[test]
    fn focus_area_uses_strong_side() {
        // Handler at y = 25 so both sides are strong.
        let a = classify(&[(17.0, 25.0), (18.0, 32.0), (25.0, 30.0), (80.0, 45.0), (80.0, 5.0)]);
        assert_eq!(a.ball_defenders, set(&["A1"]));
        assert_eq!(a.helpers, set(&["A2", "A3"]));
        assert_eq!(a.focus_area.as_ref().map(Vec::len), Some(3));
    }

    #[test]
    fn weak_side_helpers_excluded_from_focus() {
        let mut f = frame(&[(17.0, 30.0), (20.0, 36.0), (26.0, 20.0), (22.0, 19.0), (80.0, 5.0)]);
        f.players[0].y = 30.0;
        let a = classify_defenders(&f, "H1", HOOP, &CourtGeometry::default()).unwrap();
        // A3/A4 are helpers on the low-y side; only A1 + A2 are strong-side keys.
        assert_eq!(a.helpers, set(&["A2", "A3", "A4"]));
        assert_eq!(a.focus_area, None);
    }

    #[test]
    fn missing_handler() {
        let err = classify_defenders(&frame(&[(1.0, 1.0); 5]), "H9", HOOP, &CourtGeometry::default());
        assert_eq!(err, Err(AnalyticsError::HandlerNotInFrame("H9".into())));
    }

    #[test]
    fn strong_side_sets() {
        let g = CourtGeometry::default();
        assert_eq!(strong_side(Point::new(30.0, 30.0), &g), [CourtSide::HighY].into());
        assert_eq!(strong_side(Point::new(30.0, 10.0), &g), [CourtSide::LowY].into());
        assert_eq!(strong_side(Point::new(30.0, 25.0), &g), [CourtSide::LowY, CourtSide::HighY].into());
    }
}
