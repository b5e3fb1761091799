use std::io::Cursor;

use courtcast_core::fixture::{demo_game, demo_meta, player_ids, FixtureSpec};
use courtcast_core::ingest::{
    load_dataset, parse_events, parse_shot_table, parse_tracking, validate_dataset, write_dataset,
    write_events, write_shot_table, write_tracking, IngestError,
};
use courtcast_core::model::{
    Action, BallPosition, GameEvent, Outcome, PlayerPosition, Point, Team, TrackingFrame,
};
use proptest::prelude::*;

fn small() -> courtcast_core::ingest::ValidatedDataset {
    demo_game(FixtureSpec { duration_ms: 3000, ..Default::default() })
}

fn shot_by(player: &str, t_ms: i64, loc: Point) -> GameEvent {
    GameEvent {
        t_ms,
        team: Team::Home,
        player_id: player.into(),
        action: Action::Shot2pt,
        outcome: Outcome::Missed,
        loc: Some(loc),
    }
}

fn revalidate(events: Vec<GameEvent>) -> Result<(), IngestError> {
    let d = small();
    validate_dataset(d.tracking, events, d.shots, d.meta).map(|_| ())
}

#[test]
fn cross_checks() {
    assert!(revalidate(vec![shot_by("H2", 1000, Point::new(10.0, 20.0))]).is_ok());

    let e = revalidate(vec![shot_by("X99", 1000, Point::new(10.0, 20.0))]).unwrap_err();
    assert_eq!(e.code(), "UNKNOWN_PLAYER");

    let e = revalidate(vec![shot_by("H2", 1000, Point::new(95.0, 25.0))]).unwrap_err();
    assert_eq!(e.code(), "SHOT_OUT_OF_BOUNDS");

    // Tracking spans [0, 2960]; the tolerance is 2000 ms either side.
    assert!(revalidate(vec![shot_by("H2", 4960, Point::new(10.0, 20.0))]).is_ok());
    let e = revalidate(vec![shot_by("H2", 4961, Point::new(10.0, 20.0))]).unwrap_err();
    assert_eq!(e.code(), "EVENT_OUT_OF_TIMESPAN");
    let e = revalidate(vec![shot_by("H2", -2001, Point::new(10.0, 20.0))]).unwrap_err();
    assert_eq!(e.code(), "EVENT_OUT_OF_TIMESPAN");
}

#[test]
fn manifest_paths_are_relative_to_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = small();
    let manifest = write_dataset(&d, &dir.path().join("nested")).unwrap();
    assert_eq!(load_dataset(&manifest).unwrap(), d);

    std::fs::remove_file(manifest.with_file_name("tracking.jsonl")).unwrap();
    let e = load_dataset(&manifest).unwrap_err();
    assert_eq!(e.code(), "IO_ERROR");
    assert!(e.to_string().contains("tracking.jsonl"));
}

#[test]
fn wire_field_names() {
    let d = small();
    let line = write_tracking(&d.tracking[..1]);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert!(v["ball"].is_array() && v["ball"].as_array().unwrap().len() == 3);
    assert!(v["players"][0]["id"].is_string());
    assert!(v["t_ms"].is_i64());
    let ev = write_events(&[shot_by("H2", 40, Point::new(2.0, 2.0))]);
    let v: serde_json::Value = serde_json::from_str(ev.trim()).unwrap();
    assert_eq!(v["player"], "H2");
    assert_eq!(v["loc"], serde_json::json!([2.0, 2.0]));
}

fn coord(max: f64) -> impl Strategy<Value = f64> {
    (0.0..=max).prop_filter("finite", |v: &f64| v.is_finite())
}

fn arb_frames() -> impl Strategy<Value = Vec<TrackingFrame>> {
    let frame = (
        prop::collection::vec((coord(94.0), coord(50.0)), 10),
        (coord(94.0), coord(50.0), 0.0..20.0f64),
        1u8..=2,
        0.0..720.0f64,
        1i64..200,
    );
    prop::collection::vec(frame, 1..30).prop_map(|raw| {
        let mut t = 0;
        raw.into_iter()
            .map(|(pos, (bx, by, bz), period, clock, dt)| {
                t += dt;
                let ids = player_ids(Team::Home).into_iter().chain(player_ids(Team::Away));
                let players = ids
                    .zip(pos)
                    .map(|(id, (x, y))| PlayerPosition {
                        team: if id.starts_with('H') { Team::Home } else { Team::Away },
                        player_id: id,
                        x,
                        y,
                    })
                    .collect();
                TrackingFrame {
                    t_ms: t,
                    period,
                    game_clock_s: clock,
                    ball: BallPosition { x: bx, y: by, z: bz },
                    players,
                }
            })
            .collect()
    })
}

fn arb_events(last_ms: i64) -> impl Strategy<Value = Vec<GameEvent>> {
    let actions = prop::sample::select(Action::ALL.to_vec());
    let ev = (0..=last_ms, any::<bool>(), 1usize..=5, actions, any::<bool>(), coord(94.0), coord(50.0));
    prop::collection::vec(ev, 0..20).prop_map(|raw| {
        let mut events: Vec<GameEvent> = raw
            .into_iter()
            .map(|(t_ms, home, n, action, made, x, y)| {
                let team = if home { Team::Home } else { Team::Away };
                let outcome = match (action.has_outcome(), made) {
                    (false, _) => Outcome::None,
                    (true, true) => Outcome::Made,
                    (true, false) => Outcome::Missed,
                };
                let player_id = if action.is_period_marker() {
                    String::new()
                } else {
                    format!("{}{n}", if home { 'H' } else { 'A' })
                };
                let loc = action.is_field_goal().then_some(Point::new(x, y));
                GameEvent { t_ms, team, player_id, action, outcome, loc }
            })
            .collect();
        events.sort_by_key(|e| e.t_ms);
        events
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_formats_round_trip(
        (frames, events) in arb_frames().prop_flat_map(|f| {
            let last = f.last().unwrap().t_ms;
            (Just(f), arb_events(last))
        }),
        seed in 0u64..1000,
    ) {
        let shots = demo_game(FixtureSpec { duration_ms: 200, seed, ..Default::default() }).shots;

        let parsed_frames = parse_tracking(Cursor::new(write_tracking(&frames))).unwrap();
        prop_assert_eq!(&parsed_frames, &frames);
        let parsed_events = parse_events(Cursor::new(write_events(&events))).unwrap();
        prop_assert_eq!(&parsed_events, &events);
        let parsed_shots = parse_shot_table(&write_shot_table(&shots)).unwrap();
        prop_assert_eq!(&parsed_shots, &shots);

        let d = validate_dataset(frames, events, shots, demo_meta(25)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let manifest = write_dataset(&d, dir.path()).unwrap();
        prop_assert_eq!(load_dataset(&manifest).unwrap(), d);
    }

    /// Any input either parses or fails with a line-numbered diagnostic.
    #[test]
    fn parsing_is_total(lines in prop::collection::vec("[ -~]{0,60}", 0..6)) {
        let text = lines.join("\n");
        for result in [
            parse_tracking(Cursor::new(text.clone())).map(|_| ()),
            parse_events(Cursor::new(text.clone())).map(|_| ()),
        ] {
            if let Err(e) = result {
                prop_assert!(e.to_string().contains("line "), "{}", e);
            }
        }
        let _ = parse_shot_table(&text);
    }
}
