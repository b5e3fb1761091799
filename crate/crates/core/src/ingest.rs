//! Dataset files: parsing, canonical writing and cross-validation.
//!
//! Four files make up a game:
//!
//! * tracking: JSONL, one frame per line
//!   `{"t_ms":0,"period":1,"game_clock_s":720.0,"ball":[x,y,z],"players":[{"team":"HOME","id":"H1","x":..,"y":..}, ..]}`
//! * events: JSONL, `{"t_ms":..,"team":"HOME","player":"H1","action":"SHOT_2PT","outcome":"MADE","loc":[x,y]}`
//! * zoned shot table: one JSON document
//!   `{"players":{"H1":{"RIM":{"made":120,"att":200}}},"league":{"RIM":60.5, ..}}`
//! * manifest: one JSON document naming the three files plus game metadata.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::io::{self, BufRead};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    Action, BallPosition, CourtGeometry, GameEvent, HoopEnd, LeagueAverages, Outcome,
    PlayerPosition, Point, Team, TrackingFrame, Zone, ZoneCount, ZonedShotTable,
};

/// Allowed clock drift between the event feed and the tracking feed.
pub const EVENT_SPAN_TOLERANCE_MS: i64 = 2000;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{source_name} line {line}: malformed record: {reason}")]
    MalformedRecord { source_name: &'static str, line: usize, reason: String },
    #[error("tracking line {line}: t_ms {t_ms} does not increase (previous {prev_ms})")]
    NonMonotonicTime { line: usize, prev_ms: i64, t_ms: i64 },
    #[error("tracking line {line}: expected 5 HOME and 5 AWAY players, found {home} HOME and {away} AWAY")]
    WrongPlayerCount { line: usize, home: usize, away: usize },
    #[error("events line {line}: {action:?} cannot have outcome {outcome:?}")]
    IllegalOutcome { line: usize, action: Action, outcome: Outcome },
    #[error("events line {line}: {action:?} has no shot location")]
    MissingShotLocation { line: usize, action: Action },
    #[error("shot table: player {player} zone {zone}: made {made} exceeds attempts {attempts}")]
    MadeExceedsAttempts { player: String, zone: Zone, made: u32, attempts: u32 },
    #[error("shot table: league average missing for zone {0}")]
    MissingLeagueZone(Zone),
    #[error("event at t_ms {t_ms} names player {player} who never appears in tracking")]
    UnknownPlayer { player: String, t_ms: i64 },
    #[error("event at t_ms {t_ms} lies outside the tracking span [{first_ms}, {last_ms}] ± {EVENT_SPAN_TOLERANCE_MS} ms")]
    EventOutOfTimespan { t_ms: i64, first_ms: i64, last_ms: i64 },
    #[error("shot at t_ms {t_ms} by {player} has location ({x}, {y}) outside the court")]
    ShotOutOfBounds { t_ms: i64, player: String, x: f64, y: f64 },
    #[error("manifest: {0}")]
    InvalidManifest(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl IngestError {
    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            IngestError::MalformedRecord { .. } => "MALFORMED_RECORD",
            IngestError::NonMonotonicTime { .. } => "NON_MONOTONIC_TIME",
            IngestError::WrongPlayerCount { .. } => "WRONG_PLAYER_COUNT",
            IngestError::IllegalOutcome { .. } => "ILLEGAL_OUTCOME",
            IngestError::MissingShotLocation { .. } => "MISSING_SHOT_LOCATION",
            IngestError::MadeExceedsAttempts { .. } => "MADE_EXCEEDS_ATTEMPTS",
            IngestError::MissingLeagueZone(_) => "MISSING_LEAGUE_ZONE",
            IngestError::UnknownPlayer { .. } => "UNKNOWN_PLAYER",
            IngestError::EventOutOfTimespan { .. } => "EVENT_OUT_OF_TIMESPAN",
            IngestError::ShotOutOfBounds { .. } => "SHOT_OUT_OF_BOUNDS",
            IngestError::InvalidManifest(_) => "INVALID_MANIFEST",
            IngestError::Io { .. } => "IO_ERROR",
        }
    }
}

// ---------------------------------------------------------------------------
// Manifest

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeamColors {
    pub home: String,
    pub away: String,
}

/// Game-level metadata carried alongside the data files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameMeta {
    pub home_team: String,
    pub away_team: String,
    pub team_colors: TeamColors,
    /// Basket the HOME team attacks in each period; AWAY attacks the other.
    pub attacking_hoop_by_period: BTreeMap<u8, HoopEnd>,
    pub frame_rate_hz: f64,
    #[serde(default)]
    pub geometry: CourtGeometry,
    #[serde(default)]
    pub league_averages: LeagueAverages,
}

impl GameMeta {
    pub fn attacking_hoop(&self, team: Team, period: u8) -> Option<HoopEnd> {
        let home = *self.attacking_hoop_by_period.get(&period)?;
        Some(match team {
            Team::Home => home,
            Team::Away => home.opposite(),
        })
    }

    pub fn team_color(&self, team: Team) -> &str {
        match team {
            Team::Home => &self.team_colors.home,
            Team::Away => &self.team_colors.away,
        }
    }

    pub fn team_name(&self, team: Team) -> &str {
        match team {
            Team::Home => &self.home_team,
            Team::Away => &self.away_team,
        }
    }

    fn check(&self) -> Result<(), IngestError> {
        let bad = |m: String| Err(IngestError::InvalidManifest(m));
        for color in [&self.team_colors.home, &self.team_colors.away] {
            if !is_hex_color(color) {
                return bad(format!("team color `{color}` is not #RRGGBB"));
            }
        }
        if self.team_colors.home.eq_ignore_ascii_case(&self.team_colors.away) {
            return bad("team colors must differ".into());
        }
        if !(self.frame_rate_hz.is_finite() && self.frame_rate_hz > 0.0) {
            return bad(format!("frame_rate_hz must be positive, got {}", self.frame_rate_hz));
        }
        if !self.geometry.is_consistent() {
            return bad("court geometry violates rim < corner three < arc or hoop symmetry".into());
        }
        if self.attacking_hoop_by_period.is_empty() {
            return bad("attacking_hoop_by_period is empty".into());
        }
        Ok(())
    }
}

fn is_hex_color(s: &str) -> bool {
    s.len() == 7 && s.starts_with('#') && s[1..].chars().all(|c| c.is_ascii_hexdigit())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub tracking: PathBuf,
    pub events: PathBuf,
    pub shot_table: PathBuf,
    pub game: GameMeta,
}

impl DatasetManifest {
    pub fn parse(text: &str) -> Result<Self, IngestError> {
        let manifest: DatasetManifest = serde_json::from_str(text)
            .map_err(|e| IngestError::InvalidManifest(e.to_string()))?;
        manifest.game.check()?;
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self, IngestError> {
        Self::parse(&read(path)?)
    }
}

// ---------------------------------------------------------------------------
// Validated dataset

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidatedDataset {
    pub tracking: Vec<TrackingFrame>,
    pub events: Vec<GameEvent>,
    pub shots: ZonedShotTable,
    pub meta: GameMeta,
}

impl ValidatedDataset {
    pub fn geometry(&self) -> &CourtGeometry {
        &self.meta.geometry
    }

    pub fn first_t_ms(&self) -> Option<i64> {
        self.tracking.first().map(|f| f.t_ms)
    }

    pub fn last_t_ms(&self) -> Option<i64> {
        self.tracking.last().map(|f| f.t_ms)
    }

    /// Hoop center the given team shoots at during `period`.
    pub fn attacking_hoop(&self, team: Team, period: u8) -> Option<Point> {
        self.meta
            .attacking_hoop(team, period)
            .map(|end| self.meta.geometry.hoop_center(end))
    }
}

/// Reads the manifest and the three files it names (paths relative to the
/// manifest's directory), then cross-validates them.
pub fn load_dataset(manifest_path: &Path) -> Result<ValidatedDataset, IngestError> {
    let manifest = DatasetManifest::load(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let open = |p: &Path| -> Result<io::BufReader<fs::File>, IngestError> {
        let path = base.join(p);
        fs::File::open(&path)
            .map(io::BufReader::new)
            .map_err(|source| IngestError::Io { path, source })
    };
    let tracking = parse_tracking_with(open(&manifest.tracking)?, &manifest.game.geometry)?;
    let events = parse_events(open(&manifest.events)?)?;
    let shots = parse_shot_table(&read(&base.join(&manifest.shot_table))?)?;
    validate_dataset(tracking, events, shots, manifest.game)
}

fn read(path: &Path) -> Result<String, IngestError> {
    fs::read_to_string(path).map_err(|source| IngestError::Io { path: path.to_path_buf(), source })
}

pub fn validate_dataset(
    tracking: Vec<TrackingFrame>,
    events: Vec<GameEvent>,
    shots: ZonedShotTable,
    meta: GameMeta,
) -> Result<ValidatedDataset, IngestError> {
    meta.check()?;
    let periods: BTreeSet<u8> = tracking.iter().map(|f| f.period).collect();
    if let Some(p) = periods.iter().find(|p| !meta.attacking_hoop_by_period.contains_key(p)) {
        return Err(IngestError::InvalidManifest(format!(
            "attacking_hoop_by_period has no entry for period {p}"
        )));
    }

    let known: HashSet<&str> = tracking
        .iter()
        .flat_map(|f| f.players.iter().map(|p| p.player_id.as_str()))
        .collect();
    let span = tracking.first().zip(tracking.last()).map(|(a, b)| (a.t_ms, b.t_ms));
    let geom = &meta.geometry;

    for e in &events {
        if !e.action.is_period_marker() && !known.contains(e.player_id.as_str()) {
            return Err(IngestError::UnknownPlayer { player: e.player_id.clone(), t_ms: e.t_ms });
        }
        let (first_ms, last_ms) = span.unwrap_or((0, 0));
        let in_span = span.is_some()
            && e.t_ms >= first_ms - EVENT_SPAN_TOLERANCE_MS
            && e.t_ms <= last_ms + EVENT_SPAN_TOLERANCE_MS;
        if !in_span {
            return Err(IngestError::EventOutOfTimespan { t_ms: e.t_ms, first_ms, last_ms });
        }
        if let (true, Some(loc)) = (e.action.is_field_goal(), e.loc) {
            if !geom.contains(loc) {
                return Err(IngestError::ShotOutOfBounds {
                    t_ms: e.t_ms,
                    player: e.player_id.clone(),
                    x: loc.x,
                    y: loc.y,
                });
            }
        }
    }

    Ok(ValidatedDataset { tracking, events, shots, meta })
}

// ---------------------------------------------------------------------------
// Tracking

#[derive(Debug, Serialize, Deserialize)]
struct TrackingRecord {
    t_ms: i64,
    period: u8,
    game_clock_s: f64,
    ball: [f64; 3],
    players: Vec<PlayerRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PlayerRecord {
    team: Team,
    id: String,
    x: f64,
    y: f64,
}

/// Yields `(1-based line number, line)` for every non-blank line.
fn records<R: BufRead>(
    reader: R,
    source_name: &'static str,
) -> impl Iterator<Item = Result<(usize, String), IngestError>> {
    reader
        .lines()
        .enumerate()
        .map(move |(i, line)| {
            line.map(|l| (i + 1, l)).map_err(|e| IngestError::MalformedRecord {
                source_name,
                line: i + 1,
                reason: e.to_string(),
            })
        })
        .filter(|r| !matches!(r, Ok((_, l)) if l.trim().is_empty()))
}

pub fn parse_tracking<R: BufRead>(reader: R) -> Result<Vec<TrackingFrame>, IngestError> {
    parse_tracking_with(reader, &CourtGeometry::default())
}

pub fn parse_tracking_with<R: BufRead>(
    reader: R,
    geom: &CourtGeometry,
) -> Result<Vec<TrackingFrame>, IngestError> {
    let mut frames: Vec<TrackingFrame> = Vec::new();
    for rec in records(reader, "tracking") {
        let (line, text) = rec?;
        let malformed = |reason: String| IngestError::MalformedRecord {
            source_name: "tracking",
            line,
            reason,
        };
        let r: TrackingRecord = serde_json::from_str(&text).map_err(|e| malformed(e.to_string()))?;

        if let Some(prev) = frames.last() {
            if r.t_ms <= prev.t_ms {
                return Err(IngestError::NonMonotonicTime { line, prev_ms: prev.t_ms, t_ms: r.t_ms });
            }
        }
        if r.period == 0 {
            return Err(malformed("period must be at least 1".into()));
        }
        if !(r.game_clock_s.is_finite() && r.game_clock_s >= 0.0) {
            return Err(malformed(format!("game_clock_s {} is invalid", r.game_clock_s)));
        }
        let home = r.players.iter().filter(|p| p.team == Team::Home).count();
        let away = r.players.len() - home;
        if home != 5 || away != 5 {
            return Err(IngestError::WrongPlayerCount { line, home, away });
        }
        let mut seen = HashSet::new();
        for p in &r.players {
            if !seen.insert(p.id.as_str()) {
                return Err(malformed(format!("player {} appears twice", p.id)));
            }
            if !(p.x.is_finite() && p.y.is_finite() && geom.contains(Point::new(p.x, p.y))) {
                return Err(malformed(format!("player {} at ({}, {}) is off the court", p.id, p.x, p.y)));
            }
        }
        let [bx, by, bz] = r.ball;
        if !(bx.is_finite() && by.is_finite() && bz.is_finite())
            || !geom.contains(Point::new(bx, by))
            || bz < 0.0
        {
            return Err(malformed(format!("ball at ({bx}, {by}, {bz}) is off the court")));
        }

        frames.push(TrackingFrame {
            t_ms: r.t_ms,
            period: r.period,
            game_clock_s: r.game_clock_s,
            ball: BallPosition { x: bx, y: by, z: bz },
            players: r
                .players
                .into_iter()
                .map(|p| PlayerPosition { team: p.team, player_id: p.id, x: p.x, y: p.y })
                .collect(),
        });
    }
    Ok(frames)
}

pub fn write_tracking(frames: &[TrackingFrame]) -> String {
    let mut out = String::new();
    for f in frames {
        let rec = TrackingRecord {
            t_ms: f.t_ms,
            period: f.period,
            game_clock_s: f.game_clock_s,
            ball: [f.ball.x, f.ball.y, f.ball.z],
            players: f
                .players
                .iter()
                .map(|p| PlayerRecord { team: p.team, id: p.player_id.clone(), x: p.x, y: p.y })
                .collect(),
        };
        out.push_str(&serde_json::to_string(&rec).expect("tracking record serializes"));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Events

#[derive(Debug, Serialize, Deserialize)]
struct EventRecord {
    t_ms: i64,
    team: Team,
    player: String,
    action: Action,
    outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    loc: Option<[f64; 2]>,
}

/// Parses the event log. Records are returned stably sorted by `t_ms`.
pub fn parse_events<R: BufRead>(reader: R) -> Result<Vec<GameEvent>, IngestError> {
    let mut events = Vec::new();
    for rec in records(reader, "events") {
        let (line, text) = rec?;
        let malformed = |reason: String| IngestError::MalformedRecord {
            source_name: "events",
            line,
            reason,
        };
        let r: EventRecord = serde_json::from_str(&text).map_err(|e| malformed(e.to_string()))?;

        let outcome_ok = if r.action.has_outcome() {
            r.outcome != Outcome::None
        } else {
            r.outcome == Outcome::None
        };
        if !outcome_ok {
            return Err(IngestError::IllegalOutcome { line, action: r.action, outcome: r.outcome });
        }
        if r.action.is_field_goal() && r.loc.is_none() {
            return Err(IngestError::MissingShotLocation { line, action: r.action });
        }
        if let Some([x, y]) = r.loc {
            if !(x.is_finite() && y.is_finite()) {
                return Err(malformed("loc must be finite".into()));
            }
        }
        if r.player.is_empty() && !r.action.is_period_marker() {
            return Err(malformed("player is empty".into()));
        }
        events.push(GameEvent {
            t_ms: r.t_ms,
            team: r.team,
            player_id: r.player,
            action: r.action,
            outcome: r.outcome,
            loc: r.loc.map(|[x, y]| Point::new(x, y)),
        });
    }
    events.sort_by_key(|e| e.t_ms);
    Ok(events)
}

pub fn write_events(events: &[GameEvent]) -> String {
    let mut out = String::new();
    for e in events {
        let rec = EventRecord {
            t_ms: e.t_ms,
            team: e.team,
            player: e.player_id.clone(),
            action: e.action,
            outcome: e.outcome,
            loc: e.loc.map(|p| [p.x, p.y]),
        };
        out.push_str(&serde_json::to_string(&rec).expect("event record serializes"));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Zoned shot table

#[derive(Debug, Serialize, Deserialize)]
struct ShotTableDoc {
    players: BTreeMap<String, BTreeMap<String, ZoneCount>>,
    league: BTreeMap<String, f64>,
}

pub fn parse_shot_table(text: &str) -> Result<ZonedShotTable, IngestError> {
    let malformed = |line: usize, reason: String| IngestError::MalformedRecord {
        source_name: "shot table",
        line,
        reason,
    };
    let doc: ShotTableDoc =
        serde_json::from_str(text).map_err(|e| malformed(e.line(), e.to_string()))?;
    let zone = |name: &str| {
        name.parse::<Zone>()
            .map_err(|_| malformed(line_of(text, name), format!("unknown zone `{name}`")))
    };

    let mut players = BTreeMap::new();
    for (player, zones) in doc.players {
        let mut row = BTreeMap::new();
        for (name, count) in zones {
            let z = zone(&name)?;
            if count.made > count.attempts {
                return Err(IngestError::MadeExceedsAttempts {
                    player,
                    zone: z,
                    made: count.made,
                    attempts: count.attempts,
                });
            }
            row.insert(z, count);
        }
        players.insert(player, row);
    }

    let mut league = BTreeMap::new();
    for (name, pct) in doc.league {
        let z = zone(&name)?;
        if !(pct.is_finite() && (0.0..=100.0).contains(&pct)) {
            return Err(malformed(line_of(text, &name), format!("league pct {pct} for {name} outside [0, 100]")));
        }
        league.insert(z, pct);
    }
    if let Some(missing) = Zone::ALL.into_iter().find(|z| !league.contains_key(z)) {
        return Err(IngestError::MissingLeagueZone(missing));
    }
    Ok(ZonedShotTable { players, league })
}

fn line_of(text: &str, needle: &str) -> usize {
    text.lines()
        .position(|l| l.contains(needle))
        .map_or(1, |i| i + 1)
}

pub fn write_shot_table(table: &ZonedShotTable) -> String {
    let doc = ShotTableDoc {
        players: table
            .players
            .iter()
            .map(|(id, zones)| {
                (id.clone(), zones.iter().map(|(z, c)| (z.as_str().to_string(), *c)).collect())
            })
            .collect(),
        league: table.league.iter().map(|(z, p)| (z.as_str().to_string(), *p)).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("shot table serializes")
}

/// Writes the dataset as manifest + three files into `dir`.
pub fn write_dataset(dataset: &ValidatedDataset, dir: &Path) -> Result<PathBuf, IngestError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| IngestError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let manifest = DatasetManifest {
        tracking: "tracking.jsonl".into(),
        events: "events.jsonl".into(),
        shot_table: "shot_table.json".into(),
        game: dataset.meta.clone(),
    };
    let files = [
        (dir.join(&manifest.tracking), write_tracking(&dataset.tracking)),
        (dir.join(&manifest.events), write_events(&dataset.events)),
        (dir.join(&manifest.shot_table), write_shot_table(&dataset.shots)),
        (
            dir.join("manifest.json"),
            serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
        ),
    ];
    for (path, body) in &files {
        fs::write(path, body).map_err(io_err(path))?;
    }
    Ok(dir.join("manifest.json"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame_line(t_ms: i64, n_home: usize, n_away: usize) -> String {
        let mut players = Vec::new();
        for i in 0..n_home {
            players.push(format!(r#"{{"team":"HOME","id":"H{i}","x":{},"y":10}}"#, 10 + i));
        }
        for i in 0..n_away {
            players.push(format!(r#"{{"team":"AWAY","id":"A{i}","x":{},"y":20}}"#, 10 + i));
        }
        format!(
            r#"{{"t_ms":{t_ms},"period":1,"game_clock_s":700.0,"ball":[20.5,25,4],"players":[{}]}}"#,
            players.join(",")
        )
    }

    fn league_json(skip: Option<Zone>) -> String {
        let entries: Vec<_> = Zone::ALL
            .into_iter()
            .filter(|z| Some(*z) != skip)
            .map(|z| format!(r#""{}":50.0"#, z.as_str()))
            .collect();
        entries.join(",")
    }

    #[test]
    fn parses_one_frame() {
        let frames = parse_tracking(frame_line(40, 5, 5).as_bytes()).unwrap();
        assert_eq!(frames.len(), 1);
        assert_eq!(frames[0].t_ms, 40);
        assert_eq!(frames[0].players.len(), 10);
        assert_eq!(frames[0].ball.z, 4.0);
    }

    #[test]
    fn nine_players_rejected() {
        let err = parse_tracking(frame_line(40, 5, 4).as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::WrongPlayerCount { line: 1, home: 5, away: 4 }));
        // Ten players but 6/4 split.
        let err = parse_tracking(frame_line(40, 6, 4).as_bytes()).unwrap_err();
        assert_eq!(err.code(), "WRONG_PLAYER_COUNT");
    }

    #[test]
    fn repeated_time_rejected() {
        let text = format!("{}\n{}\n", frame_line(40, 5, 5), frame_line(40, 5, 5));
        let err = parse_tracking(text.as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::NonMonotonicTime { line: 2, prev_ms: 40, t_ms: 40 }));
    }

    #[test]
    fn garbage_line_reports_position() {
        let text = format!("{}\n\n{{not json\n", frame_line(0, 5, 5));
        let err = parse_tracking(text.as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::MalformedRecord { line: 3, .. }), "{err}");
    }

    #[test]
    fn off_court_player_rejected() {
        let text = frame_line(0, 5, 5).replace(r#""x":10,"y":10"#, r#""x":-1,"y":10"#);
        assert_eq!(parse_tracking(text.as_bytes()).unwrap_err().code(), "MALFORMED_RECORD");
    }

    #[test]
    fn event_outcome_rules() {
        let ok = r#"{"t_ms":1,"team":"HOME","player":"H1","action":"SHOT_3PT","outcome":"MADE","loc":[2.0,2.0]}"#;
        let events = parse_events(ok.as_bytes()).unwrap();
        assert_eq!(events[0].loc, Some(Point::new(2.0, 2.0)));

        let reb = r#"{"t_ms":1,"team":"HOME","player":"H1","action":"REBOUND","outcome":"MADE"}"#;
        assert_eq!(parse_events(reb.as_bytes()).unwrap_err().code(), "ILLEGAL_OUTCOME");

        let ft = r#"{"t_ms":1,"team":"HOME","player":"H1","action":"FREE_THROW","outcome":"NONE"}"#;
        assert_eq!(parse_events(ft.as_bytes()).unwrap_err().code(), "ILLEGAL_OUTCOME");

        let noloc = r#"{"t_ms":1,"team":"HOME","player":"H1","action":"SHOT_2PT","outcome":"MISSED"}"#;
        assert_eq!(parse_events(noloc.as_bytes()).unwrap_err().code(), "MISSING_SHOT_LOCATION");

        let bad_action = r#"{"t_ms":1,"team":"HOME","player":"H1","action":"DUNK","outcome":"NONE"}"#;
        assert_eq!(parse_events(bad_action.as_bytes()).unwrap_err().code(), "MALFORMED_RECORD");
    }

    #[test]
    fn events_sorted_stably() {
        let text = [
            r#"{"t_ms":50,"team":"HOME","player":"H1","action":"FOUL","outcome":"NONE"}"#,
            r#"{"t_ms":10,"team":"AWAY","player":"A1","action":"REBOUND","outcome":"NONE"}"#,
            r#"{"t_ms":10,"team":"AWAY","player":"A2","action":"ASSIST","outcome":"NONE"}"#,
        ]
        .join("\n");
        let events = parse_events(text.as_bytes()).unwrap();
        let order: Vec<_> = events.iter().map(|e| e.player_id.as_str()).collect();
        assert_eq!(order, ["A1", "A2", "H1"]);
    }

    #[test]
    fn shot_table_rules() {
        let text = format!(r#"{{"players":{{"P":{{"RIM":{{"made":120,"att":200}}}}}},"league":{{{}}}}}"#, league_json(None));
        let table = parse_shot_table(&text).unwrap();
        assert_eq!(table.player_zone_pct("P", Zone::Rim), Some(60.0));

        let text = format!(r#"{{"players":{{"P":{{"RIM":{{"made":5,"att":3}}}}}},"league":{{{}}}}}"#, league_json(None));
        assert_eq!(parse_shot_table(&text).unwrap_err().code(), "MADE_EXCEEDS_ATTEMPTS");

        let text = format!(r#"{{"players":{{}},"league":{{{}}}}}"#, league_json(Some(Zone::Corner3Left)));
        assert!(matches!(
            parse_shot_table(&text).unwrap_err(),
            IngestError::MissingLeagueZone(Zone::Corner3Left)
        ));

        let text = format!(r#"{{"players":{{"P":{{"PAINT":{{"made":1,"att":3}}}}}},"league":{{{}}}}}"#, league_json(None));
        assert_eq!(parse_shot_table(&text).unwrap_err().code(), "MALFORMED_RECORD");
    }

    #[test]
    fn manifest_checks_colors() {
        let text = r##"{"tracking":"t.jsonl","events":"e.jsonl","shot_table":"s.json",
            "game":{"home_team":"A","away_team":"B","team_colors":{"home":"#112233","away":"#112233"},
            "attacking_hoop_by_period":{"1":"LOW_X"},"frame_rate_hz":25}}"##;
        assert_eq!(DatasetManifest::parse(text).unwrap_err().code(), "INVALID_MANIFEST");
        let ok = text.replace(r##""away":"#112233""##, r##""away":"#aabbcc""##);
        let m = DatasetManifest::parse(&ok).unwrap();
        assert_eq!(m.game.attacking_hoop(Team::Away, 1), Some(HoopEnd::HighX));
        assert_eq!(m.game.geometry, CourtGeometry::default());
    }
}
