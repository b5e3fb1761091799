//! Seeded synthetic games for tests, demos and documentation renders.
//!
//! The generator plays a scripted half-court game: the offense spreads to
//! spots, swings the ball with passes, and each possession ends in a shot,
//! a turnover or a trip to the line. Defenders shadow their man on the
//! hoop side. Output always passes [`validate_dataset`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytics::classify_zone;
use crate::ingest::{validate_dataset, GameMeta, TeamColors, ValidatedDataset};
use crate::model::{
    Action, BallPosition, CourtGeometry, GameEvent, HoopEnd, LeagueAverages, Outcome,
    PlayerPosition, Point, Team, TrackingFrame, Zone, ZoneCount, ZonedShotTable,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixtureSpec {
    pub duration_ms: i64,
    pub frame_rate_hz: u32,
    pub seed: u64,
}

impl Default for FixtureSpec {
    fn default() -> Self {
        FixtureSpec { duration_ms: 60_000, frame_rate_hz: 25, seed: 21 }
    }
}

const TRANSITION_MS: i64 = 2000;
const PASS_FLIGHT_MS: i64 = 400;
const SHOT_FLIGHT_MS: i64 = 1000;
const PERIOD_LENGTH_S: f64 = 720.0;

/// Offense spots as (depth from baseline, y).
const SPOTS: [(f64, f64); 7] = [
    (28.0, 25.0),
    (21.0, 8.0),
    (21.0, 42.0),
    (3.5, 3.0),
    (3.5, 47.0),
    (9.0, 34.0),
    (18.0, 18.0),
];

pub fn player_ids(team: Team) -> [String; 5] {
    let prefix = match team {
        Team::Home => 'H',
        Team::Away => 'A',
    };
    std::array::from_fn(|i| format!("{prefix}{}", i + 1))
}

#[derive(Debug, Clone, Copy)]
struct Wobble {
    amp: f64,
    period_ms: f64,
    phase: f64,
}

impl Wobble {
    fn random(rng: &mut ChaCha8Rng, amp: f64) -> Self {
        Wobble {
            amp: rng.gen_range(0.3..1.0) * amp,
            period_ms: rng.gen_range(2500.0..6000.0),
            phase: rng.gen_range(0.0..2.0 * PI),
        }
    }

    fn at(&self, t: i64) -> Point {
        let a = 2.0 * PI * t as f64 / self.period_ms + self.phase;
        Point::new(self.amp * a.sin(), self.amp * (1.3 * a).cos())
    }
}

#[derive(Debug, Clone)]
enum Finish {
    Shot { t: i64, zone_loc: Point },
    Turnover { t: i64 },
    FreeThrows { t: i64 },
}

#[derive(Debug, Clone)]
struct Possession {
    team: Team,
    start: i64,
    end: i64,
    hoop: HoopEnd,
    spots: [Point; 5],
    sag: [f64; 5],
    wobble: [Wobble; 10],
    /// (time the ball leaves, passer, receiver); first entry is the initial handler.
    passes: Vec<(i64, usize, usize)>,
    drive: bool,
    finish: Finish,
}

struct Generator {
    rng: ChaCha8Rng,
    geom: CourtGeometry,
    meta: GameMeta,
}

impl Generator {
    fn local(&self, hoop: HoopEnd, depth: f64, y: f64) -> Point {
        match hoop {
            HoopEnd::LowX => Point::new(depth, y),
            HoopEnd::HighX => Point::new(self.geom.length_ft - depth, y),
        }
    }

    fn clamp(&self, p: Point) -> Point {
        Point::new(
            p.x.clamp(0.5, self.geom.length_ft - 0.5),
            p.y.clamp(0.5, self.geom.width_ft - 0.5),
        )
    }

    fn handler_at(p: &Possession, t: i64) -> usize {
        p.passes.iter().take_while(|(pt, _, _)| *pt <= t).last().map_or(0, |&(_, _, to)| to)
    }

    /// Half-court layout of all ten players (offense 0..5, defense 5..10).
    fn halfcourt(&self, p: &Possession, t: i64) -> [Point; 10] {
        let hoop = self.geom.hoop_center(p.hoop);
        let handler = Self::handler_at(p, t);
        let drive_from = match p.finish {
            Finish::Shot { t, .. } => t - 2000,
            _ => i64::MAX,
        };
        let mut out = [Point::default(); 10];
        for i in 0..5 {
            let w = p.wobble[i].at(t);
            let mut o = Point::new(p.spots[i].x + w.x, p.spots[i].y + w.y);
            if p.drive && i == handler && t > drive_from {
                let u = ((t - drive_from) as f64 / 2000.0).min(1.0) * 0.7;
                o = Point::new(o.x + (hoop.x - o.x) * u, o.y + (hoop.y - o.y) * u);
            }
            out[i] = self.clamp(o);
            let to_hoop = Point::new(hoop.x - o.x, hoop.y - o.y);
            let len = to_hoop.x.hypot(to_hoop.y).max(1e-6);
            let sag = if i == handler { p.sag[i].min(4.0) } else { p.sag[i] };
            let dw = p.wobble[5 + i].at(t);
            let d = Point::new(o.x + to_hoop.x / len * sag + dw.x, o.y + to_hoop.y / len * sag + dw.y);
            out[5 + i] = self.clamp(d);
        }
        out
    }

    fn positions(&self, ps: &[Possession], idx: usize, t: i64) -> [Point; 10] {
        let p = &ps[idx];
        let target = self.halfcourt(p, t);
        if idx == 0 || t >= p.start + TRANSITION_MS {
            return target;
        }
        // Teams swap roles between possessions; map by player, not by slot.
        let prev = self.positions(ps, idx - 1, p.start);
        let prev_by_player: [Point; 10] = if ps[idx - 1].team == p.team {
            prev
        } else {
            std::array::from_fn(|i| prev[(i + 5) % 10])
        };
        let u = (t - p.start) as f64 / TRANSITION_MS as f64;
        let s = u * u * (3.0 - 2.0 * u);
        std::array::from_fn(|i| {
            let (a, b) = (prev_by_player[i], target[i]);
            Point::new(a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s)
        })
    }

    fn ball(&self, p: &Possession, pos: &[Point; 10], t: i64) -> BallPosition {
        if let Finish::Shot { t: shot_t, zone_loc, .. } = p.finish {
            if t >= shot_t {
                let hoop = self.geom.hoop_center(p.hoop);
                let u = ((t - shot_t) as f64 / SHOT_FLIGHT_MS as f64).min(1.0);
                return BallPosition {
                    x: zone_loc.x + (hoop.x - zone_loc.x) * u,
                    y: zone_loc.y + (hoop.y - zone_loc.y) * u,
                    z: 7.0 + 3.0 * u + 9.0 * (PI * u).sin(),
                };
            }
        }
        if let Some(&(pt, from, to)) =
            p.passes.iter().skip(1).find(|(pt, _, _)| *pt <= t && t < pt + PASS_FLIGHT_MS)
        {
            let u = (t - pt) as f64 / PASS_FLIGHT_MS as f64;
            let (a, b) = (pos[from], pos[to]);
            return BallPosition { x: a.x + (b.x - a.x) * u, y: a.y + (b.y - a.y) * u, z: 6.0 };
        }
        let h = pos[Self::handler_at(p, t)];
        let b = self.clamp(Point::new(h.x + 0.6, h.y + 0.4));
        BallPosition { x: b.x, y: b.y, z: 3.5 }
    }

    /// Plans possessions and the events they produce.
    fn plan(&mut self, duration_ms: i64) -> (Vec<Possession>, Vec<GameEvent>) {
        let home_ids = player_ids(Team::Home);
        let away_ids = player_ids(Team::Away);
        let ids = |team: Team| if team == Team::Home { &home_ids } else { &away_ids };

        let mut events = vec![GameEvent {
            t_ms: 0,
            team: Team::Home,
            player_id: String::new(),
            action: Action::PeriodStart,
            outcome: Outcome::None,
            loc: None,
        }];
        let ev = |t_ms: i64, team: Team, id: &str, action, outcome, loc| GameEvent {
            t_ms,
            team,
            player_id: id.to_string(),
            action,
            outcome,
            loc,
        };

        let mut possessions: Vec<Possession> = Vec::new();
        let (mut team, mut start, mut first_handler) = (Team::Home, 0i64, 0usize);
        while start < duration_ms {
            let hoop = self.meta.attacking_hoop(team, 1).expect("period 1 configured");
            let mut order: Vec<usize> = (0..SPOTS.len()).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, self.rng.gen_range(0..=i));
            }
            let spots: [Point; 5] = std::array::from_fn(|i| {
                let (d, y) = SPOTS[order[i]];
                let jitter = Point::new(self.rng.gen_range(-2.0..2.0), self.rng.gen_range(-2.0..2.0));
                self.local(hoop, d + jitter.x.abs(), y + jitter.y)
            });
            let sag: [f64; 5] = std::array::from_fn(|_| self.rng.gen_range(2.5..8.0));
            let wobble: [Wobble; 10] =
                std::array::from_fn(|i| Wobble::random(&mut self.rng, if i < 5 { 2.5 } else { 1.2 }));

            let length = self.rng.gen_range(5500..9000i64);
            let finish_t = start + length - SHOT_FLIGHT_MS;
            let mut passes = vec![(start, first_handler, first_handler)];
            let mut t = start + TRANSITION_MS + self.rng.gen_range(500..1500);
            let mut holder = first_handler;
            while t + PASS_FLIGHT_MS < finish_t - 2000 {
                let to = (holder + self.rng.gen_range(1..5)) % 5;
                passes.push((t, holder, to));
                holder = to;
                t += self.rng.gen_range(1500..3000);
            }
            let roll: f64 = self.rng.gen();
            let finish = if roll < 0.12 {
                Finish::Turnover { t: finish_t }
            } else if roll < 0.22 {
                Finish::FreeThrows { t: finish_t }
            } else {
                Finish::Shot { t: finish_t, zone_loc: Point::default() }
            };
            let mut p = Possession {
                team,
                start,
                end: 0,
                hoop,
                spots,
                sag,
                wobble,
                passes,
                drive: self.rng.gen_bool(0.4),
                finish,
            };

            let shooter = holder;
            let offense = ids(team);
            let defense = ids(team.other());
            let (next_team, next_handler, end) = match p.finish {
                Finish::Turnover { t } => {
                    let stealer = shooter;
                    events.push(ev(t, team, &offense[shooter], Action::Turnover, Outcome::None, None));
                    events.push(ev(t, team.other(), &defense[stealer], Action::Steal, Outcome::None, None));
                    (team.other(), stealer, t)
                }
                Finish::FreeThrows { t } => {
                    events.push(ev(t, team.other(), &defense[shooter], Action::Foul, Outcome::None, None));
                    let mut last_made = false;
                    for k in 1..=2 {
                        last_made = self.rng.gen_bool(0.76);
                        let o = if last_made { Outcome::Made } else { Outcome::Missed };
                        events.push(ev(t + 1000 * k, team, &offense[shooter], Action::FreeThrow, o, None));
                    }
                    if last_made {
                        (team.other(), 0, t + 2000)
                    } else {
                        let (rt, ri) = self.rebounder(team);
                        events.push(ev(t + 3000, rt, &ids(rt)[ri], Action::Rebound, Outcome::None, None));
                        (rt, ri, t + 3000)
                    }
                }
                Finish::Shot { t, .. } => {
                    // Shot location is wherever the shooter is at release.
                    p.end = t + SHOT_FLIGHT_MS;
                    let loc = self.halfcourt(&p, t)[shooter];
                    let hoop_c = self.geom.hoop_center(hoop);
                    let zone = classify_zone(loc, hoop_c, &self.geom).unwrap_or(Zone::Rim);
                    let (action, make_p) = if zone.is_three() {
                        (Action::Shot3pt, 0.36)
                    } else if zone == Zone::Rim {
                        (Action::Shot2pt, 0.6)
                    } else {
                        (Action::Shot2pt, 0.42)
                    };
                    let made = self.rng.gen_bool(make_p);
                    p.finish = Finish::Shot { t, zone_loc: loc };
                    let outcome = if made { Outcome::Made } else { Outcome::Missed };
                    events.push(ev(t, team, &offense[shooter], action, outcome, Some(loc)));
                    if made {
                        if let Some(&(_, passer, _)) = p.passes.iter().skip(1).last() {
                            if passer != shooter && self.rng.gen_bool(0.6) {
                                events.push(ev(t, team, &offense[passer], Action::Assist, Outcome::None, None));
                            }
                        }
                        (team.other(), 0, t + SHOT_FLIGHT_MS)
                    } else {
                        if self.rng.gen_bool(0.12) {
                            events.push(ev(t, team.other(), &defense[shooter], Action::Block, Outcome::None, None));
                        }
                        let (rt, ri) = self.rebounder(team);
                        let rebound_t = t + SHOT_FLIGHT_MS;
                        events.push(ev(rebound_t, rt, &ids(rt)[ri], Action::Rebound, Outcome::None, None));
                        (rt, ri, rebound_t)
                    }
                }
            };
            p.end = end;
            possessions.push(p);
            team = next_team;
            first_handler = next_handler;
            start = end;
        }
        (possessions, events)
    }

    fn rebounder(&mut self, offense: Team) -> (Team, usize) {
        let team = if self.rng.gen_bool(0.72) { offense.other() } else { offense };
        (team, self.rng.gen_range(0..5))
    }

    fn shot_table(&mut self) -> ZonedShotTable {
        let league: BTreeMap<Zone, f64> = [
            (Zone::Rim, 62.1),
            (Zone::MidLeft, 40.4),
            (Zone::MidRight, 40.9),
            (Zone::Corner3Left, 38.6),
            (Zone::Corner3Right, 39.2),
            (Zone::ThreeLeft, 35.0),
            (Zone::ThreeRight, 35.3),
        ]
        .into_iter()
        .collect();
        let mut players = BTreeMap::new();
        for team in [Team::Home, Team::Away] {
            for id in player_ids(team) {
                let mut zones = BTreeMap::new();
                for z in Zone::ALL {
                    // Leave the occasional zone empty to exercise the no-data path.
                    if self.rng.gen_bool(0.08) {
                        continue;
                    }
                    let attempts = self.rng.gen_range(15..260u32);
                    let pct = (league[&z] + self.rng.gen_range(-16.0..16.0)).clamp(0.0, 100.0);
                    let made = ((attempts as f64) * pct / 100.0).round() as u32;
                    zones.insert(z, ZoneCount { made: made.min(attempts), attempts });
                }
                players.insert(id, zones);
            }
        }
        ZonedShotTable { players, league }
    }
}

pub fn demo_meta(frame_rate_hz: u32) -> GameMeta {
    GameMeta {
        home_team: "Harbor City Gulls".into(),
        away_team: "Ashford Foxes".into(),
        team_colors: TeamColors { home: "#1d428a".into(), away: "#b4343a".into() },
        attacking_hoop_by_period: (1..=4)
            .map(|p| (p, if p <= 2 { HoopEnd::LowX } else { HoopEnd::HighX }))
            .collect(),
        frame_rate_hz: frame_rate_hz as f64,
        geometry: CourtGeometry::default(),
        league_averages: LeagueAverages::default(),
    }
}

/// Generates a complete, validated game of `spec.duration_ms`.
pub fn demo_game(spec: FixtureSpec) -> ValidatedDataset {
    let meta = demo_meta(spec.frame_rate_hz);
    let mut g = Generator {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        geom: meta.geometry,
        meta: meta.clone(),
    };
    let (possessions, mut events) = g.plan(spec.duration_ms);
    let shots = g.shot_table();

    let step_ms = 1000 / spec.frame_rate_hz.max(1) as i64;
    let frame_count = spec.duration_ms / step_ms;
    let home_ids = player_ids(Team::Home);
    let away_ids = player_ids(Team::Away);
    let mut tracking = Vec::with_capacity(frame_count as usize);
    let mut idx = 0;
    for i in 0..frame_count {
        let t = i * step_ms;
        while idx + 1 < possessions.len() && possessions[idx].end <= t {
            idx += 1;
        }
        let p = &possessions[idx];
        let pos = g.positions(&possessions, idx, t);
        let ball = g.ball(p, &pos, t);
        let (off_ids, def_ids) = match p.team {
            Team::Home => (&home_ids, &away_ids),
            Team::Away => (&away_ids, &home_ids),
        };
        let r3 = |v: f64| (v * 1000.0).round() / 1000.0;
        let mut players = Vec::with_capacity(10);
        for (slot, pt) in pos.iter().enumerate() {
            let (team, id) = if slot < 5 {
                (p.team, &off_ids[slot])
            } else {
                (p.team.other(), &def_ids[slot - 5])
            };
            players.push(PlayerPosition { team, player_id: id.clone(), x: r3(pt.x), y: r3(pt.y) });
        }
        players.sort_by(|a, b| (a.team, &a.player_id).cmp(&(b.team, &b.player_id)));
        tracking.push(TrackingFrame {
            t_ms: t,
            period: 1,
            game_clock_s: r3(PERIOD_LENGTH_S - t as f64 / 1000.0),
            ball: BallPosition { x: r3(ball.x), y: r3(ball.y), z: r3(ball.z) },
            players,
        });
    }
    let last_t = tracking.last().map_or(0, |f| f.t_ms);
    events.retain(|e| e.t_ms <= last_t);
    events.sort_by_key(|e| e.t_ms);
    for e in &mut events {
        if let Some(loc) = e.loc.as_mut() {
            *loc = Point::new((loc.x * 1000.0).round() / 1000.0, (loc.y * 1000.0).round() / 1000.0);
        }
    }

    validate_dataset(tracking, events, shots, meta).expect("generated fixture is valid")
}
