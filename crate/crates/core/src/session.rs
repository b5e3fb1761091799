//! Replay state machine.
//!
//! A [`Session`] walks the tracking frames one at a time. Events fire when
//! the clock passes them, updating box scores, possession and the post-shot
//! labels; [`Session::compose`] then evaluates every enabled layer for the
//! current frame. All state is a function of the cursor, so seeking
//! rebuilds exactly what stepping would have produced.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::{
    self, ball_handler, classify_defenders, dynamic_shot_label, offense_payload,
    possession_transition, shot_chart, static_shot_label, team_panel, DefenseAssignment,
    DynamicShotLabel, OffensePayload, PossessionState, ShotChartPayload, StaticShotLabel,
    TeamPanelPayload,
};
use crate::canonical;
use crate::ingest::ValidatedDataset;
use crate::model::{BoxScore, GameBoxScores, GameEvent, LayerId, Team, TrackingFrame};

/// The shot chart follows the last shooter for this long after the shot.
pub const SHOT_CHART_FOLLOW_MS: i64 = 10_000;
pub const MAX_RATE: f64 = 16.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SessionError {
    #[error("dataset has no tracking frames")]
    EmptyDataset,
    #[error("already at the last frame")]
    EndOfGame,
    #[error("t_ms {t_ms} is outside [{first_ms}, {last_ms}]")]
    OutOfRange { t_ms: i64, first_ms: i64, last_ms: i64 },
    #[error("unknown layer `{0}`")]
    UnknownLayer(String),
    #[error("rate must be in (0, {MAX_RATE}], got {0}")]
    InvalidRate(f64),
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::EmptyDataset => "EMPTY_DATASET",
            SessionError::EndOfGame => "END_OF_GAME",
            SessionError::OutOfRange { .. } => "OUT_OF_RANGE",
            SessionError::UnknownLayer(_) => "UNKNOWN_LAYER",
            SessionError::InvalidRate(_) => "INVALID_RATE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ShotLabelPayload {
    pub static_labels: Vec<StaticShotLabel>,
    pub dynamic_labels: Vec<DynamicShotLabel>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LayerPayload {
    ShotLabel(ShotLabelPayload),
    Offense(OffensePayload),
    Defense(DefenseAssignment),
    ShotChart(ShotChartPayload),
    TeamPanel(TeamPanelPayload),
}

impl LayerPayload {
    pub fn layer_id(&self) -> LayerId {
        match self {
            LayerPayload::ShotLabel(_) => LayerId::ShotLabel,
            LayerPayload::Offense(_) => LayerId::Offense,
            LayerPayload::Defense(_) => LayerId::Defense,
            LayerPayload::ShotChart(_) => LayerId::ShotChart,
            LayerPayload::TeamPanel(_) => LayerId::TeamPanel,
        }
    }
}

/// On the wire the layer map is an object keyed by layer id whose values
/// are the bare payloads.
mod layer_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Default, Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Slots {
        #[serde(rename = "SHOT_LABEL", default, skip_serializing_if = "Option::is_none")]
        shot_label: Option<ShotLabelPayload>,
        #[serde(rename = "OFFENSE", default, skip_serializing_if = "Option::is_none")]
        offense: Option<OffensePayload>,
        #[serde(rename = "DEFENSE", default, skip_serializing_if = "Option::is_none")]
        defense: Option<DefenseAssignment>,
        #[serde(rename = "SHOT_CHART", default, skip_serializing_if = "Option::is_none")]
        shot_chart: Option<ShotChartPayload>,
        #[serde(rename = "TEAM_PANEL", default, skip_serializing_if = "Option::is_none")]
        team_panel: Option<TeamPanelPayload>,
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<LayerId, LayerPayload>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut slots = Slots::default();
        for payload in map.values().cloned() {
            match payload {
                LayerPayload::ShotLabel(p) => slots.shot_label = Some(p),
                LayerPayload::Offense(p) => slots.offense = Some(p),
                LayerPayload::Defense(p) => slots.defense = Some(p),
                LayerPayload::ShotChart(p) => slots.shot_chart = Some(p),
                LayerPayload::TeamPanel(p) => slots.team_panel = Some(p),
            }
        }
        slots.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<LayerId, LayerPayload>, D::Error> {
        let slots = Slots::deserialize(d)?;
        let payloads = [
            slots.shot_label.map(LayerPayload::ShotLabel),
            slots.offense.map(LayerPayload::Offense),
            slots.defense.map(LayerPayload::Defense),
            slots.shot_chart.map(LayerPayload::ShotChart),
            slots.team_panel.map(LayerPayload::TeamPanel),
        ];
        Ok(payloads.into_iter().flatten().map(|p| (p.layer_id(), p)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TeamBoxScores {
    pub home: BoxScore,
    pub away: BoxScore,
}

/// Everything a client needs to draw one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameBundle {
    pub frame: TrackingFrame,
    pub events_fired: Vec<GameEvent>,
    #[serde(with = "layer_map")]
    pub layers: BTreeMap<LayerId, LayerPayload>,
    #[serde(rename = "box")]
    pub box_score: TeamBoxScores,
}

impl FrameBundle {
    pub fn t_ms(&self) -> i64 {
        self.frame.t_ms
    }

    pub fn layer_ids(&self) -> BTreeSet<LayerId> {
        self.layers.keys().copied().collect()
    }
}

/// Replay-derived state; rebuilt from scratch on seek.
#[derive(Debug, Clone, Default, PartialEq)]
struct ReplayState {
    cursor: usize,
    /// Number of events already applied (all with `t_ms <= clock`).
    applied: usize,
    fired: Range<usize>,
    box_scores: GameBoxScores,
    possession: Option<PossessionState>,
    pending_labels: Vec<StaticShotLabel>,
    last_shot: Option<(String, i64)>,
}

pub struct Session {
    dataset: Arc<ValidatedDataset>,
    state: ReplayState,
    rate: f64,
    playing: bool,
    enabled: BTreeSet<LayerId>,
}

impl Session {
    /// Positions a paused session at the first frame, with every event at or
    /// before that frame already applied.
    pub fn new(
        dataset: impl Into<Arc<ValidatedDataset>>,
        initial_layers: BTreeSet<LayerId>,
    ) -> Result<Self, SessionError> {
        let dataset = dataset.into();
        if dataset.tracking.is_empty() {
            return Err(SessionError::EmptyDataset);
        }
        let mut session = Session {
            dataset,
            state: ReplayState::default(),
            rate: 1.0,
            playing: false,
            enabled: initial_layers,
        };
        session.advance_to(0);
        Ok(session)
    }

    pub fn dataset(&self) -> &Arc<ValidatedDataset> {
        &self.dataset
    }

    pub fn cursor(&self) -> usize {
        self.state.cursor
    }

    pub fn clock_ms(&self) -> i64 {
        self.frame().t_ms
    }

    pub fn frame(&self) -> &TrackingFrame {
        &self.dataset.tracking[self.state.cursor]
    }

    pub fn at_end(&self) -> bool {
        self.state.cursor + 1 >= self.dataset.tracking.len()
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn is_playing(&self) -> bool {
        self.playing
    }

    pub fn enabled_layers(&self) -> &BTreeSet<LayerId> {
        &self.enabled
    }

    pub fn box_scores(&self) -> &GameBoxScores {
        &self.state.box_scores
    }

    pub fn pending_labels(&self) -> &[StaticShotLabel] {
        &self.state.pending_labels
    }

    /// Events applied so far.
    pub fn events_so_far(&self) -> &[GameEvent] {
        &self.dataset.events[..self.state.applied]
    }

    pub fn possession(&self) -> Option<PossessionState> {
        self.state.possession.or_else(|| {
            analytics::possession_state(&[], &self.dataset.tracking[..=self.state.cursor], self.clock_ms())
        })
    }

    pub fn play(&mut self) {
        self.playing = true;
    }

    pub fn pause(&mut self) {
        self.playing = false;
    }

    pub fn set_rate(&mut self, rate: f64) -> Result<(), SessionError> {
        if !(rate.is_finite() && rate > 0.0 && rate <= MAX_RATE) {
            return Err(SessionError::InvalidRate(rate));
        }
        self.rate = rate;
        Ok(())
    }

    pub fn set_layer(&mut self, layer: LayerId, on: bool) {
        if on {
            self.enabled.insert(layer);
        } else {
            self.enabled.remove(&layer);
        }
    }

    pub fn toggle(&mut self, layer: &str, on: bool) -> Result<(), SessionError> {
        let id = layer
            .parse::<LayerId>()
            .map_err(|_| SessionError::UnknownLayer(layer.to_string()))?;
        self.set_layer(id, on);
        Ok(())
    }

    /// Real time to wait before the next frame at the current rate.
    pub fn next_frame_delay(&self) -> Option<Duration> {
        let next = self.dataset.tracking.get(self.state.cursor + 1)?;
        let dt_ms = (next.t_ms - self.clock_ms()) as f64 / self.rate;
        Some(Duration::from_secs_f64(dt_ms.max(0.0) / 1000.0))
    }

    pub fn step(&mut self) -> Result<FrameBundle, SessionError> {
        self.advance()?;
        Ok(self.compose())
    }

    /// Like [`Session::step`] without composing.
    pub fn advance(&mut self) -> Result<(), SessionError> {
        if self.at_end() {
            return Err(SessionError::EndOfGame);
        }
        self.advance_to(self.state.cursor + 1);
        Ok(())
    }

    /// Moves to the latest frame at or before `t_ms`, rebuilding all replay
    /// state as if played from the start.
    pub fn seek(&mut self, t_ms: i64) -> Result<(), SessionError> {
        let tracking = &self.dataset.tracking;
        let (first_ms, last_ms) = (tracking[0].t_ms, tracking[tracking.len() - 1].t_ms);
        if t_ms < first_ms || t_ms > last_ms {
            return Err(SessionError::OutOfRange { t_ms, first_ms, last_ms });
        }
        let target = tracking.partition_point(|f| f.t_ms <= t_ms) - 1;
        self.state = ReplayState::default();
        if target > 0 {
            self.advance_to(target - 1);
        }
        self.advance_to(target);
        Ok(())
    }

    fn advance_to(&mut self, cursor: usize) {
        let dataset = Arc::clone(&self.dataset);
        let clock = dataset.tracking[cursor].t_ms;
        let start = self.state.applied;
        let end = start + dataset.events[start..].partition_point(|e| e.t_ms <= clock);
        for e in &dataset.events[start..end] {
            self.apply_event(e);
        }
        self.state.cursor = cursor;
        self.state.applied = end;
        self.state.fired = start..end;
        self.state.pending_labels.retain(|l| l.expires_at_ms > clock);
    }

    fn apply_event(&mut self, e: &GameEvent) {
        let st = &mut self.state;
        st.box_scores.apply(e);
        if let Some(team) = possession_transition(e) {
            st.possession = Some(PossessionState { team, since_ms: e.t_ms });
        }
        if e.action.is_field_goal() {
            let season = self.dataset.shots.season_fg_pct(&e.player_id).unwrap_or(0.0);
            let after = st.box_scores.player(&e.player_id);
            st.pending_labels.push(static_shot_label(e, &after, season));
            st.last_shot = Some((e.player_id.clone(), e.t_ms));
        }
    }

    fn offense_hoop(&self, team: Team) -> Option<crate::model::Point> {
        self.dataset.attacking_hoop(team, self.frame().period)
    }

    /// Evaluates every enabled layer at the current frame. Post-shot labels
    /// are event-driven and appear whether or not SHOT_LABEL is enabled.
    pub fn compose(&self) -> FrameBundle {
        let ds = &*self.dataset;
        let geom = ds.geometry();
        let frame = self.frame();
        let clock = frame.t_ms;
        let possession = self.possession();
        let offense = possession.map(|p| p.team);
        let hoop = offense.and_then(|t| self.offense_hoop(t));
        let handler = offense.and_then(|t| ball_handler(frame, t));
        let on = |l: LayerId| self.enabled.contains(&l);

        let mut layers = BTreeMap::new();

        let static_labels: Vec<_> = self
            .state
            .pending_labels
            .iter()
            .filter(|l| l.is_live(clock))
            .cloned()
            .collect();
        if on(LayerId::ShotLabel) || !static_labels.is_empty() {
            let mut dynamic_labels = Vec::new();
            if let (true, Some(team), Some(hoop)) = (on(LayerId::ShotLabel), offense, hoop) {
                let mut ids: Vec<_> = frame.team_players(team).map(|p| p.player_id.as_str()).collect();
                ids.sort_unstable();
                dynamic_labels = ids
                    .into_iter()
                    .filter_map(|id| dynamic_shot_label(frame, id, &ds.shots, hoop, geom).ok())
                    .collect();
            }
            layers.insert(
                LayerId::ShotLabel,
                LayerPayload::ShotLabel(ShotLabelPayload { static_labels, dynamic_labels }),
            );
        }

        if let (true, Some(p)) = (on(LayerId::Offense), possession) {
            let payload = offense_payload(&ds.tracking, clock, p.since_ms, p.team, handler.as_deref());
            layers.insert(LayerId::Offense, LayerPayload::Offense(payload));
        }

        if let (true, Some(h), Some(hoop)) = (on(LayerId::Defense), handler.as_deref(), hoop) {
            if let Ok(a) = classify_defenders(frame, h, hoop, geom) {
                layers.insert(LayerId::Defense, LayerPayload::Defense(a));
            }
        }

        if on(LayerId::ShotChart) {
            let recent_shooter = self
                .state
                .last_shot
                .as_ref()
                .filter(|(_, t)| clock - t < SHOT_CHART_FOLLOW_MS)
                .map(|(id, _)| id.clone());
            if let Some(subject) = recent_shooter.or(handler.clone()) {
                if let Ok(chart) = shot_chart(&subject, self.events_so_far(), &ds.shots) {
                    layers.insert(LayerId::ShotChart, LayerPayload::ShotChart(chart));
                }
            }
        }

        let box_score = TeamBoxScores {
            home: self.state.box_scores.home,
            away: self.state.box_scores.away,
        };
        if on(LayerId::TeamPanel) {
            let panel = team_panel(&box_score.home, &box_score.away, &ds.meta.league_averages);
            layers.insert(LayerId::TeamPanel, LayerPayload::TeamPanel(panel));
        }

        let bundle = FrameBundle {
            frame: frame.clone(),
            events_fired: ds.events[self.state.fired.clone()].to_vec(),
            layers,
            box_score,
        };
        canonical::canonicalize(&bundle).expect("frame bundle round-trips through JSON")
    }

    /// Replay state snapshot used to compare seek and play-through.
    pub fn snapshot(&self) -> SessionSnapshot {
        SessionSnapshot {
            cursor: self.state.cursor,
            clock_ms: self.clock_ms(),
            box_scores: self.state.box_scores.clone(),
            possession: self.possession(),
            pending_labels: self.state.pending_labels.clone(),
            fired: self.dataset.events[self.state.fired.clone()].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionSnapshot {
    pub cursor: usize,
    pub clock_ms: i64,
    pub box_scores: GameBoxScores,
    pub possession: Option<PossessionState>,
    pub pending_labels: Vec<StaticShotLabel>,
    pub fired: Vec<GameEvent>,
}
