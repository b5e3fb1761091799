use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Action, GameEvent, Team};

/// Counting stats for one player or one team. Three-pointers are included
/// in the field-goal totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BoxScore {
    pub points: u32,
    pub fgm: u32,
    pub fga: u32,
    pub tpm: u32,
    pub tpa: u32,
    pub ftm: u32,
    pub fta: u32,
    pub rebounds: u32,
    pub assists: u32,
    pub blocks: u32,
    pub steals: u32,
    pub turnovers: u32,
    pub fouls: u32,
}

impl BoxScore {
    pub fn apply(&mut self, event: &GameEvent) {
        let made = event.is_made();
        match event.action {
            Action::Shot2pt => {
                self.fga += 1;
                if made {
                    self.fgm += 1;
                    self.points += 2;
                }
            }
            Action::Shot3pt => {
                self.fga += 1;
                self.tpa += 1;
                if made {
                    self.fgm += 1;
                    self.tpm += 1;
                    self.points += 3;
                }
            }
            Action::FreeThrow => {
                self.fta += 1;
                if made {
                    self.ftm += 1;
                    self.points += 1;
                }
            }
            Action::Rebound => self.rebounds += 1,
            Action::Assist => self.assists += 1,
            Action::Block => self.blocks += 1,
            Action::Steal => self.steals += 1,
            Action::Turnover => self.turnovers += 1,
            Action::Foul => self.fouls += 1,
            Action::Substitution | Action::PeriodStart | Action::PeriodEnd => {}
        }
    }

    /// `tpm ≤ tpa ≤ fga`, made ≤ attempts, and points agree with the makes.
    pub fn is_consistent(&self) -> bool {
        self.tpm <= self.tpa
            && self.tpa <= self.fga
            && self.fgm <= self.fga
            && self.tpm <= self.fgm
            && self.ftm <= self.fta
            && self.points == 2 * (self.fgm - self.tpm) + 3 * self.tpm + self.ftm
    }

    pub fn fg_pct(&self) -> Option<f64> {
        pct(self.fgm, self.fga)
    }

    pub fn tp_pct(&self) -> Option<f64> {
        pct(self.tpm, self.tpa)
    }

    pub fn ft_pct(&self) -> Option<f64> {
        pct(self.ftm, self.fta)
    }
}

pub(crate) fn pct(made: u32, attempts: u32) -> Option<f64> {
    (attempts > 0).then(|| made as f64 / attempts as f64 * 100.0)
}

/// Team and per-player tallies for a game in progress.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GameBoxScores {
    pub home: BoxScore,
    pub away: BoxScore,
    pub players: BTreeMap<String, BoxScore>,
}

impl GameBoxScores {
    pub fn apply(&mut self, event: &GameEvent) {
        if event.action.is_period_marker() || event.action == Action::Substitution {
            return;
        }
        self.team_mut(event.team).apply(event);
        self.players.entry(event.player_id.clone()).or_default().apply(event);
    }

    pub fn team(&self, team: Team) -> &BoxScore {
        match team {
            Team::Home => &self.home,
            Team::Away => &self.away,
        }
    }

    fn team_mut(&mut self, team: Team) -> &mut BoxScore {
        match team {
            Team::Home => &mut self.home,
            Team::Away => &mut self.away,
        }
    }

    pub fn player(&self, player_id: &str) -> BoxScore {
        self.players.get(player_id).copied().unwrap_or_default()
    }

    pub fn is_consistent(&self) -> bool {
        self.home.is_consistent()
            && self.away.is_consistent()
            && self.players.values().all(BoxScore::is_consistent)
    }
}
