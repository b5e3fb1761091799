use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::box_score::pct;
use super::Zone;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ZoneCount {
    pub made: u32,
    #[serde(rename = "att")]
    pub attempts: u32,
}

impl ZoneCount {
    pub fn pct(&self) -> Option<f64> {
        pct(self.made, self.attempts)
    }
}

/// Season shooting by zone for each player, plus league-average percentages.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ZonedShotTable {
    pub players: BTreeMap<String, BTreeMap<Zone, ZoneCount>>,
    pub league: BTreeMap<Zone, f64>,
}

impl ZonedShotTable {
    pub fn contains_player(&self, player_id: &str) -> bool {
        self.players.contains_key(player_id)
    }

    /// Zones a player has no row for count as 0/0.
    pub fn zone_count(&self, player_id: &str, zone: Zone) -> Option<ZoneCount> {
        self.players
            .get(player_id)
            .map(|zones| zones.get(&zone).copied().unwrap_or_default())
    }

    pub fn player_zone_pct(&self, player_id: &str, zone: Zone) -> Option<f64> {
        self.zone_count(player_id, zone).and_then(|c| c.pct())
    }

    /// Season field-goal percentage summed over every zone.
    pub fn season_fg_pct(&self, player_id: &str) -> Option<f64> {
        let zones = self.players.get(player_id)?;
        let (made, att) = zones
            .values()
            .fold((0, 0), |(m, a), c| (m + c.made, a + c.attempts));
        pct(made, att)
    }

    pub fn league_pct(&self, zone: Zone) -> f64 {
        self.league.get(&zone).copied().unwrap_or(0.0)
    }

    /// Multiplies every made/attempt count by `factor`.
    pub fn scaled(&self, factor: u32) -> ZonedShotTable {
        let players = self
            .players
            .iter()
            .map(|(id, zones)| {
                let zones = zones
                    .iter()
                    .map(|(z, c)| {
                        (*z, ZoneCount { made: c.made * factor, attempts: c.attempts * factor })
                    })
                    .collect();
                (id.clone(), zones)
            })
            .collect();
        ZonedShotTable { players, league: self.league.clone() }
    }
}

/// League-wide team shooting percentages used by the team panel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeagueAverages {
    pub fg_pct: f64,
    pub tp_pct: f64,
    pub ft_pct: f64,
}

impl Default for LeagueAverages {
    fn default() -> Self {
        LeagueAverages { fg_pct: 45.2, tp_pct: 35.4, ft_pct: 75.7 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pct_and_season_total() {
        let mut table = ZonedShotTable::default();
        let mut zones = BTreeMap::new();
        zones.insert(Zone::Rim, ZoneCount { made: 120, attempts: 200 });
        zones.insert(Zone::ThreeLeft, ZoneCount { made: 30, attempts: 100 });
        table.players.insert("P".into(), zones);
        assert_eq!(table.player_zone_pct("P", Zone::Rim), Some(60.0));
        assert_eq!(table.player_zone_pct("P", Zone::MidLeft), None);
        assert_eq!(table.season_fg_pct("P"), Some(50.0));
        assert_eq!(table.zone_count("Q", Zone::Rim), None);
    }
}
