use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// The five toggleable visualization layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LayerId {
    ShotLabel,
    Offense,
    Defense,
    ShotChart,
    TeamPanel,
}

impl LayerId {
    pub const ALL: [LayerId; 5] = [
        LayerId::ShotLabel,
        LayerId::Offense,
        LayerId::Defense,
        LayerId::ShotChart,
        LayerId::TeamPanel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LayerId::ShotLabel => "SHOT_LABEL",
            LayerId::Offense => "OFFENSE",
            LayerId::Defense => "DEFENSE",
            LayerId::ShotChart => "SHOT_CHART",
            LayerId::TeamPanel => "TEAM_PANEL",
        }
    }

    /// Parses a comma-separated list such as `defense,team_panel`.
    pub fn parse_list(list: &str) -> Result<BTreeSet<LayerId>, ModelError> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for LayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Accepts the wire names case-insensitively, with `-` or `_` separators.
impl FromStr for LayerId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        LayerId::ALL
            .into_iter()
            .find(|l| l.as_str() == norm)
            .ok_or_else(|| ModelError::UnknownLayer(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mark {
    Point,
    Line,
    Area,
    Label,
    SidePanel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ContextId {
    C1,
    C2,
    C3,
    C4,
    C5,
}

/// Which viewing context a layer serves and which graphical marks it draws.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerDescriptor {
    pub layer_id: LayerId,
    pub context_id: ContextId,
    pub scenario: String,
    pub data: String,
    pub task: String,
    pub marks: BTreeSet<Mark>,
}

pub fn describe_layers() -> Vec<LayerDescriptor> {
    use Mark::*;
    let d = |layer_id, context_id, scenario: &str, data: &str, task: &str, marks: &[Mark]| {
        LayerDescriptor {
            layer_id,
            context_id,
            scenario: scenario.to_string(),
            data: data.to_string(),
            task: task.to_string(),
            marks: marks.iter().copied().collect(),
        }
    };
    vec![
        d(
            LayerId::ShotLabel,
            ContextId::C1,
            "shooting: a player takes a shot",
            "shooter box score and zone shot percentage",
            "identify, compare",
            &[Label],
        ),
        d(
            LayerId::Offense,
            ContextId::C2,
            "offense: the attacking team runs a play",
            "player movement and spacing",
            "identify, compare",
            &[Line, Area],
        ),
        d(
            LayerId::Defense,
            ContextId::C3,
            "defense: the defending team defends well or poorly",
            "defensive scheme and key defenders",
            "identify",
            &[Point, Line, Area],
        ),
        d(
            LayerId::ShotChart,
            ContextId::C4,
            "player performance: a player has made or missed shots",
            "shot performance by zone",
            "compare, summarize",
            &[Point, Area, SidePanel],
        ),
        d(
            LayerId::TeamPanel,
            ContextId::C5,
            "team comparison: clutch time",
            "team stats",
            "compare, summarize",
            &[SidePanel],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_descriptors_one_per_context() {
        let layers = describe_layers();
        assert_eq!(layers.len(), 5);
        let contexts: BTreeSet<_> = layers.iter().map(|d| d.context_id).collect();
        assert_eq!(contexts.len(), 5);
        let ids: BTreeSet<_> = layers.iter().map(|d| d.layer_id).collect();
        assert_eq!(ids.len(), 5);
    }

    #[test]
    fn context_mapping_and_marks() {
        let layers = describe_layers();
        let by_ctx = |c| layers.iter().find(|d| d.context_id == c).unwrap();
        assert_eq!(by_ctx(ContextId::C1).layer_id, LayerId::ShotLabel);
        assert_eq!(by_ctx(ContextId::C2).layer_id, LayerId::Offense);
        assert_eq!(by_ctx(ContextId::C3).layer_id, LayerId::Defense);
        assert_eq!(by_ctx(ContextId::C4).layer_id, LayerId::ShotChart);
        assert_eq!(by_ctx(ContextId::C5).layer_id, LayerId::TeamPanel);

        assert_eq!(by_ctx(ContextId::C5).marks, [Mark::SidePanel].into_iter().collect());
        assert!(by_ctx(ContextId::C2).marks.is_superset(&[Mark::Line, Mark::Area].into_iter().collect()));
        assert_eq!(
            by_ctx(ContextId::C3).marks,
            [Mark::Point, Mark::Line, Mark::Area].into_iter().collect()
        );
    }

    #[test]
    fn layer_names() {
        assert_eq!("defense".parse::<LayerId>().unwrap(), LayerId::Defense);
        assert_eq!("team-panel".parse::<LayerId>().unwrap(), LayerId::TeamPanel);
        assert_eq!("SHOT_LABEL".parse::<LayerId>().unwrap(), LayerId::ShotLabel);
        assert_eq!(
            "SHOTS".parse::<LayerId>(),
            Err(ModelError::UnknownLayer("SHOTS".into()))
        );
        let set = LayerId::parse_list("defense, team_panel").unwrap();
        assert_eq!(set, [LayerId::Defense, LayerId::TeamPanel].into_iter().collect());
        assert!(LayerId::parse_list("").unwrap().is_empty());
    }
}
