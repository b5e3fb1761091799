use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ModelError, Point};

/// Court dimensions used by every spatial rule. Defaults are regulation NBA
/// measurements; a dataset manifest may override any of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CourtGeometry {
    pub length_ft: f64,
    pub width_ft: f64,
    /// Distance from each baseline to the hoop center.
    pub hoop_offset_ft: f64,
    pub three_pt_arc_ft: f64,
    pub corner_three_ft: f64,
    pub corner_depth_ft: f64,
    pub rim_zone_ft: f64,
}

impl Default for CourtGeometry {
    fn default() -> Self {
        CourtGeometry {
            length_ft: 94.0,
            width_ft: 50.0,
            hoop_offset_ft: 5.25,
            three_pt_arc_ft: 23.75,
            corner_three_ft: 22.0,
            corner_depth_ft: 14.0,
            rim_zone_ft: 8.0,
        }
    }
}

impl CourtGeometry {
    pub fn mid_x(&self) -> f64 {
        self.length_ft / 2.0
    }

    pub fn mid_y(&self) -> f64 {
        self.width_ft / 2.0
    }

    pub fn hoop_center(&self, end: HoopEnd) -> Point {
        match end {
            HoopEnd::LowX => Point::new(self.hoop_offset_ft, self.mid_y()),
            HoopEnd::HighX => Point::new(self.length_ft - self.hoop_offset_ft, self.mid_y()),
        }
    }

    pub fn hoop_centers(&self) -> [Point; 2] {
        [self.hoop_center(HoopEnd::LowX), self.hoop_center(HoopEnd::HighX)]
    }

    /// The baseline end a hoop center belongs to.
    pub fn end_of(&self, hoop: Point) -> HoopEnd {
        if hoop.x < self.mid_x() {
            HoopEnd::LowX
        } else {
            HoopEnd::HighX
        }
    }

    pub fn baseline_x(&self, end: HoopEnd) -> f64 {
        match end {
            HoopEnd::LowX => 0.0,
            HoopEnd::HighX => self.length_ft,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        (0.0..=self.length_ft).contains(&p.x) && (0.0..=self.width_ft).contains(&p.y)
    }

    /// Checks the ordering and symmetry constraints the zone rules depend on.
    pub fn is_consistent(&self) -> bool {
        let [a, b] = self.hoop_centers();
        let symmetric = ((a.x + b.x) - self.length_ft).abs() < 1e-9 && a.y == b.y;
        symmetric
            && self.length_ft > 0.0
            && self.width_ft > 0.0
            && self.rim_zone_ft > 0.0
            && self.rim_zone_ft < self.corner_three_ft
            && self.corner_three_ft < self.three_pt_arc_ft
            && self.corner_depth_ft > 0.0
            && self.corner_depth_ft < self.mid_x()
    }
}

/// Which of the two baskets, named by the court end it sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HoopEnd {
    #[serde(rename = "LOW_X")]
    LowX,
    #[serde(rename = "HIGH_X")]
    HighX,
}

impl HoopEnd {
    pub fn opposite(self) -> HoopEnd {
        match self {
            HoopEnd::LowX => HoopEnd::HighX,
            HoopEnd::HighX => HoopEnd::LowX,
        }
    }
}

/// The seven shot-chart regions of an attacking half-court.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Zone {
    Rim,
    MidLeft,
    MidRight,
    #[serde(rename = "CORNER3_LEFT")]
    Corner3Left,
    #[serde(rename = "CORNER3_RIGHT")]
    Corner3Right,
    ThreeLeft,
    ThreeRight,
}

impl Zone {
    pub const ALL: [Zone; 7] = [
        Zone::Rim,
        Zone::MidLeft,
        Zone::MidRight,
        Zone::Corner3Left,
        Zone::Corner3Right,
        Zone::ThreeLeft,
        Zone::ThreeRight,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Zone::Rim => "RIM",
            Zone::MidLeft => "MID_LEFT",
            Zone::MidRight => "MID_RIGHT",
            Zone::Corner3Left => "CORNER3_LEFT",
            Zone::Corner3Right => "CORNER3_RIGHT",
            Zone::ThreeLeft => "THREE_LEFT",
            Zone::ThreeRight => "THREE_RIGHT",
        }
    }

    pub fn is_three(self) -> bool {
        matches!(
            self,
            Zone::Corner3Left | Zone::Corner3Right | Zone::ThreeLeft | Zone::ThreeRight
        )
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Zone {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Zone::ALL
            .into_iter()
            .find(|z| z.as_str() == s)
            .ok_or_else(|| ModelError::UnknownZone(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_geometry_is_consistent() {
        let g = CourtGeometry::default();
        assert!(g.is_consistent());
        let [a, b] = g.hoop_centers();
        assert_eq!(a, Point::new(5.25, 25.0));
        assert_eq!(b, Point::new(88.75, 25.0));
        assert_eq!(a.x + b.x, g.length_ft);
    }

    #[test]
    fn inconsistent_ordering_detected() {
        let g = CourtGeometry { rim_zone_ft: 23.0, ..Default::default() };
        assert!(!g.is_consistent());
    }

    #[test]
    fn zone_names_round_trip() {
        for z in Zone::ALL {
            assert_eq!(z.as_str().parse::<Zone>().unwrap(), z);
            let json = serde_json::to_string(&z).unwrap();
            assert_eq!(json, format!("\"{}\"", z.as_str()));
        }
        assert!("PAINT".parse::<Zone>().is_err());
    }
}
