use serde::{Deserialize, Serialize};

use super::ModelError;

/// Five-step diverging palette for a percentage compared to a reference.
/// Variants are declared in ascending order so the derived `Ord` matches
/// cold-to-hot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ColorBin {
    DarkBlue,
    Blue,
    Yellow,
    Orange,
    Red,
}

impl ColorBin {
    pub fn hex(self) -> &'static str {
        match self {
            ColorBin::DarkBlue => "#1f3f99",
            ColorBin::Blue => "#5b9bd5",
            ColorBin::Yellow => "#f2d649",
            ColorBin::Orange => "#f08c2e",
            ColorBin::Red => "#d62728",
        }
    }
}

/// Bins a difference in percentage points (player minus reference).
///
/// Intervals are half-open toward zero: -5 is BLUE and +5 is ORANGE.
pub fn color_bin(diff_pct: f64) -> Result<ColorBin, ModelError> {
    if !diff_pct.is_finite() {
        return Err(ModelError::NonFinite(diff_pct));
    }
    let bin = if diff_pct <= -10.0 {
        ColorBin::DarkBlue
    } else if diff_pct <= -5.0 {
        ColorBin::Blue
    } else if diff_pct < 5.0 {
        ColorBin::Yellow
    } else if diff_pct < 10.0 {
        ColorBin::Orange
    } else {
        ColorBin::Red
    };
    Ok(bin)
}
