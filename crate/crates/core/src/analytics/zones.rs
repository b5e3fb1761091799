use crate::model::{CourtGeometry, HoopEnd, Point, Zone};

use super::AnalyticsError;

/// Assigns a point of the attacking half-court to one of the seven zones.
///
/// "Left" is the shooter's left when facing the hoop: `y >= mid` for the
/// low-x hoop, `y <= mid` for the high-x hoop. Points exactly on the
/// center line go LEFT.
pub fn classify_zone(p: Point, hoop: Point, geom: &CourtGeometry) -> Result<Zone, AnalyticsError> {
    let end = geom.end_of(hoop);
    let depth = (p.x - geom.baseline_x(end)).abs();
    if depth > geom.mid_x() {
        return Err(AnalyticsError::PointInWrongHalf { x: p.x, y: p.y });
    }

    let dist = p.dist(hoop);
    if dist <= geom.rim_zone_ft {
        return Ok(Zone::Rim);
    }

    let left = match end {
        HoopEnd::LowX => p.y >= hoop.y,
        HoopEnd::HighX => p.y <= hoop.y,
    };
    let in_corner_band = depth <= geom.corner_depth_ft;
    let zone = if in_corner_band && (p.y - hoop.y).abs() >= geom.corner_three_ft {
        if left { Zone::Corner3Left } else { Zone::Corner3Right }
    } else if !in_corner_band && dist > geom.three_pt_arc_ft {
        if left { Zone::ThreeLeft } else { Zone::ThreeRight }
    } else if left {
        Zone::MidLeft
    } else {
        Zone::MidRight
    };
    Ok(zone)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> CourtGeometry {
        CourtGeometry::default()
    }

    const LOW: Point = Point::new(5.25, 25.0);
    const HIGH: Point = Point::new(88.75, 25.0);

    #[test]
    fn rim_within_eight() {
        assert_eq!(classify_zone(Point::new(10.25, 25.0), LOW, &g()), Ok(Zone::Rim));
        assert_eq!(classify_zone(Point::new(5.25, 33.0), LOW, &g()), Ok(Zone::Rim));
        assert_eq!(classify_zone(Point::new(5.25, 33.001), LOW, &g()), Ok(Zone::MidLeft));
    }

    #[test]
    fn named_points() {
        assert_eq!(classify_zone(Point::new(3.0, 1.5), LOW, &g()), Ok(Zone::Corner3Right));
        assert_eq!(classify_zone(Point::new(30.0, 40.0), LOW, &g()), Ok(Zone::ThreeLeft));
        assert_eq!(classify_zone(Point::new(15.0, 25.0), LOW, &g()), Ok(Zone::MidLeft));
    }

    #[test]
    fn mirrored_for_high_hoop() {
        assert_eq!(classify_zone(Point::new(91.0, 1.5), HIGH, &g()), Ok(Zone::Corner3Left));
        assert_eq!(classify_zone(Point::new(64.0, 40.0), HIGH, &g()), Ok(Zone::ThreeRight));
        assert_eq!(classify_zone(Point::new(79.0, 25.0), HIGH, &g()), Ok(Zone::MidLeft));
    }

    #[test]
    fn wrong_half() {
        assert!(matches!(
            classify_zone(Point::new(60.0, 25.0), LOW, &g()),
            Err(AnalyticsError::PointInWrongHalf { .. })
        ));
        assert!(classify_zone(Point::new(47.0, 25.0), LOW, &g()).is_ok());
    }
}
