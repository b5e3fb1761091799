use crate::model::Point;

/// Smallest enclosed area that still counts as a defensive focus region.
pub const MIN_FOCUS_AREA_SQ_FT: f64 = 1.0;

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Andrew's monotone chain. Returns the hull counter-clockwise, starting at
/// the lowest-x (then lowest-y) point, with collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in [&pts[..], &pts.iter().rev().copied().collect::<Vec<_>>()[..]] {
        let base = hull.len();
        for &p in pass {
            while hull.len() >= base + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Shoelace formula; positive for counter-clockwise polygons.
pub fn polygon_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum();
    twice / 2.0
}

/// Inclusive containment test for a counter-clockwise convex polygon.
pub fn point_in_convex_polygon(poly: &[Point], p: Point, tol: f64) -> bool {
    let n = poly.len();
    (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= -tol)
}

/// Region enclosed by the key defenders, if it is a real polygon.
pub fn focus_area(key_defenders: &[Point]) -> Option<Vec<Point>> {
    let hull = convex_hull(key_defenders);
    (hull.len() >= 3 && polygon_area(&hull) >= MIN_FOCUS_AREA_SQ_FT).then_some(hull)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn triangle() {
        let hull = focus_area(&[p(10.0, 10.0), p(14.0, 10.0), p(12.0, 14.0)]).unwrap();
        assert_eq!(hull.len(), 3);
        assert_eq!(polygon_area(&hull), 8.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(focus_area(&[p(1.0, 1.0), p(5.0, 5.0)]), None);
        assert_eq!(focus_area(&[p(1.0, 1.0), p(2.0, 2.0), p(3.0, 3.0)]), None);
        assert_eq!(focus_area(&[p(1.0, 1.0), p(1.0, 1.0), p(1.0, 1.0)]), None);
        // Real triangle but under one square foot.
        assert_eq!(focus_area(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]), None);
    }

    /// Brute force: an edge (a, b) is a hull edge when every other point is
    /// strictly left of it or on the segment.
    fn brute_hull_vertices(pts: &[Point]) -> Vec<(u64, u64)> {
        let mut verts = Vec::new();
        for (i, &a) in pts.iter().enumerate() {
            for (j, &b) in pts.iter().enumerate() {
                if i == j || a == b {
                    continue;
                }
                let ok = pts.iter().all(|&c| {
                    let cr = cross(a, b, c);
                    if cr > 1e-9 {
                        return true;
                    }
                    if cr < -1e-9 {
                        return false;
                    }
                    // collinear: must lie within the segment
                    let t = ((c.x - a.x) * (b.x - a.x) + (c.y - a.y) * (b.y - a.y))
                        / ((b.x - a.x).powi(2) + (b.y - a.y).powi(2));
                    (-1e-9..=1.0 + 1e-9).contains(&t)
                });
                if ok {
                    verts.push((a.x.to_bits(), a.y.to_bits()));
                    verts.push((b.x.to_bits(), b.y.to_bits()));
                }
            }
        }
        verts.sort();
        verts.dedup();
        verts
    }

    proptest! {
        #[test]
        fn hull_matches_brute_force(raw in proptest::collection::vec((0i32..40, 0i32..40), 3..=10)) {
            let pts: Vec<Point> = raw.iter().map(|&(x, y)| p(x as f64, y as f64)).collect();
            let hull = convex_hull(&pts);
            if hull.len() >= 3 && polygon_area(&hull) > 0.0 {
                for &q in &pts {
                    prop_assert!(point_in_convex_polygon(&hull, q, 1e-9));
                }
                let mut got: Vec<_> = hull.iter().map(|v| (v.x.to_bits(), v.y.to_bits())).collect();
                got.sort();
                prop_assert_eq!(got, brute_hull_vertices(&pts));
            }
        }
    }
}
