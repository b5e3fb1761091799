//! Top-down SVG render of one composed frame.
//!
//! The court is drawn at 10 px per foot with x to the right and y down.
//! Overlays are drawn for whatever payloads the bundle carries; side panels
//! sit to the right of the court.

use std::fmt::Write;

use crate::analytics::{classify_zone, Hotness};
use crate::ingest::GameMeta;
use crate::model::{CourtGeometry, HoopEnd, LayerId, Point, Team};
use crate::session::{FrameBundle, LayerPayload};

const PX_PER_FT: f64 = 10.0;
const MARGIN_PX: f64 = 20.0;
const PANEL_W_PX: f64 = 300.0;
const HEAT_CELL_FT: f64 = 2.0;
const HANDLER_RED: &str = "#d62728";
const HOT_RED: &str = "#d62728";
const COLD_BLUE: &str = "#1f77b4";
const NEUTRAL_GRAY: &str = "#7f7f7f";

fn px(ft: f64) -> String {
    let v = (ft * PX_PER_FT * 10.0).round() / 10.0;
    if v == 0.0 { "0".into() } else { format!("{v}") }
}

fn pt(p: Point) -> String {
    format!("{},{}", px(p.x), px(p.y))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn pct(v: f64) -> String {
    format!("{v:.1}%")
}

pub fn render_svg(bundle: &FrameBundle, meta: &GameMeta) -> String {
    let geom = &meta.geometry;
    let court_w = geom.length_ft * PX_PER_FT;
    let court_h = geom.width_ft * PX_PER_FT;
    let width = court_w + 3.0 * MARGIN_PX + PANEL_W_PX;
    let height = court_h + 2.0 * MARGIN_PX + 40.0;
    let frame = &bundle.frame;
    let color = |team: Team| escape(meta.team_color(team));
    let team_of = |id: &str| frame.player(id).map(|p| p.team);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r#"<text class="clock" x="{MARGIN_PX}" y="{}">t={} ms  Q{}  {:.1}s</text>"#,
        height - 12.0,
        frame.t_ms,
        frame.period,
        frame.game_clock_s
    );
    let _ = writeln!(s, r#"<g class="court" transform="translate({MARGIN_PX},{MARGIN_PX})">"#);
    court_lines(&mut s, geom);

    if let Some(LayerPayload::ShotChart(chart)) = bundle.layers.get(&LayerId::ShotChart) {
        let hoop = team_of(&chart.player_id)
            .and_then(|t| meta.attacking_hoop(t, frame.period))
            .map(|end| geom.hoop_center(end));
        let _ = writeln!(s, r#"<g class="heat-map" fill-opacity="0.35">"#);
        if let Some(hoop) = hoop {
            let (nx, ny) = ((geom.length_ft / HEAT_CELL_FT) as usize, (geom.width_ft / HEAT_CELL_FT) as usize);
            for i in 0..nx {
                for j in 0..ny {
                    let (x0, y0) = (i as f64 * HEAT_CELL_FT, j as f64 * HEAT_CELL_FT);
                    let center = Point::new(x0 + HEAT_CELL_FT / 2.0, y0 + HEAT_CELL_FT / 2.0);
                    let Ok(zone) = classify_zone(center, hoop, geom) else { continue };
                    let Some(bin) = chart.zone_bins.get(&zone) else { continue };
                    let _ = writeln!(
                        s,
                        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                        px(x0),
                        px(y0),
                        px(HEAT_CELL_FT),
                        px(HEAT_CELL_FT),
                        bin.hex()
                    );
                }
            }
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g class="shot-markers">"#);
        for m in &chart.shot_markers {
            if m.made {
                let _ = writeln!(s, r##"<circle cx="{}" cy="{}" r="6" fill="none" stroke="#2ca02c" stroke-width="2"/>"##, px(m.loc.x), px(m.loc.y));
            } else {
                let (x, y, d) = (m.loc.x, m.loc.y, 0.5);
                let _ = writeln!(
                    s,
                    r##"<path d="M{} {} L{} {} M{} {} L{} {}" stroke="#d62728" stroke-width="2"/>"##,
                    px(x - d), px(y - d), px(x + d), px(y + d), px(x - d), px(y + d), px(x + d), px(y - d)
                );
            }
        }
        let _ = writeln!(s, "</g>");
    }

    if let Some(LayerPayload::Offense(off)) = bundle.layers.get(&LayerId::Offense) {
        let _ = writeln!(s, r#"<g class="offense">"#);
        for p in &off.players {
            let Some(team) = team_of(&p.player_id) else { continue };
            if p.trail.len() > 1 {
                let points: Vec<_> = p.trail.iter().map(|q| pt(*q)).collect();
                let _ = writeln!(
                    s,
                    r#"<polyline class="trail" points="{}" fill="none" stroke="{}" stroke-width="2" stroke-opacity="0.6"/>"#,
                    points.join(" "),
                    color(team)
                );
            }
            let pos = frame.player(&p.player_id).map(|q| q.pos()).unwrap_or_default();
            let fill = if p.is_handler { HANDLER_RED.to_string() } else { color(team) };
            let _ = writeln!(
                s,
                r#"<circle class="open-space" cx="{}" cy="{}" r="{}" fill="{fill}" fill-opacity="0.2" stroke="{fill}"/>"#,
                px(pos.x),
                px(pos.y),
                px(p.open_radius_ft)
            );
        }
        let _ = writeln!(s, "</g>");
    }

    if let Some(LayerPayload::Defense(def)) = bundle.layers.get(&LayerId::Defense) {
        let _ = writeln!(s, r#"<g class="defense">"#);
        if let Some(area) = &def.focus_area {
            let points: Vec<_> = area.iter().map(|q| pt(*q)).collect();
            let _ = writeln!(
                s,
                r##"<polygon class="focus-area" points="{}" fill="#9467bd" fill-opacity="0.25" stroke="#9467bd"/>"##,
                points.join(" ")
            );
        }
        for c in &def.connector_lines {
            let (Some(a), Some(b)) = (frame.player(&c.defender_id), frame.player(&c.handler_id)) else { continue };
            let _ = writeln!(
                s,
                r##"<line class="connector" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000000" stroke-width="2"/>"##,
                px(a.x),
                px(a.y),
                px(b.x),
                px(b.y)
            );
        }
        let _ = writeln!(s, "</g>");
    }

    let _ = writeln!(s, r#"<g class="players">"#);
    for p in &frame.players {
        let _ = writeln!(
            s,
            r##"<circle class="player" cx="{}" cy="{}" r="10" fill="{}" stroke="#000000"/><text x="{}" y="{}" text-anchor="middle" fill="#ffffff" font-size="9">{}</text>"##,
            px(p.x),
            px(p.y),
            color(p.team),
            px(p.x),
            px(p.y + 0.3),
            escape(&p.player_id)
        );
    }
    let ball_r = ((0.5 + 0.05 * frame.ball.z) * PX_PER_FT * 10.0).round() / 10.0;
    let _ = writeln!(
        s,
        r##"<circle class="ball" cx="{}" cy="{}" r="{ball_r}" fill="#ff7f0e" stroke="#000000"/>"##,
        px(frame.ball.x),
        px(frame.ball.y)
    );
    let _ = writeln!(s, "</g>");

    if let Some(LayerPayload::ShotLabel(labels)) = bundle.layers.get(&LayerId::ShotLabel) {
        let _ = writeln!(s, r#"<g class="labels">"#);
        for l in &labels.static_labels {
            let _ = writeln!(
                s,
                r##"<text class="static-label" x="{}" y="{}" fill="#000000">{} {} game {} season {}</text>"##,
                px(l.loc.x),
                px(l.loc.y - 1.5),
                escape(&l.player_id),
                if l.outcome == crate::model::Outcome::Made { "made" } else { "missed" },
                pct(l.game_fg_pct),
                pct(l.season_fg_pct)
            );
        }
        for l in &labels.dynamic_labels {
            let Some(p) = frame.player(&l.player_id) else { continue };
            let fill = match l.hot {
                Hotness::Hot => HOT_RED,
                Hotness::Cold => COLD_BLUE,
                Hotness::Neutral => NEUTRAL_GRAY,
            };
            let text = l.zone_pct.map_or_else(|| "--".to_string(), pct);
            let _ = writeln!(
                s,
                r#"<text class="dynamic-label" x="{}" y="{}" text-anchor="middle" fill="{fill}">{text}</text>"#,
                px(p.x),
                px(p.y - 1.6)
            );
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</g>");

    panels(&mut s, bundle, meta, court_w + 2.0 * MARGIN_PX);
    s.push_str("</svg>\n");
    s
}

fn court_lines(s: &mut String, geom: &CourtGeometry) {
    let (len, wid) = (geom.length_ft, geom.width_ft);
    let _ = writeln!(
        s,
        r##"<rect class="outline" x="0" y="0" width="{}" height="{}" fill="#f3e2c7" stroke="#000000" stroke-width="2"/>"##,
        px(len),
        px(wid)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{}" y1="0" x2="{}" y2="{}" stroke="#000000"/><circle cx="{}" cy="{}" r="60" fill="none" stroke="#000000"/>"##,
        px(geom.mid_x()),
        px(geom.mid_x()),
        px(wid),
        px(geom.mid_x()),
        px(geom.mid_y())
    );
    for end in [HoopEnd::LowX, HoopEnd::HighX] {
        let hoop = geom.hoop_center(end);
        let base = geom.baseline_x(end);
        let dir = if end == HoopEnd::LowX { 1.0 } else { -1.0 };
        let corner_dy = geom.corner_three_ft;
        let arc_dx = (geom.three_pt_arc_ft.powi(2) - corner_dy.powi(2)).max(0.0).sqrt();
        let arc_x = hoop.x + dir * arc_dx;
        let (y_top, y_bot) = (geom.mid_y() - corner_dy, geom.mid_y() + corner_dy);
        let sweep = if end == HoopEnd::LowX { 1 } else { 0 };
        let _ = writeln!(
            s,
            r##"<path class="three-point" d="M{} {} L{} {} A{} {} 0 0 {sweep} {} {} L{} {}" fill="none" stroke="#000000"/>"##,
            px(base),
            px(y_top),
            px(arc_x),
            px(y_top),
            px(geom.three_pt_arc_ft),
            px(geom.three_pt_arc_ft),
            px(arc_x),
            px(y_bot),
            px(base),
            px(y_bot)
        );
        let _ = writeln!(
            s,
            r##"<circle class="rim-zone" cx="{}" cy="{}" r="{}" fill="none" stroke="#000000" stroke-dasharray="4 4"/><circle class="hoop" cx="{}" cy="{}" r="7.5" fill="none" stroke="#ff7f0e" stroke-width="2"/>"##,
            px(hoop.x),
            px(hoop.y),
            px(geom.rim_zone_ft),
            px(hoop.x),
            px(hoop.y)
        );
    }
}

fn panels(s: &mut String, bundle: &FrameBundle, meta: &GameMeta, x0: f64) {
    let row_h = 16.0;
    let mut y = MARGIN_PX;
    if let Some(LayerPayload::TeamPanel(panel)) = bundle.layers.get(&LayerId::TeamPanel) {
        let _ = writeln!(s, r#"<g class="panel team-panel" transform="translate({x0},{y})">"#);
        let _ = writeln!(
            s,
            r#"<text x="0" y="12" font-weight="bold">{} vs {}</text>"#,
            escape(&meta.home_team),
            escape(&meta.away_team)
        );
        for (i, row) in panel.rows.iter().enumerate() {
            let ry = 12.0 + row_h * (i + 1) as f64;
            let cell = |v: f64, bin: Option<crate::model::ColorBin>| {
                let fill = bin.map_or("#000000", |b| b.hex());
                format!("<tspan fill=\"{fill}\">{}</tspan>", (v * 10.0).round() / 10.0)
            };
            let _ = writeln!(
                s,
                r#"<text x="0" y="{ry}">{} {} {}</text>"#,
                escape(&row.name),
                cell(row.home_value, row.home_bin),
                cell(row.away_value, row.away_bin)
            );
        }
        let _ = writeln!(s, "</g>");
        y += 12.0 + row_h * (panel.rows.len() + 2) as f64;
    }
    if let Some(LayerPayload::ShotChart(chart)) = bundle.layers.get(&LayerId::ShotChart) {
        let _ = writeln!(s, r#"<g class="panel shot-chart-panel" transform="translate({x0},{y})">"#);
        let b = &chart.panel;
        let _ = writeln!(
            s,
            r#"<text x="0" y="12" font-weight="bold">{}: {} pts, {}/{} FG</text>"#,
            escape(&chart.player_id),
            b.points,
            b.fgm,
            b.fga
        );
        for (i, (zone, bin)) in chart.zone_bins.iter().enumerate() {
            let ry = 12.0 + row_h * (i + 1) as f64;
            let _ = writeln!(
                s,
                r#"<rect x="0" y="{}" width="12" height="12" fill="{}"/><text x="18" y="{ry}">{zone}</text>"#,
                ry - 10.0,
                bin.hex()
            );
        }
        let _ = writeln!(s, "</g>");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::{demo_game, FixtureSpec};
    use crate::session::Session;

    #[test]
    fn bare_court_has_ten_dots_and_ball() {
        let d = demo_game(FixtureSpec { duration_ms: 1000, ..Default::default() });
        let meta = d.meta.clone();
        let s = Session::new(d, Default::default()).unwrap();
        let svg = render_svg(&s.compose(), &meta);
        assert_eq!(svg.matches(r#"class="player""#).count(), 10);
        assert_eq!(svg.matches(r#"class="ball""#).count(), 1);
        assert!(!svg.contains("panel"));
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn overlays_follow_payloads() {
        let d = demo_game(FixtureSpec { duration_ms: 30_000, ..Default::default() });
        let meta = d.meta.clone();
        let mut s = Session::new(d, LayerId::ALL.into_iter().collect()).unwrap();
        let mut saw_connector = false;
        while let Ok(b) = s.step() {
            let svg = render_svg(&b, &meta);
            assert_eq!(svg.contains("team-panel"), b.layers.contains_key(&LayerId::TeamPanel));
            if let Some(LayerPayload::Defense(def)) = b.layers.get(&LayerId::Defense) {
                assert_eq!(svg.matches(r#"class="connector""#).count(), def.connector_lines.len());
                assert_eq!(svg.contains("focus-area"), def.focus_area.is_some());
                saw_connector |= !def.connector_lines.is_empty();
            }
            if let Some(LayerPayload::Offense(off)) = b.layers.get(&LayerId::Offense) {
                assert_eq!(svg.matches(r#"class="open-space""#).count(), off.players.len());
            }
        }
        assert!(saw_connector);
    }
}
