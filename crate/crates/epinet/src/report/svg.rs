//! Summary plots of a profile table as standalone SVG.
//!
//! Each panel shows one bar per node, all of equal width, together spanning
//! the "proportion of total" axis from 0 to 1. Bar height is `S` and a black
//! line traces `pi`, both on a shared base-10 log axis. Bar shading darkens
//! with `D` relative to the largest `D` across all panels. Zeros cannot sit on
//! a log axis, so `S = 0` is drawn as a short stub and `pi = 0` on the floor.

use std::cmp::Ordering;
use std::fmt::Write as _;

use epinet_core::{NodeProfile, ProfileTable};

use crate::error::{Error, Result};

/// Primary ordering of bars, left to right, ascending. Ties fall through to
/// `pi`, then `S`, then `D`, then node id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortKey {
    #[default]
    Pi,
    S,
    D,
    Node,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub sort: SortKey,
    pub panel_width: f64,
    pub panel_height: f64,
}

impl Default for PlotSpec {
    fn default() -> Self {
        Self { sort: SortKey::Pi, panel_width: 640.0, panel_height: 400.0 }
    }
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const STUB: f64 = 2.0;
const LIGHT: (f64, f64, f64) = (222.0, 235.0, 247.0);
const DARK: (f64, f64, f64) = (8.0, 48.0, 107.0);

fn compare(key: SortKey, a: &NodeProfile, b: &NodeProfile) -> Ordering {
    let primary = match key {
        SortKey::Pi => a.pi.cmp(&b.pi),
        SortKey::S => a.s.cmp(&b.s),
        SortKey::D => a.d.cmp(&b.d),
        SortKey::Node => a.node.cmp(&b.node),
    };
    primary
        .then(a.pi.cmp(&b.pi))
        .then(a.s.cmp(&b.s))
        .then(a.d.cmp(&b.d))
        .then_with(|| a.node.cmp(&b.node))
}

/// Rows in left-to-right bar order.
pub fn bar_order(table: &ProfileTable, key: SortKey) -> Vec<&NodeProfile> {
    let mut rows: Vec<&NodeProfile> = table.rows().iter().collect();
    rows.sort_by(|a, b| compare(key, a, b));
    rows
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn shade(d: u32, max_d: u32) -> String {
    let t = if max_d == 0 { 0.0 } else { d as f64 / max_d as f64 };
    let mix = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(LIGHT.0, DARK.0), mix(LIGHT.1, DARK.1), mix(LIGHT.2, DARK.2))
}

/// Vertical log scale shared by all panels: `1` at the floor, the next power
/// of ten at or above the largest plotted value at the top.
struct LogScale {
    decades: u32,
    top: f64,
    height: f64,
}

impl LogScale {
    fn new(max_value: u64, top: f64, height: f64) -> Self {
        let mut decades = 1;
        while 10u64.saturating_pow(decades) < max_value {
            decades += 1;
        }
        Self { decades, top, height }
    }

    fn floor(&self) -> f64 {
        self.top + self.height
    }

    /// Screen y of `value`; zero maps to the floor.
    fn y(&self, value: u64) -> f64 {
        if value <= 1 {
            return self.floor();
        }
        self.floor() - self.height * (value as f64).log10() / self.decades as f64
    }
}

/// Single-panel plot of `table`.
pub fn render_sullivan_plot(table: &ProfileTable, spec: &PlotSpec, title: &str) -> Result<String> {
    render_panels(&[(title, table)], spec)
}

/// Panels left to right in the given order, sharing the vertical scale and
/// the shading range.
pub fn render_multi_panel(tables: &[(&str, &ProfileTable)], spec: &PlotSpec) -> Result<String> {
    render_panels(tables, spec)
}

fn render_panels(tables: &[(&str, &ProfileTable)], spec: &PlotSpec) -> Result<String> {
    if tables.is_empty() {
        return Err(Error::invalid("nothing to plot: pass at least one profile table"));
    }
    if let Some(pos) = tables.iter().position(|(_, t)| t.is_empty()) {
        return Err(Error::invalid(format!(
            "panel {} ({}) has no rows; profile the graph before plotting",
            pos + 1,
            tables[pos].0
        )));
    }
    let max_value = tables
        .iter()
        .flat_map(|(_, t)| t.rows())
        .map(|r| r.pi.max(r.s as u64))
        .max()
        .unwrap_or(0);
    let max_d = tables.iter().map(|(_, t)| t.max_d()).max().unwrap_or(0);
    let plot_height = spec.panel_height - MARGIN_TOP - MARGIN_BOTTOM;
    let plot_width = spec.panel_width - MARGIN_LEFT - MARGIN_RIGHT;
    let scale = LogScale::new(max_value, MARGIN_TOP, plot_height);
    let total_width = spec.panel_width * tables.len() as f64;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_width:.0}" height="{:.0}" viewBox="0 0 {total_width:.0} {:.0}" font-family="sans-serif" font-size="12">"#,
        spec.panel_height, spec.panel_height
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{total_width:.0}" height="{:.0}" fill="white"/>"#, spec.panel_height);
    for (p, (title, table)) in tables.iter().enumerate() {
        let left = p as f64 * spec.panel_width + MARGIN_LEFT;
        let rows = bar_order(table, spec.sort);
        let bar = plot_width / rows.len() as f64;
        let _ = writeln!(svg, r#"<g class="panel" id="panel-{}">"#, p + 1);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#,
            left + plot_width / 2.0,
            MARGIN_TOP / 2.0 + 5.0,
            escape(title)
        );

        let _ = writeln!(svg, r#"<g class="bars" stroke="none">"#);
        for (i, row) in rows.iter().enumerate() {
            let x = left + i as f64 * bar;
            let y = if row.s <= 1 { scale.floor() - STUB } else { scale.y(row.s as u64).min(scale.floor() - STUB) };
            let _ = writeln!(
                svg,
                r#"<rect x="{x:.3}" y="{y:.3}" width="{bar:.3}" height="{:.3}" fill="{}"/>"#,
                scale.floor() - y,
                shade(row.d, max_d)
            );
        }
        let _ = writeln!(svg, "</g>");

        let points: Vec<String> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| format!("{:.3},{:.3}", left + (i as f64 + 0.5) * bar, scale.y(row.pi)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="pi" fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
        if rows.len() == 1 {
            let _ = writeln!(
                svg,
                r#"<circle class="pi" cx="{:.3}" cy="{:.3}" r="3" fill="black"/>"#,
                left + bar / 2.0,
                scale.y(rows[0].pi)
            );
        }

        // Axes.
        let floor = scale.floor();
        let _ = writeln!(svg, r#"<g class="axes" stroke="black" stroke-width="1">"#);
        let _ = writeln!(svg, r#"<line x1="{left:.2}" y1="{floor:.2}" x2="{:.2}" y2="{floor:.2}"/>"#, left + plot_width);
        let _ = writeln!(svg, r#"<line x1="{left:.2}" y1="{MARGIN_TOP:.2}" x2="{left:.2}" y2="{floor:.2}"/>"#);
        for q in 0..=4 {
            let x = left + plot_width * q as f64 / 4.0;
            let _ = writeln!(svg, r#"<line x1="{x:.2}" y1="{floor:.2}" x2="{x:.2}" y2="{:.2}"/>"#, floor + 5.0);
        }
        for d in 0..=scale.decades {
            let y = scale.y(10u64.pow(d));
            let _ = writeln!(svg, r#"<line x1="{:.2}" y1="{y:.2}" x2="{left:.2}" y2="{y:.2}"/>"#, left - 5.0);
        }
        let _ = writeln!(svg, "</g>");
        let _ = writeln!(svg, r#"<g class="labels" fill="black">"#);
        for q in 0..=4 {
            let x = left + plot_width * q as f64 / 4.0;
            let _ = writeln!(
                svg,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{:.2}</text>"#,
                floor + 18.0,
                q as f64 / 4.0
            );
        }
        for d in 0..=scale.decades {
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                left - 8.0,
                scale.y(10u64.pow(d)) + 4.0,
                10u64.pow(d)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">proportion of total</text>"#,
            left + plot_width / 2.0,
            floor + 38.0
        );
        let mid = MARGIN_TOP + plot_height / 2.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{mid:.2}" text-anchor="middle" transform="rotate(-90 {:.2} {mid:.2})">S (bars), π (line), log scale</text>"#,
            left - 48.0,
            left - 48.0
        );
        let _ = writeln!(svg, "</g>");
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
