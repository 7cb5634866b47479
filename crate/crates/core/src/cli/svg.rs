//! Standalone SVG heatmaps of a sweep: χ_R on the x axis, χ_I on the y axis
//! (increasing upwards), one rectangle per cell on a linear viridis scale.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::{Metric, SweepRecord};

const PLOT: f64 = 600.0;
const LEFT: f64 = 70.0;
const TOP: f64 = 40.0;
const LEGEND_W: f64 = 20.0;
const MISSING: &str = "#cccccc";

// Viridis anchor colors at t = 0, 0.25, 0.5, 0.75, 1.
const VIRIDIS: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (VIRIDIS.len() - 1) as f64;
    let i = (t.floor() as usize).min(VIRIDIS.len() - 2);
    let f = t - i as f64;
    let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
    let mix = |x: f64, y: f64| (x + (y - x) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn label(metric: Metric) -> &'static str {
    match metric {
        Metric::Mc => "Memory capacity (MC)",
        Metric::Neff => "Effective dimension (N_eff)",
    }
}

/// Renders the heatmap; fails unless the records cover every
/// `(chi_r, chi_i)` pair of their axes exactly once.
pub fn render_svg_heatmap(records: &[SweepRecord], metric: Metric) -> Result<String> {
    if records.is_empty() {
        return Err(Error::GridShape("no records".into()));
    }
    let xs: Vec<usize> = records.iter().map(|r| r.chi_r).collect::<BTreeSet<_>>().into_iter().collect();
    let ys: Vec<usize> = records.iter().map(|r| r.chi_i).collect::<BTreeSet<_>>().into_iter().collect();
    let mut cells: HashMap<(usize, usize), f64> = HashMap::with_capacity(records.len());
    for r in records {
        if cells.insert((r.chi_r, r.chi_i), r.mean(metric)).is_some() {
            return Err(Error::GridShape(format!("duplicate cell ({}, {})", r.chi_r, r.chi_i)));
        }
    }
    if cells.len() != xs.len() * ys.len() {
        return Err(Error::GridShape(format!(
            "{} cells for a {}x{} grid",
            cells.len(),
            xs.len(),
            ys.len()
        )));
    }

    let finite = || cells.values().copied().filter(|v| v.is_finite());
    let lo = finite().fold(f64::INFINITY, f64::min);
    let hi = finite().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let scale = |v: f64| if span > 0.0 { (v - lo) / span } else { 0.0 };

    let cw = PLOT / xs.len() as f64;
    let ch = PLOT / ys.len() as f64;
    let width = LEFT + PLOT + 40.0 + LEGEND_W + 90.0;
    let height = TOP + PLOT + 60.0;

    let mut s = String::with_capacity(200 * cells.len() + 2048);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + PLOT / 2.0,
        label(metric)
    );
    let _ = writeln!(s, r#"<g class="cells" shape-rendering="crispEdges">"#);
    for (yi, &chi_i) in ys.iter().enumerate() {
        for (xi, &chi_r) in xs.iter().enumerate() {
            let v = cells[&(chi_r, chi_i)];
            let fill = if v.is_finite() { color(scale(v)) } else { MISSING.to_string() };
            let x = LEFT + xi as f64 * cw;
            let y = TOP + PLOT - (yi + 1) as f64 * ch;
            let _ = writeln!(
                s,
                r#"<rect class="cell" x="{x:.3}" y="{y:.3}" width="{cw:.3}" height="{ch:.3}" fill="{fill}"><title>chi_r={chi_r} chi_i={chi_i} value={v}</title></rect>"#
            );
        }
    }
    s.push_str("</g>\n");

    // Axis ticks: at most ~10 labels per axis.
    let tick_every = |n: usize| n.div_ceil(10).max(1);
    let step_x = tick_every(xs.len());
    for (xi, chi_r) in xs.iter().enumerate().filter(|(i, _)| i % step_x == 0) {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{}" text-anchor="middle">{chi_r}</text>"#,
            LEFT + (xi as f64 + 0.5) * cw,
            TOP + PLOT + 16.0
        );
    }
    let step_y = tick_every(ys.len());
    for (yi, chi_i) in ys.iter().enumerate().filter(|(i, _)| i % step_y == 0) {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.3}" text-anchor="end" dominant-baseline="middle">{chi_i}</text>"#,
            LEFT - 6.0,
            TOP + PLOT - (yi as f64 + 0.5) * ch
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="{}" y="{}" text-anchor="middle" font-size="14">χ_R (recurrent connections per unit)</text>"#,
        LEFT + PLOT / 2.0,
        TOP + PLOT + 40.0
    );
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="18" y="{0}" text-anchor="middle" font-size="14" transform="rotate(-90 18 {0})">χ_I (connections per input)</text>"#,
        TOP + PLOT / 2.0
    );

    // Legend: vertical gradient, max at the top.
    let lx = LEFT + PLOT + 40.0;
    s.push_str("<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">\n");
    for k in 0..=10 {
        let t = k as f64 / 10.0;
        let _ = writeln!(s, r#"<stop offset="{t}" stop-color="{}"/>"#, color(t));
    }
    s.push_str("</linearGradient></defs>\n");
    let _ = writeln!(
        s,
        r#"<rect class="legend" x="{lx}" y="{TOP}" width="{LEGEND_W}" height="{PLOT}" fill="url(#scale)"/>"#
    );
    if span > 0.0 {
        let _ = writeln!(
            s,
            r#"<text class="legend-max" x="{}" y="{}" dominant-baseline="middle">max {}</text>"#,
            lx + LEGEND_W + 6.0,
            TOP,
            fmt_value(hi)
        );
        let _ = writeln!(
            s,
            r#"<text class="legend-min" x="{}" y="{}" dominant-baseline="middle">min {}</text>"#,
            lx + LEGEND_W + 6.0,
            TOP + PLOT,
            fmt_value(lo)
        );
    } else {
        let _ = writeln!(
            s,
            r#"<text class="legend-min legend-max" x="{}" y="{}" dominant-baseline="middle">min = max = {}</text>"#,
            lx + LEGEND_W + 6.0,
            TOP + PLOT,
            fmt_value(lo)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn fmt_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.4}")
    } else {
        "n/a".into()
    }
}

pub fn write_svg_heatmap(records: &[SweepRecord], metric: Metric, path: &Path) -> Result<()> {
    super::csv::write_file(path, &render_svg_heatmap(records, metric)?)
}
