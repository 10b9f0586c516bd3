//! SVG drawing of a packing as a unit-height strip.
//!
//! Bars in a cell are stacked bottom-up in ascending chart id. Colors cycle
//! through a fixed palette by chart id, so both bars of a chart share one.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{occupancy, Instance, Packing};

const CELL_W: f64 = 48.0;
const STRIP_H: f64 = 240.0;
const MARGIN: f64 = 24.0;
const LABEL_H: f64 = 20.0;

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac",
];

pub fn chart_color(id: usize) -> &'static str {
    PALETTE[id % PALETTE.len()]
}

/// Renders `p`. Infeasible packings are refused.
pub fn render_svg(inst: &Instance, p: &Packing) -> Result<String> {
    let occ = occupancy(inst, p)?;
    if let Some(cell) = occ.first_overload() {
        return Err(Error::InfeasiblePacking {
            cell,
            load: occ.load(cell),
            denominator: occ.denominator(),
        });
    }
    let cells = p.starts().iter().map(|&s| s + 1).max().unwrap_or(0);
    let d = inst.denominator() as f64;
    let width = 2.0 * MARGIN + CELL_W * cells as f64;
    let height = 2.0 * MARGIN + STRIP_H + LABEL_H;
    let floor = MARGIN + STRIP_H;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, "<!-- barpack {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##
    );

    // Bars, cell by cell.
    let mut stacked = vec![0u64; cells + 1];
    for chart in inst.charts() {
        let start = p.starts()[chart.id];
        for (cell, h) in [(start, chart.a.0), (start + 1, chart.b.0)] {
            let x = MARGIN + CELL_W * (cell - 1) as f64;
            let top = floor - STRIP_H * (stacked[cell] + h) as f64 / d;
            let bar_h = STRIP_H * h as f64 / d;
            stacked[cell] += h;
            let _ = writeln!(
                s,
                r##"<rect class="bar" x="{x:.2}" y="{top:.2}" width="{CELL_W:.2}" height="{bar_h:.2}" fill="{}" stroke="#333333" stroke-width="0.5"><title>chart {}</title></rect>"##,
                chart_color(chart.id),
                chart.id
            );
        }
    }

    // Strip outline, cell gridlines and labels.
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN:.2}" y="{MARGIN:.2}" width="{:.2}" height="{STRIP_H:.2}" fill="none" stroke="#000000" stroke-width="1"/>"##,
        CELL_W * cells as f64
    );
    for cell in 1..=cells {
        let x = MARGIN + CELL_W * (cell - 1) as f64;
        if cell > 1 {
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{MARGIN:.2}" x2="{x:.2}" y2="{floor:.2}" stroke="#000000" stroke-width="0.5"/>"##
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{cell}</text>"#,
            x + CELL_W / 2.0,
            floor + LABEL_H - 4.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
