//! Static figure output: graphs of interval-permuting maps and colored
//! strips of the decomposition as SVG, and balls of the Cayley tree as DOT.
//!
//! Output is a pure function of the inputs, so identical inputs give
//! byte-identical files. Floating point appears only in emitted coordinates.

use std::fmt::Write;

use crate::freegroup::{Rank, Sign, WordClass};
use crate::labeling::CayleyBall;
use crate::rigid::Piece;

/// Class colors. Pair `j` side `s` takes entry `2(j-1) + s` modulo the
/// length, so rank 2 gets A=#1b9e77, B=#d95f02, C=#7570b3, D=#e7298a.
pub const PALETTE: [&str; 8] =
    ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

/// Color for intervals whose class is beyond the reported pair limit.
pub const OVERFLOW_COLOR: &str = "#bbbbbb";

pub fn class_color(class: WordClass) -> &'static str {
    let slot = 2 * (class.pair as usize - 1) + usize::from(class.side == Sign::Minus);
    PALETTE[slot % PALETTE.len()]
}

const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;

/// Graph of a map given by its pieces over `[lo, hi)`: one segment per piece
/// from `(n, n+offset)` towards `(n+1, n+offset+1)`, a filled dot at the
/// closed left end and an open circle at the excluded right end.
pub fn function_svg(pieces: &[Piece], lo: i64, hi: i64) -> String {
    let ys = pieces.iter().map(|p| p.image_start()).chain([lo, hi]);
    let y_min = ys.clone().min().unwrap_or(lo);
    let y_max = ys.map(|y| y + 1).max().unwrap_or(hi);
    let y_max = y_max.max(hi);
    let width = (hi - lo) as f64 * UNIT + 2.0 * MARGIN;
    let height = (y_max - y_min) as f64 * UNIT + 2.0 * MARGIN;
    let px = |x: i64| (x - lo) as f64 * UNIT + MARGIN;
    let py = |y: i64| (y_max - y) as f64 * UNIT + MARGIN;

    let mut out = String::new();
    writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"##
    )
    .unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="{width:.2}" height="{height:.2}" fill="white"/>"##)
        .unwrap();
    writeln!(out, r##"<g id="grid" stroke="#dddddd" stroke-width="1">"##).unwrap();
    for x in lo..=hi {
        writeln!(
            out,
            r##"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}"/>"##,
            px(x),
            py(y_max),
            py(y_min)
        )
        .unwrap();
    }
    for y in y_min..=y_max {
        writeln!(
            out,
            r##"<line x1="{1:.2}" y1="{0:.2}" x2="{2:.2}" y2="{0:.2}"/>"##,
            py(y),
            px(lo),
            px(hi)
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    writeln!(out, r##"<g id="axes" stroke="black" stroke-width="1.5">"##).unwrap();
    if (lo..=hi).contains(&0) {
        writeln!(
            out,
            r##"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}"/>"##,
            px(0),
            py(y_max),
            py(y_min)
        )
        .unwrap();
    }
    if (y_min..=y_max).contains(&0) {
        writeln!(
            out,
            r##"<line x1="{1:.2}" y1="{0:.2}" x2="{2:.2}" y2="{0:.2}"/>"##,
            py(0),
            px(lo),
            px(hi)
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    writeln!(out, r##"<g id="ticks" font-family="sans-serif" font-size="10" fill="black">"##)
        .unwrap();
    for x in lo..=hi {
        writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x}</text>"##,
            px(x),
            py(y_min) + 14.0
        )
        .unwrap();
    }
    for y in y_min..=y_max {
        writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" text-anchor="end">{y}</text>"##,
            px(lo) - 6.0,
            py(y) + 3.5
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    writeln!(out, r##"<g id="pieces" stroke="#1f4e9c" stroke-width="2.5" fill="#1f4e9c">"##)
        .unwrap();
    for piece in pieces {
        let (x0, y0) = (piece.start, piece.image_start());
        writeln!(
            out,
            r##"<line class="piece" data-n="{}" data-offset="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"##,
            piece.start,
            piece.offset,
            px(x0),
            py(y0),
            px(x0 + 1),
            py(y0 + 1)
        )
        .unwrap();
        writeln!(out, r##"<circle cx="{:.2}" cy="{:.2}" r="3"/>"##, px(x0), py(y0)).unwrap();
        writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="white"/>"##,
            px(x0 + 1),
            py(y0 + 1)
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// One colored unit cell per interval, in window order, with a legend.
/// `cells` holds `(n, class)`; `None` marks a class beyond the pair limit.
pub fn line_strip_svg(cells: &[(i64, Option<WordClass>)], rank: Rank) -> String {
    const CELL: f64 = 24.0;
    let mut legend: Vec<WordClass> = cells.iter().filter_map(|c| c.1).collect();
    legend.sort();
    legend.dedup();
    let has_overflow = cells.iter().any(|c| c.1.is_none());
    let legend_rows = legend.len() + usize::from(has_overflow);

    let width = cells.len().max(1) as f64 * CELL + 2.0 * MARGIN;
    let height = MARGIN + CELL + 20.0 + legend_rows as f64 * 18.0 + MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"##
    )
    .unwrap();
    writeln!(out, r##"<rect x="0" y="0" width="{width:.2}" height="{height:.2}" fill="white"/>"##)
        .unwrap();
    writeln!(out, r##"<g id="cells" stroke="white" stroke-width="1">"##).unwrap();
    for (i, &(n, class)) in cells.iter().enumerate() {
        let color = class.map_or(OVERFLOW_COLOR, class_color);
        let label = class.map_or_else(|| "overflow".to_string(), |c| c.label(rank));
        writeln!(
            out,
            r##"<rect class="cell" data-n="{n}" data-class="{label}" x="{:.2}" y="{MARGIN:.2}" width="{CELL:.2}" height="{CELL:.2}" fill="{color}"/>"##,
            MARGIN + i as f64 * CELL
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    writeln!(out, r##"<g id="indices" font-family="sans-serif" font-size="8" fill="black">"##)
        .unwrap();
    for (i, &(n, _)) in cells.iter().enumerate() {
        writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" text-anchor="middle">{n}</text>"##,
            MARGIN + (i as f64 + 0.5) * CELL,
            MARGIN + CELL + 10.0
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    writeln!(out, r##"<g id="legend" font-family="sans-serif" font-size="11" fill="black">"##)
        .unwrap();
    let special = rank.special_index();
    let entries = legend
        .iter()
        .map(|&c| {
            let mut text = c.label(rank);
            if c.pair == special && rank != Rank::Finite(2) {
                text.push_str(" (special pair)");
            }
            (class_color(c), text)
        })
        .chain(has_overflow.then(|| (OVERFLOW_COLOR, "beyond pair limit".to_string())));
    for (row, (color, text)) in entries.enumerate() {
        let y = MARGIN + CELL + 20.0 + row as f64 * 18.0;
        writeln!(
            out,
            r##"<rect x="{MARGIN:.2}" y="{y:.2}" width="12" height="12" fill="{color}"/><text x="{:.2}" y="{:.2}">{text}</text>"##,
            MARGIN + 18.0,
            y + 10.0
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// DOT digraph of a Cayley ball. Nodes are labeled with their integers and
/// listed by label; an edge `m -> n` marked `x_j` means `σ_j(m) = n`.
pub fn cayley_dot(ball: &CayleyBall) -> String {
    let mut out = String::new();
    writeln!(out, "digraph cayley {{").unwrap();
    writeln!(out, "    graph [layout=neato overlap=false]").unwrap();
    writeln!(out, "    node [shape=circle]").unwrap();
    for entry in &ball.entries {
        writeln!(out, "    \"{0}\" [label=\"{0}\" tooltip=\"{1}\"]", entry.label, entry.word)
            .unwrap();
    }
    let mut edges = ball.edges();
    edges.sort_unstable();
    for (from, to, j) in edges {
        let color = PALETTE[2 * ((j as usize - 1) % 4)];
        writeln!(out, "    \"{from}\" -> \"{to}\" [label=\"x{j}\" color=\"{color}\"]").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
