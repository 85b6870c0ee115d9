//! Deterministic SVG and text pictures of tangles, matchings, puzzles and
//! square-grid loop configurations. Coordinates are printed with two
//! decimals so the output bytes depend only on the input.

use std::fmt::Write as _;

use crate::fpl::FplConfig;
use crate::matchings::{PerfectMatching, Side};
use crate::puzzles::{EdgeKind, EdgeRef, Puzzle, TriGrid};
use crate::tangles::PathTangle;
use crate::tfpl_core::Grid;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;
const BLUE: &str = "#1f5fbf";
const RED: &str = "#c8281e";

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.2}\" height=\"{h:.2}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n"
    )
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), color: &str, width: f64, extra: &str) {
    writeln!(
        out,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"{width:.2}\"{extra}/>",
        a.0, a.1, b.0, b.1
    )
    .unwrap();
}

fn text(out: &mut String, at: (f64, f64), s: &str) {
    writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">{s}</text>",
        at.0, at.1
    )
    .unwrap();
}

/// Blue and red polylines on the half-integer lattice, with the bottom word
/// written under the start points.
pub fn tangle_svg(t: &PathTangle) -> String {
    let n = t.n as f64;
    let (w, h) = (2.0 * n * UNIT + 2.0 * MARGIN, n * UNIT + 2.0 * MARGIN);
    let at = |p: (i32, i32)| (MARGIN + p.0 as f64 * UNIT, h - MARGIN - p.1 as f64 * UNIT);
    let mut out = header(w, h);
    for x in 0..2 * t.n {
        line(&mut out, at((x as i32, 0)), at((x as i32 + 1, 0)), "#cccccc", 1.0, "");
    }
    for (family, color) in [(&t.blue, BLUE), (&t.red, RED)] {
        for p in &family.paths {
            let pts: Vec<String> = p
                .points(family.color)
                .into_iter()
                .map(|q| {
                    let (x, y) = at(q);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"3.00\"/>",
                pts.join(" ")
            )
            .unwrap();
        }
    }
    for (i, c) in t.boundary.w.letters().iter().enumerate() {
        let (x, y) = at((2 * i as i32 + 1, 0));
        text(&mut out, (x - UNIT / 2.0, y + 18.0), &c.to_string());
    }
    out.push_str("</svg>\n");
    out
}

pub fn tangle_ascii(t: &PathTangle) -> String {
    let mut out = format!("tangle {}\n", t.boundary);
    for (family, name) in [(&t.blue, "blue"), (&t.red, "red")] {
        for p in &family.paths {
            let end = p.end(family.color);
            writeln!(out, "{name} ({},{}) -> ({},{}) {}", p.start.0, p.start.1, end.0, end.1, p.step_string()).unwrap();
        }
    }
    out
}

fn grid_point(grid: &Grid, v: usize, h: f64) -> (f64, f64) {
    let vx = &grid.vertices[v];
    (MARGIN + vx.x as f64 * UNIT, h - MARGIN - vx.y as f64 * UNIT)
}

/// All edges of G^N in grey, matching edges thick in blue (odd) or red
/// (even).
pub fn matching_svg(grid: &Grid, m: &PerfectMatching) -> String {
    let n = grid.n as f64;
    let (w, h) = (2.0 * n * UNIT + 2.0 * MARGIN, (n - 1.0) * UNIT + 2.0 * MARGIN);
    let mut out = header(w, h);
    for &(a, b) in &grid.edges {
        line(&mut out, grid_point(grid, a, h), grid_point(grid, b, h), "#cccccc", 1.0, "");
    }
    let color = match m.side {
        Side::Odd => BLUE,
        Side::Even => RED,
    };
    for &(a, b) in &m.pairs {
        line(&mut out, grid_point(grid, a, h), grid_point(grid, b, h), color, 4.0, "");
    }
    for v in 0..grid.vertices.len() {
        let (x, y) = grid_point(grid, v, h);
        let fill = if grid.vertices[v].odd { "#000000" } else { "#ffffff" };
        writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3.00\" fill=\"{fill}\" stroke=\"#000000\"/>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn matching_ascii(grid: &Grid, m: &PerfectMatching) -> String {
    let mut out = format!("{:?} matching, {} edges\n", m.side, m.pairs.len());
    for (a, b) in m.arcs() {
        writeln!(out, "{} -> {}", grid.label(a), grid.label(b)).unwrap();
    }
    out
}

/// Vertex `(h, p)` of the triangular grid: row `h` from the bottom.
fn tri_point(n: usize, h: usize, p: usize) -> (f64, f64) {
    let s3 = 3f64.sqrt() / 2.0;
    let x = MARGIN + (p as f64 + h as f64 / 2.0) * UNIT * 1.5;
    let y = MARGIN + (n as f64 - h as f64) * UNIT * 1.5 * s3;
    (x, y)
}

fn tri_edge_ends(n: usize, e: EdgeRef) -> ((f64, f64), (f64, f64)) {
    let (h, p) = (e.h, e.p);
    match e.kind {
        EdgeKind::Slash => (tri_point(n, h, p), tri_point(n, h + 1, p)),
        EdgeKind::Back => (tri_point(n, h, p + 1), tri_point(n, h + 1, p)),
        EdgeKind::Flat => (tri_point(n, h, p), tri_point(n, h, p + 1)),
    }
}

/// Edges coloured by label (0 blue, 1 red, 2 grey); the two edges of an
/// excess are dashed.
pub fn puzzle_svg(pz: &Puzzle) -> String {
    let n = pz.n;
    let grid = TriGrid::new(n);
    let s3 = 3f64.sqrt() / 2.0;
    let (w, h) = (n as f64 * UNIT * 1.5 + 2.0 * MARGIN, n as f64 * UNIT * 1.5 * s3 + 2.0 * MARGIN);
    let flipped: Vec<EdgeRef> = pz.excess.map(|x| x.flipped_edges().iter().map(|f| f.0).collect()).unwrap_or_default();
    let mut out = header(w, h);
    for id in 0..grid.edge_count() {
        let e = grid.edge_ref(id);
        let (a, b) = tri_edge_ends(n, e);
        let color = match pz.labels[id] {
            0 => BLUE,
            1 => RED,
            _ => "#888888",
        };
        let dash = if flipped.contains(&e) { " stroke-dasharray=\"6,4\"" } else { "" };
        line(&mut out, a, b, color, 3.0, dash);
        text(&mut out, ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0 - 4.0), &pz.labels[id].to_string());
    }
    out.push_str("</svg>\n");
    out
}

/// Up-triangle labels `(/ \ -)` row by row, top row first.
pub fn puzzle_ascii(pz: &Puzzle) -> String {
    let grid = TriGrid::new(pz.n);
    let mut out = format!("{:?} puzzle of size {}", pz.kind(), pz.n);
    if let Some(x) = pz.excess {
        write!(out, ", excess at ({}, {})", x.h, x.p).unwrap();
    }
    out.push('\n');
    for h in (0..pz.n).rev() {
        out.push_str(&" ".repeat(2 * h));
        let cells: Vec<String> = (0..pz.n - h)
            .map(|p| {
                let l = |k| pz.label(&grid, EdgeRef::new(k, h, p));
                format!("{}{}{}", l(EdgeKind::Slash), l(EdgeKind::Back), l(EdgeKind::Flat))
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn fpl_svg(f: &FplConfig) -> String {
    let n = f.n;
    let side = (n as f64 + 1.0) * UNIT + 2.0 * MARGIN;
    let at = |r: f64, c: f64| (MARGIN + (c + 1.0) * UNIT, MARGIN + (r + 1.0) * UNIT);
    let mut out = header(side, side);
    let ascii = f.to_ascii();
    // Edges are read back from the character picture so both formats agree.
    let rows: Vec<Vec<char>> = ascii.lines().map(|l| l.chars().collect()).collect();
    let get = |y: usize, x: usize| rows.get(y).and_then(|r| r.get(x)).copied().unwrap_or(' ');
    for r in 0..n {
        for c in 0..n {
            let (y, x) = (2 * r + 1, 4 * c + 3);
            let here = at(r as f64, c as f64);
            if get(y, x + 2) == '-' {
                let to = if c + 1 < n { at(r as f64, c as f64 + 1.0) } else { at(r as f64, c as f64 + 0.6) };
                line(&mut out, here, to, "#000000", 3.0, "");
            }
            if get(y + 1, x) == '|' {
                let to = if r + 1 < n { at(r as f64 + 1.0, c as f64) } else { at(r as f64 + 0.6, c as f64) };
                line(&mut out, here, to, "#000000", 3.0, "");
            }
            if c == 0 && get(y, x - 2) == '-' {
                line(&mut out, here, at(r as f64, c as f64 - 0.6), "#000000", 3.0, "");
            }
            if r == 0 && get(y - 1, x) == '|' {
                line(&mut out, here, at(r as f64 - 0.6, c as f64), "#000000", 3.0, "");
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
