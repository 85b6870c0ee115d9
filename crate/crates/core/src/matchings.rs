//! Perfect matchings of the odd and even subgraphs of G^N, their encoding
//! as families of nonintersecting lattice paths, and determinant counts.
//!
//! An oriented TFPL splits into the arcs leaving odd vertices (a perfect
//! matching of the odd subgraph) and the arcs leaving even vertices (a
//! perfect matching of the even subgraph), and the two are edge-disjoint.

use crate::algebra::{binomial, integer_determinant};
use crate::tfpl_core::{Dir, EdgeSet, Grid, OrientedTfpl, Special, TfplError, VertexId};
use crate::words::Word;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Odd,
    Even,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("word lengths differ from grid size")]
    Length,
    #[error("content mismatch: the determinant formula needs {0}")]
    Content(&'static str),
    #[error("matchings are not edge-disjoint")]
    NotDisjoint,
    #[error("matching has the wrong side")]
    WrongSide,
    #[error("invalid path family: {0}")]
    BadPaths(String),
}

/// G^N_o(u, w) or G^N_e(v, w).
///
/// The odd graph drops every R_i, every L_i with u_i = 0 and every B_i with
/// w_i = 0. The even graph drops every L_i, every R_i with v_i = 1 and
/// every B_i with w_i = 1.
#[derive(Clone, Debug)]
pub struct MatchingGraph {
    pub side: Side,
    pub word: Word,
    pub w: Word,
    pub retained: Vec<bool>,
    /// Retained vertices along NW-SE diagonals, left to right, each
    /// diagonal top to bottom.
    order: Vec<VertexId>,
}

impl MatchingGraph {
    pub fn new(grid: &Grid, side: Side, word: &Word, w: &Word) -> MatchingGraph {
        let retained: Vec<bool> = grid
            .vertices
            .iter()
            .map(|vx| match (side, vx.special) {
                (Side::Odd, Special::Right(_)) => false,
                (Side::Odd, Special::Left(i)) => word.at(i) == 1,
                (Side::Odd, Special::Bottom(i)) => w.at(i) == 1,
                (Side::Even, Special::Left(_)) => false,
                (Side::Even, Special::Right(i)) => word.at(i) == 0,
                (Side::Even, Special::Bottom(i)) => w.at(i) == 0,
                (_, Special::Inner) => true,
            })
            .collect();
        let mut order: Vec<VertexId> = (0..grid.vertices.len()).filter(|&v| retained[v]).collect();
        order.sort_by_key(|&v| (grid.vertices[v].x + grid.vertices[v].y, -grid.vertices[v].y));
        MatchingGraph { side, word: word.clone(), w: w.clone(), retained, order }
    }

    /// Numbers of retained odd and even vertices.
    pub fn vertex_counts(&self, grid: &Grid) -> (usize, usize) {
        let odd = self.order.iter().filter(|&&v| grid.vertices[v].odd).count();
        (odd, self.order.len() - odd)
    }
}

/// Counts of matching edges by direction, read from the odd vertex (odd
/// side) or from the even vertex (even side).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DirectionCensus {
    pub up: usize,
    pub down: usize,
    pub left: usize,
    pub right: usize,
}

impl DirectionCensus {
    pub fn total(&self) -> usize {
        self.up + self.down + self.left + self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    pub side: Side,
    /// (odd vertex, even vertex), sorted.
    pub pairs: Vec<(VertexId, VertexId)>,
    pub edges: EdgeSet,
}

impl PerfectMatching {
    fn from_pairs(grid: &Grid, side: Side, mut pairs: Vec<(VertexId, VertexId)>) -> PerfectMatching {
        pairs.sort_unstable();
        let mut edges = EdgeSet::default();
        for &(a, b) in &pairs {
            edges.insert(grid.edge_between(a, b).expect("pair along an edge"));
        }
        PerfectMatching { side, pairs, edges }
    }

    /// Arcs of the oriented TFPL contributed by this matching.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.pairs.iter().map(move |&(o, e)| match self.side {
            Side::Odd => (o, e),
            Side::Even => (e, o),
        })
    }

    pub fn direction_census(&self, grid: &Grid) -> DirectionCensus {
        let mut c = DirectionCensus::default();
        for (a, b) in self.arcs() {
            match grid.direction(a, b).unwrap() {
                Dir::U => c.up += 1,
                Dir::D => c.down += 1,
                Dir::L => c.left += 1,
                Dir::R => c.right += 1,
            }
        }
        c
    }

    /// Checks that the matching covers exactly the retained vertices.
    pub fn is_perfect_on(&self, grid: &Grid, g: &MatchingGraph) -> bool {
        let mut hit = vec![0u8; grid.vertices.len()];
        for &(o, e) in &self.pairs {
            if !grid.vertices[o].odd || grid.vertices[e].odd || grid.edge_between(o, e).is_none() {
                return false;
            }
            hit[o] += 1;
            hit[e] += 1;
        }
        (0..grid.vertices.len()).all(|v| hit[v] == g.retained[v] as u8)
    }

    pub fn to_json(&self, grid: &Grid) -> serde_json::Value {
        let edges: Vec<[String; 2]> = self.arcs().map(|(a, b)| [grid.label(a), grid.label(b)]).collect();
        serde_json::json!({ "side": self.side, "edges": edges })
    }
}

/// Calls `f` on every perfect matching of `g` that uses no edge of
/// `excluded`.
pub fn for_each_matching_avoiding(
    grid: &Grid,
    g: &MatchingGraph,
    excluded: &EdgeSet,
    mut f: impl FnMut(&PerfectMatching),
) {
    let (odd, even) = g.vertex_counts(grid);
    if odd != even {
        return;
    }
    let mut mate: Vec<Option<VertexId>> = vec![None; grid.vertices.len()];
    let mut pairs = Vec::with_capacity(odd);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        grid: &Grid,
        g: &MatchingGraph,
        excluded: &EdgeSet,
        k: usize,
        mate: &mut Vec<Option<VertexId>>,
        pairs: &mut Vec<(VertexId, VertexId)>,
        f: &mut dyn FnMut(&PerfectMatching),
    ) {
        let mut k = k;
        while k < g.order.len() && mate[g.order[k]].is_some() {
            k += 1;
        }
        if k == g.order.len() {
            f(&PerfectMatching::from_pairs(grid, g.side, pairs.clone()));
            return;
        }
        let v = g.order[k];
        for (_, w, e) in grid.neighbors(v) {
            if !g.retained[w] || mate[w].is_some() || excluded.contains(e) {
                continue;
            }
            mate[v] = Some(w);
            mate[w] = Some(v);
            pairs.push(if grid.vertices[v].odd { (v, w) } else { (w, v) });
            rec(grid, g, excluded, k + 1, mate, pairs, f);
            pairs.pop();
            mate[v] = None;
            mate[w] = None;
        }
    }
    rec(grid, g, excluded, 0, &mut mate, &mut pairs, &mut f);
}

pub fn enumerate_matchings(grid: &Grid, g: &MatchingGraph) -> Vec<PerfectMatching> {
    let mut out = Vec::new();
    for_each_matching_avoiding(grid, g, &EdgeSet::default(), |m| out.push(m.clone()));
    out
}

pub fn count_matchings(grid: &Grid, g: &MatchingGraph) -> u64 {
    let mut c = 0;
    for_each_matching_avoiding(grid, g, &EdgeSet::default(), |_| c += 1);
    c
}

/// Arcs leaving odd vertices and arcs leaving even vertices.
pub fn split_matchings(grid: &Grid, f: &OrientedTfpl) -> (PerfectMatching, PerfectMatching) {
    let mut odd = Vec::new();
    let mut even = Vec::new();
    for &(a, b) in &f.arcs {
        if grid.vertices[a].odd {
            odd.push((a, b));
        } else {
            even.push((b, a));
        }
    }
    (PerfectMatching::from_pairs(grid, Side::Odd, odd), PerfectMatching::from_pairs(grid, Side::Even, even))
}

pub fn merge_matchings(
    grid: &Grid,
    mo: &PerfectMatching,
    me: &PerfectMatching,
) -> Result<OrientedTfpl, MatchingError> {
    if mo.side != Side::Odd || me.side != Side::Even {
        return Err(MatchingError::WrongSide);
    }
    if !mo.edges.is_disjoint(&me.edges) {
        return Err(MatchingError::NotDisjoint);
    }
    Ok(merge_unchecked(grid, mo, me))
}

pub(crate) fn merge_unchecked(grid: &Grid, mo: &PerfectMatching, me: &PerfectMatching) -> OrientedTfpl {
    OrientedTfpl::from_arcs(grid.n, mo.arcs().chain(me.arcs()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    Blue,
    Red,
}

/// Lattice step. Blue paths move left: U = (-1, 1), D = (-1, -1),
/// H = (-2, 0). Red paths move right: U = (1, 1), D = (1, -1), H = (2, 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    U,
    D,
    H,
}

impl Step {
    pub fn delta(self, color: Color) -> (i32, i32) {
        let s = match color {
            Color::Blue => -1,
            Color::Red => 1,
        };
        match self {
            Step::U => (s, 1),
            Step::D => (s, -1),
            Step::H => (2 * s, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::H => 'H',
        }
    }
}

/// A lattice path in the coordinates where blue points have `x + y` even
/// and red points `x + y` odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePath {
    pub start: (i32, i32),
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn points(&self, color: Color) -> Vec<(i32, i32)> {
        let mut pts = vec![self.start];
        let mut p = self.start;
        for s in &self.steps {
            let (dx, dy) = s.delta(color);
            p = (p.0 + dx, p.1 + dy);
            pts.push(p);
        }
        pts
    }

    pub fn end(&self, color: Color) -> (i32, i32) {
        *self.points(color).last().unwrap()
    }

    pub fn step_string(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PathFamily {
    pub color: Color,
    pub paths: Vec<LatticePath>,
}

impl PathFamily {
    pub fn count_steps(&self, step: Step) -> usize {
        self.paths.iter().flat_map(|p| &p.steps).filter(|&&s| s == step).count()
    }

    /// Start points: blue (2i-2, 0) for w_i = 0, red (2i-1, 0) for w_i = 1.
    pub fn starts(color: Color, w: &Word) -> Vec<(i32, i32)> {
        (1..=w.len() as i32)
            .filter(|&i| (w.at(i as usize) == 0) == (color == Color::Blue))
            .map(|i| match color {
                Color::Blue => (2 * i - 2, 0),
                Color::Red => (2 * i - 1, 0),
            })
            .collect()
    }

    /// End points: blue (j-1, j-1) for u_j = 0, red (N-1+j, N-j) for v_j = 1.
    pub fn ends(color: Color, word: &Word) -> Vec<(i32, i32)> {
        let n = word.len() as i32;
        (1..=n)
            .filter(|&j| (word.at(j as usize) == 0) == (color == Color::Blue))
            .map(|j| match color {
                Color::Blue => (j - 1, j - 1),
                Color::Red => (n - 1 + j, n - j),
            })
            .collect()
    }

    /// Vertex-disjoint, never below the x-axis, steps from the right
    /// alphabet, starts and ends as prescribed (in some order).
    pub fn validate(&self, word: &Word, w: &Word) -> Result<(), MatchingError> {
        let bad = |m: &str| Err(MatchingError::BadPaths(m.to_string()));
        let starts = PathFamily::starts(self.color, w);
        let mut ends = PathFamily::ends(self.color, word);
        if self.paths.len() != starts.len() || self.paths.iter().map(|p| p.start).ne(starts.iter().copied()) {
            return bad("start points do not match the bottom word");
        }
        let mut seen = std::collections::HashSet::new();
        let mut got_ends = Vec::new();
        for p in &self.paths {
            for pt in p.points(self.color) {
                if pt.1 < 0 {
                    return bad("path below the x-axis");
                }
                if !seen.insert(pt) {
                    return bad("paths share a point");
                }
            }
            got_ends.push(p.end(self.color));
        }
        got_ends.sort_unstable();
        ends.sort_unstable();
        if got_ends != ends {
            return bad("end points do not match the side word");
        }
        Ok(())
    }
}

/// Blue family of an odd matching or red family of an even matching.
///
/// Blue: an odd vertex X = (a, y) owns the blue point (a, y) just right of
/// it; its matching edge going up, down or left becomes a step to
/// (a-1, y+1), (a-1, y-1) or (a-2, y), and going right gives no step.
/// Red: an odd vertex Z = (a, y) owns the red point (a-1, y) just left of
/// it; the even partner above, below or to the right gives a step to
/// (a, y+1), (a, y-1) or (a+1, y), and a partner to the left gives none.
pub fn matching_to_paths(grid: &Grid, m: &PerfectMatching, w: &Word) -> PathFamily {
    let mut next: HashMap<(i32, i32), ((i32, i32), Step)> = HashMap::new();
    for &(o, e) in &m.pairs {
        let (ox, oy) = (grid.vertices[o].x, grid.vertices[o].y);
        let d = grid.direction(o, e).unwrap();
        match m.side {
            Side::Odd => {
                let from = (ox, oy);
                let step = match d {
                    Dir::U => Some(Step::U),
                    Dir::D => Some(Step::D),
                    Dir::L => Some(Step::H),
                    Dir::R => None,
                };
                if let Some(s) = step {
                    let (dx, dy) = s.delta(Color::Blue);
                    next.insert(from, ((from.0 + dx, from.1 + dy), s));
                }
            }
            Side::Even => {
                let from = (ox - 1, oy);
                let step = match d {
                    Dir::U => Some(Step::U),
                    Dir::D => Some(Step::D),
                    Dir::R => Some(Step::H),
                    Dir::L => None,
                };
                if let Some(s) = step {
                    let (dx, dy) = s.delta(Color::Red);
                    next.insert(from, ((from.0 + dx, from.1 + dy), s));
                }
            }
        }
    }
    let color = match m.side {
        Side::Odd => Color::Blue,
        Side::Even => Color::Red,
    };
    let paths = PathFamily::starts(color, w)
        .into_iter()
        .map(|start| {
            let mut steps = Vec::new();
            let mut p = start;
            while let Some(&(q, s)) = next.get(&p) {
                steps.push(s);
                p = q;
                if steps.len() > 4 * grid.n * grid.n {
                    break;
                }
            }
            LatticePath { start, steps }
        })
        .collect();
    PathFamily { color, paths }
}

/// Inverse of [`matching_to_paths`]: odd vertices whose point starts no
/// step are matched to their right (blue) or left (red) neighbour.
pub fn paths_to_matching(grid: &Grid, g: &MatchingGraph, family: &PathFamily) -> Result<PerfectMatching, MatchingError> {
    let side = match family.color {
        Color::Blue => Side::Odd,
        Color::Red => Side::Even,
    };
    if side != g.side {
        return Err(MatchingError::WrongSide);
    }
    let bad = |m: &str| MatchingError::BadPaths(m.to_string());
    let mut pairs = Vec::new();
    let mut stepped = vec![false; grid.vertices.len()];
    for p in &family.paths {
        let pts = p.points(family.color);
        for (k, s) in p.steps.iter().enumerate() {
            let (px, py) = pts[k];
            let (odd_xy, even_xy) = match (family.color, s) {
                (Color::Blue, Step::U) => ((px, py), (px, py + 1)),
                (Color::Blue, Step::D) => ((px, py), (px, py - 1)),
                (Color::Blue, Step::H) => ((px, py), (px - 1, py)),
                (Color::Red, Step::U) => ((px + 1, py), (px + 1, py + 1)),
                (Color::Red, Step::D) => ((px + 1, py), (px + 1, py - 1)),
                (Color::Red, Step::H) => ((px + 1, py), (px + 2, py)),
            };
            let o = grid.vertex_at(odd_xy.0, odd_xy.1).ok_or_else(|| bad("step outside the grid"))?;
            let e = grid.vertex_at(even_xy.0, even_xy.1).ok_or_else(|| bad("step outside the grid"))?;
            if stepped[o] {
                return Err(bad("two steps from one point"));
            }
            stepped[o] = true;
            pairs.push((o, e));
        }
    }
    for o in 0..grid.vertices.len() {
        if g.retained[o] && grid.vertices[o].odd && !stepped[o] {
            let vx = &grid.vertices[o];
            let dx = match side {
                Side::Odd => 1,
                Side::Even => -1,
            };
            let e = grid.vertex_at(vx.x + dx, vx.y).ok_or_else(|| bad("unmatched odd vertex"))?;
            pairs.push((o, e));
        }
    }
    let m = PerfectMatching::from_pairs(grid, side, pairs);
    if !m.is_perfect_on(grid, g) {
        return Err(bad("paths do not encode a perfect matching"));
    }
    Ok(m)
}

/// Number of lattice paths with steps (1,1), (1,-1), (2,0) from (0,0) to
/// (2n+m, m) that never go below the x-axis.
pub fn schroeder_prefix_count(n: i64, m: i64) -> BigInt {
    if n < 0 || m < 0 {
        return BigInt::zero();
    }
    (0..=n)
        .map(|p| {
            let top = 2 * n - 2 * p + m;
            (binomial(top, n - p) - binomial(top, n - p - 1)) * binomial(2 * n + m - p, p)
        })
        .sum()
}

/// Lindstrom-Gessel-Viennot count of the perfect matchings of the odd graph
/// G^N_o(word, w) or the even graph G^N_e(word, w).
///
/// Odd: entry (k, l) counts blue paths from the k-th zero i_k of w to the
/// l-th zero j_l of u, i.e. schroeder(i_k - j_l, j_l - 1).
/// Even: entry (k, l) counts red paths from the k-th one i_k of w to the
/// l-th one j_l of v, i.e. schroeder(j_l - i_k, N - j_l).
pub fn count_matchings_det(side: Side, word: &Word, w: &Word) -> Result<BigInt, MatchingError> {
    if word.len() != w.len() {
        return Err(MatchingError::Length);
    }
    let n = w.len() as i64;
    let letter = match side {
        Side::Odd => 0,
        Side::Even => 1,
    };
    let pos = |x: &Word| (1..=x.len()).filter(|&i| x.at(i) == letter).map(|i| i as i64).collect::<Vec<i64>>();
    let (is, js) = (pos(w), pos(word));
    if is.len() != js.len() {
        return Err(MatchingError::Content(match side {
            Side::Odd => "equal numbers of zeros in u and w",
            Side::Even => "equal numbers of ones in v and w",
        }));
    }
    let matrix: Vec<Vec<BigInt>> = is
        .iter()
        .map(|&i| {
            js.iter()
                .map(|&j| match side {
                    Side::Odd => schroeder_prefix_count(i - j, j - 1),
                    Side::Even => schroeder_prefix_count(j - i, n - j),
                })
                .collect()
        })
        .collect();
    Ok(integer_determinant(&matrix).expect("square"))
}

/// Product of the two determinant counts. Only an upper bound for the
/// number of oriented TFPLs, since disjointness is ignored.
pub fn oriented_upper_bound(u: &Word, v: &Word, w: &Word) -> Result<BigInt, MatchingError> {
    Ok(count_matchings_det(Side::Odd, u, w)? * count_matchings_det(Side::Even, v, w)?)
}

/// Convenience wrapper checking word lengths against the grid.
pub fn matching_graph(grid: &Grid, side: Side, word: &Word, w: &Word) -> Result<MatchingGraph, TfplError> {
    grid.check_words(&[word, w])?;
    Ok(MatchingGraph::new(grid, side, word, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn schroeder_values() {
        assert_eq!(schroeder_prefix_count(1, 0), 2.into());
        assert_eq!(schroeder_prefix_count(2, 0), 6.into());
        for m in 0..6 {
            assert_eq!(schroeder_prefix_count(0, m), 1.into());
        }
    }

    #[test]
    fn figure_instance() {
        let g = Grid::new(8).unwrap();
        let (u, ww) = (w("00101001"), w("01100010"));
        let mg = MatchingGraph::new(&g, Side::Odd, &u, &ww);
        let count = count_matchings(&g, &mg);
        assert!(count > 0);
        assert_eq!(count_matchings_det(Side::Odd, &u, &ww).unwrap(), count.into());
    }

    #[test]
    fn isolated_vertex_gives_nothing() {
        let g = Grid::new(3).unwrap();
        // w = 111 with u = 000: zeros differ, so the graph is unbalanced.
        let mg = MatchingGraph::new(&g, Side::Odd, &w("000"), &w("111"));
        assert!(enumerate_matchings(&g, &mg).is_empty());
    }
}
