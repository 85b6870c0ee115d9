//! The triangular grid, plain and oriented TFPL configurations, boundary
//! extraction, enumeration, turn statistics and weights.
//!
//! Coordinates: vertex `(x, y)` with `y = 0` on the bottom row. Row `r`
//! (1 = top) sits at `y = N - r` and spans `N - r <= x <= N + r`. A vertex is
//! odd iff `x + y` is even, so the leftmost vertices are odd.
//! `L_i = (i-1, i-1)`, `R_i = (N+i, N-i)`, `B_i = (2i-1, 0)`.

use crate::algebra::{feasibility_matrix, invert_unitriangular, Eisenstein, LaurentPoly};
use crate::matchings::{self, MatchingGraph, Side};
use crate::words::{DirectedLinkPattern, ExtendedLinkPattern, Word};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

/// Largest supported size; edge sets are 256-bit masks.
pub const MAX_N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TfplError {
    #[error("grid size must be between 1 and {MAX_N}, got {0}")]
    BadSize(usize),
    #[error("boundary words must all have length {expected}, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

pub type VertexId = usize;
pub type EdgeId = usize;

/// Direction of a step, with `y` pointing up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Dir {
    U,
    R,
    D,
    L,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::U, Dir::R, Dir::D, Dir::L];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Dir::U => (0, 1),
            Dir::R => (1, 0),
            Dir::D => (0, -1),
            Dir::L => (-1, 0),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opposite(self) -> Dir {
        Dir::ALL[(self.index() + 2) % 4]
    }

    /// Next direction clockwise: u, r, d, l, u.
    pub fn clockwise(self) -> Dir {
        Dir::ALL[(self.index() + 1) % 4]
    }

    pub fn letter(self) -> char {
        ['u', 'r', 'd', 'l'][self.index()]
    }

    pub fn from_delta(dx: i32, dy: i32) -> Option<Dir> {
        Dir::ALL.into_iter().find(|d| d.delta() == (dx, dy))
    }
}

/// Role of a vertex on the boundary of the grid. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Special {
    Inner,
    Left(usize),
    Right(usize),
    Bottom(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub x: i32,
    pub y: i32,
    pub row: usize,
    pub col: usize,
    pub odd: bool,
    pub special: Special,
}

/// Fixed-capacity edge set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet([u64; 4]);

impl EdgeSet {
    pub fn insert(&mut self, e: EdgeId) {
        self.0[e >> 6] |= 1 << (e & 63);
    }

    pub fn remove(&mut self, e: EdgeId) {
        self.0[e >> 6] &= !(1 << (e & 63));
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0[e >> 6] >> (e & 63) & 1 == 1
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..256).filter(|&e| self.contains(e))
    }
}

/// The graph G^N.
#[derive(Clone, Debug)]
pub struct Grid {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    /// Endpoints of each edge, smaller vertex id first.
    pub edges: Vec<(VertexId, VertexId)>,
    neighbors: Vec<[Option<(VertexId, EdgeId)>; 4]>,
    pos: HashMap<(i32, i32), VertexId>,
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
    pub bottom: Vec<VertexId>,
}

impl Grid {
    pub fn new(n: usize) -> Result<Grid, TfplError> {
        if n == 0 || n > MAX_N {
            return Err(TfplError::BadSize(n));
        }
        let ni = n as i32;
        let mut vertices = Vec::new();
        let mut pos = HashMap::new();
        for r in 1..=n {
            let y = (n - r) as i32;
            for (c, x) in (ni - r as i32..=ni + r as i32).enumerate() {
                pos.insert((x, y), vertices.len());
                vertices.push(Vertex { x, y, row: r, col: c + 1, odd: (x + y) % 2 == 0, special: Special::Inner });
            }
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut bottom = Vec::new();
        for i in 1..=n {
            let ii = i as i32;
            let l = pos[&(ii - 1, ii - 1)];
            let r = pos[&(ni + ii, ni - ii)];
            let b = pos[&(2 * ii - 1, 0)];
            vertices[l].special = Special::Left(i);
            vertices[r].special = Special::Right(i);
            vertices[b].special = Special::Bottom(i);
            left.push(l);
            right.push(r);
            bottom.push(b);
        }
        let mut edges = Vec::new();
        let mut neighbors = vec![[None; 4]; vertices.len()];
        for a in 0..vertices.len() {
            for d in [Dir::R, Dir::D] {
                let (dx, dy) = d.delta();
                if let Some(&b) = pos.get(&(vertices[a].x + dx, vertices[a].y + dy)) {
                    let e = edges.len();
                    edges.push((a.min(b), a.max(b)));
                    neighbors[a][d.index()] = Some((b, e));
                    neighbors[b][d.opposite().index()] = Some((a, e));
                }
            }
        }
        assert!(edges.len() <= 256);
        Ok(Grid { n, vertices, edges, neighbors, pos, left, right, bottom })
    }

    pub fn vertex_at(&self, x: i32, y: i32) -> Option<VertexId> {
        self.pos.get(&(x, y)).copied()
    }

    pub fn neighbor(&self, v: VertexId, d: Dir) -> Option<(VertexId, EdgeId)> {
        self.neighbors[v][d.index()]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (Dir, VertexId, EdgeId)> + '_ {
        Dir::ALL.into_iter().filter_map(move |d| self.neighbors[v][d.index()].map(|(w, e)| (d, w, e)))
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.neighbors(a).find(|&(_, w, _)| w == b).map(|(_, _, e)| e)
    }

    pub fn direction(&self, from: VertexId, to: VertexId) -> Option<Dir> {
        let (a, b) = (&self.vertices[from], &self.vertices[to]);
        Dir::from_delta(b.x - a.x, b.y - a.y)
    }

    /// "r,c" label with 1-based row (top first) and column.
    pub fn label(&self, v: VertexId) -> String {
        format!("{},{}", self.vertices[v].row, self.vertices[v].col)
    }

    pub fn check_words(&self, words: &[&Word]) -> Result<(), TfplError> {
        for w in words {
            if w.len() != self.n {
                return Err(TfplError::BadLength { expected: self.n, got: w.len() });
            }
        }
        Ok(())
    }

    /// Degree of each vertex required by the boundary words in a plain TFPL.
    fn plain_degrees(&self, u: &Word, v: &Word) -> Vec<u8> {
        self.vertices
            .iter()
            .map(|vx| match vx.special {
                Special::Left(i) => u.at(i),
                Special::Right(i) => 1 - v.at(i),
                Special::Bottom(_) => 1,
                Special::Inner => 2,
            })
            .collect()
    }
}

/// Boundary triple (u, v; w).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Boundary {
    pub u: Word,
    pub v: Word,
    pub w: Word,
}

impl Boundary {
    pub fn new(u: Word, v: Word, w: Word) -> Self {
        Boundary { u, v, w }
    }

    /// d(w) - d(u) - d(v).
    pub fn excess(&self) -> i64 {
        self.w.inversions() as i64 - self.u.inversions() as i64 - self.v.inversions() as i64
    }

    /// Equal numbers of zeros, u <= w, v <= w and nonnegative excess.
    pub fn satisfies_necessary_conditions(&self) -> bool {
        let z = self.w.zeros();
        self.u.zeros() == z
            && self.v.zeros() == z
            && self.u.dominated_by(&self.w) == Ok(true)
            && self.v.dominated_by(&self.w) == Ok(true)
            && self.excess() >= 0
    }

    pub fn reflected(&self) -> Boundary {
        Boundary { u: self.v.star(), v: self.u.star(), w: self.w.star() }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.u, self.v, self.w)
    }
}

/// All triples of words of length `n` with equal numbers of zeros, in
/// lexicographic order.
pub fn all_triples(n: usize) -> Vec<Boundary> {
    let mut out = Vec::new();
    for z in 0..=n {
        let ws = crate::words::words_with_content(z, n - z);
        for u in &ws {
            for v in &ws {
                for w in &ws {
                    out.push(Boundary::new(u.clone(), v.clone(), w.clone()));
                }
            }
        }
    }
    out.sort();
    out
}

/// Triples of length `n` with the given excess that satisfy the necessary
/// conditions for nonempty configuration sets.
pub fn triples_with_excess(n: usize, excess: i64) -> Vec<Boundary> {
    all_triples(n).into_iter().filter(|b| b.excess() == excess && b.satisfies_necessary_conditions()).collect()
}

/// An oriented TFPL as a sorted list of arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedTfpl {
    pub n: usize,
    pub arcs: Vec<(VertexId, VertexId)>,
}

/// A plain TFPL as a sorted list of edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlainTfpl {
    pub n: usize,
    pub edges: Vec<EdgeId>,
}

/// Counts of the eight turns, split by the parity of the vertex where they
/// occur. Index `[odd as usize][incoming][outgoing]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TurnCensus {
    pub counts: [[[u64; 4]; 4]; 2],
}

impl TurnCensus {
    pub fn at(&self, odd: bool, from: Dir, to: Dir) -> u64 {
        self.counts[odd as usize][from.index()][to.index()]
    }

    pub fn get(&self, from: Dir, to: Dir) -> u64 {
        self.at(false, from, to) + self.at(true, from, to)
    }

    /// Looks up a turn by its two-letter name, e.g. "dl".
    pub fn named(&self, name: &str) -> u64 {
        let (a, b) = parse_turn(name);
        self.get(a, b)
    }

    pub fn named_at(&self, odd: bool, name: &str) -> u64 {
        let (a, b) = parse_turn(name);
        self.at(odd, a, b)
    }

    /// (x_ur, x_rd, x_dl, x_lu).
    pub fn clockwise(&self) -> [i64; 4] {
        ["ur", "rd", "dl", "lu"].map(|t| self.named(t) as i64)
    }

    /// (x_ru, x_dr, x_ld, x_ul).
    pub fn counterclockwise(&self) -> [i64; 4] {
        ["ru", "dr", "ld", "ul"].map(|t| self.named(t) as i64)
    }

    pub fn add(&mut self, odd: bool, from: Dir, to: Dir) {
        self.counts[odd as usize][from.index()][to.index()] += 1;
    }

    pub fn merge(&mut self, other: &TurnCensus) {
        for p in 0..2 {
            for a in 0..4 {
                for b in 0..4 {
                    self.counts[p][a][b] += other.counts[p][a][b];
                }
            }
        }
    }
}

fn parse_turn(name: &str) -> (Dir, Dir) {
    let d = |c| match c {
        'u' => Dir::U,
        'r' => Dir::R,
        'd' => Dir::D,
        'l' => Dir::L,
        _ => panic!("bad turn name {name}"),
    };
    let mut it = name.chars();
    (d(it.next().unwrap()), d(it.next().unwrap()))
}

/// Endpoint of a maximal path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Left(usize),
    Right(usize),
    Bottom(usize),
}

/// A maximal path of an oriented TFPL, with the external stubs included.
#[derive(Clone, Debug)]
pub struct PathInfo {
    pub vertices: Vec<VertexId>,
    /// `None` for closed paths.
    pub ends: Option<(End, End)>,
    /// Directions of the first and last step, stubs included.
    pub first: Dir,
    pub last: Dir,
    pub census: TurnCensus,
}

impl PathInfo {
    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }

    /// x^cw - x^ccw - k(1,1,1,1) is the indicator vector of the clockwise
    /// walk from the first to the last step direction, for some integer k.
    pub fn turn_walk_holds(&self) -> bool {
        let cw = self.census.clockwise();
        let ccw = self.census.counterclockwise();
        let diff: Vec<i64> = (0..4).map(|i| cw[i] - ccw[i]).collect();
        let mut walk = [0i64; 4];
        if !self.is_closed() {
            // Turn ur has index 0 and starts at u; turn t starts at Dir::ALL[t].
            let mut d = self.first;
            while d != self.last {
                walk[d.index()] = 1;
                d = d.clockwise();
            }
        }
        let k = diff[0] - walk[0];
        (0..4).all(|i| diff[i] - walk[i] == k)
    }
}

impl OrientedTfpl {
    pub fn from_arcs(n: usize, mut arcs: Vec<(VertexId, VertexId)>) -> Self {
        arcs.sort_unstable();
        OrientedTfpl { n, arcs }
    }

    fn in_out(&self, grid: &Grid) -> (Vec<Option<VertexId>>, Vec<Option<VertexId>>) {
        let mut inn = vec![None; grid.vertices.len()];
        let mut out = vec![None; grid.vertices.len()];
        for &(a, b) in &self.arcs {
            out[a] = Some(b);
            inn[b] = Some(a);
        }
        (inn, out)
    }

    pub fn edge_set(&self, grid: &Grid) -> EdgeSet {
        let mut s = EdgeSet::default();
        for &(a, b) in &self.arcs {
            s.insert(grid.edge_between(a, b).expect("arc along a grid edge"));
        }
        s
    }

    pub fn underlying(&self, grid: &Grid) -> PlainTfpl {
        let mut edges: Vec<EdgeId> = self.arcs.iter().map(|&(a, b)| grid.edge_between(a, b).unwrap()).collect();
        edges.sort_unstable();
        PlainTfpl { n: self.n, edges }
    }

    pub fn validate(&self, grid: &Grid) -> Result<(), TfplError> {
        let bad = |m: String| Err(TfplError::Invalid(m));
        let mut indeg = vec![0u8; grid.vertices.len()];
        let mut outdeg = vec![0u8; grid.vertices.len()];
        let mut seen = EdgeSet::default();
        for &(a, b) in &self.arcs {
            let Some(e) = grid.edge_between(a, b) else {
                return bad(format!("arc {}->{} is not a grid edge", grid.label(a), grid.label(b)));
            };
            if seen.contains(e) {
                return bad(format!("edge {} used twice", e));
            }
            seen.insert(e);
            outdeg[a] += 1;
            indeg[b] += 1;
        }
        for (v, vx) in grid.vertices.iter().enumerate() {
            let ok = match vx.special {
                Special::Left(_) => indeg[v] == 0 && outdeg[v] <= 1,
                Special::Right(_) => outdeg[v] == 0 && indeg[v] <= 1,
                Special::Bottom(_) => indeg[v] + outdeg[v] == 1,
                Special::Inner => indeg[v] == 1 && outdeg[v] == 1,
            };
            if !ok {
                return bad(format!("bad degree at {}", grid.label(v)));
            }
        }
        Ok(())
    }

    pub fn boundary(&self, grid: &Grid) -> Boundary {
        let (inn, out) = self.in_out(grid);
        let u = grid.left.iter().map(|&l| out[l].is_some() as u8).collect();
        let v = grid.right.iter().map(|&r| inn[r].is_none() as u8).collect();
        let w = grid.bottom.iter().map(|&b| inn[b].is_some() as u8).collect();
        Boundary::new(Word::new(u).unwrap(), Word::new(v).unwrap(), Word::new(w).unwrap())
    }

    /// Incoming and outgoing step directions at every vertex on a path,
    /// external stubs included.
    fn steps_at(&self, grid: &Grid) -> Vec<Option<(Dir, Dir)>> {
        let (inn, out) = self.in_out(grid);
        (0..grid.vertices.len())
            .map(|v| {
                let din = match (inn[v], grid.vertices[v].special) {
                    (Some(a), _) => grid.direction(a, v),
                    (None, Special::Left(_)) if out[v].is_some() => Some(Dir::R),
                    (None, Special::Bottom(_)) if out[v].is_some() => Some(Dir::U),
                    _ => None,
                };
                let dout = match (out[v], grid.vertices[v].special) {
                    (Some(b), _) => grid.direction(v, b),
                    (None, Special::Right(_)) if inn[v].is_some() => Some(Dir::R),
                    (None, Special::Bottom(_)) if inn[v].is_some() => Some(Dir::D),
                    _ => None,
                };
                din.zip(dout)
            })
            .collect()
    }

    pub fn turn_census(&self, grid: &Grid) -> TurnCensus {
        let mut c = TurnCensus::default();
        for (v, s) in self.steps_at(grid).into_iter().enumerate() {
            if let Some((a, b)) = s {
                if a != b {
                    c.add(grid.vertices[v].odd, a, b);
                }
            }
        }
        c
    }

    /// Maximal paths: open ones in order of their starting vertex, then
    /// closed ones.
    pub fn paths(&self, grid: &Grid) -> Vec<PathInfo> {
        let (inn, out) = self.in_out(grid);
        let steps = self.steps_at(grid);
        let end_of = |v: VertexId| match grid.vertices[v].special {
            Special::Left(i) => End::Left(i),
            Special::Right(i) => End::Right(i),
            Special::Bottom(i) => End::Bottom(i),
            Special::Inner => unreachable!("open path ends at an inner vertex"),
        };
        let mut visited = vec![false; grid.vertices.len()];
        let mut paths = Vec::new();
        let census_of = |vs: &[VertexId]| {
            let mut c = TurnCensus::default();
            for &v in vs {
                let (a, b) = steps[v].expect("vertex on a path");
                if a != b {
                    c.add(grid.vertices[v].odd, a, b);
                }
            }
            c
        };
        for v in 0..grid.vertices.len() {
            if inn[v].is_none() && out[v].is_some() {
                let mut vs = vec![v];
                let mut cur = v;
                while let Some(nx) = out[cur] {
                    vs.push(nx);
                    cur = nx;
                }
                for &x in &vs {
                    visited[x] = true;
                }
                paths.push(PathInfo {
                    ends: Some((end_of(v), end_of(cur))),
                    first: steps[v].unwrap().0,
                    last: steps[cur].unwrap().1,
                    census: census_of(&vs),
                    vertices: vs,
                });
            }
        }
        for v in 0..grid.vertices.len() {
            if !visited[v] && out[v].is_some() {
                let mut vs = vec![v];
                visited[v] = true;
                let mut cur = out[v].unwrap();
                while cur != v {
                    visited[cur] = true;
                    vs.push(cur);
                    cur = out[cur].expect("closed path");
                }
                let first = steps[v].unwrap().0;
                paths.push(PathInfo { ends: None, first, last: first, census: census_of(&vs), vertices: vs });
            }
        }
        paths
    }

    /// Number of paths from B_i to B_j with i > j.
    pub fn rl(&self, grid: &Grid) -> usize {
        self.paths(grid)
            .iter()
            .filter(|p| matches!(p.ends, Some((End::Bottom(i), End::Bottom(j))) if i > j))
            .count()
    }

    /// Numbers of clockwise and counterclockwise closed paths.
    pub fn closed_paths(&self, grid: &Grid) -> (usize, usize) {
        let mut cw = 0;
        let mut ccw = 0;
        for p in self.paths(grid).iter().filter(|p| p.is_closed()) {
            match p.census.named("dl") as i64 - p.census.named("ld") as i64 {
                1 => cw += 1,
                -1 => ccw += 1,
                d => panic!("closed path with dl - ld = {d}"),
            }
        }
        (cw, ccw)
    }

    /// Exponent t_ccw - t_cw for the given choice of turns, e.g. ("dl", "ld").
    pub fn weight_exponent_with(&self, grid: &Grid, t_cw: &str, t_ccw: &str) -> i64 {
        let c = self.turn_census(grid);
        c.named(t_ccw) as i64 - c.named(t_cw) as i64
    }

    pub fn weight_exponent(&self, grid: &Grid) -> i64 {
        self.weight_exponent_with(grid, "dl", "ld")
    }

    pub fn weight(&self, grid: &Grid) -> LaurentPoly {
        LaurentPoly::q_pow(self.weight_exponent(grid))
    }

    /// Directed extended link pattern read off the bottom vertices.
    pub fn link_pattern(&self, grid: &Grid) -> DirectedLinkPattern {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut arches = Vec::new();
        for p in self.paths(grid) {
            match p.ends {
                Some((End::Left(_), End::Bottom(i))) => left.push(i),
                Some((End::Bottom(i), End::Right(_))) => right.push(i),
                Some((End::Bottom(i), End::Bottom(j))) => arches.push((i.min(j), i.max(j), i > j)),
                _ => {}
            }
        }
        left.sort_unstable();
        right.sort_unstable();
        arches.sort_unstable();
        DirectedLinkPattern {
            pattern: ExtendedLinkPattern {
                n: self.n,
                left,
                right,
                arches: arches.iter().map(|&(i, j, _)| (i, j)).collect(),
            },
            right_to_left: arches.iter().map(|&(_, _, rl)| rl).collect(),
        }
    }

    /// Mirror image in the vertical axis with every arc reversed.
    pub fn vertical_reflect(&self, grid: &Grid) -> OrientedTfpl {
        let m = |v: VertexId| {
            let vx = &grid.vertices[v];
            grid.vertex_at(2 * grid.n as i32 - vx.x, vx.y).unwrap()
        };
        OrientedTfpl::from_arcs(self.n, self.arcs.iter().map(|&(a, b)| (m(b), m(a))).collect())
    }

    pub fn to_json(&self, grid: &Grid) -> serde_json::Value {
        let edges: Vec<[String; 2]> = self.arcs.iter().map(|&(a, b)| [grid.label(a), grid.label(b)]).collect();
        serde_json::json!({ "n": self.n, "dir": "first-to-second", "edges": edges })
    }
}

impl PlainTfpl {
    fn adjacency(&self, grid: &Grid) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); grid.vertices.len()];
        for &e in &self.edges {
            let (a, b) = grid.edges[e];
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Connected components as vertex sequences; open paths start at their
    /// boundary endpoint with the smaller vertex id.
    fn components(&self, grid: &Grid) -> Vec<(Vec<VertexId>, bool)> {
        let adj = self.adjacency(grid);
        let mut visited = vec![false; grid.vertices.len()];
        let mut out = Vec::new();
        let walk = |start: VertexId, visited: &mut Vec<bool>| {
            let mut vs = vec![start];
            visited[start] = true;
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let next = adj[cur].iter().copied().find(|&x| x != prev && !visited[x]);
                match next {
                    Some(nx) => {
                        visited[nx] = true;
                        vs.push(nx);
                        prev = cur;
                        cur = nx;
                    }
                    None => break,
                }
            }
            vs
        };
        for v in 0..grid.vertices.len() {
            if !visited[v] && adj[v].len() == 1 {
                out.push((walk(v, &mut visited), false));
            }
        }
        for v in 0..grid.vertices.len() {
            if !visited[v] && !adj[v].is_empty() {
                out.push((walk(v, &mut visited), true));
            }
        }
        out
    }

    pub fn validate(&self, grid: &Grid) -> Result<(), TfplError> {
        let adj = self.adjacency(grid);
        for (v, vx) in grid.vertices.iter().enumerate() {
            let ok = match vx.special {
                Special::Left(_) | Special::Right(_) => adj[v].len() <= 1,
                Special::Bottom(_) => adj[v].len() == 1,
                Special::Inner => adj[v].len() == 2,
            };
            if !ok {
                return Err(TfplError::Invalid(format!("bad degree at {}", grid.label(v))));
            }
        }
        for (vs, closed) in self.components(grid) {
            if closed {
                continue;
            }
            let (a, b) = (grid.vertices[vs[0]].special, grid.vertices[*vs.last().unwrap()].special);
            match (a, b) {
                (Special::Left(_), Special::Left(_)) | (Special::Right(_), Special::Right(_)) => {
                    return Err(TfplError::Invalid("path joins two vertices on the same side".into()));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Boundary and extended link pattern. w_i = 1 iff the path from B_i
    /// ends on the left side or at some B_j with j < i.
    pub fn boundary_and_pattern(&self, grid: &Grid) -> (Boundary, ExtendedLinkPattern) {
        let adj = self.adjacency(grid);
        let u = grid.left.iter().map(|&l| adj[l].len() as u8).collect();
        let v = grid.right.iter().map(|&r| 1 - adj[r].len() as u8).collect();
        let mut w = vec![0u8; self.n];
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut arches = Vec::new();
        for (vs, closed) in self.components(grid) {
            if closed {
                continue;
            }
            let ends = [grid.vertices[vs[0]].special, grid.vertices[*vs.last().unwrap()].special];
            for k in 0..2 {
                if let Special::Bottom(i) = ends[k] {
                    match ends[1 - k] {
                        Special::Left(_) => {
                            w[i - 1] = 1;
                            left.push(i);
                        }
                        Special::Right(_) => right.push(i),
                        Special::Bottom(j) => {
                            if j < i {
                                w[i - 1] = 1;
                            } else {
                                arches.push((i, j));
                            }
                        }
                        Special::Inner => unreachable!(),
                    }
                }
            }
        }
        left.sort_unstable();
        right.sort_unstable();
        arches.sort_unstable();
        let b = Boundary::new(Word::new(u).unwrap(), Word::new(v).unwrap(), Word::new(w).unwrap());
        (b, ExtendedLinkPattern { n: self.n, left, right, arches })
    }

    pub fn boundary(&self, grid: &Grid) -> Boundary {
        self.boundary_and_pattern(grid).0
    }

    /// Closed paths clockwise, bottom paths from the smaller index to the
    /// larger, other paths from the left side or towards the right side.
    pub fn canonical_orient(&self, grid: &Grid) -> OrientedTfpl {
        let mut arcs = Vec::new();
        for (mut vs, closed) in self.components(grid) {
            if closed {
                vs.push(vs[0]);
            } else {
                let first = grid.vertices[vs[0]].special;
                let last = grid.vertices[*vs.last().unwrap()].special;
                let reverse = match (first, last) {
                    (_, Special::Left(_)) => true,
                    (Special::Right(_), _) => true,
                    (Special::Bottom(i), Special::Bottom(j)) => i > j,
                    _ => false,
                };
                if reverse {
                    vs.reverse();
                }
            }
            let mut piece: Vec<(VertexId, VertexId)> = vs.windows(2).map(|p| (p[0], p[1])).collect();
            if closed {
                let loop_tfpl = OrientedTfpl::from_arcs(self.n, piece.clone());
                let c = loop_tfpl.turn_census(grid);
                if c.named("dl") < c.named("ld") {
                    piece = piece.into_iter().map(|(a, b)| (b, a)).collect();
                }
            }
            arcs.extend(piece);
        }
        OrientedTfpl::from_arcs(self.n, arcs)
    }

    pub fn vertical_reflect(&self, grid: &Grid) -> PlainTfpl {
        let m = |v: VertexId| {
            let vx = &grid.vertices[v];
            grid.vertex_at(2 * grid.n as i32 - vx.x, vx.y).unwrap()
        };
        let mut edges: Vec<EdgeId> = self
            .edges
            .iter()
            .map(|&e| {
                let (a, b) = grid.edges[e];
                grid.edge_between(m(a), m(b)).unwrap()
            })
            .collect();
        edges.sort_unstable();
        PlainTfpl { n: self.n, edges }
    }

    pub fn to_json(&self, grid: &Grid) -> serde_json::Value {
        let edges: Vec<[String; 2]> = self
            .edges
            .iter()
            .map(|&e| {
                let (a, b) = grid.edges[e];
                [grid.label(a), grid.label(b)]
            })
            .collect();
        serde_json::json!({ "n": self.n, "edges": edges })
    }
}

/// Oriented TFPLs with boundary (u, v; w), as disjoint pairs of perfect
/// matchings of the odd and even subgraphs.
pub fn enumerate_oriented(grid: &Grid, b: &Boundary) -> Result<Vec<OrientedTfpl>, TfplError> {
    grid.check_words(&[&b.u, &b.v, &b.w])?;
    let odd = MatchingGraph::new(grid, Side::Odd, &b.u, &b.w);
    let even = MatchingGraph::new(grid, Side::Even, &b.v, &b.w);
    let mut out = Vec::new();
    for mo in matchings::enumerate_matchings(grid, &odd) {
        matchings::for_each_matching_avoiding(grid, &even, &mo.edges, |me| {
            out.push(matchings::merge_unchecked(grid, &mo, me));
        });
    }
    out.sort();
    Ok(out)
}

/// Number of oriented TFPLs with boundary (u, v; w).
pub fn count_oriented(grid: &Grid, b: &Boundary) -> Result<u64, TfplError> {
    grid.check_words(&[&b.u, &b.v, &b.w])?;
    let odd = MatchingGraph::new(grid, Side::Odd, &b.u, &b.w);
    let even = MatchingGraph::new(grid, Side::Even, &b.v, &b.w);
    let mut count = 0;
    for mo in matchings::enumerate_matchings(grid, &odd) {
        matchings::for_each_matching_avoiding(grid, &even, &mo.edges, |_| count += 1);
    }
    Ok(count)
}

/// Sum of weights over T->(u, v; w), or over its subset with RL = 0.
pub fn weighted_count(grid: &Grid, b: &Boundary, restrict_rl0: bool) -> Result<LaurentPoly, TfplError> {
    let mut acc = LaurentPoly::zero();
    for f in enumerate_oriented(grid, b)? {
        if !restrict_rl0 || f.rl(grid) == 0 {
            acc += &f.weight(grid);
        }
    }
    Ok(acc)
}

/// Plain count recovered from the weighted oriented counts at rho:
/// sum over w' of (M^-1)_{w,w'} t->^{w'}(rho). The rho-component of a
/// correct result vanishes.
pub fn plain_count_at_rho(grid: &Grid, b: &Boundary) -> Result<Eisenstein, TfplError> {
    grid.check_words(&[&b.u, &b.v, &b.w])?;
    let m = feasibility_matrix(b.w.zeros(), b.w.ones());
    let inv = invert_unitriangular(&m).expect("feasibility matrix is unitriangular");
    let row = inv.index_of(&b.w).expect("w has the matrix content");
    let mut acc = Eisenstein::zero();
    for (k, w2) in inv.order.iter().enumerate() {
        let coeff = &inv.entries[row][k];
        if coeff.is_zero() {
            continue;
        }
        let t = weighted_count(grid, &Boundary::new(b.u.clone(), b.v.clone(), w2.clone()), false)?;
        acc = acc + coeff.eval_at_rho() * t.eval_at_rho();
    }
    Ok(acc)
}

/// All plain TFPLs with left and right boundary words u and v, grouped by
/// their bottom word. Direct search over edge subsets with the degree
/// constraints, followed by the path-connectivity filter.
pub fn enumerate_plain_by_bottom(
    grid: &Grid,
    u: &Word,
    v: &Word,
) -> Result<BTreeMap<Word, Vec<PlainTfpl>>, TfplError> {
    grid.check_words(&[u, v])?;
    let req = grid.plain_degrees(u, v);
    let nv = grid.vertices.len();
    let mut deg = vec![0u8; nv];
    let mut chosen = Vec::new();
    let mut out: BTreeMap<Word, Vec<PlainTfpl>> = BTreeMap::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        grid: &Grid,
        k: usize,
        req: &[u8],
        deg: &mut Vec<u8>,
        chosen: &mut Vec<EdgeId>,
        out: &mut BTreeMap<Word, Vec<PlainTfpl>>,
    ) {
        if k == grid.vertices.len() {
            let mut edges = chosen.clone();
            edges.sort_unstable();
            let f = PlainTfpl { n: grid.n, edges };
            if f.validate(grid).is_ok() {
                let b = f.boundary(grid);
                out.entry(b.w).or_default().push(f);
            }
            return;
        }
        let need = req[k] as i32 - deg[k] as i32;
        if need < 0 {
            return;
        }
        let opts: Vec<(VertexId, EdgeId)> = [Dir::R, Dir::D].iter().filter_map(|&d| grid.neighbor(k, d)).collect();
        let mut try_set = |set: &[(VertexId, EdgeId)], deg: &mut Vec<u8>, chosen: &mut Vec<EdgeId>| {
            if set.iter().any(|&(w, _)| deg[w] >= req[w]) {
                return;
            }
            for &(w, e) in set {
                deg[w] += 1;
                chosen.push(e);
            }
            deg[k] += set.len() as u8;
            rec(grid, k + 1, req, deg, chosen, out);
            deg[k] -= set.len() as u8;
            for &(w, _) in set {
                deg[w] -= 1;
                chosen.pop();
            }
        };
        match need {
            0 => try_set(&[], deg, chosen),
            1 => {
                for &o in &opts {
                    try_set(&[o], deg, chosen);
                }
            }
            2 if opts.len() == 2 => try_set(&opts, deg, chosen),
            _ => {}
        }
    }
    rec(grid, 0, &req, &mut deg, &mut chosen, &mut out);
    for list in out.values_mut() {
        list.sort();
    }
    Ok(out)
}

pub fn enumerate_plain(grid: &Grid, b: &Boundary) -> Result<Vec<PlainTfpl>, TfplError> {
    grid.check_words(&[&b.w])?;
    Ok(enumerate_plain_by_bottom(grid, &b.u, &b.v)?.remove(&b.w).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bnd(u: &str, v: &str, w: &str) -> Boundary {
        Boundary::new(u.parse().unwrap(), v.parse().unwrap(), w.parse().unwrap())
    }

    #[test]
    fn grid_shape() {
        let g = Grid::new(6).unwrap();
        assert_eq!(g.vertices.len(), 48);
        assert_eq!(g.edges.len(), 6 * 7 + 35);
        let g1 = Grid::new(1).unwrap();
        assert_eq!(g1.vertices.len(), 3);
        assert_ne!(g1.left[0], g1.right[0]);
        let g8 = Grid::new(8).unwrap();
        assert_eq!((g8.left.len(), g8.right.len(), g8.bottom.len()), (8, 8, 8));
        for &(a, b) in &g8.edges {
            assert_ne!(g8.vertices[a].odd, g8.vertices[b].odd);
        }
        assert!(g8.left.iter().chain(&g8.right).all(|&v| g8.vertices[v].odd));
        assert!(g8.bottom.iter().all(|&v| !g8.vertices[v].odd));
        assert!(Grid::new(0).is_err());
    }

    #[test]
    fn size_two_example() {
        let g = Grid::new(2).unwrap();
        let b = bnd("01", "01", "01");
        let fs = enumerate_oriented(&g, &b).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].boundary(&g), b);
        assert_eq!(enumerate_plain(&g, &b).unwrap().len(), 1);
        assert!(enumerate_oriented(&g, &bnd("01", "10", "01")).unwrap().is_empty());
    }

    #[test]
    fn size_one() {
        let g = Grid::new(1).unwrap();
        assert_eq!(count_oriented(&g, &bnd("0", "0", "0")).unwrap(), 1);
        assert_eq!(count_oriented(&g, &bnd("1", "1", "1")).unwrap(), 1);
        let f = &enumerate_oriented(&g, &bnd("0", "0", "0")).unwrap()[0];
        assert!(f.arcs.len() == 1);
    }

    #[test]
    fn clockwise_square() {
        let g = Grid::new(3).unwrap();
        let at = |x, y| g.vertex_at(x, y).unwrap();
        let sq = OrientedTfpl::from_arcs(3, vec![(at(2, 2), at(3, 2)), (at(3, 2), at(3, 1)), (at(3, 1), at(2, 1)), (at(2, 1), at(2, 2))]);
        let c = sq.turn_census(&g);
        let cw: i64 = c.clockwise().iter().sum();
        let ccw: i64 = c.counterclockwise().iter().sum();
        assert_eq!(cw - ccw, 4);
        assert_eq!(c.named("dl") as i64 - c.named("ld") as i64, 1);
    }
}
