//! Puzzles on the triangular grid: the piece catalog, Knutson-Tao puzzles,
//! the excess-1 puzzle families, the move engine and the closed-form counts.
//!
//! Coordinates are barycentric. `Up(h, p)` is the upward triangle in row
//! `h` (0 at the bottom) at position `p`, with `h + p <= N - 1`; it owns the
//! edges `/(h,p)`, `\(h,p)` and `-(h,p)` (left, right, bottom). `Down(h, p)`,
//! with `h + p <= N - 2`, has sides `/(h,p+1)`, `\(h,p)` and top `-(h+1,p)`.
//! Labels are stored as seen from the owning `Up` triangle; the two edges of
//! a BD, RD or GD excess are seen with 0 and 1 exchanged from the other side.

use crate::algebra::{lr_coefficient, LaurentPoly};
use crate::matchings::{Color, LatticePath, PathFamily, Step};
use crate::tangles::{ExcessType, PathTangle};
use crate::tfpl_core::Boundary;
use crate::words::Word;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PuzzleError {
    #[error("piece catalog derivation failed: {0}")]
    Catalog(String),
    #[error("excess {0} is not supported")]
    Excess(i64),
    #[error("no excess of this kind at ({0},{1})")]
    Location(usize, usize),
    #[error("invalid puzzle: {0}")]
    Invalid(String),
    #[error("no move applies: {0}")]
    NoMove(String),
    #[error("more than one move applies: {0}")]
    Ambiguous(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    Slash,
    Back,
    Flat,
}

impl EdgeKind {
    fn symbol(self) -> char {
        match self {
            EdgeKind::Slash => '/',
            EdgeKind::Back => '\\',
            EdgeKind::Flat => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub kind: EdgeKind,
    pub h: usize,
    pub p: usize,
}

impl EdgeRef {
    pub fn new(kind: EdgeKind, h: usize, p: usize) -> Self {
        EdgeRef { kind, h, p }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{},{}", self.kind.symbol(), self.h, self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tri {
    Up(usize, usize),
    Down(usize, usize),
}

/// Index structure of the triangular grid of size N.
#[derive(Clone, Debug)]
pub struct TriGrid {
    pub n: usize,
    row_offset: Vec<usize>,
    tris_of_edge: Vec<Vec<Tri>>,
}

impl TriGrid {
    pub fn new(n: usize) -> TriGrid {
        let mut row_offset = vec![0; n + 1];
        for h in 0..n {
            row_offset[h + 1] = row_offset[h] + (n - h);
        }
        let mut g = TriGrid { n, row_offset, tris_of_edge: Vec::new() };
        let mut tris_of_edge = vec![Vec::new(); g.edge_count()];
        for t in g.triangles() {
            for e in g.sides(t) {
                tris_of_edge[g.edge_id(e)].push(t);
            }
        }
        g.tris_of_edge = tris_of_edge;
        g
    }

    pub fn up_index(&self, h: usize, p: usize) -> usize {
        self.row_offset[h] + p
    }

    pub fn edge_count(&self) -> usize {
        3 * self.n * (self.n + 1) / 2
    }

    pub fn edge_id(&self, e: EdgeRef) -> usize {
        3 * self.up_index(e.h, e.p) + e.kind as usize
    }

    pub fn edge_ref(&self, id: usize) -> EdgeRef {
        let u = id / 3;
        let h = (0..self.n).rev().find(|&h| self.row_offset[h] <= u).unwrap();
        let kind = [EdgeKind::Slash, EdgeKind::Back, EdgeKind::Flat][id % 3];
        EdgeRef::new(kind, h, u - self.row_offset[h])
    }

    pub fn is_up(&self, h: usize, p: usize) -> bool {
        h + p < self.n
    }

    pub fn is_down(&self, h: usize, p: usize) -> bool {
        h + p + 2 <= self.n
    }

    pub fn contains(&self, t: Tri) -> bool {
        match t {
            Tri::Up(h, p) => self.is_up(h, p),
            Tri::Down(h, p) => self.is_down(h, p),
        }
    }

    /// Triangles in row order, each row listing its up and down triangles
    /// left to right.
    pub fn triangles(&self) -> Vec<Tri> {
        let mut out = Vec::new();
        for h in 0..self.n {
            for p in 0..self.n - h {
                out.push(Tri::Up(h, p));
                if self.is_down(h, p) {
                    out.push(Tri::Down(h, p));
                }
            }
        }
        out
    }

    /// Sides in the order (/, \, -).
    pub fn sides(&self, t: Tri) -> [EdgeRef; 3] {
        match t {
            Tri::Up(h, p) => [
                EdgeRef::new(EdgeKind::Slash, h, p),
                EdgeRef::new(EdgeKind::Back, h, p),
                EdgeRef::new(EdgeKind::Flat, h, p),
            ],
            Tri::Down(h, p) => [
                EdgeRef::new(EdgeKind::Slash, h, p + 1),
                EdgeRef::new(EdgeKind::Back, h, p),
                EdgeRef::new(EdgeKind::Flat, h + 1, p),
            ],
        }
    }

    /// The down triangle on the other side of an edge, if any.
    pub fn down_of(&self, e: EdgeRef) -> Option<Tri> {
        let d = match e.kind {
            EdgeKind::Slash if e.p >= 1 => Tri::Down(e.h, e.p - 1),
            EdgeKind::Back => Tri::Down(e.h, e.p),
            EdgeKind::Flat if e.h >= 1 => Tri::Down(e.h - 1, e.p),
            _ => return None,
        };
        self.contains(d).then_some(d)
    }

    pub fn neighbors(&self, t: Tri) -> Vec<Tri> {
        match t {
            Tri::Up(..) => self.sides(t).iter().filter_map(|&e| self.down_of(e)).collect(),
            Tri::Down(..) => self.sides(t).iter().map(|e| Tri::Up(e.h, e.p)).collect(),
        }
    }

    /// Boundary edges in letter order: left (u), right (v), bottom (w).
    pub fn boundary_edges(&self) -> [Vec<EdgeRef>; 3] {
        let n = self.n;
        [
            (0..n).map(|i| EdgeRef::new(EdgeKind::Slash, i, 0)).collect(),
            (0..n).map(|i| EdgeRef::new(EdgeKind::Back, n - 1 - i, i)).collect(),
            (0..n).map(|i| EdgeRef::new(EdgeKind::Flat, 0, i)).collect(),
        ]
    }
}

// ---------------------------------------------------------------------------
// Piece catalog

/// Half steps that can lie inside a triangle. In an up triangle they end
/// on its / or \ edge; in a down triangle they start there.
pub const BU: u8 = 1;
pub const RU: u8 = 2;
pub const BH: u8 = 4;
pub const RH: u8 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Orientation {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub orientation: Orientation,
    pub name: String,
    /// Bitmask of half steps.
    pub content: u8,
    /// Labels on (/, \, -).
    pub labels: [u8; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct Catalog {
    pub up: Vec<Piece>,
    pub down: Vec<Piece>,
    /// The two double-horizontal pieces.
    pub dhu: Piece,
    pub dhd: Piece,
}

impl Catalog {
    pub fn pieces(&self, o: Orientation) -> &[Piece] {
        match o {
            Orientation::Up => &self.up,
            Orientation::Down => &self.down,
        }
    }

    pub fn by_labels(&self, o: Orientation, labels: [u8; 3]) -> Option<&Piece> {
        let dh = match o {
            Orientation::Up => &self.dhu,
            Orientation::Down => &self.dhd,
        };
        self.pieces(o).iter().chain(std::iter::once(dh)).find(|p| p.labels == labels)
    }
}

/// Local consistency of half steps around the blue and red point of one
/// triangle: a point is entered (up triangle) or left (down triangle) at
/// most once, diagonals may not cross, and a horizontal step needs a path
/// of the other color through its midpoint.
fn admissible(c: u8, allow_double: bool) -> bool {
    let has = |s: u8| c & s != 0;
    if has(BU) && has(BH) || has(RU) && has(RH) || has(BU) && has(RU) {
        return false;
    }
    if has(BH) && has(RH) && !allow_double {
        return false;
    }
    (!has(BH) || has(RU) || has(RH)) && (!has(RH) || has(BU) || has(BH))
}

/// Edge labels of a triangle content.
pub fn labels_of(c: u8) -> [u8; 3] {
    let has = |s: u8| c & s != 0;
    let slash = if has(RH) {
        2
    } else if has(BU) || has(BH) {
        0
    } else {
        1
    };
    let back = if has(BH) {
        2
    } else if has(RU) || has(RH) {
        1
    } else {
        0
    };
    let flat = if has(BU) {
        0
    } else if has(RU) {
        1
    } else {
        2
    };
    [slash, back, flat]
}

fn piece_name(o: Orientation, c: u8, labels: [u8; 3]) -> Result<String, PuzzleError> {
    let horizontal = c & (BH | RH) != 0;
    let k = match (labels[0], horizontal, c) {
        (0, false, _) => 1,
        (0, true, _) => 3,
        (1, _, 0) => 5,
        (1, _, _) => 2,
        (2, _, _) => 4,
        _ => return Err(PuzzleError::Catalog(format!("cannot name content {c:#06b}"))),
    };
    Ok(format!("{}{k}", if o == Orientation::Up { 'U' } else { 'D' }))
}

pub fn derive_piece_catalog() -> Result<Catalog, PuzzleError> {
    let mut sides = Vec::new();
    for o in [Orientation::Up, Orientation::Down] {
        let mut pieces = Vec::new();
        for c in 0..16u8 {
            if admissible(c, false) {
                let labels = labels_of(c);
                pieces.push(Piece { orientation: o, name: piece_name(o, c, labels)?, content: c, labels });
            }
        }
        pieces.sort_by(|a, b| a.name.cmp(&b.name));
        if pieces.len() != 5 {
            return Err(PuzzleError::Catalog(format!("{o:?}: {} pieces: {pieces:?}", pieces.len())));
        }
        let names: BTreeSet<&str> = pieces.iter().map(|p| p.name.as_str()).collect();
        let labels: BTreeSet<[u8; 3]> = pieces.iter().map(|p| p.labels).collect();
        if names.len() != 5 || labels.len() != 5 {
            return Err(PuzzleError::Catalog(format!("{o:?}: names or labels collide: {pieces:?}")));
        }
        sides.push(pieces);
    }
    let double: Vec<u8> = (0..16u8).filter(|&c| admissible(c, true) && !admissible(c, false)).collect();
    if double != [BH | RH] || labels_of(BH | RH) != [2, 2, 2] {
        return Err(PuzzleError::Catalog(format!("unexpected double-horizontal contents {double:?}")));
    }
    let dh = |o, name: &str| Piece { orientation: o, name: name.to_string(), content: BH | RH, labels: [2, 2, 2] };
    let down = sides.pop().unwrap();
    let up = sides.pop().unwrap();
    Ok(Catalog { up, down, dhu: dh(Orientation::Up, "DHU"), dhd: dh(Orientation::Down, "DHD") })
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| derive_piece_catalog().expect("piece catalog"))
}

// ---------------------------------------------------------------------------
// Boundary convention

/// How boundary words are read off the puzzle boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BoundaryConvention {
    pub complement: bool,
    pub reverse_left: bool,
    pub reverse_right: bool,
    pub reverse_bottom: bool,
}

/// Letters equal labels; u is read bottom to top on the left side, v top
/// to bottom on the right side and w left to right on the bottom.
pub const BOUNDARY_CONVENTION: BoundaryConvention =
    BoundaryConvention { complement: false, reverse_left: false, reverse_right: false, reverse_bottom: false };

impl BoundaryConvention {
    pub fn all() -> Vec<BoundaryConvention> {
        (0..16)
            .map(|m| BoundaryConvention {
                complement: m & 1 != 0,
                reverse_left: m & 2 != 0,
                reverse_right: m & 4 != 0,
                reverse_bottom: m & 8 != 0,
            })
            .collect()
    }

    /// (edge, label) pairs realising the boundary words.
    fn edge_labels(&self, grid: &TriGrid, b: &Boundary) -> Vec<(EdgeRef, u8)> {
        let sides = grid.boundary_edges();
        let n = grid.n;
        let mut out = Vec::new();
        for (k, (word, rev)) in
            [(&b.u, self.reverse_left), (&b.v, self.reverse_right), (&b.w, self.reverse_bottom)].into_iter().enumerate()
        {
            for i in 0..n {
                let letter = word.at(if rev { n - i } else { i + 1 });
                out.push((sides[k][i], if self.complement { 1 - letter } else { letter }));
            }
        }
        out
    }

    fn read(&self, grid: &TriGrid, labels: [Vec<u8>; 3]) -> Result<Boundary, PuzzleError> {
        let n = grid.n;
        let mut words = Vec::new();
        for (k, rev) in [self.reverse_left, self.reverse_right, self.reverse_bottom].into_iter().enumerate() {
            let mut letters = vec![0; n];
            for i in 0..n {
                let l = labels[k][i];
                if l > 1 {
                    return Err(PuzzleError::Invalid(format!("boundary label {l}")));
                }
                letters[if rev { n - 1 - i } else { i }] = if self.complement { 1 - l } else { l };
            }
            words.push(Word::new(letters).unwrap());
        }
        let w = words.pop().unwrap();
        let v = words.pop().unwrap();
        Ok(Boundary::new(words.pop().unwrap(), v, w))
    }
}

// ---------------------------------------------------------------------------
// Puzzles

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PuzzleKind {
    KT,
    BD,
    RD,
    DHD,
    DHU,
    /// A BD excess rotated onto a pair of adjacent horizontal edges.
    GD,
}

impl PuzzleKind {
    pub fn parse(s: &str) -> Option<PuzzleKind> {
        Some(match s.to_ascii_uppercase().as_str() {
            "KT" => PuzzleKind::KT,
            "BD" => PuzzleKind::BD,
            "RD" => PuzzleKind::RD,
            "DHD" => PuzzleKind::DHD,
            "DHU" => PuzzleKind::DHU,
            "GD" => PuzzleKind::GD,
            _ => return None,
        })
    }

    pub fn from_type(t: ExcessType) -> PuzzleKind {
        match t {
            ExcessType::BD => PuzzleKind::BD,
            ExcessType::RD => PuzzleKind::RD,
            ExcessType::DHD => PuzzleKind::DHD,
            ExcessType::DHU => PuzzleKind::DHU,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Excess {
    pub kind: PuzzleKind,
    pub h: usize,
    pub p: usize,
}

impl Excess {
    pub fn new(kind: PuzzleKind, h: usize, p: usize) -> Self {
        Excess { kind, h, p }
    }

    pub fn is_valid(&self, n: usize) -> bool {
        let (h, p) = (self.h, self.p);
        match self.kind {
            PuzzleKind::KT => false,
            PuzzleKind::BD | PuzzleKind::RD => h >= 1 && h + p < n,
            PuzzleKind::DHD => h + p + 2 <= n,
            PuzzleKind::DHU => h >= 1 && p >= 1 && h + p + 2 <= n,
            PuzzleKind::GD => h + p + 2 <= n,
        }
    }

    /// The two exceptional edges with their labels as seen from the up
    /// side; the other side sees 0 and 1 exchanged.
    pub fn flipped_edges(&self) -> Vec<(EdgeRef, u8)> {
        let (h, p) = (self.h, self.p);
        match self.kind {
            PuzzleKind::BD => {
                vec![(EdgeRef::new(EdgeKind::Slash, h, p), 0), (EdgeRef::new(EdgeKind::Slash, h - 1, p), 1)]
            }
            PuzzleKind::RD => {
                vec![(EdgeRef::new(EdgeKind::Back, h, p), 1), (EdgeRef::new(EdgeKind::Back, h - 1, p + 1), 0)]
            }
            PuzzleKind::GD => {
                vec![(EdgeRef::new(EdgeKind::Flat, h, p), 0), (EdgeRef::new(EdgeKind::Flat, h, p + 1), 1)]
            }
            _ => Vec::new(),
        }
    }

    /// Height of the excess center.
    pub fn height(&self) -> usize {
        self.h
    }

    /// Index of the \-diagonal through the excess center, counted from the
    /// left corner.
    pub fn diagonal(&self) -> usize {
        match self.kind {
            PuzzleKind::RD => self.h + self.p + 1,
            _ => self.h + self.p,
        }
    }

    pub fn on_left_boundary(&self) -> bool {
        self.kind == PuzzleKind::BD && self.p == 0
    }

    pub fn on_right_boundary(&self, n: usize) -> bool {
        self.kind == PuzzleKind::RD && self.h + self.p + 1 == n
    }
}

/// All admissible excess locations of a kind.
pub fn excess_locations(n: usize, kind: PuzzleKind) -> Vec<Excess> {
    let mut out = Vec::new();
    for h in 0..n {
        for p in 0..n - h {
            let e = Excess::new(kind, h, p);
            if e.is_valid(n) {
                out.push(e);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Puzzle {
    pub n: usize,
    /// Labels indexed by [`TriGrid::edge_id`], as seen from the up side.
    pub labels: Vec<u8>,
    pub excess: Option<Excess>,
}

fn flip(x: u8) -> u8 {
    match x {
        0 => 1,
        1 => 0,
        other => other,
    }
}

impl Puzzle {
    pub fn kind(&self) -> PuzzleKind {
        self.excess.map_or(PuzzleKind::KT, |e| e.kind)
    }

    pub fn label(&self, grid: &TriGrid, e: EdgeRef) -> u8 {
        self.labels[grid.edge_id(e)]
    }

    /// Label seen from the down side of an edge (or from outside).
    pub fn outer_label(&self, grid: &TriGrid, e: EdgeRef) -> u8 {
        let l = self.label(grid, e);
        match self.excess {
            Some(x) if x.flipped_edges().iter().any(|(f, _)| *f == e) => flip(l),
            _ => l,
        }
    }

    pub fn triangle_labels(&self, grid: &TriGrid, t: Tri) -> [u8; 3] {
        let s = grid.sides(t);
        match t {
            Tri::Up(..) => s.map(|e| self.label(grid, e)),
            Tri::Down(..) => s.map(|e| self.outer_label(grid, e)),
        }
    }

    pub fn boundary(&self, grid: &TriGrid) -> Result<Boundary, PuzzleError> {
        let sides = grid.boundary_edges();
        let read = |k: usize| sides[k].iter().map(|&e| self.outer_label(grid, e)).collect::<Vec<u8>>();
        BOUNDARY_CONVENTION.read(grid, [read(0), read(1), read(2)])
    }

    pub fn validate(&self, grid: &TriGrid) -> Result<(), PuzzleError> {
        if let Some(x) = self.excess {
            if !x.is_valid(self.n) {
                return Err(PuzzleError::Location(x.h, x.p));
            }
        }
        let solver = Solver::new(grid, self.excess);
        let vals: Vec<Option<u8>> = self.labels.iter().map(|&l| Some(l)).collect();
        if solver.solve(vals, 1).len() != 1 {
            return Err(PuzzleError::Invalid("piece or excess constraint violated".into()));
        }
        self.boundary(grid).map(|_| ())
    }

    /// Rotation by 120 degrees: the bottom side goes to the right side,
    /// the right side to the left side and the left side to the bottom.
    pub fn rotate(&self, grid: &TriGrid) -> Puzzle {
        let n = self.n;
        let mut labels = vec![0; self.labels.len()];
        for h in 0..n {
            for p in 0..n - h {
                let (h2, p2) = (p, n - 1 - h - p);
                let l = |k| self.label(grid, EdgeRef::new(k, h, p));
                labels[grid.edge_id(EdgeRef::new(EdgeKind::Slash, h2, p2))] = l(EdgeKind::Back);
                labels[grid.edge_id(EdgeRef::new(EdgeKind::Back, h2, p2))] = l(EdgeKind::Flat);
                labels[grid.edge_id(EdgeRef::new(EdgeKind::Flat, h2, p2))] = l(EdgeKind::Slash);
            }
        }
        let excess = self.excess.map(|x| {
            let (h, p) = (x.h, x.p);
            match x.kind {
                PuzzleKind::BD => Excess::new(PuzzleKind::GD, p, n - 1 - h - p),
                PuzzleKind::RD => Excess::new(PuzzleKind::BD, p + 1, n - 1 - h - p),
                PuzzleKind::GD => Excess::new(PuzzleKind::RD, p + 1, n - 2 - h - p),
                PuzzleKind::DHD | PuzzleKind::DHU => {
                    let c = if x.kind == PuzzleKind::DHD { n - 2 - h - p } else { n - 1 - h - p };
                    Excess::new(x.kind, p, c)
                }
                PuzzleKind::KT => x,
            }
        });
        Puzzle { n, labels, excess }
    }

    pub fn to_json(&self, grid: &TriGrid) -> serde_json::Value {
        let labels: serde_json::Map<String, serde_json::Value> = (0..self.labels.len())
            .map(|id| (grid.edge_ref(id).to_string(), serde_json::json!(self.labels[id])))
            .collect();
        let excess = self.excess.map(|x| {
            serde_json::json!({
                "type": format!("{:?}", x.kind),
                "location": { "h": x.h, "p": x.p },
                "edges": x.flipped_edges().iter().map(|(e, _)| e.to_string()).collect::<Vec<_>>(),
            })
        });
        serde_json::json!({ "N": self.n, "labels": labels, "excess": excess })
    }
}

// ---------------------------------------------------------------------------
// Constraint solver

const ALL2: [u8; 3] = [2, 2, 2];

struct Solver<'a> {
    grid: &'a TriGrid,
    excess: Option<Excess>,
    /// Per edge: required up-side label if the edge is exceptional.
    flipped: Vec<Option<u8>>,
}

impl<'a> Solver<'a> {
    fn new(grid: &'a TriGrid, excess: Option<Excess>) -> Self {
        let mut flipped = vec![None; grid.edge_count()];
        if let Some(x) = excess {
            for (e, l) in x.flipped_edges() {
                flipped[grid.edge_id(e)] = Some(l);
            }
        }
        Solver { grid, excess, flipped }
    }

    fn allowed(&self, t: Tri) -> Vec<[u8; 3]> {
        let special = match (self.excess, t) {
            (Some(Excess { kind: PuzzleKind::DHU, h, p }), Tri::Up(a, b)) => (h, p) == (a, b),
            (Some(Excess { kind: PuzzleKind::DHD, h, p }), Tri::Down(a, b)) => (h, p) == (a, b),
            _ => false,
        };
        if special {
            return vec![ALL2];
        }
        let o = match t {
            Tri::Up(..) => Orientation::Up,
            Tri::Down(..) => Orientation::Down,
        };
        catalog().pieces(o).iter().map(|p| p.labels).collect()
    }

    fn triangle_ok(&self, t: Tri, vals: &[Option<u8>], allowed: &[[u8; 3]]) -> bool {
        let sides = self.grid.sides(t);
        let view: [Option<u8>; 3] = sides.map(|e| {
            let id = self.grid.edge_id(e);
            vals[id].map(|x| match t {
                Tri::Down(..) if self.flipped[id].is_some() => flip(x),
                _ => x,
            })
        });
        allowed.iter().any(|tr| (0..3).all(|k| view[k].is_none_or(|x| x == tr[k])))
    }

    /// All completions of a partial labeling, up to `limit` solutions.
    fn solve(&self, mut vals: Vec<Option<u8>>, limit: usize) -> Vec<Vec<u8>> {
        let g = self.grid;
        for (id, f) in self.flipped.iter().enumerate() {
            if let (Some(req), Some(x)) = (f, vals[id]) {
                if *req != x {
                    return Vec::new();
                }
            }
        }
        let tris = g.triangles();
        let allowed: HashMap<Tri, Vec<[u8; 3]>> = tris.iter().map(|&t| (t, self.allowed(t))).collect();
        if !tris.iter().all(|t| self.triangle_ok(*t, &vals, &allowed[t])) {
            return Vec::new();
        }
        // The special triangle of a DH excess must not be matched by
        // ordinary pieces elsewhere, which the catalog already excludes.
        let order: Vec<usize> = (0..vals.len()).filter(|&id| vals[id].is_none()).collect();
        let mut out = Vec::new();
        self.rec(&order, 0, &mut vals, &allowed, limit, &mut out);
        out
    }

    fn rec(
        &self,
        order: &[usize],
        k: usize,
        vals: &mut Vec<Option<u8>>,
        allowed: &HashMap<Tri, Vec<[u8; 3]>>,
        limit: usize,
        out: &mut Vec<Vec<u8>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == order.len() {
            out.push(vals.iter().map(|v| v.unwrap()).collect());
            return;
        }
        let id = order[k];
        let domain: &[u8] = match self.flipped[id] {
            Some(0) => &[0],
            Some(_) => &[1],
            None => &[0, 1, 2],
        };
        for &x in domain {
            vals[id] = Some(x);
            if self.grid.tris_of_edge[id].iter().all(|t| self.triangle_ok(*t, vals, &allowed[t])) {
                self.rec(order, k + 1, vals, allowed, limit, out);
            }
        }
        vals[id] = None;
    }
}

fn boundary_assignment(grid: &TriGrid, b: &Boundary, excess: Option<Excess>, conv: &BoundaryConvention) -> Vec<Option<u8>> {
    let mut vals = vec![None; grid.edge_count()];
    let flipped: Vec<EdgeRef> = excess.map(|x| x.flipped_edges().into_iter().map(|(e, _)| e).collect()).unwrap_or_default();
    for (e, l) in conv.edge_labels(grid, b) {
        vals[grid.edge_id(e)] = Some(if flipped.contains(&e) { flip(l) } else { l });
    }
    vals
}

fn enumerate_with(grid: &TriGrid, b: &Boundary, kind: PuzzleKind, conv: &BoundaryConvention) -> Vec<Puzzle> {
    let n = grid.n;
    if b.u.len() != n || b.v.len() != n || b.w.len() != n {
        return Vec::new();
    }
    let excesses: Vec<Option<Excess>> = match kind {
        PuzzleKind::KT => vec![None],
        k => excess_locations(n, k).into_iter().map(Some).collect(),
    };
    let mut out: Vec<Puzzle> = excesses
        .par_iter()
        .flat_map_iter(|&x| {
            let vals = boundary_assignment(grid, b, x, conv);
            Solver::new(grid, x)
                .solve(vals, usize::MAX)
                .into_iter()
                .map(move |labels| Puzzle { n, labels, excess: x })
        })
        .collect();
    out.sort();
    out
}

/// All puzzles of a kind with boundary `b`.
pub fn enumerate_puzzles(b: &Boundary, kind: PuzzleKind) -> Vec<Puzzle> {
    let grid = TriGrid::new(b.w.len());
    enumerate_with(&grid, b, kind, &BOUNDARY_CONVENTION)
}

pub fn count_puzzles(b: &Boundary, kind: PuzzleKind) -> usize {
    enumerate_puzzles(b, kind).len()
}

/// Conventions under which KT puzzle counts equal the LR coefficient on
/// every triple of excess 0 and size at most `max_n`.
pub fn calibrate_boundary_convention(max_n: usize) -> Vec<BoundaryConvention> {
    let triples: Vec<Boundary> = (1..=max_n)
        .flat_map(|n| crate::tfpl_core::all_triples(n).into_iter().filter(|b| b.excess() == 0))
        .collect();
    BoundaryConvention::all()
        .into_iter()
        .filter(|conv| {
            triples.par_iter().all(|b| {
                let grid = TriGrid::new(b.w.len());
                BigInt::from(enumerate_with(&grid, b, PuzzleKind::KT, conv).len()) == lr(&b.u, &b.v, &b.w)
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Tangles and puzzles

/// Content of every triangle, read off the extended tangle.
fn contents_from_tangle(grid: &TriGrid, t: &PathTangle) -> HashMap<Tri, u8> {
    let mut leave: [HashMap<(i32, i32), Step>; 2] = [HashMap::new(), HashMap::new()];
    let mut arrive: [HashMap<(i32, i32), Step>; 2] = [HashMap::new(), HashMap::new()];
    let mut starts: [HashSet<(i32, i32)>; 2] = [HashSet::new(), HashSet::new()];
    for (k, (c, fam)) in [(Color::Blue, &t.blue), (Color::Red, &t.red)].into_iter().enumerate() {
        for path in &fam.paths {
            starts[k].insert(path.start);
            let pts = path.points(c);
            for (i, &s) in path.steps.iter().enumerate() {
                leave[k].insert(pts[i], s);
                arrive[k].insert(pts[i + 1], s);
            }
        }
    }
    let mut out = HashMap::new();
    for tri in grid.triangles() {
        let mut c = 0;
        match tri {
            Tri::Up(h, p) => {
                let (a, y) = ((h + 2 * p) as i32, h as i32);
                let (pb, qr) = ((a, y), (a + 1, y));
                match arrive[0].get(&pb) {
                    Some(Step::U) => c |= BU,
                    Some(Step::H) => c |= BH,
                    _ if starts[0].contains(&pb) => c |= BU,
                    _ => {}
                }
                match arrive[1].get(&qr) {
                    Some(Step::U) => c |= RU,
                    Some(Step::H) => c |= RH,
                    _ if starts[1].contains(&qr) => c |= RU,
                    _ => {}
                }
            }
            Tri::Down(h, p) => {
                let (a, y) = ((h + 1 + 2 * p) as i32, h as i32);
                let (r, b) = ((a, y), (a + 1, y));
                match leave[0].get(&b) {
                    Some(Step::U) => c |= BU,
                    Some(Step::H) => c |= BH,
                    _ => {}
                }
                match leave[1].get(&r) {
                    Some(Step::U) => c |= RU,
                    Some(Step::H) => c |= RH,
                    _ => {}
                }
            }
        }
        out.insert(tri, c);
    }
    out
}

/// The puzzle of a tangle of excess 0 or 1.
pub fn puzzle_from_tangle(t: &PathTangle) -> Result<Puzzle, PuzzleError> {
    let exc = t.boundary.excess();
    if !(0..=1).contains(&exc) {
        return Err(PuzzleError::Excess(exc));
    }
    let grid = TriGrid::new(t.n);
    let contents = contents_from_tangle(&grid, t);
    let mut labels = vec![0; grid.edge_count()];
    let mut down_view = vec![None; grid.edge_count()];
    for (&tri, &c) in &contents {
        let l = labels_of(c);
        for (k, e) in grid.sides(tri).into_iter().enumerate() {
            match tri {
                Tri::Up(..) => labels[grid.edge_id(e)] = l[k],
                Tri::Down(..) => down_view[grid.edge_id(e)] = Some(l[k]),
            }
        }
    }
    // Boundary edges are seen from outside through the boundary words.
    for (e, l) in BOUNDARY_CONVENTION.edge_labels(&grid, &t.boundary) {
        down_view[grid.edge_id(e)] = Some(l);
    }
    let mismatched: Vec<EdgeRef> = (0..labels.len())
        .filter(|&id| down_view[id] != Some(labels[id]))
        .map(|id| grid.edge_ref(id))
        .collect();
    let excess = match mismatched.as_slice() {
        [] => {
            let dhd = grid.triangles().into_iter().find(|&tri| matches!(tri, Tri::Down(..)) && contents[&tri] == BH | RH);
            let dhu = grid.triangles().into_iter().find(|&tri| matches!(tri, Tri::Up(..)) && contents[&tri] == BH | RH);
            match (dhd, dhu) {
                (Some(Tri::Down(h, p)), None) => Some(Excess::new(PuzzleKind::DHD, h, p)),
                (None, Some(Tri::Up(h, p))) => Some(Excess::new(PuzzleKind::DHU, h, p)),
                (None, None) => None,
                _ => return Err(PuzzleError::Invalid("several double horizontal pieces".into())),
            }
        }
        [a, b] if a.kind == b.kind && a.kind != EdgeKind::Flat => {
            let upper = if a.h > b.h { *a } else { *b };
            let kind = if a.kind == EdgeKind::Slash { PuzzleKind::BD } else { PuzzleKind::RD };
            Some(Excess::new(kind, upper.h, upper.p))
        }
        _ => return Err(PuzzleError::Invalid(format!("mismatched edges {mismatched:?}"))),
    };
    let puzzle = Puzzle { n: t.n, labels, excess };
    puzzle.validate(&grid)?;
    Ok(puzzle)
}

/// Inverse of [`puzzle_from_tangle`].
pub fn tangle_from_puzzle(pz: &Puzzle) -> Result<PathTangle, PuzzleError> {
    let grid = TriGrid::new(pz.n);
    let boundary = pz.boundary(&grid)?;
    let cat = catalog();
    // Step maps: point -> (next point, step).
    let mut next: [HashMap<(i32, i32), ((i32, i32), Step)>; 2] = [HashMap::new(), HashMap::new()];
    let mut add = |k: usize, from: (i32, i32), to: (i32, i32), s: Step| {
        next[k].insert(from, (to, s));
    };
    for h in 0..pz.n {
        for p in 0..pz.n - h {
            let piece = cat
                .by_labels(Orientation::Up, pz.triangle_labels(&grid, Tri::Up(h, p)))
                .ok_or_else(|| PuzzleError::Invalid(format!("no piece at Up({h},{p})")))?;
            let c = piece.content;
            let (a, y) = ((h + 2 * p) as i32, h as i32);
            if c & BU != 0 && y > 0 {
                add(0, (a + 1, y - 1), (a, y), Step::U);
            }
            if c & BH != 0 {
                add(0, (a + 2, y), (a, y), Step::H);
            }
            if c & RU != 0 && y > 0 {
                add(1, (a, y - 1), (a + 1, y), Step::U);
            }
            if c & RH != 0 {
                add(1, (a - 1, y), (a + 1, y), Step::H);
            }
        }
    }
    if let Some(x) = pz.excess {
        let (h, p) = (x.h as i32, x.p as i32);
        match x.kind {
            PuzzleKind::BD => add(0, (h + 2 * p, h), (h + 2 * p - 1, h - 1), Step::D),
            PuzzleKind::RD => add(1, (h + 2 * p + 1, h), (h + 2 * p + 2, h - 1), Step::D),
            _ => {}
        }
    }
    let limit = 4 * pz.n * pz.n;
    let family = |k: usize, color: Color| PathFamily {
        color,
        paths: PathFamily::starts(color, &boundary.w)
            .into_iter()
            .map(|start| {
                let mut steps = Vec::new();
                let mut q = start;
                while let Some(&(r, s)) = next[k].get(&q) {
                    steps.push(s);
                    q = r;
                    if steps.len() > limit {
                        break;
                    }
                }
                LatticePath { start, steps }
            })
            .collect(),
    };
    let t = PathTangle { n: pz.n, blue: family(0, Color::Blue), red: family(1, Color::Red), boundary };
    t.validate().map_err(|v| PuzzleError::Invalid(format!("decoded tangle: {v:?}")))?;
    Ok(t)
}

// ---------------------------------------------------------------------------
// Moves

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Move {
    B,
    BB,
    BR,
    R,
    RR,
    RB,
}

impl Move {
    pub const ALL: [Move; 6] = [Move::B, Move::BB, Move::BR, Move::R, Move::RR, Move::RB];

    pub fn source_kind(self) -> PuzzleKind {
        match self {
            Move::B | Move::BB | Move::BR => PuzzleKind::BD,
            _ => PuzzleKind::RD,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Excess after the move from `src`.
    pub fn target(self, src: Excess) -> Option<Excess> {
        let (h, p) = (src.h, src.p);
        let (kind, h2, p2) = match self {
            Move::B => (PuzzleKind::BD, h.checked_sub(1)?, p + 1),
            Move::BB => (PuzzleKind::BD, h, p + 1),
            Move::BR => (PuzzleKind::RD, h, p),
            Move::R => (PuzzleKind::RD, h + 1, p),
            Move::RR => (PuzzleKind::RD, h, p + 1),
            Move::RB => (PuzzleKind::BD, h, p + 2),
        };
        Some(Excess::new(kind, h2, p2))
    }

    /// Source excess of a move ending at `dst`.
    pub fn source(self, dst: Excess) -> Option<Excess> {
        let (h, p) = (dst.h, dst.p);
        let (kind, h2, p2) = match self {
            Move::B => (PuzzleKind::BD, h + 1, p.checked_sub(1)?),
            Move::BB => (PuzzleKind::BD, h, p.checked_sub(1)?),
            Move::BR => (PuzzleKind::BD, h, p),
            Move::R => (PuzzleKind::RD, h.checked_sub(1)?, p),
            Move::RR => (PuzzleKind::RD, h, p.checked_sub(1)?),
            Move::RB => (PuzzleKind::RD, h, p.checked_sub(2)?),
        };
        Some(Excess::new(kind, h2, p2))
    }

    /// The four triangles rewritten by the move from `src`.
    pub fn window(self, src: Excess) -> Vec<Tri> {
        let (h, p) = (src.h as i64, src.p as i64);
        let rel: [(bool, i64, i64); 4] = match self {
            Move::B => [(true, 0, 0), (false, -1, 0), (true, -1, 0), (false, -2, 0)],
            Move::BB => [(true, 0, 0), (false, 0, 0), (false, -1, 0), (true, -1, 0)],
            Move::BR => [(true, 0, 0), (true, -1, 0), (false, -1, 0), (true, -1, 1)],
            Move::R => [(false, -1, 1), (true, 0, 1), (false, 0, 0), (true, 1, 0)],
            Move::RR => [(false, -1, 1), (true, -1, 2), (false, 0, 0), (true, 0, 1)],
            Move::RB => [(false, 0, 0), (false, -1, 1), (true, 0, 1), (false, 0, 1)],
        };
        rel.iter()
            .filter(|(_, dh, dp)| h + dh >= 0 && p + dp >= 0)
            .map(|&(up, dh, dp)| {
                let (a, b) = ((h + dh) as usize, (p + dp) as usize);
                if up {
                    Tri::Up(a, b)
                } else {
                    Tri::Down(a, b)
                }
            })
            .collect()
    }

    /// Double-horizontal excess passed through by BR and RB.
    pub fn intermediate(self, src: Excess) -> Option<Excess> {
        match self {
            Move::BR => Some(Excess::new(PuzzleKind::DHD, src.h.checked_sub(1)?, src.p)),
            Move::RB => Some(Excess::new(PuzzleKind::DHU, src.h, src.p + 1)),
            _ => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub const MAX_WINDOW_RADIUS: usize = 2;

fn expand(grid: &TriGrid, base: &[Tri], radius: usize) -> BTreeSet<Tri> {
    let mut set: BTreeSet<Tri> = base.iter().copied().filter(|&t| grid.contains(t)).collect();
    for _ in 0..radius {
        let extra: Vec<Tri> = set.iter().flat_map(|&t| grid.neighbors(t)).collect();
        set.extend(extra);
    }
    set
}

/// Relabelings of the window that carry the excess of `pz` to `target`;
/// labels seen from outside the window stay fixed.
fn window_solutions(grid: &TriGrid, pz: &Puzzle, window: &BTreeSet<Tri>, target: Excess) -> Vec<Puzzle> {
    if !target.is_valid(pz.n) {
        return Vec::new();
    }
    let new_flipped: HashSet<EdgeRef> = target.flipped_edges().into_iter().map(|(e, _)| e).collect();
    let vals: Vec<Option<u8>> = (0..grid.edge_count())
        .map(|id| {
            let e = grid.edge_ref(id);
            let up_in = window.contains(&Tri::Up(e.h, e.p));
            let down_in = grid.down_of(e).is_some_and(|d| window.contains(&d));
            if !up_in {
                Some(pz.labels[id])
            } else if down_in {
                None
            } else {
                let outside = pz.outer_label(grid, e);
                Some(if new_flipped.contains(&e) { flip(outside) } else { outside })
            }
        })
        .collect();
    Solver::new(grid, Some(target))
        .solve(vals, usize::MAX)
        .into_iter()
        .map(|labels| Puzzle { n: pz.n, labels, excess: Some(target) })
        .collect()
}

fn unique_move(
    grid: &TriGrid,
    pz: &Puzzle,
    candidates: &[(Move, Excess, Excess)],
    what: &str,
) -> Result<MoveOutcome, PuzzleError> {
    for radius in 0..=MAX_WINDOW_RADIUS {
        let mut found = Vec::new();
        for &(mv, src, dst) in candidates {
            let win = expand(grid, &mv.window(src), radius);
            let goal = if pz.excess == Some(src) { dst } else { src };
            for q in window_solutions(grid, pz, &win, goal) {
                found.push((q, mv));
            }
        }
        match found.len() {
            0 => continue,
            1 => {
                let (puzzle, mv) = found.pop().unwrap();
                return Ok(MoveOutcome { puzzle, mv, radius });
            }
            k => return Err(PuzzleError::Ambiguous(format!("{what}: {k} candidates at radius {radius}"))),
        }
    }
    Err(PuzzleError::NoMove(what.to_string()))
}

/// Result of a move search: the new puzzle, the move and the window
/// radius at which it was found.
#[derive(Clone, Debug)]
pub struct MoveOutcome {
    pub puzzle: Puzzle,
    pub mv: Move,
    pub radius: usize,
}

/// The unique rightward move of a BD or RD puzzle.
pub fn move_right(pz: &Puzzle) -> Result<(Puzzle, Move), PuzzleError> {
    move_right_outcome(pz).map(|o| (o.puzzle, o.mv))
}

pub fn move_right_outcome(pz: &Puzzle) -> Result<MoveOutcome, PuzzleError> {
    let grid = TriGrid::new(pz.n);
    let x = pz.excess.filter(|x| matches!(x.kind, PuzzleKind::BD | PuzzleKind::RD));
    let x = x.ok_or_else(|| PuzzleError::NoMove("not a BD or RD puzzle".into()))?;
    if x.on_right_boundary(pz.n) {
        return Err(PuzzleError::NoMove("excess on the right boundary".into()));
    }
    let cands: Vec<(Move, Excess, Excess)> = Move::ALL
        .iter()
        .filter(|m| m.source_kind() == x.kind)
        .filter_map(|&m| Some((m, x, m.target(x)?)))
        .collect();
    unique_move(&grid, pz, &cands, "move right")
}

/// The unique leftward move of a BD or RD puzzle; the label is the move
/// being inverted.
pub fn move_left(pz: &Puzzle) -> Result<(Puzzle, Move), PuzzleError> {
    move_left_outcome(pz).map(|o| (o.puzzle, o.mv))
}

pub fn move_left_outcome(pz: &Puzzle) -> Result<MoveOutcome, PuzzleError> {
    let grid = TriGrid::new(pz.n);
    let x = pz.excess.filter(|x| matches!(x.kind, PuzzleKind::BD | PuzzleKind::RD));
    let x = x.ok_or_else(|| PuzzleError::NoMove("not a BD or RD puzzle".into()))?;
    if x.on_left_boundary() {
        return Err(PuzzleError::NoMove("excess on the left boundary".into()));
    }
    let cands: Vec<(Move, Excess, Excess)> = Move::ALL
        .iter()
        .filter_map(|&m| {
            let src = m.source(x)?;
            (m.target(src)?.kind == x.kind && src.is_valid(pz.n)).then_some((m, src, x))
        })
        .collect();
    unique_move(&grid, pz, &cands, "move left")
}

/// The double-horizontal puzzle reached half-way through a BR or RB move.
pub fn move_intermediate(pz: &Puzzle, mv: Move) -> Option<Puzzle> {
    let grid = TriGrid::new(pz.n);
    let x = pz.excess?;
    let mid = mv.intermediate(x)?;
    let win = expand(&grid, &mv.window(x), 0);
    let mut sols = window_solutions(&grid, pz, &win, mid);
    (sols.len() == 1).then(|| sols.pop().unwrap())
}

#[derive(Clone, Debug)]
pub struct PathRecord {
    /// Puzzles from PuzzleL to PuzzleR.
    pub puzzles: Vec<Puzzle>,
    pub moves: Vec<Move>,
    /// Counts of B, BB, BR, R, RR, RB.
    pub counts: [usize; 6],
    pub height_left: usize,
    pub height_right: usize,
    /// Position of the starting puzzle in `puzzles`.
    pub position: usize,
}

impl PathRecord {
    pub fn left(&self) -> &Puzzle {
        &self.puzzles[0]
    }

    pub fn right(&self) -> &Puzzle {
        self.puzzles.last().unwrap()
    }

    pub fn count(&self, m: Move) -> usize {
        self.counts[m.index()]
    }

    /// Residuals of the six path identities (all zero when they hold).
    pub fn identity_residuals(&self, b: &Boundary) -> [i64; 6] {
        let n = b.w.len() as i64;
        let c = |m: Move| self.count(m) as i64;
        let (hl, hr) = (self.height_left as i64, self.height_right as i64);
        let ones_v = b.v.letters()[..(n - hr) as usize].iter().filter(|&&x| x == 1).count() as i64;
        let zeros_u = b.u.letters()[hl as usize..].iter().filter(|&&x| x == 0).count() as i64;
        [
            c(Move::BR) - c(Move::RB) - 1,
            c(Move::R) - c(Move::B) - (hr - hl),
            c(Move::BB) + c(Move::BR) + c(Move::R) + c(Move::RR) + c(Move::RB) - (n - hl),
            c(Move::B) + c(Move::BB) + c(Move::BR) + c(Move::RR) + c(Move::RB) - (n - hr),
            c(Move::BB) + c(Move::RB) - ones_v,
            c(Move::RR) + c(Move::RB) - zeros_u,
        ]
    }
}

pub fn path_of(pz: &Puzzle) -> Result<PathRecord, PuzzleError> {
    let mut left = vec![pz.clone()];
    let mut left_moves = Vec::new();
    let limit = 4 * pz.n * pz.n + 8;
    while !left.last().unwrap().excess.unwrap().on_left_boundary() {
        let (q, m) = move_left(left.last().unwrap())?;
        left.push(q);
        left_moves.push(m);
        if left.len() > limit {
            return Err(PuzzleError::NoMove("leftward path does not terminate".into()));
        }
    }
    let position = left.len() - 1;
    left.reverse();
    left_moves.reverse();
    let mut puzzles = left;
    let mut moves = left_moves;
    while !puzzles.last().unwrap().excess.unwrap().on_right_boundary(pz.n) {
        let (q, m) = move_right(puzzles.last().unwrap())?;
        puzzles.push(q);
        moves.push(m);
        if puzzles.len() > 2 * limit {
            return Err(PuzzleError::NoMove("rightward path does not terminate".into()));
        }
    }
    let mut counts = [0; 6];
    for m in &moves {
        counts[m.index()] += 1;
    }
    Ok(PathRecord {
        height_left: puzzles[0].excess.unwrap().height(),
        height_right: puzzles.last().unwrap().excess.unwrap().height(),
        puzzles,
        moves,
        counts,
        position,
    })
}

// ---------------------------------------------------------------------------
// Closed forms

/// c_{u,v}^w: the LR coefficient of the shapes, zero unless the contents
/// agree and d(u) + d(v) = d(w).
pub fn lr(u: &Word, v: &Word, w: &Word) -> BigInt {
    if u.len() != w.len() || v.len() != w.len() || u.zeros() != w.zeros() || v.zeros() != w.zeros() {
        return BigInt::from(0);
    }
    if u.inversions() + v.inversions() != w.inversions() {
        return BigInt::from(0);
    }
    BigInt::from(lr_coefficient(&u.shape(), &v.shape(), &w.shape()))
}

pub fn predict_excess0(b: &Boundary) -> Result<BigInt, PuzzleError> {
    match b.excess() {
        0 => Ok(lr(&b.u, &b.v, &b.w)),
        e => Err(PuzzleError::Excess(e)),
    }
}

/// Closed-form counts for a boundary of excess 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Excess1Prediction {
    /// Bijection counts: moves in {BB,BR,R}, {RB,RR}, {B,RB,RR}, {BB,BR}.
    pub bb_br_r: BigInt,
    pub rb_rr: BigInt,
    pub b_rb_rr: BigInt,
    pub bb_br: BigInt,
    pub bd_with_b: BigInt,
    pub bd: BigInt,
    pub rd_with_r: BigInt,
    pub rd: BigInt,
    pub bd_or_rd: BigInt,
    pub dhd: BigInt,
    pub dhu: BigInt,
    pub oriented: BigInt,
    pub weighted: LaurentPoly,
    /// Plain TFPL count as the closed form is usually stated, with the
    /// term |v|_1 + L(v,v+) + 1.
    pub plain: BigInt,
    /// t(rho) - rho * sum c^{w-} expanded: the term is |v|_1 + L(v,v+).
    pub plain_corrected: BigInt,
}

impl Excess1Prediction {
    pub fn to_json(&self) -> serde_json::Value {
        let s = |x: &BigInt| x.to_string();
        serde_json::json!({
            "bb_br_r": s(&self.bb_br_r),
            "rb_rr": s(&self.rb_rr),
            "b_rb_rr": s(&self.b_rb_rr),
            "bb_br": s(&self.bb_br),
            "bd_with_b": s(&self.bd_with_b),
            "bd": s(&self.bd),
            "rd_with_r": s(&self.rd_with_r),
            "rd": s(&self.rd),
            "bd_or_rd": s(&self.bd_or_rd),
            "dhd": s(&self.dhd),
            "dhu": s(&self.dhu),
            "oriented": s(&self.oriented),
            "weighted": self.weighted.to_string(),
            "plain": s(&self.plain),
            "plain_corrected": s(&self.plain_corrected),
        })
    }
}

pub fn predict_counts(b: &Boundary) -> Result<Excess1Prediction, PuzzleError> {
    if b.excess() != 1 {
        return Err(PuzzleError::Excess(b.excess()));
    }
    let (u, v, w) = (&b.u, &b.v, &b.w);
    let z = || BigInt::from(0);
    let i = |x: usize| BigInt::from(x);
    let (mut bb_br_r, mut rb_rr, mut b_rb_rr, mut bb_br) = (z(), z(), z(), z());
    let (mut bd, mut rd, mut dhd, mut dhu, mut oriented, mut plain) = (z(), z(), z(), z(), z(), z());
    let (mut rd_r1, mut bd_l0_minus, mut plain_corrected) = (z(), z(), z());
    let mut weighted = LaurentPoly::zero();
    let qq = LaurentPoly::q_pow(1) + LaurentPoly::q_pow(-1);
    let ones_u = i(u.ones());
    let ones_v = i(v.ones());
    for c in u.covers() {
        let k = lr(&c.upper, v, w);
        bb_br_r += (i(c.r1) + 1) * &k;
        rb_rr += i(c.r0) * &k;
        rd += i(c.r()) * &k;
        rd_r1 += i(c.r1) * &k;
        dhd += i(c.l1) * &k;
        dhu += i(c.l1) * &k;
        oriented += (&ones_u + i(c.l1)) * &k;
        weighted += &((LaurentPoly::constant(i(c.r1) + 1) + &qq * &LaurentPoly::constant(i(c.l1)))
            * LaurentPoly::constant(k.clone()));
    }
    for c in v.covers() {
        let k = lr(u, &c.upper, w);
        b_rb_rr += i(c.l0) * &k;
        bb_br += (i(c.l1) + 1) * &k;
        bd += i(c.l()) * &k;
        bd_l0_minus += i(c.l0) * &k;
        rd -= i(c.l1) * &k;
        dhd += (i(c.l1) + 1) * &k;
        dhu += i(c.l1) * &k;
        oriented += (i(c.l()) + i(c.l1) + 1) * &k;
        plain += (&ones_v + i(c.l()) + 1) * &k;
        plain_corrected += (&ones_v + i(c.l())) * &k;
        weighted += &((LaurentPoly::constant(i(c.l0) + 1) + &qq * &LaurentPoly::constant(i(c.l1)) + LaurentPoly::q_pow(1))
            * LaurentPoly::constant(k.clone()));
    }
    for c in w.cocovers() {
        let k = lr(u, v, &c.lower);
        dhd -= i(c.l1) * &k;
        dhu -= i(c.l1) * &k;
        oriented -= 2 * i(c.l1) * &k;
        plain -= i(c.l1) * &k;
        plain_corrected -= i(c.l1) * &k;
        weighted -= &(&qq * &LaurentPoly::constant(i(c.l1) * &k));
    }
    bd -= &rb_rr;
    let bd_with_b = bd_l0_minus - &rb_rr;
    let mut sum_vcov = z();
    for c in v.covers() {
        sum_vcov += i(c.l1) * lr(u, &c.upper, w);
    }
    let rd_with_r = rd_r1 - sum_vcov;
    let bd_or_rd = bb_br_r.clone() + &b_rb_rr + v.covers().iter().map(|c| lr(u, &c.upper, w)).sum::<BigInt>();
    Ok(Excess1Prediction {
        bb_br_r,
        rb_rr,
        b_rb_rr,
        bb_br,
        bd_with_b,
        bd,
        rd_with_r,
        rd,
        bd_or_rd,
        dhd,
        dhu,
        oriented,
        weighted,
        plain,
        plain_corrected,
    })
}

/// Move-classified puzzle counts: BD and RD puzzles by the rightward move
/// that applies (RD puzzles on the right boundary are not counted).
pub fn count_by_move(b: &Boundary) -> Result<[usize; 6], PuzzleError> {
    let mut counts = [0; 6];
    for kind in [PuzzleKind::BD, PuzzleKind::RD] {
        for pz in enumerate_puzzles(b, kind) {
            if pz.excess.unwrap().on_right_boundary(pz.n) {
                continue;
            }
            counts[move_right(&pz)?.1.index()] += 1;
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfpl_core::{triples_with_excess, Grid};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn catalog_has_five_pieces_each() {
        let c = derive_piece_catalog().unwrap();
        assert_eq!(c.up.len(), 5);
        assert_eq!(c.down.len(), 5);
        let names: Vec<(&str, [u8; 3])> = c.up.iter().map(|p| (p.name.as_str(), p.labels)).collect();
        assert_eq!(
            names,
            [("U1", [0, 0, 0]), ("U2", [1, 1, 1]), ("U3", [0, 2, 1]), ("U4", [2, 1, 0]), ("U5", [1, 0, 2])]
        );
        assert_eq!(c.up.iter().filter(|p| p.content == 0).count(), 1);
        assert_eq!(c.up[3].content, RH | BU);
    }

    #[test]
    fn edge_ids_round_trip() {
        let g = TriGrid::new(4);
        for id in 0..g.edge_count() {
            assert_eq!(g.edge_id(g.edge_ref(id)), id);
        }
    }

    #[test]
    fn smallest_kt_puzzle() {
        let b = Boundary::new(w("01"), w("01"), w("01"));
        assert_eq!(count_puzzles(&b, PuzzleKind::KT), 1);
        assert_eq!(predict_excess0(&b).unwrap(), BigInt::from(1));
    }

    #[test]
    fn kt_with_excess_one_is_empty() {
        for b in triples_with_excess(3, 1) {
            assert!(enumerate_puzzles(&b, PuzzleKind::KT).is_empty());
        }
    }

    #[test]
    fn tangle_round_trip_small() {
        for n in 1..=3 {
            let grid = Grid::new(n).unwrap();
            let tg = TriGrid::new(n);
            for exc in 0..=1 {
                for b in triples_with_excess(n, exc) {
                    for f in crate::tfpl_core::enumerate_oriented(&grid, &b).unwrap() {
                        let t = PathTangle::from_oriented(&grid, &f);
                        let pz = puzzle_from_tangle(&t).unwrap();
                        assert_eq!(pz.boundary(&tg).unwrap(), b);
                        assert_eq!(tangle_from_puzzle(&pz).unwrap(), t);
                    }
                }
            }
        }
    }
}
