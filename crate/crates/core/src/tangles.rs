//! Blue-red path tangles: the pair of path families encoding an oriented
//! TFPL, their validity conditions, local pattern census and the excess
//! identities.
//!
//! Every grid vertex is a "site" of the tangle. An odd vertex X = (a, y)
//! sits between the red point (a-1, y) and the blue point (a, y); an even
//! vertex Y = (a, y) sits between the blue point (a-1, y) and the red point
//! (a, y). The steps touching these two points determine the incoming and
//! outgoing direction of the TFPL path through the site.

use crate::matchings::{
    matching_to_paths, merge_matchings, paths_to_matching, split_matchings, Color, LatticePath, MatchingGraph,
    PathFamily, Side, Step,
};
use crate::tfpl_core::{Boundary, Dir, Grid, OrientedTfpl, TurnCensus};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangleError {
    #[error("tangle is invalid: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("tangle does not encode a configuration: {0}")]
    Decode(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// A blue and a red diagonal step cross at this doubled point.
    CrossingDiagonals((i32, i32)),
    /// The midpoint of a horizontal step is not on a path of the other
    /// color.
    UnusedMidpoint(Color, (i32, i32)),
    BadFamily(Color, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PathTangle {
    pub n: usize,
    pub boundary: Boundary,
    pub blue: PathFamily,
    pub red: PathFamily,
}

/// Type of an excess-1 configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExcessType {
    /// One blue down step.
    BD,
    /// One red down step.
    RD,
    /// Overlapping horizontal steps around an odd vertex.
    DHD,
    /// Overlapping horizontal steps around an even vertex.
    DHU,
}

impl ExcessType {
    pub const ALL: [ExcessType; 4] = [ExcessType::BD, ExcessType::RD, ExcessType::DHD, ExcessType::DHU];

    pub fn name(self) -> &'static str {
        match self {
            ExcessType::BD => "BD",
            ExcessType::RD => "RD",
            ExcessType::DHD => "DHD",
            ExcessType::DHU => "DHU",
        }
    }
}

/// Counts of local configurations of a tangle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LocalCensus {
    pub blue_down: u64,
    pub red_down: u64,
    pub blue_horizontal: u64,
    pub red_horizontal: u64,
    /// Overlapping horizontals around odd and even sites.
    pub dhd: u64,
    pub dhu: u64,
    /// Turns through every site, by site parity; same layout as
    /// [`TurnCensus`].
    pub turns: TurnCensus,
}

impl LocalCensus {
    fn t(&self, odd: bool, name: &str) -> i64 {
        self.turns.named_at(odd, name) as i64
    }

    /// ld, ul, dl and lu turns in both parities: the eight crossing
    /// patterns.
    pub fn crossing_patterns(&self) -> [(&'static str, bool, u64); 8] {
        let mut out = [("", false, 0); 8];
        let mut k = 0;
        for name in ["ld", "ul", "dl", "lu"] {
            for odd in [true, false] {
                out[k] = (name, odd, self.turns.named_at(odd, name));
                k += 1;
            }
        }
        out
    }

    /// Right side of the excess formula.
    pub fn excess_sum(&self) -> i64 {
        self.blue_down as i64 + self.red_down as i64 + self.prelim_sum()
    }

    /// Right side of the preliminary formula for the number of horizontal
    /// steps minus d(w).
    pub fn prelim_sum(&self) -> i64 {
        self.dhd as i64 + self.dhu as i64 + self.t(true, "ld") + self.t(true, "ul") + self.t(false, "dl")
            + self.t(false, "lu")
    }

    /// The two expressions for d(w) as signed sums of crossing patterns.
    pub fn inversion_sums(&self) -> (i64, i64) {
        (
            self.t(false, "ul") + self.t(true, "dl") - self.t(true, "ld") - self.t(false, "lu"),
            self.t(true, "lu") + self.t(false, "ld") - self.t(false, "dl") - self.t(true, "ul"),
        )
    }

    pub fn excess_patterns(&self) -> [(ExcessType, u64); 4] {
        [
            (ExcessType::BD, self.blue_down),
            (ExcessType::RD, self.red_down),
            (ExcessType::DHD, self.dhd),
            (ExcessType::DHU, self.dhu),
        ]
    }
}

/// Residuals of the excess identities; all zero on valid tangles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExcessReport {
    pub excess: i64,
    pub excess_residual: i64,
    pub prelim_residual: i64,
    pub inversion_residuals: (i64, i64),
}

impl ExcessReport {
    pub fn all_zero(&self) -> bool {
        self.excess_residual == 0 && self.prelim_residual == 0 && self.inversion_residuals == (0, 0)
    }
}

/// Extremities of the contact segments of one intersecting pair.
/// `red_split` counts right ends followed by red above blue, `red_merge`
/// left ends preceded by red above blue; likewise for blue. On valid
/// tangles red_split - red_merge = blue_merge - blue_split = 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Extremities {
    pub red_split: i64,
    pub red_merge: i64,
    pub blue_split: i64,
    pub blue_merge: i64,
}

struct StepIndex {
    /// Point -> step leaving it, per color.
    leaving: [HashMap<(i32, i32), Step>; 2],
    /// Point -> step arriving at it, per color.
    arriving: [HashMap<(i32, i32), Step>; 2],
    starts: [HashSet<(i32, i32)>; 2],
}

fn ci(c: Color) -> usize {
    match c {
        Color::Blue => 0,
        Color::Red => 1,
    }
}

impl PathTangle {
    pub fn from_oriented(grid: &Grid, f: &OrientedTfpl) -> PathTangle {
        let boundary = f.boundary(grid);
        let (mo, me) = split_matchings(grid, f);
        PathTangle {
            n: grid.n,
            blue: matching_to_paths(grid, &mo, &boundary.w),
            red: matching_to_paths(grid, &me, &boundary.w),
            boundary,
        }
    }

    pub fn to_oriented(&self, grid: &Grid) -> Result<OrientedTfpl, TangleError> {
        let b = &self.boundary;
        let err = |e: crate::matchings::MatchingError| TangleError::Decode(e.to_string());
        let mo = paths_to_matching(grid, &MatchingGraph::new(grid, Side::Odd, &b.u, &b.w), &self.blue).map_err(err)?;
        let me = paths_to_matching(grid, &MatchingGraph::new(grid, Side::Even, &b.v, &b.w), &self.red).map_err(err)?;
        merge_matchings(grid, &mo, &me).map_err(err)
    }

    fn family(&self, c: Color) -> &PathFamily {
        match c {
            Color::Blue => &self.blue,
            Color::Red => &self.red,
        }
    }

    fn index(&self) -> StepIndex {
        let mut idx = StepIndex {
            leaving: [HashMap::new(), HashMap::new()],
            arriving: [HashMap::new(), HashMap::new()],
            starts: [HashSet::new(), HashSet::new()],
        };
        for c in [Color::Blue, Color::Red] {
            for p in &self.family(c).paths {
                idx.starts[ci(c)].insert(p.start);
                let pts = p.points(c);
                for (k, &s) in p.steps.iter().enumerate() {
                    idx.leaving[ci(c)].insert(pts[k], s);
                    idx.arriving[ci(c)].insert(pts[k + 1], s);
                }
            }
        }
        idx
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        let b = &self.boundary;
        if let Err(e) = self.blue.validate(&b.u, &b.w) {
            violations.push(Violation::BadFamily(Color::Blue, e.to_string()));
        }
        if let Err(e) = self.red.validate(&b.v, &b.w) {
            violations.push(Violation::BadFamily(Color::Red, e.to_string()));
        }
        let diag_mids = |c: Color| -> BTreeSet<(i32, i32)> {
            let mut s = BTreeSet::new();
            for p in &self.family(c).paths {
                let pts = p.points(c);
                for (k, &st) in p.steps.iter().enumerate() {
                    if st != Step::H {
                        s.insert((pts[k].0 + pts[k + 1].0, pts[k].1 + pts[k + 1].1));
                    }
                }
            }
            s
        };
        for m in diag_mids(Color::Blue).intersection(&diag_mids(Color::Red)) {
            violations.push(Violation::CrossingDiagonals(*m));
        }
        for c in [Color::Blue, Color::Red] {
            let other = match c {
                Color::Blue => Color::Red,
                Color::Red => Color::Blue,
            };
            let used: HashSet<(i32, i32)> = self.family(other).paths.iter().flat_map(|p| p.points(other)).collect();
            for p in &self.family(c).paths {
                let pts = p.points(c);
                for (k, &st) in p.steps.iter().enumerate() {
                    if st == Step::H {
                        let mid = ((pts[k].0 + pts[k + 1].0) / 2, pts[k].1);
                        if !used.contains(&mid) {
                            violations.push(Violation::UnusedMidpoint(c, mid));
                        }
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Incoming and outgoing TFPL directions at the site (x, y), or `None`
    /// for isolated boundary vertices.
    fn site_turn(&self, idx: &StepIndex, x: i32, y: i32) -> Option<(Dir, Dir)> {
        let n = self.n as i32;
        let odd = (x + y) % 2 == 0;
        let (blue, red) = (0, 1);
        if odd {
            // Isolated: L_i with u_i = 0 or R_i with v_i = 1.
            if x == y && self.boundary.u.at(x as usize + 1) == 0 {
                return None;
            }
            if x + y == 2 * n && self.boundary.v.at((x - n) as usize) == 1 {
                return None;
            }
            let din = match idx.leaving[red].get(&(x - 1, y)) {
                Some(Step::H) => Dir::L,
                Some(Step::U) => Dir::D,
                Some(Step::D) => Dir::U,
                None => Dir::R,
            };
            let dout = match idx.leaving[blue].get(&(x, y)) {
                Some(Step::U) => Dir::U,
                Some(Step::D) => Dir::D,
                Some(Step::H) => Dir::L,
                None => Dir::R,
            };
            Some((din, dout))
        } else {
            let bl = (x - 1, y);
            let din = match idx.arriving[blue].get(&bl) {
                Some(Step::D) => Dir::D,
                Some(Step::U) => Dir::U,
                Some(Step::H) => Dir::L,
                None if idx.starts[blue].contains(&bl) => Dir::U,
                None => Dir::R,
            };
            let rr = (x, y);
            let dout = match idx.arriving[red].get(&rr) {
                Some(Step::U) => Dir::D,
                Some(Step::D) => Dir::U,
                Some(Step::H) => Dir::L,
                None if idx.starts[red].contains(&rr) => Dir::D,
                None => Dir::R,
            };
            Some((din, dout))
        }
    }

    pub fn local_census(&self) -> LocalCensus {
        let idx = self.index();
        let n = self.n as i32;
        let mut c = LocalCensus {
            blue_down: self.blue.count_steps(Step::D) as u64,
            red_down: self.red.count_steps(Step::D) as u64,
            blue_horizontal: self.blue.count_steps(Step::H) as u64,
            red_horizontal: self.red.count_steps(Step::H) as u64,
            ..Default::default()
        };
        for y in 0..n {
            for x in y..=2 * n - y {
                if let Some((a, b)) = self.site_turn(&idx, x, y) {
                    if a != b {
                        c.turns.add((x + y) % 2 == 0, a, b);
                    }
                }
            }
        }
        c.dhd = self.overlapping_horizontals(true);
        c.dhu = self.overlapping_horizontals(false);
        c
    }

    /// Pairs of a blue and a red horizontal step at the same height,
    /// overlapping on a unit interval. Around an odd site both steps start
    /// at the other's midpoint; around an even site both end there.
    fn overlapping_horizontals(&self, odd_site: bool) -> u64 {
        let starts_of = |c: Color| -> HashSet<((i32, i32), (i32, i32))> {
            let mut s = HashSet::new();
            for p in &self.family(c).paths {
                let pts = p.points(c);
                for (k, &st) in p.steps.iter().enumerate() {
                    if st == Step::H {
                        s.insert((pts[k], pts[k + 1]));
                    }
                }
            }
            s
        };
        let blue = starts_of(Color::Blue);
        let red = starts_of(Color::Red);
        red.iter()
            .filter(|&&((x, y), _)| {
                if odd_site {
                    blue.contains(&((x + 1, y), (x - 1, y)))
                } else {
                    blue.contains(&((x + 3, y), (x + 1, y)))
                }
            })
            .count() as u64
    }

    pub fn excess_checks(&self) -> ExcessReport {
        let c = self.local_census();
        let b = &self.boundary;
        let exc = b.excess();
        let dw = b.w.inversions() as i64;
        let horizontals = (c.blue_horizontal + c.red_horizontal) as i64;
        let (s1, s2) = c.inversion_sums();
        ExcessReport {
            excess: exc,
            excess_residual: exc - c.excess_sum(),
            prelim_residual: horizontals - dw - c.prelim_sum(),
            inversion_residuals: (dw - s1, dw - s2),
        }
    }

    /// The unique excess pattern of an excess-1 tangle.
    pub fn excess1_type(&self) -> Option<ExcessType> {
        if self.boundary.excess() != 1 {
            return None;
        }
        let c = self.local_census();
        let present: Vec<ExcessType> = c.excess_patterns().iter().filter(|(_, k)| *k > 0).map(|(t, _)| *t).collect();
        match present.as_slice() {
            [t] if c.excess_patterns().iter().map(|(_, k)| k).sum::<u64>() == 1 => Some(*t),
            _ => None,
        }
    }

    /// Pairs (blue path index, red path index) whose paths meet: a
    /// horizontal step of one has its midpoint on the other.
    pub fn intersecting_pairs(&self) -> Vec<(usize, usize)> {
        let owner = |c: Color| -> HashMap<(i32, i32), usize> {
            let mut m = HashMap::new();
            for (k, p) in self.family(c).paths.iter().enumerate() {
                for pt in p.points(c) {
                    m.insert(pt, k);
                }
            }
            m
        };
        let (blue_at, red_at) = (owner(Color::Blue), owner(Color::Red));
        let mut pairs = BTreeSet::new();
        for (c, other_at) in [(Color::Blue, &red_at), (Color::Red, &blue_at)] {
            for (k, p) in self.family(c).paths.iter().enumerate() {
                let pts = p.points(c);
                for (s, &st) in p.steps.iter().enumerate() {
                    if st == Step::H {
                        let mid = ((pts[s].0 + pts[s + 1].0) / 2, pts[s].1);
                        if let Some(&o) = other_at.get(&mid) {
                            pairs.insert(if c == Color::Blue { (k, o) } else { (o, k) });
                        }
                    }
                }
            }
        }
        pairs.into_iter().collect()
    }

    /// The inversion (i, j) of w matched with an intersecting pair: the red
    /// path starts below B_i and the blue path below B_j.
    pub fn pair_inversion(&self, pair: (usize, usize)) -> (usize, usize) {
        let j = (self.blue.paths[pair.0].start.0 / 2 + 1) as usize;
        let i = ((self.red.paths[pair.1].start.0 + 1) / 2) as usize;
        (i, j)
    }

    /// Contact segments of an intersecting pair along the x-axis and the
    /// relative position of the paths on either side of each segment. Left
    /// of the common range blue counts as above, right of it red does.
    pub fn extremities(&self, pair: (usize, usize)) -> Extremities {
        let height = |p: &LatticePath, c: Color| -> HashMap<i32, i32> {
            let pts = p.points(c);
            let mut h = HashMap::new();
            for win in pts.windows(2) {
                let ((x0, y0), (x1, y1)) = (win[0], win[1]);
                let (lo, hi) = (x0.min(x1), x0.max(x1));
                for x in lo..=hi {
                    let y = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
                    h.insert(x, y);
                }
            }
            h
        };
        let hb = height(&self.blue.paths[pair.0], Color::Blue);
        let hr = height(&self.red.paths[pair.1], Color::Red);
        let lo = *hb.keys().min().unwrap().max(hr.keys().min().unwrap());
        let hi = *hb.keys().max().unwrap().min(hr.keys().max().unwrap());
        // +1: red above, -1: blue above, 0: contact.
        let sign = |x: i32| -> i32 {
            if x < lo {
                -1
            } else if x > hi {
                1
            } else {
                (hr[&x] - hb[&x]).signum()
            }
        };
        let mut e = Extremities::default();
        let mut x = lo;
        while x <= hi {
            if sign(x) == 0 {
                let start = x;
                while x < hi && sign(x + 1) == 0 {
                    x += 1;
                }
                match sign(start - 1) {
                    1 => e.red_merge += 1,
                    _ => e.blue_merge += 1,
                }
                match sign(x + 1) {
                    1 => e.red_split += 1,
                    _ => e.blue_split += 1,
                }
            }
            x += 1;
        }
        e
    }

    /// alpha*ld + (1-alpha)*ul - beta*dl - (1-beta)*lu over all sites.
    pub fn brweight_exponent(&self, alpha: &BigRational, beta: &BigRational) -> BigRational {
        let t = self.local_census().turns;
        let r = |name: &str| BigRational::from_integer(BigInt::from(t.named(name)));
        let one = BigRational::from_integer(BigInt::from(1));
        alpha * r("ld") + (&one - alpha) * r("ul") - beta * r("dl") - (&one - beta) * r("lu")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let fam = |f: &PathFamily| -> Vec<serde_json::Value> {
            f.paths
                .iter()
                .map(|p| serde_json::json!({ "start": [p.start.0, p.start.1], "steps": p.step_string() }))
                .collect()
        };
        serde_json::json!({
            "n": self.n,
            "boundary": self.boundary,
            "blue": fam(&self.blue),
            "red": fam(&self.red),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchings::enumerate_matchings;
    use crate::tfpl_core::{all_triples, enumerate_oriented};

    #[test]
    fn census_matches_turns_and_identities_hold() {
        for n in 1..=4 {
            let grid = Grid::new(n).unwrap();
            for b in all_triples(n) {
                for f in enumerate_oriented(&grid, &b).unwrap() {
                    let t = PathTangle::from_oriented(&grid, &f);
                    assert!(t.validate().is_ok());
                    assert_eq!(t.to_oriented(&grid).unwrap(), f);
                    assert_eq!(t.local_census().turns, f.turn_census(&grid));
                    assert!(t.excess_checks().all_zero(), "{b}");
                    let pairs = t.intersecting_pairs();
                    assert_eq!(pairs.len(), b.w.inversions());
                    for p in pairs {
                        let (i, j) = t.pair_inversion(p);
                        assert!(i < j && b.w.at(i) == 1 && b.w.at(j) == 0);
                        let e = t.extremities(p);
                        assert_eq!(e.red_split - e.red_merge, 1);
                        assert_eq!(e.blue_merge - e.blue_split, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn excess_one_types_carry_expected_weights() {
        let grid = Grid::new(4).unwrap();
        for b in all_triples(4).into_iter().filter(|b| b.excess() == 1) {
            for f in enumerate_oriented(&grid, &b).unwrap() {
                let t = PathTangle::from_oriented(&grid, &f);
                let expected = match t.excess1_type().unwrap() {
                    ExcessType::DHD => 1,
                    ExcessType::DHU => -1,
                    _ => 0,
                };
                assert_eq!(f.weight_exponent(&grid), expected);
            }
        }
    }

    #[test]
    fn validity_is_disjointness() {
        for n in 1..=3 {
            let grid = Grid::new(n).unwrap();
            for b in all_triples(n) {
                let mos = enumerate_matchings(&grid, &MatchingGraph::new(&grid, Side::Odd, &b.u, &b.w));
                let mes = enumerate_matchings(&grid, &MatchingGraph::new(&grid, Side::Even, &b.v, &b.w));
                for mo in &mos {
                    for me in &mes {
                        let t = PathTangle {
                            n,
                            boundary: b.clone(),
                            blue: matching_to_paths(&grid, mo, &b.w),
                            red: matching_to_paths(&grid, me, &b.w),
                        };
                        assert_eq!(t.validate().is_ok(), mo.edges.is_disjoint(&me.edges));
                    }
                }
            }
        }
    }
}
