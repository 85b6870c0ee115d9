//! Fully packed loops on the n x n square grid with alternating boundary
//! stubs, their link patterns, and the decomposition of `A_{pi u m}` into
//! triangle configurations.
//!
//! External stubs are numbered counterclockwise, starting at the top of the
//! left side. Every other stub is part of the configuration; the selected
//! ones carry labels `1..=2n`. For n = 3:
//!
//! ```text
//!              6
//!              |
//!      1 - o   o   o - 5
//!
//!          o   o   o
//!
//!      2 - o   o   o - 4
//!              |
//!              3
//! ```
//!
//! Concretely stub `k` (0-based, `0..4n`) runs down the left side, then
//! left to right along the bottom, up the right side and right to left along
//! the top; stub `k` is selected when `k` is even and gets label `k/2 + 1`.

use num_bigint::{BigInt, BigUint};
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::ssyt_count;
use crate::tfpl_core::{enumerate_plain, Boundary, Grid};
use crate::words::{dyck_words, ExtendedLinkPattern, Word};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FplError {
    #[error("grid size must be at least 1")]
    EmptyGrid,
    #[error("not a noncrossing perfect pairing of 1..={0}")]
    BadPattern(usize),
    #[error("triangle enumeration failed: {0}")]
    Triangle(String),
}

/// A fully packed loop configuration: the set of internal edges of the grid.
/// Horizontal edges come first, `(r, c) - (r, c + 1)` at `r * (n - 1) + c`,
/// then vertical edges `(r, c) - (r + 1, c)` at `n (n - 1) + r * n + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FplConfig {
    pub n: usize,
    pub edges: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Bottom,
    Right,
    Top,
}

/// Vertex and side of stub `k`.
fn stub(n: usize, k: usize) -> ((usize, usize), Side) {
    let i = k % n;
    match k / n {
        0 => ((i, 0), Side::Left),
        1 => ((n - 1, i), Side::Bottom),
        2 => ((n - 1 - i, n - 1), Side::Right),
        _ => ((0, n - 1 - i), Side::Top),
    }
}

/// Label of the selected stub at `(v, side)`, if any.
fn stub_label(n: usize, v: (usize, usize), side: Side) -> Option<usize> {
    let k = match side {
        Side::Left if v.1 == 0 => v.0,
        Side::Bottom if v.0 == n - 1 => n + v.1,
        Side::Right if v.1 == n - 1 => 2 * n + (n - 1 - v.0),
        Side::Top if v.0 == 0 => 3 * n + (n - 1 - v.1),
        _ => return None,
    };
    (k % 2 == 0).then_some(k / 2 + 1)
}

fn h_edge(n: usize, r: usize, c: usize) -> usize {
    r * (n - 1) + c
}

fn v_edge(n: usize, r: usize, c: usize) -> usize {
    n * (n - 1) + r * n + c
}

/// Internal degree each vertex needs once its selected stubs are counted.
fn internal_need(n: usize) -> Vec<u8> {
    let mut need = vec![2u8; n * n];
    for k in (0..4 * n).step_by(2) {
        let ((r, c), _) = stub(n, k);
        need[r * n + c] -= 1;
    }
    need
}

impl FplConfig {
    pub fn edge_count(n: usize) -> usize {
        2 * n * (n - 1)
    }

    fn internal_neighbors(&self, r: usize, c: usize) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::with_capacity(2);
        if c > 0 && self.edges[h_edge(n, r, c - 1)] {
            out.push((r, c - 1));
        }
        if c + 1 < n && self.edges[h_edge(n, r, c)] {
            out.push((r, c + 1));
        }
        if r > 0 && self.edges[v_edge(n, r - 1, c)] {
            out.push((r - 1, c));
        }
        if r + 1 < n && self.edges[v_edge(n, r, c)] {
            out.push((r + 1, c));
        }
        out
    }

    fn stub_labels_at(&self, v: (usize, usize)) -> Vec<usize> {
        [Side::Left, Side::Bottom, Side::Right, Side::Top]
            .into_iter()
            .filter_map(|s| stub_label(self.n, v, s))
            .collect()
    }

    /// Every vertex has degree two counting selected stubs.
    pub fn is_valid(&self) -> bool {
        if self.n == 0 || self.edges.len() != Self::edge_count(self.n) {
            return false;
        }
        (0..self.n).all(|r| {
            (0..self.n).all(|c| self.internal_neighbors(r, c).len() + self.stub_labels_at((r, c)).len() == 2)
        })
    }

    /// Pairs of stub labels joined by a path.
    pub fn link_pattern(&self) -> ExtendedLinkPattern {
        let n = self.n;
        let mut arches = Vec::with_capacity(n);
        for k in (0..4 * n).step_by(2) {
            let (start_v, side) = stub(n, k);
            let (mut cur, mut from) = (start_v, side);
            let end = loop {
                match self.exit(cur, from) {
                    Err(label) => break label,
                    Ok((next, entered)) => {
                        cur = next;
                        from = entered;
                    }
                }
            };
            let start = k / 2 + 1;
            if start < end {
                arches.push((start, end));
            }
        }
        arches.sort_unstable();
        ExtendedLinkPattern { n: 2 * n, left: vec![], right: vec![], arches }
    }

    /// Leaves `v`, entered from side `from`, through its other edge: either
    /// to a neighbour (with the side it is entered from) or out of a stub.
    fn exit(&self, v: (usize, usize), from: Side) -> Result<((usize, usize), Side), usize> {
        let n = self.n;
        let (r, c) = v;
        for side in [Side::Left, Side::Bottom, Side::Right, Side::Top] {
            if side == from {
                continue;
            }
            if let Some(label) = stub_label(n, v, side) {
                return Err(label);
            }
            let step = match side {
                Side::Left if c > 0 && self.edges[h_edge(n, r, c - 1)] => ((r, c - 1), Side::Right),
                Side::Right if c + 1 < n && self.edges[h_edge(n, r, c)] => ((r, c + 1), Side::Left),
                Side::Top if r > 0 && self.edges[v_edge(n, r - 1, c)] => ((r - 1, c), Side::Bottom),
                Side::Bottom if r + 1 < n && self.edges[v_edge(n, r, c)] => ((r + 1, c), Side::Top),
                _ => continue,
            };
            return Ok(step);
        }
        unreachable!("vertex of degree one")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.n;
        let mut edges = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if c + 1 < n && self.edges[h_edge(n, r, c)] {
                    edges.push([format!("{r},{c}"), format!("{r},{}", c + 1)]);
                }
                if r + 1 < n && self.edges[v_edge(n, r, c)] {
                    edges.push([format!("{r},{c}"), format!("{},{c}", r + 1)]);
                }
            }
        }
        serde_json::json!({
            "n": n,
            "edges": edges,
            "link_pattern": self.link_pattern().arches,
        })
    }

    /// Character picture with `o` vertices and the selected stubs drawn.
    pub fn to_ascii(&self) -> String {
        let n = self.n;
        let w = 4 * n + 3;
        let mut rows = vec![vec![' '; w]; 2 * n + 1];
        let col = |c: usize| 4 * c + 3;
        let row = |r: usize| 2 * r + 1;
        for r in 0..n {
            for c in 0..n {
                rows[row(r)][col(c)] = 'o';
                if c + 1 < n && self.edges[h_edge(n, r, c)] {
                    for d in 1..4 {
                        rows[row(r)][col(c) + d] = '-';
                    }
                }
                if r + 1 < n && self.edges[v_edge(n, r, c)] {
                    rows[row(r) + 1][col(c)] = '|';
                }
                for s in self.stub_sides((r, c)) {
                    match s {
                        Side::Left => rows[row(r)][col(c) - 2] = '-',
                        Side::Right => rows[row(r)][col(c) + 2] = '-',
                        Side::Top => rows[row(r) - 1][col(c)] = '|',
                        Side::Bottom => rows[row(r) + 1][col(c)] = '|',
                    }
                }
            }
        }
        let mut out = String::new();
        for line in rows {
            out.push_str(line.into_iter().collect::<String>().trim_end());
            out.push('\n');
        }
        out
    }

    fn stub_sides(&self, v: (usize, usize)) -> Vec<Side> {
        [Side::Left, Side::Bottom, Side::Right, Side::Top]
            .into_iter()
            .filter(|&s| stub_label(self.n, v, s).is_some())
            .collect()
    }
}

struct Search {
    n: usize,
    need: Vec<u8>,
}

impl Search {
    /// Decides the right and down edges of vertex `idx` and recurses.
    fn extend(&self, edges: &mut Vec<bool>, idx: usize, stop: usize, visit: &mut impl FnMut(&[bool])) {
        if idx == stop {
            visit(edges);
            return;
        }
        let n = self.n;
        let (r, c) = (idx / n, idx % n);
        let mut have = 0u8;
        if c > 0 && edges[h_edge(n, r, c - 1)] {
            have += 1;
        }
        if r > 0 && edges[v_edge(n, r - 1, c)] {
            have += 1;
        }
        let Some(rest) = self.need[idx].checked_sub(have) else {
            return;
        };
        let right = (c + 1 < n).then(|| h_edge(n, r, c));
        let down = (r + 1 < n).then(|| v_edge(n, r, c));
        for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
            if (a && right.is_none()) || (b && down.is_none()) || (a as u8 + b as u8) != rest {
                continue;
            }
            if let Some(e) = right {
                edges[e] = a;
            }
            if let Some(e) = down {
                edges[e] = b;
            }
            self.extend(edges, idx + 1, stop, visit);
        }
        if let Some(e) = right {
            edges[e] = false;
        }
        if let Some(e) = down {
            edges[e] = false;
        }
    }

    /// Partial configurations with the first row decided.
    fn first_rows(&self) -> Vec<Vec<bool>> {
        let mut prefixes = Vec::new();
        self.extend(&mut vec![false; FplConfig::edge_count(self.n)], 0, self.n, &mut |e| {
            prefixes.push(e.to_vec())
        });
        prefixes
    }
}

fn search(n: usize) -> Result<Search, FplError> {
    if n == 0 {
        return Err(FplError::EmptyGrid);
    }
    Ok(Search { n, need: internal_need(n) })
}

/// All fully packed loop configurations of size `n`, in a fixed order.
pub fn enumerate_fpls(n: usize) -> Result<Vec<FplConfig>, FplError> {
    let s = search(n)?;
    let all: Vec<Vec<FplConfig>> = s
        .first_rows()
        .into_par_iter()
        .map(|mut edges| {
            let mut out = Vec::new();
            s.extend(&mut edges, n, n * n, &mut |e| out.push(FplConfig { n, edges: e.to_vec() }));
            out
        })
        .collect();
    Ok(all.into_iter().flatten().collect())
}

/// Number of configurations of size `n` satisfying `pred`, without storing
/// them.
pub fn count_fpls_where(n: usize, pred: impl Fn(&FplConfig) -> bool + Sync) -> Result<u64, FplError> {
    let s = search(n)?;
    Ok(s.first_rows()
        .into_par_iter()
        .map(|mut edges| {
            let mut count = 0u64;
            let mut f = FplConfig { n, edges: Vec::new() };
            s.extend(&mut edges, n, n * n, &mut |e| {
                f.edges.clear();
                f.edges.extend_from_slice(e);
                count += pred(&f) as u64;
            });
            count
        })
        .sum())
}

/// Number of configurations of size `n` whose link pattern is `pi`.
pub fn a_pi(n: usize, pi: &ExtendedLinkPattern) -> Result<u64, FplError> {
    check_pattern(pi)?;
    if pi.n != 2 * n {
        return Err(FplError::BadPattern(2 * n));
    }
    count_fpls_where(n, |f| f.link_pattern().arches == pi.arches)
}

/// Counts per link pattern, sorted by pattern, from a single enumeration.
pub fn pattern_counts(n: usize) -> Result<Vec<(ExtendedLinkPattern, u64)>, FplError> {
    type Counts = BTreeMap<Vec<(usize, usize)>, u64>;
    let s = search(n)?;
    let merged = s
        .first_rows()
        .into_par_iter()
        .map(|mut edges| {
            let mut counts = Counts::new();
            let mut f = FplConfig { n, edges: Vec::new() };
            s.extend(&mut edges, n, n * n, &mut |e| {
                f.edges.clear();
                f.edges.extend_from_slice(e);
                *counts.entry(f.link_pattern().arches).or_default() += 1;
            });
            counts
        })
        .reduce(Counts::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(merged
        .into_iter()
        .map(|(arches, c)| (ExtendedLinkPattern { n: 2 * n, left: vec![], right: vec![], arches }, c))
        .collect())
}

fn check_pattern(pi: &ExtendedLinkPattern) -> Result<(), FplError> {
    let ok = pi.left.is_empty() && pi.right.is_empty() && pi.n.is_multiple_of(2) && pi.validate().is_ok();
    if ok {
        Ok(())
    } else {
        Err(FplError::BadPattern(pi.n))
    }
}

/// Noncrossing perfect pairings of `1..=2n`, from the Dyck words.
pub fn link_patterns(n: usize) -> Vec<ExtendedLinkPattern> {
    dyck_words(n).iter().map(Word::link_pattern).collect()
}

/// `pi u m`: `m` nested arches around `pi` shifted by `m`.
pub fn nest(pi: &ExtendedLinkPattern, m: usize) -> ExtendedLinkPattern {
    let total = pi.n + 2 * m;
    let mut arches: Vec<(usize, usize)> = (1..=m).map(|i| (i, total + 1 - i)).collect();
    arches.extend(pi.arches.iter().map(|&(i, j)| (i + m, j + m)));
    arches.sort_unstable();
    ExtendedLinkPattern { n: total, left: vec![], right: vec![], arches }
}

/// Mirror image `i -> 2n + 1 - i`.
pub fn reflect(pi: &ExtendedLinkPattern) -> ExtendedLinkPattern {
    let t = pi.n + 1;
    let mut arches: Vec<(usize, usize)> = pi.arches.iter().map(|&(i, j)| (t - j, t - i)).collect();
    arches.sort_unstable();
    ExtendedLinkPattern { n: pi.n, left: vec![], right: vec![], arches }
}

/// Tableau count with an empty alphabet for `k <= 0`.
fn ssyt_or_empty(w: &Word, k: i64) -> BigUint {
    let shape = w.shape();
    if k <= 0 {
        BigUint::from(shape.is_empty() as u8)
    } else {
        ssyt_count(&shape, k as usize)
    }
}

/// Plain triangle count `t_{u,v}^w`; the empty triangle counts once.
fn plain_count(u: &Word, v: &Word, w: &Word) -> Result<BigUint, FplError> {
    if w.is_empty() {
        return Ok(BigUint::from(1u8));
    }
    let grid = Grid::new(w.len()).map_err(|e| FplError::Triangle(e.to_string()))?;
    let b = Boundary::new(u.clone(), v.clone(), w.clone());
    let fs = enumerate_plain(&grid, &b).map_err(|e| FplError::Triangle(e.to_string()))?;
    Ok(BigUint::from(fs.len()))
}

#[derive(Clone, Debug)]
pub struct FplIdentity {
    pub n: usize,
    pub m: usize,
    pub pattern: Vec<(usize, usize)>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl FplIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "m": self.m,
            "pattern": self.pattern,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
        })
    }
}

/// Right-hand side of the decomposition: a sum over pairs of Dyck words of
/// tableau counts times plain triangle counts.
pub fn decomposition_rhs(n: usize, pi: &ExtendedLinkPattern, m: usize) -> Result<BigInt, FplError> {
    check_pattern(pi)?;
    if pi.n != 2 * n {
        return Err(FplError::BadPattern(2 * n));
    }
    let w = pi.to_word().trimmed();
    let dyck = dyck_words(n);
    let mut total = BigUint::from(0u8);
    for sigma in &dyck {
        let left = ssyt_count(&sigma.shape(), n);
        if left == BigUint::from(0u8) {
            continue;
        }
        for tau in &dyck {
            let right = ssyt_or_empty(&tau.star(), m as i64 - 2 * n as i64 + 1);
            if right == BigUint::from(0u8) {
                continue;
            }
            let t = plain_count(&sigma.trimmed(), &tau.trimmed(), &w)?;
            total += &left * t * right;
        }
    }
    Ok(BigInt::from(total))
}

/// Both sides of the decomposition for `pi u m`; the left side by direct
/// enumeration on the grid of size `n + m`.
pub fn verify_fpl_identity(n: usize, pi: &ExtendedLinkPattern, m: usize) -> Result<FplIdentity, FplError> {
    let rhs = decomposition_rhs(n, pi, m)?;
    let lhs = BigInt::from(a_pi(n + m, &nest(pi, m))?);
    Ok(FplIdentity { n, m, pattern: pi.arches.clone(), lhs, rhs })
}

/// Both sides for every pattern of size `n`, sharing one enumeration of the
/// grid of size `n + m`.
pub fn verify_fpl_identities(n: usize, m: usize) -> Result<Vec<FplIdentity>, FplError> {
    let counts = pattern_counts(n + m)?;
    link_patterns(n)
        .iter()
        .map(|pi| {
            let nested = nest(pi, m);
            let lhs = counts.iter().find(|(p, _)| *p == nested).map_or(0, |(_, c)| *c);
            let rhs = decomposition_rhs(n, pi, m)?;
            Ok(FplIdentity { n, m, pattern: pi.arches.clone(), lhs: BigInt::from(lhs), rhs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_totals() {
        let totals: Vec<usize> = (1..=4).map(|n| enumerate_fpls(n).unwrap().len()).collect();
        assert_eq!(totals, vec![1, 2, 7, 42]);
    }

    #[test]
    fn every_configuration_is_valid_and_noncrossing() {
        for n in 1..=4 {
            for f in enumerate_fpls(n).unwrap() {
                assert!(f.is_valid());
                let p = f.link_pattern();
                assert_eq!(p.arches.len(), n);
                assert!(check_pattern(&p).is_ok(), "{p:?}");
            }
        }
    }

    #[test]
    fn nesting() {
        let pi = link_patterns(1).remove(0);
        assert_eq!(nest(&pi, 0), pi);
        assert_eq!(nest(&pi, 1).arches, vec![(1, 4), (2, 3)]);
        assert_eq!(nest(&pi, 3).n, 8);
    }

    #[test]
    fn size_two_patterns_split_evenly() {
        for pi in link_patterns(2) {
            assert_eq!(a_pi(2, &pi).unwrap(), 1);
        }
    }
}
