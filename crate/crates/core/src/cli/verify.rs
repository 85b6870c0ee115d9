//! Verification suites behind `tfpl verify`. Each suite checks a family of
//! exact identities on every instance up to a size bound and keeps the
//! first few counterexamples.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{lr_coefficient_by_expansion, Eisenstein};
use crate::fpl::verify_fpl_identities;
use crate::matchings::{
    count_matchings, count_matchings_det, enumerate_matchings, matching_to_paths, merge_matchings,
    paths_to_matching, split_matchings, MatchingGraph, Side,
};
use crate::puzzles::{
    count_by_move, count_puzzles, enumerate_puzzles, lr, move_left, move_right_outcome, path_of,
    predict_counts, puzzle_from_tangle, tangle_from_puzzle, Move, PuzzleKind,
};
use crate::tangles::{ExcessType, PathTangle};
use crate::tfpl_core::{
    all_triples, count_oriented, enumerate_oriented, enumerate_plain, plain_count_at_rho, triples_with_excess,
    weighted_count, Grid,
};
use crate::words::{words_with_content, Word};

pub const SUITES: [&str; 11] = [
    "necessary",
    "excess-formula",
    "excess0-lr",
    "excess1",
    "inversion-rho",
    "determinants",
    "identities",
    "moves",
    "fpl-identity",
    "bijections",
    "weights",
];

const KEEP: usize = 10;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_size: usize,
    pub checked: u64,
    pub failed: u64,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, max_size: usize) -> Self {
        SuiteReport { suite: suite.to_string(), max_size, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn absorb(&mut self, t: Tally) {
        self.checked += t.checked;
        self.failed += t.failed;
        for c in t.counterexamples {
            if self.counterexamples.len() < KEEP {
                self.counterexamples.push(c);
            }
        }
    }
}

/// Per-instance results, merged in input order.
#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    counterexamples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < KEEP {
                self.counterexamples.push(what());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        for c in other.counterexamples {
            if self.counterexamples.len() < KEEP {
                self.counterexamples.push(c);
            }
        }
        self
    }
}

fn over<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().fold(Tally::default(), Tally::merge)
}

fn sizes(max: usize) -> std::ops::RangeInclusive<usize> {
    1..=max
}

pub fn run_suite(name: &str, max: usize) -> Option<SuiteReport> {
    let mut r = SuiteReport::new(name, max);
    match name {
        "necessary" => necessary(max, &mut r),
        "excess-formula" => excess_formula(max, &mut r),
        "excess0-lr" => excess0_lr(max, &mut r),
        "excess1" => excess1(max, &mut r),
        "inversion-rho" => inversion_rho(max, &mut r),
        "determinants" => determinants(max, &mut r),
        "identities" => identities(max, &mut r),
        "moves" => moves(max, &mut r),
        "fpl-identity" => fpl_identity(max, &mut r),
        "bijections" => bijections(max, &mut r),
        "weights" => weights(max, &mut r),
        _ => return None,
    }
    Some(r)
}

fn necessary(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        r.absorb(over(&all_triples(n), |b| {
            let mut t = Tally::default();
            let c = count_oriented(&grid, b).unwrap();
            t.check(c == 0 || b.satisfies_necessary_conditions(), || format!("{b}: {c} configurations"));
            t
        }));
    }
}

fn excess_formula(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        r.absorb(over(&all_triples(n), |b| {
            let mut t = Tally::default();
            for f in enumerate_oriented(&grid, b).unwrap() {
                let rep = PathTangle::from_oriented(&grid, &f).excess_checks();
                t.check(rep.all_zero() && rep.excess == b.excess(), || format!("{b}: {rep:?}"));
            }
            t
        }));
    }
}

fn excess0_lr(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        r.absorb(over(&triples_with_excess(n, 0), |b| {
            let mut t = Tally::default();
            let oriented = enumerate_oriented(&grid, b).unwrap();
            let brute = BigInt::from(oriented.len());
            let kt = BigInt::from(count_puzzles(b, PuzzleKind::KT));
            let tab = lr(&b.u, &b.v, &b.w);
            let mono = lr_coefficient_by_expansion(&b.u.shape(), &b.v.shape(), &b.w.shape());
            t.check(brute == kt && kt == tab && tab == mono, || {
                format!("{b}: brute {brute}, puzzles {kt}, tableau {tab}, expansion {mono}")
            });
            let plain = enumerate_plain(&grid, b).unwrap().len();
            t.check(BigInt::from(plain) == brute, || format!("{b}: plain {plain} vs oriented {brute}"));
            let clean = oriented.iter().all(|f| f.rl(&grid) == 0 && f.closed_paths(&grid) == (0, 0));
            t.check(clean, || format!("{b}: configuration with RL > 0 or a closed path"));
            t
        }));
    }
}

fn excess1(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        r.absorb(over(&triples_with_excess(n, 1), |b| {
            let mut t = Tally::default();
            let p = predict_counts(b).unwrap();
            let count = |k| BigInt::from(count_puzzles(b, k));
            let (bd, rd) = (count(PuzzleKind::BD), count(PuzzleKind::RD));
            for (name, got, want) in [
                ("BD", bd.clone(), &p.bd),
                ("RD", rd.clone(), &p.rd),
                ("BD+RD", &bd + &rd, &p.bd_or_rd),
                ("DHD", count(PuzzleKind::DHD), &p.dhd),
                ("DHU", count(PuzzleKind::DHU), &p.dhu),
            ] {
                t.check(&got == want, || format!("{b}: {name} puzzles {got}, predicted {want}"));
            }
            let oriented = enumerate_oriented(&grid, b).unwrap();
            let mut by_type = [0usize; 4];
            for f in &oriented {
                let ty = PathTangle::from_oriented(&grid, f).excess1_type();
                if let Some(ty) = ty {
                    by_type[ExcessType::ALL.iter().position(|&x| x == ty).unwrap()] += 1;
                }
            }
            let puzzles_by_type = ExcessType::ALL.map(|ty| count_puzzles(b, PuzzleKind::from_type(ty)));
            t.check(by_type == puzzles_by_type, || {
                format!("{b}: tangle types {by_type:?} vs puzzle types {puzzles_by_type:?}")
            });
            let total = BigInt::from(oriented.len());
            t.check(total == p.oriented, || format!("{b}: oriented {total}, predicted {}", p.oriented));
            let weighted = weighted_count(&grid, b, false).unwrap();
            t.check(weighted == p.weighted, || format!("{b}: weighted {weighted}, predicted {}", p.weighted));
            let plain = BigInt::from(enumerate_plain(&grid, b).unwrap().len());
            t.check(plain == p.plain, || format!("{b}: plain {plain}, closed form as stated {}", p.plain));
            t
        }));
    }
    r.notes.push(
        "the plain-count closed form is checked as stated, with the |v|_1 + L(v,v+) + 1 coefficient".into(),
    );
}

fn inversion_rho(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        r.absorb(over(&all_triples(n), |b| {
            let mut t = Tally::default();
            let plain = BigInt::from(enumerate_plain(&grid, b).unwrap().len());
            let at_rho = plain_count_at_rho(&grid, b).unwrap();
            t.check(at_rho == Eisenstein::from(plain.clone()), || format!("{b}: t = {plain}, inversion {at_rho}"));
            let bar = weighted_count(&grid, b, true).unwrap().eval_at_rho();
            t.check(bar == Eisenstein::from(plain.clone()), || format!("{b}: t = {plain}, RL=0 sum at rho {bar}"));
            t
        }));
    }
}

/// Pairs (word, w) with equal content, for one side.
fn word_pairs(n: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for z in 0..=n {
        let ws = words_with_content(z, n - z);
        for a in &ws {
            for b in &ws {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn determinants(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        r.absorb(over(&word_pairs(n), |(a, w)| {
            let mut t = Tally::default();
            for side in [Side::Odd, Side::Even] {
                let brute = BigInt::from(count_matchings(&grid, &MatchingGraph::new(&grid, side, a, w)));
                let det = count_matchings_det(side, a, w).unwrap();
                t.check(brute == det, || format!("{side:?} ({a}, {w}): exhaustive {brute}, determinant {det}"));
            }
            t
        }));
    }
}

fn identities(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        let nn = n as i64;
        r.absorb(over(&word_pairs(n), |(a, w)| {
            let mut t = Tally::default();
            let (n0, n1) = (w.zeros() as i64, w.ones() as i64);
            let dw = w.inversions() as i64;
            let da = a.inversions() as i64;
            for side in [Side::Odd, Side::Even] {
                for m in enumerate_matchings(&grid, &MatchingGraph::new(&grid, side, a, w)) {
                    let c = m.direction_census(&grid);
                    let (up, down, left, right) = (c.up as i64, c.down as i64, c.left as i64, c.right as i64);
                    let ok = match side {
                        Side::Odd => {
                            up + down + right + left == nn * (nn - 1) / 2 + n1
                                && left + down == dw - da
                                && up + left == n0 * (n0 - 1) / 2 + dw
                        }
                        Side::Even => {
                            up + down + right + left == nn * (nn - 1) / 2 + n0
                                && left + up == dw - da
                                && down + left == n1 * (n1 - 1) / 2 + dw
                        }
                    };
                    t.check(ok, || format!("{side:?} ({a}, {w}): census {c:?}"));
                }
            }
            t
        }));
    }
}

fn moves(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        r.absorb(over(&triples_with_excess(n, 1), |b| {
            let mut t = Tally::default();
            let mut br = 0usize;
            let mut rb = 0usize;
            for kind in [PuzzleKind::BD, PuzzleKind::RD] {
                for pz in enumerate_puzzles(b, kind) {
                    let x = pz.excess.unwrap();
                    if !x.on_right_boundary(pz.n) {
                        match move_right_outcome(&pz) {
                            Ok(o) => {
                                br += (o.mv == Move::BR) as usize;
                                rb += (o.mv == Move::RB) as usize;
                                let back = move_left(&o.puzzle).map(|(q, _)| q);
                                t.check(back.as_ref() == Ok(&pz), || format!("{b}: move {:?} not inverted", o.mv));
                            }
                            Err(e) => t.check(false, || format!("{b}: {kind:?} at {x:?}: {e}")),
                        }
                    }
                    match path_of(&pz) {
                        Ok(path) => {
                            let res = path.identity_residuals(b);
                            t.check(res == [0; 6], || format!("{b}: path residuals {res:?}"));
                        }
                        Err(e) => t.check(false, || format!("{b}: path failed: {e}")),
                    }
                }
            }
            let dhd = count_puzzles(b, PuzzleKind::DHD);
            let dhu = count_puzzles(b, PuzzleKind::DHU);
            t.check(br == dhd, || format!("{b}: BR applicable {br}, DHD puzzles {dhd}"));
            t.check(rb == dhu, || format!("{b}: RB applicable {rb}, DHU puzzles {dhu}"));
            let by_move = count_by_move(b).unwrap();
            let p = predict_counts(b).unwrap();
            let got = |ms: &[Move]| BigInt::from(ms.iter().map(|m| by_move[m.index()]).sum::<usize>());
            for (name, ms, want) in [
                ("B", &[Move::B][..], &p.bd_with_b),
                ("R", &[Move::R][..], &p.rd_with_r),
                ("BB+BR+R", &[Move::BB, Move::BR, Move::R][..], &p.bb_br_r),
                ("RB+RR", &[Move::RB, Move::RR][..], &p.rb_rr),
            ] {
                let g = got(ms);
                t.check(&g == want, || format!("{b}: puzzles moving by {name}: {g}, predicted {want}"));
            }
            t
        }));
    }
}

fn fpl_identity(max: usize, r: &mut SuiteReport) {
    for n in 1..max {
        for m in 0..=max - n {
            if m + 1 < 2 * n {
                r.notes.push(format!("(n, m) = ({n}, {m}) skipped: the decomposition needs m >= 2n - 1"));
                continue;
            }
            for id in verify_fpl_identities(n, m).unwrap() {
                let mut t = Tally::default();
                t.check(id.holds(), || {
                    format!("n={n} m={m} pattern {:?}: A = {}, decomposition {}", id.pattern, id.lhs, id.rhs)
                });
                r.absorb(t);
            }
        }
    }
}

fn bijections(max: usize, r: &mut SuiteReport) {
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        r.absorb(over(&all_triples(n), |b| {
            let mut t = Tally::default();
            let odd_g = MatchingGraph::new(&grid, Side::Odd, &b.u, &b.w);
            let even_g = MatchingGraph::new(&grid, Side::Even, &b.v, &b.w);
            for f in enumerate_oriented(&grid, b).unwrap() {
                let (mo, me) = split_matchings(&grid, &f);
                t.check(merge_matchings(&grid, &mo, &me).as_ref() == Ok(&f), || format!("{b}: matching split"));
                let po = matching_to_paths(&grid, &mo, &b.w);
                let pe = matching_to_paths(&grid, &me, &b.w);
                let back = (paths_to_matching(&grid, &odd_g, &po), paths_to_matching(&grid, &even_g, &pe));
                t.check(back.0.as_ref() == Ok(&mo) && back.1.as_ref() == Ok(&me), || format!("{b}: path encoding"));
                let tangle = PathTangle::from_oriented(&grid, &f);
                t.check(tangle.to_oriented(&grid).as_ref() == Ok(&f), || format!("{b}: tangle"));
                if b.excess() <= 1 {
                    let ok = puzzle_from_tangle(&tangle).and_then(|pz| tangle_from_puzzle(&pz)).as_ref() == Ok(&tangle);
                    t.check(ok, || format!("{b}: puzzle round trip"));
                }
            }
            for p in enumerate_plain(&grid, b).unwrap() {
                let o = p.canonical_orient(&grid);
                t.check(o.underlying(&grid) == p && o.validate(&grid).is_ok(), || format!("{b}: canonical orientation"));
            }
            t
        }));
    }
}

fn weights(max: usize, r: &mut SuiteReport) {
    let q = |a: i64| BigRational::from_integer(BigInt::from(a));
    let params = [(q(0), q(0)), (q(1), q(0)), (q(0), q(1)), (q(1), q(1))];
    for n in sizes(max) {
        let grid = Grid::new(n).unwrap();
        r.absorb(over(&all_triples(n), |b| {
            let mut t = Tally::default();
            for f in enumerate_oriented(&grid, b).unwrap() {
                let e = f.weight_exponent(&grid);
                for (cw, ccw) in [("dl", "ld"), ("dl", "ul"), ("lu", "ld"), ("lu", "ul")] {
                    let got = f.weight_exponent_with(&grid, cw, ccw);
                    t.check(got == e, || format!("{b}: turns ({cw},{ccw}) give q^{got}, expected q^{e}"));
                }
                let tangle = PathTangle::from_oriented(&grid, &f);
                for (a, c) in &params {
                    let got = tangle.brweight_exponent(a, c);
                    t.check(got == q(e), || format!("{b}: alpha={a} beta={c} gives q^{got}, expected q^{e}"));
                }
                if b.excess() == 1 {
                    let want = match tangle.excess1_type() {
                        Some(ExcessType::BD) | Some(ExcessType::RD) => Some(0),
                        Some(ExcessType::DHD) => Some(1),
                        Some(ExcessType::DHU) => Some(-1),
                        None => None,
                    };
                    t.check(want == Some(e), || format!("{b}: excess-1 weight q^{e}, type {want:?}"));
                }
            }
            t
        }));
    }
}
