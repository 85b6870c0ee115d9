//! Acceptance gate. Prints one PASS/FAIL line per criterion.
//!
//! Exact equalities throughout; the only tolerances are the time budgets
//! below. Criteria whose statement is contradicted by exhaustive counts are
//! listed in `KNOWN_FAILURES`: they still print FAIL, and the process exits
//! nonzero if the set of failing criteria differs from that list. Set
//! `TFPL_ACCEPTANCE_STRICT=1` to exit nonzero on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use tfpl::algebra::{lr_coefficient, lr_coefficient_by_expansion, Eisenstein};
use tfpl::fpl::{enumerate_fpls, link_patterns, verify_fpl_identities};
use tfpl::matchings::{
    count_matchings, count_matchings_det, enumerate_matchings, matching_to_paths, merge_matchings, paths_to_matching,
    split_matchings, MatchingGraph, Side,
};
use tfpl::puzzles::{
    calibrate_boundary_convention, count_by_move, count_puzzles, derive_piece_catalog, enumerate_puzzles, move_left,
    move_right_outcome, path_of, predict_counts, puzzle_from_tangle, tangle_from_puzzle, Move, Orientation,
    PuzzleKind, BH, BOUNDARY_CONVENTION, BU, RH, RU,
};
use tfpl::tangles::{ExcessType, PathTangle};
use tfpl::tfpl_core::{
    all_triples, count_oriented, enumerate_oriented, enumerate_plain, plain_count_at_rho, weighted_count, Boundary,
    Grid,
};
use tfpl::words::{words_with_content, Shape, Word};

/// Criteria expected to fail, with the reason printed next to FAIL.
const KNOWN_FAILURES: [(u32, &str); 3] = [
    (4, "plain-count closed form as stated is one too large on the |v|_1 + L(v,v+) coefficient"),
    (10, "mixed turn choices (dl,ul), (lu,ld) and alpha != beta change the exponent by +-1"),
    (11, "(n,m) = (3,3) differs; the decomposition holds only for m >= 2n - 1"),
];

const BUDGETS: [(u32, u64); 12] =
    [(1, 120), (2, 300), (3, 900), (4, 1800), (5, 600), (6, 600), (7, 300), (8, 300), (9, 900), (10, 300), (11, 600), (12, 60)];

const EXAMPLES: usize = 3;

#[derive(Default)]
struct Check {
    checked: u64,
    failed: u64,
    examples: Vec<String>,
}

impl Check {
    fn that(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < EXAMPLES {
                self.examples.push(what());
            }
        }
    }

    fn merge(mut self, o: Check) -> Check {
        self.checked += o.checked;
        self.failed += o.failed;
        for e in o.examples {
            if self.examples.len() < EXAMPLES {
                self.examples.push(e);
            }
        }
        self
    }
}

fn par<T: Sync>(items: &[T], f: impl Fn(&T) -> Check + Sync + Send) -> Check {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().fold(Check::default(), Check::merge)
}

struct Outcome {
    id: u32,
    title: &'static str,
    check: Check,
    notes: Vec<String>,
    elapsed: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        let budget = BUDGETS.iter().find(|b| b.0 == self.id).unwrap().1;
        self.check.failed == 0 && self.check.checked > 0 && self.elapsed.as_secs() < budget
    }
}

fn run(id: u32, title: &'static str, f: impl FnOnce(&mut Check, &mut Vec<String>)) -> Outcome {
    let start = Instant::now();
    let mut check = Check::default();
    let mut notes = Vec::new();
    f(&mut check, &mut notes);
    Outcome { id, title, check, notes, elapsed: start.elapsed() }
}

// ---------------------------------------------------------------------------
// Oracles

/// Pairs i < j with a 1 at i and a 0 at j.
fn inversions(w: &Word) -> i64 {
    let l = w.letters();
    let mut n = 0;
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            n += (l[i] == 1 && l[j] == 0) as i64;
        }
    }
    n
}

/// Every prefix of `a` has no more ones than the same prefix of `b`.
fn below(a: &Word, b: &Word) -> bool {
    (1..=a.len()).all(|k| {
        let ones = |w: &Word| w.letters()[..k].iter().filter(|&&x| x == 1).count();
        ones(a) <= ones(b)
    })
}

/// Semistandard tableaux of shape `nu`, entries in 1..=k, row by row.
fn tableaux(nu: &[usize], k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rows(nu: &[usize], k: usize, r: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if r == nu.len() {
            out.push(acc.clone());
            return;
        }
        let mut row = vec![0; nu[r]];
        fill(nu, k, r, 0, &mut row, acc, out);
    }
    fn fill(
        nu: &[usize],
        k: usize,
        r: usize,
        c: usize,
        row: &mut Vec<usize>,
        acc: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if c == row.len() {
            acc.push(row.clone());
            rows(nu, k, r + 1, acc, out);
            acc.pop();
            return;
        }
        let lo = (if c > 0 { row[c - 1] } else { 1 }).max(if r > 0 { acc[r - 1][c] + 1 } else { 1 });
        for x in lo..=k {
            row[c] = x;
            fill(nu, k, r, c + 1, row, acc, out);
        }
    }
    let mut out = Vec::new();
    rows(nu, k, 0, &mut Vec::new(), &mut out);
    out
}

/// LR coefficient c^lambda_{mu,nu}: tableaux of shape nu whose reverse row
/// reading word, added box by box to mu, keeps a partition and ends at lambda.
fn lr_oracle(mu: &Shape, nu: &Shape, lambda: &Shape) -> BigInt {
    let k = lambda.len();
    if mu.size() + nu.size() != lambda.size() || mu.len() > k || nu.len() > k {
        return BigInt::from(0);
    }
    let target: Vec<usize> = (0..k).map(|i| lambda.part(i)).collect();
    let mut count = 0u64;
    for t in tableaux(nu.parts(), k) {
        let mut shape: Vec<usize> = (0..k).map(|i| mu.part(i)).collect();
        let ok = t.iter().flat_map(|row| row.iter().rev()).all(|&x| {
            shape[x - 1] += 1;
            x == 1 || shape[x - 1] <= shape[x - 2]
        });
        count += (ok && shape == target) as u64;
    }
    BigInt::from(count)
}

/// Alternating sign matrices of order n, by column partial sums row by row.
fn asm_count(n: usize) -> u64 {
    let mut states: BTreeMap<u32, u64> = BTreeMap::from([(0, 1)]);
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (&s, &c) in &states {
            for t in 0..1u32 << n {
                let mut last = 0i32;
                let mut ok = true;
                for j in 0..n {
                    let d = ((t >> j) & 1) as i32 - ((s >> j) & 1) as i32;
                    if d != 0 {
                        ok &= d != last;
                        last = d;
                    }
                }
                let sum = t.count_ones() as i32 - s.count_ones() as i32;
                if ok && last == 1 && sum == 1 {
                    *next.entry(t).or_insert(0) += c;
                }
            }
        }
        states = next;
    }
    states.get(&((1u32 << n) - 1)).copied().unwrap_or(0)
}

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

fn excess(b: &Boundary) -> i64 {
    inversions(&b.w) - inversions(&b.u) - inversions(&b.v)
}

fn triples(max: usize, exc: Option<i64>) -> Vec<(Grid, Vec<Boundary>)> {
    (1..=max)
        .map(|n| {
            let ts = all_triples(n).into_iter().filter(|b| exc.is_none_or(|e| excess(b) == e)).collect();
            (Grid::new(n).unwrap(), ts)
        })
        .collect()
}

fn word(s: &str) -> Word {
    Word::parse(s).unwrap()
}

// ---------------------------------------------------------------------------
// Criteria

fn c1(ck: &mut Check, _: &mut Vec<String>) {
    for (grid, ts) in triples(5, None) {
        *ck = std::mem::take(ck).merge(par(&ts, |b| {
            let mut c = Check::default();
            let t = count_oriented(&grid, b).unwrap();
            let conditions = below(&b.u, &b.w) && below(&b.v, &b.w) && excess(b) >= 0;
            c.that(t == 0 || conditions, || format!("{b}: {t} configurations"));
            c
        }));
    }
}

fn c2(ck: &mut Check, _: &mut Vec<String>) {
    for (grid, ts) in triples(5, None) {
        *ck = std::mem::take(ck).merge(par(&ts, |b| {
            let mut c = Check::default();
            for f in enumerate_oriented(&grid, b).unwrap() {
                let t = PathTangle::from_oriented(&grid, &f);
                let rep = t.excess_checks();
                c.that(rep.all_zero() && rep.excess == excess(b), || format!("{b}: {rep:?}"));
                for pair in t.intersecting_pairs() {
                    let e = t.extremities(pair);
                    c.that(e.red_split - e.red_merge == 1 && e.blue_merge - e.blue_split == 1, || {
                        format!("{b}: pair {pair:?} extremities {e:?}")
                    });
                }
            }
            c
        }));
    }
}

fn c3(ck: &mut Check, _: &mut Vec<String>) {
    for (grid, ts) in triples(6, Some(0)) {
        *ck = std::mem::take(ck).merge(par(&ts, |b| {
            let mut c = Check::default();
            let oriented = enumerate_oriented(&grid, b).unwrap();
            let brute = BigInt::from(oriented.len());
            let kt = BigInt::from(count_puzzles(b, PuzzleKind::KT));
            let (mu, nu, la) = (b.u.shape(), b.v.shape(), b.w.shape());
            let tab = BigInt::from(lr_coefficient(&mu, &nu, &la));
            let mono = lr_coefficient_by_expansion(&mu, &nu, &la);
            let oracle = lr_oracle(&mu, &nu, &la);
            c.that(brute == kt && kt == tab && tab == mono && mono == oracle, || {
                format!("{b}: brute {brute}, puzzles {kt}, tableau {tab}, expansion {mono}, oracle {oracle}")
            });
            let plain = BigInt::from(enumerate_plain(&grid, b).unwrap().len());
            c.that(plain == brute, || format!("{b}: t = {plain}, oriented {brute}"));
            let clean = oriented.iter().all(|f| f.rl(&grid) == 0 && f.closed_paths(&grid) == (0, 0));
            c.that(clean, || format!("{b}: RL > 0 or closed path"));
            c
        }));
    }
}

fn c4(ck: &mut Check, notes: &mut Vec<String>) {
    let mut corrected = Check::default();
    for (grid, ts) in triples(6, Some(1)) {
        let ts: Vec<Boundary> = ts.into_iter().filter(|b| below(&b.u, &b.w) && below(&b.v, &b.w)).collect();
        let (a, b) = ts
            .par_iter()
            .map(|b| {
                let mut c = Check::default();
                let mut fixed = Check::default();
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
                    c.that(&got == want, || format!("{b}: {name} puzzles {got}, formula {want}"));
                }
                let oriented = enumerate_oriented(&grid, b).unwrap();
                let mut types = [0usize; 4];
                for f in &oriented {
                    if let Some(t) = PathTangle::from_oriented(&grid, f).excess1_type() {
                        types[ExcessType::ALL.iter().position(|&x| x == t).unwrap()] += 1;
                    }
                }
                let pz = ExcessType::ALL.map(|t| count_puzzles(b, PuzzleKind::from_type(t)));
                c.that(types == pz, || format!("{b}: tangle types {types:?}, puzzle types {pz:?}"));
                let total = BigInt::from(oriented.len());
                c.that(total == p.oriented, || format!("{b}: oriented {total}, formula {}", p.oriented));
                let weighted = weighted_count(&grid, b, false).unwrap();
                c.that(weighted == p.weighted, || format!("{b}: weighted {weighted}, formula {}", p.weighted));
                let plain = BigInt::from(enumerate_plain(&grid, b).unwrap().len());
                c.that(plain == p.plain, || format!("{b}: t = {plain}, formula {}", p.plain));
                fixed.that(plain == p.plain_corrected, || format!("{b}: t = {plain}, corrected {}", p.plain_corrected));
                (c, fixed)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold((Check::default(), Check::default()), |(x, y), (c, f)| (x.merge(c), y.merge(f)));
        *ck = std::mem::take(ck).merge(a);
        corrected = corrected.merge(b);
    }
    notes.push(format!(
        "plain count with coefficient |v|_1 + L(v,v+): {} of {} agree",
        corrected.checked - corrected.failed,
        corrected.checked
    ));
}

fn c5(ck: &mut Check, _: &mut Vec<String>) {
    for (grid, ts) in triples(5, None) {
        *ck = std::mem::take(ck).merge(par(&ts, |b| {
            let mut c = Check::default();
            let t = Eisenstein::from(BigInt::from(enumerate_plain(&grid, b).unwrap().len()));
            let inv = plain_count_at_rho(&grid, b).unwrap();
            c.that(inv == t, || format!("{b}: t = {t}, inversion at rho {inv}"));
            let bar = weighted_count(&grid, b, true).unwrap().eval_at_rho();
            c.that(bar == t, || format!("{b}: t = {t}, RL=0 sum at rho {bar}"));
            c
        }));
    }
}

fn c6(ck: &mut Check, notes: &mut Vec<String>) {
    let side_check = |grid: &Grid, side: Side, a: &Word, w: &Word| {
        let brute = BigInt::from(count_matchings(grid, &MatchingGraph::new(grid, side, a, w)));
        let det = count_matchings_det(side, a, w).unwrap();
        (brute, det)
    };
    for n in 1..=6 {
        let grid = Grid::new(n).unwrap();
        *ck = std::mem::take(ck).merge(par(&word_pairs(n), |(a, w)| {
            let mut c = Check::default();
            for side in [Side::Odd, Side::Even] {
                let (brute, det) = side_check(&grid, side, a, w);
                c.that(brute == det, || format!("{side:?} ({a},{w}): exhaustive {brute}, determinant {det}"));
            }
            c
        }));
    }
    let grid = Grid::new(8).unwrap();
    let w = word("01100010");
    for (side, a) in [(Side::Odd, word("00101001")), (Side::Even, word("00000111"))] {
        let (brute, det) = side_check(&grid, side, &a, &w);
        ck.that(brute == det && brute > BigInt::from(0), || format!("N=8 {side:?}: exhaustive {brute}, determinant {det}"));
        notes.push(format!("N=8 {side:?} ({a},{w}): {brute} matchings"));
    }
}

fn c7(ck: &mut Check, _: &mut Vec<String>) {
    for n in 1..=5 {
        let grid = Grid::new(n).unwrap();
        let nn = n as i64;
        *ck = std::mem::take(ck).merge(par(&word_pairs(n), |(a, w)| {
            let mut c = Check::default();
            let (n0, n1) = (w.zeros() as i64, w.ones() as i64);
            let (dw, da) = (inversions(w), inversions(a));
            for side in [Side::Odd, Side::Even] {
                for m in enumerate_matchings(&grid, &MatchingGraph::new(&grid, side, a, w)) {
                    let d = m.direction_census(&grid);
                    let (up, down, left, right) = (d.up as i64, d.down as i64, d.left as i64, d.right as i64);
                    let ok = match side {
                        Side::Odd => {
                            up + down + left + right == nn * (nn - 1) / 2 + n1
                                && left + down == dw - da
                                && up + left == n0 * (n0 - 1) / 2 + dw
                        }
                        Side::Even => {
                            up + down + left + right == nn * (nn - 1) / 2 + n0
                                && left + up == dw - da
                                && down + left == n1 * (n1 - 1) / 2 + dw
                        }
                    };
                    c.that(ok, || format!("{side:?} ({a},{w}): {d:?}"));
                }
            }
            c
        }));
    }
}

fn c8(ck: &mut Check, _: &mut Vec<String>) {
    for (grid, ts) in triples(5, None) {
        *ck = std::mem::take(ck).merge(par(&ts, |b| {
            let mut c = Check::default();
            let og = MatchingGraph::new(&grid, Side::Odd, &b.u, &b.w);
            let eg = MatchingGraph::new(&grid, Side::Even, &b.v, &b.w);
            for f in enumerate_oriented(&grid, b).unwrap() {
                let (mo, me) = split_matchings(&grid, &f);
                c.that(merge_matchings(&grid, &mo, &me).as_ref() == Ok(&f), || format!("{b}: matchings"));
                let po = matching_to_paths(&grid, &mo, &b.w);
                let pe = matching_to_paths(&grid, &me, &b.w);
                let back_o = paths_to_matching(&grid, &og, &po);
                let back_e = paths_to_matching(&grid, &eg, &pe);
                c.that(back_o.as_ref() == Ok(&mo) && back_e.as_ref() == Ok(&me), || format!("{b}: paths"));
                let t = PathTangle::from_oriented(&grid, &f);
                c.that(t.to_oriented(&grid).as_ref() == Ok(&f), || format!("{b}: tangle"));
                if excess(b) <= 1 {
                    let rt = puzzle_from_tangle(&t).and_then(|p| tangle_from_puzzle(&p));
                    c.that(rt.as_ref() == Ok(&t), || format!("{b}: puzzle"));
                }
            }
            c
        }));
    }
}

fn c9(ck: &mut Check, _: &mut Vec<String>) {
    for n in 1..=6 {
        let ts: Vec<Boundary> = all_triples(n).into_iter().filter(|b| excess(b) == 1).collect();
        *ck = std::mem::take(ck).merge(par(&ts, |b| {
            let mut c = Check::default();
            let (mut br, mut rb) = (0usize, 0usize);
            for kind in [PuzzleKind::BD, PuzzleKind::RD] {
                for pz in enumerate_puzzles(b, kind) {
                    let x = pz.excess.unwrap();
                    if !x.on_right_boundary(n) {
                        match move_right_outcome(&pz) {
                            Ok(o) => {
                                br += (o.mv == Move::BR) as usize;
                                rb += (o.mv == Move::RB) as usize;
                                if n <= 5 {
                                    let back = move_left(&o.puzzle).map(|(q, _)| q);
                                    c.that(back.as_ref() == Ok(&pz), || format!("{b}: {:?} not inverted", o.mv));
                                }
                            }
                            Err(e) => c.that(false, || format!("{b}: {x:?}: {e}")),
                        }
                    }
                    if n <= 5 {
                        let res = path_of(&pz).map(|p| p.identity_residuals(b));
                        c.that(res == Ok([0; 6]), || format!("{b}: path residuals {res:?}"));
                    }
                }
            }
            let (dhd, dhu) = (count_puzzles(b, PuzzleKind::DHD), count_puzzles(b, PuzzleKind::DHU));
            c.that(br == dhd, || format!("{b}: BR applicable {br}, DHD {dhd}"));
            c.that(rb == dhu, || format!("{b}: RB applicable {rb}, DHU {dhu}"));
            if n <= 5 {
                let moves = count_by_move(b).unwrap();
                let p = predict_counts(b).unwrap();
                let sum = |ms: &[Move]| BigInt::from(ms.iter().map(|m| moves[m.index()]).sum::<usize>());
                c.that(sum(&[Move::B]) == p.bd_with_b, || format!("{b}: B count"));
                c.that(sum(&[Move::R]) == p.rd_with_r, || format!("{b}: R count"));
            }
            c
        }));
    }
}

fn c10(ck: &mut Check, notes: &mut Vec<String>) {
    let q = |a: i64| BigRational::from_integer(BigInt::from(a));
    let params = [(q(0), q(0)), (q(1), q(0)), (q(0), q(1)), (q(1), q(1))];
    let choices = [("dl", "ld"), ("dl", "ul"), ("lu", "ld"), ("lu", "ul")];
    let mut paired = (0u64, 0u64);
    for (grid, ts) in triples(5, None) {
        let results: Vec<(Check, u64, u64)> = ts
            .par_iter()
            .map(|b| {
                let mut c = Check::default();
                let (mut pc, mut pf) = (0, 0);
                for f in enumerate_oriented(&grid, b).unwrap() {
                    let e = f.weight_exponent(&grid);
                    for (cw, ccw) in choices {
                        let got = f.weight_exponent_with(&grid, cw, ccw);
                        c.that(got == e, || format!("{b}: ({cw},{ccw}) gives {got}, expected {e}"));
                        if cw.chars().rev().collect::<String>() == ccw {
                            pc += 1;
                            pf += (got != e) as u64;
                        }
                    }
                    let t = PathTangle::from_oriented(&grid, &f);
                    for (a, be) in &params {
                        let got = t.brweight_exponent(a, be);
                        c.that(got == q(e), || format!("{b}: alpha={a} beta={be} gives {got}, expected {e}"));
                    }
                    if excess(b) == 1 {
                        let want = match t.excess1_type() {
                            Some(ExcessType::BD) | Some(ExcessType::RD) => Some(0),
                            Some(ExcessType::DHD) => Some(1),
                            Some(ExcessType::DHU) => Some(-1),
                            None => None,
                        };
                        c.that(want == Some(e), || format!("{b}: exc-1 exponent {e}, type gives {want:?}"));
                    }
                }
                (c, pc, pf)
            })
            .collect();
        for (c, pc, pf) in results {
            *ck = std::mem::take(ck).merge(c);
            paired.0 += pc;
            paired.1 += pf;
        }
    }
    notes.push(format!("paired turn choices (dl,ld), (lu,ul): {} of {} agree", paired.0 - paired.1, paired.0));
}

fn c11(ck: &mut Check, notes: &mut Vec<String>) {
    for n in 1..=6 {
        let (fpls, asm) = (enumerate_fpls(n).unwrap().len() as u64, asm_count(n));
        ck.that(fpls == asm, || format!("A_{n}: {fpls} loop configurations, {asm} sign matrices"));
    }
    for (n, m, pinned) in [(2, 3, true), (2, 4, true), (3, 3, true), (2, 2, false)] {
        let ids = verify_fpl_identities(n, m).unwrap();
        let bad: Vec<String> = ids.iter().filter(|i| !i.holds()).map(|i| format!("{}/{}", i.lhs, i.rhs)).collect();
        if pinned {
            ck.that(ids.len() == link_patterns(n).len(), || format!("(n,m)=({n},{m}): {} patterns", ids.len()));
            for id in &ids {
                ck.that(id.holds(), || format!("(n,m)=({n},{m}) {:?}: A = {}, decomposition {}", id.pattern, id.lhs, id.rhs));
            }
        }
        notes.push(format!("(n,m)=({n},{m}): {} of {} patterns agree {bad:?}", ids.len() - bad.len(), ids.len()));
    }
}

fn c12(ck: &mut Check, notes: &mut Vec<String>) {
    let cat = match derive_piece_catalog() {
        Ok(c) => c,
        Err(e) => {
            ck.that(false, || e.to_string());
            return;
        }
    };
    for o in [Orientation::Up, Orientation::Down] {
        let pieces = cat.pieces(o);
        ck.that(pieces.len() == 5, || format!("{o:?}: {} pieces", pieces.len()));
        let names: BTreeSet<String> = pieces.iter().map(|p| p.name.clone()).collect();
        let prefix = if o == Orientation::Up { "U" } else { "D" };
        let want: BTreeSet<String> = (1..=5).map(|k| format!("{prefix}{k}")).collect();
        ck.that(names == want, || format!("{o:?}: names {names:?}"));
        for p in pieces.iter().chain([if o == Orientation::Up { &cat.dhu } else { &cat.dhd }]) {
            let has = |s: u8| p.content & s != 0;
            let blue_here = has(BU) || has(BH) || has(RH);
            let red_here = has(RU) || has(RH) || has(BH);
            let [slash, back, flat] = p.labels;
            let slash_ok = match slash {
                0 => blue_here && !has(RH),
                1 => !blue_here,
                2 => has(RH),
                _ => false,
            };
            let back_ok = match back {
                0 => !red_here,
                1 => red_here && !has(BH),
                2 => has(BH),
                _ => false,
            };
            let flat_ok = match flat {
                0 => has(BU),
                1 => has(RU),
                2 => !has(BU) && !has(RU),
                _ => false,
            };
            ck.that(slash_ok && back_ok && flat_ok, || format!("{}: content {:#06b}, labels {:?}", p.name, p.content, p.labels));
        }
        let named = |k: usize| pieces.iter().find(|p| p.name == format!("{prefix}{k}")).unwrap();
        ck.that(named(5).content == 0, || "piece 5 is not empty".into());
        ck.that(named(1).labels[0] == 0 && named(3).labels[0] == 0, || "pieces 1 and 3 need / label 0".into());
    }
    ck.that(cat.up.iter().find(|p| p.name == "U4").map(|p| p.content) == Some(RH | BU), || "U4 content".into());
    let conventions = calibrate_boundary_convention(4);
    ck.that(conventions.contains(&BOUNDARY_CONVENTION), || format!("calibrated conventions {conventions:?}"));
    notes.push(format!("{} boundary conventions agree with LR up to length 4", conventions.len()));
}

type Criterion = fn(&mut Check, &mut Vec<String>);

fn main() {
    let strict = std::env::var("TFPL_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    // The boundary convention is calibrated before anything depends on it.
    let mut outcomes = vec![run(12, "piece catalog and boundary calibration", c12)];
    let criteria: [(u32, &'static str, Criterion); 11] = [
        (1, "necessary conditions, N <= 5", c1),
        (2, "excess formula per configuration, N <= 5", c2),
        (3, "excess 0 equals LR, N <= 6", c3),
        (4, "excess 1 closed forms, N <= 6", c4),
        (5, "inversion at rho, N <= 5", c5),
        (6, "determinant counts, N <= 6 and N = 8", c6),
        (7, "matching direction identities, N <= 5", c7),
        (8, "bijection round trips, N <= 5", c8),
        (9, "move engine, N <= 6", c9),
        (10, "weight consistency, N <= 5", c10),
        (11, "loop decomposition and A_n, n <= 6", c11),
    ];
    for (id, title, f) in criteria {
        outcomes.push(run(id, title, f));
    }
    outcomes.sort_by_key(|o| o.id);

    let mut failing = BTreeSet::new();
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == o.id && !o.passed());
        println!(
            "criterion {:>2} {status}  {:<46} checked {:>7} failed {:>6} {:>7.1}s{}",
            o.id,
            o.title,
            o.check.checked,
            o.check.failed,
            o.elapsed.as_secs_f64(),
            known.map(|k| format!("  [known: {}]", k.1)).unwrap_or_default()
        );
        for e in &o.check.examples {
            println!("    counterexample: {e}");
        }
        for n in &o.notes {
            println!("    note: {n}");
        }
        if !o.passed() {
            failing.insert(o.id);
        }
    }
    let known: BTreeSet<u32> = KNOWN_FAILURES.iter().map(|k| k.0).collect();
    println!("{} passed, {} failed", outcomes.len() - failing.len(), failing.len());
    if failing != known {
        println!("failing criteria {failing:?} differ from the known set {known:?}");
        std::process::exit(1);
    }
    if strict && !failing.is_empty() {
        std::process::exit(1);
    }
}
