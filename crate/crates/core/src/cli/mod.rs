//! Command-line front end: counts, verification suites and figures.
//!
//! Exit codes: 0 success, 1 a verified identity failed, 2 usage error.

pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::fpl::{a_pi, count_fpls_where, enumerate_fpls, FplConfig};
use crate::matchings::{count_matchings, count_matchings_det, enumerate_matchings, MatchingGraph, Side};
use crate::puzzles::{count_puzzles, enumerate_puzzles, PuzzleKind};
use crate::tangles::PathTangle;
use crate::tfpl_core::{count_oriented, enumerate_oriented, enumerate_plain, weighted_count, Boundary, Grid};
use crate::words::{ExtendedLinkPattern, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tfpl", version, about = "Fully packed loops in a triangle: counts, checks and figures")]
pub struct Cli {
    /// Worker threads (default: all cores; falls back to TFPL_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count configurations with a given boundary.
    Count(CountArgs),
    /// Run a verification suite on every instance up to a size.
    Verify(VerifyArgs),
    /// Draw one configuration.
    Render(RenderArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subject {
    Tfpl,
    Otfpl,
    Matchings,
    Puzzles,
    Fpl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Object {
    Tangle,
    Matching,
    Puzzle,
    Fpl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Ascii,
}

#[derive(Args, Debug, Clone, Default)]
pub struct BoundaryArgs {
    #[arg(short = 'u')]
    pub u: Option<String>,
    #[arg(short = 'v')]
    pub v: Option<String>,
    #[arg(short = 'w')]
    pub w: Option<String>,
    /// Odd matching graph G_o(u, w).
    #[arg(long, conflicts_with = "even")]
    pub odd: bool,
    /// Even matching graph G_e(v, w).
    #[arg(long)]
    pub even: bool,
    /// Puzzle type: KT, BD, RD, DHD, DHU or GD.
    #[arg(long)]
    pub kind: Option<String>,
    /// Square grid size for loop configurations.
    #[arg(short = 'n', long = "size")]
    pub size: Option<usize>,
    /// Link pattern as pairs, e.g. "1-4,2-3".
    #[arg(long)]
    pub pattern: Option<String>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    pub subject: Subject,
    #[command(flatten)]
    pub boundary: BoundaryArgs,
    /// Also report the q-weighted count of oriented configurations.
    #[arg(long)]
    pub weighted: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or "all".
    pub suite: String,
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    pub object: Object,
    #[command(flatten)]
    pub boundary: BoundaryArgs,
    /// Position in the sorted enumeration.
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub elapsed_ms: u128,
    pub passed: bool,
    pub result: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<String>,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<(bool, Value, String, Vec<String>), UsageError>;

fn word(name: &str, s: &Option<String>) -> Result<Word, UsageError> {
    let s = s.as_deref().ok_or_else(|| UsageError(format!("missing -{name}")))?;
    Word::parse(s).map_err(|e| UsageError(format!("-{name} {s}: {e}")))
}

fn boundary(a: &BoundaryArgs) -> Result<(Grid, Boundary), UsageError> {
    let b = Boundary::new(word("u", &a.u)?, word("v", &a.v)?, word("w", &a.w)?);
    let n = b.w.len();
    if b.u.len() != n || b.v.len() != n {
        return Err(UsageError("u, v and w must have the same length".into()));
    }
    Ok((Grid::new(n)?, b))
}

fn side_words(a: &BoundaryArgs) -> Result<(Side, Word, Word), UsageError> {
    let (side, word_of) = match (a.odd, a.even) {
        (true, false) => (Side::Odd, word("u", &a.u)?),
        (false, true) => (Side::Even, word("v", &a.v)?),
        _ => return Err(UsageError("choose exactly one of --odd and --even".into())),
    };
    let w = word("w", &a.w)?;
    if word_of.len() != w.len() {
        return Err(UsageError("words must have the same length".into()));
    }
    Ok((side, word_of, w))
}

fn kind(a: &BoundaryArgs) -> Result<PuzzleKind, UsageError> {
    let k = a.kind.as_deref().unwrap_or("KT");
    PuzzleKind::parse(k).ok_or_else(|| UsageError(format!("unknown puzzle kind {k}")))
}

fn parse_pattern(s: &str) -> Result<ExtendedLinkPattern, UsageError> {
    let mut arches = Vec::new();
    for part in s.split(',') {
        let (a, b) = part.split_once('-').ok_or_else(|| UsageError(format!("bad pair {part}")))?;
        let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
        arches.push((a.min(b), a.max(b)));
    }
    arches.sort_unstable();
    let p = ExtendedLinkPattern { n: 2 * arches.len(), left: vec![], right: vec![], arches };
    p.validate().map_err(|e| UsageError(format!("pattern {s}: {e}")))?;
    Ok(p)
}

fn cmd_count(c: &CountArgs) -> Outcome {
    let a = &c.boundary;
    match c.subject {
        Subject::Tfpl => {
            let (grid, b) = boundary(a)?;
            let t = enumerate_plain(&grid, &b)?.len();
            Ok((true, json!({ "boundary": b.to_string(), "tfpl": t }), format!("t{b} = {t}\n"), vec![]))
        }
        Subject::Otfpl => {
            let (grid, b) = boundary(a)?;
            let t = count_oriented(&grid, &b)?;
            let mut text = format!("t->{b} = {t}\n");
            let mut v = json!({ "boundary": b.to_string(), "otfpl": t });
            if c.weighted {
                let p = weighted_count(&grid, &b, false)?;
                text.push_str(&format!("weighted = {p}\n"));
                v["weighted"] = json!(p.to_string());
            }
            Ok((true, v, text, vec![]))
        }
        Subject::Matchings => {
            let (side, x, w) = side_words(a)?;
            let grid = Grid::new(w.len())?;
            let brute = BigInt::from(count_matchings(&grid, &MatchingGraph::new(&grid, side, &x, &w)));
            let det = count_matchings_det(side, &x, &w).unwrap_or_default();
            let ok = brute == det;
            let text = format!("{side:?} matchings ({x}, {w}): exhaustive {brute}, determinant {det}\n");
            let v = json!({ "side": side, "exhaustive": brute.to_string(), "determinant": det.to_string(), "agree": ok });
            Ok((ok, v, text, vec![]))
        }
        Subject::Puzzles => {
            let (_, b) = boundary(a)?;
            let k = kind(a)?;
            let count = count_puzzles(&b, k);
            Ok((true, json!({ "boundary": b.to_string(), "kind": k, "puzzles": count }), format!("{k:?} puzzles {b} = {count}\n"), vec![]))
        }
        Subject::Fpl => {
            let n = a.size.ok_or_else(|| UsageError("count fpl needs -n".into()))?;
            if n == 0 {
                return Err(UsageError("grid size must be at least 1".into()));
            }
            match &a.pattern {
                Some(s) => {
                    let p = parse_pattern(s)?;
                    let count = a_pi(n, &p)?;
                    Ok((true, json!({ "n": n, "pattern": p.arches, "count": count }), format!("A_pi = {count}\n"), vec![]))
                }
                None => {
                    let count = count_fpls_where(n, |_| true)?;
                    Ok((true, json!({ "n": n, "count": count }), format!("A_{n} = {count}\n"), vec![]))
                }
            }
        }
    }
}

fn cmd_verify(v: &VerifyArgs) -> Outcome {
    let names: Vec<&str> = if v.suite == "all" {
        verify::SUITES.to_vec()
    } else if verify::SUITES.contains(&v.suite.as_str()) {
        vec![v.suite.as_str()]
    } else {
        return Err(UsageError(format!("unknown suite {}; expected one of {}", v.suite, verify::SUITES.join(", "))));
    };
    if v.max_size == 0 || v.max_size > 8 {
        return Err(UsageError("--max-size must be between 1 and 8".into()));
    }
    let mut text = String::new();
    let mut reports = Vec::new();
    for name in names {
        let r = verify::run_suite(name, v.max_size).expect("known suite");
        text.push_str(&format!(
            "{:<15} max-size {}  checked {:>8}  failed {:>6}  {}\n",
            r.suite,
            r.max_size,
            r.checked,
            r.failed,
            if r.passed() { "PASS" } else { "FAIL" }
        ));
        for c in &r.counterexamples {
            text.push_str(&format!("    counterexample: {c}\n"));
        }
        for n in &r.notes {
            text.push_str(&format!("    note: {n}\n"));
        }
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.passed());
    Ok((ok, serde_json::to_value(&reports)?, text, vec![]))
}

fn pick<T>(mut items: Vec<T>, index: usize, what: &str) -> Result<T, UsageError> {
    if index >= items.len() {
        return Err(UsageError(format!("no {what} at index {index} ({} available)", items.len())));
    }
    Ok(items.swap_remove(index))
}

fn cmd_render(r: &RenderArgs) -> Outcome {
    let a = &r.boundary;
    let figure = match r.object {
        Object::Tangle => {
            let (grid, b) = boundary(a)?;
            let f = pick(enumerate_oriented(&grid, &b)?, r.index, "configuration")?;
            let t = PathTangle::from_oriented(&grid, &f);
            match r.format {
                Format::Svg => render::tangle_svg(&t),
                Format::Ascii => render::tangle_ascii(&t),
            }
        }
        Object::Matching => {
            let (side, x, w) = side_words(a)?;
            let grid = Grid::new(w.len())?;
            let m = pick(enumerate_matchings(&grid, &MatchingGraph::new(&grid, side, &x, &w)), r.index, "matching")?;
            match r.format {
                Format::Svg => render::matching_svg(&grid, &m),
                Format::Ascii => render::matching_ascii(&grid, &m),
            }
        }
        Object::Puzzle => {
            let (_, b) = boundary(a)?;
            let pz = pick(enumerate_puzzles(&b, kind(a)?), r.index, "puzzle")?;
            match r.format {
                Format::Svg => render::puzzle_svg(&pz),
                Format::Ascii => render::puzzle_ascii(&pz),
            }
        }
        Object::Fpl => {
            let n = a.size.ok_or_else(|| UsageError("render fpl needs -n".into()))?;
            let all: Vec<FplConfig> = enumerate_fpls(n)?;
            let f = pick(all, r.index, "configuration")?;
            match r.format {
                Format::Svg => render::fpl_svg(&f),
                Format::Ascii => f.to_ascii(),
            }
        }
    };
    match &r.out {
        Some(path) => {
            std::fs::write(path, &figure).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            let p = path.display().to_string();
            Ok((true, json!({ "bytes": figure.len() }), format!("wrote {p}\n"), vec![p]))
        }
        None => Ok((true, json!({ "figure": figure }), figure, vec![])),
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), UsageError> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("TFPL_THREADS") {
            Ok(s) => Some(s.trim().parse().map_err(|_| UsageError(format!("TFPL_THREADS={s} is not a number")))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parses `args`, runs the command, prints the report and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {}", e.0);
        return EXIT_USAGE;
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Count(c) => cmd_count(c),
        Command::Verify(v) => cmd_verify(v),
        Command::Render(r) => cmd_render(r),
    };
    match outcome {
        Err(e) => {
            eprintln!("error: {}", e.0);
            EXIT_USAGE
        }
        Ok((passed, result, text, artifacts)) => {
            let command =
                args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
            if cli.json {
                let report =
                    RunReport { command, elapsed_ms: start.elapsed().as_millis(), passed, result, artifacts };
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{text}");
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["tfpl", "count", "otfpl", "-u", "0a", "-v", "01", "-w", "01"]), EXIT_USAGE);
        assert_eq!(run(["tfpl", "count", "otfpl", "-u", "01", "-v", "011", "-w", "01"]), EXIT_USAGE);
        assert_eq!(run(["tfpl", "verify", "nonsense"]), EXIT_USAGE);
        assert_eq!(run(["tfpl", "frobnicate"]), EXIT_USAGE);
    }

    #[test]
    fn pattern_parsing() {
        assert_eq!(parse_pattern("1-4,3-2").unwrap().arches, vec![(1, 4), (2, 3)]);
        assert!(parse_pattern("1-3,2-4").is_err());
    }
}
