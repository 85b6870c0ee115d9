//! Binary words, their Young diagrams, dominance order, covers and
//! extended link patterns.
//!
//! Positions in public structures are 1-based, matching the way boundary
//! vertices are numbered on the triangle. Internal slices are 0-based.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid letter {0:?}, expected '0' or '1'")]
    InvalidLetter(char),
    #[error("words have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("words {0} and {1} have different numbers of ones")]
    ContentMismatch(String, String),
    #[error("invalid extended link pattern: {0}")]
    InvalidPattern(String),
}

/// A word over {0, 1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self, WordError> {
        if let Some(&b) = letters.iter().find(|&&b| b > 1) {
            return Err(WordError::InvalidLetter(char::from(b'0' + b.min(9))));
        }
        Ok(Word(letters))
    }

    pub fn parse(s: &str) -> Result<Self, WordError> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(WordError::InvalidLetter(other)),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&b| b == 0).count()
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Number of pairs i < j with letter 1 at i and 0 at j.
    pub fn inversions(&self) -> usize {
        let mut ones = 0;
        let mut inv = 0;
        for &b in &self.0 {
            if b == 1 {
                ones += 1;
            } else {
                inv += ones;
            }
        }
        inv
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn complemented(&self) -> Word {
        Word(self.0.iter().map(|&b| 1 - b).collect())
    }

    /// Reverse of the complement.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|&b| 1 - b).collect())
    }

    /// Removes the first and the last letter.
    pub fn trimmed(&self) -> Word {
        if self.0.len() < 2 {
            return Word::default();
        }
        Word(self.0[1..self.0.len() - 1].to_vec())
    }

    /// Dominance order: every prefix of `self` has at most as many ones as
    /// the prefix of `other` of the same length.
    pub fn dominated_by(&self, other: &Word) -> Result<bool, WordError> {
        if self.len() != other.len() {
            return Err(WordError::LengthMismatch(self.len(), other.len()));
        }
        if self.ones() != other.ones() {
            return Err(WordError::ContentMismatch(self.to_string(), other.to_string()));
        }
        let (mut a, mut b) = (0usize, 0usize);
        for (&x, &y) in self.0.iter().zip(&other.0) {
            a += x as usize;
            b += y as usize;
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Young diagram: reading the zeros from right to left, the k-th part is
    /// the number of ones to the left of the k-th zero. Its size is the
    /// number of inversions.
    pub fn shape(&self) -> Shape {
        let mut ones = 0;
        let mut parts = Vec::new();
        for &b in &self.0 {
            if b == 1 {
                ones += 1;
            } else {
                parts.push(ones);
            }
        }
        parts.reverse();
        Shape::new(parts)
    }

    /// Inverse of [`Word::shape`] inside the box with `zeros` rows and `ones`
    /// columns.
    pub fn from_shape(shape: &Shape, zeros: usize, ones: usize) -> Option<Word> {
        if shape.len() > zeros || shape.parts().first().is_some_and(|&p| p > ones) {
            return None;
        }
        let mut parts: Vec<usize> = shape.parts().to_vec();
        parts.resize(zeros, 0);
        parts.reverse();
        let mut letters = Vec::with_capacity(zeros + ones);
        let mut placed = 0;
        for p in parts {
            while placed < p {
                letters.push(1);
                placed += 1;
            }
            letters.push(0);
        }
        while placed < ones {
            letters.push(1);
            placed += 1;
        }
        Some(Word(letters))
    }

    /// Covers `self -> upper` obtained by replacing one factor 01 with 10.
    pub fn covers(&self) -> Vec<Cover> {
        (0..self.len().saturating_sub(1))
            .filter(|&i| self.0[i] == 0 && self.0[i + 1] == 1)
            .map(|i| {
                let mut up = self.0.clone();
                up.swap(i, i + 1);
                Cover::new(self.clone(), Word(up), i)
            })
            .collect()
    }

    /// Covers `lower -> self` obtained by replacing one factor 10 with 01.
    pub fn cocovers(&self) -> Vec<Cover> {
        (0..self.len().saturating_sub(1))
            .filter(|&i| self.0[i] == 1 && self.0[i + 1] == 0)
            .map(|i| {
                let mut low = self.0.clone();
                low.swap(i, i + 1);
                Cover::new(Word(low), self.clone(), i)
            })
            .collect()
    }

    /// Swaps the letters at 1-based positions `i` and `i + 1`.
    pub fn swap_adjacent(&self, i: usize) -> Word {
        let mut letters = self.0.clone();
        letters.swap(i - 1, i);
        Word(letters)
    }

    pub fn is_dyck(&self) -> bool {
        is_dyck(&self.0)
    }

    pub fn link_pattern(&self) -> ExtendedLinkPattern {
        ExtendedLinkPattern::from_word(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl TryFrom<String> for Word {
    type Error = WordError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Word::parse(&s)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// Zeros open and ones close; every prefix has at least as many zeros as
/// ones and the totals agree.
pub fn is_dyck(letters: &[u8]) -> bool {
    let mut depth: i64 = 0;
    for &b in letters {
        depth += if b == 0 { 1 } else { -1 };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// All words of length `n` in lexicographic order.
pub fn all_words(n: usize) -> Vec<Word> {
    (0u64..1 << n)
        .map(|m| Word((0..n).map(|i| ((m >> (n - 1 - i)) & 1) as u8).collect()))
        .collect()
}

/// Words with `zeros` zeros and `ones` ones in lexicographic order.
pub fn words_with_content(zeros: usize, ones: usize) -> Vec<Word> {
    fn rec(z: usize, o: usize, cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if z == 0 && o == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        if z > 0 {
            cur.push(0);
            rec(z - 1, o, cur, out);
            cur.pop();
        }
        if o > 0 {
            cur.push(1);
            rec(z, o - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(zeros, ones, &mut Vec::new(), &mut out);
    out
}

/// Dyck words of length `2 * n` in lexicographic order.
pub fn dyck_words(n: usize) -> Vec<Word> {
    words_with_content(n, n).into_iter().filter(Word::is_dyck).collect()
}

/// A cover `lower -> upper` in the dominance order, together with the letter
/// counts to the left and right of the two swapped positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub lower: Word,
    pub upper: Word,
    /// 1-based position of the first swapped letter.
    pub position: usize,
    pub l0: usize,
    pub l1: usize,
    pub r0: usize,
    pub r1: usize,
}

impl Cover {
    fn new(lower: Word, upper: Word, i: usize) -> Cover {
        let left = &lower.0[..i];
        let right = &lower.0[i + 2..];
        let l1 = left.iter().filter(|&&b| b == 1).count();
        let r1 = right.iter().filter(|&&b| b == 1).count();
        Cover {
            l0: left.len() - l1,
            l1,
            r0: right.len() - r1,
            r1,
            lower,
            upper,
            position: i + 1,
        }
    }

    pub fn l(&self) -> usize {
        self.l0 + self.l1 + 1
    }

    pub fn r(&self) -> usize {
        self.r0 + self.r1 + 1
    }
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Shape(Vec<usize>);

impl Shape {
    /// Sorts the parts decreasingly and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Shape {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Shape(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Shape {
        let cols = self.part(0);
        Shape((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Diagram containment.
    pub fn contains(&self, other: &Shape) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape{self}")
    }
}

/// Noncrossing arches on positions `1..=n` plus unmatched left and right
/// points; no point lies below an arch and all left points precede all right
/// points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedLinkPattern {
    pub n: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Arches `(i, j)` with `i < j`, sorted by `i`.
    #[serde(rename = "pairs")]
    pub arches: Vec<(usize, usize)>,
}

impl ExtendedLinkPattern {
    /// Zeros open arches, ones close them; unmatched ones are left points
    /// and unmatched zeros are right points.
    pub fn from_word(w: &Word) -> ExtendedLinkPattern {
        let mut stack = Vec::new();
        let mut left = Vec::new();
        let mut arches = Vec::new();
        for (k, &b) in w.0.iter().enumerate() {
            let i = k + 1;
            if b == 0 {
                stack.push(i);
            } else if let Some(j) = stack.pop() {
                arches.push((j, i));
            } else {
                left.push(i);
            }
        }
        arches.sort_unstable();
        ExtendedLinkPattern { n: w.len(), left, right: stack, arches }
    }

    pub fn validate(&self) -> Result<(), WordError> {
        let bad = |m: &str| Err(WordError::InvalidPattern(m.to_string()));
        let mut seen = vec![false; self.n + 1];
        let all = self
            .left
            .iter()
            .chain(&self.right)
            .chain(self.arches.iter().flat_map(|(i, j)| [i, j]));
        for &p in all {
            if p == 0 || p > self.n || seen[p] {
                return bad("positions must cover 1..=n exactly once");
            }
            seen[p] = true;
        }
        if seen.iter().skip(1).any(|&s| !s) {
            return bad("positions must cover 1..=n exactly once");
        }
        for &(i, j) in &self.arches {
            if i >= j {
                return bad("arch endpoints out of order");
            }
            if self.left.iter().chain(&self.right).any(|&p| i < p && p < j) {
                return bad("unmatched point below an arch");
            }
            for &(k, l) in &self.arches {
                if i < k && k < j && j < l {
                    return bad("crossing arches");
                }
            }
        }
        if let (Some(&l), Some(&r)) = (self.left.iter().max(), self.right.iter().min()) {
            if l > r {
                return bad("left point to the right of a right point");
            }
        }
        Ok(())
    }

    pub fn to_word(&self) -> Word {
        let mut letters = vec![0u8; self.n];
        for &i in &self.left {
            letters[i - 1] = 1;
        }
        for &(_, j) in &self.arches {
            letters[j - 1] = 1;
        }
        Word(letters)
    }
}

/// An extended link pattern whose arches carry an orientation. Unmatched
/// left points are sinks, unmatched right points are sources.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedLinkPattern {
    pub pattern: ExtendedLinkPattern,
    /// Parallel to `pattern.arches`: true if the arch runs from its right
    /// endpoint to its left endpoint.
    pub right_to_left: Vec<bool>,
}

impl DirectedLinkPattern {
    /// 0 at sources, 1 at sinks.
    pub fn source_sink_word(&self) -> Word {
        let mut letters = self.pattern.to_word().0;
        for (&(i, j), &rl) in self.pattern.arches.iter().zip(&self.right_to_left) {
            if rl {
                letters[i - 1] = 1;
                letters[j - 1] = 0;
            }
        }
        Word(letters)
    }

    pub fn rl(&self) -> usize {
        self.right_to_left.iter().filter(|&&b| b).count()
    }
}

/// All `(w', g)` such that some orientation of the arches of the link
/// pattern of `w'` with `g` arches running right to left has source-sink
/// word `w`. Sorted by `g`, then by `w'`.
///
/// Works backwards from `w`: chooses a noncrossing set of pairs `i < j`
/// with a one at `i` and a zero at `j`, swaps them, and keeps the choice if
/// every chosen pair becomes an arch, i.e. encloses a Dyck factor.
pub fn feasibility(w: &Word) -> Vec<(Word, usize)> {
    fn rec(
        w: &[u8],
        k: usize,
        open: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<(Word, usize)>,
    ) {
        if k == w.len() {
            if !open.is_empty() {
                return;
            }
            let mut flipped = w.to_vec();
            for &(i, j) in chosen.iter() {
                flipped[i] = 0;
                flipped[j] = 1;
            }
            if chosen.iter().all(|&(i, j)| is_dyck(&flipped[i + 1..j])) {
                out.push((Word(flipped), chosen.len()));
            }
            return;
        }
        rec(w, k + 1, open, chosen, out);
        if w[k] == 1 {
            open.push(k);
            rec(w, k + 1, open, chosen, out);
            open.pop();
        } else if let Some(i) = open.pop() {
            chosen.push((i, k));
            rec(w, k + 1, open, chosen, out);
            chosen.pop();
            open.push(i);
        }
    }
    let mut out = Vec::new();
    rec(&w.0, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn basic_statistics() {
        let u = w("0101011110");
        assert_eq!(u.inversions(), 9);
        assert_eq!(u.shape(), Shape::new(vec![6, 2, 1]));
        assert_eq!(u.star(), w("1000010101"));
        assert_eq!(w("1100").shape(), Shape::new(vec![2, 2]));
        assert!(w("0101").dominated_by(&w("1001")).unwrap());
        assert!(!w("1001").dominated_by(&w("0110")).unwrap());
        assert!(w("01").dominated_by(&w("011")).is_err());
        assert!(w("01").dominated_by(&w("00")).is_err());
        assert!("01a".parse::<Word>().is_err());
    }

    #[test]
    fn cover_counts() {
        let covers = w("0101").covers();
        assert_eq!(covers.len(), 2);
        let c = &covers[1];
        assert_eq!(c.upper, w("0110"));
        assert_eq!((c.l0, c.l1, c.r0, c.r1), (1, 1, 0, 0));
        assert_eq!((c.l(), c.r()), (3, 1));
        assert_eq!(w("0110").cocovers()[0].lower, w("0101"));
    }

    #[test]
    fn link_pattern_of_example_word() {
        let p = w("1011001011").link_pattern();
        assert_eq!(p.left, vec![1, 4]);
        assert_eq!(p.arches, vec![(2, 3), (5, 10), (6, 7), (8, 9)]);
        assert!(p.right.is_empty());
        p.validate().unwrap();
        assert_eq!(p.to_word(), w("1011001011"));
    }

    #[test]
    fn pattern_points() {
        let p = w("011100101100011").link_pattern();
        assert_eq!(p.left, vec![3, 4]);
        assert_eq!(p.right, vec![11]);
        assert_eq!(w("01").link_pattern().arches, vec![(1, 2)]);
    }

    #[test]
    fn feasibility_small() {
        assert_eq!(feasibility(&w("0101")), vec![(w("0101"), 0), (w("0011"), 1)]);
        assert_eq!(feasibility(&w("0011")), vec![(w("0011"), 0)]);
        let f = feasibility(&w("101111001000011"));
        assert!(f.contains(&(w("011100101100011"), 3)));
        assert!(f.contains(&(w("101111001000011"), 0)));
    }

    #[test]
    fn directed_pattern_word() {
        let p = w("0011").link_pattern();
        let d = DirectedLinkPattern { right_to_left: vec![true, false], pattern: p };
        assert_eq!(d.source_sink_word(), w("1010"));
        assert_eq!(d.rl(), 1);
    }
}
