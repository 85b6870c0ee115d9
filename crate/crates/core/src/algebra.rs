//! Exact coefficient rings and the linear algebra built on them: Laurent
//! polynomials in q, the ring Z[rho] with rho^2 = rho - 1, the feasibility
//! matrix and its inverse, integer determinants, Littlewood-Richardson
//! coefficients and semistandard tableau counts.

use crate::words::{feasibility, words_with_content, Shape, Word};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot parse Laurent polynomial term {0:?}")]
    Parse(String),
    #[error("matrix is not lower unitriangular at ({0}, {1})")]
    NotUnitriangular(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
}

/// Laurent polynomial in q with integer coefficients. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly(BTreeMap<i64, BigInt>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// q^e.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        LaurentPoly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.0.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.0.iter().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, c: &BigInt, e: i64) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.values().sum()
    }

    /// Substitutes q = rho and 1/q = 1 - rho.
    pub fn eval_at_rho(&self) -> Eisenstein {
        let mut acc = Eisenstein::zero();
        for (&e, c) in &self.0 {
            let base = if e >= 0 { Eisenstein::rho() } else { Eisenstein::rho_inv() };
            acc = acc + base.pow(e.unsigned_abs()) * Eisenstein::from(c.clone());
        }
        acc
    }

    /// Constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.0.len() {
            0 => Some(BigInt::zero()),
            1 => self.0.get(&0).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.0.iter().map(|(e, c)| format!("{c}*q^{e}")).collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = LaurentPoly::zero();
        if s.trim() == "0" {
            return Ok(p);
        }
        for term in s.split(" + ") {
            let err = || AlgebraError::Parse(term.to_string());
            let (c, e) = term.trim().split_once("*q^").ok_or_else(err)?;
            let c: BigInt = c.parse().map_err(|_| err())?;
            let e: i64 = e.parse().map_err(|_| err())?;
            p.add_term(&c, e);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.0 {
            self.add_term(c, e);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.0 {
            self.add_term(&-c, e);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly(self.0.into_iter().map(|(e, c)| (e, -c)).collect())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.0 {
            for (&e2, c2) in &rhs.0 {
                out.add_term(&(c1 * c2), e1 + e2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// a + b rho with rho^2 = rho - 1, i.e. rho is a primitive sixth root of
/// unity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Eisenstein {
    pub a: BigInt,
    pub b: BigInt,
}

impl Eisenstein {
    pub fn new<A: Into<BigInt>, B: Into<BigInt>>(a: A, b: B) -> Self {
        Eisenstein { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn rho() -> Self {
        Self::new(0, 1)
    }

    /// 1/rho = 1 - rho.
    pub fn rho_inv() -> Self {
        Self::new(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Eisenstein::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl From<BigInt> for Eisenstein {
    fn from(a: BigInt) -> Self {
        Eisenstein { a, b: BigInt::zero() }
    }
}

impl Serialize for Eisenstein {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Eisenstein", 2)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.end()
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*rho", self.a, self.b)
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: Eisenstein) -> Eisenstein {
        Eisenstein { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: Eisenstein) -> Eisenstein {
        Eisenstein { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, rhs: Eisenstein) -> Eisenstein {
        let bd = &self.b * &rhs.b;
        Eisenstein {
            a: &self.a * &rhs.a - &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

/// Square matrix of Laurent polynomials indexed by words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub order: Vec<Word>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    order: &'a [Word],
    entries: BTreeMap<String, String>,
}

impl LaurentMatrix {
    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.order.iter().position(|x| x == w)
    }

    pub fn get(&self, w: &Word, w2: &Word) -> LaurentPoly {
        match (self.index_of(w), self.index_of(w2)) {
            (Some(i), Some(j)) => self.entries[i][j].clone(),
            _ => LaurentPoly::zero(),
        }
    }

    pub fn identity(order: Vec<Word>) -> Self {
        let n = order.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
            .collect();
        LaurentMatrix { order, entries }
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = LaurentPoly::zero();
                        for k in 0..n {
                            if !self.entries[i][k].is_zero() && !rhs.entries[k][j].is_zero() {
                                acc += &(&self.entries[i][k] * &rhs.entries[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        LaurentMatrix { order: self.order.clone(), entries }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| if i == j { *x == LaurentPoly::one() } else { x.is_zero() })
        })
    }

    /// JSON object `{order, entries}` with entries keyed `"w|w'"`; zero
    /// entries are omitted.
    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = BTreeMap::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    entries.insert(format!("{}|{}", self.order[i], self.order[j]), x.to_string());
                }
            }
        }
        serde_json::to_value(MatrixJson { order: &self.order, entries }).expect("serializable")
    }
}

/// Words with the given content, ordered by inversion number and then
/// lexicographically. This extends the dominance order linearly.
pub fn matrix_order(zeros: usize, ones: usize) -> Vec<Word> {
    let mut order = words_with_content(zeros, ones);
    order.sort_by(|a, b| (a.inversions(), a).cmp(&(b.inversions(), b)));
    order
}

/// Entry (w, w') is q^g(w, w') when w' is feasible for w and zero
/// otherwise.
pub fn feasibility_matrix(zeros: usize, ones: usize) -> LaurentMatrix {
    let order = matrix_order(zeros, ones);
    let index: HashMap<&Word, usize> = order.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = order.len();
    let mut entries = vec![vec![LaurentPoly::zero(); n]; n];
    for (i, w) in order.iter().enumerate() {
        for (w2, g) in feasibility(w) {
            entries[i][index[&w2]] = LaurentPoly::q_pow(g as i64);
        }
    }
    LaurentMatrix { order, entries }
}

/// Inverse of a lower unitriangular matrix by forward substitution, one
/// column at a time.
pub fn invert_unitriangular(m: &LaurentMatrix) -> Result<LaurentMatrix, AlgebraError> {
    let n = m.size();
    if m.entries.len() != n || m.entries.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::NotSquare);
    }
    for i in 0..n {
        if m.entries[i][i] != LaurentPoly::one() {
            return Err(AlgebraError::NotUnitriangular(i, i));
        }
        if let Some(j) = (i + 1..n).find(|&j| !m.entries[i][j].is_zero()) {
            return Err(AlgebraError::NotUnitriangular(i, j));
        }
    }
    let mut inv = vec![vec![LaurentPoly::zero(); n]; n];
    for j in 0..n {
        inv[j][j] = LaurentPoly::one();
        for i in j + 1..n {
            let mut acc = LaurentPoly::zero();
            for k in j..i {
                if !m.entries[i][k].is_zero() && !inv[k][j].is_zero() {
                    acc -= &(&m.entries[i][k] * &inv[k][j]);
                }
            }
            inv[i][j] = acc;
        }
    }
    Ok(LaurentMatrix { order: m.order.clone(), entries: inv })
}

/// Binomial coefficient, zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Fraction-free Gaussian elimination.
pub fn integer_determinant(a: &[Vec<BigInt>]) -> Result<BigInt, AlgebraError> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::NotSquare);
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Littlewood-Richardson coefficient by the tableau rule: semistandard
/// fillings of lambda/mu with content nu whose reverse reading word is a
/// lattice word.
pub fn lr_coefficient(mu: &Shape, nu: &Shape, lambda: &Shape) -> BigUint {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) {
        return BigUint::zero();
    }
    let rows = lambda.len();
    // Cells in reading order: rows top to bottom, each row right to left.
    let mut cells = Vec::new();
    for r in 0..rows {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut grid: Vec<Vec<usize>> = (0..rows).map(|r| vec![0; lambda.part(r)]).collect();
    let mut used = vec![0usize; nu.len() + 1];
    let mut count = BigUint::zero();

    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        mu: &Shape,
        nu: &Shape,
        lambda: &Shape,
        grid: &mut Vec<Vec<usize>>,
        used: &mut Vec<usize>,
        count: &mut BigUint,
    ) {
        if k == cells.len() {
            *count += 1u32;
            return;
        }
        let (r, c) = cells[k];
        let max = if c + 1 < lambda.part(r) { grid[r][c + 1] } else { nu.len() };
        let min = if r > 0 && c >= mu.part(r - 1) { grid[r - 1][c] + 1 } else { 1 };
        for v in min..=max {
            if used[v] >= nu.part(v - 1) || (v > 1 && used[v] + 1 > used[v - 1]) {
                continue;
            }
            grid[r][c] = v;
            used[v] += 1;
            rec(k + 1, cells, mu, nu, lambda, grid, used, count);
            used[v] -= 1;
        }
        grid[r][c] = 0;
    }
    rec(0, &cells, mu, nu, lambda, &mut grid, &mut used, &mut count);
    count
}

/// Calls `f` on every semistandard tableau of the given shape with entries
/// in 1..=m, given as rows.
pub fn for_each_ssyt(shape: &Shape, m: usize, mut f: impl FnMut(&[Vec<usize>])) {
    let mut grid: Vec<Vec<usize>> = shape.parts().iter().map(|&p| vec![0; p]).collect();
    let cells: Vec<(usize, usize)> =
        shape.parts().iter().enumerate().flat_map(|(r, &p)| (0..p).map(move |c| (r, c))).collect();
    fn rec(k: usize, cells: &[(usize, usize)], m: usize, grid: &mut Vec<Vec<usize>>, f: &mut dyn FnMut(&[Vec<usize>])) {
        if k == cells.len() {
            f(grid);
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=m {
            grid[r][c] = v;
            rec(k + 1, cells, m, grid, f);
        }
        grid[r][c] = 0;
    }
    rec(0, &cells, m, &mut grid, &mut f);
}

/// Littlewood-Richardson coefficient as the coefficient of x^(lambda+delta)
/// in a_delta * s_mu * s_nu, with Schur polynomials expanded into monomials
/// over semistandard tableaux in l(lambda) variables.
pub fn lr_coefficient_by_expansion(mu: &Shape, nu: &Shape, lambda: &Shape) -> BigInt {
    if lambda.size() != mu.size() + nu.size() {
        return BigInt::zero();
    }
    let n = lambda.len().max(1);
    let schur = |s: &Shape| {
        let mut poly: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for_each_ssyt(s, n, |t| {
            let mut exp = vec![0; n];
            for v in t.iter().flatten() {
                exp[v - 1] += 1;
            }
            *poly.entry(exp).or_default() += 1;
        });
        poly
    };
    let smu = schur(mu);
    let snu = schur(nu);
    let target: Vec<i64> = (0..n).map(|i| (lambda.part(i) + n - 1 - i) as i64).collect();
    let mut total = BigInt::zero();
    for (perm, sign) in permutations_with_sign(n) {
        // a_delta term x^(sigma(delta)) with delta = (n-1, ..., 0).
        let rest: Vec<i64> = (0..n).map(|i| target[i] - (n - 1 - perm[i]) as i64).collect();
        if rest.iter().any(|&x| x < 0) {
            continue;
        }
        let mut coeff = BigInt::zero();
        for (e1, c1) in &smu {
            let e2: Vec<i64> = rest.iter().zip(e1).map(|(&r, &e)| r - e as i64).collect();
            if e2.iter().any(|&x| x < 0) {
                continue;
            }
            let e2: Vec<usize> = e2.into_iter().map(|x| x as usize).collect();
            if let Some(c2) = snu.get(&e2) {
                coeff += c1 * c2;
            }
        }
        total += sign * coeff;
    }
    total
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k == p.len() {
            out.push((p.clone(), sign));
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, if i == k { sign } else { -sign }, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, 1, &mut out);
    out
}

/// Number of semistandard tableaux of shape lambda with entries in 1..=m by
/// the hook-content formula.
pub fn ssyt_count(lambda: &Shape, m: usize) -> BigUint {
    let conj = lambda.conjugate();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len {
            num *= BigInt::from(m as i64 + c as i64 - r as i64);
            den *= BigInt::from((len - c) + (conj.part(c) - r) - 1);
        }
    }
    let (q, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "hook-content quotient is not exact");
    assert!(!q.is_negative(), "hook-content quotient is negative");
    q.to_biguint().expect("nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(p: &[usize]) -> Shape {
        Shape::new(p.to_vec())
    }

    #[test]
    fn rho_values() {
        let q_plus_inv = &LaurentPoly::q_pow(1) + &LaurentPoly::q_pow(-1);
        assert_eq!(q_plus_inv.eval_at_rho(), Eisenstein::new(1, 0));
        assert_eq!(LaurentPoly::constant(5).eval_at_rho(), Eisenstein::new(5, 0));
        assert_eq!(LaurentPoly::q_pow(3).eval_at_rho(), Eisenstein::new(-1, 0));
        assert_eq!(Eisenstein::rho().pow(6), Eisenstein::one());
        assert_eq!(Eisenstein::rho().pow(3), Eisenstein::new(-1, 0));
        assert_eq!(Eisenstein::rho() * Eisenstein::rho_inv(), Eisenstein::one());
    }

    #[test]
    fn laurent_string_round_trip() {
        let p: LaurentPoly = "2*q^-1 + -3*q^0 + 1*q^4".parse().unwrap();
        assert_eq!(p.to_string(), "2*q^-1 + -3*q^0 + 1*q^4");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn feasibility_matrix_small() {
        let m = feasibility_matrix(2, 2);
        assert_eq!(m.size(), 6);
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(m.get(&w("0101"), &w("0011")), LaurentPoly::q_pow(1));
        assert_eq!(m.get(&w("0110"), &w("0011")), LaurentPoly::zero());
        let inv = invert_unitriangular(&m).unwrap();
        assert_eq!(inv.get(&w("0101"), &w("0011")), -LaurentPoly::q_pow(1));
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let one = feasibility_matrix(1, 0);
        assert!(one.is_identity());
        assert!(invert_unitriangular(&one).unwrap().is_identity());
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&shape(&[1]), &shape(&[1]), &shape(&[2])), 1u32.into());
        assert_eq!(lr_coefficient(&shape(&[2, 1]), &shape(&[2, 1]), &shape(&[3, 2, 1])), 2u32.into());
        assert_eq!(lr_coefficient(&shape(&[2, 1]), &shape(&[]), &shape(&[2, 1])), 1u32.into());
        assert_eq!(lr_coefficient_by_expansion(&shape(&[1]), &shape(&[1]), &shape(&[2])), 1.into());
        assert_eq!(
            lr_coefficient_by_expansion(&shape(&[2, 1]), &shape(&[2, 1]), &shape(&[3, 2, 1])),
            2.into()
        );
    }

    #[test]
    fn ssyt_examples() {
        assert_eq!(ssyt_count(&shape(&[1]), 7), 7u32.into());
        assert_eq!(ssyt_count(&shape(&[2, 1]), 2), 2u32.into());
        assert_eq!(ssyt_count(&shape(&[3]), 0), 0u32.into());
        assert_eq!(ssyt_count(&shape(&[]), 0), 1u32.into());
    }

    #[test]
    fn determinant_examples() {
        let b = |v: i64| BigInt::from(v);
        let id: Vec<Vec<BigInt>> = (0..4).map(|i| (0..4).map(|j| b((i == j) as i64)).collect()).collect();
        assert_eq!(integer_determinant(&id).unwrap(), b(1));
        assert_eq!(integer_determinant(&[vec![b(2), b(1)], vec![b(1), b(1)]]).unwrap(), b(1));
        assert_eq!(integer_determinant(&[vec![b(0), b(1)], vec![b(1), b(0)]]).unwrap(), b(-1));
    }
}
