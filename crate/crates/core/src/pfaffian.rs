//! Skew-symmetric polynomial matrices, pfaffians and determinants.
//!
//! A rank-2 bundle with `c1 = 2h` on a quartic is presented by an `n × n`
//! skew-symmetric matrix `Φ` whose `(i, j)` entry is a form of degree
//! `2 - d_i - d_j`, where the `d`-vector has four zeros followed by `n - 4`
//! ones. [`SkewPolyMatrix::validate_shape`] checks exactly that layout,
//! including the vanishing lower-right `(n-4) × (n-4)` block.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{poly_parse, AlgebraError, Polynomial, Rational};

/// Largest order accepted by [`pfaffian`] and [`determinant`].
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PfaffianError {
    #[error("pfaffian needs an even order, got {0}")]
    OddOrder(usize),
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("entries ({i},{j}) and ({j},{i}) are not negatives of each other")]
    NotSkew { i: usize, j: usize },
    #[error("diagonal entry ({0},{0}) is nonzero")]
    DiagonalNonzero(usize),
    #[error("index ({i},{j}) out of range for order {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("malformed matrix file: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Dense matrix of polynomials, used for determinantal representations and
/// for the linear block `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Polynomial::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, PfaffianError> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(PfaffianError::Json("rows have different lengths".into()));
        }
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Self { rows, cols, data: values.iter().map(|&v| Polynomial::from_int(v)).collect() }
    }

    pub fn diagonal(entries: Vec<Polynomial>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.data.iter().enumerate().map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, p) in self.entries() {
            t.set(j, i, p.clone());
        }
        t
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect();
        serde_json::json!(rows)
    }

    /// Array of rows of polynomial strings.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, PfaffianError> {
        let rows: Vec<Vec<String>> =
            serde_json::from_value(value.clone()).map_err(|e| PfaffianError::Json(e.to_string()))?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| poly_parse(s, None)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(parsed)
    }
}

/// Even- or odd-order skew-symmetric matrix of polynomials, stored by its
/// strict upper triangle. An optional `d`-vector records the grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPolyMatrix {
    n: usize,
    upper: Vec<Polynomial>,
    shape: Option<Vec<u32>>,
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl SkewPolyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, upper: vec![Polynomial::zero(); n * n.saturating_sub(1) / 2], shape: None }
    }

    /// Builds from upper entries in row order: `(0,1), (0,2), ..., (n-2,n-1)`.
    pub fn from_upper(n: usize, upper: Vec<Polynomial>) -> Self {
        assert_eq!(upper.len(), n * n.saturating_sub(1) / 2, "wrong number of upper entries");
        Self { n, upper, shape: None }
    }

    pub fn from_integer_upper(n: usize, upper: &[i64]) -> Self {
        Self::from_upper(n, upper.iter().map(|&v| Polynomial::from_int(v)).collect())
    }

    /// Reads a full square matrix, checking antisymmetry and the zero diagonal.
    pub fn from_full(m: &PolyMatrix) -> Result<Self, PfaffianError> {
        if m.rows() != m.cols() {
            return Err(PfaffianError::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let mut s = Self::zeros(n);
        for i in 0..n {
            if !m.get(i, i).is_zero() {
                return Err(PfaffianError::DiagonalNonzero(i + 1));
            }
            for j in i + 1..n {
                if *m.get(j, i) != -m.get(i, j) {
                    return Err(PfaffianError::NotSkew { i: i + 1, j: j + 1 });
                }
                s.upper[upper_index(n, i, j)] = m.get(i, j).clone();
            }
        }
        Ok(s)
    }

    pub fn with_shape(mut self, d: Vec<u32>) -> Self {
        self.shape = Some(d);
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> Option<&[u32]> {
        self.shape.as_deref()
    }

    /// Entry `(i, j)`, 0-based, with the antisymmetry applied.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[upper_index(self.n, i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[upper_index(self.n, j, i)],
            std::cmp::Ordering::Equal => Polynomial::zero(),
        }
    }

    fn upper_ref(&self, i: usize, j: usize) -> &Polynomial {
        &self.upper[upper_index(self.n, i, j)]
    }

    /// Sets `(i, j)` and implicitly `(j, i) = -p`.
    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) -> Result<(), PfaffianError> {
        let n = self.n;
        if i >= n || j >= n {
            return Err(PfaffianError::IndexOutOfRange { i: i + 1, j: j + 1, n });
        }
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[upper_index(n, i, j)] = p,
            std::cmp::Ordering::Greater => self.upper[upper_index(n, j, i)] = -p,
            std::cmp::Ordering::Equal if p.is_zero() => {}
            std::cmp::Ordering::Equal => return Err(PfaffianError::DiagonalNonzero(i + 1)),
        }
        Ok(())
    }

    pub fn to_full(&self) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.entry(i, j));
            }
        }
        m
    }

    /// Simultaneous swap of rows and columns `i` and `j`. The shape vector,
    /// if any, is permuted along with them.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.n).collect();
        perm.swap(i, j);
        self.permute(&perm)
    }

    /// Reindexes so that new index `k` is old index `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = Self::zeros(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                out.upper[upper_index(self.n, a, b)] = self.entry(perm[a], perm[b]);
            }
        }
        out.shape = self.shape.as_ref().map(|d| perm.iter().map(|&k| d[k]).collect());
        out
    }

    /// Multiplies row and column `i` by `c`.
    pub fn scale_index(&self, i: usize, c: &Polynomial) -> Self {
        let mut out = self.clone();
        for j in 0..self.n {
            if j != i {
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                out.upper[upper_index(self.n, a, b)] = self.upper_ref(a, b) * c;
            }
        }
        out
    }

    pub fn pfaffian(&self) -> Result<Polynomial, PfaffianError> {
        pfaffian(self)
    }

    /// Checks the graded layout of a presentation matrix: sorted `d`-vector
    /// with four zeros and the rest ones, entry `(i,j)` a form of degree
    /// `2 - d_i - d_j`, no nonzero constants, zero lower-right block.
    pub fn validate_shape(&self) -> ShapeReport {
        let mut violations = Vec::new();
        let Some(d) = self.shape.clone() else {
            violations.push(ShapeViolation::MissingShape);
            return ShapeReport { d: None, violations };
        };
        if d.len() != self.n {
            violations.push(ShapeViolation::ShapeLength { expected: self.n, found: d.len() });
            return ShapeReport { d: Some(d), violations };
        }
        if !matches!(self.n, 4 | 6 | 8) {
            violations.push(ShapeViolation::Order(self.n));
        }
        for (k, &v) in d.iter().enumerate() {
            if v > 1 {
                violations.push(ShapeViolation::ShapeValue { index: k + 1, value: v });
            }
        }
        if d.windows(2).any(|w| w[0] > w[1]) {
            violations.push(ShapeViolation::NotSorted);
        }
        let zeros = d.iter().filter(|&&v| v == 0).count();
        if zeros != 4 {
            violations.push(ShapeViolation::ZeroCount(zeros));
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                let p = self.upper_ref(i, j);
                if p.is_zero() {
                    continue;
                }
                let expected = 2 - (d[i] as i64) - (d[j] as i64);
                if d[i] >= 1 && d[j] >= 1 {
                    violations.push(ShapeViolation::ZeroBlock { i: i + 1, j: j + 1 });
                } else if p.homogeneous_degree() == Some(0) {
                    violations.push(ShapeViolation::Constant { i: i + 1, j: j + 1 });
                } else if p.homogeneous_degree().map(i64::from) != Some(expected) {
                    violations.push(ShapeViolation::EntryDegree {
                        i: i + 1,
                        j: j + 1,
                        expected,
                        found: p.homogeneous_degree(),
                    });
                }
            }
        }
        ShapeReport { d: Some(d), violations }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut upper = BTreeMap::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let p = self.upper_ref(i, j);
                if !p.is_zero() {
                    upper.insert(format!("{},{}", i + 1, j + 1), p.to_string());
                }
            }
        }
        serde_json::to_value(SkewJson { n: self.n, d: self.shape.clone(), upper }).expect("skew matrix serializes")
    }

    /// `{"n": 8, "d": [...], "upper": {"1,2": "x0^2 - x1*x3", ...}}` with
    /// 1-based keys `i,j`, `i < j`. Missing entries are zero; `d` is optional.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, PfaffianError> {
        let raw: SkewJson = serde_json::from_value(value.clone()).map_err(|e| PfaffianError::Json(e.to_string()))?;
        let mut m = Self::zeros(raw.n);
        for (key, text) in &raw.upper {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| PfaffianError::Json(format!("bad entry key {key:?}")))?;
            if i == 0 || j == 0 || i >= j || j > raw.n {
                return Err(PfaffianError::Json(format!("entry key {key:?} must be 1-based with i < j <= {}", raw.n)));
            }
            m.upper[upper_index(raw.n, i - 1, j - 1)] = poly_parse(text, None)?;
        }
        m.shape = raw.d;
        Ok(m)
    }
}

#[derive(Serialize, Deserialize)]
struct SkewJson {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<u32>>,
    #[serde(default)]
    upper: BTreeMap<String, String>,
}

/// Shape problems, with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeViolation {
    MissingShape,
    ShapeLength { expected: usize, found: usize },
    Order(usize),
    ShapeValue { index: usize, value: u32 },
    NotSorted,
    ZeroCount(usize),
    EntryDegree { i: usize, j: usize, expected: i64, found: Option<u32> },
    Constant { i: usize, j: usize },
    ZeroBlock { i: usize, j: usize },
}

impl fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingShape => write!(f, "no d-vector attached"),
            Self::ShapeLength { expected, found } => {
                write!(f, "d-vector has length {found}, expected {expected}")
            }
            Self::Order(n) => write!(f, "order {n} is not one of 4, 6, 8"),
            Self::ShapeValue { index, value } => write!(f, "d_{index} = {value} is not 0 or 1"),
            Self::NotSorted => write!(f, "d-vector is not sorted"),
            Self::ZeroCount(z) => write!(f, "d-vector has {z} zeros, expected 4"),
            Self::EntryDegree { i, j, expected, found } => match found {
                Some(e) => write!(f, "entry ({i},{j}) has degree {e}, expected {expected}"),
                None => write!(f, "entry ({i},{j}) is not homogeneous, expected degree {expected}"),
            },
            Self::Constant { i, j } => write!(f, "entry ({i},{j}) is a nonzero constant"),
            Self::ZeroBlock { i, j } => write!(f, "entry ({i},{j}) lies in the zero block but is nonzero"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub d: Option<Vec<u32>>,
    pub violations: Vec<ShapeViolation>,
}

impl ShapeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pfaffian by expansion along the first row,
/// `pf(M) = Σ_j (-1)^j m_{1j} pf(M without rows/cols 1, j)` (1-based),
/// memoized on the set of surviving indices. `pf` of the empty matrix is 1.
pub fn pfaffian(m: &SkewPolyMatrix) -> Result<Polynomial, PfaffianError> {
    let n = m.order();
    if n % 2 == 1 {
        return Err(PfaffianError::OddOrder(n));
    }
    if n > MAX_ORDER {
        return Err(PfaffianError::OrderTooLarge(n));
    }
    let mut memo = HashMap::new();
    Ok(pf_rec(m, (1u32 << n) - 1, &mut memo))
}

fn pf_rec(m: &SkewPolyMatrix, mask: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    if mask == 0 {
        return Polynomial::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut acc = Polynomial::zero();
    let mut bits = rest;
    let mut position = 1;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.upper_ref(first, j);
        if !a.is_zero() {
            let minor = pf_rec(m, rest & !(1 << j), memo);
            if !minor.is_zero() {
                let term = a * &minor;
                acc = if position % 2 == 1 { acc + term } else { acc - term };
            }
        }
        position += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Determinant by Laplace expansion down the rows, memoized on the set of
/// columns already used.
pub fn determinant(m: &PolyMatrix) -> Result<Polynomial, PfaffianError> {
    if m.rows() != m.cols() {
        return Err(PfaffianError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n > MAX_ORDER {
        return Err(PfaffianError::OrderTooLarge(n));
    }
    let mut memo = HashMap::new();
    Ok(det_rec(m, 0, &mut memo))
}

fn det_rec(m: &PolyMatrix, used: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    let n = m.rows();
    let row = used.count_ones() as usize;
    if row == n {
        return Polynomial::one();
    }
    if let Some(p) = memo.get(&used) {
        return p.clone();
    }
    let mut acc = Polynomial::zero();
    let mut position = 0;
    for c in 0..n {
        if used & (1 << c) != 0 {
            continue;
        }
        let a = m.get(row, c);
        if !a.is_zero() {
            let minor = det_rec(m, used | (1 << c), memo);
            if !minor.is_zero() {
                let term = a * &minor;
                acc = if position % 2 == 0 { acc + term } else { acc - term };
            }
        }
        position += 1;
    }
    memo.insert(used, acc.clone());
    acc
}

/// Scales every entry of a polynomial matrix by a rational.
pub fn scale_matrix(m: &PolyMatrix, c: &Rational) -> PolyMatrix {
    let mut out = m.clone();
    for k in 0..out.data.len() {
        out.data[k] = m.data[k].scale(c);
    }
    out
}
