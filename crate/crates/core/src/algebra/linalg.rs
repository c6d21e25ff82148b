use std::fmt::Debug;

use num_traits::{One, Zero};

use super::scalar::{format_rational, is_prime, mul_mod, parse_rational, pow_mod, Rational};
use super::AlgebraError;

/// A field given as a context object, so that prime fields can pick their
/// modulus at run time.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a.clone()
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// `F_p` with elements stored as canonical residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| pow_mod(*a, self.p - 2, self.p))
    }
}

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F: Field = Rationals> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Self { field, rows, cols, data }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds from rows of equal length; `cols` disambiguates an empty row list.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(AlgebraError::Matrix(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Self { field, rows: n, cols, data })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let k = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b))))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let k = &self.field;
        let mut out = Self::zeros(k.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = k.zero();
                for t in 0..self.cols {
                    acc = k.add(&acc, &k.mul(self.get(i, t), other.get(t, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let k = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || k.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = k.sub(m.get(i, j), &k.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Eliminating along the shorter side is cheaper and gives the same rank.
        if self.rows > self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let k = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![k.zero(); self.cols];
                v[free] = k.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }
}

impl ExactMatrix<Rationals> {
    pub fn from_integers(rows: usize, cols: usize, values: &[i64]) -> Self {
        let data = values.iter().map(|&v| Rational::from_integer(v.into())).collect();
        Self::new(Rationals, rows, cols, data)
    }

    /// Rows of rational literals such as `"3/2"`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(format_rational).collect()).collect();
        serde_json::json!(rows)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, AlgebraError> {
        let rows: Vec<Vec<String>> =
            serde_json::from_value(value.clone()).map_err(|e| AlgebraError::Matrix(e.to_string()))?;
        let cols = rows.first().map_or(0, Vec::len);
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(Rationals, cols, parsed)
    }
}
