use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::{format_rational, is_prime, mul_mod, rational_mod_p, Rational};
use super::AlgebraError;

/// Number of variables: forms live in `k[x0, x1, x2, x3]`.
pub const NVARS: usize = 4;

/// Exponent vector of a monomial in `x0..x3`.
///
/// Ordered graded-lexicographically with `x0 > x1 > x2 > x3`: higher total
/// degree is greater, ties are broken by comparing exponents left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> [u32; NVARS] {
        self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn eval(&self, point: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::one();
        for (x, &e) in point.iter().zip(&self.0) {
            for _ in 0..e {
                acc *= x;
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        Ok(())
    }
}

/// `C(n, k)` for the small arguments used in dimension counts.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All monomials of total degree `degree` in `x0..x3`, largest first in
/// graded-lex order (`x0^d, x0^(d-1)*x1, ..., x3^d`).
pub fn monomial_basis(degree: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(binomial(degree as u64 + 3, 3) as usize);
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            for c in (0..=degree - a - b).rev() {
                out.push(Monomial([a, b, c, degree - a - b - c]));
            }
        }
    }
    out
}

/// Polynomial in `x0..x3` with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(i: usize) -> Self {
        assert!(i < NVARS, "variable index {i} out of range");
        Self::term(Monomial::var(i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has degree `d`. The zero polynomial is not
    /// assigned a degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// True when the polynomial is zero or a form of degree `d`.
    pub fn is_form_of_degree(&self, d: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(d)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational; NVARS]) -> Rational {
        self.terms.iter().map(|(m, c)| m.eval(point) * c).sum()
    }

    pub fn partial(&self, var: usize) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0;
            let k = e[var];
            e[var] -= 1;
            (Monomial(e), c * Rational::from_integer(k.into()))
        }))
    }

    /// Coefficient vector against `basis`; `None` if a term falls outside it.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = basis.iter().map(|m| self.coeff(m)).collect();
        let covered = coords.iter().filter(|c| !c.is_zero()).count();
        (covered == self.terms.len()).then_some(coords)
    }

    pub fn from_coefficients(basis: &[Monomial], coords: &[Rational]) -> Polynomial {
        Polynomial::from_terms(basis.iter().copied().zip(coords.iter().cloned()))
    }

    /// `Some(λ)` with `self = λ·other`, for nonzero `other`.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Rational> {
        let (m, c) = other.leading_term()?;
        let lambda = self.coeff(m) / c;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    /// Coefficientwise image in `F_p`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<ModPolynomial, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let r = rational_mod_p(c, p)?;
            if r != 0 {
                terms.push((*m, r));
            }
        }
        Ok(ModPolynomial { p, terms })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

/// A polynomial reduced modulo a prime, laid out for fast evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPolynomial {
    p: u64,
    terms: Vec<(Monomial, u64)>,
}

impl ModPolynomial {
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.iter().find(|(n, _)| n == m).map_or(0, |(_, c)| *c)
    }

    pub fn partial(&self, var: usize) -> ModPolynomial {
        let p = self.p;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .filter_map(|(m, c)| {
                let mut e = m.0;
                let k = e[var] as u64 % p;
                e[var] -= 1;
                let c = mul_mod(*c, k, p);
                (c != 0).then_some((Monomial(e), c))
            })
            .collect();
        ModPolynomial { p, terms }
    }

    /// Evaluates at a point with coordinates already reduced mod `p`.
    pub fn eval(&self, point: &[u64; NVARS]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v = mul_mod(v, *x, p);
                }
            }
            acc = (acc + v) % p;
        }
        acc
    }
}
