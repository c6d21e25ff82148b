//! Picard lattice arithmetic on a smooth quartic (K3) surface.
//!
//! Classes are integer vectors against a Gram matrix; the hyperplane class
//! `h` has `h² = 4`. Riemann–Roch on a K3 reads `χ(F) = 2r + c1²/2 - c2`.
//! Cohomological vanishings that cannot be read off the lattice come in as
//! [`CohomologyFlags`] and every operation that needs one refuses without it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("Gram matrix must be square and nonempty")]
    NotSquare,
    #[error("Gram matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("basis class {0} has odd self-intersection {1}")]
    OddDiagonal(usize, i64),
    #[error("hyperplane class has h^2 = {0}, expected 4")]
    BadHyperplane(i64),
    #[error("class has length {found}, lattice has rank {rank}")]
    DimensionMismatch { rank: usize, found: usize },
    #[error("c1^2 = {0} is odd")]
    OddSquare(i64),
    #[error("rank must be positive")]
    ZeroRank,
    #[error("the zero divisor is not allowed here")]
    ZeroDivisor,
    #[error("hypothesis not supplied: {0}")]
    MissingHypothesis(&'static str),
    #[error("D.(2h-D) = {0}, expected 8")]
    WrongSecondChern(i64),
    #[error("inconsistent flags: chi(O(2D-2h)) = {0} > 0 although h0 vanishes on both sides")]
    PositiveEuler(i64),
    #[error("class does not satisfy Dh = 4, D^2 = 0 (got Dh = {dh}, D^2 = {d2})")]
    NotEllipticQuartic { dh: i64, d2: i64 },
    #[error("malformed lattice file: {0}")]
    Json(String),
}

/// Integer coordinates of a divisor class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `"0,1"` or `"2, -1, 0"`.
    pub fn parse(text: &str) -> Option<Self> {
        text.split(',').map(|s| s.trim().parse().ok()).collect::<Option<Vec<i64>>>().map(Self)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len());
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len());
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(rhs.0.iter().map(|a| self * a).collect())
    }
}

/// Hypotheses about a class that the lattice alone cannot decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CohomologyFlags {
    /// `h⁰(O_F(D - h)) = 0`.
    pub h0_d_minus_h_vanishes: bool,
    /// `h⁰(O_F(2h - D)) = 0`.
    pub h0_2h_minus_d_vanishes: bool,
    pub d_irreducible: bool,
    pub d_effective: bool,
    /// `O_F(D)` globally generated; separates the two `Dh = 4` split cases.
    pub d_globally_generated: bool,
    /// `h⁰(O_F(2D - 2h)) = h⁰(O_F(2h - 2D)) = 0`.
    pub h0_twice_difference_vanishes: bool,
}

impl CohomologyFlags {
    pub fn effective() -> Self {
        Self { d_effective: true, ..Self::default() }
    }

    pub fn irreducible_effective() -> Self {
        Self { d_effective: true, d_irreducible: true, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WatanabeCase {
    A,
    B,
    C,
    D,
    None,
}

impl WatanabeCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
            Self::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DecomposableCase {
    #[serde(rename = "t2gg-split")]
    GloballyGeneratedSplit,
    #[serde(rename = "t2ngg-split-quintic-cubic")]
    QuinticCubicSplit,
    #[serde(rename = "t2ngg-split-quartics")]
    QuarticsSplit,
    #[serde(rename = "t2Exotic-split")]
    ExoticSplit,
    #[serde(rename = "none")]
    None,
}

impl DecomposableCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::GloballyGeneratedSplit => "t2gg-split",
            Self::QuinticCubicSplit => "t2ngg-split-quintic-cubic",
            Self::QuarticsSplit => "t2ngg-split-quartics",
            Self::ExoticSplit => "t2Exotic-split",
            Self::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityKind {
    Unstable,
    StrictlySemistable,
    StableCandidate,
}

impl StabilityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Unstable => "unstable",
            Self::StrictlySemistable => "strictly semistable",
            Self::StableCandidate => "stable candidate",
        }
    }
}

/// Coefficients `(t², t, 1)` of a reduced Hilbert polynomial.
pub type ReducedPoly = [Rational; 3];

pub fn format_reduced_poly(p: &ReducedPoly) -> String {
    format!("{}t^2 + {}t + {}", format_rational(&p[0]), format_rational(&p[1]), format_rational(&p[2]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub kind: StabilityKind,
    /// `μ(O_F(D)) = Dh`.
    pub mu_sub: Rational,
    /// `μ(E) = c1·h / 2 = 4`.
    pub mu_total: Rational,
    /// Reduced Hilbert polynomials of `O_F(D)` and of `E`.
    pub reduced_polys: (ReducedPoly, ReducedPoly),
}

#[derive(Deserialize, Serialize)]
struct LatticeJson {
    gram: Vec<Vec<i64>>,
    h: Vec<i64>,
}

/// Gram matrix of the Picard lattice with the hyperplane class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardLattice {
    gram: Vec<Vec<i64>>,
    h: DivisorClass,
}

impl PicardLattice {
    /// Validates symmetry, evenness of the basis self-intersections (hence of
    /// every class) and `h² = 4`.
    #[allow(clippy::needless_range_loop)]
    pub fn new(gram: Vec<Vec<i64>>, h: Vec<i64>) -> Result<Self, PicardError> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(PicardError::NotSquare);
        }
        for i in 0..n {
            if gram[i][i] % 2 != 0 {
                return Err(PicardError::OddDiagonal(i + 1, gram[i][i]));
            }
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(PicardError::NotSymmetric(i + 1, j + 1));
                }
            }
        }
        if h.len() != n {
            return Err(PicardError::DimensionMismatch { rank: n, found: h.len() });
        }
        let lattice = Self { gram, h: DivisorClass(h) };
        let h2 = lattice.self_intersection(&lattice.h)?;
        if h2 != 4 {
            return Err(PicardError::BadHyperplane(h2));
        }
        Ok(lattice)
    }

    /// `Z h` with `h² = 4`.
    pub fn rank_one() -> Self {
        Self::new(vec![vec![4]], vec![1]).expect("valid")
    }

    /// Rank 2 with basis `(h, D)`, `Dh = dh`, `D² = d2`.
    pub fn rank_two(dh: i64, d2: i64) -> Result<Self, PicardError> {
        Self::new(vec![vec![4, dh], vec![dh, d2]], vec![1, 0])
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn h(&self) -> &DivisorClass {
        &self.h
    }

    fn check(&self, d: &DivisorClass) -> Result<(), PicardError> {
        if d.len() != self.rank() {
            return Err(PicardError::DimensionMismatch { rank: self.rank(), found: d.len() });
        }
        Ok(())
    }

    /// `D1ᵀ G D2`.
    pub fn pair(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<i64, PicardError> {
        self.check(d1)?;
        self.check(d2)?;
        Ok(self.gram.iter().zip(&d1.0).map(|(row, a)| a * row.iter().zip(&d2.0).map(|(g, b)| g * b).sum::<i64>()).sum())
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> Result<i64, PicardError> {
        self.pair(d, d)
    }

    /// `D·h`.
    pub fn degree(&self, d: &DivisorClass) -> Result<i64, PicardError> {
        self.pair(d, &self.h)
    }

    /// `(D², Dh)`.
    pub fn numerics(&self, d: &DivisorClass) -> Result<(i64, i64), PicardError> {
        Ok((self.self_intersection(d)?, self.degree(d)?))
    }

    /// `2h - D`.
    pub fn complement(&self, d: &DivisorClass) -> DivisorClass {
        &(2 * &self.h) - d
    }

    /// Riemann–Roch on a K3: `χ = 2r + c1²/2 - c2`.
    pub fn euler_characteristic(&self, rank: u32, c1: &DivisorClass, c2: i64) -> Result<i64, PicardError> {
        let c1sq = self.self_intersection(c1)?;
        if c1sq % 2 != 0 {
            return Err(PicardError::OddSquare(c1sq));
        }
        Ok(2 * rank as i64 + c1sq / 2 - c2)
    }

    /// `(p_a(D), h⁰(O_F(D))) = (1 + D²/2, 2 + D²/2)` for an irreducible
    /// effective `D`.
    pub fn genus_and_h0(&self, d: &DivisorClass, flags: &CohomologyFlags) -> Result<(i64, i64), PicardError> {
        if !flags.d_effective {
            return Err(PicardError::MissingHypothesis("D effective"));
        }
        if !flags.d_irreducible {
            return Err(PicardError::MissingHypothesis("D irreducible"));
        }
        let d2 = self.self_intersection(d)?;
        Ok((1 + d2 / 2, 2 + d2 / 2))
    }

    /// Initialized aCM line bundles on a smooth quartic, matched on
    /// `(D², Dh)`:
    /// (a) `D² = -2`, `1 ≤ Dh ≤ 3`; (b) `D² = 0`, `3 ≤ Dh ≤ 4`;
    /// (c) `D² = 2`, `Dh = 5`; (d) `D² = 4`, `Dh = 6` with
    /// `h⁰(D - h) = h⁰(2h - D) = 0`.
    pub fn watanabe_classify(&self, d: &DivisorClass, flags: &CohomologyFlags) -> Result<WatanabeCase, PicardError> {
        self.check(d)?;
        if d.is_zero() {
            return Err(PicardError::ZeroDivisor);
        }
        if !flags.d_effective {
            return Err(PicardError::MissingHypothesis("D effective"));
        }
        let (d2, dh) = self.numerics(d)?;
        Ok(match (d2, dh) {
            (-2, 1..=3) => WatanabeCase::A,
            (0, 3..=4) => WatanabeCase::B,
            (2, 5) => WatanabeCase::C,
            (4, 6) if flags.h0_d_minus_h_vanishes && flags.h0_2h_minus_d_vanishes => WatanabeCase::D,
            _ => WatanabeCase::None,
        })
    }

    /// Which family of split bundles `O_F(D) ⊕ O_F(2h - D)` with `c2 = 8`
    /// the class belongs to.
    pub fn decomposable_case(
        &self,
        d: &DivisorClass,
        flags: &CohomologyFlags,
    ) -> Result<DecomposableCase, PicardError> {
        let (d2, dh) = self.numerics(d)?;
        if 2 * dh - d2 != 8 {
            return Ok(DecomposableCase::None);
        }
        Ok(match (d2, dh) {
            (0, 4) if flags.d_globally_generated => DecomposableCase::GloballyGeneratedSplit,
            (0, 4) => DecomposableCase::QuarticsSplit,
            (2, 5) | (-2, 3) => DecomposableCase::QuinticCubicSplit,
            (4, 6) | (-4, 2) => DecomposableCase::ExoticSplit,
            _ => DecomposableCase::None,
        })
    }

    /// `χ(F(th)) / r` as a quadratic in `t`:
    /// `2t² + (c1·h / r) t + (2r + c1²/2 - c2) / r`.
    pub fn reduced_hilbert_poly(&self, rank: u32, c1: &DivisorClass, c2: i64) -> Result<ReducedPoly, PicardError> {
        if rank == 0 {
            return Err(PicardError::ZeroRank);
        }
        let r = Rational::from_integer((rank as i64).into());
        let linear = Rational::from_integer(self.degree(c1)?.into()) / &r;
        let constant = Rational::from_integer(self.euler_characteristic(rank, c1, c2)?.into()) / &r;
        Ok([Rational::from_integer(2.into()), linear, constant])
    }

    /// Stability of an extension `0 → O_F(D) → E → O_F(2h - D) → 0` with
    /// `c1(E) = 2h`, `c2(E) = 8`, read off from the destabilizing datum `D`.
    ///
    /// `Dh > 4` is unstable; `Dh = 4` forces `D² = 0` and gives equal reduced
    /// Hilbert polynomials, hence strictly semistable; `Dh < 4` means this
    /// `D` does not destabilize, reported as a stable candidate.
    pub fn stability_classify(&self, d: &DivisorClass) -> Result<StabilityVerdict, PicardError> {
        let (d2, dh) = self.numerics(d)?;
        if 2 * dh - d2 != 8 {
            return Err(PicardError::WrongSecondChern(2 * dh - d2));
        }
        let two_h = 2 * &self.h;
        let sub = self.reduced_hilbert_poly(1, d, 0)?;
        let total = self.reduced_hilbert_poly(2, &two_h, 8)?;
        let mu_sub = Rational::from_integer(dh.into());
        let mu_total = total[1].clone();
        let kind = match mu_sub.cmp(&mu_total) {
            std::cmp::Ordering::Greater => StabilityKind::Unstable,
            std::cmp::Ordering::Less => StabilityKind::StableCandidate,
            std::cmp::Ordering::Equal => match sub[2].cmp(&total[2]) {
                std::cmp::Ordering::Greater => StabilityKind::Unstable,
                std::cmp::Ordering::Equal => StabilityKind::StrictlySemistable,
                std::cmp::Ordering::Less => StabilityKind::StableCandidate,
            },
        };
        Ok(StabilityVerdict { kind, mu_sub, mu_total, reduced_polys: (sub, total) })
    }

    /// `h¹(O_F(2D - 2h)) = -χ(O_F(2D - 2h)) = -(2 + 2(D - h)²)` when `h⁰` and
    /// `h²` vanish; non-split extensions then form a projective space of
    /// dimension one less.
    pub fn extension_family_dim(&self, d: &DivisorClass, flags: &CohomologyFlags) -> Result<i64, PicardError> {
        if !flags.h0_twice_difference_vanishes {
            return Err(PicardError::MissingHypothesis("h0(O(2D-2h)) = h0(O(2h-2D)) = 0"));
        }
        let twice_diff = &(2 * d) - &(2 * &self.h);
        let chi = self.euler_characteristic(1, &twice_diff, 0)?;
        if chi > 0 {
            return Err(PicardError::PositiveEuler(chi));
        }
        Ok(-chi)
    }

    /// S-equivalence of the strictly semistable boundary points: the classes
    /// `D1`, `D2` (both with `Dh = 4`, `D² = 0`) give the same point iff
    /// `D2 = D1` or `D2 = 2h - D1`.
    pub fn s_equivalence_pair(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<bool, PicardError> {
        for d in [d1, d2] {
            let (sq, dh) = self.numerics(d)?;
            if (sq, dh) != (0, 4) {
                return Err(PicardError::NotEllipticQuartic { dh, d2: sq });
            }
        }
        Ok(d2 == d1 || *d2 == self.complement(d1))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LatticeJson { gram: self.gram.clone(), h: self.h.0.clone() }).expect("serializes")
    }

    /// `{"gram": [[4,4],[4,0]], "h": [1,0]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, PicardError> {
        let raw: LatticeJson = serde_json::from_value(value.clone()).map_err(|e| PicardError::Json(e.to_string()))?;
        Self::new(raw.gram, raw.h)
    }
}

/// Sum of two reduced polynomials, coefficientwise.
pub fn add_reduced(a: &ReducedPoly, b: &ReducedPoly) -> ReducedPoly {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn scale_reduced(a: &ReducedPoly, c: i64) -> ReducedPoly {
    let c = Rational::from_integer(c.into());
    [&a[0] * &c, &a[1] * &c, &a[2] * &c]
}

pub fn is_zero_reduced(a: &ReducedPoly) -> bool {
    a.iter().all(Zero::is_zero)
}
