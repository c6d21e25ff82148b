//! Reduced zero-dimensional schemes in P³ given by distinct rational points.
//!
//! Hilbert functions are ranks of evaluation matrices; the h-vector is the
//! first difference and its last nonzero index is the socle degree `σ` of a
//! general Artin reduction. A scheme is arithmetically Gorenstein exactly when
//! its Hilbert function is symmetric, `hf(t) + hf(σ-1-t) = deg` for all `t`,
//! and it is Cayley–Bacharach with respect to `O(σ-1)`.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    binomial, format_rational, monomial_basis, parse_rational, AlgebraError, ExactMatrix, Polynomial, Rational,
    Rationals, NVARS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("point {0} has all coordinates zero")]
    ZeroPoint(usize),
    #[error("points {0} and {1} coincide in P3")]
    DuplicatePoint(usize, usize),
    #[error("duplicate twisted cubic parameter {0}")]
    DuplicateParameter(String),
    #[error("expected a scheme of degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("coordinate change is not invertible")]
    SingularTransform,
    #[error("malformed point file: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A point of P³ normalized so that its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint([Rational; NVARS]);

impl ProjectivePoint {
    pub fn new(coords: [Rational; NVARS]) -> Option<Self> {
        let lead = coords.iter().find(|c| !c.is_zero())?.clone();
        Some(Self(coords.map(|c| c / &lead)))
    }

    pub fn from_ints(coords: [i64; NVARS]) -> Option<Self> {
        Self::new(coords.map(|c| Rational::from_integer(c.into())))
    }

    pub fn coords(&self) -> &[Rational; NVARS] {
        &self.0
    }

    /// Image under the linear map `x ↦ M x`.
    pub fn transform(&self, m: &ExactMatrix) -> Option<Self> {
        let v = m.mul_vec(&self.0);
        Self::new(v.try_into().ok()?)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", c.join(":"))
    }
}

#[derive(Serialize, Deserialize)]
struct PointsJson {
    points: Vec<Vec<String>>,
}

/// Finite set of distinct points of P³; its degree is the number of points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointScheme {
    points: Vec<ProjectivePoint>,
}

impl PointScheme {
    pub fn new(points: Vec<ProjectivePoint>) -> Result<Self, SchemeError> {
        let mut seen = std::collections::HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = seen.insert(p.clone(), i) {
                return Err(SchemeError::DuplicatePoint(j, i));
            }
        }
        Ok(Self { points })
    }

    pub fn from_coords(coords: Vec<[Rational; NVARS]>) -> Result<Self, SchemeError> {
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| ProjectivePoint::new(c).ok_or(SchemeError::ZeroPoint(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(points)
    }

    pub fn from_int_coords(coords: &[[i64; NVARS]]) -> Result<Self, SchemeError> {
        Self::from_coords(coords.iter().map(|c| c.map(|v| Rational::from_integer(v.into()))).collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The scheme with point `i` removed.
    pub fn without(&self, i: usize) -> PointScheme {
        let mut points = self.points.clone();
        points.remove(i);
        PointScheme { points }
    }

    /// New point `k` is old point `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> PointScheme {
        PointScheme { points: perm.iter().map(|&k| self.points[k].clone()).collect() }
    }

    /// Applies an invertible projective change of coordinates.
    pub fn transform(&self, m: &ExactMatrix) -> Result<PointScheme, SchemeError> {
        if m.rows() != NVARS || m.cols() != NVARS || m.rank() != NVARS {
            return Err(SchemeError::SingularTransform);
        }
        let points = self
            .points
            .iter()
            .map(|p| p.transform(m).ok_or(SchemeError::SingularTransform))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PointScheme { points })
    }

    /// Rows indexed by `monomial_basis(t)`, columns by the points.
    pub fn evaluation_matrix(&self, t: u32) -> ExactMatrix {
        let basis = monomial_basis(t);
        let mut data = Vec::with_capacity(basis.len() * self.degree());
        for m in &basis {
            for p in &self.points {
                data.push(m.eval(p.coords()));
            }
        }
        ExactMatrix::new(Rationals, basis.len(), self.degree(), data)
    }

    /// `dim_k (S_E)_t`: the number of conditions the points impose on forms of
    /// degree `t`.
    pub fn hilbert_function(&self, t: u32) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.evaluation_matrix(t).rank()
    }

    /// Dimension of the degree-`t` part of the ideal, `C(t+3,3) - hf(t)`.
    pub fn ideal_dimension(&self, t: u32) -> usize {
        binomial(t as u64 + 3, 3) as usize - self.hilbert_function(t)
    }

    /// A basis of the forms of degree `t` vanishing on every point.
    pub fn ideal_basis(&self, t: u32) -> Vec<Polynomial> {
        let basis = monomial_basis(t);
        let conditions = self.evaluation_matrix(t).transpose();
        let kernel = if self.is_empty() {
            ExactMatrix::zeros(Rationals, 0, basis.len()).kernel_basis()
        } else {
            conditions.kernel_basis()
        };
        kernel.iter().map(|v| Polynomial::from_coefficients(&basis, v)).collect()
    }

    /// Hilbert function computed until it reaches the degree, with its first
    /// differences and socle degree.
    pub fn hilbert_profile(&self) -> HilbertProfile {
        let deg = self.degree();
        let mut hf = Vec::new();
        for t in 0.. {
            let v = self.hilbert_function(t);
            hf.push(v);
            if v == deg {
                break;
            }
        }
        HilbertProfile::from_hf(hf)
    }

    /// Leave-one-out test: every `E'` obtained by deleting one point must have
    /// the same degree-`m` ideal as `E`. Negative `m` holds vacuously.
    pub fn cayley_bacharach(&self, m: i64) -> CbReport {
        if m < 0 {
            return CbReport { twist: m, base_dimension: 0, removal_dimensions: vec![0; self.degree()], witness: None };
        }
        let t = m as u32;
        let base = self.ideal_dimension(t);
        let removal_dimensions: Vec<usize> =
            (0..self.degree()).into_par_iter().map(|i| self.without(i).ideal_dimension(t)).collect();
        let witness = removal_dimensions.iter().position(|&d| d != base);
        CbReport { twist: m, base_dimension: base, removal_dimensions, witness }
    }

    /// Arithmetically Gorenstein test: symmetric Hilbert function plus
    /// Cayley–Bacharach for `O(σ-1)`.
    pub fn ag_check(&self) -> AgReport {
        let profile = self.hilbert_profile();
        let Some(sigma) = profile.socle_degree else {
            return AgReport {
                verdict: AgVerdict::NotAg,
                profile,
                symmetric: false,
                cayley_bacharach: None,
                failure: Some(AgFailure::EmptyScheme),
            };
        };
        let symmetric = gorenstein_symmetry(&profile, self.degree());
        let cb = self.cayley_bacharach(sigma as i64 - 1);
        let failure = if !symmetric {
            Some(AgFailure::Symmetry)
        } else {
            cb.witness.map(|point| AgFailure::CayleyBacharach { point })
        };
        AgReport {
            verdict: if failure.is_none() { AgVerdict::Ag } else { AgVerdict::NotAg },
            profile,
            symmetric,
            cayley_bacharach: Some(cb),
            failure,
        }
    }

    /// Sorts a degree-8 scheme into the cases of the classification: contained
    /// in a plane, not aG, complete intersection of three quadrics (`n = 4`),
    /// or quadrics cutting out a curve (twisted cubic, `n = 6`).
    pub fn classify_degree8(&self) -> Result<ClassifyReport, SchemeError> {
        if self.degree() != 8 {
            return Err(SchemeError::WrongDegree { expected: 8, found: self.degree() });
        }
        if self.hilbert_function(1) < 4 {
            return Ok(ClassifyReport { class: Degree8Class::PlaneExcluded, ag: None, quotient_values: vec![] });
        }
        let ag = self.ag_check();
        if ag.verdict == AgVerdict::NotAg {
            return Ok(ClassifyReport { class: Degree8Class::NotAg, ag: Some(ag), quotient_values: vec![] });
        }
        let quadrics = self.ideal_basis(2);
        let quotient_values: Vec<(u32, usize)> = (3..=5).map(|t| (t, quotient_hilbert_value(&quadrics, t))).collect();
        let cut_out = quotient_values.windows(2).any(|w| w[0].1 == 8 && w[1].1 == 8);
        let class = if cut_out { Degree8Class::N4Type } else { Degree8Class::N6Type };
        Ok(ClassifyReport { class, ag: Some(ag), quotient_values })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let points = self.points.iter().map(|p| p.0.iter().map(format_rational).collect()).collect();
        serde_json::to_value(PointsJson { points }).expect("points serialize")
    }

    /// `{"points": [["1","0","0","1"], ...]}`; other keys are ignored.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, SchemeError> {
        let raw: PointsJson = serde_json::from_value(value.clone()).map_err(|e| SchemeError::Json(e.to_string()))?;
        let coords = raw
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let v = p.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
                <[Rational; NVARS]>::try_from(v)
                    .map_err(|_| SchemeError::Json(format!("point {i} does not have 4 coordinates")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_coords(coords)
    }
}

/// `C(t+3,3) - dim (Q)_t` for the ideal generated by `forms` (all quadrics).
fn quotient_hilbert_value(quadrics: &[Polynomial], t: u32) -> usize {
    let target = monomial_basis(t);
    let multipliers = monomial_basis(t - 2);
    let mut rows = Vec::with_capacity(multipliers.len() * quadrics.len());
    for q in quadrics {
        for m in &multipliers {
            let product = q * &Polynomial::term(*m, Rational::one());
            rows.push(product.coefficients_in(&target).expect("product has degree t"));
        }
    }
    let span = ExactMatrix::from_rows(Rationals, target.len(), rows).expect("rectangular").rank();
    target.len() - span
}

/// Hilbert function, h-vector and socle degree of a zero-dimensional scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertProfile {
    pub hf: Vec<usize>,
    pub hvec: Vec<i64>,
    pub socle_degree: Option<usize>,
}

impl HilbertProfile {
    pub fn from_hf(hf: Vec<usize>) -> Self {
        let hvec: Vec<i64> =
            hf.iter().enumerate().map(|(t, &v)| v as i64 - if t == 0 { 0 } else { hf[t - 1] as i64 }).collect();
        let socle_degree = hvec.iter().rposition(|&h| h != 0);
        Self { hf, hvec, socle_degree }
    }

    /// Profile with a prescribed h-vector (`hf` is its running sum).
    pub fn from_hvec(hvec: &[i64]) -> Self {
        let hf = hvec
            .iter()
            .scan(0i64, |acc, &h| {
                *acc += h;
                Some((*acc).max(0) as usize)
            })
            .collect();
        Self::from_hf(hf)
    }

    /// Value where the Hilbert function stabilizes.
    pub fn degree(&self) -> usize {
        self.hf.last().copied().unwrap_or(0)
    }

    /// `hf(t)` for every integer `t`, constant past the computed range.
    pub fn value(&self, t: i64) -> usize {
        if t < 0 {
            0
        } else {
            self.hf.get(t as usize).copied().unwrap_or_else(|| self.degree())
        }
    }

    pub fn is_palindromic(&self) -> bool {
        let Some(s) = self.socle_degree else { return false };
        let h = &self.hvec[..=s];
        h.iter().eq(h.iter().rev())
    }
}

/// `hf(t) + hf(σ-1-t) = degree` for every integer `t`. Outside
/// `-1..=σ` both sides are forced once `hf` stabilizes at `degree`.
pub fn gorenstein_symmetry(profile: &HilbertProfile, degree: usize) -> bool {
    let Some(sigma) = profile.socle_degree else { return false };
    if profile.degree() != degree {
        return false;
    }
    let sigma = sigma as i64;
    (-1..=sigma).all(|t| profile.value(t) + profile.value(sigma - 1 - t) == degree)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CbReport {
    pub twist: i64,
    pub base_dimension: usize,
    /// Ideal dimension after removing each point in turn.
    pub removal_dimensions: Vec<usize>,
    /// First point whose removal enlarges the ideal.
    pub witness: Option<usize>,
}

impl CbReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AgVerdict {
    #[serde(rename = "aG")]
    Ag,
    #[serde(rename = "not-aG")]
    NotAg,
}

impl AgVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Ag => "aG",
            Self::NotAg => "not-aG",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum AgFailure {
    EmptyScheme,
    Symmetry,
    CayleyBacharach { point: usize },
}

impl fmt::Display for AgFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyScheme => write!(f, "empty scheme"),
            Self::Symmetry => write!(f, "Hilbert function is not symmetric"),
            Self::CayleyBacharach { point } => {
                write!(f, "Cayley-Bacharach fails: removing point {} enlarges the ideal", point + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgReport {
    pub verdict: AgVerdict,
    pub profile: HilbertProfile,
    pub symmetric: bool,
    pub cayley_bacharach: Option<CbReport>,
    pub failure: Option<AgFailure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Degree8Class {
    #[serde(rename = "plane-excluded")]
    PlaneExcluded,
    #[serde(rename = "n4-type")]
    N4Type,
    #[serde(rename = "n6-type")]
    N6Type,
    #[serde(rename = "not-aG")]
    NotAg,
}

impl Degree8Class {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::PlaneExcluded => "plane-excluded",
            Self::N4Type => "n4-type",
            Self::N6Type => "n6-type",
            Self::NotAg => "not-aG",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub class: Degree8Class,
    pub ag: Option<AgReport>,
    /// `(t, C(t+3,3) - dim (quadrics)_t)` for `t = 3, 4, 5`.
    pub quotient_values: Vec<(u32, usize)>,
}

/// The eight points `(a, b, c, 1)`, `a, b, c ∈ {0, 1}`: the complete
/// intersection of `x0(x0-x3)`, `x1(x1-x3)`, `x2(x2-x3)`.
pub fn cube_points() -> PointScheme {
    let mut coords = Vec::with_capacity(8);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                coords.push([a, b, c, 1]);
            }
        }
    }
    PointScheme::from_int_coords(&coords).expect("cube points are distinct")
}

/// Points `(1, t, t², t³)` on the twisted cubic.
pub fn twisted_cubic_points(params: &[Rational]) -> Result<PointScheme, SchemeError> {
    let mut seen = HashSet::new();
    for t in params {
        if !seen.insert(t) {
            return Err(SchemeError::DuplicateParameter(format_rational(t)));
        }
    }
    PointScheme::from_coords(params.iter().map(|t| [Rational::one(), t.clone(), t * t, t * t * t]).collect())
}

pub fn twisted_cubic_points_int(params: &[i64]) -> Result<PointScheme, SchemeError> {
    twisted_cubic_points(&params.iter().map(|&t| Rational::from_integer(t.into())).collect::<Vec<_>>())
}

/// Points `(1, t, 0, 0)` on the line `x2 = x3 = 0`.
pub fn collinear_points(count: usize) -> PointScheme {
    let coords: Vec<[i64; NVARS]> = (0..count as i64).map(|t| [1, t, 0, 0]).collect();
    PointScheme::from_int_coords(&coords).expect("distinct")
}

/// Seeded points with small integer coordinates in the affine chart `x3 = 1`.
pub fn random_points(seed: u64, count: usize) -> PointScheme {
    sample_points(seed, count, |rng| [rng.gen_range(-30..=30), rng.gen_range(-30..=30), rng.gen_range(-30..=30), 1])
}

/// Seeded points of the plane `x3 = 0`.
pub fn random_coplanar_points(seed: u64, count: usize) -> PointScheme {
    sample_points(seed, count, |rng| [1, rng.gen_range(-30..=30), rng.gen_range(-30..=30), 0])
}

fn sample_points(seed: u64, count: usize, mut draw: impl FnMut(&mut ChaCha8Rng) -> [i64; NVARS]) -> PointScheme {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let p = ProjectivePoint::from_ints(draw(&mut rng)).expect("nonzero by construction");
        if seen.insert(p.clone()) {
            points.push(p);
        }
    }
    PointScheme { points }
}

/// Seeded invertible 4x4 integer matrix for coordinate changes.
pub fn random_coordinate_change(seed: u64) -> ExactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let vals: Vec<i64> = (0..16).map(|_| rng.gen_range(-5..=5)).collect();
        let m = ExactMatrix::from_integers(4, 4, &vals);
        if m.rank() == 4 {
            return m;
        }
    }
}
