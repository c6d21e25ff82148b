//! Quartic surfaces, their pfaffian and determinantal representations, and a
//! finite-field smoothness probe.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{format_rational, poly_parse, AlgebraError, ModPolynomial, Polynomial, Rational, NVARS};
use crate::pfaffian::{determinant, pfaffian, PfaffianError, PolyMatrix, ShapeViolation, SkewPolyMatrix};
use crate::schemes::PointScheme;

/// Primes above this bound make `P³(F_p)` too large to enumerate.
pub const MAX_PROBE_PRIME: u64 = 2003;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("not a quartic form: {0}")]
    NotQuartic(String),
    #[error("input {index} must be a {expected} form or zero")]
    WrongDegree { index: String, expected: &'static str },
    #[error("matrix is not shape-valid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Shape(Vec<ShapeViolation>),
    #[error("prime {0} is too large to enumerate P3 over (limit {MAX_PROBE_PRIME})")]
    ProbeTooLarge(u64),
    #[error("the pfaffian of the block matrix is not ±det(A); got {0}")]
    BlockIdentity(String),
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `F = {f = 0}` for a nonzero quartic form `f` over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticSurface {
    f: Polynomial,
}

impl QuarticSurface {
    pub fn new(f: Polynomial) -> Result<Self, SurfaceError> {
        if f.homogeneous_degree() != Some(4) {
            return Err(SurfaceError::NotQuartic(f.to_string()));
        }
        Ok(Self { f })
    }

    pub fn parse(text: &str) -> Result<Self, SurfaceError> {
        Self::new(poly_parse(text, None)?)
    }

    pub fn fermat() -> Self {
        Self::new((0..NVARS).map(|i| Polynomial::var(i).pow(4)).sum()).expect("quartic")
    }

    pub fn equation(&self) -> &Polynomial {
        &self.f
    }
}

/// The 4×4 skew matrix with upper entries `(q1, q3, q5, q6, -q4, q2)` at
/// `(1,2), (1,3), (1,4), (2,3), (2,4), (3,4)`, whose pfaffian is
/// `q1 q2 + q3 q4 + q5 q6`.
pub fn pfaffian_rep_from_quadrics(q: &[Polynomial; 6]) -> Result<SkewPolyMatrix, SurfaceError> {
    for (k, qk) in q.iter().enumerate() {
        if !qk.is_form_of_degree(2) {
            return Err(SurfaceError::WrongDegree { index: format!("q{}", k + 1), expected: "quadratic" });
        }
    }
    let upper = vec![q[0].clone(), q[2].clone(), q[4].clone(), q[5].clone(), -&q[3], q[1].clone()];
    Ok(SkewPolyMatrix::from_upper(4, upper).with_shape(vec![0; 4]))
}

/// `q1 q2 + q3 q4 + q5 q6`.
pub fn quadric_product_sum(q: &[Polynomial; 6]) -> Polynomial {
    &(&(&q[0] * &q[1]) + &(&q[2] * &q[3])) + &(&q[4] * &q[5])
}

#[derive(Debug, Clone, Copy)]
pub enum Representation<'a> {
    Pfaffian(&'a SkewPolyMatrix),
    Determinant(&'a PolyMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// `pf(M) = λ f` (or `det(M) = λ f`) with `λ ≠ 0`.
    Proportional {
        lambda: Rational,
    },
    Mismatch {
        reason: String,
        computed: Option<Polynomial>,
    },
}

impl VerifyOutcome {
    pub fn lambda(&self) -> Option<&Rational> {
        match self {
            Self::Proportional { lambda } => Some(lambda),
            Self::Mismatch { .. } => None,
        }
    }
}

impl fmt::Display for VerifyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Proportional { lambda } => write!(f, "represents F with lambda = {}", format_rational(lambda)),
            Self::Mismatch { reason, .. } => write!(f, "mismatch: {reason}"),
        }
    }
}

/// Checks that the pfaffian (or determinant) of a matrix is a nonzero rational
/// multiple of the equation of `surface`.
pub fn verify_representation(rep: Representation<'_>, surface: &QuarticSurface) -> Result<VerifyOutcome, SurfaceError> {
    let computed = match rep {
        Representation::Pfaffian(m) => {
            if m.shape().is_some() {
                let report = m.validate_shape();
                if !report.is_valid() {
                    return Err(SurfaceError::Shape(report.violations));
                }
            }
            pfaffian(m)?
        }
        Representation::Determinant(a) => {
            if a.rows() != a.cols() {
                return Err(PfaffianError::NotSquare { rows: a.rows(), cols: a.cols() }.into());
            }
            if let Some(d) = uniform_entry_degree(a) {
                if d * a.rows() as u32 != 4 {
                    return Ok(VerifyOutcome::Mismatch {
                        reason: format!(
                            "a {n}x{n} matrix of degree-{d} forms has a determinant of degree {}, not 4",
                            d * a.rows() as u32,
                            n = a.rows()
                        ),
                        computed: None,
                    });
                }
            }
            determinant(a)?
        }
    };
    Ok(compare(computed, surface))
}

fn uniform_entry_degree(a: &PolyMatrix) -> Option<u32> {
    let mut degrees = a.entries().filter(|(_, _, p)| !p.is_zero()).map(|(_, _, p)| p.homogeneous_degree());
    let first = degrees.next()??;
    degrees.all(|d| d == Some(first)).then_some(first)
}

fn compare(computed: Polynomial, surface: &QuarticSurface) -> VerifyOutcome {
    if computed.is_zero() {
        return VerifyOutcome::Mismatch { reason: "vanishes identically".into(), computed: Some(computed) };
    }
    match computed.homogeneous_degree() {
        Some(4) => {}
        Some(d) => {
            return VerifyOutcome::Mismatch {
                reason: format!("computed form has degree {d}, not 4"),
                computed: Some(computed),
            }
        }
        None => {
            return VerifyOutcome::Mismatch {
                reason: "computed polynomial is not homogeneous".into(),
                computed: Some(computed),
            }
        }
    }
    match computed.ratio_to(surface.equation()) {
        Some(lambda) => VerifyOutcome::Proportional { lambda },
        None => VerifyOutcome::Mismatch { reason: "not proportional to f".into(), computed: Some(computed) },
    }
}

/// `Φ = [[B, A], [-Aᵀ, 0]]` together with the identity `pf(Φ) = ±det(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPresentation {
    pub phi: SkewPolyMatrix,
    pub pfaffian: Polynomial,
    pub det_a: Polynomial,
    /// `pf(Φ) = sign · det(A)`; `None` when `det(A) ≡ 0`.
    pub sign: Option<i8>,
}

impl BlockPresentation {
    /// `det(A) ≡ 0`: the block matrix does not define a surface.
    pub fn is_degenerate(&self) -> bool {
        self.det_a.is_zero()
    }
}

/// Assembles the `n = 8` presentation matrix from a 4×4 skew block `B` of
/// quadrics and a 4×4 block `A` of linear forms.
pub fn build_phi_n8(b: &SkewPolyMatrix, a: &PolyMatrix) -> Result<BlockPresentation, SurfaceError> {
    if b.order() != 4 {
        return Err(SurfaceError::WrongDegree { index: "B".into(), expected: "4x4 skew quadratic" });
    }
    if a.rows() != 4 || a.cols() != 4 {
        return Err(SurfaceError::WrongDegree { index: "A".into(), expected: "4x4 linear" });
    }
    let mut phi = SkewPolyMatrix::zeros(8);
    for i in 0..4 {
        for j in i + 1..4 {
            let e = b.entry(i, j);
            if !e.is_form_of_degree(2) {
                return Err(SurfaceError::WrongDegree {
                    index: format!("B({},{})", i + 1, j + 1),
                    expected: "quadratic",
                });
            }
            phi.set(i, j, e)?;
        }
    }
    for (i, j, e) in a.entries() {
        if !e.is_form_of_degree(1) {
            return Err(SurfaceError::WrongDegree { index: format!("A({},{})", i + 1, j + 1), expected: "linear" });
        }
        phi.set(i, 4 + j, e.clone())?;
    }
    let phi = phi.with_shape(vec![0, 0, 0, 0, 1, 1, 1, 1]);
    let pf = pfaffian(&phi)?;
    let det_a = determinant(a)?;
    let sign = if det_a.is_zero() {
        if !pf.is_zero() {
            return Err(SurfaceError::BlockIdentity(pf.to_string()));
        }
        None
    } else if pf == det_a {
        Some(1)
    } else if pf == -&det_a {
        Some(-1)
    } else {
        return Err(SurfaceError::BlockIdentity(pf.to_string()));
    };
    Ok(BlockPresentation { phi, pfaffian: pf, det_a, sign })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PrimeVerdict {
    /// No point of `F(F_p)` has all four partials vanishing.
    SmoothModP { points_on_surface: u64 },
    /// A point of `P³(F_p)` where `f` and every partial vanish.
    Singular { witness: [u64; NVARS] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessCertificate {
    pub verdicts: Vec<(u64, PrimeVerdict)>,
}

impl SmoothnessCertificate {
    pub fn primes_checked(&self) -> Vec<u64> {
        self.verdicts.iter().map(|(p, _)| *p).collect()
    }

    /// Smooth reduction at some good prime certifies smoothness over Q
    /// (certified mod p, not a proof over the algebraic closure in general).
    pub fn certified_smooth(&self) -> bool {
        self.verdicts.iter().any(|(_, v)| matches!(v, PrimeVerdict::SmoothModP { .. }))
    }

    pub fn singular_witnesses(&self) -> Vec<(u64, [u64; NVARS])> {
        self.verdicts
            .iter()
            .filter_map(|(p, v)| match v {
                PrimeVerdict::Singular { witness } => Some((*p, *witness)),
                PrimeVerdict::SmoothModP { .. } => None,
            })
            .collect()
    }

    pub fn merge(mut self, other: SmoothnessCertificate) -> SmoothnessCertificate {
        self.verdicts.extend(other.verdicts);
        self
    }
}

/// For each prime, enumerates `P³(F_p)` and looks for a point where `f` and
/// its four partial derivatives all vanish.
pub fn smoothness_probe(surface: &QuarticSurface, primes: &[u64]) -> Result<SmoothnessCertificate, SurfaceError> {
    let mut verdicts = Vec::with_capacity(primes.len());
    for &p in primes {
        if p > MAX_PROBE_PRIME {
            return Err(SurfaceError::ProbeTooLarge(p));
        }
        let reduced = surface.equation().reduce_mod_p(p)?;
        if reduced.is_zero() {
            return Err(AlgebraError::BadPrime { p, reason: "f vanishes identically mod p".into() }.into());
        }
        verdicts.push((p, probe_prime(&reduced)));
    }
    Ok(SmoothnessCertificate { verdicts })
}

struct FastForm {
    p: u64,
    terms: Vec<([usize; NVARS], u64)>,
}

impl FastForm {
    fn new(f: &ModPolynomial) -> Self {
        let terms = f.terms().iter().map(|(m, c)| (m.exponents().map(|e| e as usize), *c)).collect();
        Self { p: f.modulus(), terms }
    }

    fn eval(&self, powers: &[[u64; 5]; NVARS]) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (e, c)| {
            let mut v = *c;
            for k in 0..NVARS {
                v = v * powers[k][e[k]] % p;
            }
            (acc + v) % p
        })
    }
}

fn probe_prime(f: &ModPolynomial) -> PrimeVerdict {
    let p = f.modulus();
    let form = FastForm::new(f);
    let partials: Vec<FastForm> = (0..NVARS).map(|i| FastForm::new(&f.partial(i))).collect();
    // Normalized points: leading coordinate at `lead` equals 1, earlier ones 0.
    // The outer index runs over (lead, first free coordinate) so that work is
    // split evenly; results are reassembled in enumeration order.
    let slices: Vec<(usize, u64)> = (0..NVARS)
        .flat_map(|lead| {
            let width = if lead + 1 < NVARS { p } else { 1 };
            (0..width).map(move |a| (lead, a))
        })
        .collect();
    let results: Vec<(u64, Option<[u64; NVARS]>)> = slices
        .par_iter()
        .map(|&(lead, a)| {
            let mut count = 0u64;
            let mut first = None;
            let free = NVARS - lead - 1;
            let inner = if free >= 1 { p.pow(free as u32 - 1) } else { 1 };
            for idx in 0..inner {
                let mut pt = [0u64; NVARS];
                pt[lead] = 1;
                if free >= 1 {
                    pt[lead + 1] = a;
                    let mut rest = idx;
                    for k in (lead + 2..NVARS).rev() {
                        pt[k] = rest % p;
                        rest /= p;
                    }
                }
                let powers = power_table(&pt, p);
                if form.eval(&powers) != 0 {
                    continue;
                }
                count += 1;
                if first.is_none() && partials.iter().all(|d| d.eval(&powers) == 0) {
                    first = Some(pt);
                }
            }
            (count, first)
        })
        .collect();
    match results.iter().find_map(|(_, w)| *w) {
        Some(witness) => PrimeVerdict::Singular { witness },
        None => PrimeVerdict::SmoothModP { points_on_surface: results.iter().map(|(c, _)| c).sum() },
    }
}

fn power_table(pt: &[u64; NVARS], p: u64) -> [[u64; 5]; NVARS] {
    let mut t = [[1u64 % p; 5]; NVARS];
    for k in 0..NVARS {
        for e in 1..5 {
            t[k][e] = t[k][e - 1] * pt[k] % p;
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnSurfaceReport {
    /// `(index, f(point))` for every point off the surface.
    pub offenders: Vec<(usize, Rational)>,
}

impl OnSurfaceReport {
    pub fn all_on_surface(&self) -> bool {
        self.offenders.is_empty()
    }
}

pub fn points_on_surface(scheme: &PointScheme, surface: &QuarticSurface) -> OnSurfaceReport {
    let offenders = scheme
        .points()
        .iter()
        .enumerate()
        .map(|(i, pt)| (i, surface.equation().eval(pt.coords())))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    OnSurfaceReport { offenders }
}

/// Unit used by the determinantal checks: `λ = ±1`.
pub fn is_unit_sign(lambda: &Rational) -> bool {
    lambda.is_one() || (-lambda.clone()).is_one()
}
