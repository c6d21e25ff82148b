//! Exact algebra for rank-2 arithmetically Cohen–Macaulay bundles with
//! `c1 = 2h`, `c2 = 8` on smooth quartic surfaces in P³.
//!
//! The crate is split along the computational pieces of the classification:
//!
//! * [`algebra`]: rationals, prime fields, forms in `x0..x3`, exact rank and kernels.
//! * [`pfaffian`]: skew-symmetric polynomial matrices, pfaffians, determinants and
//!   the graded shape of the matrices that present these bundles.
//! * [`surface`]: quartic forms, pfaffian / determinantal representations and a
//!   finite-field smoothness probe.
//! * [`schemes`]: reduced point schemes, Hilbert functions, Cayley–Bacharach and the
//!   arithmetically Gorenstein classifier for degree-8 schemes.
//! * [`picard`]: Picard lattice arithmetic, Riemann–Roch and the stability verdicts.
//!
//! Everything is exact; no floating point is used anywhere.

pub mod algebra;
pub mod pfaffian;
pub mod picard;
pub mod schemes;
pub mod surface;

pub use algebra::{
    monomial_basis, poly_parse, AlgebraError, ExactMatrix, Field, ModPolynomial, Monomial, Polynomial, PrimeField,
    Rational, Rationals,
};
pub use pfaffian::{determinant, pfaffian, PfaffianError, PolyMatrix, ShapeReport, SkewPolyMatrix};
pub use picard::{
    CohomologyFlags, DecomposableCase, DivisorClass, PicardError, PicardLattice, StabilityKind, StabilityVerdict,
    WatanabeCase,
};
pub use schemes::{AgReport, AgVerdict, Degree8Class, HilbertProfile, PointScheme, ProjectivePoint, SchemeError};
pub use surface::{QuarticSurface, SmoothnessCertificate, SurfaceError};
