//! Exact construction and verification of finite matrix, truncated Fock and
//! oscillator representations of the Witten-type deformed osp(1/2) algebra.
//!
//! The base field is Q(q), the rational functions in the deformation
//! parameter `q`, extended by formal square roots. Everything is computed
//! exactly; numeric evaluation at a point q0 is a separate cross-check.
//!
//! Layout:
//! - [`exact`]: rationals, polynomials, rational functions, radical scalars
//! - [`algebra`]: matrices, deformed brackets, relation catalogs, residual checks
//! - [`matrix_rep`]: odd-dimensional matrix representations
//! - [`fock`]: lowest-weight representations from the ladder recurrences
//! - [`oscillator`]: deformed oscillator, its osp realization, Jackson derivative
//! - [`cli`]: command-line front end

pub mod algebra;
pub mod cli;
pub mod exact;
pub mod expr;
pub mod fock;
pub mod matrix_rep;
pub mod oscillator;
pub mod ring;

pub use algebra::{
    check_relations, qbracket, relation_catalog, rescale_bosonic, BracketSpec, CatalogKind, Gen,
    GeneratorSet, LabeledMatrices, Matrix, Relation, ResidualReport, Source,
};
pub use exact::{eval_numeric, EvalError, Poly, QPoint, RadicandTable, RatFunc, Scalar};
pub use ring::{Field, Ring};

/// Exact rational number.
pub type RatQ = num_rational::BigRational;
/// Polynomial in q over the rationals.
pub type PolyQ = Poly<RatQ>;
/// Reduced rational function in q; the universal coefficient type.
pub type RatFuncQ = RatFunc;
pub use algebra::GenMatrix;
/// Numeric matrix obtained by specializing q.
pub type NumMatrix = Matrix<num_complex::Complex64>;
