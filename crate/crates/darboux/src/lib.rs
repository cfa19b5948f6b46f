//! Exact symbolic analysis of planar polynomial vector fields.
//!
//! Given a derivation D = A dX + B dY with integer coefficients, this
//! crate computes irreducible Darboux polynomials through the extactic
//! determinant, decides existence of (and constructs) rational first
//! integrals of bounded degree, and solves the linear steps of the
//! Prelle-Singer procedure for integrating factors.  All arithmetic is
//! exact; there is no floating point anywhere.
//!
//! The runnable examples under `examples/` walk through each major
//! capability; the `darboux` binary exposes the same operations on
//! system files.

pub mod darboux;
pub mod derivation;
pub mod extactic;
pub mod error;
pub mod factor;
pub mod gcd;
pub mod linalg;
pub mod modp;
pub mod output;
pub mod parse;
pub mod poly;
pub mod prellesinger;
pub mod ratfirstint;
pub mod unipoly;

pub use darboux::{darboux_count_threshold, lagutinskii_pereira, DarbouxOutcome, DarbouxReport};
pub use derivation::{
    gen_exponential_example, gen_linear_example, AbsoluteIrreducibility, DarbouxCertificate,
    Derivation,
};
pub use extactic::{
    degree_bound, extactic_curve, extactic_matrix, extactic_reduced, height_bound,
    minimal_null_degree, ExtacticCurve, MonomialBasis,
};
pub use factor::{
    count_absolute_factors, factor_bivariate, factor_univariate, is_squarefree,
    squarefree_decompose, Factorization,
};
pub use prellesinger::{
    inverse_integrating_factor, solve_integrating_factor, solve_log_derivative,
    PowerProductCertificate, ProductKind,
};
pub use ratfirstint::{
    kernel_of_cofactor_map, rat_first_int, verify_first_integral, CofactorMapMatrix,
    FirstIntegralOutcome, RationalFirstIntegral,
};
pub use error::{Error, Result};
pub use linalg::{AffineOutcome, RatMatrix};
pub use parse::{parse_polynomial, parse_system, ParseError, ParsedSystem};
pub use poly::{BiPoly, Monomial};
