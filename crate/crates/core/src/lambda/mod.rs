//! λ-ring machinery: universal structure polynomials, Adams operations, the weight
//! filtration of the free λ-ring, and truncated big Witt vectors.

pub mod bigwitt;
pub mod filtration;
pub mod tables;
pub mod universal;

pub use bigwitt::{bigwitt_add, bigwitt_ghost, bigwitt_lambda, bigwitt_mul, BigWitt, BigWittElement, BigWittJson};
pub use filtration::{filtration_basis, graded_piece, lambda_weight, LambdaMonomial};
pub use tables::{comp_polynomial, mult_polynomial, LambdaTables};
pub use universal::{
    adams_polynomial, comp_generating_coefficient, mult_generating_coefficient, LambdaLimits, UniversalCompPoly,
    UniversalMultPoly,
};
