//! Exact sparse multivariate polynomials and truncated power series.

pub mod coef;
pub mod json;
pub mod multi;
pub mod series;

pub use coef::{coef_big, coef_int, parse_coef, Coef, CoefRing, CoefRingJson};
pub use json::PolyJson;
pub use multi::{var_cmp, Monomial, MultiPoly, PolyEvalRing};
pub use series::{linear_product_coefficient, series_product_coefficient, SeriesTrunc};

use crate::error::Result;

/// Merges the variable lists of two polynomials by name.
pub fn poly_align(a: &MultiPoly, b: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    MultiPoly::align(a, b)
}

pub fn poly_add(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    a.add(b)
}

pub fn poly_mul(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    a.mul(b)
}

pub fn poly_substitute(f: &MultiPoly, assignment: &std::collections::BTreeMap<String, MultiPoly>) -> Result<MultiPoly> {
    f.substitute(assignment)
}

/// Integer-coefficient variable `name` in a polynomial ring over `vars`.
pub fn zvar<S: AsRef<str>>(vars: &[S], name: &str) -> MultiPoly {
    MultiPoly::var(CoefRing::Integers, vars, name).expect("name is among the variables")
}

/// Names `prefix1, ..., prefixN`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}
