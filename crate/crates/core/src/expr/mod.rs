//! Expression language for ring elements and operators.

pub mod ast;
pub mod eval;
pub mod parser;

pub use ast::Expr;
pub use eval::{evaluate, Evaluation, Value};
pub use parser::parse;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Parses and evaluates `s` as a polynomial whose variables are among `vars`, returned
/// over exactly `vars`.
pub fn parse_poly<S: AsRef<str>>(s: &str, vars: &[S]) -> Result<MultiPoly> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let Value::Poly(f) = evaluate(&parse(s)?)?.value else {
        return Err(Error::InvalidArgument(format!("`{s}` is not a polynomial")));
    };
    if let Some(v) = f.used_vars().into_iter().find(|v| !vars.contains(v)) {
        return Err(Error::InvalidArgument(format!("`{s}` uses `{v}`, which is not among {vars:?}")));
    }
    f.trim_vars().with_vars(&vars)
}
