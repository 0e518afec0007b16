use num_bigint::BigInt;
use num_rational::BigRational;

use crate::binomial::IntValuedPoly;
use crate::error::{Error, Result};
use crate::expr::{evaluate, parse, Evaluation, Value};
use crate::finite_algebra::{FiniteAlgebra, FiniteAlgebraJson};
use crate::poly::{parse_coef, CoefRing, MultiPoly};

pub fn eval_str(s: &str) -> Result<Evaluation> {
    evaluate(&parse(s)?)
}

/// An integer-valued polynomial from an expression in `x` (or a `binom(...)` value).
pub fn binomial_arg(s: &str) -> Result<IntValuedPoly> {
    match eval_str(s)?.value {
        Value::Binomial(f) => Ok(f),
        Value::Poly(f) => {
            let used = f.used_vars();
            if used.iter().any(|v| v != "x") {
                return Err(Error::InvalidArgument(format!("expected a polynomial in x, got {f}")));
            }
            IntValuedPoly::from_monomial(&f.trim_vars().with_vars(&["x"])?.change_ring(CoefRing::Rationals)?)
        }
        v => Err(Error::InvalidArgument(format!("expected a polynomial in x, got a {}", v.kind()))),
    }
}

/// `[a, b, ...]`, `a,b,...`, optionally followed by `@p`.
pub fn coordinate_list(s: &str) -> Result<(Vec<BigRational>, Option<u64>)> {
    let s = s.trim();
    let (body, p) = match s.rsplit_once('@') {
        Some((b, p)) => {
            let p = p.trim().parse::<u64>().map_err(|_| Error::InvalidArgument(format!("bad prime in `{s}`")))?;
            (b.trim(), Some(p))
        }
        None => (s, None),
    };
    let body = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).unwrap_or(body);
    if body.trim().is_empty() {
        return Err(Error::InvalidArgument(format!("`{s}` has no coordinates")));
    }
    let coords = body
        .split(',')
        .map(|c| {
            parse_coef(c.trim()).map_err(|_| Error::InvalidArgument(format!("bad coordinate `{}` in `{s}`", c.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((coords, p))
}

pub fn integer_list(s: &str) -> Result<(Vec<BigInt>, Option<u64>)> {
    let (coords, p) = coordinate_list(s)?;
    let ints = coords
        .into_iter()
        .map(|q| {
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(Error::InvalidArgument(format!("coordinate {q} in `{s}` is not an integer")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ints, p))
}

/// A relation or modulus as a polynomial in the given variables.
pub fn poly_in(s: &str, vars: &[String]) -> Result<MultiPoly> {
    crate::expr::parse_poly(s, vars)
}

pub fn load_algebra(path: &std::path::Path) -> Result<FiniteAlgebra> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let json: FiniteAlgebraJson = serde_json::from_str(&text)?;
    FiniteAlgebra::try_from(&json)
}
