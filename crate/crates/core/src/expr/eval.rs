//! Evaluation of expressions, routed by value type: Witt literals go to p-typical Witt
//! vectors over `Z`, `binom` produces integer-valued polynomials, everything else is a
//! polynomial over `Q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::json;

use crate::arith::{binomial, is_prime};
use crate::binomial::{BinomialRing, IntValuedPoly};
use crate::delta::{BinomialLift, FrobeniusLift, PolyLift};
use crate::error::{Error, Result};
use crate::modular::IntegerRing;
use crate::poly::{coef_big, var_cmp, CoefRing, MultiPoly};
use crate::ring::CommRing;
use crate::symfunc::elementary_symmetric;
use crate::witt::WittRing;

use super::ast::Expr;

pub const MAX_EVAL_DEGREE: u64 = 2048;
pub const MAX_WITT_LEN: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Poly(MultiPoly),
    Binomial(IntValuedPoly),
    Witt { p: u64, coords: Vec<BigInt> },
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Binomial(_) => "binomial",
            Value::Witt { .. } => "witt",
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Poly(f) => f.to_string(),
            Value::Binomial(f) => f.to_string(),
            Value::Witt { p, coords } => {
                let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
                format!("[{}]@{p}", parts.join(","))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Poly(f) => f.to_json_value(),
            Value::Binomial(f) => serde_json::to_value(f.to_json()).expect("serializable"),
            Value::Witt { p, coords } => json!({
                "p": p,
                "n": coords.len(),
                "coords": coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Result of evaluating an expression, with the identifiers that were read as variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: Value,
    pub free_variables: Vec<String>,
}

pub fn evaluate(e: &Expr) -> Result<Evaluation> {
    let mut vars = e.free_variables();
    vars.sort_by(|a, b| var_cmp(a, b));
    let ev = Evaluator { vars: vars.clone() };
    let value = match ev.eval(e)? {
        Value::Poly(f) => {
            let integral = f.terms().all(|(_, c)| c.is_integer());
            Value::Poly(if integral { f.change_ring(CoefRing::Integers)? } else { f })
        }
        v => v,
    };
    Ok(Evaluation { value, free_variables: vars })
}

struct Evaluator {
    vars: Vec<String>,
}

fn mismatch(op: &str, a: &Value, b: &Value) -> Error {
    Error::RingMismatch(format!("cannot {op} a {} and a {}", a.kind(), b.kind()))
}

fn check_degree(f: &MultiPoly) -> Result<()> {
    if f.total_degree() > MAX_EVAL_DEGREE {
        return Err(Error::ResourceLimit(format!("degree {} exceeds {MAX_EVAL_DEGREE}", f.total_degree())));
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

impl Evaluator {
    fn constant(&self, q: BigRational) -> Result<MultiPoly> {
        MultiPoly::constant(CoefRing::Rationals, &self.vars, &q)
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        Ok(match e {
            Expr::Int(n) => Value::Poly(self.constant(coef_big(n.clone()))?),
            Expr::Rational(q) => Value::Poly(self.constant(q.clone())?),
            Expr::Var(v) => Value::Poly(MultiPoly::var(CoefRing::Rationals, &self.vars, v)?),
            Expr::Neg(a) => match self.eval(a)? {
                Value::Poly(f) => Value::Poly(f.neg()),
                Value::Binomial(f) => Value::Binomial(BinomialRing.neg(&f)),
                Value::Witt { p, coords } => {
                    let r = witt_ring(p, coords.len())?;
                    Value::Witt { p, coords: r.try_neg(&coords)? }
                }
            },
            Expr::Add(a, b) => self.binary(Op::Add, self.eval(a)?, self.eval(b)?)?,
            Expr::Sub(a, b) => self.binary(Op::Sub, self.eval(a)?, self.eval(b)?)?,
            Expr::Mul(a, b) => self.binary(Op::Mul, self.eval(a)?, self.eval(b)?)?,
            Expr::Pow(a, n) => {
                let base = self.eval(a)?;
                let d = match &base {
                    Value::Poly(f) => f.total_degree(),
                    Value::Binomial(f) => f.degree().unwrap_or(0) as u64,
                    Value::Witt { .. } => 0,
                };
                check_degree_bound(d.saturating_mul(u64::from(*n)))?;
                let mut acc = self.one_like(&base)?;
                let mut sq = base;
                let mut k = *n;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = self.binary(Op::Mul, acc, sq.clone())?;
                    }
                    k >>= 1;
                    if k > 0 {
                        sq = self.binary(Op::Mul, sq.clone(), sq)?;
                    }
                }
                acc
            }
            Expr::Lambda(n, a) => match self.eval(a)? {
                Value::Binomial(f) => Value::Binomial(f.lambda(*n as usize)?),
                Value::Poly(f) => Value::Poly(self.rank_one_lambda(*n as usize, &f)?),
                w @ Value::Witt { .. } => {
                    return Err(Error::Unsupported(format!("lambda is not defined on a {}", w.kind())))
                }
            },
            Expr::Psi(n, a) => {
                if *n == 0 {
                    return Err(Error::InvalidArgument("Adams operations are indexed from 1".into()));
                }
                match self.eval(a)? {
                    Value::Binomial(f) => Value::Binomial(f.adams(*n as usize)?),
                    Value::Poly(f) => {
                        let images: BTreeMap<String, MultiPoly> = self
                            .vars
                            .iter()
                            .map(|v| Ok((v.clone(), MultiPoly::var(CoefRing::Rationals, &self.vars, v)?.pow(*n))))
                            .collect::<Result<_>>()?;
                        check_degree_bound(f.total_degree() * u64::from(*n))?;
                        Value::Poly(f.substitute(&images)?)
                    }
                    Value::Witt { p, coords } => Value::Witt { p, coords: witt_psi(p, *n, coords)? },
                }
            }
            Expr::Binom(a, n) => {
                let f = match self.eval(a)? {
                    Value::Binomial(f) => f,
                    Value::Poly(f) => self
                        .as_binomial(&f)?
                        .ok_or_else(|| Error::InvalidArgument(format!("binom needs a polynomial in x, got {f}")))??,
                    w @ Value::Witt { .. } => {
                        return Err(Error::Unsupported(format!("binom is not defined on a {}", w.kind())))
                    }
                };
                Value::Binomial(f.lambda(*n as usize)?)
            }
            Expr::Delta(p, a) => {
                if !is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                match self.eval(a)? {
                    Value::Binomial(f) => {
                        let lift = BinomialLift::identity(*p, 1)?;
                        Value::Binomial(lift.delta(&f)?)
                    }
                    Value::Poly(f) => {
                        if !f.terms().all(|(_, c)| c.is_integer()) {
                            return Err(Error::Rejected(format!("delta needs integer coefficients, got {f}")));
                        }
                        check_degree_bound(f.total_degree() * *p)?;
                        let lift = PolyLift::canonical(*p, f.vars())?;
                        let g = lift.delta(&f.change_ring(CoefRing::Integers)?)?;
                        Value::Poly(g.change_ring(CoefRing::Rationals)?)
                    }
                    w @ Value::Witt { .. } => {
                        return Err(Error::Unsupported(format!("delta is not defined on a {}", w.kind())))
                    }
                }
            }
            Expr::Esym(k, vs) => {
                let f = elementary_symmetric(*k as usize, vs)?;
                Value::Poly(f.change_ring(CoefRing::Rationals)?.with_vars(&self.vars)?)
            }
            Expr::Witt(coords, p) => {
                witt_ring(*p, coords.len())?;
                Value::Witt { p: *p, coords: coords.clone() }
            }
        })
    }

    fn one_like(&self, v: &Value) -> Result<Value> {
        Ok(match v {
            Value::Poly(_) => Value::Poly(self.constant(BigRational::one())?),
            Value::Binomial(_) => Value::Binomial(IntValuedPoly::constant(1)),
            Value::Witt { p, coords } => Value::Witt { p: *p, coords: witt_ring(*p, coords.len())?.one() },
        })
    }

    /// `Some` when every variable in use is `x`; the inner result rejects non-integer-valued input.
    fn as_binomial(&self, f: &MultiPoly) -> Result<Option<Result<IntValuedPoly>>> {
        let used = f.used_vars();
        if used.iter().any(|v| v != "x") {
            return Ok(None);
        }
        let g = f.trim_vars().with_vars(&["x"])?;
        Ok(Some(IntValuedPoly::from_monomial(&g)))
    }

    fn binomial_to_poly(&self, f: &IntValuedPoly) -> Result<MultiPoly> {
        let mut vars = self.vars.clone();
        if !vars.iter().any(|v| v == "x") {
            vars.push("x".into());
            vars.sort_by(|a, b| var_cmp(a, b));
        }
        f.to_monomial().with_vars(&vars)
    }

    fn binary(&self, op: Op, a: Value, b: Value) -> Result<Value> {
        let name = match op {
            Op::Add => "add",
            Op::Sub => "subtract",
            Op::Mul => "multiply",
        };
        Ok(match (a, b) {
            (Value::Poly(f), Value::Poly(g)) => Value::Poly(poly_op(op, &f, &g)?),
            (Value::Binomial(f), Value::Binomial(g)) => Value::Binomial(binomial_op(op, &f, &g)?),
            (Value::Binomial(f), Value::Poly(g)) => match self.as_binomial(&g)? {
                Some(Ok(g)) => Value::Binomial(binomial_op(op, &f, &g)?),
                _ => Value::Poly(poly_op(op, &self.binomial_to_poly(&f)?, &g)?),
            },
            (Value::Poly(f), Value::Binomial(g)) => match self.as_binomial(&f)? {
                Some(Ok(f)) => Value::Binomial(binomial_op(op, &f, &g)?),
                _ => Value::Poly(poly_op(op, &f, &self.binomial_to_poly(&g)?)?),
            },
            (Value::Witt { p, coords: u }, Value::Witt { p: q, coords: v }) => {
                if p != q || u.len() != v.len() {
                    return Err(Error::RingMismatch(format!(
                        "cannot {name} Witt vectors of length {} at p = {p} and length {} at p = {q}",
                        u.len(),
                        v.len()
                    )));
                }
                Value::Witt { p, coords: witt_op(op, p, &u, &v)? }
            }
            (Value::Witt { p, coords: u }, other @ Value::Poly(_)) => {
                let v = self
                    .integer_in_witt(p, u.len(), &other)
                    .ok_or_else(|| mismatch(name, &Value::Witt { p, coords: u.clone() }, &other))?;
                Value::Witt { p, coords: witt_op(op, p, &u, &v)? }
            }
            (other @ Value::Poly(_), Value::Witt { p, coords: v }) => {
                let u = self
                    .integer_in_witt(p, v.len(), &other)
                    .ok_or_else(|| mismatch(name, &other, &Value::Witt { p, coords: v.clone() }))?;
                Value::Witt { p, coords: witt_op(op, p, &u, &v)? }
            }
            (a, b) => return Err(mismatch(name, &a, &b)),
        })
    }

    fn integer_in_witt(&self, p: u64, n: usize, v: &Value) -> Option<Vec<BigInt>> {
        let Value::Poly(f) = v else { return None };
        let c = f.constant_value()?;
        if !c.is_integer() {
            return None;
        }
        Some(witt_ring(p, n).ok()?.from_int_witt(&c.to_integer()))
    }

    /// `λ_t(Σ c_m m) = Π (1 + m t)^{c_m}`: monomials are rank one.
    fn rank_one_lambda(&self, n: usize, f: &MultiPoly) -> Result<MultiPoly> {
        if !f.terms().all(|(_, c)| c.is_integer()) {
            return Err(Error::Rejected(format!("lambda needs integer coefficients, got {f}")));
        }
        check_degree_bound(f.total_degree() * n as u64)?;
        let one = self.constant(BigRational::one())?;
        let mut series = vec![one.clone()];
        series.resize(n + 1, one.zero_like());
        for (m, c) in f.terms() {
            let mono =
                MultiPoly::from_terms(CoefRing::Rationals, &self.vars, vec![(m.exps().to_vec(), BigRational::one())])?;
            let c = c.to_integer();
            let mut factor = Vec::with_capacity(n + 1);
            let mut power = one.clone();
            for k in 0..=n {
                factor.push(power.scale(&coef_big(binomial(&c, k)))?);
                power = power.mul(&mono)?;
            }
            let mut next = vec![one.zero_like(); n + 1];
            for (i, a) in series.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in factor.iter().enumerate().take(n + 1 - i) {
                    next[i + j] = next[i + j].add(&a.mul(b)?)?;
                }
            }
            series = next;
        }
        Ok(series.swap_remove(n))
    }
}

fn check_degree_bound(d: u64) -> Result<()> {
    if d > MAX_EVAL_DEGREE {
        return Err(Error::ResourceLimit(format!("degree {d} exceeds {MAX_EVAL_DEGREE}")));
    }
    Ok(())
}

fn poly_op(op: Op, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let (f, g) = MultiPoly::align(f, g)?;
    let r = match op {
        Op::Add => f.add(&g)?,
        Op::Sub => f.sub(&g)?,
        Op::Mul => {
            check_degree_bound(f.total_degree() + g.total_degree())?;
            f.mul(&g)?
        }
    };
    check_degree(&r)?;
    Ok(r)
}

fn binomial_op(op: Op, f: &IntValuedPoly, g: &IntValuedPoly) -> Result<IntValuedPoly> {
    let r = BinomialRing;
    Ok(match op {
        Op::Add => r.add(f, g),
        Op::Sub => r.sub(f, g),
        Op::Mul => {
            let d = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
            check_degree_bound(d as u64)?;
            r.mul(f, g)
        }
    })
}

fn witt_ring(p: u64, n: usize) -> Result<WittRing<IntegerRing>> {
    if n == 0 {
        return Err(Error::InvalidArgument("a Witt vector needs at least one coordinate".into()));
    }
    if n > MAX_WITT_LEN {
        return Err(Error::ResourceLimit(format!("Witt length {n} exceeds {MAX_WITT_LEN}")));
    }
    WittRing::new(IntegerRing, p, n)
}

fn witt_op(op: Op, p: u64, u: &[BigInt], v: &[BigInt]) -> Result<Vec<BigInt>> {
    let r = witt_ring(p, u.len())?;
    match op {
        Op::Add => r.try_add(u, v),
        Op::Sub => r.try_add(u, &r.try_neg(v)?),
        Op::Mul => r.try_mul(u, v),
    }
}

/// `ψ^{p^k}` is the `k`-fold Frobenius, which shortens a vector over `Z` by one each time.
fn witt_psi(p: u64, n: u32, mut coords: Vec<BigInt>) -> Result<Vec<BigInt>> {
    let mut k = n;
    while k > 1 {
        if !(k as u64).is_multiple_of(p) {
            return Err(Error::Unsupported(format!("psi({n}, -) on Witt vectors at p = {p} needs a power of {p}")));
        }
        if coords.len() < 2 {
            return Err(Error::InvalidArgument("Frobenius needs a Witt vector of length at least 2".into()));
        }
        coords = witt_ring(p, coords.len())?.frobenius(&coords)?;
        k /= p as u32;
    }
    Ok(coords)
}

impl From<&Evaluation> for serde_json::Value {
    fn from(ev: &Evaluation) -> Self {
        json!({
            "type": ev.value.kind(),
            "value": ev.value.render(),
            "free_variables": ev.free_variables,
            "data": ev.value.to_json(),
        })
    }
}

/// Integer value when the result is a constant integer polynomial.
pub fn as_integer(v: &Value) -> Option<BigInt> {
    match v {
        Value::Poly(f) => f.constant_value().filter(|c| c.is_integer()).map(|c| c.to_integer()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn ev(s: &str) -> String {
        evaluate(&parse(s).unwrap()).unwrap().value.render()
    }

    #[test]
    fn polynomials() {
        assert_eq!(ev("(x + y)^2 - x*y"), "x^2 + x*y + y^2");
        assert_eq!(ev("esym(2; a, b, c)"), "a*b + a*c + b*c");
        assert_eq!(ev("1/2*x + 1/2*x"), "x");
        assert_eq!(ev("lambda(2, x + y)"), "x*y");
        assert_eq!(ev("lambda(2, 2*x)"), "x^2");
        assert_eq!(ev("lambda(2, -x)"), "x^2");
        assert_eq!(ev("psi(3, x + 2*y)"), "x^3 + 2*y^3");
        assert_eq!(ev("delta(2, x)"), "0");
        assert_eq!(ev("delta(2, x + y)"), "-x*y");
        assert_eq!(ev("delta(3, 2)"), "-2");
    }

    #[test]
    fn binomials() {
        assert_eq!(ev("binom(x,2)*binom(x,1)"), "3*binom(x, 3) + 2*binom(x, 2)");
        assert_eq!(ev("binom(x, 2) + x"), "binom(x, 2) + x");
        assert_eq!(ev("lambda(2, binom(x, 1))"), "binom(x, 2)");
        assert_eq!(ev("psi(3, binom(x, 2))"), "binom(x, 2)");
        assert_eq!(ev("delta(2, binom(x, 1))"), "-binom(x, 2)");
        assert_eq!(ev("binom(x, 2) + y"), "1/2*x^2 - 1/2*x + y");
    }

    #[test]
    fn witt_vectors() {
        assert_eq!(ev("[1,1]@2 + [1,1]@2"), "[2,1]@2");
        assert_eq!(ev("[1,1]@2 - [1,1]@2"), "[0,0]@2");
        assert_eq!(ev("2*[1,0]@3"), "[2,-2]@3");
        assert!(matches!(evaluate(&parse("[1]@2 + [1]@3").unwrap()), Err(Error::RingMismatch(_))));
        assert!(matches!(evaluate(&parse("[1]@2 + x").unwrap()), Err(Error::RingMismatch(_))));
        assert!(matches!(evaluate(&parse("[1]@4").unwrap()), Err(Error::NotPrime(4))));
    }

    #[test]
    fn limits() {
        assert!(matches!(evaluate(&parse("x^100000").unwrap()), Err(Error::ResourceLimit(_))));
        assert!(matches!(evaluate(&parse("x^5000").unwrap()), Err(Error::ResourceLimit(_))));
    }
}
