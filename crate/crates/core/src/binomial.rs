//! The ring of integer-valued polynomials in one variable, kept in the binomial basis
//! `C(x, 0), C(x, 1), …`, with its λ-operations `λ^n(f) = C(f, n)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use crate::lambda::adams_polynomial;
use crate::lambda::universal::adams_vars;
use crate::poly::{coef_big, CoefRing, MultiPoly};
use crate::ring::CommRing;

/// Interpolation degree above which operations refuse to run.
pub const MAX_DEGREE: usize = 4096;

/// `Σ a_i C(x, i)` with integer `a_i`; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntValuedPoly {
    coeffs: Vec<BigInt>,
}

impl IntValuedPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut f = IntValuedPoly { coeffs };
        f.trim();
        f
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntValuedPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `C(x, n)`.
    pub fn basis(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntValuedPoly { coeffs }
    }

    /// `x` itself, i.e. `C(x, 1)`.
    pub fn x() -> Self {
        Self::basis(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree as a polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().enumerate().map(|(i, a)| a * binomial(x, i)).sum()
    }

    /// Values at `0, 1, …, n`.
    pub fn values(&self, n: usize) -> Vec<BigInt> {
        (0..=n).map(|k| self.eval(&BigInt::from(k))).collect()
    }

    /// The polynomial of degree at most `values.len() - 1` through the given values at
    /// `0, 1, …`: its binomial coordinates are the forward differences at 0.
    pub fn interpolate(values: &[BigInt]) -> Self {
        Self::new(forward_differences(values.to_vec()))
    }

    /// Conversion into the monomial basis over `Q`, in the variable `x`.
    pub fn to_monomial(&self) -> MultiPoly {
        let x = MultiPoly::var(CoefRing::Rationals, &["x"], "x").expect("valid variable");
        let mut acc = MultiPoly::zero(CoefRing::Rationals, &["x"]).expect("valid variable");
        let mut falling = x.one_like();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                let shift =
                    x.sub(&x.constant_like(&coef_big(BigInt::from(i - 1))).expect("integer")).expect("same ring");
                falling = falling.mul(&shift).expect("same ring");
            }
            if !a.is_zero() {
                let c = BigRational::new(a.clone(), factorial(i));
                acc = acc.add(&falling.scale(&c).expect("rational")).expect("same ring");
            }
        }
        acc
    }

    /// Binomial coordinates of a polynomial in at most one variable. Rejects, with the
    /// offending index and value, exactly when the polynomial is not integer-valued.
    pub fn from_monomial(q: &MultiPoly) -> Result<Self> {
        let used = q.used_vars();
        if used.len() > 1 {
            return Err(Error::InvalidArgument(format!(
                "integer-valued polynomials take one variable, got {}",
                used.join(", ")
            )));
        }
        let d = q.total_degree() as usize;
        check_degree(d)?;
        let values: Vec<BigRational> = (0..=d)
            .map(|k| {
                let point: Vec<BigRational> = q.vars().iter().map(|_| coef_big(BigInt::from(k))).collect();
                q.eval_in(&CoefRing::Rationals, &point)
            })
            .collect::<Result<_>>()?;
        let diffs = forward_differences(values);
        let mut coeffs = Vec::with_capacity(diffs.len());
        for (i, a) in diffs.into_iter().enumerate() {
            if !a.is_integer() {
                return Err(Error::Rejected(format!(
                    "not integer-valued: binomial coefficient a_{i} = {a} is not an integer"
                )));
            }
            coeffs.push(a.to_integer());
        }
        Ok(Self::new(coeffs))
    }

    /// `f(g)`.
    pub fn compose(&self, g: &IntValuedPoly) -> Result<Self> {
        let d = self.degree_or_zero() * g.degree_or_zero().max(1);
        check_degree(d)?;
        Ok(Self::interpolate(&g.values(d).iter().map(|v| self.eval(v)).collect::<Vec<_>>()))
    }

    /// `λ^n(f) = C(f, n)`.
    pub fn lambda(&self, n: usize) -> Result<Self> {
        let d = self.degree_or_zero() * n;
        check_degree(d)?;
        Ok(Self::interpolate(&self.values(d).iter().map(|v| binomial(v, n)).collect::<Vec<_>>()))
    }

    /// `ψ^k(f)` from the Newton polynomial in `λ^1(f), …, λ^k(f)`.
    pub fn adams(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("Adams operations are indexed from 1".into()));
        }
        let psi = adams_polynomial(k)?;
        let lambdas = (1..=k).map(|i| self.lambda(i)).collect::<Result<Vec<_>>>()?;
        let names = adams_vars(k);
        let values: Vec<IntValuedPoly> = psi
            .vars()
            .iter()
            .map(|v| lambdas[names.iter().position(|n| n == v).expect("adams variable")].clone())
            .collect();
        psi.eval_in(&BinomialRing, &values)
    }

    /// Coordinates of `f(x + y)` in the basis `C(x, a) C(y, b)`.
    pub fn hilbert_comul(&self) -> BinomialTensor {
        let d = self.degree_or_zero();
        let grid: Vec<Vec<BigInt>> =
            (0..=d).map(|i| (0..=d).map(|j| self.eval(&BigInt::from(i + j))).collect()).collect();
        // differences along x for each fixed y, then along y
        let columns: Vec<Vec<BigInt>> =
            (0..=d).map(|j| forward_differences(grid.iter().map(|row| row[j].clone()).collect())).collect();
        let coeffs = (0..=d).map(|a| forward_differences(columns.iter().map(|col| col[a].clone()).collect())).collect();
        BinomialTensor::new(if self.is_zero() { Vec::new() } else { coeffs })
    }

    pub fn to_json(&self) -> BinomialJson {
        BinomialJson { binom_coeffs: self.coeffs.iter().map(BigInt::to_string).collect() }
    }
}

fn check_degree(d: usize) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::ResourceLimit(format!("interpolation degree {d} exceeds {MAX_DEGREE}")));
    }
    Ok(())
}

/// `Δ^i v(0)` for `i = 0..len`.
fn forward_differences<T>(mut v: Vec<T>) -> Vec<T>
where
    T: Clone + for<'a> std::ops::Sub<&'a T, Output = T>,
{
    let n = v.len();
    for level in 1..n {
        for k in (level..n).rev() {
            v[k] = v[k].clone() - &v[k - 1];
        }
    }
    v
}

fn render_term(out: &mut String, first: bool, c: &BigInt, mono: &str) {
    let (neg, mag) = (c.is_negative(), c.abs());
    out.push_str(match (first, neg) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    });
    match (mono.is_empty(), mag.is_one()) {
        (true, _) => out.push_str(&mag.to_string()),
        (false, true) => out.push_str(mono),
        (false, false) => out.push_str(&format!("{mag}*{mono}")),
    }
}

fn basis_name(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("binom({var}, {i})"),
    }
}

impl fmt::Display for IntValuedPoly {
    /// `2*binom(x, 2) + x - 1`, highest basis element first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, a) in self.coeffs.iter().enumerate().rev().filter(|(_, a)| !a.is_zero()) {
            let first = s.is_empty();
            render_term(&mut s, first, a, &basis_name("x", i));
        }
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

/// `{"binom_coeffs": ["a0", "a1", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialJson {
    pub binom_coeffs: Vec<String>,
}

impl TryFrom<&BinomialJson> for IntValuedPoly {
    type Error = Error;

    fn try_from(j: &BinomialJson) -> Result<Self> {
        let coeffs = j
            .binom_coeffs
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|e| Error::Json(format!("bad coefficient `{s}`: {e}"))))
            .collect::<Result<_>>()?;
        Ok(IntValuedPoly::new(coeffs))
    }
}

/// Element of `Z(x choose •) ⊗ Z(y choose •)`: `coeffs[a][b]` multiplies `C(x, a) C(y, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialTensor {
    coeffs: Vec<Vec<BigInt>>,
}

impl BinomialTensor {
    pub fn new(coeffs: Vec<Vec<BigInt>>) -> Self {
        BinomialTensor { coeffs }
    }

    pub fn coeff(&self, a: usize, b: usize) -> BigInt {
        self.coeffs.get(a).and_then(|row| row.get(b)).cloned().unwrap_or_default()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    /// `(ε ⊗ id)`: set `x = 0`.
    pub fn counit_left(&self) -> IntValuedPoly {
        IntValuedPoly::new(self.coeffs.first().cloned().unwrap_or_default())
    }

    /// `(id ⊗ ε)`: set `y = 0`.
    pub fn counit_right(&self) -> IntValuedPoly {
        IntValuedPoly::new(self.coeffs.iter().map(|row| row[0].clone()).collect())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut s = BigInt::zero();
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    s += c * binomial(x, a) * binomial(y, b);
                }
            }
        }
        s
    }

    /// Nonzero `(a, b, coefficient)` triples in lexicographic order.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b, c.clone()));
                }
            }
        }
        out
    }
}

impl fmt::Display for BinomialTensor {
    /// `binom(x, 2) + x*y + binom(y, 2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        terms.sort_by(|s, t| (t.0 + t.1).cmp(&(s.0 + s.1)).then(t.0.cmp(&s.0)));
        let mut s = String::new();
        for (a, b, c) in terms {
            let parts: Vec<String> =
                [basis_name("x", a), basis_name("y", b)].into_iter().filter(|p| !p.is_empty()).collect();
            let first = s.is_empty();
            render_term(&mut s, first, &c, &parts.join("*"));
        }
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

/// Handle for `Z(x choose •)` as a [`CommRing`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BinomialRing;

impl CommRing for BinomialRing {
    type Elem = IntValuedPoly;

    fn zero(&self) -> IntValuedPoly {
        IntValuedPoly::zero()
    }

    fn one(&self) -> IntValuedPoly {
        IntValuedPoly::constant(1)
    }

    fn from_int(&self, n: &BigInt) -> IntValuedPoly {
        IntValuedPoly::constant(n.clone())
    }

    fn add(&self, a: &IntValuedPoly, b: &IntValuedPoly) -> IntValuedPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let get = |f: &IntValuedPoly, i: usize| f.coeffs.get(i).cloned().unwrap_or_default();
        IntValuedPoly::new((0..n).map(|i| get(a, i) + get(b, i)).collect())
    }

    fn neg(&self, a: &IntValuedPoly) -> IntValuedPoly {
        IntValuedPoly { coeffs: a.coeffs.iter().map(|c| -c).collect() }
    }

    /// Evaluation at `0..=deg f + deg g` and interpolation.
    fn mul(&self, a: &IntValuedPoly, b: &IntValuedPoly) -> IntValuedPoly {
        if a.is_zero() || b.is_zero() {
            return IntValuedPoly::zero();
        }
        let d = a.degree_or_zero() + b.degree_or_zero();
        let values: Vec<BigInt> = a.values(d).iter().zip(b.values(d)).map(|(x, y)| x * y).collect();
        IntValuedPoly::interpolate(&values)
    }

    fn div_int_exact(&self, a: &IntValuedPoly, d: &BigInt) -> Option<IntValuedPoly> {
        if d.is_zero() {
            return None;
        }
        a.coeffs.iter().map(|c| (c % d).is_zero().then(|| c / d)).collect::<Option<Vec<_>>>().map(IntValuedPoly::new)
    }

    fn is_torsion_free(&self) -> bool {
        true
    }

    fn render(&self, a: &IntValuedPoly) -> String {
        a.to_string()
    }
}

/// Outcome of comparing `ψ^k(f)` with `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdamsReport {
    pub k: usize,
    pub input: String,
    pub adams: String,
    pub pass: bool,
}

pub fn adams_trivial_check(k: usize, f: &IntValuedPoly) -> Result<AdamsReport> {
    let psi = f.adams(k)?;
    Ok(AdamsReport { k, input: f.to_string(), adams: psi.to_string(), pass: psi == *f })
}
