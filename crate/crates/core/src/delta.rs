//! δ-structures from chosen Frobenius lifts: `δ(x) = (φ(x) - x^p) / p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{binomial_u, require_prime};
use crate::binomial::{BinomialRing, IntValuedPoly};
use crate::error::{Error, Result};
use crate::modular::IntegerRing;
use crate::poly::{CoefRing, MultiPoly, PolyEvalRing};
use crate::ring::CommRing;

/// A torsion-free ring with an endomorphism `φ` lifting Frobenius modulo `p`.
pub trait FrobeniusLift {
    type Ring: CommRing;

    fn ring(&self) -> &Self::Ring;
    fn p(&self) -> u64;
    fn phi(&self, x: &<Self::Ring as CommRing>::Elem) -> <Self::Ring as CommRing>::Elem;

    /// Degree up to which the congruence `φ(g) ≡ g^p` was checked, when the ring has
    /// infinitely many generators.
    fn window(&self) -> Option<usize> {
        None
    }

    /// `(φ(x) - x^p) / p`; an inexact division means `φ` is not a Frobenius lift.
    fn delta(&self, x: &<Self::Ring as CommRing>::Elem) -> Result<<Self::Ring as CommRing>::Elem> {
        let r = self.ring();
        let diff = r.sub(&self.phi(x), &r.pow(x, self.p()));
        r.div_int_exact(&diff, &BigInt::from(self.p())).ok_or_else(|| {
            Error::Rejected(format!(
                "φ({}) - ({})^{} is not divisible by {}",
                r.render(x),
                r.render(x),
                self.p(),
                self.p()
            ))
        })
    }

    /// `x^p + p·δ(x)`.
    fn psi(&self, x: &<Self::Ring as CommRing>::Elem) -> Result<<Self::Ring as CommRing>::Elem> {
        let r = self.ring();
        Ok(r.add(&r.pow(x, self.p()), &r.scale_int(&self.delta(x)?, &BigInt::from(self.p()))))
    }
}

/// `Z` with `φ = id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerLift {
    p: u64,
}

impl IntegerLift {
    pub fn new(p: u64) -> Result<Self> {
        require_prime(p)?;
        Ok(IntegerLift { p })
    }
}

impl FrobeniusLift for IntegerLift {
    type Ring = IntegerRing;

    fn ring(&self) -> &IntegerRing {
        &IntegerRing
    }

    fn p(&self) -> u64 {
        self.p
    }

    fn phi(&self, x: &BigInt) -> BigInt {
        x.clone()
    }
}

/// `Z[x1, …, xk]` with `φ` given by the images of the variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyLift {
    ring: PolyEvalRing,
    p: u64,
    images: BTreeMap<String, MultiPoly>,
}

impl PolyLift {
    /// Checks `φ(x) ≡ x^p (mod p)` for every variable.
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], images: BTreeMap<String, MultiPoly>) -> Result<Self> {
        require_prime(p)?;
        let ring = PolyEvalRing::new(CoefRing::Integers, vars)?;
        let mut aligned = BTreeMap::new();
        for v in ring.vars() {
            let img = images.get(v).ok_or_else(|| Error::MissingVariable(v.clone()))?;
            let img = img.change_ring(CoefRing::Integers)?.with_vars(ring.vars())?;
            if img.vars() != ring.vars() {
                return Err(Error::VariableMismatch { left: ring.vars().to_vec(), right: img.vars().to_vec() });
            }
            aligned.insert(v.clone(), img);
        }
        if let Some(extra) = images.keys().find(|k| !aligned.contains_key(*k)) {
            return Err(Error::InvalidArgument(format!("image given for unknown variable `{extra}`")));
        }
        let lift = PolyLift { ring, p, images: aligned };
        for v in lift.ring.vars().to_vec() {
            let g = lift.ring.var(&v)?;
            lift.delta(&g).map_err(|_| {
                Error::Rejected(format!("φ({v}) = {} is not congruent to {v}^{p} modulo {p}", lift.images[&v]))
            })?;
        }
        Ok(lift)
    }

    /// `φ(x) = x^p` on every variable.
    pub fn canonical<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Self> {
        let ring = PolyEvalRing::new(CoefRing::Integers, vars)?;
        let images = ring.vars().iter().map(|v| Ok((v.clone(), ring.var(v)?.pow(p as u32)))).collect::<Result<_>>()?;
        Self::new(p, vars, images)
    }

    pub fn images(&self) -> &BTreeMap<String, MultiPoly> {
        &self.images
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly> {
        self.ring.var(name)
    }
}

impl FrobeniusLift for PolyLift {
    type Ring = PolyEvalRing;

    fn ring(&self) -> &PolyEvalRing {
        &self.ring
    }

    fn p(&self) -> u64 {
        self.p
    }

    /// `x` must live in the lift's variables; [`delta`](FrobeniusLift::delta) checks this.
    fn phi(&self, x: &MultiPoly) -> MultiPoly {
        x.substitute(&self.images).expect("images share the variables")
    }

    fn delta(&self, x: &MultiPoly) -> Result<MultiPoly> {
        let foreign = x.vars().iter().find(|v| !self.images.contains_key(*v));
        if foreign.is_some() {
            return Err(Error::VariableMismatch { left: self.ring.vars().to_vec(), right: x.vars().to_vec() });
        }
        let r = &self.ring;
        let diff = r.sub(&self.phi(x), &r.pow(x, self.p));
        r.div_int_exact(&diff, &BigInt::from(self.p)).ok_or_else(|| {
            Error::Rejected(format!("φ({}) - ({})^{} is not divisible by {}", r.render(x), r.render(x), self.p, self.p))
        })
    }
}

/// `Z(x choose •)` with `φ(f) = f ∘ φ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialLift {
    p: u64,
    phi_x: IntValuedPoly,
    window: usize,
}

impl BinomialLift {
    /// Checks the congruence on the generators `C(x, n)` for `n ≤ window`.
    pub fn new(p: u64, phi_x: IntValuedPoly, window: usize) -> Result<Self> {
        require_prime(p)?;
        let lift = BinomialLift { p, phi_x, window };
        for n in 1..=window {
            lift.delta(&IntValuedPoly::basis(n)).map_err(|_| {
                Error::Rejected(format!("φ(x) = {} does not lift Frobenius modulo {p} on binom(x, {n})", lift.phi_x))
            })?;
        }
        Ok(lift)
    }

    /// `φ = id`, the structure for which every Adams operation is trivial.
    pub fn identity(p: u64, window: usize) -> Result<Self> {
        Self::new(p, IntValuedPoly::x(), window)
    }
}

impl FrobeniusLift for BinomialLift {
    type Ring = BinomialRing;

    fn ring(&self) -> &BinomialRing {
        &BinomialRing
    }

    fn p(&self) -> u64 {
        self.p
    }

    fn phi(&self, x: &IntValuedPoly) -> IntValuedPoly {
        if self.phi_x == IntValuedPoly::x() {
            return x.clone();
        }
        x.compose(&self.phi_x).expect("composition within degree limits")
    }

    fn window(&self) -> Option<usize> {
        Some(self.window)
    }
}

/// Outcome of checking one identity; `lhs` and `rhs` are rendered ring elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
}

fn report<L: FrobeniusLift>(
    lift: &L,
    law: &str,
    lhs: &<L::Ring as CommRing>::Elem,
    rhs: &<L::Ring as CommRing>::Elem,
) -> LawReport {
    let r = lift.ring();
    LawReport { law: law.into(), pass: lhs == rhs, lhs: r.render(lhs), rhs: r.render(rhs), window: lift.window() }
}

/// `δ(x+y) = δx + δy + (x^p + y^p - (x+y)^p)/p`.
pub fn delta_sum_law<L: FrobeniusLift>(
    lift: &L,
    x: &<L::Ring as CommRing>::Elem,
    y: &<L::Ring as CommRing>::Elem,
) -> Result<LawReport> {
    let r = lift.ring();
    let p = lift.p();
    let cross = r.sub(&r.add(&r.pow(x, p), &r.pow(y, p)), &r.pow(&r.add(x, y), p));
    let cross = r
        .div_int_exact(&cross, &BigInt::from(p))
        .ok_or_else(|| Error::Internal("x^p + y^p - (x+y)^p not divisible by p".into()))?;
    let lhs = lift.delta(&r.add(x, y))?;
    let rhs = r.add(&r.add(&lift.delta(x)?, &lift.delta(y)?), &cross);
    Ok(report(lift, "sum", &lhs, &rhs))
}

/// `δ(xy) = x^p δy + y^p δx + p δx δy`.
pub fn delta_product_law<L: FrobeniusLift>(
    lift: &L,
    x: &<L::Ring as CommRing>::Elem,
    y: &<L::Ring as CommRing>::Elem,
) -> Result<LawReport> {
    let r = lift.ring();
    let p = lift.p();
    let (dx, dy) = (lift.delta(x)?, lift.delta(y)?);
    let lhs = lift.delta(&r.mul(x, y))?;
    let rhs = r.add(
        &r.add(&r.mul(&r.pow(x, p), &dy), &r.mul(&r.pow(y, p), &dx)),
        &r.scale_int(&r.mul(&dx, &dy), &BigInt::from(p)),
    );
    Ok(report(lift, "product", &lhs, &rhs))
}

/// `x^p + p δ(x) = φ(x)`.
pub fn psi_equals_phi<L: FrobeniusLift>(lift: &L, x: &<L::Ring as CommRing>::Elem) -> Result<LawReport> {
    Ok(report(lift, "psi=phi", &lift.psi(x)?, &lift.phi(x)))
}

/// Compares `δ_p δ_l` with `δ_l δ_p` on `C(x, n)` for `n ≤ degree`, both lifts being the
/// identity; the first disagreement is reported.
pub fn delta_commutation(p: u64, l: u64, degree: usize) -> Result<LawReport> {
    let dp = BinomialLift::identity(p, degree)?;
    let dl = BinomialLift::identity(l, degree)?;
    let mut last = None;
    for n in 0..=degree {
        let f = IntValuedPoly::basis(n);
        let a = dp.delta(&dl.delta(&f)?)?;
        let b = dl.delta(&dp.delta(&f)?)?;
        let law = format!("delta_{p} delta_{l} = delta_{l} delta_{p} on binom(x, {n})");
        let rep = LawReport { law, pass: a == b, lhs: a.to_string(), rhs: b.to_string(), window: Some(degree) };
        if !rep.pass {
            return Ok(rep);
        }
        last = Some(rep);
    }
    Ok(last.expect("degree range is nonempty"))
}

/// Monomial `x^{a0} (δx)^{a1} ⋯ (δ^d x)^{ad}` in the free δ-ring on `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMonomial(pub Vec<u32>);

impl DeltaMonomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for DeltaMonomial {
    /// `x^2*delta(x)*delta^2(x)^3`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let base = match k {
                    0 => "x".to_string(),
                    1 => "delta(x)".to_string(),
                    _ => format!("delta^{k}(x)"),
                };
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Largest depth and degree accepted by [`free_delta_basis`].
pub const MAX_FREE_DELTA: usize = 6;

/// Monomials in `x, δx, …, δ^depth x` of total degree `≤ degree`, by degree and then
/// with higher powers of earlier generators first.
pub fn free_delta_basis(depth: usize, degree: usize) -> Result<Vec<DeltaMonomial>> {
    if depth > MAX_FREE_DELTA || degree > MAX_FREE_DELTA {
        return Err(Error::ResourceLimit(format!(
            "free δ-ring bases are limited to depth and degree {MAX_FREE_DELTA}"
        )));
    }
    let nvars = depth + 1;
    let mut out = Vec::new();
    for d in 0..=degree as u32 {
        let mut level = Vec::new();
        compositions(d, nvars, &mut Vec::new(), &mut level);
        level.sort_by(|a: &Vec<u32>, b| b.cmp(a));
        out.extend(level.into_iter().map(DeltaMonomial));
    }
    debug_assert_eq!(out.len() as u64, {
        let c = binomial_u(degree + nvars, nvars);
        u64::try_from(c).unwrap_or(0)
    });
    Ok(out)
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        let mut v = prefix.clone();
        v.push(total);
        out.push(v);
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_in_other_variables_is_an_error() {
        let lift = PolyLift::canonical(2, &["x"]).unwrap();
        let y = MultiPoly::var(CoefRing::Integers, &["y"], "y").unwrap();
        assert!(matches!(lift.delta(&y), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn canonical_lift_has_zero_delta_on_variables() {
        let lift = PolyLift::canonical(3, &["x", "y"]).unwrap();
        assert!(lift.ring().is_zero(&lift.delta(&lift.var("x").unwrap()).unwrap()));
        let x = lift.var("x").unwrap();
        let y = lift.var("y").unwrap();
        assert!(delta_sum_law(&lift, &x, &y).unwrap().pass);
        assert!(delta_product_law(&lift, &x, &y).unwrap().pass);
        assert_eq!(lift.delta(&lift.ring().add(&x, &y)).unwrap().to_string(), "-x^2*y - x*y^2");
    }

    #[test]
    fn binomial_delta() {
        let lift = BinomialLift::identity(2, 6).unwrap();
        let d = lift.delta(&IntValuedPoly::x()).unwrap();
        assert_eq!(d, IntValuedPoly::from_i64(&[0, 0, -1]));
        assert!(psi_equals_phi(&lift, &IntValuedPoly::basis(3)).unwrap().pass);
    }

    #[test]
    fn integers() {
        let lift = IntegerLift::new(2).unwrap();
        assert_eq!(lift.delta(&BigInt::from(3)).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn bad_lift_is_rejected() {
        let ring = PolyEvalRing::new(CoefRing::Integers, &["x"]).unwrap();
        let images = BTreeMap::from([("x".to_string(), ring.var("x").unwrap())]);
        assert!(matches!(PolyLift::new(2, &["x"], images), Err(Error::Rejected(_))));
        assert!(BinomialLift::new(3, IntValuedPoly::from_i64(&[0, 2]), 2).is_err());
    }

    #[test]
    fn free_basis() {
        let b = free_delta_basis(1, 2).unwrap();
        let names: Vec<String> = b.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1", "x", "delta(x)", "x^2", "x*delta(x)", "delta(x)^2"]);
        assert_eq!(free_delta_basis(0, 3).unwrap().len(), 4);
        assert_eq!(free_delta_basis(2, 3).unwrap().len(), 20);
    }

    #[test]
    fn deltas_at_different_primes_do_not_commute() {
        let rep = delta_commutation(2, 3, 6).unwrap();
        assert!(!rep.pass);
        assert_eq!(IntegerLift::new(2).unwrap().delta(&BigInt::from(-2)).unwrap(), BigInt::from(-3));
    }
}
