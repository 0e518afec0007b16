use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, mod_inverse, rational_mod};
use crate::error::{Error, Result};
use crate::ring::{CommRing, IntegralLift};

/// Coefficients are stored as exact rationals; the ring decides which values are canonical.
pub type Coef = BigRational;

pub fn coef_int(n: i64) -> Coef {
    BigRational::from_integer(BigInt::from(n))
}

pub fn coef_big(n: BigInt) -> Coef {
    BigRational::from_integer(n)
}

/// Base rings for polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoefRing {
    Integers,
    Rationals,
    PrimeField(u64),
    TruncatedPadic { p: u64, precision: u32 },
}

impl CoefRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        arith::require_prime(p)?;
        Ok(CoefRing::PrimeField(p))
    }

    pub fn truncated_padic(p: u64, precision: u32) -> Result<Self> {
        arith::require_prime(p)?;
        if precision == 0 {
            return Err(Error::InvalidArgument("truncated p-adic precision must be at least 1".into()));
        }
        Ok(CoefRing::TruncatedPadic { p, precision })
    }

    /// Re-checks the constructor invariants (useful after deserialization).
    pub fn validate(&self) -> Result<()> {
        match *self {
            CoefRing::PrimeField(p) => arith::require_prime(p),
            CoefRing::TruncatedPadic { p, precision } => Self::truncated_padic(p, precision).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// The modulus `p` or `p^N` for the quotient rings.
    pub fn modulus(&self) -> Option<BigInt> {
        match *self {
            CoefRing::PrimeField(p) => Some(BigInt::from(p)),
            CoefRing::TruncatedPadic { p, precision } => Some(arith::big_pow(p, precision)),
            _ => None,
        }
    }

    pub fn characteristic_prime(&self) -> Option<u64> {
        match *self {
            CoefRing::PrimeField(p) | CoefRing::TruncatedPadic { p, .. } => Some(p),
            _ => None,
        }
    }

    /// Brings an arbitrary rational into canonical form, rejecting values outside the ring.
    pub fn normalize(&self, q: &Coef) -> Result<Coef> {
        match self {
            CoefRing::Rationals => Ok(q.clone()),
            CoefRing::Integers => {
                if q.is_integer() {
                    Ok(q.clone())
                } else {
                    Err(Error::Rejected(format!("{q} is not an integer")))
                }
            }
            _ => {
                let m = self.modulus().expect("quotient ring has a modulus");
                rational_mod(q, &m)
                    .map(coef_big)
                    .ok_or_else(|| Error::NotInvertible(format!("denominator of {q} modulo {m}")))
            }
        }
    }

    fn reduce_int(&self, n: BigInt) -> Coef {
        match self.modulus() {
            Some(m) => coef_big(n.mod_floor(&m)),
            None => coef_big(n),
        }
    }

    pub fn add_coef(&self, a: &Coef, b: &Coef) -> Coef {
        match self {
            CoefRing::Integers | CoefRing::Rationals => a + b,
            _ => self.reduce_int(a.numer() + b.numer()),
        }
    }

    pub fn mul_coef(&self, a: &Coef, b: &Coef) -> Coef {
        match self {
            CoefRing::Integers | CoefRing::Rationals => a * b,
            _ => self.reduce_int(a.numer() * b.numer()),
        }
    }

    pub fn neg_coef(&self, a: &Coef) -> Coef {
        match self {
            CoefRing::Integers | CoefRing::Rationals => -a,
            _ => self.reduce_int(-a.numer()),
        }
    }

    /// Multiplicative inverse; only units are invertible.
    pub fn inv_coef(&self, a: &Coef) -> Result<Coef> {
        match self {
            CoefRing::Rationals if !a.is_zero() => Ok(a.recip()),
            CoefRing::Integers if a.abs().is_one() => Ok(a.clone()),
            CoefRing::PrimeField(_) | CoefRing::TruncatedPadic { .. } => {
                let m = self.modulus().expect("quotient ring has a modulus");
                mod_inverse(a.numer(), &m).map(coef_big).ok_or_else(|| Error::NotInvertible(format!("{a} modulo {m}")))
            }
            _ => Err(Error::NotInvertible(a.to_string())),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CoefRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefRing::Integers => write!(f, "ZZ"),
            CoefRing::Rationals => write!(f, "QQ"),
            CoefRing::PrimeField(p) => write!(f, "GF({p})"),
            CoefRing::TruncatedPadic { p, precision } => write!(f, "Z/{p}^{precision}"),
        }
    }
}

impl CommRing for CoefRing {
    type Elem = Coef;

    fn zero(&self) -> Coef {
        Coef::zero()
    }

    fn one(&self) -> Coef {
        Coef::one()
    }

    fn from_int(&self, n: &BigInt) -> Coef {
        self.reduce_int(n.clone())
    }

    fn add(&self, a: &Coef, b: &Coef) -> Coef {
        self.add_coef(a, b)
    }

    fn neg(&self, a: &Coef) -> Coef {
        self.neg_coef(a)
    }

    fn mul(&self, a: &Coef, b: &Coef) -> Coef {
        self.mul_coef(a, b)
    }

    fn div_int_exact(&self, a: &Coef, d: &BigInt) -> Option<Coef> {
        if d.is_zero() {
            return None;
        }
        match self {
            CoefRing::Rationals => Some(a / coef_big(d.clone())),
            CoefRing::Integers => {
                let (q, r) = a.numer().div_rem(d);
                r.is_zero().then(|| coef_big(q))
            }
            _ => {
                let m = self.modulus().expect("quotient ring has a modulus");
                mod_inverse(d, &m).map(|inv| self.reduce_int(a.numer() * inv))
            }
        }
    }

    fn is_torsion_free(&self) -> bool {
        matches!(self, CoefRing::Integers | CoefRing::Rationals)
    }

    fn render(&self, a: &Coef) -> String {
        a.to_string()
    }

    fn char_p(&self) -> Option<u64> {
        match self {
            CoefRing::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    fn from_rational(&self, q: &BigRational) -> Option<Coef> {
        self.normalize(q).ok()
    }
}

impl IntegralLift for CoefRing {
    type Cover = CoefRing;

    fn cover(&self) -> CoefRing {
        match self {
            CoefRing::Rationals => CoefRing::Rationals,
            _ => CoefRing::Integers,
        }
    }

    fn lift(&self, a: &Coef) -> Coef {
        a.clone()
    }

    fn reduce(&self, a: &Coef) -> Coef {
        self.normalize(a).expect("integral values always reduce into a quotient of Z")
    }

    fn truncate_cover(&self, a: &Coef, m: &BigInt) -> Coef {
        match self.modulus() {
            Some(k) if a.is_integer() => coef_big(a.numer().mod_floor(&(k * m))),
            _ => a.clone(),
        }
    }
}

/// Serialized form `{"kind": ..., "p": ..., "N": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefRingJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

impl From<&CoefRing> for CoefRingJson {
    fn from(r: &CoefRing) -> Self {
        match *r {
            CoefRing::Integers => CoefRingJson { kind: "Integers".into(), p: None, precision: None },
            CoefRing::Rationals => CoefRingJson { kind: "Rationals".into(), p: None, precision: None },
            CoefRing::PrimeField(p) => CoefRingJson { kind: "PrimeField".into(), p: Some(p), precision: None },
            CoefRing::TruncatedPadic { p, precision } => {
                CoefRingJson { kind: "TruncatedPadic".into(), p: Some(p), precision: Some(precision) }
            }
        }
    }
}

impl TryFrom<&CoefRingJson> for CoefRing {
    type Error = Error;

    fn try_from(j: &CoefRingJson) -> Result<Self> {
        let need_p = || j.p.ok_or_else(|| Error::Json(format!("ring kind {} requires \"p\"", j.kind)));
        match j.kind.as_str() {
            "Integers" => Ok(CoefRing::Integers),
            "Rationals" => Ok(CoefRing::Rationals),
            "PrimeField" => CoefRing::prime_field(need_p()?),
            "TruncatedPadic" => {
                let n = j.precision.ok_or_else(|| Error::Json("TruncatedPadic requires \"N\"".into()))?;
                CoefRing::truncated_padic(need_p()?, n)
            }
            other => Err(Error::Json(format!("unknown ring kind `{other}`"))),
        }
    }
}

/// Parses `"a"` or `"a/b"` decimal coefficient strings.
pub fn parse_coef(s: &str) -> Result<Coef> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Json(format!("bad integer `{t}`")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Json("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(coef_big(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_check_primality() {
        assert!(CoefRing::prime_field(7).is_ok());
        assert_eq!(CoefRing::prime_field(9), Err(Error::NotPrime(9)));
        assert!(CoefRing::truncated_padic(3, 0).is_err());
    }

    #[test]
    fn normalization_per_ring() {
        let half = BigRational::new(1.into(), 2.into());
        assert!(CoefRing::Integers.normalize(&half).is_err());
        let f5 = CoefRing::PrimeField(5);
        assert_eq!(f5.normalize(&half).unwrap(), coef_int(3));
        assert_eq!(f5.normalize(&coef_int(-1)).unwrap(), coef_int(4));
        let z8 = CoefRing::TruncatedPadic { p: 2, precision: 3 };
        assert!(z8.normalize(&half).is_err());
        assert_eq!(z8.normalize(&coef_int(11)).unwrap(), coef_int(3));
    }

    #[test]
    fn padic_division_only_by_units() {
        let z9 = CoefRing::TruncatedPadic { p: 3, precision: 2 };
        assert_eq!(z9.inv_coef(&coef_int(2)).unwrap(), coef_int(5));
        assert!(z9.inv_coef(&coef_int(3)).is_err());
        assert!(CoefRing::Integers.inv_coef(&coef_int(2)).is_err());
    }

    #[test]
    fn coefficient_strings() {
        assert_eq!(parse_coef("-6/4").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert!(parse_coef("1/0").is_err());
        assert!(parse_coef("x").is_err());
    }
}
