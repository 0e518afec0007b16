//! Plain integer rings on `BigInt`: `Z` itself and residue rings `Z/m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{is_prime, mod_inverse, prime_power};
use crate::error::{Error, Result};
use crate::ring::{CommRing, IntegralLift};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntegerRing;

impl CommRing for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn div_int_exact(&self, a: &BigInt, d: &BigInt) -> Option<BigInt> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn is_torsion_free(&self) -> bool {
        true
    }

    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn scale_int(&self, a: &BigInt, n: &BigInt) -> BigInt {
        a * n
    }
}

impl IntegralLift for IntegerRing {
    type Cover = IntegerRing;

    fn cover(&self) -> IntegerRing {
        IntegerRing
    }

    fn lift(&self, a: &BigInt) -> BigInt {
        a.clone()
    }

    fn reduce(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
}

/// `Z/m` with residues in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMod {
    m: BigInt,
}

impl ZMod {
    pub fn new(m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(Error::InvalidArgument(format!("modulus must be at least 2, got {m}")));
        }
        Ok(ZMod { m })
    }

    /// `Z/p^k`.
    pub fn prime_power(p: u64, k: u32) -> Result<Self> {
        crate::arith::require_prime(p)?;
        if k == 0 {
            return Err(Error::InvalidArgument("exponent must be at least 1".into()));
        }
        Self::new(BigInt::from(p).pow(k))
    }

    pub fn modulus(&self) -> &BigInt {
        &self.m
    }

    pub fn elem(&self, n: i64) -> BigInt {
        BigInt::from(n).mod_floor(&self.m)
    }

    /// All residues `0..m`; refuses moduli above 2^20.
    pub fn elements(&self) -> Result<Vec<BigInt>> {
        let m = self
            .m
            .to_u64()
            .filter(|&m| m <= 1 << 20)
            .ok_or_else(|| Error::ResourceLimit("element enumeration is limited to 2^20 elements".into()))?;
        Ok((0..m).map(BigInt::from).collect())
    }
}

impl CommRing for ZMod {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_int(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.m)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a + b).mod_floor(&self.m)
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        (-a).mod_floor(&self.m)
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).mod_floor(&self.m)
    }

    fn div_int_exact(&self, a: &BigInt, d: &BigInt) -> Option<BigInt> {
        mod_inverse(d, &self.m).map(|inv| (a * inv).mod_floor(&self.m))
    }

    fn is_torsion_free(&self) -> bool {
        false
    }

    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn char_p(&self) -> Option<u64> {
        self.m.to_u64().filter(|&m| is_prime(m))
    }

    fn pow(&self, a: &BigInt, e: u64) -> BigInt {
        a.modpow(&BigInt::from(e), &self.m)
    }
}

impl IntegralLift for ZMod {
    type Cover = IntegerRing;

    fn cover(&self) -> IntegerRing {
        IntegerRing
    }

    fn lift(&self, a: &BigInt) -> BigInt {
        a.clone()
    }

    fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.m)
    }

    fn truncate_cover(&self, a: &BigInt, m: &BigInt) -> BigInt {
        a.mod_floor(&(&self.m * m))
    }
}

/// `Some((p, k))` when the modulus is a prime power `p^k`.
pub fn modulus_prime_power(r: &ZMod) -> Option<(u64, u32)> {
    r.m.to_u64().and_then(prime_power)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        let r = ZMod::new(8).unwrap();
        assert_eq!(r.add(&r.elem(5), &r.elem(6)), r.elem(3));
        assert_eq!(r.neg(&r.elem(1)), r.elem(7));
        assert_eq!(r.div_int_exact(&r.elem(1), &BigInt::from(3)), Some(r.elem(3)));
        assert_eq!(r.div_int_exact(&r.elem(1), &BigInt::from(2)), None);
        assert_eq!(r.char_p(), None);
        assert_eq!(ZMod::new(7).unwrap().char_p(), Some(7));
        assert_eq!(modulus_prime_power(&r), Some((2, 3)));
    }
}
