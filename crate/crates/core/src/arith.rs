//! Small integer helpers shared by the algebra modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalized binomial coefficient `C(v, k) = v(v-1)...(v-k+1)/k!`, valid for negative `v`.
pub fn binomial(v: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= v - BigInt::from(i);
    }
    num / factorial(k)
}

pub fn binomial_u(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(&BigInt::from(n), k)
    }
}

/// `p`-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Valuation of a rational number; negative when `p` divides the denominator.
pub fn rational_valuation(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let num = valuation(q.numer(), p).unwrap_or(0) as i64;
    let den = valuation(q.denom(), p).unwrap_or(0) as i64;
    Some(num - den)
}

/// Distinct prime factors of `|n|` by trial division (ascending).
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let last: u64 = n.try_into().expect("cofactor fits after trial division to sqrt");
        out.push(last);
    }
    out
}

/// If `q` is a power of a single prime, returns `(prime, exponent)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(&BigInt::from(q));
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    Some((p, e))
}

/// Least non-negative residue of `a` modulo `m > 0`.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Reduce a rational with denominator prime to `m` into `[0, m)`.
pub fn rational_mod(q: &BigRational, m: &BigInt) -> Option<BigInt> {
    let inv = mod_inverse(q.denom(), m)?;
    Some((q.numer() * inv).mod_floor(m))
}

pub fn big_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Non-negative gcd.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_by_trial_division() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(1));
        assert!(is_prime(7919));
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binomial(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial(&BigInt::from(2), 3), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(7), 0), BigInt::one());
    }

    #[test]
    fn valuations_and_factors() {
        assert_eq!(valuation(&BigInt::from(48), 2), Some(4));
        assert_eq!(valuation(&BigInt::from(0), 2), None);
        let q = BigRational::new(BigInt::from(3), BigInt::from(8));
        assert_eq!(rational_valuation(&q, 2), Some(-3));
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn modular_inverse() {
        let m = BigInt::from(27);
        let inv = mod_inverse(&BigInt::from(2), &m).unwrap();
        assert_eq!((inv * 2) % &m, BigInt::one());
        assert!(mod_inverse(&BigInt::from(3), &m).is_none());
    }
}
