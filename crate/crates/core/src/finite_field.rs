//! Finite fields `F_p[a]/(f)` with a stored irreducible modulus, and the integral
//! cover `Z[a]/(f~)` used to run ghost-component arithmetic in characteristic zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ring::{CommRing, IntegralLift};

/// Largest supported extension degree; irreducibility is checked by brute force.
pub const MAX_DEGREE: usize = 8;

/// Name of the field generator in rendered and parsed elements.
pub const GENERATOR: &str = "a";

/// `F_{p^m}` as `F_p[a]/(f)`. Elements are coefficient vectors of length `m`, low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo a monic `b` over `F_p`.
fn rem_monic(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - db;
        for (k, &c) in b.iter().enumerate() {
            let sub = lead * c % p;
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

/// Monic polynomials of degree `d` over `F_p`, in counting order of their lower coefficients.
fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut k| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(k % p);
            k /= p;
        }
        v.push(1);
        v
    })
}

/// Brute-force irreducibility: no monic factor of degree `1..=deg/2`.
pub fn is_irreducible(p: u64, f: &[u64]) -> Result<bool> {
    require_prime(p)?;
    let mut f = f.iter().map(|c| c % p).collect::<Vec<_>>();
    trim(&mut f);
    if f.len() < 2 {
        return Ok(false);
    }
    let deg = f.len() - 1;
    if deg > MAX_DEGREE {
        return Err(Error::ResourceLimit(format!("irreducibility checks support degree <= {MAX_DEGREE}")));
    }
    for d in 1..=deg / 2 {
        for g in monic_polys(p, d) {
            if rem_monic(&f, &g, p).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl FiniteField {
    /// `modulus` lists the coefficients of a monic irreducible polynomial, low degree first.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if modulus.last() != Some(&1) || modulus.len() < 2 {
            return Err(Error::InvalidArgument("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument(format!("modulus coefficients must lie in [0, {p})")));
        }
        if !is_irreducible(p, &modulus)? {
            return Err(Error::Rejected(format!("{} is reducible over F_{p}", render_poly(&modulus, "x"))));
        }
        Ok(FiniteField { p, modulus })
    }

    /// The prime field, presented as `F_p[a]/(a)`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, vec![0, 1])
    }

    /// The first irreducible monic polynomial of degree `m` in enumeration order.
    pub fn search(p: u64, m: usize) -> Result<Self> {
        require_prime(p)?;
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::ResourceLimit(format!("extension degree must be in 1..={MAX_DEGREE}")));
        }
        for f in monic_polys(p, m) {
            if is_irreducible(p, &f)? {
                return Ok(FiniteField { p, modulus: f });
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {m} over F_{p}")))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigInt {
        BigInt::from(self.p).pow(self.degree() as u32)
    }

    /// Element with the given coefficients (low degree first), reduced.
    pub fn element(&self, coeffs: &[u64]) -> Vec<u64> {
        let c: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        self.pad(rem_monic(&c, &self.modulus, self.p))
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.degree(), 0);
        v
    }

    pub fn generator(&self) -> Vec<u64> {
        self.element(&[0, 1])
    }

    /// All `p^m` elements in counting order; refuses fields with more than 2^20 elements.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        let q = self
            .order()
            .to_u64()
            .filter(|&q| q <= 1 << 20)
            .ok_or_else(|| Error::ResourceLimit("element enumeration is limited to 2^20 elements".into()))?;
        Ok((0..q)
            .map(|mut k| {
                (0..self.degree())
                    .map(|_| {
                        let c = k % self.p;
                        k /= self.p;
                        c
                    })
                    .collect()
            })
            .collect())
    }

    pub fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        self.pow(&a.to_vec(), self.p)
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        if a.iter().all(|&c| c == 0) {
            return Err(Error::NotInvertible("0".into()));
        }
        let q = self.order().to_u64().ok_or_else(|| Error::ResourceLimit("field too large".into()))?;
        Ok(self.pow(&a.to_vec(), q - 2))
    }

    /// Reads an element written as a polynomial in the generator `a`.
    pub fn from_poly(&self, f: &MultiPoly) -> Result<Vec<u64>> {
        let used = f.used_vars();
        if used.iter().any(|v| v != GENERATOR) {
            return Err(Error::InvalidArgument(format!(
                "field elements are polynomials in `{GENERATOR}`, found {used:?}"
            )));
        }
        let idx = f.var_index(GENERATOR);
        let mut coeffs: Vec<u64> = Vec::new();
        let pz = BigInt::from(self.p);
        for (m, c) in f.terms() {
            let deg = idx.map_or(0, |i| m.exps()[i]) as usize;
            let den_inv = crate::arith::mod_inverse(c.denom(), &pz)
                .ok_or_else(|| Error::NotInvertible(format!("{} mod {}", c.denom(), self.p)))?;
            let v = (c.numer() * den_inv).mod_floor(&pz).to_u64().expect("residue fits");
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] = (coeffs[deg] + v) % self.p;
        }
        Ok(self.element(&coeffs))
    }

    /// The integral cover `Z[a]/(f~)` with `f~` the lift of the modulus to `[0, p)` coefficients.
    pub fn int_cover(&self) -> IntExtension {
        IntExtension { modulus: self.modulus.iter().map(|&c| BigInt::from(c)).collect() }
    }
}

fn render_poly<T: fmt::Display + PartialEq + Zero + Clone>(coeffs: &[T], var: &str) -> String
where
    T: PartialEq<T>,
{
    let one_str = "1";
    let mut parts: Vec<String> = Vec::new();
    for (d, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, cs),
        };
        let body = match d {
            0 => mag,
            _ => {
                let pw = if d == 1 { var.to_string() } else { format!("{var}^{d}") };
                if mag == one_str {
                    pw
                } else {
                    format!("{mag}*{pw}")
                }
            }
        };
        if parts.is_empty() {
            parts.push(if neg { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if neg { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 && self.modulus == [0, 1] {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})[{GENERATOR}]/({})", self.p, self.degree(), render_poly(&self.modulus, GENERATOR))
        }
    }
}

impl CommRing for FiniteField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    fn one(&self) -> Vec<u64> {
        self.element(&[1])
    }

    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        let r = n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits");
        self.element(&[r])
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.pad(rem_monic(&prod, &self.modulus, self.p))
    }

    fn div_int_exact(&self, a: &Vec<u64>, d: &BigInt) -> Option<Vec<u64>> {
        let inv = crate::arith::mod_inverse(d, &BigInt::from(self.p))?;
        Some(self.mul(a, &self.from_int(&inv)))
    }

    fn is_torsion_free(&self) -> bool {
        false
    }

    fn render(&self, a: &Vec<u64>) -> String {
        render_poly(a, GENERATOR)
    }

    fn char_p(&self) -> Option<u64> {
        Some(self.p)
    }
}

/// `Z[a]/(f)` for a monic integer polynomial `f`: a free `Z`-module of rank `deg f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntExtension {
    modulus: Vec<BigInt>,
}

impl IntExtension {
    pub fn new(modulus: Vec<BigInt>) -> Result<Self> {
        if modulus.len() < 2 || modulus.last() != Some(&BigInt::from(1)) {
            return Err(Error::InvalidArgument("modulus must be monic of degree >= 1".into()));
        }
        Ok(IntExtension { modulus })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

impl CommRing for IntExtension {
    type Elem = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.degree()]
    }

    fn one(&self) -> Vec<BigInt> {
        self.from_int(&BigInt::from(1))
    }

    fn from_int(&self, n: &BigInt) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = n.clone();
        v
    }

    fn add(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, a: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let m = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * m];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (m..2 * m).rev() {
            let lead = std::mem::take(&mut prod[k]);
            if lead.is_zero() {
                continue;
            }
            for (t, c) in self.modulus[..m].iter().enumerate() {
                prod[k - m + t] -= &lead * c;
            }
        }
        prod.truncate(m);
        prod
    }

    fn div_int_exact(&self, a: &Vec<BigInt>, d: &BigInt) -> Option<Vec<BigInt>> {
        if d.is_zero() {
            return None;
        }
        a.iter()
            .map(|x| {
                let (q, r) = x.div_rem(d);
                r.is_zero().then_some(q)
            })
            .collect()
    }

    fn is_torsion_free(&self) -> bool {
        true
    }

    fn render(&self, a: &Vec<BigInt>) -> String {
        render_poly(a, GENERATOR)
    }
}

impl IntegralLift for FiniteField {
    type Cover = IntExtension;

    fn cover(&self) -> IntExtension {
        self.int_cover()
    }

    fn lift(&self, a: &Vec<u64>) -> Vec<BigInt> {
        a.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn reduce(&self, a: &Vec<BigInt>) -> Vec<u64> {
        let p = BigInt::from(self.p);
        a.iter().map(|c| c.mod_floor(&p).to_u64().expect("residue fits")).collect()
    }

    fn truncate_cover(&self, a: &Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
        let k = m * self.p;
        a.iter().map(|c| c.mod_floor(&k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(2, &[1, 1, 1]).unwrap());
        assert!(!is_irreducible(2, &[1, 0, 1]).unwrap());
        assert!(is_irreducible(3, &[1, 0, 1]).unwrap());
        assert!(!is_irreducible(5, &[1, 0, 1]).unwrap());
        assert!(FiniteField::new(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn search_finds_smallest() {
        let f4 = FiniteField::search(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.to_string(), "GF(2^2)[a]/(a^2 + a + 1)");
        let f8 = FiniteField::search(2, 3).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn field_axioms_in_gf9() {
        let k = FiniteField::search(3, 2).unwrap();
        let els = k.elements().unwrap();
        assert_eq!(els.len(), 9);
        for a in &els {
            if *a != k.zero() {
                assert_eq!(k.mul(a, &k.inv(a).unwrap()), k.one());
            }
            assert_eq!(k.pow(a, 9), *a);
        }
    }

    #[test]
    fn cover_reduces_to_field() {
        let k = FiniteField::search(5, 3).unwrap();
        let c = k.cover();
        let a = k.element(&[1, 2, 3]);
        let b = k.element(&[4, 0, 1]);
        let up = c.mul(&k.lift(&a), &k.lift(&b));
        assert_eq!(k.reduce(&up), k.mul(&a, &b));
    }

    #[test]
    fn render_elements() {
        let k = FiniteField::search(3, 2).unwrap();
        assert_eq!(k.render(&k.element(&[1, 2])), "2*a + 1");
        assert_eq!(k.render(&k.zero()), "0");
        assert_eq!(k.render(&k.generator()), "a");
    }
}
