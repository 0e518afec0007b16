//! Finite commutative algebras over `Z/p^k`, free as modules, given by structure
//! constants on a named basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::finite_field::FiniteField;
use crate::linalg;
use crate::ring::CommRing;

/// Largest prime accepted, keeping `u64` products of residues exact.
pub const MAX_PRIME: u64 = 1 << 31;

/// Multiplication `b_i b_j = Σ_k table[i][j][k] b_k` over `Z/p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    p: u64,
    precision: u32,
    modulus: u64,
    basis: Vec<String>,
    table: Vec<Vec<Vec<u64>>>,
    unit: Vec<u64>,
}

impl FiniteAlgebra {
    /// Validates commutativity, associativity and the unit on basis elements.
    pub fn new(p: u64, precision: u32, basis: Vec<String>, table: Vec<Vec<Vec<u64>>>, unit: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if p >= MAX_PRIME || precision == 0 {
            return Err(Error::InvalidArgument(format!(
                "finite algebras need a prime below 2^31 and precision >= 1, got p={p}, precision={precision}"
            )));
        }
        let modulus = p
            .checked_pow(precision)
            .filter(|&m| m < MAX_PRIME)
            .ok_or_else(|| Error::ResourceLimit("p^precision must stay below 2^31".into()))?;
        let d = basis.len();
        if d == 0 {
            return Err(Error::InvalidArgument("algebra needs a nonempty basis".into()));
        }
        let shape_ok = table.len() == d
            && table.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && unit.len() == d;
        if !shape_ok {
            return Err(Error::InvalidArgument(format!("structure constants must have shape {d}x{d}x{d}")));
        }
        let norm = |v: &Vec<u64>| v.iter().map(|x| x % modulus).collect::<Vec<_>>();
        let table: Vec<Vec<Vec<u64>>> = table.iter().map(|row| row.iter().map(norm).collect()).collect();
        let a = FiniteAlgebra { p, precision, modulus, basis, unit: norm(&unit), table };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let bi = self.basis_vector(i);
            if self.mul(&self.unit, &bi) != bi {
                return Err(Error::InvalidArgument(format!("unit does not fix basis element `{}`", self.basis[i])));
            }
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "not commutative on `{}`, `{}`",
                        self.basis[i], self.basis[j]
                    )));
                }
                let bij = self.mul(&bi, &self.basis_vector(j));
                for k in 0..d {
                    let bk = self.basis_vector(k);
                    if self.mul(&bij, &bk) != self.mul(&bi, &self.mul(&self.basis_vector(j), &bk)) {
                        return Err(Error::InvalidArgument(format!(
                            "not associative on `{}`, `{}`, `{}`",
                            self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(Z/p^k)[t]/(f)` for monic `f` (coefficients low degree first), basis `1, t, ..., t^{d-1}`.
    pub fn truncated_polynomial(p: u64, precision: u32, f: &[i64], var: &str) -> Result<Self> {
        let d = f
            .len()
            .checked_sub(1)
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidArgument("modulus must have degree at least 1".into()))?;
        if f[d] != 1 {
            return Err(Error::InvalidArgument("modulus must be monic".into()));
        }
        let m = p.checked_pow(precision).unwrap_or(u64::MAX) as i128;
        let red: Vec<u64> = f.iter().map(|&c| (c as i128).rem_euclid(m) as u64).collect();
        // t^e for e < 2d, reduced
        let mut powers: Vec<Vec<u64>> = Vec::with_capacity(2 * d);
        for e in 0..2 * d {
            if e < d {
                let mut v = vec![0u64; d];
                v[e] = 1;
                powers.push(v);
            } else {
                let prev = powers[e - 1].clone();
                let mut v = vec![0u64; d];
                let top = prev[d - 1] as u128;
                for k in (1..d).rev() {
                    v[k] = prev[k - 1];
                }
                for k in 0..d {
                    let sub = (top * red[k] as u128 % m as u128) as u64;
                    v[k] = ((v[k] as u128 + m as u128 - sub as u128) % m as u128) as u64;
                }
                powers.push(v);
            }
        }
        let table = (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect();
        let basis = (0..d)
            .map(|e| match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            })
            .collect();
        let mut unit = vec![0; d];
        unit[0] = 1;
        Self::new(p, precision, basis, table, unit)
    }

    /// `(Z/p^k)^n` with the idempotent basis `e1..en`.
    pub fn product(p: u64, precision: u32, n: usize) -> Result<Self> {
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![0; n];
                        if i == j {
                            v[i] = 1;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(p, precision, crate::poly::indexed_names("e", n), table, vec![1; n])
    }

    /// A finite field as an `F_p`-algebra with basis `1, a, ..., a^{m-1}`.
    pub fn from_field(k: &FiniteField) -> Result<Self> {
        let m = k.degree();
        let table = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut x = vec![0; m];
                        x[i] = 1;
                        let mut y = vec![0; m];
                        y[j] = 1;
                        k.mul(&x, &y)
                    })
                    .collect()
            })
            .collect();
        let basis = (0..m)
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{e}"),
            })
            .collect();
        Self::new(k.p(), 1, basis, table, k.one())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn table(&self) -> &[Vec<Vec<u64>>] {
        &self.table
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Number of elements, `p^(precision · dim)`.
    pub fn order(&self) -> BigInt {
        BigInt::from(self.modulus).pow(self.dim() as u32)
    }

    /// All elements in counting order; refuses more than 2^20.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        let q = self
            .order()
            .to_u64()
            .filter(|&q| q <= 1 << 20)
            .ok_or_else(|| Error::ResourceLimit("element enumeration is limited to 2^20 elements".into()))?;
        Ok((0..q).map(|k| self.element_at(k)).collect())
    }

    /// The `k`-th element in counting order (first coordinate varies fastest).
    pub fn element_at(&self, mut k: u64) -> Vec<u64> {
        (0..self.dim())
            .map(|_| {
                let c = k % self.modulus;
                k /= self.modulus;
                c
            })
            .collect()
    }

    pub fn index_of(&self, x: &[u64]) -> u64 {
        x.iter().rev().fold(0, |acc, &c| acc * self.modulus + c)
    }

    /// The reduction `A/pA` as an `F_p`-algebra.
    pub fn mod_p(&self) -> FiniteAlgebra {
        let p = self.p;
        let table =
            self.table.iter().map(|row| row.iter().map(|v| v.iter().map(|x| x % p).collect()).collect()).collect();
        let unit = self.unit.iter().map(|x| x % p).collect();
        FiniteAlgebra::new(p, 1, self.basis.clone(), table, unit).expect("reduction of a valid algebra")
    }

    fn require_field_base(&self) -> Result<()> {
        if self.precision != 1 {
            return Err(Error::Unsupported("linear algebra needs an F_p-algebra (precision 1)".into()));
        }
        Ok(())
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: &[u64]) -> Vec<u64> {
        self.pow(&x.to_vec(), self.p)
    }

    /// Rows `φ(b_i)`: the matrix of Frobenius, which is `F_p`-linear.
    pub fn frobenius_matrix(&self) -> Result<Vec<Vec<u64>>> {
        self.require_field_base()?;
        Ok((0..self.dim()).map(|i| self.frobenius(&self.basis_vector(i))).collect())
    }

    pub fn frobenius_is_bijective(&self) -> Result<bool> {
        Ok(linalg::rank(&self.frobenius_matrix()?, self.p) == self.dim())
    }

    /// The subalgebra spanned by `vectors` (which must be closed under products and
    /// contain 1), presented on its reduced echelon basis; also returns that basis.
    pub fn subalgebra(
        &self,
        vectors: &[Vec<u64>],
        names: Option<Vec<String>>,
    ) -> Result<(FiniteAlgebra, Vec<Vec<u64>>)> {
        self.require_field_base()?;
        let basis = linalg::span_basis(vectors, self.p);
        let coords = |v: &[u64]| {
            linalg::solve_in_span(&basis, v, self.p)
                .ok_or_else(|| Error::InvalidArgument("span is not closed under multiplication".into()))
        };
        let table = basis
            .iter()
            .map(|a| basis.iter().map(|b| coords(&self.mul(&a.to_vec(), &b.to_vec()))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = coords(&self.unit)?;
        let names = names.unwrap_or_else(|| basis.iter().map(|v| self.render(v)).collect());
        Ok((FiniteAlgebra::new(self.p, 1, names, table, unit)?, basis))
    }

    /// Basis-free dump for JSON output.
    pub fn to_json(&self) -> FiniteAlgebraJson {
        FiniteAlgebraJson {
            p: self.p,
            precision: self.precision,
            basis: self.basis.clone(),
            table: self.table.clone(),
            unit: self.unit.clone(),
        }
    }
}

/// `{"p", "precision", "basis", "table", "unit"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAlgebraJson {
    pub p: u64,
    #[serde(default = "default_precision")]
    pub precision: u32,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
}

fn default_precision() -> u32 {
    1
}

impl TryFrom<&FiniteAlgebraJson> for FiniteAlgebra {
    type Error = Error;

    fn try_from(j: &FiniteAlgebraJson) -> Result<Self> {
        FiniteAlgebra::new(j.p, j.precision, j.basis.clone(), j.table.clone(), j.unit.clone())
    }
}

impl CommRing for FiniteAlgebra {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    fn one(&self) -> Vec<u64> {
        self.unit.clone()
    }

    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        let c = n.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("residue fits");
        self.unit.iter().map(|u| u * c % self.modulus).collect()
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.modulus).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.modulus - x) % self.modulus).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let m = self.modulus;
        let d = self.dim();
        let mut out = vec![0u64; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = x * y % m;
                for (k, &t) in self.table[i][j].iter().enumerate() {
                    if t != 0 {
                        out[k] = (out[k] + c * t) % m;
                    }
                }
            }
        }
        out
    }

    fn div_int_exact(&self, a: &Vec<u64>, d: &BigInt) -> Option<Vec<u64>> {
        let inv = crate::arith::mod_inverse(d, &BigInt::from(self.modulus))?;
        Some(self.mul(a, &self.from_int(&inv)))
    }

    fn is_torsion_free(&self) -> bool {
        false
    }

    /// Linear combination of basis names, e.g. `1 + 2*t`.
    fn render(&self, a: &Vec<u64>) -> String {
        let parts: Vec<String> = a
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| **c != 0)
            .map(|(c, b)| match (*c, b.as_str()) {
                (c, "1") => c.to_string(),
                (1, b) => b.to_string(),
                (c, b) => format!("{c}*{b}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn char_p(&self) -> Option<u64> {
        (self.precision == 1).then_some(self.p)
    }
}

/// Linear map given by the images of basis vectors, checked to be a ring isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub images: Vec<Vec<u64>>,
}

impl AlgebraMap {
    pub fn apply(&self, target: &FiniteAlgebra, x: &[u64]) -> Vec<u64> {
        linalg::vec_mat(x, &self.images, target.modulus())
    }

    /// Multiplicative on basis pairs and unital.
    pub fn is_homomorphism(&self, source: &FiniteAlgebra, target: &FiniteAlgebra) -> bool {
        let d = source.dim();
        if self.apply(target, source.unit()) != target.unit() {
            return false;
        }
        (0..d).all(|i| {
            (i..d).all(|j| {
                let lhs = self.apply(target, &source.mul(&source.basis_vector(i), &source.basis_vector(j)));
                let rhs = target.mul(&self.images[i], &self.images[j]);
                lhs == rhs
            })
        })
    }
}

/// A small set of algebra generators, with a basis of monomials in them: `(generators,
/// monomials)` where each monomial is an exponent vector over the generators.
fn generating_monomials(a: &FiniteAlgebra) -> (Vec<Vec<u64>>, Vec<Vec<u32>>, Vec<Vec<u64>>) {
    let p = a.p();
    let mut gens: Vec<Vec<u64>> = Vec::new();
    loop {
        let (monos, vecs) = monomial_span(a, &gens);
        if vecs.len() == a.dim() {
            return (gens, monos, vecs);
        }
        // add the first basis vector outside the current subalgebra
        let next = (0..a.dim())
            .map(|i| a.basis_vector(i))
            .find(|b| linalg::solve_in_span(&linalg::span_basis(&vecs, p), b, p).is_none())
            .expect("some basis vector lies outside a proper subalgebra");
        gens.push(next);
    }
}

/// Monomials in `gens` forming a basis of the generated subalgebra.
fn monomial_span(a: &FiniteAlgebra, gens: &[Vec<u64>]) -> (Vec<Vec<u32>>, Vec<Vec<u64>>) {
    let p = a.p();
    let mut monos = vec![vec![0u32; gens.len()]];
    let mut vecs = vec![a.one()];
    let mut frontier = 0;
    while frontier < monos.len() {
        for (g, gv) in gens.iter().enumerate() {
            let v = a.mul(&vecs[frontier], gv);
            let mut trial = vecs.clone();
            trial.push(v.clone());
            if linalg::rank(&trial, p) > vecs.len() {
                let mut m = monos[frontier].clone();
                m[g] += 1;
                monos.push(m);
                vecs.push(v);
            }
        }
        frontier += 1;
    }
    (monos, vecs)
}

/// Brute-force search for a ring isomorphism `a → b` (both over `F_p`): enumerate images
/// of a generating set and test every candidate. Returns the first one found.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, max_candidates: u64) -> Result<Option<AlgebraMap>> {
    a.require_field_base()?;
    b.require_field_base()?;
    if a.p() != b.p() || a.dim() != b.dim() {
        return Ok(None);
    }
    let p = a.p();
    let (gens, monos, vecs) = generating_monomials(a);
    let q = b.order().to_u64().unwrap_or(u64::MAX);
    let total = (q as u128).checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if total > u128::from(max_candidates) {
        return Err(Error::ResourceLimit(format!(
            "isomorphism search would try {total} candidates (limit {max_candidates})"
        )));
    }
    // basis vectors of `a` in terms of the monomial basis
    let to_monomials = linalg::invert(&vecs, p).expect("monomials form a basis");
    for k in 0..total as u64 {
        let mut rest = k;
        let images: Vec<Vec<u64>> = (0..gens.len())
            .map(|_| {
                let e = b.element_at(rest % q);
                rest /= q;
                e
            })
            .collect();
        let mono_images: Vec<Vec<u64>> = monos
            .iter()
            .map(|m| m.iter().zip(&images).fold(b.one(), |acc, (&e, g)| b.mul(&acc, &b.pow(g, u64::from(e)))))
            .collect();
        if linalg::rank(&mono_images, p) < b.dim() {
            continue;
        }
        let basis_images: Vec<Vec<u64>> =
            to_monomials.iter().map(|row| linalg::vec_mat(row, &mono_images, p)).collect();
        let map = AlgebraMap { images: basis_images };
        if map.is_homomorphism(a, b) {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// Exhaustive comparison of addition and multiplication tables under `map`, plus
/// bijectivity. Returns the first violating pair of element indices.
pub fn check_tables(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &AlgebraMap) -> Result<Option<(u64, u64)>> {
    let els = a.elements()?;
    let images: Vec<Vec<u64>> = els.iter().map(|x| map.apply(b, x)).collect();
    let mut seen = std::collections::HashSet::new();
    for img in &images {
        if !seen.insert(b.index_of(img)) {
            return Ok(Some((a.index_of(img), a.index_of(img))));
        }
    }
    if seen.len() as u128 != b.order().to_u128().unwrap_or(0) {
        return Ok(Some((0, 0)));
    }
    for (i, x) in els.iter().enumerate() {
        for (j, y) in els.iter().enumerate().skip(i) {
            let sum_ok = map.apply(b, &a.add(x, y)) == b.add(&images[i], &images[j]);
            let prod_ok = map.apply(b, &a.mul(x, y)) == b.mul(&images[i], &images[j]);
            if !sum_ok || !prod_ok {
                return Ok(Some((i as u64, j as u64)));
            }
        }
    }
    Ok(None)
}
