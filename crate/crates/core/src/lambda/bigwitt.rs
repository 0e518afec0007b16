//! The truncated universal λ-ring `Λ_N(R)`: series `1 + a_1 t + ... + a_N t^N`, added by
//! series multiplication and multiplied through the universal polynomials `P_n`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::tables::LambdaTables;
use crate::error::{Error, Result};
use crate::poly::{parse_coef, Coef, CoefRing, CoefRingJson};
use crate::ring::CommRing;

#[derive(Debug, Clone, PartialEq)]
pub struct BigWitt<R: CommRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

/// Elements over the basic coefficient rings, as handled by the CLI.
pub type BigWittElement = BigWitt<CoefRing>;

impl<R: CommRing> BigWitt<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("truncation order N must be at least 1".into()));
        }
        Ok(BigWitt { ring, coeffs })
    }

    /// The additive identity, the series `1`.
    pub fn zero(ring: R, n: usize) -> Result<Self> {
        let z = ring.zero();
        Self::new(ring, vec![z; n])
    }

    /// The multiplicative identity `[1] = 1 + t`.
    pub fn one(ring: R, n: usize) -> Result<Self> {
        Self::line(ring.clone(), ring.one(), n)
    }

    /// `1 + a t`, the image of a rank-one element.
    pub fn line(ring: R, a: R::Elem, n: usize) -> Result<Self> {
        let mut w = Self::zero(ring, n)?;
        w.coeffs[0] = a;
        Ok(w)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// `a_1, ..., a_N`.
    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::InvalidArgument(format!(
                "truncation orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    /// `a_0 = 1, a_1, ..., a_N`.
    fn series(&self) -> Vec<R::Elem> {
        let mut s = vec![self.ring.one()];
        s.extend(self.coeffs.iter().cloned());
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let (a, b) = (self.series(), other.series());
        let r = &self.ring;
        let coeffs = (1..=self.order())
            .map(|n| {
                let mut acc = r.zero();
                for k in 0..=n {
                    acc = r.add(&acc, &r.mul(&a[k], &b[n - k]));
                }
                acc
            })
            .collect();
        Ok(BigWitt { ring: self.ring.clone(), coeffs })
    }

    /// Additive inverse: the reciprocal series.
    pub fn neg(&self) -> Self {
        let r = &self.ring;
        let a = self.series();
        let mut b = vec![r.one()];
        for n in 1..=self.order() {
            let mut acc = r.zero();
            for k in 1..=n {
                acc = r.add(&acc, &r.mul(&a[k], &b[n - k]));
            }
            b.push(r.neg(&acc));
        }
        BigWitt { ring: self.ring.clone(), coeffs: b.split_off(1) }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `n`-th coefficient is `P_n(a_1..a_n; b_1..b_n)`.
    pub fn mul_with(&self, other: &Self, tables: &LambdaTables) -> Result<Self> {
        self.compatible(other)?;
        let mut coeffs = Vec::with_capacity(self.order());
        for n in 1..=self.order() {
            let p = tables.mult(n)?;
            // variables are e1..en, f1..fn in this order
            let mut values: Vec<R::Elem> = self.coeffs[..n].to_vec();
            values.extend(other.coeffs[..n].iter().cloned());
            coeffs.push(p.poly.eval_in(&self.ring, &values)?);
        }
        Ok(BigWitt { ring: self.ring.clone(), coeffs })
    }

    /// `λ^n` with `out_len` output coefficients (default `N / n`); coefficient `j`
    /// is `P_{j,n}(a_1, ..., a_{jn})`, so `out_len * n <= N` is required.
    pub fn lambda_with(&self, n: usize, out_len: Option<usize>, tables: &LambdaTables) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "lambda^0 is the constant 1, not an element of 1 + tR[[t]] with N >= 1".into(),
            ));
        }
        let out_len = out_len.unwrap_or(self.order() / n);
        if out_len == 0 || out_len * n > self.order() {
            return Err(Error::Precision(format!(
                "lambda^{n} with {out_len} output coefficients needs N >= {}, have N = {}",
                out_len.max(1) * n,
                self.order()
            )));
        }
        let mut coeffs = Vec::with_capacity(out_len);
        for j in 1..=out_len {
            let p = tables.comp(j, n)?;
            coeffs.push(p.poly.eval_in(&self.ring, &self.coeffs[..j * n])?);
        }
        Ok(BigWitt { ring: self.ring.clone(), coeffs })
    }

    /// Ghost components `gh_1, ..., gh_N`: the power sums of the formal roots, from
    /// Newton's identity `n a_n = Σ_{k=1}^{n} (-1)^{k-1} gh_k a_{n-k}`.
    pub fn ghost(&self) -> Result<Vec<R::Elem>> {
        if !self.ring.is_torsion_free() {
            return Err(Error::Unsupported("ghost components need a torsion-free ring".into()));
        }
        let r = &self.ring;
        let a = self.series();
        let mut gh: Vec<R::Elem> = Vec::with_capacity(self.order());
        for n in 1..=self.order() {
            // (-1)^{n-1} gh_n = n a_n - Σ_{k<n} (-1)^{k-1} gh_k a_{n-k}
            let mut acc = r.scale_int(&a[n], &BigInt::from(n));
            for k in 1..n {
                let t = r.mul(&gh[k - 1], &a[n - k]);
                acc = if k % 2 == 1 { r.sub(&acc, &t) } else { r.add(&acc, &t) };
            }
            gh.push(if n % 2 == 1 { acc } else { r.neg(&acc) });
        }
        Ok(gh)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| self.ring.render(c)).collect();
        format!("[{}]", parts.join(","))
    }
}

pub fn bigwitt_add<R: CommRing>(u: &BigWitt<R>, v: &BigWitt<R>) -> Result<BigWitt<R>> {
    u.add(v)
}

pub fn bigwitt_mul<R: CommRing>(u: &BigWitt<R>, v: &BigWitt<R>) -> Result<BigWitt<R>> {
    u.mul_with(v, LambdaTables::global())
}

pub fn bigwitt_lambda<R: CommRing>(n: usize, u: &BigWitt<R>) -> Result<BigWitt<R>> {
    u.lambda_with(n, None, LambdaTables::global())
}

pub fn bigwitt_ghost<R: CommRing>(u: &BigWitt<R>) -> Result<Vec<R::Elem>> {
    u.ghost()
}

/// `{"N": ..., "ring": {...}, "coeffs": ["a1", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigWittJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub ring: CoefRingJson,
    pub coeffs: Vec<String>,
}

impl From<&BigWittElement> for BigWittJson {
    fn from(w: &BigWittElement) -> Self {
        BigWittJson {
            n: w.order(),
            ring: w.ring().into(),
            coeffs: w.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<&BigWittJson> for BigWittElement {
    type Error = Error;

    fn try_from(j: &BigWittJson) -> Result<Self> {
        let ring = CoefRing::try_from(&j.ring)?;
        if j.coeffs.len() != j.n {
            return Err(Error::InvalidArgument(format!("expected {} coefficients, found {}", j.n, j.coeffs.len())));
        }
        let coeffs = j.coeffs.iter().map(|c| ring.normalize(&parse_coef(c)?)).collect::<Result<Vec<Coef>>>()?;
        BigWitt::new(ring, coeffs)
    }
}
