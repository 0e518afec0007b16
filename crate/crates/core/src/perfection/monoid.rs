//! Monoid algebras `A[t^{1/p^∞}]` on exponents in `Z[1/p]_{>=0}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::poly::{parse_coef, Coef, CoefRing, CoefRingJson};
use crate::ring::CommRing;

/// `num / p^pden` in lowest terms: `pden == 0` or `p` does not divide `num`.
///
/// The prime is carried by the owning algebra. Exponents whose numerator would leave
/// `u64` panic in ring operations; keep denominators at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exponent {
    pub num: u64,
    pub pden: u32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { num: 0, pden: 0 };

    pub fn new(num: u64, pden: u32, p: u64) -> Result<Self> {
        Exponent { num, pden }.normalized(p)
    }

    pub fn int(n: u64) -> Self {
        Exponent { num: n, pden: 0 }
    }

    fn normalized(mut self, p: u64) -> Result<Self> {
        if self.num == 0 {
            return Ok(Exponent::ZERO);
        }
        while self.pden > 0 && self.num.is_multiple_of(p) {
            self.num /= p;
            self.pden -= 1;
        }
        if (p as u128).checked_pow(self.pden).is_none_or(|d| d > u64::MAX as u128) {
            return Err(Error::ResourceLimit(format!("exponent denominator {p}^{} is too large", self.pden)));
        }
        Ok(self)
    }

    pub fn add(self, other: Exponent, p: u64) -> Result<Exponent> {
        let d = self.pden.max(other.pden);
        let scale = |e: Exponent| -> Option<u128> { (p as u128).checked_pow(d - e.pden)?.checked_mul(e.num as u128) };
        let total = scale(self)
            .zip(scale(other))
            .and_then(|(a, b)| a.checked_add(b))
            .and_then(|s| u64::try_from(s).ok().or_else(|| reduce_wide(s, d, p)));
        let num = total.ok_or_else(|| Error::ResourceLimit("exponent numerator overflow".into()))?;
        Exponent { num, pden: d }.normalized(p)
    }

    /// `self · p^k` for `k` of either sign.
    pub fn scale_p(self, k: i32, p: u64) -> Result<Exponent> {
        if self.num == 0 {
            return Ok(self);
        }
        if k <= 0 {
            return Exponent { num: self.num, pden: self.pden + k.unsigned_abs() }.normalized(p);
        }
        let k = k as u32;
        if k <= self.pden {
            return Exponent { num: self.num, pden: self.pden - k }.normalized(p);
        }
        let num = (p as u128)
            .checked_pow(k - self.pden)
            .and_then(|f| f.checked_mul(self.num as u128))
            .and_then(|n| u64::try_from(n).ok())
            .ok_or_else(|| Error::ResourceLimit("exponent numerator overflow".into()))?;
        Ok(Exponent { num, pden: 0 })
    }

    pub fn value(self, p: u64) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(p).pow(self.pden))
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn render(self, p: u64) -> String {
        if self.pden == 0 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, p.pow(self.pden))
        }
    }
}

// a numerator that only fits after cancelling common factors of p
fn reduce_wide(mut s: u128, mut d: u32, p: u64) -> Option<u64> {
    while d > 0 && s.is_multiple_of(p as u128) {
        s /= p as u128;
        d -= 1;
    }
    u64::try_from(s).ok()
}

/// Finitely supported `Σ c · t1^{a1} ⋯ tk^{ak}` keyed by canonical exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PerfectPoly {
    terms: BTreeMap<Vec<Exponent>, Coef>,
}

impl PerfectPoly {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Exponent>, &Coef)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[Exponent]) -> Coef {
        self.terms.get(exps).cloned().unwrap_or_else(Coef::zero)
    }
}

/// `base[t1^{1/p^∞}, …, tk^{1/p^∞}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMonoidAlgebra {
    base: CoefRing,
    p: u64,
    vars: Vec<String>,
}

impl PerfectMonoidAlgebra {
    pub fn new<S: AsRef<str>>(base: CoefRing, p: u64, vars: &[S]) -> Result<Self> {
        require_prime(p)?;
        base.validate()?;
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !crate::poly::multi::is_identifier(v) || vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("bad or duplicate variable `{v}`")));
            }
        }
        Ok(PerfectMonoidAlgebra { base, p, vars })
    }

    pub fn base(&self) -> &CoefRing {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn exponent(&self, num: u64, pden: u32) -> Result<Exponent> {
        Exponent::new(num, pden, self.p)
    }

    pub fn monomial(&self, c: &Coef, exps: &[Exponent]) -> Result<PerfectPoly> {
        if exps.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!("{} exponents for {} variables", exps.len(), self.vars.len())));
        }
        let exps = exps.iter().map(|e| e.normalized(self.p)).collect::<Result<Vec<_>>>()?;
        let c = self.base.normalize(c)?;
        let mut out = PerfectPoly::default();
        if !c.is_zero() {
            out.terms.insert(exps, c);
        }
        Ok(out)
    }

    /// `var^{num/p^pden}`.
    pub fn var_power(&self, var: &str, num: u64, pden: u32) -> Result<PerfectPoly> {
        let i = self.vars.iter().position(|v| v == var).ok_or_else(|| Error::MissingVariable(var.to_string()))?;
        let mut exps = vec![Exponent::ZERO; self.vars.len()];
        exps[i] = self.exponent(num, pden)?;
        self.monomial(&Coef::one(), &exps)
    }

    /// Multiplies every exponent by `p^k` (`k` may be negative). Over `F_p` with `k = 1`
    /// this is Frobenius; for every `k` it is a ring automorphism.
    pub fn scale_exponents(&self, f: &PerfectPoly, k: i32) -> Result<PerfectPoly> {
        let mut out = PerfectPoly::default();
        for (exps, c) in &f.terms {
            let scaled = exps.iter().map(|e| e.scale_p(k, self.p)).collect::<Result<Vec<_>>>()?;
            out.terms.insert(scaled, c.clone());
        }
        Ok(out)
    }

    /// `f ↦ f^p`; needs a base of characteristic `p`.
    pub fn frobenius(&self, f: &PerfectPoly) -> Result<PerfectPoly> {
        self.require_char_p()?;
        self.scale_exponents(f, 1)
    }

    /// The unique `g` with `g^p = f`.
    pub fn frobenius_inverse(&self, f: &PerfectPoly) -> Result<PerfectPoly> {
        self.require_char_p()?;
        self.scale_exponents(f, -1)
    }

    fn require_char_p(&self) -> Result<()> {
        if self.base.char_p() != Some(self.p) {
            return Err(Error::Unsupported(format!("Frobenius needs coefficients in F_{}, got {}", self.p, self.base)));
        }
        Ok(())
    }

    pub fn try_mul(&self, a: &PerfectPoly, b: &PerfectPoly) -> Result<PerfectPoly> {
        let mut out = PerfectPoly::default();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps = ea.iter().zip(eb).map(|(x, y)| x.add(*y, self.p)).collect::<Result<Vec<_>>>()?;
                self.add_term(&mut out, exps, &self.base.mul_coef(ca, cb));
            }
        }
        Ok(out)
    }

    fn add_term(&self, f: &mut PerfectPoly, exps: Vec<Exponent>, c: &Coef) {
        let sum = match f.terms.get(&exps) {
            Some(old) => self.base.add_coef(old, c),
            None => c.clone(),
        };
        if sum.is_zero() {
            f.terms.remove(&exps);
        } else {
            f.terms.insert(exps, sum);
        }
    }

    fn total_degree(&self, exps: &[Exponent]) -> BigRational {
        exps.iter().fold(BigRational::zero(), |acc, e| acc + e.value(self.p))
    }

    /// Terms by descending total degree, ties broken by the exponent vector (descending).
    fn sorted_terms<'a>(&self, f: &'a PerfectPoly) -> Vec<(&'a Vec<Exponent>, &'a Coef)> {
        let mut terms: Vec<_> = f.terms.iter().collect();
        let key = |e: &Vec<Exponent>| (self.total_degree(e), e.iter().map(|x| x.value(self.p)).collect::<Vec<_>>());
        terms.sort_by(|a, b| key(b.0).partial_cmp(&key(a.0)).unwrap_or(Ordering::Equal));
        terms
    }

    pub fn to_json(&self, f: &PerfectPoly) -> PerfectPolyJson {
        PerfectPolyJson {
            p: self.p,
            ring: CoefRingJson::from(&self.base),
            vars: self.vars.clone(),
            terms: self
                .sorted_terms(f)
                .into_iter()
                .map(|(e, c)| PerfectTermJson { coef: c.to_string(), exps: e.clone() })
                .collect(),
        }
    }

    pub fn from_json(j: &PerfectPolyJson) -> Result<(PerfectMonoidAlgebra, PerfectPoly)> {
        let alg = PerfectMonoidAlgebra::new(CoefRing::try_from(&j.ring)?, j.p, &j.vars)?;
        let mut f = PerfectPoly::default();
        for t in &j.terms {
            let m = alg.monomial(&parse_coef(&t.coef)?, &t.exps)?;
            f = alg.add(&f, &m);
        }
        Ok((alg, f))
    }
}

/// `{"p", "ring", "vars", "terms": [{"coef", "exps": [{"num", "pden"}, ...]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectPolyJson {
    pub p: u64,
    pub ring: CoefRingJson,
    pub vars: Vec<String>,
    pub terms: Vec<PerfectTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectTermJson {
    pub coef: String,
    pub exps: Vec<Exponent>,
}

impl CommRing for PerfectMonoidAlgebra {
    type Elem = PerfectPoly;

    fn zero(&self) -> PerfectPoly {
        PerfectPoly::default()
    }

    fn one(&self) -> PerfectPoly {
        self.from_int(&BigInt::one())
    }

    fn from_int(&self, n: &BigInt) -> PerfectPoly {
        let c = self.base.from_int(n);
        let mut out = PerfectPoly::default();
        if !c.is_zero() {
            out.terms.insert(vec![Exponent::ZERO; self.vars.len()], c);
        }
        out
    }

    fn add(&self, a: &PerfectPoly, b: &PerfectPoly) -> PerfectPoly {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            self.add_term(&mut out, e.clone(), c);
        }
        out
    }

    fn neg(&self, a: &PerfectPoly) -> PerfectPoly {
        PerfectPoly { terms: a.terms.iter().map(|(e, c)| (e.clone(), self.base.neg_coef(c))).collect() }
    }

    /// Panics if an exponent numerator leaves `u64`; use [`try_mul`](Self::try_mul) to get an error instead.
    fn mul(&self, a: &PerfectPoly, b: &PerfectPoly) -> PerfectPoly {
        self.try_mul(a, b).expect("exponent arithmetic within u64")
    }

    fn div_int_exact(&self, a: &PerfectPoly, d: &BigInt) -> Option<PerfectPoly> {
        let terms = a
            .terms
            .iter()
            .map(|(e, c)| self.base.div_int_exact(c, d).map(|q| (e.clone(), q)))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(PerfectPoly { terms })
    }

    fn is_torsion_free(&self) -> bool {
        self.base.is_torsion_free()
    }

    /// `3*t^(3/4) + t - 1`.
    fn render(&self, f: &PerfectPoly) -> String {
        let mut s = String::new();
        for (k, (exps, c)) in self.sorted_terms(f).into_iter().enumerate() {
            let (negative, mag) = (c.is_negative(), c.abs());
            s.push_str(match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(exps)
                .filter(|(_, e)| !e.is_zero())
                .map(|(v, e)| match (e.num, e.pden) {
                    (1, 0) => v.clone(),
                    (_, 0) => format!("{v}^{}", e.num),
                    _ => format!("{v}^({})", e.render(self.p)),
                })
                .collect();
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => s.push_str(&mag.to_string()),
                (false, true) => s.push_str(&mono.join("*")),
                (false, false) => s.push_str(&format!("{mag}*{}", mono.join("*"))),
            }
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }

    fn char_p(&self) -> Option<u64> {
        self.base.char_p()
    }
}

impl fmt::Display for PerfectMonoidAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots: Vec<String> = self.vars.iter().map(|v| format!("{v}^(1/{}^inf)", self.p)).collect();
        write!(f, "{}[{}]", self.base, roots.join(", "))
    }
}
