use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::coef::{coef_big, Coef, CoefRing};
use crate::error::{Error, Result};
use crate::ring::CommRing;

/// Exponent vector, ordered graded-lexicographically: total degree first, then the
/// exponent of the first variable, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable order used everywhere: alphabetic prefix, then numeric suffix as a number
/// (so `e2 < e10`), then the raw string.
pub fn var_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u128>) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (head, digits) = s.split_at(cut);
        (head, digits.parse().ok())
    }
    let (ha, na) = split(a);
    let (hb, nb) = split(b);
    ha.cmp(hb).then(na.cmp(&nb)).then_with(|| a.cmp(b))
}

fn canonical_vars<S: AsRef<str>>(vars: &[S]) -> Result<Vec<String>> {
    let mut out: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    out.sort_by(|a, b| var_cmp(a, b));
    for w in out.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidArgument(format!("duplicate variable `{}`", w[0])));
        }
    }
    if let Some(bad) = out.iter().find(|v| !is_identifier(v)) {
        return Err(Error::InvalidArgument(format!("`{bad}` is not a valid variable name")));
    }
    Ok(out)
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Sparse multivariate polynomial over a [`CoefRing`].
///
/// Variables are kept sorted by [`var_cmp`]; terms never carry a zero coefficient and
/// every coefficient is the ring's canonical representative. Arithmetic requires equal
/// variable lists; use [`MultiPoly::align`] (or the `*_aligned` helpers) to merge them.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    ring: CoefRing,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Coef>,
}

impl MultiPoly {
    pub fn zero<S: AsRef<str>>(ring: CoefRing, vars: &[S]) -> Result<Self> {
        Ok(MultiPoly { ring, vars: canonical_vars(vars)?, terms: BTreeMap::new() })
    }

    pub fn constant<S: AsRef<str>>(ring: CoefRing, vars: &[S], c: &Coef) -> Result<Self> {
        let mut p = Self::zero(ring, vars)?;
        let c = p.ring.normalize(c)?;
        let n = p.vars.len();
        p.push_term(Monomial::one(n), c);
        Ok(p)
    }

    pub fn int<S: AsRef<str>>(ring: CoefRing, vars: &[S], n: i64) -> Result<Self> {
        Self::constant(ring, vars, &coef_big(BigInt::from(n)))
    }

    pub fn var<S: AsRef<str>>(ring: CoefRing, vars: &[S], name: &str) -> Result<Self> {
        let mut p = Self::zero(ring, vars)?;
        let idx = p.var_index(name).ok_or_else(|| Error::MissingVariable(name.to_string()))?;
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.push_term(Monomial(exps), Coef::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs given relative to `vars`
    /// in the caller's order; duplicates are merged and coefficients normalized.
    pub fn from_terms<S: AsRef<str>>(
        ring: CoefRing,
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, Coef)>,
    ) -> Result<Self> {
        let given: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut p = Self::zero(ring, &given)?;
        let perm: Vec<usize> =
            p.vars.iter().map(|v| given.iter().position(|g| g == v).expect("same variable set")).collect();
        for (exps, c) in terms {
            if exps.len() != given.len() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    given.len()
                )));
            }
            let c = p.ring.normalize(&c)?;
            let m = Monomial(perm.iter().map(|&i| exps[i]).collect());
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &CoefRing {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in grlex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coef)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Coef {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Coef> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Coef::zero))
    }

    /// Variables that occur with a positive exponent.
    pub fn used_vars(&self) -> Vec<String> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(m.exps()) {
                *u |= e > 0;
            }
        }
        self.vars.iter().zip(used).filter(|&(_v, u)| u).map(|(v, _u)| v.clone()).collect()
    }

    fn push_term(&mut self, m: Monomial, c: Coef) {
        if !c.is_zero() {
            self.terms.insert(m, c);
        }
    }

    fn add_term(&mut self, m: Monomial, c: &Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.ring.add_coef(existing, c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if self.vars != other.vars {
            return Err(Error::VariableMismatch { left: self.vars.clone(), right: other.vars.clone() });
        }
        Ok(())
    }

    fn empty_like(&self) -> MultiPoly {
        MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> MultiPoly {
        self.empty_like()
    }

    pub fn one_like(&self) -> MultiPoly {
        let mut p = self.empty_like();
        p.push_term(Monomial::one(self.vars.len()), Coef::one());
        p
    }

    pub fn constant_like(&self, c: &Coef) -> Result<MultiPoly> {
        let mut p = self.empty_like();
        let c = self.ring.normalize(c)?;
        p.push_term(Monomial::one(self.vars.len()), c);
        Ok(p)
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            out.push_term(m.clone(), self.ring.neg_coef(c));
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Monomial, Coef> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = self.ring.mul_coef(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(e) => *e = self.ring.add_coef(e, &prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let mut out = self.empty_like();
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    pub fn scale(&self, c: &Coef) -> Result<MultiPoly> {
        let c = self.ring.normalize(c)?;
        let mut out = self.empty_like();
        if c.is_zero() {
            return Ok(out);
        }
        for (m, a) in &self.terms {
            out.push_term(m.clone(), self.ring.mul_coef(a, &c));
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring and variables");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring and variables");
            }
        }
        acc
    }

    /// Re-expresses `self` over a superset of its variables.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<MultiPoly> {
        let target = canonical_vars(vars)?;
        if target == self.vars {
            return Ok(self.clone());
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .ok_or_else(|| Error::VariableMismatch { left: self.vars.clone(), right: target.clone() })
            })
            .collect::<Result<_>>()?;
        let mut out = MultiPoly { ring: self.ring.clone(), vars: target, terms: BTreeMap::new() };
        let n = out.vars.len();
        for (m, c) in &self.terms {
            let mut exps = vec![0; n];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[pos[i]] = e;
            }
            out.push_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Drops variables that do not occur.
    pub fn trim_vars(&self) -> MultiPoly {
        let used = self.used_vars();
        let keep: Vec<usize> = used.iter().map(|v| self.var_index(v).unwrap()).collect();
        let mut out = MultiPoly { ring: self.ring.clone(), vars: used, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.push_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        out
    }

    /// Merges the variable lists of two polynomials (by name) so they can be combined.
    pub fn align(a: &MultiPoly, b: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        if a.ring != b.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", a.ring, b.ring)));
        }
        let union: BTreeSet<&String> = a.vars.iter().chain(&b.vars).collect();
        let union: Vec<&String> = union.into_iter().collect();
        Ok((a.with_vars(&union)?, b.with_vars(&union)?))
    }

    pub fn add_aligned(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (a, b) = Self::align(self, other)?;
        a.add(&b)
    }

    pub fn sub_aligned(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (a, b) = Self::align(self, other)?;
        a.sub(&b)
    }

    pub fn mul_aligned(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (a, b) = Self::align(self, other)?;
        a.mul(&b)
    }

    /// Exchanges two variables (used for symmetry tests).
    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i, j);
            out.push_term(Monomial(e), c.clone());
        }
        out
    }

    /// Renames variables; the renamed list must stay free of duplicates.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Result<MultiPoly> {
        let new_names: Vec<String> =
            self.vars.iter().map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone())).collect();
        let terms: Vec<(Vec<u32>, Coef)> = self.terms.iter().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        MultiPoly::from_terms(self.ring.clone(), &new_names, terms)
    }

    /// Maps every coefficient into another coefficient ring (e.g. `Z -> F_p`).
    pub fn change_ring(&self, ring: CoefRing) -> Result<MultiPoly> {
        let mut out = MultiPoly { ring, vars: self.vars.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let c = out.ring.normalize(c)?;
            out.add_term(m.clone(), &c);
        }
        Ok(out)
    }

    /// Ring-homomorphic substitution of every variable.
    ///
    /// The images must share one coefficient ring (equal to `self`'s); their variable
    /// lists are merged.
    pub fn substitute(&self, assignment: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly> {
        let mut images = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let img = assignment.get(v).ok_or_else(|| Error::MissingVariable(v.clone()))?;
            if img.ring != self.ring {
                return Err(Error::RingMismatch(format!("image of `{v}` lives over {} not {}", img.ring, self.ring)));
            }
            images.push(img);
        }
        let union: BTreeSet<&String> = images.iter().flat_map(|p| p.vars.iter()).collect();
        let union: Vec<&String> = union.into_iter().collect();
        let images: Vec<MultiPoly> = images.iter().map(|p| p.with_vars(&union)).collect::<Result<_>>()?;
        let target = MultiPoly::zero(self.ring.clone(), &union)?;
        let ring = PolyEvalRing(target);
        self.eval_in(&ring, &images)
    }

    /// Evaluates at values in any commutative ring, indexed like `self.vars()`.
    pub fn eval_in<R: CommRing>(&self, ring: &R, values: &[R::Elem]) -> Result<R::Elem> {
        if values.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!("{} values for {} variables", values.len(), self.vars.len())));
        }
        let mut powers: Vec<Vec<R::Elem>> = values.iter().map(|v| vec![ring.one(), v.clone()]).collect();
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut term =
                ring.from_rational(c).ok_or_else(|| Error::Unsupported(format!("coefficient {c} has no image")))?;
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = ring.mul(table.last().unwrap(), &values[i]);
                    table.push(next);
                }
                term = ring.mul(&term, &table[e as usize]);
            }
            acc = ring.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Evaluates with values looked up by variable name.
    pub fn eval_named<R: CommRing>(&self, ring: &R, values: &BTreeMap<String, R::Elem>) -> Result<R::Elem> {
        let vals: Vec<R::Elem> = self
            .vars
            .iter()
            .map(|v| values.get(v).cloned().ok_or_else(|| Error::MissingVariable(v.clone())))
            .collect::<Result<_>>()?;
        self.eval_in(ring, &vals)
    }

    /// Weighted degree where variable `i` has weight `weights[i]`.
    pub fn weighted_degrees(&self, weights: &[u64]) -> Vec<u64> {
        self.terms.keys().map(|m| m.exps().iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()).collect()
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        match MultiPoly::align(self, other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl Eq for MultiPoly {}

/// The polynomial ring with a fixed variable list, viewed as a [`CommRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEvalRing(pub MultiPoly);

impl PolyEvalRing {
    pub fn new<S: AsRef<str>>(ring: CoefRing, vars: &[S]) -> Result<Self> {
        Ok(PolyEvalRing(MultiPoly::zero(ring, vars)?))
    }

    pub fn coef_ring(&self) -> &CoefRing {
        &self.0.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly> {
        MultiPoly::var(self.0.ring.clone(), &self.0.vars, name)
    }

    fn embed(&self, a: &MultiPoly) -> MultiPoly {
        a.with_vars(&self.0.vars).expect("element belongs to this polynomial ring")
    }
}

impl CommRing for PolyEvalRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        self.0.empty_like()
    }

    fn one(&self) -> MultiPoly {
        self.0.one_like()
    }

    fn from_int(&self, n: &BigInt) -> MultiPoly {
        self.0.constant_like(&coef_big(n.clone())).expect("integers map into every base ring")
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.embed(a).add(&self.embed(b)).expect("same polynomial ring")
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.embed(a).mul(&self.embed(b)).expect("same polynomial ring")
    }

    fn div_int_exact(&self, a: &MultiPoly, d: &BigInt) -> Option<MultiPoly> {
        let a = self.embed(a);
        let mut out = a.empty_like();
        for (m, c) in &a.terms {
            out.push_term(m.clone(), self.0.ring.div_int_exact(c, d)?);
        }
        Some(out)
    }

    fn is_torsion_free(&self) -> bool {
        self.0.ring.is_torsion_free()
    }

    fn render(&self, a: &MultiPoly) -> String {
        a.to_string()
    }

    fn char_p(&self) -> Option<u64> {
        self.0.ring.char_p()
    }

    fn from_rational(&self, q: &num_rational::BigRational) -> Option<MultiPoly> {
        self.0.constant_like(q).ok()
    }
}

impl crate::ring::IntegralLift for PolyEvalRing {
    type Cover = PolyEvalRing;

    fn cover(&self) -> PolyEvalRing {
        let ring = crate::ring::IntegralLift::cover(&self.0.ring);
        PolyEvalRing(MultiPoly { ring, vars: self.0.vars.clone(), terms: BTreeMap::new() })
    }

    fn lift(&self, a: &MultiPoly) -> MultiPoly {
        let cover = crate::ring::IntegralLift::cover(&self.0.ring);
        MultiPoly { ring: cover, vars: a.vars.clone(), terms: a.terms.clone() }
    }

    fn reduce(&self, a: &MultiPoly) -> MultiPoly {
        a.change_ring(self.0.ring.clone()).expect("integral coefficients reduce")
    }

    fn truncate_cover(&self, a: &MultiPoly, m: &BigInt) -> MultiPoly {
        if self.0.ring.modulus().is_none() {
            return a.clone();
        }
        let mut out = a.empty_like();
        for (mono, c) in &a.terms {
            let t = crate::ring::IntegralLift::truncate_cover(&self.0.ring, c, m);
            if !t.is_zero() {
                out.push_term(mono.clone(), t);
            }
        }
        out
    }
}

fn fmt_monomial(vars: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(m.exps())
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Canonical text: grlex-descending terms, `c*x^a*y^b`, unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(&self.vars, m);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coef::coef_int;

    fn zx<'a>(vars: &'a [&'a str]) -> impl Fn(&str) -> MultiPoly + 'a {
        move |v| MultiPoly::var(CoefRing::Integers, vars, v).unwrap()
    }

    #[test]
    fn natural_variable_order() {
        let mut v = vec!["e10", "e2", "f1", "e1", "x"];
        v.sort_by(|a, b| var_cmp(a, b));
        assert_eq!(v, vec!["e1", "e2", "e10", "f1", "x"]);
    }

    #[test]
    fn addition_cancels() {
        let v = zx(&["x", "y"]);
        let s = v("x").add(&v("y")).unwrap();
        let d = v("x").sub(&v("y")).unwrap();
        assert_eq!(s.add(&d).unwrap().to_string(), "2*x");
        let zero = MultiPoly::zero(CoefRing::Integers, &["x", "y"]).unwrap();
        assert_eq!(zero.add(&s).unwrap(), s);
    }

    #[test]
    fn characteristic_two_cancellation() {
        let x = MultiPoly::var(CoefRing::PrimeField(2), &["x"], "x").unwrap();
        assert!(x.add(&x).unwrap().is_zero());
    }

    #[test]
    fn product_and_freshman_dream() {
        let v = zx(&["x", "y"]);
        let p = v("x").add(&v("y")).unwrap().mul(&v("x").sub(&v("y")).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(p.mul(&p.one_like()).unwrap(), p);
        let ring = CoefRing::PrimeField(3);
        let x = MultiPoly::var(ring.clone(), &["x", "y"], "x").unwrap();
        let y = MultiPoly::var(ring, &["x", "y"], "y").unwrap();
        assert_eq!(x.add(&y).unwrap().pow(3).to_string(), "x^3 + y^3");
    }

    #[test]
    fn mismatched_variables_need_alignment() {
        let x = MultiPoly::var(CoefRing::Integers, &["x"], "x").unwrap();
        let y = MultiPoly::var(CoefRing::Integers, &["y"], "y").unwrap();
        assert!(matches!(x.add(&y), Err(Error::VariableMismatch { .. })));
        let s = x.add_aligned(&y).unwrap();
        assert_eq!(s.vars(), &["x".to_string(), "y".to_string()]);
        let q = MultiPoly::var(CoefRing::Rationals, &["x"], "x").unwrap();
        assert!(matches!(x.add_aligned(&q), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn substitution_examples() {
        let e = zx(&["e1", "f1"]);
        let sq = e("e1").pow(2);
        let xy = zx(&["x", "y"]);
        let mut asg = BTreeMap::new();
        asg.insert("e1".to_string(), xy("x").add(&xy("y")).unwrap());
        asg.insert("f1".to_string(), xy("x"));
        assert_eq!(sq.substitute(&asg).unwrap().to_string(), "x^2 + 2*x*y + y^2");

        let prod = e("e1").mul(&e("f1")).unwrap();
        let mut consts = BTreeMap::new();
        consts.insert("e1".to_string(), MultiPoly::int(CoefRing::Integers, &[] as &[&str], 2).unwrap());
        consts.insert("f1".to_string(), MultiPoly::int(CoefRing::Integers, &[] as &[&str], 3).unwrap());
        assert_eq!(prod.substitute(&consts).unwrap().constant_value(), Some(coef_int(6)));

        let ident: BTreeMap<String, MultiPoly> = ["e1", "f1"].iter().map(|v| (v.to_string(), e(v))).collect();
        assert_eq!(prod.substitute(&ident).unwrap(), prod);

        let missing: BTreeMap<String, MultiPoly> = BTreeMap::new();
        assert_eq!(prod.substitute(&missing), Err(Error::MissingVariable("e1".into())));
    }

    #[test]
    fn display_forms() {
        let ring = CoefRing::Rationals;
        let p = MultiPoly::from_terms(
            ring,
            &["y", "x"],
            vec![(vec![0, 2], coef_int(-1)), (vec![1, 0], Coef::new(1.into(), 2.into())), (vec![0, 0], coef_int(-3))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "-x^2 + 1/2*y - 3");
        assert_eq!(p.leading_term().unwrap().0.exps(), &[2, 0]);
    }

    #[test]
    fn modular_coefficients_are_canonical() {
        let p = MultiPoly::from_terms(
            CoefRing::TruncatedPadic { p: 2, precision: 3 },
            &["x"],
            vec![(vec![1], coef_int(-1)), (vec![1], coef_int(10)), (vec![0], coef_int(8))],
        )
        .unwrap();
        assert_eq!(p.to_string(), "x");
    }
}
