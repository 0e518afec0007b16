//! The colimit perfection `colim(R → R → ⋯)` along Frobenius for `R = F_p[vars]`,
//! with elements kept as formal `p^m`-th roots of elements of `R`.

use num_bigint::BigInt;

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::perfection::monoid::{Exponent, PerfectMonoidAlgebra, PerfectPoly};
use crate::poly::{Coef, CoefRing, MultiPoly};
use crate::ring::CommRing;

/// `(rep, stage)` stands for the `p^stage`-th root of `rep`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staged {
    pub rep: MultiPoly,
    pub stage: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitPerfection {
    p: u64,
    template: MultiPoly,
}

impl ColimitPerfection {
    /// The colimit perfection of `F_p[vars]`.
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Self> {
        require_prime(p)?;
        Ok(ColimitPerfection { p, template: MultiPoly::zero(CoefRing::PrimeField(p), vars)? })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn vars(&self) -> &[String] {
        self.template.vars()
    }

    /// `x` at stage 0; `x` is moved into `F_p[vars]`.
    pub fn element(&self, x: &MultiPoly) -> Result<Staged> {
        self.root(x, 0)
    }

    /// The formal `p^stage`-th root of `x`, canonicalized.
    pub fn root(&self, x: &MultiPoly, stage: u32) -> Result<Staged> {
        let rep = x.change_ring(CoefRing::PrimeField(self.p))?.with_vars(self.vars())?;
        if rep.vars() != self.vars() {
            return Err(Error::VariableMismatch { left: self.vars().to_vec(), right: x.vars().to_vec() });
        }
        Ok(self.canonical(Staged { rep, stage }))
    }

    pub fn var(&self, name: &str) -> Result<Staged> {
        self.element(&MultiPoly::var(CoefRing::PrimeField(self.p), self.vars(), name)?)
    }

    /// Minimal stage: strip `p`-th roots while every exponent is divisible by `p`.
    pub fn canonical(&self, mut x: Staged) -> Staged {
        let p = self.p as u32;
        while x.stage > 0 && x.rep.terms().all(|(m, _)| m.exps().iter().all(|e| e % p == 0)) {
            x.rep = self.map_exponents(&x.rep, |e| e / p);
            x.stage -= 1;
        }
        if x.rep.is_zero() {
            x.stage = 0;
        }
        x
    }

    fn map_exponents(&self, x: &MultiPoly, f: impl Fn(u32) -> u32) -> MultiPoly {
        MultiPoly::from_terms(
            x.ring().clone(),
            x.vars(),
            x.terms().map(|(m, c)| (m.exps().iter().map(|&e| f(e)).collect(), c.clone())),
        )
        .expect("same ring and variables")
    }

    /// `x^{p^k}` in `F_p[vars]`: coefficients are fixed, exponents scale.
    fn raise(&self, x: &MultiPoly, k: u32) -> MultiPoly {
        let f = (self.p as u32).pow(k);
        self.map_exponents(x, |e| e * f)
    }

    /// Both operands at their common stage.
    fn common(&self, a: &Staged, b: &Staged) -> (MultiPoly, MultiPoly, u32) {
        let m = a.stage.max(b.stage);
        (self.raise(&a.rep, m - a.stage), self.raise(&b.rep, m - b.stage), m)
    }

    pub fn frobenius(&self, x: &Staged) -> Staged {
        self.canonical(Staged { rep: self.raise(&x.rep, 1), stage: x.stage })
    }

    pub fn frobenius_inverse(&self, x: &Staged) -> Staged {
        self.canonical(Staged { rep: x.rep.clone(), stage: x.stage + 1 })
    }

    /// The target `F_p[t^{1/p^∞}]` (same variables) of [`to_monoid`](Self::to_monoid).
    pub fn monoid_algebra(&self) -> PerfectMonoidAlgebra {
        PerfectMonoidAlgebra::new(CoefRing::PrimeField(self.p), self.p, self.vars())
            .expect("validated prime and variables")
    }

    /// The isomorphism onto the monoid algebra: `t^e` at stage `m` goes to `t^{e/p^m}`.
    pub fn to_monoid(&self, x: &Staged) -> Result<PerfectPoly> {
        let target = self.monoid_algebra();
        let mut out = target.zero();
        for (m, c) in x.rep.terms() {
            let exps =
                m.exps().iter().map(|&e| Exponent::new(u64::from(e), x.stage, self.p)).collect::<Result<Vec<_>>>()?;
            out = target.add(&out, &target.monomial(c, &exps)?);
        }
        Ok(out)
    }

    pub fn from_monoid(&self, f: &PerfectPoly) -> Result<Staged> {
        let stage = f.terms().flat_map(|(e, _)| e.iter().map(|x| x.pden)).max().unwrap_or(0);
        let terms = f
            .terms()
            .map(|(exps, c)| {
                let scaled = exps
                    .iter()
                    .map(|e| {
                        (self.p as u128)
                            .checked_pow(stage - e.pden)
                            .and_then(|s| s.checked_mul(u128::from(e.num)))
                            .and_then(|n| u32::try_from(n).ok())
                            .ok_or_else(|| {
                                Error::ResourceLimit("exponent too large for a staged representative".into())
                            })
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Ok((scaled, c.clone()))
            })
            .collect::<Result<Vec<(Vec<u32>, Coef)>>>()?;
        let rep = MultiPoly::from_terms(CoefRing::PrimeField(self.p), self.vars(), terms)?;
        Ok(self.canonical(Staged { rep, stage }))
    }
}

impl CommRing for ColimitPerfection {
    type Elem = Staged;

    fn zero(&self) -> Staged {
        Staged { rep: self.template.clone(), stage: 0 }
    }

    fn one(&self) -> Staged {
        Staged { rep: self.template.one_like(), stage: 0 }
    }

    fn from_int(&self, n: &BigInt) -> Staged {
        let c = CoefRing::PrimeField(self.p).from_int(n);
        Staged { rep: self.template.constant_like(&c).expect("canonical residue"), stage: 0 }
    }

    fn add(&self, a: &Staged, b: &Staged) -> Staged {
        let (x, y, m) = self.common(a, b);
        self.canonical(Staged { rep: x.add(&y).expect("same variables"), stage: m })
    }

    fn neg(&self, a: &Staged) -> Staged {
        Staged { rep: a.rep.neg(), stage: a.stage }
    }

    fn mul(&self, a: &Staged, b: &Staged) -> Staged {
        let (x, y, m) = self.common(a, b);
        self.canonical(Staged { rep: x.mul(&y).expect("same variables"), stage: m })
    }

    fn div_int_exact(&self, a: &Staged, d: &BigInt) -> Option<Staged> {
        let inv = CoefRing::PrimeField(self.p).div_int_exact(&Coef::from_integer(1.into()), d)?;
        Some(Staged { rep: a.rep.scale(&inv).ok()?, stage: a.stage })
    }

    fn is_torsion_free(&self) -> bool {
        false
    }

    /// `(t^2 + 1)^(1/p^m)`, or the plain polynomial at stage 0.
    fn render(&self, a: &Staged) -> String {
        if a.stage == 0 {
            a.rep.to_string()
        } else {
            format!("({})^(1/{})", a.rep, self.p.pow(a.stage))
        }
    }

    fn char_p(&self) -> Option<u64> {
        Some(self.p)
    }
}
