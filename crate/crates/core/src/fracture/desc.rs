//! Windowed descriptions of commutative rings and the check that `R/p` is perfect.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::require_prime;
use crate::binomial::{BinomialRing, IntValuedPoly};
use crate::error::{Error, Result};
use crate::finite_algebra::FiniteAlgebra;
use crate::ring::CommRing;

/// A ring together with a finite window of a `Z`-basis (or `F_p`-basis for finite algebras).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerfectRingDesc {
    Integers,
    /// `Z(x choose •)` on `C(x, 0), …, C(x, degree)`.
    Binomial {
        degree: usize,
    },
    /// `Z[x]` on `1, x, …, x^degree`; never perfect, kept as a control.
    Polynomial {
        degree: usize,
    },
    /// `Z[t^{1/p^∞}]` on `t^{k/p^depth}` for `0 <= k <= p^depth`.
    MonoidAlgebra {
        p: u64,
        depth: u32,
    },
    /// A finite `F_p`-algebra viewed as a commutative ring.
    FinitePerfect {
        algebra: FiniteAlgebra,
    },
}

impl fmt::Display for PerfectRingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerfectRingDesc::Integers => write!(f, "Z"),
            PerfectRingDesc::Binomial { degree } => write!(f, "Z(x choose *) up to degree {degree}"),
            PerfectRingDesc::Polynomial { degree } => write!(f, "Z[x] up to degree {degree}"),
            PerfectRingDesc::MonoidAlgebra { p, depth } => {
                write!(f, "Z[t^(1/{p}^inf)] on exponents k/{}", p.pow(*depth))
            }
            PerfectRingDesc::FinitePerfect { algebra } => {
                write!(f, "F_{}-algebra on {}", algebra.p(), algebra.basis().join(", "))
            }
        }
    }
}

/// A window basis, rational coordinates, and the change of basis between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    /// Labels of the integral basis `B`.
    pub basis: Vec<String>,
    /// Labels of the coordinates used on `R_Q`.
    pub rational_basis: Vec<String>,
    /// `T[k][n]`: coordinate `k` of basis element `n` in `R_Q`.
    pub to_rational: Vec<Vec<BigRational>>,
}

pub const MAX_WINDOW: usize = 64;

impl PerfectRingDesc {
    pub fn validate(&self) -> Result<()> {
        let too_big =
            |n: usize| Err(Error::ResourceLimit(format!("window of {n} basis elements exceeds {MAX_WINDOW}")));
        match self {
            PerfectRingDesc::Binomial { degree } | PerfectRingDesc::Polynomial { degree } if *degree >= MAX_WINDOW => {
                too_big(degree + 1)
            }
            PerfectRingDesc::MonoidAlgebra { p, depth } => {
                require_prime(*p)?;
                match p.checked_pow(*depth) {
                    Some(n) if (n as usize) < MAX_WINDOW => Ok(()),
                    _ => too_big(MAX_WINDOW + 1),
                }
            }
            _ => Ok(()),
        }
    }

    pub fn basis_labels(&self) -> Vec<String> {
        match self {
            PerfectRingDesc::Integers => vec!["1".into()],
            PerfectRingDesc::Binomial { degree } => {
                (0..=*degree).map(|n| IntValuedPoly::basis(n).to_string()).collect()
            }
            PerfectRingDesc::Polynomial { degree } => (0..=*degree).map(monomial_label).collect(),
            PerfectRingDesc::MonoidAlgebra { p, depth } => {
                let den = p.pow(*depth);
                (0..=den).map(|k| monoid_label(k, den)).collect()
            }
            PerfectRingDesc::FinitePerfect { algebra } => algebra.basis().to_vec(),
        }
    }

    /// The window with its rational coordinates. A finite algebra has `R_Q = 0`.
    pub fn window(&self) -> Result<Window> {
        self.validate()?;
        let basis = self.basis_labels();
        let identity = |n: usize| -> Vec<Vec<BigRational>> {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
                .collect()
        };
        Ok(match self {
            PerfectRingDesc::Binomial { degree } => {
                let d = *degree;
                let mut t = vec![vec![BigRational::zero(); d + 1]; d + 1];
                for n in 0..=d {
                    let mono = IntValuedPoly::basis(n).to_monomial();
                    for (m, c) in mono.terms() {
                        let k = m.exps().first().copied().unwrap_or(0) as usize;
                        t[k][n] = c.clone();
                    }
                }
                Window { rational_basis: (0..=d).map(monomial_label).collect(), basis, to_rational: t }
            }
            PerfectRingDesc::FinitePerfect { .. } => {
                Window { basis, rational_basis: Vec::new(), to_rational: Vec::new() }
            }
            _ => {
                let n = basis.len();
                Window { rational_basis: basis.clone(), basis, to_rational: identity(n) }
            }
        })
    }
}

fn monomial_label(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "x".into(),
        _ => format!("x^{k}"),
    }
}

fn monoid_label(k: u64, den: u64) -> String {
    let g = num_integer::gcd(k, den);
    match (k / g.max(1), den / g.max(1)) {
        (0, _) => "1".into(),
        (1, 1) => "t".into(),
        (a, 1) => format!("t^{a}"),
        (a, b) => format!("t^({a}/{b})"),
    }
}

/// Frobenius on `R/p` restricted to the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeVerdict {
    pub p: u64,
    /// `Tor_1(R, F_p) = R[p]` vanishes, so the derived reduction is the ring `R/p`.
    pub discrete: bool,
    pub injective: bool,
    pub surjective: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// `b -> φ(b) mod p` for each window basis element.
    pub images: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerfectnessReport {
    pub ring: String,
    pub basis: Vec<String>,
    pub verdicts: Vec<PrimeVerdict>,
    pub pass: bool,
}

/// For each prime, whether `R/p` (derived) is a perfect `F_p`-algebra on the window.
pub fn check_perfect(desc: &PerfectRingDesc, primes: &[u64]) -> Result<PerfectnessReport> {
    desc.validate()?;
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let verdicts = primes.iter().map(|&p| prime_verdict(desc, p)).collect::<Result<Vec<_>>>()?;
    Ok(PerfectnessReport {
        ring: desc.to_string(),
        basis: desc.basis_labels(),
        pass: verdicts.iter().all(|v| v.pass),
        verdicts,
    })
}

fn verdict(p: u64, injective: bool, surjective: bool, witness: Option<String>, images: Vec<String>) -> PrimeVerdict {
    PrimeVerdict { p, discrete: true, injective, surjective, pass: injective && surjective, witness, images }
}

fn prime_verdict(desc: &PerfectRingDesc, p: u64) -> Result<PrimeVerdict> {
    require_prime(p)?;
    let labels = desc.basis_labels();
    Ok(match desc {
        PerfectRingDesc::Integers => verdict(p, true, true, None, vec!["1 -> 1".into()]),
        PerfectRingDesc::Binomial { degree } => {
            // C(x,n)^p reduced mod p, in the binomial basis
            let ring = BinomialRing;
            let mut images = Vec::new();
            let mut identity = true;
            for n in 0..=*degree {
                let b = IntValuedPoly::basis(n);
                let pow = ring.pow(&b, p);
                let reduced = IntValuedPoly::new(
                    pow.coeffs().iter().map(|c| num_integer::Integer::mod_floor(c, &BigInt::from(p))).collect(),
                );
                identity &= reduced == b;
                images.push(format!("{b} -> {reduced}"));
            }
            let witness = (!identity).then(|| "Frobenius is not the identity on the window".to_string());
            verdict(p, identity, identity, witness, images)
        }
        PerfectRingDesc::Polynomial { degree } => {
            let images =
                (0..=*degree).map(|k| format!("{} -> {}", monomial_label(k), monomial_label(k * p as usize))).collect();
            let missing = (1..=*degree).find(|k| k % p as usize != 0);
            let witness = missing.map(|k| format!("{} has no {p}-th root modulo {p}", monomial_label(k)));
            verdict(p, true, missing.is_none(), witness, images)
        }
        PerfectRingDesc::MonoidAlgebra { p: q, depth } => {
            let den = q.pow(*depth);
            let images: Vec<String> =
                (0..=den).map(|k| format!("{} -> {}", monoid_label(k, den), monoid_label(k * p, den))).collect();
            // t^{k/den} has a p-th root iff k/(p·den) lies in Z[1/q]
            let missing = (1..=den).find(|k| p != *q && k % p != 0);
            let witness = missing.map(|k| format!("{} has no {p}-th root", monoid_label(k, den)));
            verdict(p, true, missing.is_none(), witness, images)
        }
        PerfectRingDesc::FinitePerfect { algebra } => {
            if algebra.p() != p {
                // R/p = 0
                return Ok(PrimeVerdict {
                    p,
                    discrete: true,
                    injective: true,
                    surjective: true,
                    pass: true,
                    witness: None,
                    images: Vec::new(),
                });
            }
            let bijective = algebra.frobenius_is_bijective()?;
            let images = (0..algebra.dim())
                .map(|i| format!("{} -> {}", labels[i], algebra.render(&algebra.frobenius(&algebra.basis_vector(i)))))
                .collect();
            PrimeVerdict {
                p,
                discrete: false,
                injective: bijective,
                surjective: bijective,
                pass: false,
                witness: Some(format!(
                    "{p}*1 = 0, so Tor_1(R, F_{p}) = R is nonzero and the derived reduction is not a perfect ring"
                )),
                images,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_ring_is_perfect() {
        let rep = check_perfect(&PerfectRingDesc::Binomial { degree: 4 }, &[2, 3, 5]).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.verdicts[0].images[2], "binom(x, 2) -> binom(x, 2)");
    }

    #[test]
    fn controls() {
        let poly = check_perfect(&PerfectRingDesc::Polynomial { degree: 3 }, &[2, 3]).unwrap();
        assert!(poly.verdicts.iter().all(|v| !v.pass && v.witness.as_deref().unwrap().starts_with("x has")));
        assert!(check_perfect(&PerfectRingDesc::Integers, &[2, 3, 5, 7]).unwrap().pass);
        let monoid = check_perfect(&PerfectRingDesc::MonoidAlgebra { p: 2, depth: 2 }, &[2, 3]).unwrap();
        assert!(monoid.verdicts[0].pass && !monoid.verdicts[1].pass);
        let field = FiniteAlgebra::product(3, 1, 2).unwrap();
        let fin = check_perfect(&PerfectRingDesc::FinitePerfect { algebra: field }, &[2, 3]).unwrap();
        assert!(fin.verdicts[0].pass && !fin.verdicts[1].pass && !fin.verdicts[1].discrete);
    }

    #[test]
    fn binomial_window_matrix() {
        let w = PerfectRingDesc::Binomial { degree: 2 }.window().unwrap();
        assert_eq!(w.basis, ["1", "x", "binom(x, 2)"]);
        assert_eq!(w.to_rational[2][2], BigRational::new(1.into(), 2.into()));
        assert_eq!(w.to_rational[1][2], BigRational::new((-1).into(), 2.into()));
    }
}
