//! Reconstruction of integral elements from rational and p-adic data, and the windowed
//! check that a ring is the pullback of its rationalization and its completions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{big_pow, is_prime, mod_floor, prime_factors, rational_mod, rational_valuation};
use crate::binomial::IntValuedPoly;
use crate::error::{Error, Result};

use super::desc::{PerfectRingDesc, Window};

pub const MAX_PRECISION: u32 = 4096;

/// Outcome of gluing rational and p-adic data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Reconstruction {
    Integral { basis: Vec<String>, coords: Vec<String>, element: String },
    Obstructed { prime: u64, coordinate: String, value: String, reason: String },
}

impl Reconstruction {
    pub fn is_integral(&self) -> bool {
        matches!(self, Reconstruction::Integral { .. })
    }

    pub fn coords(&self) -> Option<Vec<BigInt>> {
        match self {
            Reconstruction::Integral { coords, .. } => {
                Some(coords.iter().map(|c| c.parse().expect("decimal")).collect())
            }
            Reconstruction::Obstructed { .. } => None,
        }
    }
}

fn torsion_free_window(desc: &PerfectRingDesc) -> Result<Window> {
    if let PerfectRingDesc::FinitePerfect { .. } = desc {
        return Err(Error::Unsupported(
            "fracture data needs a torsion-free ring; a finite algebra has no rational part".into(),
        ));
    }
    desc.window()
}

fn check_precision(precision: u32) -> Result<()> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be at least 1".into()));
    }
    if precision > MAX_PRECISION {
        return Err(Error::ResourceLimit(format!("precision {precision} exceeds {MAX_PRECISION}")));
    }
    Ok(())
}

/// Glue `rational` (coordinates in `window.rational_basis`) with `padic[p]` (coordinates in
/// `window.basis`, read mod `p^precision`).
///
/// The first obstruction, in increasing order of primes, is reported.
pub fn fracture_reconstruct(
    desc: &PerfectRingDesc,
    rational: &[BigRational],
    padic: &BTreeMap<u64, Vec<BigInt>>,
    precision: u32,
) -> Result<Reconstruction> {
    check_precision(precision)?;
    let w = torsion_free_window(desc)?;
    if rational.len() != w.rational_basis.len() {
        return Err(Error::InvalidArgument(format!(
            "rational data has {} coordinates, the window has {}",
            rational.len(),
            w.rational_basis.len()
        )));
    }
    for (&p, v) in padic {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if v.len() != w.basis.len() {
            return Err(Error::InvalidArgument(format!(
                "{p}-adic data has {} coordinates, the window has {}",
                v.len(),
                w.basis.len()
            )));
        }
    }
    for &p in padic.keys() {
        for (label, q) in w.rational_basis.iter().zip(rational) {
            let v = rational_valuation(q, p).unwrap_or(0);
            if -v >= precision as i64 {
                return Err(Error::Precision(format!(
                    "coordinate {label} = {q} has {p}-adic valuation {v}, precision {precision} is not enough"
                )));
            }
        }
    }
    let coords = mat_vec(&invert(&w.to_rational)?, rational);

    let mut primes: BTreeSet<u64> = padic.keys().copied().collect();
    for q in rational.iter().chain(&coords) {
        primes.extend(prime_factors(q.denom()));
    }
    for &p in &primes {
        let keyed = padic.get(&p);
        let found = w.rational_basis.iter().zip(rational).find_map(|(label, q)| {
            (keyed.is_none() && rational_valuation(q, p).is_some_and(|v| v < 0)).then(|| Reconstruction::Obstructed {
                prime: p,
                coordinate: label.clone(),
                value: q.to_string(),
                reason: format!("denominator divisible by {p}, and no {p}-adic data is given"),
            })
        });
        if let Some(r) = found {
            return Ok(r);
        }
        let modulus = big_pow(p, precision);
        let found = w.basis.iter().enumerate().find_map(|(n, label)| {
            let c = &coords[n];
            match rational_mod(c, &modulus) {
                None => Some(Reconstruction::Obstructed {
                    prime: p,
                    coordinate: label.clone(),
                    value: c.to_string(),
                    reason: format!("coefficient is not {p}-integral"),
                }),
                Some(residue) => {
                    let given = mod_floor(&keyed?[n], &modulus);
                    (residue != given).then(|| Reconstruction::Obstructed {
                        prime: p,
                        coordinate: label.clone(),
                        value: c.to_string(),
                        reason: format!(
                            "rational image is {residue} but the {p}-adic image is {given} mod {p}^{precision}"
                        ),
                    })
                }
            }
        });
        if let Some(r) = found {
            return Ok(r);
        }
    }
    let ints: Vec<BigInt> = coords.iter().map(|c| c.to_integer()).collect();
    Ok(Reconstruction::Integral {
        element: render_element(desc, &w.basis, &ints),
        basis: w.basis,
        coords: ints.iter().map(ToString::to_string).collect(),
    })
}

/// `Σ c_n b_n` in the window basis, highest basis element first.
pub fn render_element(desc: &PerfectRingDesc, basis: &[String], coords: &[BigInt]) -> String {
    if let PerfectRingDesc::Binomial { .. } = desc {
        return IntValuedPoly::new(coords.to_vec()).to_string();
    }
    let mut s = String::new();
    for (label, c) in basis.iter().zip(coords).rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        match (label.as_str(), mag.is_one()) {
            ("1", _) => s.push_str(&mag.to_string()),
            (_, true) => s.push_str(label),
            _ => s.push_str(&format!("{mag}*{label}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// A single check inside a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueTable {
    pub p: u64,
    pub modulus: String,
    /// `T^{-1}` mod `p^N`: rational coordinates to window coordinates.
    pub from_rational: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub input: String,
    pub expect_integral: bool,
    pub outcome: Reconstruction,
    pub pass: bool,
}

/// Everything needed to recheck the square without trusting this crate's arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareCertificate {
    pub ring: String,
    pub basis: Vec<String>,
    pub rational_basis: Vec<String>,
    pub primes: Vec<u64>,
    pub precision: u32,
    pub to_rational: Vec<Vec<String>>,
    pub from_rational: Vec<Vec<String>>,
    pub determinant: String,
    pub denominator_primes: Vec<u64>,
    pub residues: Vec<ResidueTable>,
    pub checks: Vec<SquareCheck>,
    pub probes: Vec<Probe>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Primes `<= bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Verify on the window that `R -> R_Q ×_{R_A} ∏_p R_p` is injective with image exactly the
/// compatible pairs, for the given primes at precision `N`.
pub fn fracture_check_square(desc: &PerfectRingDesc, primes: &[u64], precision: u32) -> Result<SquareCertificate> {
    check_precision(precision)?;
    let w = torsion_free_window(desc)?;
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    let n = w.basis.len();
    let t = &w.to_rational;
    let det = determinant(t);
    let t_inv = if det.is_zero() { None } else { Some(invert(t)?) };
    let mut checks = Vec::new();
    let mut witness = None;

    checks.push(SquareCheck { name: "injective".into(), pass: t_inv.is_some(), detail: format!("det T = {det}") });

    let mut denominator_primes = BTreeSet::new();
    for q in t.iter().chain(t_inv.iter().flatten()).flatten() {
        denominator_primes.extend(prime_factors(q.denom()));
    }
    let denominator_primes: Vec<u64> = denominator_primes.into_iter().collect();
    let missing: Vec<u64> = denominator_primes.iter().copied().filter(|p| !primes.contains(p)).collect();
    checks.push(SquareCheck {
        name: "denominators covered".into(),
        pass: missing.is_empty(),
        detail: if missing.is_empty() {
            format!("denominators of T and T^-1 involve only {denominator_primes:?}")
        } else {
            format!("primes {missing:?} divide denominators but carry no completion")
        },
    });

    let mut precision_ok = true;
    let mut worst = Vec::new();
    for &p in &primes {
        let e = t.iter().flatten().filter_map(|q| rational_valuation(q, p)).map(|v| -v).max().unwrap_or(0).max(0);
        precision_ok &= (precision as i64) > e;
        worst.push(format!("{p}:{e}"));
    }
    checks.push(SquareCheck {
        name: "precision".into(),
        pass: precision_ok,
        detail: format!("N = {precision} against denominator valuations {}", worst.join(", ")),
    });

    let mut residues = Vec::new();
    if let Some(inv) = &t_inv {
        for &p in &primes {
            let modulus = big_pow(p, precision);
            let table: Option<Vec<Vec<String>>> = inv
                .iter()
                .map(|row| row.iter().map(|q| rational_mod(q, &modulus).map(|r| r.to_string())).collect())
                .collect();
            checks.push(SquareCheck {
                name: format!("lattice at {p}"),
                pass: table.is_some(),
                detail: if table.is_some() {
                    format!("T^-1 is {p}-integral, so the {p}-adic window lattice is spanned by the basis")
                } else {
                    format!("T^-1 has a {p} in a denominator")
                },
            });
            if let Some(from_rational) = table {
                residues.push(ResidueTable { p, modulus: modulus.to_string(), from_rational });
            }
        }
    }

    // oracle: each basis element is glued back from its own images
    let mut probes = Vec::new();
    if t_inv.is_some() {
        for k in 0..n {
            let unit: Vec<BigRational> =
                (0..n).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }).collect();
            let q = mat_vec(t, &unit);
            let data: BTreeMap<u64, Vec<BigInt>> =
                primes.iter().map(|&p| (p, unit.iter().map(|c| c.to_integer()).collect())).collect();
            let outcome = match fracture_reconstruct(desc, &q, &data, precision) {
                Ok(r) => r,
                Err(Error::Precision(msg)) => Reconstruction::Obstructed {
                    prime: 0,
                    coordinate: w.basis[k].clone(),
                    value: String::new(),
                    reason: msg,
                },
                Err(e) => return Err(e),
            };
            let pass = outcome
                .coords()
                .is_some_and(|c| c.iter().map(|x| BigRational::from_integer(x.clone())).eq(unit.iter().cloned()));
            if !pass && witness.is_none() {
                witness = Some(match &outcome {
                    Reconstruction::Obstructed { reason, .. } => format!("{} cannot be glued: {reason}", w.basis[k]),
                    Reconstruction::Integral { element, .. } => format!("{} glued to {element}", w.basis[k]),
                });
            }
            probes.push(Probe { input: w.basis[k].clone(), expect_integral: true, outcome, pass });

            // b_k / p is compatible rational data but not integral
            for &p in &primes {
                let frac: Vec<BigRational> = unit.iter().map(|c| c / BigRational::from_integer(p.into())).collect();
                let q = mat_vec(t, &frac);
                let data: BTreeMap<u64, Vec<BigInt>> = primes.iter().map(|&l| (l, vec![BigInt::zero(); n])).collect();
                let Ok(outcome) = fracture_reconstruct(desc, &q, &data, precision) else { continue };
                let pass = !outcome.is_integral();
                if !pass && witness.is_none() {
                    witness = Some(format!("{}/{p} was accepted as integral", w.basis[k]));
                }
                probes.push(Probe { input: format!("{}/{p}", w.basis[k]), expect_integral: false, outcome, pass });
            }
        }
    }
    checks.push(SquareCheck {
        name: "reconstruction oracle".into(),
        pass: probes.iter().all(|p| p.pass),
        detail: format!("{} probes", probes.len()),
    });

    let pass = checks.iter().all(|c| c.pass);
    if !pass && witness.is_none() {
        witness = checks.iter().find(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.detail));
    }
    if pass {
        witness = None;
    }
    Ok(SquareCertificate {
        ring: desc.to_string(),
        rational_basis: w.rational_basis.clone(),
        primes,
        precision,
        to_rational: render_matrix(t),
        from_rational: t_inv.as_ref().map(|m| render_matrix(m)).unwrap_or_default(),
        determinant: det.to_string(),
        denominator_primes,
        residues,
        checks,
        probes,
        pass,
        witness,
        basis: w.basis,
    })
}

/// Recheck the matrices and residue tables of a certificate from its own contents.
pub fn verify_certificate(cert: &SquareCertificate) -> Result<bool> {
    let parse = |m: &[Vec<String>]| -> Result<Vec<Vec<BigRational>>> {
        m.iter().map(|row| row.iter().map(|s| crate::poly::parse_coef(s)).collect()).collect()
    };
    let t = parse(&cert.to_rational)?;
    let t_inv = parse(&cert.from_rational)?;
    let n = cert.basis.len();
    if t.len() != n || t_inv.len() != n {
        return Ok(false);
    }
    for i in 0..n {
        for j in 0..n {
            let s: BigRational = (0..n).map(|k| &t[i][k] * &t_inv[k][j]).sum();
            if s != if i == j { BigRational::one() } else { BigRational::zero() } {
                return Ok(false);
            }
        }
    }
    if determinant(&t).to_string() != cert.determinant {
        return Ok(false);
    }
    for table in &cert.residues {
        let modulus: BigInt = table.modulus.parse().map_err(|_| Error::Json("bad modulus".into()))?;
        if modulus != big_pow(table.p, cert.precision) {
            return Ok(false);
        }
        for (row, res_row) in t_inv.iter().zip(&table.from_rational) {
            for (q, r) in row.iter().zip(res_row) {
                if rational_mod(q, &modulus).map(|x| x.to_string()).as_deref() != Some(r.as_str()) {
                    return Ok(false);
                }
            }
        }
    }
    let mut dens = BTreeSet::new();
    for q in t.iter().chain(&t_inv).flatten() {
        dens.extend(prime_factors(q.denom()));
    }
    let covered = dens.iter().all(|p| cert.primes.contains(p));
    Ok(!cert.pass || covered)
}

fn render_matrix(m: &[Vec<BigRational>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}

fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else { return BigRational::zero() };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

fn invert(m: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::NotInvertible("change-of-basis matrix is singular".into()))?;
        a.swap(piv, col);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn integers_reconstruct() {
        let data = BTreeMap::from([(2, vec![BigInt::from(6)]), (3, vec![BigInt::from(6)])]);
        let r = fracture_reconstruct(&PerfectRingDesc::Integers, &[q(6, 1)], &data, 8).unwrap();
        assert_eq!(r.coords(), Some(vec![BigInt::from(6)]));
    }

    #[test]
    fn binomial_reconstruction_and_obstruction() {
        let desc = PerfectRingDesc::Binomial { degree: 2 };
        let data = BTreeMap::from([(2, vec![0.into(), 1.into(), 1.into()])]);
        let r = fracture_reconstruct(&desc, &[q(0, 1), q(1, 2), q(1, 2)], &data, 8).unwrap();
        assert_eq!(r.coords(), Some(vec![0.into(), 1.into(), 1.into()]));
        let bad = fracture_reconstruct(&desc, &[q(0, 1), q(0, 1), q(1, 2)], &data, 8).unwrap();
        match bad {
            Reconstruction::Obstructed { prime, coordinate, value, .. } => {
                assert_eq!((prime, coordinate.as_str(), value.as_str()), (2, "x", "1/2"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            fracture_reconstruct(&desc, &[q(0, 1), q(0, 1), q(1, 4)], &data, 2),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn squares() {
        let z = fracture_check_square(&PerfectRingDesc::Integers, &primes_up_to(5), 8).unwrap();
        assert!(z.pass);
        let b = fracture_check_square(&PerfectRingDesc::Binomial { degree: 3 }, &[2, 3], 4).unwrap();
        assert!(b.pass, "{b:?}");
        assert!(verify_certificate(&b).unwrap());
        let dropped = fracture_check_square(&PerfectRingDesc::Binomial { degree: 3 }, &[3], 4).unwrap();
        assert!(!dropped.pass);
        assert!(dropped.witness.unwrap().starts_with("binom(x, 2)"));
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![q(1, 1), q(1, 2)], vec![q(0, 1), q(1, 2)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1, 1), q(-1, 1)], vec![q(0, 1), q(2, 1)]]);
        assert_eq!(determinant(&m), q(1, 2));
    }
}
