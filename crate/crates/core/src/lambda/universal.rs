//! The universal polynomials governing products and composites of λ-operations.
//!
//! `P_j(e; f)` is the `t^j` coefficient of `∏_{a,b ≤ j} (1 + x_a y_b t)` written in the
//! elementary symmetric polynomials of the two blocks, and `P_{j,i}(e)` is the `t^j`
//! coefficient of `∏_S (1 + x_S t)` over the `i`-element subsets `S ⊂ {1..ij}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{indexed_names, linear_product_coefficient, CoefRing, MultiPoly};
use crate::symfunc::{newton_power_sum, reduce_blocks};

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalMultPoly {
    pub j: usize,
    pub poly: MultiPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalCompPoly {
    pub j: usize,
    pub i: usize,
    pub poly: MultiPoly,
}

/// Largest supported `j` for products and `ij` for composites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaLimits {
    pub max_mult: usize,
    pub max_comp: usize,
}

impl Default for LambdaLimits {
    fn default() -> Self {
        LambdaLimits { max_mult: 6, max_comp: 9 }
    }
}

impl LambdaLimits {
    pub fn check_mult(&self, j: usize) -> Result<()> {
        if j == 0 {
            return Err(Error::InvalidArgument("j must be at least 1".into()));
        }
        if j > self.max_mult {
            return Err(Error::ResourceLimit(format!(
                "product polynomials are limited to j <= {}, got {j}",
                self.max_mult
            )));
        }
        Ok(())
    }

    pub fn check_comp(&self, j: usize, i: usize) -> Result<()> {
        if j == 0 || i == 0 {
            return Err(Error::InvalidArgument("j and i must be at least 1".into()));
        }
        if i.saturating_mul(j) > self.max_comp {
            return Err(Error::ResourceLimit(format!(
                "composition polynomials are limited to ij <= {}, got {}",
                self.max_comp,
                i * j
            )));
        }
        Ok(())
    }
}

/// Variables of `P_j`: `e1..ej, f1..fj`.
pub fn mult_vars(j: usize) -> Vec<String> {
    let mut v = indexed_names("e", j);
    v.extend(indexed_names("f", j));
    v
}

/// Variables of `P_{j,i}`: `e1..e_{ij}`.
pub fn comp_vars(j: usize, i: usize) -> Vec<String> {
    indexed_names("e", i * j)
}

/// The `t^j` coefficient of `∏_{a,b ≤ j}(1 + x_a y_b t)` in `x1..xj, y1..yj`.
pub fn mult_generating_coefficient(j: usize) -> Result<MultiPoly> {
    let xs = indexed_names("x", j);
    let ys = indexed_names("y", j);
    let mut vars = xs.clone();
    vars.extend(ys.iter().cloned());
    let mut monomials = Vec::with_capacity(j * j);
    for x in &xs {
        let xv = MultiPoly::var(CoefRing::Integers, &vars, x)?;
        for y in &ys {
            monomials.push(xv.mul(&MultiPoly::var(CoefRing::Integers, &vars, y)?)?);
        }
    }
    linear_product_coefficient(&monomials, j)
}

/// The `t^j` coefficient of `∏_{S}(1 + x_S t)`, `S` ranging over `i`-subsets of `{1..ij}`.
pub fn comp_generating_coefficient(j: usize, i: usize) -> Result<MultiPoly> {
    let n = i * j;
    let vars = indexed_names("x", n);
    let monomials: Vec<MultiPoly> = subsets(n, i)
        .into_iter()
        .map(|s| {
            let mut exps = vec![0u32; n];
            for a in s {
                exps[a] = 1;
            }
            MultiPoly::from_terms(CoefRing::Integers, &vars, vec![(exps, crate::poly::coef_int(1))])
        })
        .collect::<Result<_>>()?;
    linear_product_coefficient(&monomials, j)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            if n - a < k - cur.len() {
                break;
            }
            cur.push(a);
            rec(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn sorted_desc(e: &[u32]) -> bool {
    e.windows(2).all(|w| w[0] >= w[1])
}

/// Keeps only the terms whose exponents are non-increasing inside every block of
/// `block_len` consecutive variables. A block-symmetric polynomial is determined by them.
fn dominant_terms(f: &MultiPoly, block_len: usize) -> Result<MultiPoly> {
    let terms = f
        .terms()
        .filter(|(m, _)| m.exps().chunks(block_len).all(sorted_desc))
        .map(|(m, c)| (m.exps().to_vec(), c.clone()));
    MultiPoly::from_terms(f.ring().clone(), f.vars(), terms.collect::<Vec<_>>())
}

/// Computes `P_j` without consulting any cache.
pub fn compute_mult_polynomial(j: usize, limits: &LambdaLimits) -> Result<UniversalMultPoly> {
    limits.check_mult(j)?;
    let coefficient = mult_generating_coefficient(j)?;
    let blocks = vec![indexed_names("x", j), indexed_names("y", j)];
    let (expr, _) = reduce_blocks(&dominant_terms(&coefficient, j)?, &blocks)?;
    Ok(UniversalMultPoly { j, poly: expr.poly.with_vars(&mult_vars(j))? })
}

/// Computes `P_{j,i}` without consulting any cache.
pub fn compute_comp_polynomial(j: usize, i: usize, limits: &LambdaLimits) -> Result<UniversalCompPoly> {
    limits.check_comp(j, i)?;
    let coefficient = comp_generating_coefficient(j, i)?;
    let blocks = vec![indexed_names("x", i * j)];
    let (expr, _) = reduce_blocks(&dominant_terms(&coefficient, i * j)?, &blocks)?;
    Ok(UniversalCompPoly { j, i, poly: expr.poly.with_vars(&comp_vars(j, i))? })
}

/// Names of the λ-operation variables in Adams polynomials: `lam1, lam2, ...`.
pub fn adams_vars(n: usize) -> Vec<String> {
    indexed_names("lam", n)
}

/// `ψ^n` as an integer polynomial in `lam1..lamn` (Newton's identity with `e_k ↦ λ^k`).
pub fn adams_polynomial(n: usize) -> Result<MultiPoly> {
    let p = newton_power_sum(n, n)?;
    let rename: BTreeMap<String, String> = indexed_names("e", n).into_iter().zip(adams_vars(n)).collect();
    p.rename(&rename)
}

/// Weight of each term, with `e_k` and `f_k` weighted by `k`.
pub(crate) fn index_weights(vars: &[String]) -> Vec<u64> {
    vars.iter().map(|v| v.trim_start_matches(|c: char| c.is_ascii_alphabetic()).parse().unwrap_or(0)).collect()
}

impl UniversalMultPoly {
    /// `(e-weight, f-weight)` of every term.
    pub fn bidegrees(&self) -> Vec<(u64, u64)> {
        let vars = self.poly.vars();
        let w = index_weights(vars);
        self.poly
            .terms()
            .map(|(m, _)| {
                let mut out = (0, 0);
                for (k, &e) in m.exps().iter().enumerate() {
                    if vars[k].starts_with('e') {
                        out.0 += w[k] * e as u64;
                    } else {
                        out.1 += w[k] * e as u64;
                    }
                }
                out
            })
            .collect()
    }
}

impl UniversalCompPoly {
    pub fn weights(&self) -> Vec<u64> {
        self.poly.weighted_degrees(&index_weights(self.poly.vars()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products() {
        let l = LambdaLimits::default();
        assert_eq!(compute_mult_polynomial(1, &l).unwrap().poly.to_string(), "e1*f1");
        assert_eq!(compute_mult_polynomial(2, &l).unwrap().poly.to_string(), "e1^2*f2 + e2*f1^2 - 2*e2*f2");
    }

    #[test]
    fn small_composites() {
        let l = LambdaLimits::default();
        assert_eq!(compute_comp_polynomial(2, 2, &l).unwrap().poly.to_string(), "e1*e3 - e4");
        assert_eq!(compute_comp_polynomial(2, 1, &l).unwrap().poly.to_string(), "e2");
        assert_eq!(compute_comp_polynomial(1, 3, &l).unwrap().poly.to_string(), "e3");
    }

    #[test]
    fn limits() {
        let l = LambdaLimits::default();
        assert!(matches!(compute_mult_polynomial(7, &l), Err(Error::ResourceLimit(_))));
        assert!(matches!(compute_comp_polynomial(5, 2, &l), Err(Error::ResourceLimit(_))));
        assert!(matches!(compute_mult_polynomial(0, &l), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn adams() {
        assert_eq!(adams_polynomial(1).unwrap().to_string(), "lam1");
        assert_eq!(adams_polynomial(2).unwrap().to_string(), "lam1^2 - 2*lam2");
        assert_eq!(adams_polynomial(3).unwrap().to_string(), "lam1^3 - 3*lam1*lam2 + 3*lam3");
    }
}
