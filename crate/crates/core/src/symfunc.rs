//! Symmetric polynomials: elementary symmetric polynomials, symmetry checks,
//! reduction to the elementary basis, and Newton's identities.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{coef_big, indexed_names, Coef, CoefRing, Monomial, MultiPoly};

/// Prefixes used for the elementary-symmetric names of successive blocks
/// (`e1, e2, ...` for the first block, `f1, ...` for the second, ...).
pub const BLOCK_PREFIXES: [&str; 4] = ["e", "f", "g", "h"];

/// Size limits for [`to_elementary`]; beyond them the reduction refuses with a
/// resource error instead of running into combinatorial blowup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymLimits {
    pub max_degree: u64,
    pub max_block: usize,
}

impl Default for SymLimits {
    fn default() -> Self {
        SymLimits { max_degree: 12, max_block: 12 }
    }
}

/// `e_k` of the given variables over the integers; zero when `k` exceeds the count.
pub fn elementary_symmetric<S: AsRef<str>>(k: usize, vars: &[S]) -> Result<MultiPoly> {
    elementary_symmetric_over(CoefRing::Integers, k, vars)
}

pub fn elementary_symmetric_over<S: AsRef<str>>(ring: CoefRing, k: usize, vars: &[S]) -> Result<MultiPoly> {
    let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let n = names.len();
    if k > n {
        return MultiPoly::zero(ring, &names);
    }
    let mut terms = Vec::new();
    let mut chosen = vec![0u32; n];
    fn rec(start: usize, left: usize, chosen: &mut Vec<u32>, terms: &mut Vec<(Vec<u32>, Coef)>) {
        if left == 0 {
            terms.push((chosen.clone(), coef_big(BigInt::from(1))));
            return;
        }
        for i in start..=chosen.len() - left {
            chosen[i] = 1;
            rec(i + 1, left - 1, chosen, terms);
            chosen[i] = 0;
        }
    }
    rec(0, k, &mut chosen, &mut terms);
    MultiPoly::from_terms(ring, &names, terms)
}

/// `x_1^n + ... + x_m^n` over the integers.
pub fn power_sum<S: AsRef<str>>(n: u32, vars: &[S]) -> Result<MultiPoly> {
    let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let terms = (0..names.len()).map(|i| {
        let mut e = vec![0; names.len()];
        e[i] = n;
        (e, coef_big(BigInt::from(1)))
    });
    MultiPoly::from_terms(CoefRing::Integers, &names, terms)
}

fn block_positions(f: &MultiPoly, block: &[String]) -> Result<Vec<usize>> {
    block.iter().map(|v| f.var_index(v).ok_or_else(|| Error::MissingVariable(v.clone()))).collect()
}

fn validate_blocks(blocks: &[Vec<String>]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for v in blocks.iter().flatten() {
        if !seen.insert(v) {
            return Err(Error::InvalidArgument(format!("variable `{v}` appears in two blocks")));
        }
    }
    Ok(())
}

fn with_block_vars(f: &MultiPoly, blocks: &[Vec<String>]) -> Result<MultiPoly> {
    let mut vars: Vec<String> = f.vars().to_vec();
    for v in blocks.iter().flatten() {
        if !vars.contains(v) {
            vars.push(v.clone());
        }
    }
    f.with_vars(&vars)
}

/// First transposition (within a block, adjacent in block order) that changes `f`.
pub fn symmetry_witness(f: &MultiPoly, blocks: &[Vec<String>]) -> Result<Option<(String, String)>> {
    validate_blocks(blocks)?;
    let f = with_block_vars(f, blocks)?;
    for block in blocks {
        let pos = block_positions(&f, block)?;
        for w in 0..pos.len().saturating_sub(1) {
            if f.swap_vars(pos[w], pos[w + 1]) != f {
                return Ok(Some((block[w].clone(), block[w + 1].clone())));
            }
        }
    }
    Ok(None)
}

/// Whether `f` is invariant under permutations inside each block. Adjacent
/// transpositions generate each symmetric group, so only those are tested.
pub fn is_symmetric(f: &MultiPoly, blocks: &[Vec<String>]) -> Result<bool> {
    Ok(symmetry_witness(f, blocks)?.is_none())
}

/// A polynomial in elementary symmetric symbols, one named family per block.
#[derive(Debug, Clone, PartialEq)]
pub struct ElemSymExpr {
    pub block_sizes: Vec<usize>,
    pub poly: MultiPoly,
}

impl ElemSymExpr {
    /// Substitutes `prefix_k -> e_k(block)` back and expands.
    pub fn expand(&self, blocks: &[Vec<String>]) -> Result<MultiPoly> {
        if blocks.len() != self.block_sizes.len() {
            return Err(Error::InvalidArgument("block count differs from the expression".into()));
        }
        let ring = self.poly.ring().clone();
        let mut assignment = BTreeMap::new();
        for v in self.poly.vars() {
            assignment.insert(v.clone(), MultiPoly::var(ring.clone(), &[v], v)?);
        }
        for (b, block) in blocks.iter().enumerate() {
            for (k, name) in indexed_names(BLOCK_PREFIXES[b], block.len()).into_iter().enumerate() {
                assignment.insert(name, elementary_symmetric_over(ring.clone(), k + 1, block)?);
            }
        }
        self.poly.substitute(&assignment)
    }
}

/// Sequence of leading block-exponents visited by the reduction, one list per block.
pub type ReductionTrace = Vec<Vec<Vec<u32>>>;

/// Reduces a block-symmetric polynomial to elementary symmetric polynomials.
///
/// Blocks are eliminated one after another: while reducing a block every variable
/// outside it is treated as a scalar. Variables outside all blocks are carried through.
pub fn to_elementary(f: &MultiPoly, blocks: &[Vec<String>]) -> Result<ElemSymExpr> {
    to_elementary_traced(f, blocks, SymLimits::default()).map(|(e, _)| e)
}

pub fn to_elementary_traced(
    f: &MultiPoly,
    blocks: &[Vec<String>],
    limits: SymLimits,
) -> Result<(ElemSymExpr, ReductionTrace)> {
    if blocks.len() > BLOCK_PREFIXES.len() {
        return Err(Error::InvalidArgument(format!("at most {} symmetry blocks are supported", BLOCK_PREFIXES.len())));
    }
    if f.total_degree() > limits.max_degree {
        return Err(Error::ResourceLimit(format!(
            "symmetric reduction supports total degree <= {}, got {}",
            limits.max_degree,
            f.total_degree()
        )));
    }
    if let Some(b) = blocks.iter().find(|b| b.len() > limits.max_block) {
        return Err(Error::ResourceLimit(format!(
            "symmetric reduction supports <= {} variables per block, got {}",
            limits.max_block,
            b.len()
        )));
    }
    if let Some((first, second)) = symmetry_witness(f, blocks)? {
        return Err(Error::NotSymmetric { first, second });
    }
    reduce_blocks(f, blocks)
}

/// Reduction without the symmetry check, for callers that know the input is symmetric.
/// Only terms whose block exponents are non-increasing are read.
pub(crate) fn reduce_blocks(f: &MultiPoly, blocks: &[Vec<String>]) -> Result<(ElemSymExpr, ReductionTrace)> {
    validate_blocks(blocks)?;
    let mut current = with_block_vars(f, blocks)?;
    for (b, block) in blocks.iter().enumerate() {
        for name in indexed_names(BLOCK_PREFIXES[b], block.len()) {
            if current.vars().contains(&name) && !block.contains(&name) {
                return Err(Error::InvalidArgument(format!(
                    "variable `{name}` collides with an elementary symmetric symbol"
                )));
            }
        }
    }
    let mut trace = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        let (next, steps) = reduce_block(&current, block, BLOCK_PREFIXES[b])?;
        current = next;
        trace.push(steps);
    }
    let mut vars: Vec<String> = current.vars().to_vec();
    for (b, block) in blocks.iter().enumerate() {
        for name in indexed_names(BLOCK_PREFIXES[b], block.len()) {
            if !vars.contains(&name) {
                vars.push(name);
            }
        }
    }
    let poly = current.with_vars(&vars)?;
    Ok((ElemSymExpr { block_sizes: blocks.iter().map(Vec::len).collect(), poly }, trace))
}

fn is_sorted_desc(e: &[u32]) -> bool {
    e.windows(2).all(|w| w[0] >= w[1])
}

type Coeffs = BTreeMap<Vec<u32>, Coef>;

fn add_into(ring: &CoefRing, target: &mut Coeffs, key: Vec<u32>, c: Coef) {
    if c.is_zero() {
        return;
    }
    match target.get_mut(&key) {
        Some(e) => {
            let s = ring.add_coef(e, &c);
            if s.is_zero() {
                target.remove(&key);
            } else {
                *e = s;
            }
        }
        None => {
            target.insert(key, c);
        }
    }
}

/// Leading-term elimination of one block. `f` must be symmetric in `block`.
fn reduce_block(f: &MultiPoly, block: &[String], prefix: &str) -> Result<(MultiPoly, Vec<Vec<u32>>)> {
    let ring = f.ring().clone();
    let m = block.len();
    let block_pos = block_positions(f, block)?;
    let other_pos: Vec<usize> = (0..f.vars().len()).filter(|i| !block_pos.contains(i)).collect();
    let other_names: Vec<String> = other_pos.iter().map(|&i| f.vars()[i].clone()).collect();
    let e_names = indexed_names(prefix, m);

    // Symmetric in the block, so the terms with non-increasing block exponents determine f.
    let mut work: BTreeMap<Monomial, Coeffs> = BTreeMap::new();
    for (mono, c) in f.terms() {
        let be: Vec<u32> = block_pos.iter().map(|&i| mono.exps()[i]).collect();
        if !is_sorted_desc(&be) {
            continue;
        }
        let oe: Vec<u32> = other_pos.iter().map(|&i| mono.exps()[i]).collect();
        add_into(&ring, work.entry(Monomial::new(be)).or_default(), oe, c.clone());
    }

    let mut out_vars = other_names.clone();
    out_vars.extend(e_names.iter().cloned());
    let mut result = MultiPoly::zero(ring.clone(), &out_vars)?;
    let out_index = |name: &str| result.var_index(name).expect("output variable");
    let other_out: Vec<usize> = other_names.iter().map(|n| out_index(n)).collect();
    let e_out: Vec<usize> = e_names.iter().map(|n| out_index(n)).collect();

    let mut cache = ElementaryProducts::new(ring.clone(), block);
    let mut trace: Vec<Vec<u32>> = Vec::new();
    let mut result_terms: Vec<(Vec<u32>, Coef)> = Vec::new();

    while let Some((lead, coeffs)) = work.pop_last() {
        if coeffs.is_empty() {
            continue;
        }
        let lambda = lead.exps().to_vec();
        if let Some(prev) = trace.last() {
            if Monomial::new(prev.clone()) <= lead {
                return Err(Error::Internal("leading monomial failed to decrease".into()));
            }
        }
        trace.push(lambda.clone());
        let mu: Vec<u32> = (0..m).map(|k| lambda[k] - if k + 1 < m { lambda[k + 1] } else { 0 }).collect();
        let expansion = cache.sorted_part(&mu)?;
        for (nu, d) in expansion.iter() {
            if *nu == lambda {
                continue;
            }
            let slot = work.entry(Monomial::new(nu.clone())).or_default();
            for (oe, c) in &coeffs {
                add_into(&ring, slot, oe.clone(), ring.neg_coef(&ring.mul_coef(c, d)));
            }
            if slot.is_empty() {
                work.remove(&Monomial::new(nu.clone()));
            }
        }
        debug_assert_eq!(expansion.get(&lambda).map(|c| c.to_string()), Some("1".to_string()));
        for (oe, c) in coeffs {
            let mut exps = vec![0u32; out_vars.len()];
            for (k, &e) in oe.iter().enumerate() {
                exps[other_out[k]] = e;
            }
            for (k, &e) in mu.iter().enumerate() {
                exps[e_out[k]] = e;
            }
            result_terms.push((exps, c));
        }
    }
    let names: Vec<String> = result.vars().to_vec();
    result = MultiPoly::from_terms(ring, &names, result_terms)?;
    Ok((result, trace))
}

/// Memoized expansions of `e_1^{μ_1} ... e_m^{μ_m}` over one block, restricted to
/// terms with non-increasing exponents.
struct ElementaryProducts {
    elementary: Vec<MultiPoly>,
    full: HashMap<Vec<u32>, MultiPoly>,
}

impl ElementaryProducts {
    fn new(ring: CoefRing, block: &[String]) -> Self {
        let elementary = (1..=block.len())
            .map(|k| elementary_symmetric_over(ring.clone(), k, block).expect("block variables"))
            .collect();
        let mut full = HashMap::new();
        let one = MultiPoly::int(ring, block, 1).expect("block variables");
        full.insert(vec![0; block.len()], one);
        ElementaryProducts { elementary, full }
    }

    fn product(&mut self, mu: &[u32]) -> Result<MultiPoly> {
        if let Some(p) = self.full.get(mu) {
            return Ok(p.clone());
        }
        // Peel one factor off the highest nonzero index and recurse.
        let k = mu.iter().rposition(|&e| e > 0).expect("nonzero exponent vector");
        let mut smaller = mu.to_vec();
        smaller[k] -= 1;
        let rest = self.product(&smaller)?;
        let p = rest.mul(&self.elementary[k])?;
        self.full.insert(mu.to_vec(), p.clone());
        Ok(p)
    }

    fn sorted_part(&mut self, mu: &[u32]) -> Result<Coeffs> {
        let p = self.product(mu)?;
        Ok(p.terms().filter(|(m, _)| is_sorted_desc(m.exps())).map(|(m, c)| (m.exps().to_vec(), c.clone())).collect())
    }
}

/// Newton's identities: `p_n` as a polynomial in `e_1, ..., e_m`, with `e_k = 0` for `k > m`.
pub fn newton_power_sum(n: usize, m: usize) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("power sums start at n = 1".into()));
    }
    let names = indexed_names("e", m);
    let ring = CoefRing::Integers;
    let e = |k: usize| -> Result<MultiPoly> {
        if k <= m {
            MultiPoly::var(ring.clone(), &names, &names[k - 1])
        } else {
            MultiPoly::zero(ring.clone(), &names)
        }
    };
    let mut p: Vec<MultiPoly> = Vec::with_capacity(n);
    for k in 1..=n {
        // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
        let mut acc = e(k)?.scale(&coef_big(BigInt::from(k as i64 * sign(k - 1))))?;
        for i in 1..k {
            let term = e(i)?.mul(&p[k - i - 1])?;
            acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        p.push(acc);
    }
    Ok(p.pop().expect("n >= 1"))
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(prefix: &str, n: usize) -> Vec<String> {
        indexed_names(prefix, n)
    }

    fn var(vars: &[String], name: &str) -> MultiPoly {
        MultiPoly::var(CoefRing::Integers, vars, name).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let xs = block("x", 2);
        assert_eq!(elementary_symmetric(1, &xs).unwrap().to_string(), "x1 + x2");
        assert_eq!(elementary_symmetric(2, &xs).unwrap().to_string(), "x1*x2");
        assert_eq!(elementary_symmetric(0, &xs).unwrap().to_string(), "1");
        assert!(elementary_symmetric(3, &xs).unwrap().is_zero());
    }

    #[test]
    fn symmetry_checks() {
        let xs = block("x", 2);
        let s = var(&xs, "x1").add(&var(&xs, "x2")).unwrap();
        let d = var(&xs, "x1").sub(&var(&xs, "x2")).unwrap();
        assert!(is_symmetric(&s, std::slice::from_ref(&xs)).unwrap());
        assert!(!is_symmetric(&d, std::slice::from_ref(&xs)).unwrap());

        let mut all = block("x", 2);
        all.extend(block("y", 2));
        let sx = var(&all, "x1").add(&var(&all, "x2")).unwrap();
        let sy = var(&all, "y1").add(&var(&all, "y2")).unwrap();
        let prod = sx.mul(&sy).unwrap();
        assert!(is_symmetric(&prod, &[block("x", 2), block("y", 2)]).unwrap());
        let skew = var(&all, "x1").mul(&var(&all, "y1")).unwrap();
        assert!(!is_symmetric(&skew, &[block("x", 2), block("y", 2)]).unwrap());
    }

    #[test]
    fn rejects_non_symmetric_with_witness() {
        let xs = block("x", 3);
        let f = var(&xs, "x1").add(&var(&xs, "x2")).unwrap();
        assert_eq!(to_elementary(&f, &[xs]), Err(Error::NotSymmetric { first: "x2".into(), second: "x3".into() }));
    }

    #[test]
    fn linear_elementary_is_itself() {
        let xs = block("x", 2);
        let e1 = elementary_symmetric(1, &xs).unwrap();
        assert_eq!(to_elementary(&e1, &[xs]).unwrap().poly.trim_vars().to_string(), "e1");
    }

    #[test]
    fn resource_limits() {
        let xs = block("x", 13);
        let f = elementary_symmetric(1, &xs).unwrap();
        assert!(matches!(to_elementary(&f, &[xs]), Err(Error::ResourceLimit(_))));
        let ys = block("x", 2);
        let big = power_sum(13, &ys).unwrap();
        assert!(matches!(to_elementary(&big, &[ys]), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn newton_small_cases() {
        assert_eq!(newton_power_sum(1, 1).unwrap().to_string(), "e1");
        assert_eq!(newton_power_sum(2, 2).unwrap().to_string(), "e1^2 - 2*e2");
        assert_eq!(newton_power_sum(3, 3).unwrap().to_string(), "e1^3 - 3*e1*e2 + 3*e3");
        // e_2 = 0 when only one variable is available
        assert_eq!(newton_power_sum(2, 1).unwrap().to_string(), "e1^2");
    }

    #[test]
    fn parameters_outside_blocks_are_scalars() {
        let mut vars = block("x", 2);
        vars.push("a".into());
        let f = var(&vars, "a").mul(&var(&vars, "x1").add(&var(&vars, "x2")).unwrap()).unwrap();
        let r = to_elementary(&f, &[block("x", 2)]).unwrap();
        assert_eq!(r.poly.trim_vars().to_string(), "a*e1");
    }
}
