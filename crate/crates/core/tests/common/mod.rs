//! Brute-force oracles shared by the integration tests. Nothing here calls the
//! library's own symmetric-function or structure-polynomial code paths.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lambdaforge::poly::{CoefRing, MultiPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

pub fn zpoly(vars: &[String], terms: &[(Vec<u32>, i64)]) -> MultiPoly {
    let mut f = MultiPoly::zero(CoefRing::Integers, vars).unwrap();
    for (exps, c) in terms {
        let t = MultiPoly::from_terms(
            CoefRing::Integers,
            vars,
            vec![(exps.clone(), BigRational::from_integer(BigInt::from(*c)))],
        )
        .unwrap();
        f = f.add(&t).unwrap();
    }
    f
}

/// `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            if n - a < k - cur.len() {
                break;
            }
            cur.push(a);
            go(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `e_k(items)` summed over all `k`-subsets, one product at a time.
pub fn esym_of(k: usize, items: &[MultiPoly], template: &MultiPoly) -> MultiPoly {
    let mut acc = template.zero_like();
    for s in subsets(items.len(), k) {
        let mut prod = template.one_like();
        for a in s {
            prod = prod.mul(&items[a]).unwrap();
        }
        acc = acc.add(&prod).unwrap();
    }
    acc
}

pub fn var(vars: &[String], name: &str) -> MultiPoly {
    MultiPoly::var(CoefRing::Integers, vars, name).unwrap()
}

/// `λ^j` of `Σ x_a · Σ y_b` via the products `x_a y_b`, and `P_j` evaluated at the
/// elementary symmetric functions of the two blocks.
pub fn mult_substitute_back(j: usize, p: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let xs = names("x", j);
    let ys = names("y", j);
    let all: Vec<String> = xs.iter().chain(&ys).cloned().collect();
    let zero = MultiPoly::zero(CoefRing::Integers, &all).unwrap();
    let xv: Vec<MultiPoly> = xs.iter().map(|x| var(&all, x)).collect();
    let yv: Vec<MultiPoly> = ys.iter().map(|y| var(&all, y)).collect();
    let products: Vec<MultiPoly> = xv.iter().flat_map(|a| yv.iter().map(move |b| a.mul(b).unwrap())).collect();
    let expected = esym_of(j, &products, &zero);
    let mut assignment = BTreeMap::new();
    for k in 1..=j {
        assignment.insert(format!("e{k}"), esym_of(k, &xv, &zero));
        assignment.insert(format!("f{k}"), esym_of(k, &yv, &zero));
    }
    let got = p.change_ring(CoefRing::Integers).unwrap().substitute(&assignment).unwrap().with_vars(&all).unwrap();
    (got, expected)
}

/// `λ^j(λ^i(x1 + ... + x_{ij}))` through the `i`-fold products, against `P_{j,i}` at
/// the elementary symmetric functions.
pub fn comp_substitute_back(j: usize, i: usize, p: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let n = i * j;
    let xs = names("x", n);
    let zero = MultiPoly::zero(CoefRing::Integers, &xs).unwrap();
    let xv: Vec<MultiPoly> = xs.iter().map(|x| var(&xs, x)).collect();
    let products: Vec<MultiPoly> = subsets(n, i)
        .into_iter()
        .map(|s| s.into_iter().fold(zero.one_like(), |acc, a| acc.mul(&xv[a]).unwrap()))
        .collect();
    let expected = esym_of(j, &products, &zero);
    let assignment: BTreeMap<String, MultiPoly> = (1..=n).map(|k| (format!("e{k}"), esym_of(k, &xv, &zero))).collect();
    let got = p.change_ring(CoefRing::Integers).unwrap().substitute(&assignment).unwrap().with_vars(&xs).unwrap();
    (got, expected)
}

/// Weight of a monomial in `e1, e2, ...` (or `f1, ...`) with `e_k` of weight `k`.
pub fn index_weight(vars: &[String], exps: &[u32], prefix: char) -> u64 {
    vars.iter()
        .zip(exps)
        .filter(|(v, _)| v.starts_with(prefix))
        .map(|(v, &e)| v[1..].parse::<u64>().unwrap() * u64::from(e))
        .sum()
}

pub fn binom_int(n: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in 0..k {
        num *= n - BigInt::from(a);
        den *= BigInt::from(a + 1);
    }
    num / den
}

/// Value of `Σ c_n C(x, n)` at an integer, straight from the definition.
pub fn binomial_value(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().enumerate().fold(BigInt::zero(), |acc, (n, c)| acc + c * binom_int(x, n))
}

/// Ghost components `w_k = Σ_{i ≤ k} p^i a_i^{p^{k-i}}` of a p-typical vector.
pub fn witt_ghost(p: u64, a: &[BigInt]) -> Vec<BigInt> {
    (0..a.len())
        .map(|k| (0..=k).map(|i| BigInt::from(p).pow(i as u32) * a[i].pow((p as u32).pow((k - i) as u32))).sum())
        .collect()
}

/// Power sums `p_m` of the roots `r` of `Π(1 + r t) = 1 + a_1 t + ... + a_N t^N`, by
/// Newton: `p_m = Σ_{k<m} (-1)^{k-1} e_k p_{m-k} + (-1)^{m-1} m e_m`.
pub fn series_power_sums(a: &[BigInt]) -> Vec<BigInt> {
    let mut ps: Vec<BigInt> = Vec::with_capacity(a.len());
    for m in 1..=a.len() {
        let sign = |k: usize| if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let mut s = sign(m) * BigInt::from(m) * &a[m - 1];
        for k in 1..m {
            s += sign(k) * &a[k - 1] * &ps[m - k - 1];
        }
        ps.push(s);
    }
    ps
}

/// Runs every case in `tests/golden/cases.txt` and compares code, stdout and stderr with
/// the recorded `.out` file. With `LAMBDAFORGE_BLESS=1` the files are rewritten instead.
pub fn golden_corpus() -> Result<usize, String> {
    let bless = std::env::var_os("LAMBDAFORGE_BLESS").is_some();
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    let index = std::fs::read_to_string(format!("{dir}/cases.txt")).map_err(|e| e.to_string())?;
    let mut count = 0;
    for line in index.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let (name, args) = line.split_once(':').ok_or_else(|| format!("bad line `{line}`"))?;
        let args: Vec<String> = shell_words(args.trim());
        let out = lambdaforge::cli::run(std::iter::once("lambdaforge".to_string()).chain(args.iter().cloned()));
        let path = format!("{dir}/{}.out", name.trim());
        let got = format!("exit: {}\n--- stdout\n{}--- stderr\n{}", out.code, out.stdout, out.stderr);
        if bless {
            std::fs::write(&path, &got).map_err(|e| e.to_string())?;
        }
        let want = std::fs::read_to_string(&path).map_err(|e| format!("{name}: {e}"))?;
        if got != want {
            return Err(format!("golden case `{}` differs:\n{got}", name.trim()));
        }
        count += 1;
    }
    Ok(count)
}

/// Splits on spaces, keeping single-quoted groups together.
pub fn shell_words(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for c in s.chars() {
        match c {
            '\'' => {
                quoted = !quoted;
                any = true;
            }
            ' ' if !quoted => {
                if any {
                    out.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            _ => {
                cur.push(c);
                any = true;
            }
        }
    }
    if any {
        out.push(cur);
    }
    out
}

pub mod strategies {
    use lambdaforge::poly::{CoefRing, MultiPoly};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    pub const XYZ: [&str; 3] = ["x", "y", "z"];

    /// Up to five terms in `x, y, z` with exponents below 3 and small coefficients.
    pub fn poly(ring: CoefRing) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -9i64..10, 1i64..4), 0..5).prop_map(move |terms| {
            let terms = terms.into_iter().map(|(e, n, d)| {
                let d = if ring == CoefRing::Rationals { d } else { 1 };
                (e, BigRational::new(BigInt::from(n), BigInt::from(d)))
            });
            MultiPoly::from_terms(ring.clone(), &XYZ, terms).unwrap()
        })
    }

    pub fn coef_ring() -> impl Strategy<Value = CoefRing> {
        prop_oneof![
            Just(CoefRing::Integers),
            Just(CoefRing::Rationals),
            prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(CoefRing::PrimeField),
            (prop::sample::select(vec![2u64, 3]), 1u32..4)
                .prop_map(|(p, precision)| CoefRing::TruncatedPadic { p, precision }),
        ]
    }

    pub fn small_ints(len: std::ops::Range<usize>, lo: i64, hi: i64) -> impl Strategy<Value = Vec<BigInt>> {
        prop::collection::vec((lo..=hi).prop_map(BigInt::from), len)
    }
}
