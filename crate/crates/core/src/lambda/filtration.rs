//! Monomials in λ-operations applied to generators, and the weight filtration of the
//! free λ-ring.

use std::cmp::Ordering;
use std::fmt;

use crate::poly::var_cmp;

/// `λ^{i_1}(s_1)^{e_1} ⋯ λ^{i_m}(s_m)^{e_m}` in canonical form: factors sorted by
/// generator then index, merged, with `λ^0` and zero exponents dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaMonomial {
    factors: Vec<(String, u32, u32)>,
}

impl LambdaMonomial {
    pub fn one() -> Self {
        LambdaMonomial { factors: Vec::new() }
    }

    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = (S, u32, u32)>) -> Self {
        let mut fs: Vec<(String, u32, u32)> =
            factors.into_iter().map(|(s, i, e)| (s.into(), i, e)).filter(|(_, i, e)| *i > 0 && *e > 0).collect();
        fs.sort_by(|a, b| var_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
        let mut merged: Vec<(String, u32, u32)> = Vec::with_capacity(fs.len());
        for f in fs {
            match merged.last_mut() {
                Some(last) if last.0 == f.0 && last.1 == f.1 => last.2 += f.2,
                _ => merged.push(f),
            }
        }
        LambdaMonomial { factors: merged }
    }

    pub fn factors(&self) -> &[(String, u32, u32)] {
        &self.factors
    }

    pub fn mul(&self, other: &LambdaMonomial) -> LambdaMonomial {
        LambdaMonomial::new(self.factors.iter().chain(&other.factors).cloned())
    }
}

/// `Σ e·i` over the factors.
pub fn lambda_weight(m: &LambdaMonomial) -> u64 {
    m.factors.iter().map(|(_, i, e)| u64::from(*i) * u64::from(*e)).sum()
}

impl Ord for LambdaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        lambda_weight(self).cmp(&lambda_weight(other)).then_with(|| {
            for (a, b) in self.factors.iter().zip(&other.factors) {
                let c = var_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)).then(b.2.cmp(&a.2));
                if c != Ordering::Equal {
                    return c;
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for LambdaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LambdaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (s, i, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "lambda({i}, {s})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Generator names used by [`filtration_basis`]: `x` for one generator, else `x1..xm`.
pub fn generator_names(m: usize) -> Vec<String> {
    if m == 1 {
        vec!["x".to_string()]
    } else {
        crate::poly::indexed_names("x", m)
    }
}

/// All monomials of weight exactly `w` in a single generator: partitions of `w`.
fn single_generator(name: &str, w: u32) -> Vec<LambdaMonomial> {
    fn rec(name: &str, left: u32, max_part: u32, cur: &mut Vec<(String, u32, u32)>, out: &mut Vec<LambdaMonomial>) {
        if left == 0 {
            out.push(LambdaMonomial::new(cur.iter().cloned()));
            return;
        }
        for part in (1..=max_part.min(left)).rev() {
            for mult in 1..=left / part {
                cur.push((name.to_string(), part, mult));
                rec(name, left - part * mult, part - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(name, w, w, &mut Vec::new(), &mut out);
    out
}

/// Monomials on `m` generators with weight exactly `w`.
pub fn graded_piece(m: usize, w: u32) -> Vec<LambdaMonomial> {
    let names = generator_names(m);
    let mut acc: Vec<(u32, LambdaMonomial)> = vec![(0, LambdaMonomial::one())];
    for name in &names {
        let mut next = Vec::new();
        for (used, mono) in &acc {
            for part in 0..=w - used {
                for piece in single_generator(name, part) {
                    next.push((used + part, mono.mul(&piece)));
                }
            }
        }
        acc = next;
    }
    let mut out: Vec<LambdaMonomial> = acc.into_iter().filter(|(u, _)| *u == w).map(|(_, m)| m).collect();
    out.sort();
    out
}

/// All monomials on `m` generators with weight at most `bound`, in canonical order.
pub fn filtration_basis(m: usize, bound: u32) -> Vec<LambdaMonomial> {
    (0..=bound).flat_map(|w| graded_piece(m, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(lambda_weight(&LambdaMonomial::new([("x", 2, 1), ("x", 3, 1)])), 5);
        assert_eq!(lambda_weight(&LambdaMonomial::new([("x", 1, 3)])), 3);
        assert_eq!(lambda_weight(&LambdaMonomial::one()), 0);
    }

    #[test]
    fn normalization() {
        let m = LambdaMonomial::new([("y", 1, 1), ("x", 2, 1), ("x", 0, 4), ("x", 2, 2)]);
        assert_eq!(m.to_string(), "lambda(2, x)^3*lambda(1, y)");
    }

    #[test]
    fn one_generator_weight_two() {
        let b: Vec<String> = filtration_basis(1, 2).iter().map(ToString::to_string).collect();
        assert_eq!(b, ["1", "lambda(1, x)", "lambda(1, x)^2", "lambda(2, x)"]);
        assert_eq!(filtration_basis(1, 0), vec![LambdaMonomial::one()]);
    }
}
