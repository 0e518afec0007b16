use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Expression tree. Parenthesised groups leave no node behind, so printing then
/// parsing returns the same tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// A literal `a/b`; kept distinct from `Int` even when `b` divides `a`.
    Rational(BigRational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Lambda(u32, Box<Expr>),
    Psi(u32, Box<Expr>),
    Binom(Box<Expr>, u32),
    Delta(u64, Box<Expr>),
    Esym(u32, Vec<String>),
    /// `[a0,a1,...]@p`
    Witt(Vec<BigInt>, u64),
}

pub const KEYWORDS: [&str; 5] = ["lambda", "psi", "binom", "delta", "esym"];

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn int(n: i64) -> Expr {
        Expr::Int(n.into())
    }

    /// Variables in order of first appearance.
    pub fn free_variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        let mut push = |v: &String| {
            if !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Expr::Var(v) => push(v),
            Expr::Esym(_, vs) => vs.iter().for_each(push),
            Expr::Neg(a)
            | Expr::Pow(a, _)
            | Expr::Lambda(_, a)
            | Expr::Psi(_, a)
            | Expr::Binom(a, _)
            | Expr::Delta(_, a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Int(_) | Expr::Rational(_) | Expr::Witt(..) => {}
        }
    }

    /// Nesting depth of the tree.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Neg(a)
            | Expr::Pow(a, _)
            | Expr::Lambda(_, a)
            | Expr::Psi(_, a)
            | Expr::Binom(a, _)
            | Expr::Delta(_, a) => 1 + a.depth(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => 1 + a.depth().max(b.depth()),
            _ => 1,
        }
    }
}

// precedence levels: sum, term, factor, atom
const SUM: u8 = 0;
const TERM: u8 = 1;
const FACTOR: u8 = 2;
const ATOM: u8 = 3;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => SUM,
        Expr::Mul(..) => TERM,
        Expr::Pow(..) => FACTOR,
        Expr::Rational(_) => FACTOR,
        _ => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Int(n) => write!(f, "{n}"),
        Expr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        Expr::Var(v) => write!(f, "{v}"),
        Expr::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, TERM)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at(f, a, SUM)?;
            write!(f, "{}", if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_at(f, b, TERM)
        }
        Expr::Mul(a, b) => {
            write_at(f, a, TERM)?;
            write!(f, "*")?;
            write_at(f, b, FACTOR)
        }
        Expr::Pow(a, n) => {
            write_at(f, a, ATOM)?;
            write!(f, "^{n}")
        }
        Expr::Lambda(n, a) => write!(f, "lambda({n}, {a})"),
        Expr::Psi(n, a) => write!(f, "psi({n}, {a})"),
        Expr::Binom(a, n) => write!(f, "binom({a}, {n})"),
        Expr::Delta(p, a) => write!(f, "delta({p}, {a})"),
        Expr::Esym(k, vs) => write!(f, "esym({k}; {})", vs.join(", ")),
        Expr::Witt(cs, p) => {
            let parts: Vec<String> = cs.iter().map(ToString::to_string).collect();
            write!(f, "[{}]@{p}", parts.join(","))
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn printing_parenthesises_by_precedence() {
        let x = Expr::var("x");
        let y = Expr::var("y");
        let sum = Expr::Add(b(x.clone()), b(y.clone()));
        assert_eq!(Expr::Mul(b(sum.clone()), b(x.clone())).to_string(), "(x + y)*x");
        assert_eq!(Expr::Sub(b(x.clone()), b(sum.clone())).to_string(), "x - (x + y)");
        assert_eq!(Expr::Pow(b(Expr::Neg(b(x.clone()))), 2).to_string(), "(-x)^2");
        assert_eq!(Expr::Neg(b(Expr::Mul(b(x.clone()), b(y.clone())))).to_string(), "-x*y");
        assert_eq!(Expr::Pow(b(Expr::Rational(BigRational::new(1.into(), 2.into()))), 3).to_string(), "(1/2)^3");
        assert_eq!(Expr::Witt(vec![1.into(), (-1).into()], 2).to_string(), "[1,-1]@2");
    }
}
