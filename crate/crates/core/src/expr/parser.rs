//! Recursive-descent parser.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' nat]
//! atom   := nat ['/' nat] | ident | call | '(' expr ')' | witt
//! call   := lambda(nat, expr) | psi(nat, expr) | binom(expr, nat)
//!         | delta(nat, expr) | esym(nat; ident (',' ident)*)
//! witt   := '[' int (',' int)* ']' '@' nat
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::ast::{Expr, KEYWORDS};

pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(advance(&mut chars));
            }
            out.push(Token { tok: Tok::Num(s.parse().expect("digits")), line: l, column: col });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(advance(&mut chars));
            }
            out.push(Token { tok: Tok::Ident(s), line: l, column: col });
        } else if "+-*^/()[],;@".contains(c) {
            advance(&mut chars);
            out.push(Token { tok: Tok::Sym(c), line: l, column: col });
        } else {
            return Err(Error::Parse { line: l, column: col, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: t.line, column: t.column, message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, context: &str) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.error_at(&t, format!("expected `{c}` {context}, found {}", describe(&t.tok)))
        }
    }

    fn nat(&mut self, what: &str) -> Result<BigInt> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Num(n) => Ok(n),
            other => self.error_at(&t, format!("expected {what}, found {}", describe(&other))),
        }
    }

    fn small<T: TryFrom<BigInt>>(&mut self, what: &str) -> Result<T> {
        let t = self.peek().clone();
        let n = self.nat(what)?;
        T::try_from(n.clone()).or_else(|_| self.error_at(&t, format!("{what} {n} is too large")))
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => Ok(s),
            other => self.error_at(&t, format!("expected {what}, found {}", describe(&other))),
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::ResourceLimit(format!("expression nesting exceeds {MAX_DEPTH}")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut lhs = if self.eat('-') { Expr::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.small::<u32>("exponent")?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Num(n) => {
                if self.eat('/') {
                    let dt = self.peek().clone();
                    let d = self.nat("denominator")?;
                    if d.is_zero() {
                        return self.error_at(&dt, "denominator is zero");
                    }
                    return Ok(Expr::Rational(BigRational::new(n, d)));
                }
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                if KEYWORDS.contains(&name.as_str()) {
                    if self.peek().tok != Tok::Sym('(') {
                        return self
                            .error_at(&t, format!("`{name}` is an operator and takes arguments in parentheses"));
                    }
                    self.call(&name)
                } else if self.peek().tok == Tok::Sym('(') {
                    self.error_at(&t, format!("unknown function `{name}`"))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')', "to close the group")?;
                Ok(e)
            }
            Tok::Sym('[') => self.witt(),
            other => self.error_at(&t, format!("expected an expression, found {}", describe(&other))),
        }
    }

    fn arity_error<T>(&self, name: &str, shape: &str) -> Result<T> {
        let t = self.peek().clone();
        self.error_at(&t, format!("{name} takes arguments ({shape}), found {}", describe(&t.tok)))
    }

    fn call(&mut self, name: &str) -> Result<Expr> {
        self.enter()?;
        self.expect('(', &format!("after {name}"))?;
        let e = match name {
            "lambda" | "psi" | "delta" => {
                let what = if name == "delta" { "prime" } else { "index" };
                if !matches!(self.peek().tok, Tok::Num(_)) {
                    return self.arity_error(name, &format!("{what}, expr"));
                }
                let n = self.small::<u64>(what)?;
                if !self.eat(',') {
                    return self.arity_error(name, &format!("{what}, expr"));
                }
                let arg = Box::new(self.expr()?);
                let index =
                    |n: u64| u32::try_from(n).map_err(|_| Error::ResourceLimit(format!("index {n} is too large")));
                match name {
                    "lambda" => Expr::Lambda(index(n)?, arg),
                    "psi" => Expr::Psi(index(n)?, arg),
                    _ => Expr::Delta(n, arg),
                }
            }
            "binom" => {
                let arg = Box::new(self.expr()?);
                if !self.eat(',') || !matches!(self.peek().tok, Tok::Num(_)) {
                    return self.arity_error(name, "expr, nat");
                }
                Expr::Binom(arg, self.small::<u32>("index")?)
            }
            "esym" => {
                if !matches!(self.peek().tok, Tok::Num(_)) {
                    return self.arity_error(name, "nat; variables");
                }
                let k = self.small::<u32>("index")?;
                if !self.eat(';') {
                    return self.arity_error(name, "nat; variables");
                }
                let mut vs = vec![self.ident("variable")?];
                while self.eat(',') {
                    vs.push(self.ident("variable")?);
                }
                Expr::Esym(k, vs)
            }
            _ => unreachable!("keyword list"),
        };
        let t = self.next();
        if t.tok != Tok::Sym(')') {
            return self.error_at(
                &t,
                format!("{name} got too many arguments or an unclosed call: found {}", describe(&t.tok)),
            );
        }
        self.depth -= 1;
        Ok(e)
    }

    fn witt(&mut self) -> Result<Expr> {
        let mut coords = Vec::new();
        loop {
            let neg = self.eat('-');
            let n = self.nat("Witt coordinate")?;
            coords.push(if neg { -n } else { n });
            if self.eat(']') {
                break;
            }
            self.expect(',', "between Witt coordinates")?;
        }
        if !self.eat('@') {
            let t = self.peek().clone();
            return self.error_at(&t, "Witt literal needs a prime: `[a0,...]@p`");
        }
        let pt = self.peek().clone();
        let p = self.nat("prime")?;
        let p = p.to_u64().map_or_else(|| self.error_at(&pt, "prime is too large"), Ok)?;
        Ok(Expr::Witt(coords, p))
    }
}

/// Parse a full expression; errors carry 1-based line and column.
pub fn parse(input: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(input)?, pos: 0, depth: 0 };
    if p.peek().tok == Tok::End {
        let t = p.peek().clone();
        return p.error_at(&t, "empty expression");
    }
    let e = p.expr()?;
    let t = p.next();
    if t.tok != Tok::End {
        return p.error_at(&t, format!("unexpected {} after the expression", describe(&t.tok)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_pos(s: &str) -> (usize, usize) {
        match parse(s) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn examples() {
        let e = parse("lambda(2, x*y)").unwrap();
        assert!(matches!(&e, Expr::Lambda(2, inner) if matches!(**inner, Expr::Mul(..))));
        assert!(matches!(parse("[1,1]@2 + [1,1]@2").unwrap(), Expr::Add(..)));
        assert!(matches!(parse("binom(x,2)*binom(x,1)").unwrap(), Expr::Mul(..)));
        assert_eq!(parse("esym(2; a, b,c)").unwrap(), Expr::Esym(2, vec!["a".into(), "b".into(), "c".into()]));
        assert_eq!(parse(" -x^2 ").unwrap().to_string(), "-x^2");
        assert_eq!(parse("1/2*x").unwrap().to_string(), "1/2*x");
    }

    #[test]
    fn errors_have_positions() {
        assert_eq!(err_pos("x +"), (1, 4));
        assert_eq!(err_pos("x\n  + * y"), (2, 5));
        assert_eq!(err_pos("lambda(2)"), (1, 9));
        assert_eq!(err_pos("foo(x)"), (1, 1));
        assert_eq!(err_pos("x $ y"), (1, 3));
        assert_eq!(err_pos("[1,2]"), (1, 6));
        assert_eq!(err_pos("(x"), (1, 3));
        assert_eq!(err_pos("binom(x, 2, 3)"), (1, 11));
        assert_eq!(err_pos("lambda + 1"), (1, 1));
        assert_eq!(err_pos(""), (1, 1));
    }

    #[test]
    fn deep_nesting_is_a_resource_error() {
        let s = format!("{}x{}", "(".repeat(500), ")".repeat(500));
        assert!(matches!(parse(&s), Err(Error::ResourceLimit(_))));
    }
}
