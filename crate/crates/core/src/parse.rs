//! Text form of polynomials.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `1/2*x` is the rational
//! coefficient form. Juxtaposition (`2x`) is rejected.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Scalar, VariableSet};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Num(n), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(Error::Syntax { pos: col, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, text.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a Arc<VariableSet>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let den = self.unary()?;
                    match den.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => return Err(Error::Syntax { pos, msg: "division by zero".into() }),
                        None => return Err(Error::Syntax { pos, msg: "division is only allowed by constants".into() }),
                    }
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    return self.err("implicit multiplication is not supported; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let Tok::Num(n) = self.peek().clone() else {
            return self.err("expected a non-negative integer exponent");
        };
        match n.to_u32() {
            Some(e) => {
                self.bump();
                Ok(base.pow(e))
            }
            None => self.err("exponent too large"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(Polynomial::constant(self.vars, Scalar::from_integer(n))),
            Tok::Ident(name) => match self.vars.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.vars, i)),
                None => Err(Error::Undeclared { name, pos }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            other => Err(Error::Syntax { pos, msg: format!("unexpected token {other:?}") }),
        }
    }
}

impl Polynomial {
    pub fn parse(text: &str, vars: &Arc<VariableSet>) -> Result<Polynomial> {
        let toks = tokenize(text)?;
        let mut p = Parser { toks, at: 0, vars };
        let out = p.expr()?;
        match p.peek() {
            Tok::End => Ok(out),
            Tok::RParen => p.err("unbalanced `)`"),
            _ => p.err("unexpected trailing input"),
        }
    }
}

/// Rendering order: compare main exponents from `x_n` down to `x_1`, then
/// parameters in declaration order.
pub fn render_order(n_main: usize, a: &Monomial, b: &Monomial) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    for k in (0..n_main).rev() {
        match ea[k].cmp(&eb[k]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    ea[n_main..].cmp(&eb[n_main..])
}

fn render_monomial(vars: &VariableSet, m: &Monomial) -> String {
    let n = vars.n_main();
    let order = (n..vars.len()).chain(0..n);
    let mut parts = Vec::new();
    for i in order {
        match m.degree(i) {
            0 => {}
            1 => parts.push(vars.name(i).to_string()),
            e => parts.push(format!("{}^{e}", vars.name(i))),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in descending lex order, `a*b` products, `^` powers.
pub fn render(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.vars();
    let n = vars.n_main();
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| render_order(n, b.0, a.0));
    let mut out = String::new();
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(vars, m);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn vars() -> Arc<VariableSet> {
        VariableSet::standard(2, &["a", "b"]).unwrap()
    }

    #[test]
    fn square_of_sum() {
        let v = vars();
        let lhs = Polynomial::parse("x^2 + 2*x*y + y^2", &v).unwrap();
        let s = Polynomial::var(&v, 0) + Polynomial::var(&v, 1);
        assert_eq!(lhs, &s * &s);
    }

    #[test]
    fn omega_one_expands() {
        let v = vars();
        let w = Polynomial::parse("(x-b)^2*(y-b)^2", &v).unwrap();
        assert_eq!(w.num_terms(), 9);
        assert_eq!(
            render(&w),
            "x1^2*x2^2 - 2*b*x1*x2^2 + b^2*x2^2 - 2*b*x1^2*x2 + 4*b^2*x1*x2 - 2*b^3*x2 + b^2*x1^2 - 2*b^3*x1 + b^4"
        );
    }

    #[test]
    fn rational_cancellation() {
        let v = vars();
        assert!(Polynomial::parse("1/2*x - 1/2*x", &v).unwrap().is_zero());
        let half = Polynomial::parse("-1/2*x1", &v).unwrap();
        assert_eq!(half, Polynomial::var(&v, 0).scale(&ratio(-1, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        let v = vars();
        assert_eq!(
            Polynomial::parse("2x", &v),
            Err(Error::Syntax { pos: 2, msg: "implicit multiplication is not supported; use `*`".into() })
        );
        assert_eq!(Polynomial::parse("x + w", &v), Err(Error::Undeclared { name: "w".into(), pos: 5 }));
        assert!(matches!(Polynomial::parse("(x+1", &v), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(Polynomial::parse("x^y", &v), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(Polynomial::parse("x/y", &v), Err(Error::Syntax { .. })));
        assert!(matches!(Polynomial::parse("x/0", &v), Err(Error::Syntax { .. })));
        assert!(matches!(Polynomial::parse("x $ 1", &v), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(Polynomial::parse("", &v), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_simple_forms() {
        let v = vars();
        let q = Polynomial::parse("-2+3*(x+y)-x*y", &v).unwrap();
        assert_eq!(render(&q), "-x1*x2 + 3*x2 + 3*x1 - 2");
        assert_eq!(render(&Polynomial::zero(&v)), "0");
        assert_eq!(render(&Polynomial::parse("-1/3*a^2*y", &v).unwrap()), "-1/3*a^2*x2");
    }

    #[test]
    fn round_trip_examples() {
        let v = vars();
        for s in ["x^2+y^2", "(x-a)^3*(y+1/7)", "-5", "a*b - 2/3*x*y^4*b", "0"] {
            let q = Polynomial::parse(s, &v).unwrap();
            assert_eq!(Polynomial::parse(&render(&q), &v).unwrap(), q, "{s}");
        }
    }
}
