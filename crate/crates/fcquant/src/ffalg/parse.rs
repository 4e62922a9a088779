//! Text grammar for chart expressions.
//!
//! Integer coefficients, named variables, `+ - * ^`, parentheses, and
//! `/ unit` for localized denominators. The same AST feeds the operator
//! and Weyl evaluators elsewhere in the crate; this module evaluates into
//! chart functions.

use std::sync::Arc;

use super::ratfunc::{ChartRing, RatFunc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64),
    Ident(String, usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
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

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(input: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                chars.next();
                col += 1;
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                toks.push((t, tline, tcol));
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let v: i64 = s.parse().map_err(|_| Error::Parse {
                    line: tline,
                    col: tcol,
                    msg: format!("integer literal {s} out of range"),
                })?;
                toks.push((Tok::Int(v), tline, tcol));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), tline, tcol));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.1, t.2)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse { line, col, msg: msg.into() }
    }
}

/// Parse an expression into the shared AST.
pub fn parse_expr(input: &str) -> Result<Expr> {
    let mut lx = lex(input)?;
    let e = expr(&mut lx)?;
    if *lx.peek() != Tok::End {
        return Err(lx.err("trailing input"));
    }
    Ok(e)
}

fn expr(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = term(lx)?;
    loop {
        match lx.peek() {
            Tok::Plus => {
                lx.bump();
                acc = Expr::Add(Box::new(acc), Box::new(term(lx)?));
            }
            Tok::Minus => {
                lx.bump();
                acc = Expr::Sub(Box::new(acc), Box::new(term(lx)?));
            }
            _ => return Ok(acc),
        }
    }
}

fn term(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = factor(lx)?;
    loop {
        match lx.peek() {
            Tok::Star => {
                lx.bump();
                acc = Expr::Mul(Box::new(acc), Box::new(factor(lx)?));
            }
            Tok::Slash => {
                lx.bump();
                acc = Expr::Div(Box::new(acc), Box::new(factor(lx)?));
            }
            _ => return Ok(acc),
        }
    }
}

fn factor(lx: &mut Lexer) -> Result<Expr> {
    if *lx.peek() == Tok::Minus {
        lx.bump();
        return Ok(Expr::Neg(Box::new(factor(lx)?)));
    }
    let base = atom(lx)?;
    if *lx.peek() == Tok::Caret {
        lx.bump();
        let mut sign = 1i32;
        if *lx.peek() == Tok::Minus {
            lx.bump();
            sign = -1;
        }
        match lx.bump() {
            Tok::Int(v) => {
                let e = i32::try_from(v).map_err(|_| lx.err("exponent out of range"))?;
                Ok(Expr::Pow(Box::new(base), sign * e))
            }
            _ => Err(lx.err("expected integer exponent after ^")),
        }
    } else {
        Ok(base)
    }
}

fn atom(lx: &mut Lexer) -> Result<Expr> {
    let (line, col) = lx.here();
    match lx.bump() {
        Tok::Int(v) => Ok(Expr::Int(v)),
        Tok::Ident(s) => Ok(Expr::Ident(s, line, col)),
        Tok::LParen => {
            let e = expr(lx)?;
            if lx.bump() != Tok::RParen {
                Err(lx.err("expected closing parenthesis"))
            } else {
                Ok(e)
            }
        }
        t => Err(Error::Parse {
            line,
            col,
            msg: format!("unexpected token {t:?}"),
        }),
    }
}

/// Evaluate an expression into a chart function.
pub fn eval_ratfunc(e: &Expr, ring: &Arc<ChartRing>) -> Result<RatFunc> {
    match e {
        Expr::Int(v) => Ok(RatFunc::constant(ring, *v)),
        Expr::Ident(name, line, col) => {
            if name == "h" {
                return Err(Error::Parse {
                    line: *line,
                    col: *col,
                    msg: "h is reserved for the deformation parameter".into(),
                });
            }
            RatFunc::var(ring, name).map_err(|_| Error::Parse {
                line: *line,
                col: *col,
                msg: format!("unknown variable {name}"),
            })
        }
        Expr::Neg(a) => Ok(eval_ratfunc(a, ring)?.neg()),
        Expr::Add(a, b) => Ok(eval_ratfunc(a, ring)?.add(&eval_ratfunc(b, ring)?)),
        Expr::Sub(a, b) => Ok(eval_ratfunc(a, ring)?.sub(&eval_ratfunc(b, ring)?)),
        Expr::Mul(a, b) => Ok(eval_ratfunc(a, ring)?.mul(&eval_ratfunc(b, ring)?)),
        Expr::Div(a, b) => eval_ratfunc(a, ring)?.div_unit(&eval_ratfunc(b, ring)?),
        Expr::Pow(a, e) => {
            let base = eval_ratfunc(a, ring)?;
            if *e >= 0 {
                Ok(base.pow(*e as u32))
            } else {
                Ok(base.try_inverse()?.pow((-e) as u32))
            }
        }
    }
}

/// Parse a chart function.
pub fn parse_ratfunc(input: &str, ring: &Arc<ChartRing>) -> Result<RatFunc> {
    let e = parse_expr(input)?;
    eval_ratfunc(&e, ring)
}

/// Parse a polynomial (no denominators allowed beyond inverted variables).
pub fn parse_poly(input: &str, ring: &Arc<ChartRing>) -> Result<super::Poly> {
    let f = parse_ratfunc(input, ring)?;
    if f.den_exponents().iter().any(|&e| e > 0) {
        return Err(Error::Invalid(format!(
            "expected a polynomial, got denominator in {input}"
        )));
    }
    Ok(f.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::PrimeModulus;

    fn ring() -> Arc<ChartRing> {
        ChartRing::localized(PrimeModulus::new(5).unwrap(), &["u", "y"], &["u", "y"])
    }

    #[test]
    fn parses_basic_grammar() {
        let r = ring();
        let f = parse_ratfunc("3*u^2 + y - 1", &r).unwrap();
        assert_eq!(f.to_display(), "3*u^2 + y + 4");
        let g = parse_ratfunc("(u + 1)*(u - 1)", &r).unwrap();
        assert_eq!(g.to_display(), "u^2 + 4");
    }

    #[test]
    fn division_by_units() {
        let r = ring();
        let f = parse_ratfunc("3/u^2", &r).unwrap();
        assert_eq!(f.to_display(), "3/(u^2)");
        let bad = parse_ratfunc("1/(u+1)", &r);
        assert!(bad.is_err());
    }

    #[test]
    fn reports_position() {
        let r = ring();
        match parse_ratfunc("u + @", &r) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 5);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn display_reparses_to_equal_value() {
        let r = ring();
        for src in ["3*u^2 + y + 4", "u^2*y + 2", "4/(u*y^2)", "(u^2 + 3)/(y)"] {
            let f = parse_ratfunc(src, &r).unwrap();
            let g = parse_ratfunc(&f.to_display(), &r).unwrap();
            assert_eq!(f, g, "round trip failed for {src}");
        }
    }
}
