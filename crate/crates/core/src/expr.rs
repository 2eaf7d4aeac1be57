//! Text front end for series and polynomial expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := '-' factor | base ('^' exponent)*
//! base     := rational | 'x' | 'D' | '(' expr ')' | func '(' expr ')'
//! func     := 'exp' | 'log' | 'sqrt'
//! exponent := ['-'] integer | '(' ['-'] rational ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Precedence is `^` > unary minus > `*` `/` > `+` `-`; `^` is right
//! associative, so `x^2^3` is `x^8`, and `-x^2` is `-(x^2)`. An integer
//! directly followed by `/` and an integer is a single rational literal.
//! `x` and `D` name the same formal variable.
//!
//! A quotient whose denominator has order `k ≥ 1` is read as operator
//! division: both sides are divided by `x^k` first, so `D/(exp(D)-1)` is
//! well defined.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fps::{Order, Poly, Series};
use crate::rat::{pow_i, Rat};

/// Largest truncation order accepted by [`eval`].
pub const MAX_ORDER: usize = 64;

const MAX_EXPONENT: i64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AstKind {
    Num(Rat),
    Var(Var),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Rat),
    Call(Func, Box<Ast>),
}

/// A node with the byte offset where it starts. Equality ignores offsets.
#[derive(Debug, Clone)]
pub struct Ast {
    pub kind: AstKind,
    pub offset: usize,
}

impl PartialEq for Ast {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
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

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(input[start..i].parse().expect("digits")), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(input[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = input[start..].chars().next().expect("non-empty");
                return Err(Error::Syntax {
                    offset: start,
                    expected: "an expression token".into(),
                    found: format!("`{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, input.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Syntax { offset: self.offset(), expected: expected.into(), found: self.peek().describe() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(what)
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            let ctor = match self.peek() {
                Tok::Plus => AstKind::Add,
                Tok::Minus => AstKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let offset = lhs.offset;
            lhs = Ast { kind: ctor(Box::new(lhs), Box::new(rhs)), offset };
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            let ctor = match self.peek() {
                Tok::Star => AstKind::Mul,
                Tok::Slash => AstKind::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            let offset = lhs.offset;
            lhs = Ast { kind: ctor(Box::new(lhs), Box::new(rhs)), offset };
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        if *self.peek() == Tok::Minus {
            let offset = self.offset();
            self.bump();
            let inner = self.factor()?;
            return Ok(Ast { kind: AstKind::Neg(Box::new(inner)), offset });
        }
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let e = self.exponent_chain()?;
        let offset = base.offset;
        Ok(Ast { kind: AstKind::Pow(Box::new(base), e), offset })
    }

    /// `^ e1 ^ e2 ^ …` folded right to left into one exponent.
    fn exponent_chain(&mut self) -> Result<Rat> {
        let mut es = Vec::new();
        while *self.peek() == Tok::Caret {
            self.bump();
            es.push((self.offset(), self.exponent()?));
        }
        let (_, mut acc) = es.pop().expect("at least one exponent");
        while let Some((off, e)) = es.pop() {
            if !acc.is_integer() {
                return Err(Error::AtLocation {
                    offset: off,
                    source: Box::new(Error::InvalidParams("a non-integer power cannot be raised further".into())),
                });
            }
            let k = acc.to_integer().to_i64().filter(|k| k.abs() <= 64).ok_or_else(|| Error::AtLocation {
                offset: off,
                source: Box::new(Error::InvalidParams("exponent tower is too large".into())),
            })?;
            if e.is_zero() && k < 0 {
                return Err(Error::AtLocation { offset: off, source: Box::new(Error::NotInvertible) });
            }
            acc = pow_i(&e, k);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Rat> {
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let Tok::Int(n) = self.peek().clone() else {
            return self.fail(if paren { "a rational exponent" } else { "an integer exponent or `(`" });
        };
        self.bump();
        let mut r = Rat::from_integer(n);
        if paren {
            if *self.peek() == Tok::Slash {
                self.bump();
                r /= self.positive_int()?;
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(if neg { -r } else { r })
    }

    fn positive_int(&mut self) -> Result<Rat> {
        match self.peek().clone() {
            Tok::Int(d) if !d.is_zero() => {
                self.bump();
                Ok(Rat::from_integer(d))
            }
            _ => self.fail("a positive integer"),
        }
    }

    fn base(&mut self) -> Result<Ast> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut r = Rat::from_integer(n);
                if *self.peek() == Tok::Slash && matches!(self.peek_at(1), Tok::Int(_)) {
                    self.bump();
                    r /= self.positive_int()?;
                }
                Ok(Ast { kind: AstKind::Num(r), offset })
            }
            Tok::Ident(name) => {
                self.bump();
                let f = match name.as_str() {
                    "x" => return Ok(Ast { kind: AstKind::Var(Var::X), offset }),
                    "D" => return Ok(Ast { kind: AstKind::Var(Var::D), offset }),
                    "exp" => Func::Exp,
                    "log" => Func::Log,
                    "sqrt" => Func::Sqrt,
                    _ => {
                        return Err(Error::Syntax {
                            offset,
                            expected: "`x`, `D`, `exp`, `log` or `sqrt`".into(),
                            found: format!("`{name}`"),
                        })
                    }
                };
                self.expect(Tok::LParen, "`(`")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Ast { kind: AstKind::Call(f, Box::new(arg)), offset })
            }
            Tok::LParen => {
                self.bump();
                let mut e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                e.offset = offset;
                Ok(e)
            }
            _ => self.fail("a number, `x`, `D`, a function or `(`"),
        }
    }
}

/// Parses an expression, reporting the byte offset of the first error.
pub fn parse(input: &str) -> Result<Ast> {
    let mut p = Parser { toks: lex(input)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

fn prec(a: &Ast) -> u8 {
    match a.kind {
        AstKind::Add(..) | AstKind::Sub(..) => 1,
        AstKind::Mul(..) | AstKind::Div(..) => 2,
        AstKind::Neg(_) => 3,
        AstKind::Pow(..) => 4,
        AstKind::Num(ref r) if !r.is_integer() => 4,
        _ => 5,
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, a: &Ast, min: u8) -> fmt::Result {
    if prec(a) < min {
        write!(f, "({a})")
    } else {
        write!(f, "{a}")
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AstKind::Num(r) => {
                if r.is_negative() {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            AstKind::Var(Var::X) => write!(f, "x"),
            AstKind::Var(Var::D) => write!(f, "D"),
            AstKind::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            AstKind::Add(a, b) | AstKind::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "{}", if matches!(self.kind, AstKind::Add(..)) { " + " } else { " - " })?;
                wrap(f, b, 2)
            }
            AstKind::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            AstKind::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                // a literal right operand would fuse into a rational
                if matches!(b.kind, AstKind::Num(_)) {
                    write!(f, "({b})")
                } else {
                    wrap(f, b, 3)
                }
            }
            AstKind::Pow(a, e) => {
                wrap(f, a, 5)?;
                if e.is_integer() {
                    write!(f, "^{e}")
                } else {
                    write!(f, "^({e})")
                }
            }
            AstKind::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// Canonical text; `parse(render(a)) == a` for every parsed `a`.
pub fn render(a: &Ast) -> String {
    a.to_string()
}

fn at(offset: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::AtLocation { .. } => e,
        other => Error::AtLocation { offset, source: Box::new(other) },
    }
}

fn small_exponent(e: &Rat) -> Result<i64> {
    e.to_integer()
        .to_i64()
        .filter(|k| k.abs() <= MAX_EXPONENT)
        .ok_or_else(|| Error::InvalidParams(format!("exponent {e} is too large")))
}

fn eval_at(a: &Ast, n: usize) -> Result<Series> {
    let here = at(a.offset);
    match &a.kind {
        AstKind::Num(r) => Ok(Series::constant(r.clone(), n)),
        AstKind::Var(_) => Ok(Series::x(n)),
        AstKind::Neg(b) => Ok(eval_at(b, n)?.neg()),
        AstKind::Add(l, r) => Ok(eval_at(l, n)?.add(&eval_at(r, n)?)),
        AstKind::Sub(l, r) => Ok(eval_at(l, n)?.sub(&eval_at(r, n)?)),
        AstKind::Mul(l, r) => Ok(eval_at(l, n)?.mul(&eval_at(r, n)?)),
        AstKind::Div(l, r) => {
            let num = eval_at(l, n)?;
            let den = eval_at(r, n)?;
            divide(&num, &den).map_err(here)
        }
        AstKind::Pow(b, e) => {
            let base = eval_at(b, n)?;
            if e.is_integer() {
                base.pow_i(small_exponent(e).map_err(&here)?).map_err(here)
            } else {
                base.pow_rat(e).map_err(here)
            }
        }
        AstKind::Call(func, b) => {
            let v = eval_at(b, n)?;
            match func {
                Func::Exp => v.exp(),
                Func::Log => v.log(),
                Func::Sqrt => v.pow_rat(&Rat::new(1.into(), 2.into())),
            }
            .map_err(here)
        }
    }
}

/// `num/den`, shifting out a common power of the variable when `den(0) = 0`.
fn divide(num: &Series, den: &Series) -> Result<Series> {
    match den.order() {
        Order::Infinite => Err(Error::NotInvertible),
        Order::Finite(0) => Ok(num.mul(&den.mul_inv()?)),
        Order::Finite(k) => {
            let fits = match num.order() {
                Order::Infinite => true,
                Order::Finite(m) => m >= k,
            };
            if !fits {
                return Err(Error::DivisionOrder { num: num.order().to_string(), den: k });
            }
            let (a, b) = (num.shift_down(k)?, den.shift_down(k)?);
            Ok(a.mul(&b.mul_inv()?))
        }
    }
}

/// Evaluates to a series truncated at `order`. Operator division loses
/// precision, so evaluation is retried with extra working order until the
/// result is exact to `order`.
pub fn eval(a: &Ast, order: usize) -> Result<Series> {
    if order > MAX_ORDER {
        return Err(Error::InvalidParams(format!("order {order} exceeds the maximum {MAX_ORDER}")));
    }
    let mut last = None;
    for extra in [0, 8, 16, 32, 64, 128] {
        match eval_at(a, order + extra) {
            Ok(s) if s.trunc() >= order => return Ok(s.truncate(order)),
            Ok(_) => {}
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(Error::Truncation { needed: order, available: 0 }))
}

/// Parses and evaluates.
pub fn eval_str(input: &str, order: usize) -> Result<Series> {
    eval(&parse(input)?, order)
}

fn not_poly(what: &str) -> Error {
    Error::InvalidParams(format!("not a polynomial: {what}"))
}

/// Exact polynomial evaluation: no function calls, division only by
/// nonzero constants, non-negative integer powers of non-constants.
pub fn eval_poly(a: &Ast) -> Result<Poly> {
    let here = at(a.offset);
    match &a.kind {
        AstKind::Num(r) => Ok(Poly::constant(r.clone())),
        AstKind::Var(_) => Ok(Poly::x()),
        AstKind::Neg(b) => Ok(eval_poly(b)?.neg()),
        AstKind::Add(l, r) => Ok(eval_poly(l)?.add(&eval_poly(r)?)),
        AstKind::Sub(l, r) => Ok(eval_poly(l)?.sub(&eval_poly(r)?)),
        AstKind::Mul(l, r) => Ok(eval_poly(l)?.mul(&eval_poly(r)?)),
        AstKind::Div(l, r) => {
            let d = eval_poly(r)?;
            match d.deg() {
                Some(0) => Ok(eval_poly(l)?.scale(&d.coeff(0).recip())),
                None => Err(here(Error::NotInvertible)),
                Some(_) => Err(here(not_poly("division by a non-constant"))),
            }
        }
        AstKind::Pow(b, e) => {
            let p = eval_poly(b)?;
            if !e.is_integer() {
                return Err(here(not_poly("rational exponent")));
            }
            let k = small_exponent(e).map_err(&here)?;
            match p.deg() {
                Some(0) => Ok(Poly::constant(pow_i(&p.coeff(0), k))),
                None if k > 0 => Ok(Poly::zero()),
                None if k == 0 => Ok(Poly::one()),
                _ if k >= 0 => Ok(p.pow(k as usize)),
                _ => Err(here(if p.is_zero() { Error::NotInvertible } else { not_poly("negative exponent") })),
            }
        }
        AstKind::Call(f, _) => Err(here(not_poly(&format!("call to {}", f.name())))),
    }
}

/// Parses and evaluates as a polynomial.
pub fn eval_poly_str(input: &str) -> Result<Poly> {
    eval_poly(&parse(input)?)
}
