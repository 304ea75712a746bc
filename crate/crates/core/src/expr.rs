//! Recursive-descent parser for class expressions such as `x1*x3 - 2 x4 q t^{1/4}`.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/')? unary)*     juxtaposition multiplies; '/' needs a scalar divisor
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! atom     := integer | 'x' index | 'q' | 't' | '(' expr ')'
//! exponent := ['-'] integer | '{' rational '}' | '(' rational ')'
//! ```

use crate::error::{Error, Result};
use crate::novikov::{NovScalar, Series};
use crate::poly::{Monomial, PolyQ};
use crate::quantum::NovPoly;
use crate::rational::{parse_rat, Rat};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    Q,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            'x' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(format!("expected an index after 'x' at position {start}")))?;
                if idx == 0 {
                    return Err(Error::Parse("variables are numbered from x1".into()));
                }
                out.push(Tok::Var(idx - 1));
            }
            _ => {
                out.push(match c {
                    'q' => Tok::Q,
                    't' => Tok::T,
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    other => return Err(Error::Parse(format!("unexpected character {other:?} at position {i}"))),
                });
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
    cutoff: Rat,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref x) if *x == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn constant(&self, c: Rat) -> NovPoly {
        Series::from_terms([((Rat::zero(), 0), PolyQ::constant(self.nvars, c))], self.cutoff.clone())
    }

    fn expr(&mut self) -> Result<NovPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NovPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_mul(&self.invert_scalar(&d)?)?;
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Q | Tok::T | Tok::LParen) => {
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<NovPoly> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<NovPoly> {
        let (base, kind) = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        if kind == AtomKind::T {
            return Ok(base_t(self, &e));
        }
        if !e.is_integer() {
            return Err(Error::Parse("only t accepts non-integer exponents".into()));
        }
        let k = e.to_integer();
        let k: i64 = k.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
        if k >= 0 {
            let mut out = self.constant(Rat::one());
            for _ in 0..k {
                out = out.checked_mul(&base)?;
            }
            Ok(out)
        } else {
            let inv = self.invert_scalar(&base)?;
            let mut out = self.constant(Rat::one());
            for _ in 0..-k {
                out = out.checked_mul(&inv)?;
            }
            Ok(out)
        }
    }

    fn exponent(&mut self) -> Result<Rat> {
        match self.next() {
            Some(Tok::Minus) => match self.next() {
                Some(Tok::Num(n)) => Ok(-parse_rat(&n)?),
                other => Err(Error::Parse(format!("bad exponent near {other:?}"))),
            },
            Some(Tok::Num(n)) => parse_rat(&n),
            Some(open @ (Tok::LBrace | Tok::LParen)) => {
                let close = if open == Tok::LBrace { Tok::RBrace } else { Tok::RParen };
                let mut text = String::new();
                loop {
                    match self.next() {
                        Some(t) if t == close => break,
                        Some(Tok::Num(n)) => text.push_str(&n),
                        Some(Tok::Minus) => text.push('-'),
                        Some(Tok::Slash) => text.push('/'),
                        other => return Err(Error::Parse(format!("bad exponent near {other:?}"))),
                    }
                }
                parse_rat(&text)
            }
            other => Err(Error::Parse(format!("bad exponent near {other:?}"))),
        }
    }

    fn atom(&mut self) -> Result<(NovPoly, AtomKind)> {
        match self.next() {
            Some(Tok::Num(n)) => Ok((self.constant(parse_rat(&n)?), AtomKind::Other)),
            Some(Tok::Var(i)) => {
                if i >= self.nvars {
                    return Err(Error::Parse(format!("x{} out of range (there are {} facets)", i + 1, self.nvars)));
                }
                Ok((
                    Series::from_terms([((Rat::zero(), 0), PolyQ::var(self.nvars, i))], self.cutoff.clone()),
                    AtomKind::Other,
                ))
            }
            Some(Tok::Q) => Ok((
                Series::from_terms([((Rat::zero(), 1), PolyQ::one(self.nvars))], self.cutoff.clone()),
                AtomKind::Other,
            )),
            Some(Tok::T) => Ok((base_t(self, &Rat::one()), AtomKind::T)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok((e, AtomKind::Other))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn invert_scalar(&self, d: &NovPoly) -> Result<NovPoly> {
        if d.terms().any(|(_, p)| p.terms().any(|(m, _)| !m.is_one())) {
            return Err(Error::Parse("can only divide by expressions in q and t".into()));
        }
        let one = Monomial::one(self.nvars);
        let s: NovScalar = d.map_coeffs(|p| p.coeff(&one));
        let inv = s.invert()?;
        let n = self.nvars;
        Ok(inv.map_coeffs(|c| PolyQ::constant(n, c.clone())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AtomKind {
    T,
    Other,
}

fn base_t(p: &Parser, e: &Rat) -> NovPoly {
    Series::from_terms([((e.clone(), 0), PolyQ::one(p.nvars))], p.cutoff.clone())
}

/// Parses an expression in `x1..x{nvars}`, `q` and `t`.
pub fn parse_expr(s: &str, nvars: usize, cutoff: &Rat) -> Result<NovPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, nvars, cutoff: cutoff.clone() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {:?}", p.toks[p.pos])));
    }
    Ok(e)
}

/// Parses a pure scalar (no `x` variables).
pub fn parse_scalar(s: &str, cutoff: &Rat) -> Result<NovScalar> {
    let e = parse_expr(s, 0, cutoff)?;
    Ok(e.map_coeffs(|p| p.coeff(&Monomial::one(0))))
}

/// Integer vector such as `2,-1`.
pub fn parse_int_vector(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?}"))))
        .collect()
}
