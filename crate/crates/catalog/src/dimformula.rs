//! Closed-form dimension formulas in the weight `k`.
//!
//! Grammar: integers, `k`, `+ - * %`, parentheses, floor division written
//! `[a / b]`, comparisons `==` / `!=` and a conditional `c ? a : b`.

use crate::error::{CatalogError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimExpr {
    Int(i64),
    K,
    Add(Box<DimExpr>, Box<DimExpr>),
    Sub(Box<DimExpr>, Box<DimExpr>),
    Mul(Box<DimExpr>, Box<DimExpr>),
    Rem(Box<DimExpr>, Box<DimExpr>),
    Floor(Box<DimExpr>, Box<DimExpr>),
    Neg(Box<DimExpr>),
    Eq(Box<DimExpr>, Box<DimExpr>),
    Ne(Box<DimExpr>, Box<DimExpr>),
    If(Box<DimExpr>, Box<DimExpr>, Box<DimExpr>),
}

impl DimExpr {
    pub fn parse(src: &str) -> Result<DimExpr> {
        let tokens = tokenize(src)?;
        let mut p = Parser { src, tokens, pos: 0 };
        let e = p.ternary()?;
        if p.pos != p.tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, k: i64) -> i64 {
        use DimExpr::*;
        match self {
            Int(n) => *n,
            K => k,
            Add(a, b) => a.eval(k) + b.eval(k),
            Sub(a, b) => a.eval(k) - b.eval(k),
            Mul(a, b) => a.eval(k) * b.eval(k),
            Rem(a, b) => a.eval(k).rem_euclid(b.eval(k)),
            Floor(a, b) => a.eval(k).div_euclid(b.eval(k)),
            Neg(a) => -a.eval(k),
            Eq(a, b) => (a.eval(k) == b.eval(k)) as i64,
            Ne(a, b) => (a.eval(k) != b.eval(k)) as i64,
            If(c, a, b) => {
                if c.eval(k) != 0 {
                    a.eval(k)
                } else {
                    b.eval(k)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    K,
    Sym(&'static str),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().map_err(|_| CatalogError::parse(src, "integer overflow"))?));
        } else if c == 'k' {
            out.push(Tok::K);
            i += 1;
        } else {
            let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let sym = match two.as_str() {
                "==" => Some("=="),
                "!=" => Some("!="),
                _ => None,
            };
            if let Some(s) = sym {
                out.push(Tok::Sym(s));
                i += 2;
                continue;
            }
            let s = match c {
                '+' => "+",
                '-' => "-",
                '*' => "*",
                '%' => "%",
                '/' => "/",
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                '?' => "?",
                ':' => ":",
                _ => return Err(CatalogError::parse(src, format!("unexpected character {c:?}"))),
            };
            out.push(Tok::Sym(s));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> CatalogError {
        CatalogError::parse(format!("dimension formula {:?}", self.src), m)
    }

    fn peek_sym(&self, s: &str) -> bool {
        matches!(self.tokens.get(self.pos), Some(Tok::Sym(t)) if *t == s)
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.peek_sym(s) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {s:?}")))
        }
    }

    fn ternary(&mut self) -> Result<DimExpr> {
        let c = self.comparison()?;
        if self.peek_sym("?") {
            self.pos += 1;
            let a = self.ternary()?;
            self.expect(":")?;
            let b = self.ternary()?;
            return Ok(DimExpr::If(Box::new(c), Box::new(a), Box::new(b)));
        }
        Ok(c)
    }

    fn comparison(&mut self) -> Result<DimExpr> {
        let a = self.additive()?;
        for (s, ctor) in [("==", DimExpr::Eq as fn(_, _) -> _), ("!=", DimExpr::Ne)] {
            if self.peek_sym(s) {
                self.pos += 1;
                let b = self.additive()?;
                return Ok(ctor(Box::new(a), Box::new(b)));
            }
        }
        Ok(a)
    }

    fn additive(&mut self) -> Result<DimExpr> {
        let mut a = self.term()?;
        loop {
            if self.peek_sym("+") {
                self.pos += 1;
                a = DimExpr::Add(Box::new(a), Box::new(self.term()?));
            } else if self.peek_sym("-") {
                self.pos += 1;
                a = DimExpr::Sub(Box::new(a), Box::new(self.term()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn term(&mut self) -> Result<DimExpr> {
        let mut a = self.unary()?;
        loop {
            if self.peek_sym("*") {
                self.pos += 1;
                a = DimExpr::Mul(Box::new(a), Box::new(self.unary()?));
            } else if self.peek_sym("%") {
                self.pos += 1;
                a = DimExpr::Rem(Box::new(a), Box::new(self.unary()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn unary(&mut self) -> Result<DimExpr> {
        if self.peek_sym("-") {
            self.pos += 1;
            return Ok(DimExpr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<DimExpr> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(DimExpr::Int(n))
            }
            Some(Tok::K) => {
                self.pos += 1;
                Ok(DimExpr::K)
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.ternary()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(Tok::Sym("[")) => {
                self.pos += 1;
                let a = self.additive()?;
                self.expect("/")?;
                let b = self.additive()?;
                self.expect("]")?;
                Ok(DimExpr::Floor(Box::new(a), Box::new(b)))
            }
            _ => Err(self.err("expected a number, k, ( or [")),
        }
    }
}
