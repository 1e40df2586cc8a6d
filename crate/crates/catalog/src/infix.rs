//! Infix expressions: `+ - * / ^`, parentheses, rational literals,
//! roots of unity `zeta(a/b)`, identifiers and `conj(...)`.

use modring_core::arith::{parse_rational, Rational};

use crate::error::{CatalogError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Infix {
    Num(Rational),
    Zeta(i64, u64),
    Var(String),
    Add(Box<Infix>, Box<Infix>),
    Sub(Box<Infix>, Box<Infix>),
    Mul(Box<Infix>, Box<Infix>),
    Div(Box<Infix>, Box<Infix>),
    Neg(Box<Infix>),
    Pow(Box<Infix>, u32),
    Conj(Box<Infix>),
}

impl Infix {
    pub fn parse(src: &str) -> Result<Infix> {
        let tokens = tokenize(src)?;
        let mut p = Parser { src, tokens, pos: 0 };
        let e = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    pub fn variables(&self, out: &mut Vec<String>) {
        use Infix::*;
        match self {
            Num(_) | Zeta(..) => {}
            Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => {
                a.variables(out);
                b.variables(out);
            }
            Neg(a) | Pow(a, _) | Conj(a) => a.variables(out),
        }
    }

    /// Orders of the roots of unity written as `zeta(a/b)` literals.
    pub fn root_orders(&self, out: &mut Vec<u64>) {
        use Infix::*;
        match self {
            Zeta(a, b) => out.push(modring_core::RootOfUnity::new(*a, *b).order()),
            Num(_) | Var(_) => {}
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => {
                a.root_orders(out);
                b.root_orders(out);
            }
            Neg(a) | Pow(a, _) | Conj(a) => a.root_orders(out),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
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
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(CatalogError::parse(src, format!("unexpected character {c:?}")));
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
        CatalogError::parse(format!("{:?}", self.src), format!("{m} at token {}", self.pos))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.tokens.get(self.pos) == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn sum(&mut self) -> Result<Infix> {
        let mut a = self.product()?;
        loop {
            if self.eat('+') {
                a = Infix::Add(Box::new(a), Box::new(self.product()?));
            } else if self.eat('-') {
                a = Infix::Sub(Box::new(a), Box::new(self.product()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn product(&mut self) -> Result<Infix> {
        let mut a = self.unary()?;
        loop {
            if self.eat('*') {
                a = Infix::Mul(Box::new(a), Box::new(self.unary()?));
            } else if self.eat('/') {
                a = Infix::Div(Box::new(a), Box::new(self.unary()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn unary(&mut self) -> Result<Infix> {
        if self.eat('-') {
            return Ok(Infix::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Infix> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n.parse().map_err(|_| self.err("exponent too large"))?;
                    return Ok(Infix::Pow(Box::new(base), e));
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Infix> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Infix::Num(parse_rational(&n)?))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "zeta" => {
                        self.expect('(')?;
                        let neg = self.eat('-');
                        let a = self.integer()?;
                        self.expect('/')?;
                        let b = self.integer()?;
                        self.expect(')')?;
                        if b == 0 {
                            return Err(self.err("zeta denominator must be positive"));
                        }
                        Ok(Infix::Zeta(if neg { -a } else { a }, b as u64))
                    }
                    "conj" => {
                        self.expect('(')?;
                        let e = self.sum()?;
                        self.expect(')')?;
                        Ok(Infix::Conj(Box::new(e)))
                    }
                    _ => Ok(Infix::Var(name)),
                }
            }
            _ => Err(self.err("expected a number, identifier or '('")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.parse().map_err(|_| self.err("integer too large"))
            }
            _ => Err(self.err("expected an integer")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = Infix::parse("a + 2*b^3 - conj(c*d)").unwrap();
        let mut vars = Vec::new();
        e.variables(&mut vars);
        assert_eq!(vars, ["a", "b", "c", "d"]);
        match e {
            Infix::Sub(lhs, rhs) => {
                assert!(matches!(*lhs, Infix::Add(..)));
                assert!(matches!(*rhs, Infix::Conj(..)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zeta_literals() {
        assert_eq!(Infix::parse("zeta(3/10)").unwrap(), Infix::Zeta(3, 10));
        assert_eq!(Infix::parse("zeta(-1/4)").unwrap(), Infix::Zeta(-1, 4));
        assert!(Infix::parse("zeta(1/0)").is_err());
        assert!(Infix::parse("x^y").is_err());
        assert!(Infix::parse("(a + b").is_err());
    }
}
