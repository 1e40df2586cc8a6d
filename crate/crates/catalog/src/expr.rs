//! Prefix expressions defining named forms.
//!
//! ```text
//! expr   := atom | '(' op ')' | op
//! op     := add expr expr+ | sub expr expr | mul expr expr+ | pow expr n
//!         | scale scalar expr | neg expr | v h expr | lower h expr | conj expr
//! scalar := rational | '[' infix scalar ']'
//! atom   := E<k> | C<N> | f[k;chi] | g[k;chi] | g[k;chi,psi] | theta | theta<h>
//!         | alpha23 | bqf[a,b,c] | form name
//! ```

use modring_core::arith::parse_rational;
use modring_core::characters::parse_character;
use modring_core::{DirichletCharacter, HalfWeight, RootOfUnity};

use crate::error::{CatalogError, Result};
use crate::infix::Infix;

#[derive(Debug, Clone)]
pub enum Ctor {
    E(u32),
    C(u32),
    F(u32, DirichletCharacter),
    G(u32, DirichletCharacter),
    G2(u32, DirichletCharacter, DirichletCharacter),
    /// `theta^<h>`; `h = 1` is theta itself.
    Theta(usize),
    Alpha23,
    Bqf(i64, i64, i64),
}

#[derive(Debug, Clone)]
pub enum Expr {
    Ctor(Ctor),
    Ref(String),
    Add(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Scale(Infix, Box<Expr>),
    Neg(Box<Expr>),
    V(usize, Box<Expr>),
    Lower(usize, Box<Expr>),
    Conj(Box<Expr>),
}

const OPS: &[&str] = &["add", "sub", "mul", "pow", "scale", "neg", "v", "lower", "conj"];

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let tokens = tokenize(src)?;
        let mut p = Parser { src, tokens, pos: 0 };
        let e = if p.tokens.first().is_some_and(|t| OPS.contains(&t.as_str())) {
            p.op_body()?
        } else {
            p.expr()?
        };
        if p.pos != p.tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Names of other forms this expression refers to.
    pub fn references(&self, out: &mut Vec<String>) {
        match self {
            Expr::Ctor(_) => {}
            Expr::Ref(n) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|e| e.references(out)),
            Expr::Sub(a, b) => {
                a.references(out);
                b.references(out);
            }
            Expr::Pow(a, _) | Expr::Scale(_, a) | Expr::Neg(a) | Expr::V(_, a) | Expr::Lower(_, a) | Expr::Conj(a) => {
                a.references(out)
            }
        }
    }

    /// Whether `E2` appears directly (references are not followed).
    pub fn uses_e2(&self) -> bool {
        match self {
            Expr::Ctor(Ctor::E(2)) => true,
            Expr::Ctor(_) | Expr::Ref(_) => false,
            Expr::Add(v) | Expr::Mul(v) => v.iter().any(Expr::uses_e2),
            Expr::Sub(a, b) => a.uses_e2() || b.uses_e2(),
            Expr::Pow(a, _) | Expr::Scale(_, a) | Expr::Neg(a) | Expr::V(_, a) | Expr::Lower(_, a) | Expr::Conj(a) => {
                a.uses_e2()
            }
        }
    }

    /// Orders of all roots of unity needed by characters and scalars (references not followed).
    pub fn root_orders(&self, out: &mut Vec<u64>) {
        match self {
            Expr::Ctor(Ctor::F(_, c) | Ctor::G(_, c)) => out.push(c.order()),
            Expr::Ctor(Ctor::G2(_, c, d)) => {
                out.push(c.order());
                out.push(d.order());
            }
            Expr::Ctor(_) | Expr::Ref(_) => {}
            Expr::Add(v) | Expr::Mul(v) => v.iter().for_each(|e| e.root_orders(out)),
            Expr::Sub(a, b) => {
                a.root_orders(out);
                b.root_orders(out);
            }
            Expr::Scale(s, a) => {
                s.root_orders(out);
                a.root_orders(out);
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::V(_, a) | Expr::Lower(_, a) | Expr::Conj(a) => a.root_orders(out),
        }
    }

    /// Weight of the expression, given the weights of referenced forms.
    pub fn weight(&self, lookup: &dyn Fn(&str) -> Option<HalfWeight>) -> Result<HalfWeight> {
        let mismatch = |m: String| CatalogError::Weight { context: "expression".into(), message: m };
        Ok(match self {
            Expr::Ctor(c) => match c {
                Ctor::E(k) | Ctor::F(k, _) | Ctor::G(k, _) | Ctor::G2(k, _, _) => HalfWeight::integral(*k),
                Ctor::C(_) => HalfWeight::integral(2),
                Ctor::Theta(_) => HalfWeight::from_doubled(1),
                Ctor::Alpha23 | Ctor::Bqf(..) => HalfWeight::integral(1),
            },
            Expr::Ref(n) => lookup(n).ok_or_else(|| CatalogError::UnknownForm(n.clone()))?,
            Expr::Add(v) => {
                let ws = v.iter().map(|e| e.weight(lookup)).collect::<Result<Vec<_>>>()?;
                if ws.iter().any(|w| *w != ws[0]) {
                    let s: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                    return Err(mismatch(format!("sum of weights {}", s.join(", "))));
                }
                ws[0]
            }
            Expr::Sub(a, b) => {
                let (wa, wb) = (a.weight(lookup)?, b.weight(lookup)?);
                if wa != wb {
                    return Err(mismatch(format!("difference of weights {wa} and {wb}")));
                }
                wa
            }
            Expr::Mul(v) => {
                let d: u32 = v.iter().map(|e| e.weight(lookup).map(|w| w.doubled())).sum::<Result<u32>>()?;
                HalfWeight::from_doubled(d)
            }
            Expr::Pow(a, n) => HalfWeight::from_doubled(a.weight(lookup)?.doubled() * n),
            Expr::Scale(_, a) | Expr::Neg(a) | Expr::V(_, a) | Expr::Lower(_, a) | Expr::Conj(a) => a.weight(lookup)?,
        })
    }
}

/// Conductor `L` of a field holding roots of every given order; sign characters need none.
pub fn conductor_for(orders: &[u64]) -> u32 {
    use num_integer::Integer;
    let l = orders.iter().fold(1u64, |acc, &o| acc.lcm(&if o == 2 { 1 } else { o }));
    l as u32
}

fn tokenize(src: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in src.chars() {
        match c {
            '[' => {
                depth += 1;
                cur.push(c);
            }
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(CatalogError::parse(src, "unbalanced ']'"));
                }
                cur.push(c);
            }
            '(' | ')' if depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(c.to_string());
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(CatalogError::parse(src, "unbalanced '['"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<String>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, m: &str) -> CatalogError {
        CatalogError::parse(format!("{:?}", self.src), format!("{m} at token {}", self.pos))
    }

    fn next(&mut self) -> Result<String> {
        let t = self.tokens.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        Ok(t)
    }

    fn at_end_of_args(&self) -> bool {
        matches!(self.tokens.get(self.pos).map(String::as_str), None | Some(")"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let t = self.next()?;
        if t == "(" {
            let e = self.op_body()?;
            if self.next()? != ")" {
                return Err(self.err("expected ')'"));
            }
            return Ok(e);
        }
        if t == ")" {
            return Err(self.err("unexpected ')'"));
        }
        if OPS.contains(&t.as_str()) {
            return Err(self.err(&format!("operator {t:?} needs parentheses here")));
        }
        atom(&t).map_err(|e| match e {
            CatalogError::Parse { message, .. } => self.err(&message),
            other => other,
        })
    }

    fn int(&mut self) -> Result<i64> {
        let t = self.next()?;
        t.parse().map_err(|_| self.err(&format!("expected an integer, got {t:?}")))
    }

    fn op_body(&mut self) -> Result<Expr> {
        let op = self.next()?;
        Ok(match op.as_str() {
            "add" | "mul" => {
                let mut args = vec![self.expr()?, self.expr()?];
                while !self.at_end_of_args() {
                    args.push(self.expr()?);
                }
                if op == "add" {
                    Expr::Add(args)
                } else {
                    Expr::Mul(args)
                }
            }
            "sub" => Expr::Sub(Box::new(self.expr()?), Box::new(self.expr()?)),
            "pow" => {
                let a = self.expr()?;
                let n = self.int()?;
                if n < 0 {
                    return Err(self.err("negative exponent"));
                }
                Expr::Pow(Box::new(a), n as u32)
            }
            "scale" => {
                let s = self.next()?;
                let scalar = if let Some(inner) = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
                    Infix::parse(inner)?
                } else {
                    Infix::Num(parse_rational(&s).map_err(|_| self.err(&format!("bad scalar {s:?}")))?)
                };
                Expr::Scale(scalar, Box::new(self.expr()?))
            }
            "neg" => Expr::Neg(Box::new(self.expr()?)),
            "conj" => Expr::Conj(Box::new(self.expr()?)),
            "v" | "lower" => {
                let h = self.int()?;
                if h < 1 {
                    return Err(self.err("operator index must be positive"));
                }
                let a = Box::new(self.expr()?);
                if op == "v" {
                    Expr::V(h as usize, a)
                } else {
                    Expr::Lower(h as usize, a)
                }
            }
            other => return Err(self.err(&format!("unknown operator {other:?}"))),
        })
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn bracket_args<'a>(t: &'a str, prefix: &str) -> Option<&'a str> {
    t.strip_prefix(prefix)?.strip_prefix('[')?.strip_suffix(']')
}

/// Parse a constructor call or a form reference.
pub fn atom(t: &str) -> Result<Expr> {
    let bad = |m: String| CatalogError::parse(t, m);
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad(format!("bad integer {s:?}")));
    if let Some(k) = t.strip_prefix('E').filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())) {
        return Ok(Expr::Ctor(Ctor::E(num(k)?)));
    }
    if let Some(n) = t.strip_prefix('C').filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())) {
        let n = num(n)?;
        if n < 2 {
            return Err(bad("C_N needs N >= 2".into()));
        }
        return Ok(Expr::Ctor(Ctor::C(n)));
    }
    if t == "theta" {
        return Ok(Expr::Ctor(Ctor::Theta(1)));
    }
    if let Some(h) = t.strip_prefix("theta").filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())) {
        let h = num(h)?;
        if h == 0 {
            return Err(bad("theta index must be positive".into()));
        }
        return Ok(Expr::Ctor(Ctor::Theta(h as usize)));
    }
    if t == "alpha23" {
        return Ok(Expr::Ctor(Ctor::Alpha23));
    }
    if let Some(args) = bracket_args(t, "bqf") {
        let v: Vec<i64> = args
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| bad(format!("bad coefficient {s:?}"))))
            .collect::<Result<_>>()?;
        if v.len() != 3 {
            return Err(bad("bqf takes three coefficients".into()));
        }
        return Ok(Expr::Ctor(Ctor::Bqf(v[0], v[1], v[2])));
    }
    for prefix in ["f", "g"] {
        if let Some(args) = bracket_args(t, prefix) {
            let (k, chars) = args.split_once(';').ok_or_else(|| bad("expected [k;character]".into()))?;
            let k = num(k)?;
            let chars: Vec<DirichletCharacter> =
                split_top_level(chars, ',').into_iter().map(|c| parse_character(c.trim())).collect::<std::result::Result<_, _>>()?;
            return match (prefix, chars.as_slice()) {
                ("f", [c]) => Ok(Expr::Ctor(Ctor::F(k, c.clone()))),
                ("g", [c]) => Ok(Expr::Ctor(Ctor::G(k, c.clone()))),
                ("g", [c, d]) => Ok(Expr::Ctor(Ctor::G2(k, c.clone(), d.clone()))),
                _ => Err(bad("wrong number of characters".into())),
            };
        }
    }
    let ident = t.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ident {
        return Err(bad("not a constructor or form name".into()));
    }
    Ok(Expr::Ref(t.to_string()))
}

/// Whether the root of unity `root` lies in the field of conductor `l`.
pub fn field_contains(l: u32, root: RootOfUnity) -> bool {
    let o = root.order();
    let l = l as u64;
    l % o == 0 || (l % 2 == 1 && (2 * l) % o == 0)
}
