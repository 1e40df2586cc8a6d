//! Unit groups `(Z/N)^x`, Dirichlet characters and twisted divisor sums.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{CycloNum, FieldCtx, RootOfUnity};
use crate::error::{Error, Result};

/// `(Z/N)^x` as a product of cyclic groups with a discrete-log table.
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    dlog: Vec<Option<Vec<u64>>>,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mult_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * a % m;
        k += 1;
    }
    k
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// The residue mod `m1 * m2` congruent to `a` mod `m1` and `b` mod `m2`.
fn crt(a: u64, m1: u64, b: u64, m2: u64) -> u64 {
    (0..m2).map(|t| a + t * m1).find(|x| x % m2 == b % m2).expect("coprime moduli")
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Arc<UnitGroup> {
        assert!(modulus >= 1, "modulus must be positive");
        let mut generators = vec![];
        let mut orders = vec![];
        for (p, e) in factor(modulus) {
            let pe = p.pow(e);
            let rest = modulus / pe;
            let mut local: Vec<(u64, u64)> = vec![];
            if p == 2 {
                if e >= 2 {
                    local.push((pe - 1, 2));
                }
                if e >= 3 {
                    local.push((5, pe / 4));
                }
            } else {
                let phi = pe / p * (p - 1);
                let g = (2..pe).find(|&g| g % p != 0 && mult_order(g, pe) == phi).expect("primitive root");
                local.push((g, phi));
            }
            for (g, ord) in local {
                generators.push(crt(g, pe, 1, rest));
                orders.push(ord);
            }
        }
        let mut dlog = vec![None; modulus as usize];
        let total: u64 = orders.iter().product();
        let mut exps = vec![0u64; orders.len()];
        for _ in 0..total {
            let a = generators.iter().zip(&exps).fold(1 % modulus, |acc, (&g, &x)| acc * pow_mod(g, x, modulus) % modulus);
            assert!(dlog[a as usize].is_none(), "generators are not independent mod {modulus}");
            dlog[a as usize] = Some(exps.clone());
            for (x, &o) in exps.iter_mut().zip(&orders) {
                *x += 1;
                if *x < o {
                    break;
                }
                *x = 0;
            }
        }
        assert_eq!(total, euler_phi(modulus), "unit group order mismatch mod {modulus}");
        Arc::new(UnitGroup { modulus, generators, orders, dlog })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }

    pub fn is_unit(&self, n: i64) -> bool {
        self.dlog[self.reduce(n) as usize].is_some()
    }

    /// Exponents of `n` on the generators, `None` off units.
    pub fn dlog(&self, n: i64) -> Option<&[u64]> {
        self.dlog[self.reduce(n) as usize].as_deref()
    }

    /// The units in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(|&a| self.dlog[a as usize].is_some())
    }

    /// Multiplicative order of the unit `n`.
    pub fn element_order(&self, n: i64) -> Option<u64> {
        self.is_unit(n).then(|| mult_order(self.reduce(n), self.modulus))
    }
}

/// A homomorphism `(Z/N)^x -> C^x`, given by exponents on the group's generators:
/// `chi(g_i) = zeta_{o_i}^{e_i}`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.exps == other.exps
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Self {
        let group = UnitGroup::new(modulus);
        let exps = vec![0; group.orders.len()];
        DirichletCharacter { group, exps }
    }

    pub fn from_exponents(group: &Arc<UnitGroup>, exps: Vec<u64>) -> Result<Self> {
        if exps.len() != group.orders.len() || exps.iter().zip(&group.orders).any(|(e, o)| e >= o) {
            return Err(Error::InvalidArgument(format!(
                "exponents {exps:?} do not fit generator orders {:?}",
                group.orders
            )));
        }
        Ok(DirichletCharacter { group: group.clone(), exps })
    }

    /// The unique character taking the given values; found by enumerating
    /// every character of the group.
    pub fn from_values(group: &Arc<UnitGroup>, assignments: &[(i64, RootOfUnity)]) -> Result<Self> {
        for &(a, v) in assignments {
            let ord = group.element_order(a).ok_or(Error::NotAUnit(a, group.modulus))?;
            if ord % v.order() != 0 {
                return Err(Error::InvalidOrder { value_order: v.order(), element_order: ord });
            }
        }
        let mut found = vec![];
        let mut exps = vec![0u64; group.orders.len()];
        for _ in 0..group.order() {
            let chi = DirichletCharacter { group: group.clone(), exps: exps.clone() };
            if assignments.iter().all(|&(a, v)| chi.value(a) == Some(v)) {
                found.push(chi);
            }
            for (x, &o) in exps.iter_mut().zip(&group.orders) {
                *x += 1;
                if *x < o {
                    break;
                }
                *x = 0;
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            0 => Err(Error::InvalidArgument("inconsistent character values".into())),
            n => Err(Error::Underdetermined(n)),
        }
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// `chi(n)` as a root of unity, `None` when `gcd(n, N) > 1`.
    pub fn value(&self, n: i64) -> Option<RootOfUnity> {
        let logs = self.group.dlog(n)?;
        Some(
            logs.iter()
                .zip(&self.exps)
                .zip(&self.group.orders)
                .fold(RootOfUnity::one(), |acc, ((&l, &e), &o)| {
                    acc.mul(&RootOfUnity::new(((l * e) % o) as i64, o))
                }),
        )
    }

    /// `chi(n)` in the given field (zero off units).
    pub fn eval(&self, ctx: &Arc<FieldCtx>, n: i64) -> Result<CycloNum> {
        match self.value(n) {
            Some(v) => CycloNum::from_root(ctx, v),
            None => Ok(CycloNum::zero(ctx)),
        }
    }

    /// Values at residues `0..N`.
    pub fn value_table(&self, ctx: &Arc<FieldCtx>) -> Result<Vec<CycloNum>> {
        (0..self.modulus() as i64).map(|a| self.eval(ctx, a)).collect()
    }

    /// Order of the character, i.e. the smallest `L` with all values in `mu_L`.
    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(&self.group.orders)
            .fold(1, |acc, (&e, &o)| acc.lcm(&(o / e.gcd(&o))))
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn pow(&self, k: i64) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &o)| (e as i64 * k).rem_euclid(o as i64) as u64)
            .collect();
        DirichletCharacter { group: self.group.clone(), exps }
    }

    pub fn conj(&self) -> Self {
        self.pow(-1)
    }

    /// The character `n -> chi(n)` viewed modulo a multiple `m` of `N`.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m % self.modulus() != 0 {
            return Err(Error::InvalidArgument(format!("cannot lift modulus {} to {m}", self.modulus())));
        }
        if m == self.modulus() {
            return Ok(self.clone());
        }
        let group = UnitGroup::new(m);
        let exps = group
            .generators
            .iter()
            .zip(&group.orders)
            .map(|(&g, &o)| {
                let v = self.value(g as i64).expect("unit mod m is a unit mod N");
                v.num() * (o / v.order())
            })
            .collect();
        Ok(DirichletCharacter { group, exps })
    }

    /// Pointwise product; characters of different moduli are lifted to the lcm.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.modulus().lcm(&other.modulus());
        let a = self.lift(m).expect("lcm is a multiple");
        let b = other.lift(m).expect("lcm is a multiple");
        let exps = a.exps.iter().zip(&b.exps).zip(&a.group.orders).map(|((x, y), o)| (x + y) % o).collect();
        DirichletCharacter { group: a.group, exps }
    }

    /// Product of two characters on the same group.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.modulus() != other.modulus() {
            return Err(Error::GroupMismatch(self.modulus(), other.modulus()));
        }
        Ok(self.mul(other))
    }

    /// `chi(-1)` as a sign.
    pub fn parity(&self) -> i8 {
        self.value(self.modulus() as i64 - 1).and_then(|v| v.as_sign()).expect("chi(-1) = +-1")
    }

    /// Smallest `d | N` such that `chi` is trivial on units congruent to 1 mod `d`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus();
        (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| {
                self.group
                    .units()
                    .filter(|a| a % d == 1 % d)
                    .all(|a| self.value(a as i64) == Some(RootOfUnity::one()))
            })
            .unwrap_or(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "char mod {} [", self.modulus())?;
        for (i, (&g, &e)) in self.group.generators.iter().zip(&self.exps).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let o = self.group.orders[i];
            write!(f, "{g} -> {}", RootOfUnity::new(e as i64, o))?;
        }
        f.write_str("]")
    }
}

/// Named characters: `(name, modulus, [(residue, num, den)])` with `chi(residue) = 1^{num/den}`.
const NAMED: &[(&str, u64, &[(i64, i64, u64)])] = &[
    ("rho3", 3, &[(-1, 1, 2)]),
    ("rho4", 4, &[(-1, 1, 2)]),
    ("chi5", 5, &[(2, 1, 4)]),
    ("chi7", 7, &[(3, 1, 6)]),
    ("rho8", 8, &[(5, 1, 2), (-1, 1, 2)]),
    ("chi9", 9, &[(2, 1, 6)]),
    ("chi11", 11, &[(2, 1, 10)]),
    ("chi13", 13, &[(2, 1, 12)]),
    ("chi16", 16, &[(-1, 1, 2), (5, 1, 4)]),
    ("chi17", 17, &[(3, 1, 16)]),
    ("chi19", 19, &[(2, 1, 18)]),
    ("chi23", 23, &[(5, 1, 22)]),
];

/// Real characters defined as powers of a named one.
const NAMED_POWERS: &[(&str, &str, i64)] = &[
    ("rho5", "chi5", 2),
    ("rho7", "chi7", 3),
    ("rho11", "chi11", 5),
    ("rho13", "chi13", 6),
    ("rho17", "chi17", 8),
    ("rho19", "chi19", 9),
    ("rho23", "chi23", 11),
];

pub fn named_character_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = NAMED.iter().map(|e| e.0).chain(NAMED_POWERS.iter().map(|e| e.0)).collect();
    v.sort_by_key(|s| (s[3..].parse::<u32>().unwrap_or(0), s.to_string()));
    v
}

/// Looks up a built-in character by name.
pub fn named_character(name: &str) -> Result<DirichletCharacter> {
    if let Some(&(_, m, vals)) = NAMED.iter().find(|e| e.0 == name) {
        let group = UnitGroup::new(m);
        let assignments: Vec<(i64, RootOfUnity)> =
            vals.iter().map(|&(a, n, d)| (a, RootOfUnity::new(n, d))).collect();
        return DirichletCharacter::from_values(&group, &assignments);
    }
    if let Some(&(_, base, k)) = NAMED_POWERS.iter().find(|e| e.0 == name) {
        return Ok(named_character(base)?.pow(k));
    }
    Err(Error::UnknownCharacter(name.to_string()))
}

/// Parses a character expression: a built-in name, `one<m>` (the indicator of
/// units mod `m`), `conj(x)`, `pow(x,k)` or `mul(x,y)`.
pub fn parse_character(src: &str) -> Result<DirichletCharacter> {
    let s = src.trim();
    let unknown = || Error::UnknownCharacter(src.to_string());
    if let Some(inner) = s.strip_suffix(')') {
        let (head, args) = inner.split_once('(').ok_or_else(unknown)?;
        let args = split_top_level(args);
        return match (head.trim(), args.as_slice()) {
            ("conj", [x]) => Ok(parse_character(x)?.conj()),
            ("pow", [x, k]) => {
                let k: i64 = k.trim().parse().map_err(|_| unknown())?;
                Ok(parse_character(x)?.pow(k))
            }
            ("mul", [x, y]) => Ok(parse_character(x)?.mul(&parse_character(y)?)),
            _ => Err(unknown()),
        };
    }
    if let Some(m) = s.strip_prefix("one") {
        let m: u64 = m.parse().map_err(|_| unknown())?;
        if m == 0 {
            return Err(unknown());
        }
        return Ok(DirichletCharacter::trivial(m));
    }
    named_character(s)
}

/// Splits on commas not nested in parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = vec![];
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `sum_{d | n} left(d) right(n/d) d^e`; a missing character is the constant 1.
pub fn divisor_sum(
    ctx: &Arc<FieldCtx>,
    e: u32,
    left: Option<&DirichletCharacter>,
    right: Option<&DirichletCharacter>,
    n: u64,
) -> Result<CycloNum> {
    assert!(n >= 1, "divisor sums start at n = 1");
    let mut acc = CycloNum::zero(ctx);
    for d in (1..=n).filter(|d| n % d == 0) {
        let mut term = CycloNum::from_bigint(ctx, BigInt::from(d).pow(e));
        if let Some(l) = left {
            term = &term * &l.eval(ctx, d as i64)?;
        }
        if let Some(r) = right {
            term = &term * &r.eval(ctx, (n / d) as i64)?;
        }
        if !term.is_zero() {
            acc += &term;
        }
    }
    Ok(acc)
}

/// `(sigma_k * rho)(n) = sum_{d | n} rho(d) d^k`.
pub fn twisted_sigma(ctx: &Arc<FieldCtx>, k: u32, rho: &DirichletCharacter, n: u64) -> Result<CycloNum> {
    divisor_sum(ctx, k, Some(rho), None, n)
}

/// Ordinary `sigma_k(n)`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n % d == 0).fold(BigInt::zero(), |acc, d| acc + BigInt::from(d).pow(k))
}
