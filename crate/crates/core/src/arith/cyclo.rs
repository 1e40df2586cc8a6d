use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{div_exact_monic, inverse_mod};
use super::{bigint_abs_gcd, render_rational, Rational, RootOfUnity};
use crate::error::{Error, Result};

/// Coefficients (ascending) of the `n`-th cyclotomic polynomial, computed as
/// `x^n - 1` divided by `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = div_exact_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

/// The cyclotomic field `Q(zeta_L)` with its power basis `1, zeta, ..., zeta^(phi(L)-1)`.
#[derive(Debug)]
pub struct FieldCtx {
    conductor: u32,
    minpoly: Vec<i64>,
    /// `x^e mod Phi_L` for `e < 2 * degree - 1`.
    reductions: Vec<Vec<i64>>,
    /// `zeta^e` in the power basis for `e < L`.
    powers: Vec<Vec<i64>>,
}

impl FieldCtx {
    pub fn new(conductor: u32) -> Arc<FieldCtx> {
        assert!(conductor >= 1, "conductor must be positive");
        let minpoly = cyclotomic_polynomial(conductor);
        let d = minpoly.len() - 1;
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        let steps = (2 * d - 1).max(conductor as usize);
        let mut table = Vec::with_capacity(steps);
        for _ in 0..steps {
            table.push(cur.clone());
            // multiply by x and reduce with x^d = -(m_0 + ... + m_{d-1} x^{d-1})
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1] - top * minpoly[i];
            }
            cur[0] = -top * minpoly[0];
        }
        let reductions = table[..2 * d - 1].to_vec();
        let powers = table[..conductor as usize].to_vec();
        Arc::new(FieldCtx { conductor, minpoly, reductions, powers })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Ascending integer coefficients of `Phi_L`.
    pub fn minpoly(&self) -> &[i64] {
        &self.minpoly
    }

    /// Whether a root of unity of this order lies in the field. Besides the
    /// divisors of `L`, odd `L` also contains the `2L`-th roots.
    pub fn contains_roots_of_order(&self, order: u64) -> bool {
        let l = self.conductor as u64;
        l % order == 0 || (l % 2 == 1 && (2 * l) % order == 0)
    }
}

/// An element of `Q(zeta_L)`: `(num_0 + num_1 zeta + ...) / den` with
/// `den > 0` and `gcd(den, num_i) = 1`, so equality is coordinatewise.
#[derive(Clone)]
pub struct CycloNum {
    ctx: Arc<FieldCtx>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn from_parts(ctx: Arc<FieldCtx>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.degree());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            if num.iter().all(Zero::is_zero) {
                den = BigInt::one();
            } else {
                let mut g = den.clone();
                for c in num.iter().filter(|c| !c.is_zero()) {
                    g = bigint_abs_gcd(&g, c);
                    if g.is_one() {
                        break;
                    }
                }
                if !g.is_one() {
                    for c in num.iter_mut() {
                        *c = &*c / &g;
                    }
                    den /= g;
                }
            }
        }
        CycloNum { ctx, num, den }
    }

    fn from_small(ctx: &Arc<FieldCtx>, coords: &[i64]) -> Self {
        CycloNum {
            ctx: ctx.clone(),
            num: coords.iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        CycloNum { ctx: ctx.clone(), num: vec![BigInt::zero(); ctx.degree()], den: BigInt::one() }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> Self {
        Self::from_bigint(ctx, BigInt::from(n))
    }

    pub fn from_bigint(ctx: &Arc<FieldCtx>, n: BigInt) -> Self {
        let mut num = vec![BigInt::zero(); ctx.degree()];
        num[0] = n;
        CycloNum { ctx: ctx.clone(), num, den: BigInt::one() }
    }

    pub fn from_rational(ctx: &Arc<FieldCtx>, r: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); ctx.degree()];
        num[0] = r.numer().clone();
        CycloNum { ctx: ctx.clone(), num, den: r.denom().clone() }
    }

    /// Builds an element from power-basis coordinates.
    pub fn from_coords(ctx: &Arc<FieldCtx>, coords: &[Rational]) -> Result<Self> {
        if coords.len() != ctx.degree() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates for Q(zeta_{}), got {}",
                ctx.degree(),
                ctx.conductor,
                coords.len()
            )));
        }
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(ctx.clone(), num, den))
    }

    /// `1^{a/b} = exp(2 pi i a / b)`.
    pub fn root_of_unity(ctx: &Arc<FieldCtx>, a: i64, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidArgument("root of unity of order 0".into()));
        }
        let l = ctx.conductor as u64;
        if l % b != 0 {
            return Err(Error::ConductorMismatch { order: b, conductor: ctx.conductor });
        }
        let e = (a.rem_euclid(b as i64) as u64) * (l / b);
        Ok(Self::from_small(ctx, &ctx.powers[(e % l) as usize]))
    }

    /// Embeds a root of unity; odd conductors also admit the `2L`-th roots.
    pub fn from_root(ctx: &Arc<FieldCtx>, root: RootOfUnity) -> Result<Self> {
        let l = ctx.conductor as u64;
        let order = root.order();
        if l % order == 0 {
            return Self::root_of_unity(ctx, root.num() as i64, order);
        }
        if !ctx.contains_roots_of_order(order) {
            return Err(Error::ConductorMismatch { order, conductor: ctx.conductor });
        }
        // zeta_{2L} = -zeta_L^{(L+1)/2} for odd L
        let t = root.num() * (2 * l / order);
        let e = (t * ((l + 1) / 2)) % l;
        let z = Self::from_small(ctx, &ctx.powers[e as usize]);
        Ok(if t % 2 == 1 { -z } else { z })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn conductor(&self) -> u32 {
        self.ctx.conductor
    }

    /// Power-basis coordinates.
    pub fn coords(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` if the element is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// `Some(n)` if the element is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.den.is_one() && self.num[1..].iter().all(Zero::is_zero) {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    pub fn same_ctx(&self, other: &CycloNum) -> Result<()> {
        if self.ctx.conductor == other.ctx.conductor {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx.conductor, other.ctx.conductor))
        }
    }

    pub fn checked_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.same_ctx(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.same_ctx(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.same_ctx(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &CycloNum) -> Result<CycloNum> {
        self.same_ctx(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &CycloNum, negate: bool) -> CycloNum {
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            return Self::from_parts(self.ctx.clone(), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let x = a * &other.den;
                let y = b * &self.den;
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        Self::from_parts(self.ctx.clone(), num, &self.den * &other.den)
    }

    fn mul_unchecked(&self, other: &CycloNum) -> CycloNum {
        let d = self.ctx.degree();
        if d == 1 {
            let num = vec![&self.num[0] * &other.num[0]];
            return Self::from_parts(self.ctx.clone(), num, &self.den * &other.den);
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let high = prod.split_off(d);
        for (k, c) in high.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &r) in self.ctx.reductions[d + k].iter().enumerate() {
                if r != 0 {
                    prod[t] += &c * r;
                }
            }
        }
        Self::from_parts(self.ctx.clone(), prod, &self.den * &other.den)
    }

    /// Multiplies by a rational integer.
    pub fn scale_int(&self, n: &BigInt) -> CycloNum {
        let num = self.num.iter().map(|c| c * n).collect();
        Self::from_parts(self.ctx.clone(), num, self.den.clone())
    }

    pub fn scale_rational(&self, r: &Rational) -> CycloNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.ctx.clone(), num, &self.den * r.denom())
    }

    /// Multiplicative inverse via extended Euclid against `Phi_L`.
    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.ctx.degree();
        if d == 1 {
            return Ok(Self::from_parts(self.ctx.clone(), vec![self.den.clone()], self.num[0].clone()));
        }
        let a: Vec<Rational> = self.num.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let m: Vec<Rational> = self.ctx.minpoly.iter().map(|&c| Rational::from_integer(c.into())).collect();
        let mut s = inverse_mod(&a, &m).ok_or(Error::DivisionByZero)?;
        s.resize(d, Rational::zero());
        let inv_num = Self::from_coords(&self.ctx, &s)?;
        Ok(inv_num.scale_int(&self.den))
    }

    pub fn pow(&self, e: i64) -> Result<CycloNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycloNum::one(&self.ctx);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }

    /// Complex conjugation, the automorphism `zeta -> zeta^{L-1}`.
    pub fn conj(&self) -> CycloNum {
        let d = self.ctx.degree();
        let l = self.ctx.conductor as usize;
        let mut num = vec![BigInt::zero(); d];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &p) in self.ctx.powers[(l - i % l) % l].iter().enumerate() {
                if p != 0 {
                    num[t] += c * p;
                }
            }
        }
        Self::from_parts(self.ctx.clone(), num, self.den.clone())
    }

    /// Coordinates `(x, y)` with `self = x + y * zeta_n`, for `n` in `{3, 4, 6}`.
    pub fn re_im(&self, n: u32) -> Result<(Rational, Rational)> {
        if ![3, 4, 6].contains(&n) {
            return Err(Error::UnsupportedReIm(n));
        }
        let z = Self::from_root(&self.ctx, RootOfUnity::new(1, n as u64))?;
        let zc = z.coords();
        let xc = self.coords();
        let j = (1..zc.len()).find(|&j| !zc[j].is_zero()).expect("zeta_n is irrational for n >= 3");
        let y = &xc[j] / &zc[j];
        let x = &xc[0] - &y * &zc[0];
        let back = CycloNum::from_rational(&self.ctx, &x) + z.scale_rational(&y);
        if &back != self {
            return Err(Error::NotInSpan(self.to_string(), n));
        }
        Ok((x, y))
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl std::hash::Hash for CycloNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

fn assert_same(a: &CycloNum, b: &CycloNum) {
    if let Err(e) = a.same_ctx(b) {
        panic!("{e}");
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                assert_same(self, rhs);
                $body(self, rhs)
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &CycloNum, b: &CycloNum| a.add_unchecked(b, false));
binop!(Sub, sub, |a: &CycloNum, b: &CycloNum| a.add_unchecked(b, true));
binop!(Mul, mul, |a: &CycloNum, b: &CycloNum| a.mul_unchecked(b));

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = &*self - rhs;
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { ctx: self.ctx.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl CycloNum {
    /// Number of nonzero power-basis terms in the canonical rendering.
    pub fn term_count(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Canonical rendering: ascending powers of `z<L>`, e.g. `1/2 - 3*z12^2`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let mag = render_rational(&r.abs());
            let body = match (i, mag.as_str()) {
                (0, _) => mag.clone(),
                (1, "1") => format!("z{}", self.ctx.conductor),
                (1, _) => format!("{mag}*z{}", self.ctx.conductor),
                (_, "1") => format!("z{}^{i}", self.ctx.conductor),
                _ => format!("{mag}*z{}^{i}", self.ctx.conductor),
            };
            match (first, neg) {
                (true, false) => f.write_str(&body)?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[L={}]({})", self.ctx.conductor, self)
    }
}
