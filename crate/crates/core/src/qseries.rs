//! Dense truncated q-expansions over a cyclotomic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{CycloNum, FieldCtx, Rational};
use crate::error::{Error, Result};

/// A weight `kappa` in `(1/2) Z_{>=0}`, stored as `2 * kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfWeight(u32);

impl HalfWeight {
    pub fn from_doubled(doubled: u32) -> Self {
        HalfWeight(doubled)
    }

    pub fn integral(k: u32) -> Self {
        HalfWeight(2 * k)
    }

    pub fn doubled(self) -> u32 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// `Some(k)` for integral weights.
    pub fn as_integer(self) -> Option<u32> {
        self.is_integral().then_some(self.0 / 2)
    }
}

impl Add for HalfWeight {
    type Output = HalfWeight;
    fn add(self, rhs: HalfWeight) -> HalfWeight {
        HalfWeight(self.0 + rhs.0)
    }
}

impl fmt::Display for HalfWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VanishingOrder {
    At(usize),
    ZeroToPrecision,
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::At(i) => write!(f, "{i}"),
            VanishingOrder::ZeroToPrecision => f.write_str("all-zero-to-precision"),
        }
    }
}

/// `c_0 + c_1 q + ... + c_{P-1} q^{P-1} + O(q^P)`.
#[derive(Clone)]
pub struct QSeries {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<CycloNum>,
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor() == other.ctx.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for QSeries {}

/// Products with at least this many output coefficients are computed in parallel.
const PAR_THRESHOLD: usize = 48;

impl QSeries {
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, coeffs: Vec<CycloNum>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("series precision must be positive".into()));
        }
        for c in &coeffs {
            c.same_ctx(&CycloNum::zero(ctx))?;
        }
        Ok(QSeries { ctx: ctx.clone(), coeffs })
    }

    pub fn from_integers(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty(), "series precision must be positive");
        QSeries { ctx: ctx.clone(), coeffs: coeffs.iter().map(|&c| CycloNum::from_int(ctx, c)).collect() }
    }

    pub fn from_bigints(ctx: &Arc<FieldCtx>, coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "series precision must be positive");
        QSeries { ctx: ctx.clone(), coeffs: coeffs.into_iter().map(|c| CycloNum::from_bigint(ctx, c)).collect() }
    }

    pub fn from_fn(ctx: &Arc<FieldCtx>, prec: usize, f: impl Fn(usize) -> CycloNum) -> Self {
        assert!(prec > 0, "series precision must be positive");
        QSeries { ctx: ctx.clone(), coeffs: (0..prec).map(f).collect() }
    }

    pub fn zero(ctx: &Arc<FieldCtx>, prec: usize) -> Self {
        Self::from_fn(ctx, prec, |_| CycloNum::zero(ctx))
    }

    pub fn one(ctx: &Arc<FieldCtx>, prec: usize) -> Self {
        Self::constant(ctx, CycloNum::one(ctx), prec)
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: CycloNum, prec: usize) -> Self {
        let mut s = Self::zero(ctx, prec);
        s.coeffs[0] = c;
        s
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &CycloNum {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn truncate(&self, prec: usize) -> QSeries {
        assert!(prec > 0 && prec <= self.prec(), "cannot truncate to {prec} from {}", self.prec());
        QSeries { ctx: self.ctx.clone(), coeffs: self.coeffs[..prec].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloNum::is_zero)
    }

    fn same_ctx(&self, other: &QSeries) -> Result<()> {
        if self.ctx.conductor() == other.ctx.conductor() {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx.conductor(), other.ctx.conductor()))
        }
    }

    pub fn checked_add(&self, other: &QSeries) -> Result<QSeries> {
        self.same_ctx(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &QSeries) -> Result<QSeries> {
        self.same_ctx(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &QSeries) -> Result<QSeries> {
        self.same_ctx(other)?;
        Ok(self.cauchy(other))
    }

    fn zip_with(&self, other: &QSeries, f: impl Fn(&CycloNum, &CycloNum) -> CycloNum) -> QSeries {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        QSeries { ctx: self.ctx.clone(), coeffs }
    }

    fn cauchy(&self, other: &QSeries) -> QSeries {
        let p = self.prec().min(other.prec());
        let a: Vec<(usize, &CycloNum)> = self.coeffs[..p].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let b = &other.coeffs[..p];
        let term = |n: usize| {
            let mut acc = CycloNum::zero(&self.ctx);
            for &(i, x) in a.iter().take_while(|(i, _)| *i <= n) {
                let y = &b[n - i];
                if !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        };
        let coeffs = if p >= PAR_THRESHOLD {
            (0..p).into_par_iter().map(term).collect()
        } else {
            (0..p).map(term).collect()
        };
        QSeries { ctx: self.ctx.clone(), coeffs }
    }

    pub fn scale(&self, c: &CycloNum) -> Result<QSeries> {
        c.same_ctx(&self.coeffs[0])?;
        Ok(QSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() })
    }

    pub fn scale_rational(&self, r: &Rational) -> QSeries {
        QSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|x| x.scale_rational(r)).collect() }
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut acc = QSeries::one(&self.ctx, self.prec());
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.cauchy(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.cauchy(&sq);
            }
        }
        acc
    }

    /// `f^{<h>}`: the substitution `q -> q^h`, with precision `h (P - 1) + 1`.
    pub fn v_operator(&self, h: usize) -> QSeries {
        assert!(h >= 1, "V operator needs h >= 1");
        let prec = h * (self.prec() - 1) + 1;
        let mut out = QSeries::zero(&self.ctx, prec);
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[h * n] = c.clone();
        }
        out
    }

    /// `f_{<h>} = (f - f^{<h>}) / a` for `f = 1 + a q + O(q^2)`.
    pub fn lowered(&self, h: usize) -> Result<QSeries> {
        let bad = || Error::BadLeadingShape {
            constant: self.coeffs[0].to_string(),
            linear: self.coeffs.get(1).map(|c| c.to_string()).unwrap_or_else(|| "?".into()),
        };
        if self.prec() < 2 || !self.coeffs[0].is_one() || self.coeffs[1].is_zero() {
            return Err(bad());
        }
        let inv_a = self.coeffs[1].inv()?;
        let v = self.v_operator(h);
        Ok(self.zip_with(&v, |x, y| &(x - y) * &inv_a))
    }

    /// Coefficientwise complex conjugation.
    pub fn conj_series(&self) -> QSeries {
        QSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(CycloNum::conj).collect() }
    }

    pub fn vanishing_order(&self) -> VanishingOrder {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => VanishingOrder::At(i),
            None => VanishingOrder::ZeroToPrecision,
        }
    }
}

macro_rules! series_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, checked_add);
series_binop!(Sub, sub, checked_sub);
series_binop!(Mul, mul, checked_mul);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

/// Canonical rendering, e.g. `1 + 240*q + 2160*q^2 + O(q^4)`.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let neg = c.term_count() == 1 && s.starts_with('-');
            if neg {
                s.remove(0);
            }
            let body = if i == 0 {
                if c.term_count() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            } else {
                let mono = if i == 1 { "q".to_string() } else { format!("q^{i}") };
                match (c.term_count() > 1, s.as_str()) {
                    (true, _) => format!("({s})*{mono}"),
                    (false, "1") => mono,
                    (false, _) => format!("{s}*{mono}"),
                }
            };
            match (first, neg) {
                (true, false) => f.write_str(&body)?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[L={}]({self})", self.ctx.conductor())
    }
}
