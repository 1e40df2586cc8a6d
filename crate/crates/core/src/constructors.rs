//! Bernoulli numbers and the basic series: `E_k`, `C_N`, `f_{k;chi}`,
//! `g_{k;chi}`, `g_{k;chi,psi}` and theta series of binary quadratic forms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::{binomial, Roots};
use num_traits::{One, Zero};

use crate::arith::{CycloNum, FieldCtx, Rational};
use crate::characters::{divisor_sum, sigma, DirichletCharacter};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

type GenKey = (u32, u64, Vec<u64>, u32);

/// Append-only tables of `B_k` and `B_{k,chi}`.
#[derive(Default)]
pub struct BernoulliCache {
    ordinary: Mutex<Vec<Rational>>,
    generalized: Mutex<HashMap<GenKey, CycloNum>>,
}

impl BernoulliCache {
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::default)
    }

    /// `B_k` from `sum_{j=0}^{m} C(m+1, j) B_j = 0`, `B_0 = 1` (so `B_1 = -1/2`).
    pub fn bernoulli(&self, k: u32) -> Rational {
        let mut table = self.ordinary.lock().unwrap();
        if table.is_empty() {
            table.push(Rational::one());
        }
        while table.len() <= k as usize {
            let m = table.len() as u32;
            let s = table
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (j, b)| acc + b * Rational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(j))));
            table.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        table[k as usize].clone()
    }

    /// `B_{k,chi} = N^{k-1} sum_{a=1}^{N} chi(a) B_k(a/N)`.
    pub fn gen_bernoulli(&self, ctx: &Arc<FieldCtx>, k: u32, chi: &DirichletCharacter) -> Result<CycloNum> {
        let key = (k, chi.modulus(), chi.exponents().to_vec(), ctx.conductor());
        if let Some(v) = self.generalized.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let n = chi.modulus();
        let mut acc = CycloNum::zero(ctx);
        for a in 1..=n {
            let c = chi.eval(ctx, a as i64)?;
            if c.is_zero() {
                continue;
            }
            let x = Rational::new(BigInt::from(a), BigInt::from(n));
            acc += &c.scale_rational(&self.bernoulli_poly(k, &x));
        }
        let v = acc.scale_int(&BigInt::from(n).pow(k - 1));
        self.generalized.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// `B_k(x) = sum_j C(k, j) B_j x^{k-j}`.
    pub fn bernoulli_poly(&self, k: u32, x: &Rational) -> Rational {
        (0..=k).fold(Rational::zero(), |acc, j| {
            let c = Rational::from_integer(binomial(BigInt::from(k), BigInt::from(j)));
            acc + c * self.bernoulli(j) * num_traits::pow(x.clone(), (k - j) as usize)
        })
    }
}

pub fn bernoulli(k: u32) -> Rational {
    BernoulliCache::global().bernoulli(k)
}

pub fn gen_bernoulli(ctx: &Arc<FieldCtx>, k: u32, chi: &DirichletCharacter) -> Result<CycloNum> {
    BernoulliCache::global().gen_bernoulli(ctx, k, chi)
}

/// `E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n` for even `k >= 2`.
pub fn eisenstein_e(ctx: &Arc<FieldCtx>, k: u32, prec: usize) -> Result<QSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::BadWeight(k as i64, "E_k needs even k >= 2"));
    }
    let c = -Rational::from_integer(BigInt::from(2 * k)) / bernoulli(k);
    Ok(QSeries::from_fn(ctx, prec, |n| {
        if n == 0 {
            CycloNum::one(ctx)
        } else {
            CycloNum::from_rational(ctx, &(&c * Rational::from_integer(sigma(k - 1, n as u64))))
        }
    }))
}

/// `C_N = (N E_2^{<N>} - E_2) / (N - 1)`.
pub fn eisenstein_c(ctx: &Arc<FieldCtx>, n: u32, prec: usize) -> Result<QSeries> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("C_N needs N >= 2, got {n}")));
    }
    let e2 = eisenstein_e(ctx, 2, prec)?;
    let v = e2.v_operator(n as usize).truncate(prec);
    let nn = BigInt::from(n);
    let num = v.scale_rational(&Rational::from_integer(nn.clone())) - e2;
    Ok(num.scale_rational(&Rational::new(BigInt::one(), nn - 1)))
}

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    let conductor = chi.conductor();
    if conductor != chi.modulus() {
        return Err(Error::ImprimitiveCharacter { modulus: chi.modulus(), conductor });
    }
    Ok(())
}

fn require_parity(k: u32, sign: i8) -> Result<()> {
    let expected = if k % 2 == 0 { 1 } else { -1 };
    if sign != expected {
        return Err(Error::ParityViolation { k, chi_minus_one: sign, expected });
    }
    Ok(())
}

/// `f_{k;chi} = 1 - (2k / B_{k,chi}) sum (sigma_{k-1} * chi)(n) q^n`.
pub fn eis_f(ctx: &Arc<FieldCtx>, k: u32, chi: &DirichletCharacter, prec: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(Error::BadWeight(0, "f_{k;chi} needs k >= 1"));
    }
    require_primitive(chi)?;
    require_parity(k, chi.parity())?;
    let b = gen_bernoulli(ctx, k, chi)?;
    let c = b.inv()?.scale_int(&BigInt::from(-2 * k as i64));
    let mut coeffs = vec![CycloNum::one(ctx)];
    for n in 1..prec as u64 {
        coeffs.push(&c * &divisor_sum(ctx, k - 1, Some(chi), None, n)?);
    }
    QSeries::from_coeffs(ctx, coeffs)
}

/// `g_{k;chi} = sum (sum_{d | n} chi(n/d) d^{k-1}) q^n` for `k >= 2`.
pub fn eis_g(ctx: &Arc<FieldCtx>, k: u32, chi: &DirichletCharacter, prec: usize) -> Result<QSeries> {
    if k < 2 {
        return Err(Error::BadWeight(k as i64, "g_{k;chi} needs k >= 2"));
    }
    require_primitive(chi)?;
    require_parity(k, chi.parity())?;
    let mut coeffs = vec![CycloNum::zero(ctx)];
    for n in 1..prec as u64 {
        coeffs.push(divisor_sum(ctx, k - 1, None, Some(chi), n)?);
    }
    QSeries::from_coeffs(ctx, coeffs)
}

/// `g_{k;chi,psi} = sum (sum_{d | n} chi(d) psi(n/d) d^{k-1}) q^n`.
pub fn eis_g2(
    ctx: &Arc<FieldCtx>,
    k: u32,
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
    prec: usize,
) -> Result<QSeries> {
    if k == 0 {
        return Err(Error::BadWeight(0, "g_{k;chi,psi} needs k >= 1"));
    }
    require_primitive(chi)?;
    require_primitive(psi)?;
    require_parity(k, chi.parity() * psi.parity())?;
    let mut coeffs = vec![CycloNum::zero(ctx)];
    for n in 1..prec as u64 {
        coeffs.push(divisor_sum(ctx, k - 1, Some(chi), Some(psi), n)?);
    }
    QSeries::from_coeffs(ctx, coeffs)
}

/// `theta = sum_{n in Z} q^{n^2}`.
pub fn theta(ctx: &Arc<FieldCtx>, prec: usize) -> QSeries {
    let mut c = vec![0i64; prec];
    let mut n = 0usize;
    while n * n < prec {
        c[n * n] += if n == 0 { 1 } else { 2 };
        n += 1;
    }
    QSeries::from_integers(ctx, &c)
}

/// Number of `(m, n)` with `a m^2 + b m n + c n^2 = j`, as a series in `q^j`.
///
/// From `4a Q = (2am + bn)^2 + D n^2` with `D = 4ac - b^2`, every solution of
/// `Q < P` has `n^2 < 4aP/D` and symmetrically `m^2 < 4cP/D`.
pub fn theta_bqf(ctx: &Arc<FieldCtx>, a: i64, b: i64, c: i64, prec: usize) -> Result<QSeries> {
    let d = 4 * a * c - b * b;
    if a <= 0 || d <= 0 {
        return Err(Error::NotPositiveDefinite(a, b, c));
    }
    let p = prec as i128;
    let nmax = ((4 * a as i128 * p) / d as i128).sqrt() as i64;
    let mmax = ((4 * c as i128 * p) / d as i128).sqrt() as i64;
    Ok(QSeries::from_integers(ctx, &lattice_counts(a, b, c, mmax, nmax, prec)))
}

fn lattice_counts(a: i64, b: i64, c: i64, mmax: i64, nmax: i64, prec: usize) -> Vec<i64> {
    let mut counts = vec![0i64; prec];
    for m in -mmax..=mmax {
        for n in -nmax..=nmax {
            let v = a * m * m + b * m * n + c * n * n;
            if (v as usize) < prec {
                counts[v as usize] += 1;
            }
        }
    }
    counts
}

/// `sum (q^{m^2+mn+6n^2} - q^{2m^2+mn+3n^2})`.
pub fn alpha23(ctx: &Arc<FieldCtx>, prec: usize) -> QSeries {
    let x = theta_bqf(ctx, 1, 1, 6, prec).expect("positive definite");
    let y = theta_bqf(ctx, 2, 1, 3, prec).expect("positive definite");
    x - y
}
