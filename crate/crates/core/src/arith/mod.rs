//! Exact scalars: rationals and elements of cyclotomic fields.

mod cyclo;
mod poly;

pub use cyclo::{cyclotomic_polynomial, CycloNum, FieldCtx};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `a` or `a/b` (optionally signed) into a normalized rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational literal: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Renders a rational as `a` or `a/b`.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The root of unity `exp(2 pi i * num / den)`, the symbol written `1^{num/den}`.
///
/// Always reduced: `0 <= num < den` and `gcd(num, den) = 1`, so `den` is the
/// exact multiplicative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity with zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        if n == 0 {
            RootOfUnity { num: 0, den: 1 }
        } else {
            RootOfUnity { num: n / g, den: den / g }
        }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.den.lcm(&other.den);
        let n = self.num * (l / self.den) + other.num * (l / other.den);
        RootOfUnity::new((n % l) as i64, l)
    }

    pub fn pow(&self, e: u64) -> Self {
        RootOfUnity::new(((self.num as u128 * e as u128) % self.den as u128) as i64, self.den)
    }

    pub fn conj(&self) -> Self {
        RootOfUnity::new(-(self.num as i64), self.den)
    }

    /// `Some(+1)` / `Some(-1)` for real roots, `None` otherwise.
    pub fn as_sign(&self) -> Option<i8> {
        match self.den {
            1 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({}/{})", self.num, self.den)
    }
}

pub(crate) fn bigint_abs_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.abs().gcd(&b.abs())
}
