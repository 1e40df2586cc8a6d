//! Hilbert series `Dim(R) = sum dim R_k t^k` of weighted graded rings.
//!
//! Exponents are kept in the doubled grading so half-integral weights stay
//! integral: a generator of weight `kappa` contributes `1 - t^{2 kappa}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::qseries::HalfWeight;

/// `numerator(t) / prod_i (1 - t^{w_i})`, exponents doubled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    den: Vec<u32>,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Expected value of a Hilbert coefficient at one doubled weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Dim(i64),
    /// Outside the ring's weight lattice: the coefficient must vanish.
    Zero,
    /// Not covered by the comparison.
    Skip,
}

/// One disagreement between an expansion and expected dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub weight: HalfWeight,
    pub series: i64,
    pub expected: i64,
}

impl HilbertSeries {
    /// Builds a series from a numerator in doubled exponents and doubled denominator weights.
    pub fn new(numerator: Vec<i64>, den_doubled: Vec<u32>) -> Result<Self> {
        if numerator.is_empty() || den_doubled.contains(&0) {
            return Err(Error::InvalidArgument("empty numerator or zero denominator weight".into()));
        }
        let mut den = den_doubled;
        den.sort_unstable();
        Ok(HilbertSeries { numerator: trim(numerator), den })
    }

    /// Same as [`HilbertSeries::new`] with integral weights (`t` tracks weight).
    pub fn integral(numerator: &[i64], den: &[u32]) -> Result<Self> {
        let mut num2 = vec![0i64; 2 * numerator.len().max(1) - 1];
        for (i, &c) in numerator.iter().enumerate() {
            num2[2 * i] = c;
        }
        Self::new(num2, den.iter().map(|w| 2 * w).collect())
    }

    /// `1 / prod (1 - t^{w_i})`, the series of a free weighted polynomial ring.
    pub fn free(weights: &[HalfWeight]) -> Self {
        Self::new(vec![1], weights.iter().map(|w| w.doubled()).collect()).expect("positive weights")
    }

    /// Multiplies the numerator by `1 + t^n`: adjoining `Y` of weight `n`
    /// modulo a relation monic of degree two in `Y`.
    pub fn apply_lemma4(&self, n: HalfWeight) -> Self {
        let mut f = vec![0i64; n.doubled() as usize + 1];
        f[0] = 1;
        f[n.doubled() as usize] += 1;
        HilbertSeries { numerator: trim(poly_mul(&self.numerator, &f)), den: self.den.clone() }
    }

    /// `(1 + (n-1) t) / (1 - t)^2 = sum (nk + 1) t^k`.
    pub fn lemma5(n: u32) -> Self {
        Self::integral(&[1, n as i64 - 1], &[1, 1]).expect("valid")
    }

    /// Fits a numerator so the series matches `seq` (indexed by doubled weight)
    /// over the given denominator. Fails unless the fitted numerator has
    /// stabilized well before the end of the data.
    pub fn fit(seq: &[i64], den: &[HalfWeight]) -> Result<Self> {
        let den: Vec<u32> = den.iter().map(|w| w.doubled()).collect();
        let mut num = seq.to_vec();
        for &w in &den {
            let w = w as usize;
            for i in (w..num.len()).rev() {
                num[i] -= num[i - w];
            }
        }
        let slack: usize = den.iter().map(|&w| w as usize).sum::<usize>() + 1;
        let last = num.iter().rposition(|&c| c != 0).unwrap_or(0);
        if last + slack >= num.len() {
            return Err(Error::InvalidArgument(format!(
                "sequence of length {} does not determine a numerator over {:?}",
                num.len(),
                den
            )));
        }
        num.truncate(last + 1);
        Self::new(num, den)
    }

    /// Numerator coefficients, doubled exponents.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    /// Denominator weights, doubled.
    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    /// Expansion coefficients at doubled exponents `0..=max_doubled`.
    pub fn expand_doubled(&self, max_doubled: usize) -> Vec<i64> {
        let mut out = vec![0i64; max_doubled + 1];
        for (i, &c) in self.numerator.iter().enumerate().take(max_doubled + 1) {
            out[i] = c;
        }
        for &w in &self.den {
            let w = w as usize;
            for i in w..=max_doubled {
                out[i] += out[i - w];
            }
        }
        out
    }

    /// Expansion coefficients at integral weights `0..=horizon`.
    pub fn expand(&self, horizon: usize) -> Vec<i64> {
        self.expand_doubled(2 * horizon).into_iter().step_by(2).collect()
    }

    pub fn is_nonnegative(&self, max_doubled: usize) -> bool {
        self.expand_doubled(max_doubled).iter().all(|&c| c >= 0)
    }

    /// Compares the expansion with expected values at every doubled weight up to `max_doubled`.
    pub fn compare(&self, max_doubled: usize, expected: impl Fn(HalfWeight) -> Expected) -> Vec<Mismatch> {
        self.expand_doubled(max_doubled)
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| {
                let weight = HalfWeight::from_doubled(i as u32);
                let want = match expected(weight) {
                    Expected::Dim(d) => d,
                    Expected::Zero => 0,
                    Expected::Skip => return None,
                };
                (c != want).then_some(Mismatch { weight, series: c, expected: want })
            })
            .collect()
    }
}

fn render_power(doubled: usize) -> String {
    match doubled {
        2 => "t".to_string(),
        d if d % 2 == 0 => format!("t^{}", d / 2),
        d => format!("t^({d}/2)"),
    }
}

/// Renders as `(1 + t^2) / ((1-t)(1-t))`.
impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        for (i, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, _) => mag.to_string(),
                (_, 1) => render_power(i),
                _ => format!("{mag}*{}", render_power(i)),
            };
            if num.is_empty() {
                num = if c < 0 { format!("-{body}") } else { body };
            } else {
                num.push_str(if c < 0 { " - " } else { " + " });
                num.push_str(&body);
            }
        }
        if num.is_empty() {
            num.push('0');
        }
        if self.den.is_empty() {
            return f.write_str(&num);
        }
        let den: String = self.den.iter().map(|&w| format!("(1-{})", render_power(w as usize))).collect();
        write!(f, "({num}) / ({den})")
    }
}
