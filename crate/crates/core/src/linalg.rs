//! Exact linear algebra over `Q(zeta_L)`: reduced row echelon forms, ranks
//! and nullspaces. Pivots are always the first nonzero entry found scanning
//! rows top-down, so results are deterministic.

use std::sync::Arc;

use rayon::prelude::*;

use crate::arith::{CycloNum, FieldCtx};
use crate::error::Result;

pub type Matrix = Vec<Vec<CycloNum>>;

/// Reduced row echelon form of a matrix; `rows` holds only the nonzero rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Matrix,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

const PAR_ROWS: usize = 32;

pub fn rref(mut m: Matrix, ncols: usize) -> Result<Echelon> {
    let mut pivots = vec![];
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(i) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, i);
        let inv = m[r][col].inv()?;
        let pivot_row: Vec<CycloNum> = m[r].iter().map(|x| if x.is_zero() { x.clone() } else { x * &inv }).collect();
        let eliminate = |(j, row): (usize, &mut Vec<CycloNum>)| {
            if j == r || row[col].is_zero() {
                return;
            }
            let f = row[col].clone();
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&f * &pivot_row[c]);
                }
            }
        };
        if m.len() >= PAR_ROWS {
            m.par_iter_mut().enumerate().for_each(eliminate);
        } else {
            m.iter_mut().enumerate().for_each(eliminate);
        }
        m[r] = pivot_row;
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    Ok(Echelon { rows: m, pivots, ncols })
}

pub fn rank(m: &Matrix, ncols: usize) -> Result<usize> {
    Ok(rref(m.clone(), ncols)?.rank())
}

/// Basis of `{ v : M v = 0 }`.
pub fn nullspace(ctx: &Arc<FieldCtx>, m: &Matrix, ncols: usize) -> Result<Matrix> {
    let e = rref(m.clone(), ncols)?;
    let mut basis = vec![];
    for f in (0..ncols).filter(|c| !e.pivots.contains(c)) {
        let mut v = vec![CycloNum::zero(ctx); ncols];
        v[f] = CycloNum::one(ctx);
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            v[p] = -&row[f];
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn transpose(ctx: &Arc<FieldCtx>, m: &Matrix, ncols: usize) -> Matrix {
    (0..ncols)
        .map(|c| m.iter().map(|row| row.get(c).cloned().unwrap_or_else(|| CycloNum::zero(ctx))).collect())
        .collect()
}

/// Basis of `{ v : v^T M = 0 }`, i.e. linear dependencies among the rows.
pub fn left_nullspace(ctx: &Arc<FieldCtx>, m: &Matrix, ncols: usize) -> Result<Matrix> {
    nullspace(ctx, &transpose(ctx, m, ncols), m.len())
}

/// `M v` for a column vector `v`.
pub fn mat_vec(ctx: &Arc<FieldCtx>, m: &Matrix, v: &[CycloNum]) -> Vec<CycloNum> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(CycloNum::zero(ctx), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a * b
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(ctx: &Arc<FieldCtx>, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| CycloNum::from_int(ctx, x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let k = FieldCtx::new(1);
        let m = mat(&k, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m, 3).unwrap(), 2);
        let ns = nullspace(&k, &m, 3).unwrap();
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&k, &m, &ns[0]).iter().all(CycloNum::is_zero));
        let ln = left_nullspace(&k, &m, 3).unwrap();
        assert_eq!(ln.len(), 1);
        let t = transpose(&k, &m, 3);
        assert!(mat_vec(&k, &t, &ln[0]).iter().all(CycloNum::is_zero));
    }

    #[test]
    fn rank_over_gaussian_rationals() {
        let k = FieldCtx::new(4);
        let i = CycloNum::root_of_unity(&k, 1, 4).unwrap();
        let one = CycloNum::one(&k);
        // rows (1, i) and (i, -1) are dependent over Q(i)
        let m = vec![vec![one.clone(), i.clone()], vec![i.clone(), -&one]];
        assert_eq!(rank(&m, 2).unwrap(), 1);
        let m2 = vec![vec![one.clone(), i.clone()], vec![i.clone(), one.clone()]];
        assert_eq!(rank(&m2, 2).unwrap(), 2);
    }

    #[test]
    fn empty_and_zero() {
        let k = FieldCtx::new(1);
        assert_eq!(rank(&vec![], 3).unwrap(), 0);
        assert_eq!(rank(&mat(&k, &[&[0, 0]]), 2).unwrap(), 0);
        assert_eq!(nullspace(&k, &vec![], 2).unwrap().len(), 2);
    }
}
