//! Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{QVec, Q};

/// Dense row-major rational matrix.
pub type QMatrix = Vec<Vec<Q>>;

/// Outcome of [`solve_linear_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(QVec),
    /// Consistent but with a positive-dimensional solution set.
    Underdetermined {
        particular: QVec,
        nullity: usize,
    },
    Inconsistent,
}

impl LinearSolution {
    pub fn unique(self) -> Option<QVec> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Reduces `m` in place to reduced row echelon form over its first `ncols`
/// columns and returns the pivot columns. Columns past `ncols` are carried
/// along (augmented part).
pub fn rref_in_place(m: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Q::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut work = m.to_vec();
    rref_in_place(&mut work, ncols).len()
}

/// Basis of `{x : m x = 0}` in canonical (RREF-derived) form: each basis
/// vector has a 1 in one free column and 0 in the other free columns.
pub fn null_space(m: &[Vec<Q>], ncols: usize) -> Vec<QVec> {
    let mut work = m.to_vec();
    let pivots = rref_in_place(&mut work, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[r][f].clone();
            }
            QVec(v)
        })
        .collect()
}

/// Solves `a x = b` exactly.
pub fn solve_linear_system(a: &[Vec<Q>], b: &QVec) -> Result<LinearSolution> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.len(),
            b.len()
        )));
    }
    let ncols = a.first().map_or(0, Vec::len);
    if let Some(r) = a.iter().position(|row| row.len() != ncols) {
        return Err(Error::DimensionMismatch(format!(
            "row {r} has {} entries, expected {ncols}",
            a[r].len()
        )));
    }
    if ncols == 0 {
        return Err(Error::DimensionMismatch("matrix has no columns".into()));
    }
    let mut aug: QMatrix = a
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut aug, ncols);
    // A zero row with a nonzero right-hand side means no solution.
    if aug[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut x = vec![Q::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    let nullity = ncols - pivots.len();
    Ok(if nullity == 0 {
        LinearSolution::Unique(QVec(x))
    } else {
        LinearSolution::Underdetermined {
            particular: QVec(x),
            nullity,
        }
    })
}
