//! Small dense linear algebra over a [`Scalar`]: reduced row echelon form,
//! rank, null spaces and linear solves. Matrices here are a handful of rows
//! wide, so row vectors of `Vec<S>` are enough.

use crate::scalar::{Scalar, Tolerance};
use crate::vector::Vector;

#[derive(Clone, Debug)]
pub struct Rref<S> {
    pub rows: Vec<Vec<S>>,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

/// Gauss–Jordan elimination with largest-magnitude pivoting.
///
/// The reduced form is unique, so the exact and float backends produce the
/// same pivot columns on well-conditioned input. Float entries within
/// `tol` of zero (relative to the largest entry) are treated as zero.
pub fn rref<S: Scalar>(mut m: Vec<Vec<S>>, cols: usize, tol: Tolerance) -> Rref<S> {
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x.to_f64().abs())
        .fold(0.0, f64::max);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let best = (row..m.len())
            .filter(|&r| !m[r][col].near_zero(scale, tol))
            .max_by(|&a, &b| {
                m[a][col]
                    .abs()
                    .partial_cmp(&m[b][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(best) = best else {
            for r in &mut m[row..] {
                r[col] = S::zero();
            }
            continue;
        };
        m.swap(row, best);
        let inv = S::one() / m[row][col].clone();
        for x in &mut m[row] {
            *x = x.clone() * inv.clone();
        }
        m[row][col] = S::one();
        for r in 0..m.len() {
            if r == row || m[r][col].is_exact_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            let pivot_row = m[row].clone();
            for (x, p) in m[r].iter_mut().zip(&pivot_row).take(cols) {
                *x = x.clone() - factor.clone() * p.clone();
            }
            m[r][col] = S::zero();
        }
        pivots.push(col);
        row += 1;
    }
    Rref { rows: m, pivots, cols }
}

pub fn rank<S: Scalar>(rows: &[Vector<S>], tol: Tolerance) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.dim();
    let m = rows.iter().map(|v| v.coords().to_vec()).collect();
    rref(m, cols, tol).pivots.len()
}

/// Basis of `{x : rows · x = 0}`, one vector per free column of the reduced
/// form (free coordinate set to 1). No normalization, so the basis stays
/// rational.
pub fn null_space<S: Scalar>(rows: &[Vector<S>], cols: usize, tol: Tolerance) -> Vec<Vector<S>> {
    let m = rows.iter().map(|v| v.coords().to_vec()).collect();
    let r = rref(m, cols, tol);
    let free = (0..cols).filter(|c| !r.pivots.contains(c));
    free.map(|f| {
        let mut v = vec![S::zero(); cols];
        v[f] = S::one();
        for (i, &p) in r.pivots.iter().enumerate() {
            v[p] = -r.rows[i][f].clone();
        }
        Vector::new(v)
    })
    .collect()
}

/// Solves `A x = b` for `A` given as rows. Returns `None` when the system is
/// inconsistent or has more than one solution.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S], tol: Tolerance) -> Option<Vec<S>> {
    let unknowns = a.first()?.len();
    let m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let r = rref(m, unknowns + 1, tol);
    if r.pivots.contains(&unknowns) || r.pivots.len() < unknowns {
        return None;
    }
    Some(r.rows[..unknowns].iter().map(|row| row[unknowns].clone()).collect())
}
