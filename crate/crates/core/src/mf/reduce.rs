//! Splitting off trivial summands.
//!
//! A unit entry `u` at `(r, c)` of `s⁰` (or `s¹`) is cleared from its row and
//! column by a degree-zero change of basis on both modules. The inverse
//! change of basis applied to the partner matrix keeps both composites equal
//! to `f·id`, which forces the partner's row `c` and column `r` to vanish
//! except for `f/u`. Deleting that row and column pair removes one rank-one
//! trivial summand.

use crate::algebra::{Polynomial, Scalar};
use crate::graded::HomogeneousMatrix;

use super::MatrixFactorization;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Map {
    S0,
    S1,
}

/// First unit entry, scanning `s⁰` then `s¹` in row-major order.
fn find_pivot(mf: &MatrixFactorization) -> Option<(Map, usize, usize, Scalar)> {
    for (map, m) in [(Map::S0, mf.s0()), (Map::S1, mf.s1())] {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if let Some(u) = m.get(r, c).constant_term() {
                    return Some((map, r, c, u.clone()));
                }
            }
        }
    }
    None
}

/// Clears row `r` and column `c` of `a` around the unit `a[r][c]`, applying
/// the inverse operations to `b`, then deletes the split-off summand.
fn split(a: &mut HomogeneousMatrix, b: &mut HomogeneousMatrix, r: usize, c: usize, u: &Scalar) {
    let u_inv = u.inverse().expect("pivot is a unit");
    let (rows, cols) = (a.rows(), a.cols());

    // Column operations on a: col_j -= (a[r][j]/u) col_c; on b: row_c += Σ (a[r][j]/u) row_j.
    let factors: Vec<(usize, Polynomial)> =
        (0..cols).filter(|&j| j != c && !a.get(r, j).is_zero()).map(|j| (j, a.get(r, j).scale(&u_inv))).collect();
    for (j, h) in &factors {
        for i in 0..rows {
            let delta = a.get(i, c) * h;
            if !delta.is_zero() {
                let e = a.get_mut(i, *j);
                *e = &*e - &delta;
            }
        }
        for k in 0..b.cols() {
            let delta = h * b.get(*j, k);
            if !delta.is_zero() {
                let e = b.get_mut(c, k);
                *e = &*e + &delta;
            }
        }
    }

    // Row operations on a: row_i -= (a[i][c]/u) row_r; on b: col_r += Σ (a[i][c]/u) col_i.
    let factors: Vec<(usize, Polynomial)> =
        (0..rows).filter(|&i| i != r && !a.get(i, c).is_zero()).map(|i| (i, a.get(i, c).scale(&u_inv))).collect();
    for (i, h) in &factors {
        for j in 0..cols {
            let delta = h * a.get(r, j);
            if !delta.is_zero() {
                let e = a.get_mut(*i, j);
                *e = &*e - &delta;
            }
        }
        for k in 0..b.rows() {
            let delta = b.get(k, *i) * h;
            if !delta.is_zero() {
                let e = b.get_mut(k, r);
                *e = &*e + &delta;
            }
        }
    }

    *a = a.remove(r, c);
    *b = b.remove(c, r);
}

pub(super) fn reduce(mf: &MatrixFactorization) -> MatrixFactorization {
    let mut s0 = mf.s0().clone();
    let mut s1 = mf.s1().clone();
    let mut current = mf.clone();
    while let Some((map, r, c, u)) = find_pivot(&current) {
        match map {
            Map::S0 => split(&mut s0, &mut s1, r, c, &u),
            Map::S1 => split(&mut s1, &mut s0, r, c, &u),
        }
        current = MatrixFactorization { s0: s0.clone(), s1: s1.clone(), ..current };
    }
    debug_assert!(current.is_valid());
    current
}
