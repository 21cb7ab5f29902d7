use std::collections::HashMap;

use crate::algebra::Polynomial;

use super::MatrixFactorization;

/// True when `b` is `a` with its generators of `F⁰` and `F¹` permuted
/// (within equal degrees): same `f`, same degree multisets, and both matrices
/// equal after the induced reordering.
pub fn presentation_equivalent(a: &MatrixFactorization, b: &MatrixFactorization) -> bool {
    if a == b {
        return true;
    }
    if a.f() != b.f() || a.f0_degrees() != b.f0_degrees() || a.f1_degrees() != b.f1_degrees() {
        return false;
    }
    let n = a.rank();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(a, b, 0, &mut sigma, &mut used)
}

fn sorted_column(m: &crate::graded::HomogeneousMatrix, c: usize) -> Vec<&Polynomial> {
    let mut v: Vec<&Polynomial> = (0..m.rows()).map(|r| m.get(r, c)).collect();
    v.sort_by_key(|p| p.to_string());
    v
}

fn sorted_row(m: &crate::graded::HomogeneousMatrix, r: usize) -> Vec<&Polynomial> {
    let mut v: Vec<&Polynomial> = (0..m.cols()).map(|c| m.get(r, c)).collect();
    v.sort_by_key(|p| p.to_string());
    v
}

/// Backtracks over the `F⁰` permutation `sigma`, pruning by column/row
/// contents; once `sigma` is complete, checks that a matching `F¹`
/// permutation exists.
fn search(
    a: &MatrixFactorization,
    b: &MatrixFactorization,
    k: usize,
    sigma: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = sigma.len();
    if k == n {
        return f1_permutation_exists(a, b, sigma);
    }
    let degs = a.f0_degrees().as_slice();
    for cand in 0..n {
        if used[cand] || degs[cand] != degs[k] {
            continue;
        }
        if sorted_column(a.s0(), k) != sorted_column(b.s0(), cand) || sorted_row(a.s1(), k) != sorted_row(b.s1(), cand)
        {
            continue;
        }
        sigma[k] = cand;
        used[cand] = true;
        if search(a, b, k + 1, sigma, used) {
            return true;
        }
        used[cand] = false;
    }
    sigma[k] = usize::MAX;
    false
}

/// Given the `F⁰` matching, `F¹` generator `r` of `a` can go to `r'` of `b`
/// iff degrees agree and row `r` of `s⁰` and column `r` of `s¹` agree after
/// applying `sigma`. Generators with identical signatures are
/// interchangeable, so a greedy matching suffices.
fn f1_permutation_exists(a: &MatrixFactorization, b: &MatrixFactorization, sigma: &[usize]) -> bool {
    let n = sigma.len();
    let signature = |mf: &MatrixFactorization, r: usize, perm: Option<&[usize]>| -> (i64, Vec<Polynomial>) {
        let idx = |c: usize| perm.map_or(c, |p| p[c]);
        let mut v: Vec<Polynomial> = (0..n).map(|c| mf.s0().get(r, idx(c)).clone()).collect();
        v.extend((0..n).map(|c| mf.s1().get(idx(c), r).clone()));
        (mf.f1_degrees().as_slice()[r], v)
    };
    let mut pool: HashMap<(i64, Vec<Polynomial>), usize> = HashMap::new();
    for r in 0..n {
        *pool.entry(signature(b, r, Some(sigma))).or_insert(0) += 1;
    }
    for r in 0..n {
        match pool.get_mut(&signature(a, r, None)) {
            Some(count) if *count > 0 => *count -= 1,
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field};
    use crate::mf::{fermat, MfCandidate};

    #[test]
    fn swapped_generators_are_equivalent() {
        let f = parse_poly("x0^2 + x1^2", Field::Rational, 2).unwrap();
        let p = |s: &str| parse_poly(s, Field::Rational, 2).unwrap();
        let a = MatrixFactorization::validate(&MfCandidate {
            f: f.clone(),
            f0_degrees: vec![1, 1],
            f1_degrees: vec![0, 0],
            s0: vec![vec![p("x0"), p("-x1")], vec![p("x1"), p("x0")]],
            s1: vec![vec![p("x0"), p("x1")], vec![p("-x1"), p("x0")]],
        })
        .unwrap();
        // Swap both F⁰ and F¹ generators.
        let b = MatrixFactorization::validate(&MfCandidate {
            f,
            f0_degrees: vec![1, 1],
            f1_degrees: vec![0, 0],
            s0: vec![vec![p("x0"), p("x1")], vec![p("-x1"), p("x0")]],
            s1: vec![vec![p("x0"), p("-x1")], vec![p("x1"), p("x0")]],
        })
        .unwrap();
        assert_ne!(a, b);
        assert!(presentation_equivalent(&a, &b));
        assert!(!presentation_equivalent(&a, &a.shift().shift()));
    }

    #[test]
    fn sign_change_is_not_a_permutation() {
        let f = parse_poly("x0^2 + x1^2", Field::Rational, 2).unwrap();
        let p = |s: &str| parse_poly(s, Field::Rational, 2).unwrap();
        let a = MatrixFactorization::validate(&MfCandidate {
            f: f.clone(),
            f0_degrees: vec![1, 1],
            f1_degrees: vec![0, 0],
            s0: vec![vec![p("x0"), p("-x1")], vec![p("x1"), p("x0")]],
            s1: vec![vec![p("x0"), p("x1")], vec![p("-x1"), p("x0")]],
        })
        .unwrap();
        let c = MatrixFactorization::validate(&MfCandidate {
            f,
            f0_degrees: vec![1, 1],
            f1_degrees: vec![0, 0],
            s0: vec![vec![p("-x0"), p("-x1")], vec![p("-x1"), p("x0")]],
            s1: vec![vec![p("-x0"), p("-x1")], vec![p("-x1"), p("x0")]],
        })
        .unwrap();
        assert!(!presentation_equivalent(&a, &c));
        let g = fermat(Field::GaussianRational, 2, 2, false).unwrap();
        assert!(presentation_equivalent(&g, &g.clone()));
    }
}
