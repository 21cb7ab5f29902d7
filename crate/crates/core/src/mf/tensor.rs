//! Tensor product of graded matrix factorizations.
//!
//! For `F` of `f` and `G` of `g` with `deg f = deg g = d`:
//!
//! ```text
//! T⁰ = F⁰⊗G⁰ ⊕ (F¹⊗G¹)(−d)        T¹ = F¹⊗G⁰ ⊕ F⁰⊗G¹
//!
//! s⁰_T = [ s⁰_F⊗1   −1⊗s¹_G ]      s¹_T = [ s¹_F⊗1    1⊗s¹_G ]
//!        [ 1⊗s⁰_G    s¹_F⊗1 ]             [ −1⊗s⁰_G   s⁰_F⊗1 ]
//! ```
//!
//! The off-diagonal blocks of both composites cancel, and the diagonal
//! blocks are `(f + g)·id`.

use crate::algebra::{AlgebraError, Polynomial};
use crate::graded::HomogeneousMatrix;
use crate::par::Execution;

use super::{MatrixFactorization, MfError};

/// Generator of a block: which side carries index `a` (F) and `b` (G).
#[derive(Clone, Copy)]
enum Side {
    Zero,
    One,
}

struct Block {
    f: Side,
    g: Side,
}

/// Kronecker block `A ⊗ 1` or `1 ⊗ B`, with optional sign.
#[derive(Clone, Copy)]
enum Term<'a> {
    Left(&'a HomogeneousMatrix, bool),
    Right(&'a HomogeneousMatrix, bool),
}

pub fn tensor_with(
    lhs: &MatrixFactorization,
    rhs: &MatrixFactorization,
    normalize: bool,
    exec: Execution,
) -> Result<MatrixFactorization, MfError> {
    if lhs.field() != rhs.field() {
        return Err(AlgebraError::FieldMismatch { left: lhs.field(), right: rhs.field() }.into());
    }
    if lhs.nvars() != rhs.nvars() {
        return Err(AlgebraError::ArityMismatch { left: lhs.nvars(), right: rhs.nvars() }.into());
    }
    if lhs.degree() != rhs.degree() {
        return Err(MfError::DegreeMismatch { left: lhs.degree(), right: rhs.degree() });
    }
    let sum = lhs.f() + rhs.f();
    if sum.is_zero() {
        return Err(MfError::ZeroSum);
    }
    let d = lhs.degree() as i64;
    let (field, nvars) = (lhs.field(), lhs.nvars());

    let dims = |side: Side, mf: &MatrixFactorization| -> Vec<i64> {
        match side {
            Side::Zero => mf.f0_degrees().as_slice().to_vec(),
            Side::One => mf.f1_degrees().as_slice().to_vec(),
        }
    };
    let block_degrees = |b: &Block, extra: i64| -> Vec<i64> {
        let fd = dims(b.f, lhs);
        let gd = dims(b.g, rhs);
        fd.iter().flat_map(|x| gd.iter().map(move |y| x + y + extra)).collect()
    };

    // Blocks of T⁰ and T¹, in order.
    let t0_blocks = [Block { f: Side::Zero, g: Side::Zero }, Block { f: Side::One, g: Side::One }];
    let t1_blocks = [Block { f: Side::One, g: Side::Zero }, Block { f: Side::Zero, g: Side::One }];
    let t0: Vec<i64> = [block_degrees(&t0_blocks[0], 0), block_degrees(&t0_blocks[1], d)].concat();
    let t1: Vec<i64> = [block_degrees(&t1_blocks[0], 0), block_degrees(&t1_blocks[1], 0)].concat();

    let (sf0, sf1, sg0, sg1) = (lhs.s0(), lhs.s1(), rhs.s0(), rhs.s1());
    let s0_terms =
        [[Term::Left(sf0, false), Term::Right(sg1, true)], [Term::Right(sg0, false), Term::Left(sf1, false)]];
    let s1_terms =
        [[Term::Left(sf1, false), Term::Right(sg1, false)], [Term::Right(sg0, true), Term::Left(sf0, false)]];

    let s0_grid = kron_grid(&s0_terms, lhs, rhs, exec);
    let s1_grid = kron_grid(&s1_terms, lhs, rhs, exec);

    let t1_shifted: Vec<i64> = t1.iter().map(|m| m + d).collect();
    let (s0, _, _) = HomogeneousMatrix::from_unsorted(field, nvars, &t0, &t1, s0_grid);
    let (s1, _, _) = HomogeneousMatrix::from_unsorted(field, nvars, &t1_shifted, &t0, s1_grid);

    let out = MatrixFactorization::from_parts(sum, s0, s1)?;
    Ok(if normalize { out.normalized() } else { out })
}

/// Dense grid for a 2x2 block matrix whose blocks are Kronecker terms.
/// Every block is `rank(F)·rank(G)` square; pairs `(a, b)` are indexed
/// `a * rank(G) + b`.
fn kron_grid(
    terms: &[[Term<'_>; 2]; 2],
    lhs: &MatrixFactorization,
    rhs: &MatrixFactorization,
    exec: Execution,
) -> Vec<Vec<Polynomial>> {
    let (field, nvars) = (lhs.field(), lhs.nvars());
    let ng = rhs.rank();
    let block = lhs.rank() * ng;

    exec.map_indexed(2 * block, |row| {
        let rb = usize::from(row >= block);
        let local_row = row - rb * block;
        let (ra, rg) = (local_row / ng, local_row % ng);
        (0..2 * block)
            .map(|col| {
                let cb = usize::from(col >= block);
                let local_col = col - cb * block;
                let (ca, cg) = (local_col / ng, local_col % ng);
                let entry = match terms[rb][cb] {
                    // A ⊗ 1: nonzero only when the G indices agree.
                    Term::Left(m, neg) if rg == cg => Some((m.get(ra, ca), neg)),
                    // 1 ⊗ B: nonzero only when the F indices agree.
                    Term::Right(m, neg) if ra == ca => Some((m.get(rg, cg), neg)),
                    _ => None,
                };
                match entry {
                    Some((p, true)) => -p,
                    Some((p, false)) => p.clone(),
                    None => Polynomial::zero(field, nvars),
                }
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field};
    use crate::mf::fermat::{elementary_pair, elementary_solo};

    fn qi(s: &str, n: usize) -> Polynomial {
        parse_poly(s, Field::GaussianRational, n).unwrap()
    }

    #[test]
    fn solo_with_pair() {
        let f = elementary_solo(Field::GaussianRational, 3, 0, 2).unwrap();
        let g = elementary_pair(Field::GaussianRational, 3, 1, 2).unwrap();
        let t = f.tensor(&g, false).unwrap();
        assert!(t.is_valid());
        assert_eq!(t.rank(), 2);
        assert_eq!(t.f(), &qi("x0^4 + x1^4 + x2^4", 3));
    }

    #[test]
    fn two_pairs_normalized_degrees() {
        let a = elementary_pair(Field::GaussianRational, 4, 0, 2).unwrap();
        let b = elementary_pair(Field::GaussianRational, 4, 2, 2).unwrap();
        let raw = a.tensor(&b, false).unwrap();
        assert_eq!(raw.f0_degrees().as_slice(), &[4, 4]);
        assert_eq!(raw.f1_degrees().as_slice(), &[2, 2]);
        let t = a.tensor(&b, true).unwrap();
        assert_eq!(t.f0_degrees().as_slice(), &[2, 2]);
        assert_eq!(t.f1_degrees().as_slice(), &[0, 0]);
        assert_eq!(t.f(), &qi("x0^4 + x1^4 + x2^4 + x3^4", 4));
    }

    #[test]
    fn iterated_ranks() {
        let n = 6;
        let mut acc = elementary_solo(Field::GaussianRational, n, 0, 1).unwrap();
        for t in 2..=n {
            let next = elementary_solo(Field::GaussianRational, n, t - 1, 1).unwrap();
            acc = acc.tensor(&next, false).unwrap();
            assert_eq!(acc.rank(), 1 << (t - 1));
        }
    }

    #[test]
    fn rejects_mismatches() {
        let a = elementary_pair(Field::GaussianRational, 4, 0, 2).unwrap();
        let b = elementary_pair(Field::GaussianRational, 4, 2, 1).unwrap();
        assert_eq!(a.tensor(&b, false), Err(MfError::DegreeMismatch { left: 4, right: 2 }));
        let neg = a.shift().shift().twist(-4);
        assert_eq!(neg, a);
        let f = qi("x0^2", 1);
        let minus = qi("-x0^2", 1);
        let p = MatrixFactorization::rank_one_from(f, qi("x0", 1), qi("x0", 1)).unwrap();
        let q = MatrixFactorization::rank_one_from(minus, qi("x0", 1), qi("-x0", 1)).unwrap();
        assert_eq!(p.tensor(&q, false), Err(MfError::ZeroSum));
    }
}
