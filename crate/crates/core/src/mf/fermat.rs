use crate::algebra::{Field, Polynomial};

use super::{MatrixFactorization, MfError};

/// `(S(−m), S, x^m + i·y^m, x^m − i·y^m)`, a factorization of `x^{2m} + y^{2m}`
/// in variables `x = x_{first}` and `y = x_{first+1}`.
pub fn elementary_pair(field: Field, nvars: usize, first: usize, m: u32) -> Result<MatrixFactorization, MfError> {
    let i = field.sqrt_minus_one().ok_or(MfError::NoSquareRootOfMinusOne(field))?;
    if first + 1 >= nvars {
        return Err(MfError::Parameter(format!("variables x{first}, x{} exceed x{}", first + 1, nvars - 1)));
    }
    let x = Polynomial::monomial(field, nvars, first, m, field.one());
    let y = Polynomial::monomial(field, nvars, first + 1, m, i);
    let f = &(&x * &x) - &(&y * &y);
    MatrixFactorization::rank_one_from(f, &x + &y, &x - &y)
}

/// `(S(−m), S, x^m, x^m)`, a factorization of `x^{2m}` with `x = x_{index}`.
pub fn elementary_solo(field: Field, nvars: usize, index: usize, m: u32) -> Result<MatrixFactorization, MfError> {
    if index >= nvars {
        return Err(MfError::Parameter(format!("variable x{index} exceeds x{}", nvars - 1)));
    }
    let x = Polynomial::monomial(field, nvars, index, m, field.one());
    MatrixFactorization::rank_one_from(&x * &x, x.clone(), x)
}

/// Tensor product of `pairs` elementary pair factorizations (and one solo
/// factor in a fresh last variable when `solo` is set), factoring
/// `Σ x_k^{2m}` over `2·pairs (+1)` variables, normalized so the degrees of
/// `F¹` are all zero.
pub fn fermat(field: Field, pairs: u32, half_degree: u32, solo: bool) -> Result<MatrixFactorization, MfError> {
    if pairs == 0 {
        return Err(MfError::Parameter("pairs must be at least 1".into()));
    }
    if half_degree == 0 {
        return Err(MfError::Parameter("half_degree must be at least 1".into()));
    }
    let nvars = 2 * pairs as usize + usize::from(solo);
    let mut acc = elementary_pair(field, nvars, 0, half_degree)?;
    for k in 1..pairs as usize {
        acc = acc.tensor(&elementary_pair(field, nvars, 2 * k, half_degree)?, false)?;
    }
    if solo {
        acc = acc.tensor(&elementary_solo(field, nvars, nvars - 1, half_degree)?, false)?;
    }
    Ok(acc.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn single_pair_is_the_elementary_factor() {
        let g = fermat(Field::GaussianRational, 1, 2, false).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.f(), &parse_poly("x0^4 + x1^4", Field::GaussianRational, 2).unwrap());
        assert_eq!(g.s0().get(0, 0), &parse_poly("x0^2 + i*x1^2", Field::GaussianRational, 2).unwrap());
        assert_eq!(g.s1().get(0, 0), &parse_poly("x0^2 - i*x1^2", Field::GaussianRational, 2).unwrap());
    }

    #[test]
    fn two_pairs() {
        let g = fermat(Field::GaussianRational, 2, 2, false).unwrap();
        assert!(g.is_valid());
        assert!(g.is_reduced());
        assert_eq!(g.rank(), 2);
        assert_eq!(g.f(), &parse_poly("x0^4 + x1^4 + x2^4 + x3^4", Field::GaussianRational, 4).unwrap());
        let b = g.betti().unwrap();
        assert_eq!((b.get(0, 2), b.get(1, 0), b.total()), (2, 2, 4));
    }

    #[test]
    fn ranks_grow_by_doubling() {
        assert_eq!(fermat(Field::GaussianRational, 3, 2, false).unwrap().rank(), 4);
        let with_solo = fermat(Field::GaussianRational, 2, 1, true).unwrap();
        assert_eq!(with_solo.rank(), 4);
        assert!(with_solo.is_valid());
        assert_eq!(with_solo.nvars(), 5);
    }

    #[test]
    fn prime_fields() {
        let g = fermat(Field::prime(13).unwrap(), 2, 3, false).unwrap();
        assert!(g.is_valid());
        assert_eq!(
            fermat(Field::prime(7).unwrap(), 1, 2, false),
            Err(MfError::NoSquareRootOfMinusOne(Field::Prime(7)))
        );
        assert!(matches!(fermat(Field::Rational, 1, 2, false), Err(MfError::NoSquareRootOfMinusOne(_))));
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(fermat(Field::GaussianRational, 0, 2, false), Err(MfError::Parameter(_))));
        assert!(matches!(fermat(Field::GaussianRational, 1, 0, false), Err(MfError::Parameter(_))));
    }
}
