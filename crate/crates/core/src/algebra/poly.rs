use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Field, Scalar};

/// Exponent vector of a monomial, ordered graded-lexicographically with
/// x0 > x1 > … > xn.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub(crate) fn checked_mul(&self, rhs: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&rhs.0).map(|(a, b)| a.checked_add(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Total degree of a polynomial; the zero polynomial has degree −∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegativeInfinity,
    Finite(u64),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegativeInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial in `nvars` variables over an exact field, kept in
/// canonical form: terms sorted by descending graded-lex order, no zero
/// coefficients, no repeated monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: Vec::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Self {
        Self::from_terms(field, nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// `c * x_index^exp`.
    pub fn monomial(field: Field, nvars: usize, index: usize, exp: u32, c: Scalar) -> Self {
        Self::from_terms(field, nvars, vec![(Monomial::var(nvars, index, exp), c)])
    }

    pub fn var(field: Field, nvars: usize, index: usize) -> Self {
        Self::monomial(field, nvars, index, 1, field.one())
    }

    /// Builds a polynomial from arbitrary terms, combining repeats and
    /// dropping zeros.
    ///
    /// Panics if a term has the wrong arity or a coefficient from another field.
    pub fn from_terms(field: Field, nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity mismatch");
            assert_eq!(c.field(), field, "coefficient field mismatch");
            accumulate(&mut acc, m, c);
        }
        Self::from_map(field, nvars, acc)
    }

    fn from_map(field: Field, nvars: usize, acc: BTreeMap<Monomial, Scalar>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { field, nvars, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.first() {
            None => Degree::NegativeInfinity,
            Some((m, _)) => Degree::Finite(m.degree()),
        }
    }

    /// Total degree and whether all terms share it. The zero polynomial
    /// counts as homogeneous of every degree.
    pub fn degree_info(&self) -> (Degree, bool) {
        let degree = self.degree();
        let homogeneous = match degree {
            Degree::NegativeInfinity => true,
            Degree::Finite(d) => self.terms.iter().all(|(m, _)| m.degree() == d),
        };
        (degree, homogeneous)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_info().1
    }

    /// True if the polynomial is zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: u64) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == d)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| c)
    }

    fn check_compatible(&self, rhs: &Polynomial) -> Result<(), AlgebraError> {
        if self.field != rhs.field {
            return Err(AlgebraError::FieldMismatch { left: self.field, right: rhs.field });
        }
        if self.nvars != rhs.nvars {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: rhs.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_compatible(rhs)?;
        Ok(self.merge(rhs, false))
    }

    pub fn try_sub(&self, rhs: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_compatible(rhs)?;
        Ok(self.merge(rhs, true))
    }

    pub fn try_mul(&self, rhs: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_compatible(rhs)?;
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.checked_mul(mb).ok_or(AlgebraError::ExponentOverflow)?;
                accumulate(&mut acc, m, ca.mul(cb));
            }
        }
        Ok(Self::from_map(self.field, self.nvars, acc))
    }

    pub fn try_scalar_mul(&self, c: &Scalar) -> Result<Polynomial, AlgebraError> {
        if c.field() != self.field {
            return Err(AlgebraError::FieldMismatch { left: self.field, right: c.field() });
        }
        Ok(self.scale(c))
    }

    pub(crate) fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn try_pow(&self, exp: u32) -> Result<Polynomial, AlgebraError> {
        let mut acc = Polynomial::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn merge(&self, rhs: &Polynomial, negate_rhs: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = rhs.terms.iter().peekable();
        let fix = |c: &Scalar| if negate_rhs { c.neg() } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), fix(c)));
                }
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push((mb.clone(), fix(cb)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = if negate_rhs { ca.sub(cb) } else { ca.add(cb) };
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        Polynomial { field: self.field, nvars: self.nvars, terms: out }
    }

    /// Rebuilds the canonical form from the stored terms; a no-op for any
    /// value produced by this module.
    pub fn canonicalize(&self) -> Polynomial {
        Self::from_terms(self.field, self.nvars, self.terms.clone())
    }
}

fn accumulate(acc: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    match acc.get_mut(&m) {
        Some(existing) => *existing = existing.add(&c),
        None => {
            acc.insert(m, c);
        }
    }
}

// Operator impls panic on field or arity mismatch; use the `try_*` methods
// when operands come from untrusted input.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.prints_negative();
            let magnitude = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(Field::Rational, 3, i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(vec![0, 2, 0]);
        let b = Monomial::from_exponents(vec![1, 0, 0]);
        let c = Monomial::from_exponents(vec![1, 1, 0]);
        let d = Monomial::from_exponents(vec![0, 1, 1]);
        assert!(a > b);
        assert!(c > a);
        assert!(c > d);
        assert!(a > d);
    }

    #[test]
    fn square_of_square() {
        let p = x(0).try_pow(2).unwrap();
        assert_eq!((&p * &p).to_string(), "x0^4");
    }

    #[test]
    fn cancellation_gives_zero() {
        let z = &x(0) - &x(0);
        assert!(z.is_zero());
        assert_eq!(z.degree_info(), (Degree::NegativeInfinity, true));
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn degree_info_examples() {
        let f = &x(0).try_pow(4).unwrap() + &x(1).try_pow(4).unwrap();
        assert_eq!(f.degree_info(), (Degree::Finite(4), true));
        let g = &x(0).try_pow(2).unwrap() + &x(1);
        assert_eq!(g.degree_info(), (Degree::Finite(2), false));
    }

    #[test]
    fn zero_is_additive_identity() {
        let f = &x(0).try_pow(4).unwrap() + &x(2);
        assert_eq!(&f + &Polynomial::zero(Field::Rational, 3), f);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = Polynomial::var(Field::Rational, 2, 0);
        let b = Polynomial::var(Field::GaussianRational, 2, 0);
        let c = Polynomial::var(Field::Rational, 3, 0);
        assert!(matches!(a.try_add(&b), Err(AlgebraError::FieldMismatch { .. })));
        assert!(matches!(a.try_mul(&c), Err(AlgebraError::ArityMismatch { .. })));
        assert!(a.try_scalar_mul(&Field::GaussianRational.one()).is_err());
    }

    #[test]
    fn constant_term_lookup() {
        let p = &x(0) + &Polynomial::constant(Field::Rational, 3, Field::Rational.from_int(3));
        assert_eq!(p.constant_term(), Some(&Field::Rational.from_int(3)));
        assert_eq!(x(1).constant_term(), None);
    }
}
