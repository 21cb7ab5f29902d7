//! Graded matrix factorizations `(F⁰, F¹, s⁰, s¹)` of a homogeneous `f`.
//!
//! `s⁰ : F⁰ → F¹` and `s¹ : F¹(−d) → F⁰` are homogeneous of degree zero with
//! `s¹s⁰ = f·id` and `s⁰s¹ = f·id`. Degree lists are kept sorted; any
//! reordering of generators is carried through both matrices.

mod betti;
mod equivalence;
mod fermat;
mod reduce;
mod tensor;

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Degree, Field, Polynomial};
use crate::graded::{DegreeMultiset, EntryDiagnostic, GradedError, HomogeneousMatrix};
use crate::par::Execution;

pub use betti::BettiTable;
pub use equivalence::presentation_equivalent;
pub use fermat::{elementary_pair, elementary_solo, fermat};
pub use tensor::tensor_with;

/// One reason a candidate tuple fails to be a graded matrix factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MfDiagnostic {
    ZeroPolynomial,
    NonHomogeneous {
        degree: Degree,
    },
    RankMismatch {
        rank0: usize,
        rank1: usize,
    },
    Structure {
        map: &'static str,
        message: String,
    },
    EntryDegree {
        map: &'static str,
        entry: EntryDiagnostic,
    },
    /// First entry where a composite differs from `f·δ`; `difference` is
    /// `composite[row][col] − f·δ(row, col)`.
    Composite {
        composite: &'static str,
        row: usize,
        col: usize,
        difference: Polynomial,
    },
}

impl fmt::Display for MfDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MfDiagnostic::ZeroPolynomial => f.write_str("f is zero"),
            MfDiagnostic::NonHomogeneous { degree } => match degree {
                Degree::Finite(d) => write!(f, "f is not homogeneous (top degree {d})"),
                Degree::NegativeInfinity => f.write_str("f is not homogeneous"),
            },
            MfDiagnostic::RankMismatch { rank0, rank1 } => {
                write!(f, "rank(F0) = {rank0} differs from rank(F1) = {rank1}")
            }
            MfDiagnostic::Structure { map, message } => write!(f, "{map}: {message}"),
            MfDiagnostic::EntryDegree { map, entry } => write!(f, "{map}: {entry}"),
            MfDiagnostic::Composite { composite, row, col, difference } => {
                write!(f, "{composite} differs from f*id at entry ({row}, {col}); difference {difference}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MfError {
    #[error("not a matrix factorization: {}", join_diagnostics(.0))]
    Invalid(Vec<MfDiagnostic>),
    #[error("factorization is not reduced (a matrix entry has a nonzero constant term)")]
    NotReduced,
    #[error("factorizations are of different polynomials")]
    DifferentPolynomials,
    #[error("degree mismatch: deg f = {left}, deg g = {right}")]
    DegreeMismatch { left: u64, right: u64 },
    #[error("f + g = 0; the tensor product would factor the zero polynomial")]
    ZeroSum,
    #[error("field {0} has no square root of -1")]
    NoSquareRootOfMinusOne(Field),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

fn join_diagnostics(d: &[MfDiagnostic]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// An unchecked tuple, e.g. as read from a file. Degree lists may be in any
/// order.
#[derive(Debug, Clone)]
pub struct MfCandidate {
    pub f: Polynomial,
    pub f0_degrees: Vec<i64>,
    pub f1_degrees: Vec<i64>,
    pub s0: Vec<Vec<Polynomial>>,
    pub s1: Vec<Vec<Polynomial>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFactorization {
    f: Polynomial,
    d: u64,
    s0: HomogeneousMatrix,
    s1: HomogeneousMatrix,
}

fn homogeneous_degree(f: &Polynomial) -> Result<u64, MfDiagnostic> {
    match f.degree_info() {
        (Degree::NegativeInfinity, _) => Err(MfDiagnostic::ZeroPolynomial),
        (degree, false) => Err(MfDiagnostic::NonHomogeneous { degree }),
        (Degree::Finite(0), true) => Err(MfDiagnostic::NonHomogeneous { degree: Degree::Finite(0) }),
        (Degree::Finite(d), true) => Ok(d),
    }
}

impl MatrixFactorization {
    /// Validates a candidate tuple and returns it with sorted degree lists.
    pub fn validate(candidate: &MfCandidate) -> Result<Self, MfError> {
        let f = &candidate.f;
        let d = homogeneous_degree(f).map_err(|e| MfError::Invalid(vec![e]))? as i64;
        let (r0, r1) = (candidate.f0_degrees.len(), candidate.f1_degrees.len());
        if r0 != r1 {
            return Err(MfError::Invalid(vec![MfDiagnostic::RankMismatch { rank0: r0, rank1: r1 }]));
        }
        let f1_shifted: Vec<i64> = candidate.f1_degrees.iter().map(|m| m + d).collect();
        let (s0, col0, row0) = assemble(f, "s0", &candidate.f0_degrees, &candidate.f1_degrees, &candidate.s0)?;
        let (s1, col1, row1) = assemble(f, "s1", &f1_shifted, &candidate.f0_degrees, &candidate.s1)?;
        debug_assert!(col0 == row1 && row0 == col1);
        Self::from_parts(f.clone(), s0, s1)
    }

    /// Builds a factorization from matrices already carrying sorted degree
    /// lists, checking every defining identity.
    pub fn from_parts(f: Polynomial, s0: HomogeneousMatrix, s1: HomogeneousMatrix) -> Result<Self, MfError> {
        let mf = Self::from_parts_unchecked(f, s0, s1).map_err(|e| MfError::Invalid(vec![e]))?;
        let diags = mf.diagnostics(Execution::default());
        if diags.is_empty() {
            Ok(mf)
        } else {
            Err(MfError::Invalid(diags))
        }
    }

    fn from_parts_unchecked(f: Polynomial, s0: HomogeneousMatrix, s1: HomogeneousMatrix) -> Result<Self, MfDiagnostic> {
        let d = homogeneous_degree(&f)?;
        if s0.rows() != s0.cols() {
            return Err(MfDiagnostic::RankMismatch { rank0: s0.cols(), rank1: s0.rows() });
        }
        let structure = |message: String| MfDiagnostic::Structure { map: "s1", message };
        if s1.target() != s0.source() {
            return Err(structure(format!("target {} must equal degrees(F0) {}", s1.target(), s0.source())));
        }
        if s1.source() != &s0.target().twist(-(d as i64)) {
            return Err(structure(format!("source {} must equal degrees(F1) + d", s1.source())));
        }
        for m in [&s0, &s1] {
            if m.field() != f.field() || m.nvars() != f.nvars() {
                return Err(structure("matrix ring differs from the ring of f".into()));
            }
        }
        Ok(MatrixFactorization { f, d, s0, s1 })
    }

    /// All homogeneity diagnostics, or if there are none, the first failing
    /// entry of each composite.
    pub fn diagnostics(&self, exec: Execution) -> Vec<MfDiagnostic> {
        let mut out: Vec<MfDiagnostic> = Vec::new();
        for (map, m) in [("s0", &self.s0), ("s1", &self.s1)] {
            out.extend(m.validate().into_iter().map(|entry| MfDiagnostic::EntryDegree { map, entry }));
        }
        if !out.is_empty() {
            return out;
        }
        let d = self.d as i64;
        let c10 = self.s1.compose_with(&self.s0.twist(-d), exec).expect("degree lists agree");
        let c01 = self.s0.compose_with(&self.s1, exec).expect("degree lists agree");
        for (composite, c) in [("s1*s0", c10), ("s0*s1", c01)] {
            if let Some(diag) = first_composite_failure(composite, &c, &self.f) {
                out.push(diag);
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.diagnostics(Execution::default()).is_empty()
    }

    pub fn zero(f: Polynomial) -> Result<Self, MfError> {
        let d = homogeneous_degree(&f).map_err(|e| MfError::Invalid(vec![e]))?;
        let empty = DegreeMultiset::default();
        let s0 = HomogeneousMatrix::zero(f.field(), f.nvars(), empty.clone(), empty.clone());
        let s1 = s0.clone();
        Ok(MatrixFactorization { f, d, s0, s1 })
    }

    /// The rank-one trivial factorization `(S, S, 1, f)`.
    pub fn trivial_unit_first(f: Polynomial) -> Result<Self, MfError> {
        let d = homogeneous_degree(&f).map_err(|e| MfError::Invalid(vec![e]))? as i64;
        let one = Polynomial::one(f.field(), f.nvars());
        let g = f.clone();
        Self::rank_one(f, one, g, 0, d)
    }

    /// The rank-one trivial factorization `(S(−d), S, f, 1)`.
    pub fn trivial_f_first(f: Polynomial) -> Result<Self, MfError> {
        let d = homogeneous_degree(&f).map_err(|e| MfError::Invalid(vec![e]))? as i64;
        let one = Polynomial::one(f.field(), f.nvars());
        let g = f.clone();
        Self::rank_one(f, g, one, d, d)
    }

    /// `(S(−deg s0), S, s0, s1)` for homogeneous `s0·s1 = f`.
    pub fn rank_one_from(f: Polynomial, s0: Polynomial, s1: Polynomial) -> Result<Self, MfError> {
        let d = homogeneous_degree(&f).map_err(|e| MfError::Invalid(vec![e]))? as i64;
        let k = match s0.degree() {
            Degree::Finite(k) => k as i64,
            Degree::NegativeInfinity => return Err(MfError::Invalid(vec![MfDiagnostic::ZeroPolynomial])),
        };
        Self::rank_one(f, s0, s1, k, d)
    }

    fn rank_one(f: Polynomial, s0: Polynomial, s1: Polynomial, k: i64, d: i64) -> Result<Self, MfError> {
        let (field, n) = (f.field(), f.nvars());
        let a = HomogeneousMatrix::new(
            field,
            n,
            DegreeMultiset::new(vec![k]),
            DegreeMultiset::new(vec![0]),
            vec![vec![s0]],
        )?;
        let b = HomogeneousMatrix::new(
            field,
            n,
            DegreeMultiset::new(vec![d]),
            DegreeMultiset::new(vec![k]),
            vec![vec![s1]],
        )?;
        Self::from_parts(f, a, b)
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn s0(&self) -> &HomogeneousMatrix {
        &self.s0
    }

    pub fn s1(&self) -> &HomogeneousMatrix {
        &self.s1
    }

    pub fn f0_degrees(&self) -> &DegreeMultiset {
        self.s0.source()
    }

    pub fn f1_degrees(&self) -> &DegreeMultiset {
        self.s0.target()
    }

    /// `rank(F⁰)`, which equals `rank(F¹)`.
    pub fn rank(&self) -> usize {
        self.s0.cols()
    }

    /// `rank(F⁰) + rank(F¹)`.
    pub fn total_rank(&self) -> usize {
        2 * self.rank()
    }

    /// `F[1] = (F¹, F⁰(d), −s¹, −s⁰)`.
    pub fn shift(&self) -> Self {
        let d = self.d as i64;
        MatrixFactorization { f: self.f.clone(), d: self.d, s0: self.s1.twist(d).neg(), s1: self.s0.neg() }
    }

    /// `F(t) = (F⁰(t), F¹(t), s⁰, s¹)`.
    pub fn twist(&self, t: i64) -> Self {
        MatrixFactorization { f: self.f.clone(), d: self.d, s0: self.s0.twist(t), s1: self.s1.twist(t) }
    }

    /// Twists so that the smallest generator degree of `F¹` is zero.
    pub fn normalized(&self) -> Self {
        match self.f1_degrees().min() {
            Some(m) => self.twist(m),
            None => self.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, MfError> {
        if self.f != other.f {
            return Err(MfError::DifferentPolynomials);
        }
        Ok(MatrixFactorization {
            f: self.f.clone(),
            d: self.d,
            s0: self.s0.block_diagonal(&other.s0)?,
            s1: self.s1.block_diagonal(&other.s1)?,
        })
    }

    pub fn tensor(&self, other: &Self, normalize: bool) -> Result<Self, MfError> {
        tensor_with(self, other, normalize, Execution::default())
    }

    /// Transpose-dual `(F¹*, F⁰*, (s⁰)ᵀ, (s¹)ᵀ)`; degree lists are negated
    /// and no further twist is applied, so `dual(dual(F)) == F` exactly.
    pub fn dual(&self) -> Self {
        let d = self.d as i64;
        MatrixFactorization { f: self.f.clone(), d: self.d, s0: self.s0.dual(), s1: self.s1.dual().twist(-d) }
    }

    /// True iff no entry of `s⁰` or `s¹` has a nonzero constant term.
    pub fn is_reduced(&self) -> bool {
        self.s0.entries().iter().chain(self.s1.entries()).all(|p| p.constant_term().is_none())
    }

    pub fn reduce(&self) -> Self {
        reduce::reduce(self)
    }

    /// Generator counts `b^i_j` of a reduced factorization.
    pub fn betti(&self) -> Result<BettiTable, MfError> {
        if !self.is_reduced() {
            return Err(MfError::NotReduced);
        }
        Ok(BettiTable::from_degrees(self.f0_degrees(), self.f1_degrees()))
    }
}

fn assemble(
    f: &Polynomial,
    map: &'static str,
    source: &[i64],
    target: &[i64],
    grid: &[Vec<Polynomial>],
) -> Result<(HomogeneousMatrix, Vec<usize>, Vec<usize>), MfError> {
    let structure = |message: String| MfError::Invalid(vec![MfDiagnostic::Structure { map, message }]);
    if grid.len() != target.len() || grid.iter().any(|row| row.len() != source.len()) {
        return Err(structure(format!("expected a {}x{} matrix", target.len(), source.len())));
    }
    for (r, row) in grid.iter().enumerate() {
        for (c, p) in row.iter().enumerate() {
            if p.field() != f.field() || p.nvars() != f.nvars() {
                return Err(structure(format!("entry ({r}, {c}) lives in a different ring than f")));
            }
        }
    }
    Ok(HomogeneousMatrix::from_unsorted(f.field(), f.nvars(), source, target, grid.to_vec()))
}

fn first_composite_failure(name: &'static str, c: &HomogeneousMatrix, f: &Polynomial) -> Option<MfDiagnostic> {
    for r in 0..c.rows() {
        for col in 0..c.cols() {
            let entry = c.get(r, col);
            let difference = if r == col { entry - f } else { entry.clone() };
            if !difference.is_zero() {
                return Some(MfDiagnostic::Composite { composite: name, row: r, col, difference });
            }
        }
    }
    None
}

impl fmt::Display for MatrixFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f = {} (degree {}, over {})", self.f, self.d, self.field())?;
        writeln!(f, "F0 = {}, F1 = {}", self.f0_degrees(), self.f1_degrees())?;
        write!(f, "s0: {}", self.s0)?;
        write!(f, "s1: {}", self.s1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn qi(s: &str, n: usize) -> Polynomial {
        parse_poly(s, Field::GaussianRational, n).unwrap()
    }

    fn candidate(f: &str, n: usize, f0: &[i64], f1: &[i64], s0: &[&[&str]], s1: &[&[&str]]) -> MfCandidate {
        let grid = |rows: &[&[&str]]| rows.iter().map(|r| r.iter().map(|s| qi(s, n)).collect()).collect();
        MfCandidate { f: qi(f, n), f0_degrees: f0.to_vec(), f1_degrees: f1.to_vec(), s0: grid(s0), s1: grid(s1) }
    }

    #[test]
    fn trivial_pair_validates() {
        let c = candidate("x0^4 + x1^4", 2, &[0], &[0], &[&["1"]], &[&["x0^4 + x1^4"]]);
        let mf = MatrixFactorization::validate(&c).unwrap();
        assert_eq!(mf.rank(), 1);
        assert!(!mf.is_reduced());
    }

    #[test]
    fn gaussian_rank_one_validates() {
        let c = candidate("x0^4 + x1^4", 2, &[2], &[0], &[&["x0^2 + i*x1^2"]], &[&["x0^2 - i*x1^2"]]);
        let mf = MatrixFactorization::validate(&c).unwrap();
        assert!(mf.is_reduced());
    }

    #[test]
    fn wrong_composite_is_pinpointed() {
        let c = candidate("x0^4", 1, &[1], &[0], &[&["x0"]], &[&["x0"]]);
        match MatrixFactorization::validate(&c) {
            Err(MfError::Invalid(diags)) => {
                // entry degrees fail first: s1 must have degree 3
                assert!(matches!(diags[0], MfDiagnostic::EntryDegree { map: "s1", .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
        // consistent degrees, wrong product
        let c = candidate("x0^4", 1, &[1], &[0], &[&["x0"]], &[&["2*x0^3"]]);
        match MatrixFactorization::validate(&c) {
            Err(MfError::Invalid(diags)) => match &diags[0] {
                MfDiagnostic::Composite { composite, row, col, difference } => {
                    assert_eq!((*composite, *row, *col), ("s1*s0", 0, 0));
                    assert_eq!(difference, &qi("x0^4", 1));
                }
                d => panic!("unexpected {d:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn x0_times_x0_is_not_x0_fourth() {
        // s0 = s1 = [x0] against x0^4: with F0 = {1}, F1 = {0} the s1 entry
        // needs degree 3, and the composite would be x0^2.
        let c = candidate("x0^4", 1, &[1], &[0], &[&["x0"]], &[&["x0"]]);
        assert!(MatrixFactorization::validate(&c).is_err());
    }

    #[test]
    fn rejects_bad_f_and_ranks() {
        let c = candidate("x0^2 + x1", 2, &[1], &[0], &[&["x0"]], &[&["x0"]]);
        assert!(matches!(
            MatrixFactorization::validate(&c),
            Err(MfError::Invalid(d)) if matches!(d[0], MfDiagnostic::NonHomogeneous { .. })
        ));
        let c = candidate("x0^2", 1, &[1, 1], &[0], &[&["x0", "x0"]], &[&["x0"], &["x0"]]);
        assert!(matches!(
            MatrixFactorization::validate(&c),
            Err(MfError::Invalid(d)) if d[0] == MfDiagnostic::RankMismatch { rank0: 2, rank1: 1 }
        ));
    }

    #[test]
    fn unsorted_candidate_is_sorted() {
        // F0 given in descending order
        let c = candidate("x0^2", 1, &[2, 0], &[0, 0], &[&["x0^2", "0"], &["0", "1"]], &[&["1", "0"], &["0", "x0^2"]]);
        let mf = MatrixFactorization::validate(&c).unwrap();
        assert_eq!(mf.f0_degrees().as_slice(), &[0, 2]);
        assert_eq!(mf.s0().get(1, 0), &qi("1", 1));
    }

    #[test]
    fn shift_of_trivial() {
        let f = qi("x0^4 + x1^4", 2);
        let t = MatrixFactorization::trivial_unit_first(f.clone()).unwrap();
        let s = t.shift();
        assert!(s.is_valid());
        assert_eq!(s.s0().get(0, 0), &(-&f));
        assert_eq!(s.s1().get(0, 0), &qi("-1", 2));
        assert_eq!(s.f0_degrees().as_slice(), &[0]);
        assert_eq!(s.f1_degrees().as_slice(), &[-4]);
        assert_eq!(s.shift(), t.twist(4));
    }

    #[test]
    fn twist_identities() {
        let g = fermat(Field::GaussianRational, 2, 2, false).unwrap();
        assert_eq!(g.twist(0), g);
        assert_eq!(g.twist(3).twist(-3), g);
        let b = g.betti().unwrap();
        let bt = g.twist(3).betti().unwrap();
        for i in 0..2 {
            for j in -5..8 {
                assert_eq!(bt.get(i, j), b.get(i, j + 3));
            }
        }
    }

    #[test]
    fn direct_sums() {
        let f = qi("x0^4 + x1^4", 2);
        let g = fermat(Field::GaussianRational, 1, 2, false).unwrap();
        let z = MatrixFactorization::zero(f.clone()).unwrap();
        assert_eq!(g.direct_sum(&z).unwrap(), g);
        let a = MatrixFactorization::trivial_unit_first(f.clone()).unwrap();
        let b = MatrixFactorization::trivial_f_first(f.clone()).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.rank(), 2);
        assert!(s.is_valid());
        let other = MatrixFactorization::zero(qi("x0^4", 2)).unwrap();
        assert_eq!(g.direct_sum(&other), Err(MfError::DifferentPolynomials));
    }

    #[test]
    fn duals() {
        let f = qi("x0^4 + x1^4", 2);
        let t = MatrixFactorization::trivial_unit_first(f).unwrap();
        let td = t.dual();
        assert!(td.is_valid());
        assert!(!td.is_reduced());
        assert_eq!(td.reduce().rank(), 0);
        let g = fermat(Field::GaussianRational, 2, 2, false).unwrap();
        let gd = g.dual();
        assert!(gd.is_valid());
        assert_eq!(gd.rank(), g.rank());
        assert_eq!(gd.dual(), g);
    }

    #[test]
    fn reducedness() {
        let f = qi("x0^4 + x1^4", 2);
        assert!(!MatrixFactorization::trivial_unit_first(f.clone()).unwrap().is_reduced());
        assert!(fermat(Field::GaussianRational, 2, 2, false).unwrap().is_reduced());
        assert!(MatrixFactorization::zero(f).unwrap().is_reduced());
    }

    #[test]
    fn betti_requires_reduced() {
        let f = qi("x0^4", 1);
        let t = MatrixFactorization::trivial_unit_first(f.clone()).unwrap();
        assert_eq!(t.betti(), Err(MfError::NotReduced));
        assert!(MatrixFactorization::zero(f).unwrap().betti().unwrap().is_empty());
    }
}
