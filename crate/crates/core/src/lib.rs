//! Exact toolkit for graded matrix factorizations of homogeneous polynomials
//! and the cohomology counts of the associated hypersurfaces.

pub mod algebra;
pub mod bott;
pub mod graded;
pub mod mf;
pub mod orlov;
pub mod par;
pub mod random;

pub use algebra::{parse_poly, parse_scalar, AlgebraError, Field, Polynomial, Scalar};
pub use graded::{DegreeMultiset, HomogeneousMatrix};
pub use mf::{BettiTable, MatrixFactorization, MfCandidate, MfError};
pub use orlov::HypersurfaceContext;
pub use par::Execution;
