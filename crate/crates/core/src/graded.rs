//! Graded free modules and homogeneous polynomial matrices between them.
//!
//! A free module `⊕ S(−m_j)` is recorded by its generator degrees `{m_j}`.
//! A map from a module with degrees `src` to one with degrees `tgt` is a
//! matrix whose entry `(r, c)` is zero or homogeneous of degree
//! `src[c] − tgt[r]` (zero whenever that difference is negative).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Degree, Field, Polynomial, Scalar};
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("entry grid is {rows}x{cols} but the degree lists need {expected_rows}x{expected_cols}")]
    Shape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("cannot compose: inner degrees {left:?} and {right:?} differ")]
    Composition { left: Vec<i64>, right: Vec<i64> },
    #[error("entry ({row}, {col}) has the wrong field or variable count")]
    EntryRing { row: usize, col: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Generator degrees of a graded free module, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeMultiset(Vec<i64>);

impl DegreeMultiset {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable();
        DegreeMultiset(degrees)
    }

    pub fn uniform(rank: usize, degree: i64) -> Self {
        DegreeMultiset(vec![degree; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Twist by `t`: `S(−m)(t) = S(−(m − t))`, so every degree drops by `t`.
    pub fn twist(&self, t: i64) -> Self {
        DegreeMultiset(self.0.iter().map(|m| m - t).collect())
    }

    /// Degrees of the dual module, reversed so they stay sorted.
    pub fn dual(&self) -> Self {
        DegreeMultiset(self.0.iter().rev().map(|m| -m).collect())
    }

    pub fn multiplicities(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &m in &self.0 {
            *out.entry(m).or_insert(0) += 1;
        }
        out
    }

    pub fn count(&self, degree: i64) -> usize {
        self.0.iter().filter(|&&m| m == degree).count()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// A homogeneity violation at one matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryDiagnostic {
    pub row: usize,
    pub col: usize,
    /// Required degree `source[col] − target[row]`.
    pub expected: i64,
    pub found: Degree,
    pub homogeneous: bool,
}

impl fmt::Display for EntryDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let found = match self.found {
            Degree::NegativeInfinity => "zero".to_string(),
            Degree::Finite(d) if self.homogeneous => format!("degree {d}"),
            Degree::Finite(d) => format!("a non-homogeneous polynomial of degree {d}"),
        };
        if self.expected < 0 {
            write!(
                f,
                "entry ({}, {}) must be zero (negative degree {}), found {found}",
                self.row, self.col, self.expected
            )
        } else {
            write!(
                f,
                "entry ({}, {}) must be homogeneous of degree {}, found {found}",
                self.row, self.col, self.expected
            )
        }
    }
}

/// Polynomial matrix with graded source (columns) and target (rows).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousMatrix {
    field: Field,
    nvars: usize,
    source: DegreeMultiset,
    target: DegreeMultiset,
    entries: Vec<Polynomial>,
}

impl HomogeneousMatrix {
    /// Builds a matrix from row-major entries. Only the shape and ring of
    /// the entries are checked here; degree constraints are reported by
    /// [`HomogeneousMatrix::validate`].
    pub fn new(
        field: Field,
        nvars: usize,
        source: DegreeMultiset,
        target: DegreeMultiset,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self, GradedError> {
        let shape_err = |cols| GradedError::Shape {
            rows: rows.len(),
            cols,
            expected_rows: target.rank(),
            expected_cols: source.rank(),
        };
        if rows.len() != target.rank() {
            return Err(shape_err(rows.first().map_or(0, Vec::len)));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != source.rank()) {
            return Err(shape_err(bad.len()));
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                if p.field() != field || p.nvars() != nvars {
                    return Err(GradedError::EntryRing { row: r, col: c });
                }
            }
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(HomogeneousMatrix { field, nvars, source, target, entries })
    }

    pub(crate) fn from_flat(
        field: Field,
        nvars: usize,
        source: DegreeMultiset,
        target: DegreeMultiset,
        entries: Vec<Polynomial>,
    ) -> Self {
        debug_assert_eq!(entries.len(), source.rank() * target.rank());
        HomogeneousMatrix { field, nvars, source, target, entries }
    }

    pub fn zero(field: Field, nvars: usize, source: DegreeMultiset, target: DegreeMultiset) -> Self {
        let entries = vec![Polynomial::zero(field, nvars); source.rank() * target.rank()];
        HomogeneousMatrix { field, nvars, source, target, entries }
    }

    pub fn identity(field: Field, nvars: usize, degrees: DegreeMultiset) -> Self {
        Self::scalar_identity(field, nvars, degrees, &field.one())
    }

    /// `c` times the identity on `degrees`.
    pub fn scalar_identity(field: Field, nvars: usize, degrees: DegreeMultiset, c: &Scalar) -> Self {
        let n = degrees.rank();
        let mut m = Self::zero(field, nvars, degrees.clone(), degrees);
        for k in 0..n {
            m.entries[k * n + k] = Polynomial::constant(field, nvars, c.clone());
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn source(&self) -> &DegreeMultiset {
        &self.source
    }

    pub fn target(&self) -> &DegreeMultiset {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.cols() + col]
    }

    pub(crate) fn get_mut(&mut self, row: usize, col: usize) -> &mut Polynomial {
        let cols = self.cols();
        &mut self.entries[row * cols + col]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<Polynomial>> {
        if self.cols() == 0 {
            return vec![Vec::new(); self.rows()];
        }
        self.entries.chunks(self.cols()).map(<[Polynomial]>::to_vec).collect()
    }

    /// Required degree of entry `(row, col)`.
    pub fn expected_degree(&self, row: usize, col: usize) -> i64 {
        self.source.as_slice()[col] - self.target.as_slice()[row]
    }

    /// One diagnostic per entry violating the homogeneity constraint.
    pub fn validate(&self) -> Vec<EntryDiagnostic> {
        let mut out = Vec::new();
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                let p = self.get(r, c);
                let expected = self.expected_degree(r, c);
                let ok = p.is_zero() || (expected >= 0 && p.is_homogeneous_of(expected as u64));
                if !ok {
                    let (found, homogeneous) = p.degree_info();
                    out.push(EntryDiagnostic { row: r, col: c, expected, found, homogeneous });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The product `self · rhs`, i.e. `self ∘ rhs`.
    pub fn compose(&self, rhs: &HomogeneousMatrix) -> Result<HomogeneousMatrix, GradedError> {
        self.compose_with(rhs, Execution::default())
    }

    pub fn compose_with(&self, rhs: &HomogeneousMatrix, exec: Execution) -> Result<HomogeneousMatrix, GradedError> {
        if self.field != rhs.field {
            return Err(AlgebraError::FieldMismatch { left: self.field, right: rhs.field }.into());
        }
        if self.nvars != rhs.nvars {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: rhs.nvars }.into());
        }
        if self.source != rhs.target {
            return Err(GradedError::Composition {
                left: self.source.as_slice().to_vec(),
                right: rhs.target.as_slice().to_vec(),
            });
        }
        let (rows, inner, cols) = (self.rows(), self.cols(), rhs.cols());
        let entries = exec.map_indexed(rows * cols, |k| {
            let (r, c) = (k / cols.max(1), k % cols.max(1));
            let mut acc = Polynomial::zero(self.field, self.nvars);
            for j in 0..inner {
                let a = self.get(r, j);
                let b = rhs.get(j, c);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        });
        Ok(HomogeneousMatrix::from_flat(self.field, self.nvars, rhs.source.clone(), self.target.clone(), entries))
    }

    /// Twists source and target by `t`; entries are unchanged.
    pub fn twist(&self, t: i64) -> Self {
        HomogeneousMatrix { source: self.source.twist(t), target: self.target.twist(t), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        HomogeneousMatrix { entries: self.entries.iter().map(|p| -p).collect(), ..self.clone() }
    }

    /// Transpose between the dual modules: source and target swap and
    /// become dual degree lists. Index order is reversed to keep the
    /// degree lists sorted.
    pub fn dual(&self) -> Self {
        let (rows, cols) = (self.rows(), self.cols());
        let mut entries = Vec::with_capacity(rows * cols);
        for c in (0..cols).rev() {
            for r in (0..rows).rev() {
                entries.push(self.get(r, c).clone());
            }
        }
        HomogeneousMatrix::from_flat(self.field, self.nvars, self.target.dual(), self.source.dual(), entries)
    }

    /// Block-diagonal sum, followed by a stable re-sort of both degree lists.
    pub fn block_diagonal(&self, other: &HomogeneousMatrix) -> Result<Self, GradedError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch { left: self.field, right: other.field }.into());
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: other.nvars }.into());
        }
        let mut src: Vec<i64> = self.source.as_slice().to_vec();
        src.extend_from_slice(other.source.as_slice());
        let mut tgt: Vec<i64> = self.target.as_slice().to_vec();
        tgt.extend_from_slice(other.target.as_slice());
        let zero = Polynomial::zero(self.field, self.nvars);
        let mut grid = Vec::with_capacity(tgt.len());
        for row in self.row_vecs() {
            let mut padded = row;
            padded.resize(src.len(), zero.clone());
            grid.push(padded);
        }
        for row in other.row_vecs() {
            let mut padded = vec![zero.clone(); self.cols()];
            padded.extend(row);
            grid.push(padded);
        }
        Ok(Self::from_unsorted(self.field, self.nvars, &src, &tgt, grid).0)
    }

    /// Assembles a matrix from unsorted degree lists, stably sorting rows and
    /// columns. Returns the matrix with the column and row permutations
    /// (`perm[k]` is the original index now at position `k`).
    pub(crate) fn from_unsorted(
        field: Field,
        nvars: usize,
        source: &[i64],
        target: &[i64],
        mut grid: Vec<Vec<Polynomial>>,
    ) -> (Self, Vec<usize>, Vec<usize>) {
        let col_perm = sorting_permutation(source);
        let row_perm = sorting_permutation(target);
        let mut entries = Vec::with_capacity(source.len() * target.len());
        for &r in &row_perm {
            let row = std::mem::take(&mut grid[r]);
            let mut row: Vec<Option<Polynomial>> = row.into_iter().map(Some).collect();
            for &c in &col_perm {
                entries.push(row[c].take().expect("permutation visits each column once"));
            }
        }
        let src = DegreeMultiset(col_perm.iter().map(|&c| source[c]).collect());
        let tgt = DegreeMultiset(row_perm.iter().map(|&r| target[r]).collect());
        (HomogeneousMatrix::from_flat(field, nvars, src, tgt, entries), col_perm, row_perm)
    }

    /// Reorders rows and columns: new row `k` is old row `rows[k]`, likewise
    /// for columns. The caller keeps the degree lists sorted.
    pub(crate) fn permute(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        let src = DegreeMultiset(cols.iter().map(|&c| self.source.0[c]).collect());
        let tgt = DegreeMultiset(rows.iter().map(|&r| self.target.0[r]).collect());
        HomogeneousMatrix::from_flat(self.field, self.nvars, src, tgt, entries)
    }

    /// Deletes one row and one column.
    pub(crate) fn remove(&self, row: usize, col: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows()).filter(|&r| r != row).collect();
        let cols: Vec<usize> = (0..self.cols()).filter(|&c| c != col).collect();
        self.permute(&rows, &cols)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }
}

pub(crate) fn sorting_permutation(degrees: &[i64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..degrees.len()).collect();
    idx.sort_by_key(|&k| degrees[k]);
    idx
}

impl fmt::Display for HomogeneousMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} <- {}", self.target, self.source)?;
        for row in self.row_vecs() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
