//! Row-stochastic matrices and the vectors they act on.
//!
//! A [`StochasticMatrix`] is square with nonnegative entries and rows that
//! sum to 1 within a caller-supplied tolerance. Entries are stored exactly
//! as given; construction never rescales unless renormalization is
//! requested explicitly. Vectors multiply from the left, so a distribution
//! `v` evolves as `v * P`.

use crate::error::{Error, Result};

/// Default tolerance for `|row sum - 1|` during validation.
pub const DEFAULT_ROW_SUM_TOL: f64 = 1e-9;

/// Default tolerance for `|entry sum - 1|` of a probability vector.
pub const DEFAULT_VECTOR_SUM_TOL: f64 = 1e-9;

/// Square matrix with nonnegative entries whose rows each sum to 1 within
/// the tolerance supplied at validation time. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    // Row-major, length n * n.
    data: Vec<f64>,
}

impl StochasticMatrix {
    /// Checks the raw rows and wraps them.
    ///
    /// Rows must form a square matrix of positive dimension, every entry
    /// must be nonnegative, and every row sum must lie within
    /// `row_sum_tol` of 1. With `renormalize` set, each row is divided by
    /// its sum afterwards; rows whose sums are outside tolerance are still
    /// rejected, renormalization never repairs invalid input.
    ///
    /// Violations are reported for the first offending row, negative
    /// entries before sum violations.
    pub fn validate(rows: &[Vec<f64>], row_sum_tol: f64, renormalize: bool) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x < 0.0 {
                    return Err(Error::NegativeEntry {
                        row: i,
                        col: j,
                        value: x,
                    });
                }
            }
            let sum: f64 = row.iter().sum();
            if !((sum - 1.0).abs() <= row_sum_tol) {
                return Err(Error::RowSumViolation { row: i, sum });
            }
            if renormalize {
                data.extend(row.iter().map(|&x| x / sum));
            } else {
                data.extend_from_slice(row);
            }
        }
        Ok(Self { n, data })
    }

    /// Matrix dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Transition probability from state `i` to state `j`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Row `i` as a slice of length `n`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Rows copied out as owned vectors, in order.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix product `self * rhs`. The product of row-stochastic matrices
    /// is row-stochastic up to rounding.
    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            let lhs_row = self.row(i);
            let out = &mut data[i * n..(i + 1) * n];
            for (k, &a) in lhs_row.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let rhs_row = rhs.row(k);
                for j in 0..n {
                    out[j] += a * rhs_row[j];
                }
            }
        }
        Ok(Self { n, data })
    }

    /// The matrix `P - I`, whose kernel consists of the vectors fixed by
    /// right multiplication.
    pub fn minus_identity(&self) -> DenseMatrix {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            data[i * n + i] -= 1.0;
        }
        DenseMatrix { n, data }
    }
}

/// Unconstrained real row vector, the input side of `v * P`.
#[derive(Debug, Clone, PartialEq)]
pub struct RowVector {
    data: Vec<f64>,
}

impl RowVector {
    /// Wraps the entries without constraints.
    pub fn new(entries: Vec<f64>) -> Self {
        Self { data: entries }
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// True when the vector has no entries.
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Entries as a slice.
    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    /// Largest absolute entry.
    pub fn infinity_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }
}

impl From<&ProbabilityVector> for RowVector {
    fn from(v: &ProbabilityVector) -> Self {
        RowVector {
            data: v.data.clone(),
        }
    }
}

/// Nonnegative row vector whose entries sum to 1 within the tolerance
/// supplied at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    data: Vec<f64>,
}

impl ProbabilityVector {
    /// Checks nonnegativity and the entry sum, then wraps the entries
    /// unchanged.
    pub fn new(entries: Vec<f64>, sum_tol: f64) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::NotSquare);
        }
        for (i, &x) in entries.iter().enumerate() {
            if !(x >= 0.0) {
                return Err(Error::NegativeVectorEntry { index: i, value: x });
            }
        }
        let sum: f64 = entries.iter().sum();
        if !((sum - 1.0).abs() <= sum_tol) {
            return Err(Error::VectorSumViolation { sum });
        }
        Ok(Self { data: entries })
    }

    /// The uniform distribution on `n` states.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "uniform distribution needs at least one state");
        Self {
            data: vec![1.0 / n as f64; n],
        }
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// True when the vector has no entries (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Entries as a slice.
    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    /// Smallest entry.
    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `max_i |self(i) - other(i)|`.
    pub fn infinity_distance(&self, other: &Self) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

/// General square real matrix, row-major. Used for kernel and rank
/// computations on `P - I` and its transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds from rows; they must form a square matrix of positive
    /// dimension.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    /// The n-by-n identity.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity needs positive dimension");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self { n, data }
    }

    /// Matrix dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// The transposed matrix.
    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    /// Operator infinity norm: the largest absolute row sum.
    pub fn infinity_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Applies `self` to a column vector on the right: `self * x`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// Writes `v * p` into `out`. Lengths must already agree; this is the
/// allocation-free kernel behind [`vec_mat_mul`].
pub(crate) fn mul_into(v: &[f64], p: &StochasticMatrix, out: &mut [f64]) {
    let n = p.n();
    debug_assert_eq!(v.len(), n);
    debug_assert_eq!(out.len(), n);
    out.fill(0.0);
    for (i, &a) in v.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let row = p.row(i);
        for j in 0..n {
            out[j] += a * row[j];
        }
    }
}

/// The product `v * P`. Preserves the entry sum up to rounding because
/// each row of `P` sums to 1.
pub fn vec_mat_mul(v: &RowVector, p: &StochasticMatrix) -> Result<RowVector> {
    if v.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: v.len(),
        });
    }
    let mut out = vec![0.0; p.n()];
    mul_into(v.entries(), p, &mut out);
    Ok(RowVector::new(out))
}

/// `max_i |(vP)(i) - v(i)|`, the fixed-point defect of `v` under `P`.
/// Zero exactly when `v` is unchanged by one transition step.
pub fn residual_norm(v: &RowVector, p: &StochasticMatrix) -> Result<f64> {
    let vp = vec_mat_mul(v, p)?;
    Ok(vp
        .entries()
        .iter()
        .zip(v.entries())
        .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}
