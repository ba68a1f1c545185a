//! Direct stationary solver: rank and kernel of `P - I` by Gaussian
//! elimination with partial pivoting.
//!
//! For an irreducible chain the kernel of `P - I` is the line of constant
//! vectors, so the rank is `n - 1`; by transpose duality the kernel of
//! `(P - I)^T` is then also one-dimensional, and its one-signed basis
//! vector, normalized to sum 1, is the stationary distribution. The solver
//! reports any other kernel dimension as a failure rather than guessing.
//!
//! Pivots are compared against an absolute tolerance; the default scales
//! with the dimension and the infinity norm of the input so that the
//! all-zero matrix `I - I` still reads as rank 0.

use crate::error::{Error, Result};
use crate::matrix::{
    residual_norm, DenseMatrix, ProbabilityVector, RowVector, StochasticMatrix,
    DEFAULT_VECTOR_SUM_TOL,
};
use crate::report::{SolveMethod, SolveReport};

/// Default strict lower bound for a usable pivot:
/// `1e-12 * n * max(||M||_inf, 1)`.
///
/// The floor at norm 1 matters. The matrices eliminated here are `P - I`
/// for a stochastic `P` whose entries are doubles near 1, so their rows
/// carry absolute rounding dust around `1e-16` no matter how small
/// `||P - I||_inf` is. A nearly reducible chain with cross-block mass
/// `c` has `||P - I||_inf` close to `2c`; a purely relative threshold
/// then drops below the dust and elimination reports full rank where the
/// exact matrix has a kernel. The floor keeps the cutoff at the scale of
/// the entries' actual precision while staying orders of magnitude below
/// any pivot that carries rank information.
pub fn default_pivot_tol(m: &DenseMatrix) -> f64 {
    1e-12 * m.n() as f64 * m.infinity_norm().max(1.0)
}

/// Default strict lower bound for stationary entries in the positivity
/// check.
pub const DEFAULT_POSITIVITY_TOL: f64 = 0.0;

/// A basis of the kernel of some square matrix. Each vector is scaled to
/// infinity norm 1; vectors are independent because each carries the unit
/// entry of a distinct free column.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBasis {
    vectors: Vec<RowVector>,
}

impl KernelBasis {
    /// Number of basis vectors.
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// The basis vectors.
    pub fn vectors(&self) -> &[RowVector] {
        &self.vectors
    }
}

/// Reduced row echelon form in place. Entries at or below `pivot_tol` in
/// absolute value are never chosen as pivots. Returns the pivot columns.
fn reduce(rows: &mut [Vec<f64>], pivot_tol: f64) -> Vec<usize> {
    let n = rows.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let mut best = rank;
        for r in rank + 1..n {
            if rows[r][col].abs() > rows[best][col].abs() {
                best = r;
            }
        }
        if !(rows[best][col].abs() > pivot_tol) {
            continue;
        }
        rows.swap(rank, best);
        let pivot = rows[rank][col];
        for x in rows[rank].iter_mut() {
            *x /= pivot;
        }
        // Unit pivot; clear the column everywhere else.
        rows[rank][col] = 1.0;
        for r in 0..n {
            if r == rank {
                continue;
            }
            let factor = rows[r][col];
            if factor == 0.0 {
                continue;
            }
            for c in 0..n {
                rows[r][c] -= factor * rows[rank][c];
            }
            rows[r][col] = 0.0;
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    pivot_cols
}

/// Number of pivots of `m` that exceed `pivot_tol` in absolute value
/// under partial pivoting.
pub fn rank(m: &DenseMatrix, pivot_tol: f64) -> usize {
    let mut rows: Vec<Vec<f64>> = (0..m.n()).map(|i| m.row(i).to_vec()).collect();
    reduce(&mut rows, pivot_tol).len()
}

/// Rank of `P - I`; `n - 1` exactly when the chain is irreducible.
pub fn rank_of_p_minus_i(p: &StochasticMatrix, pivot_tol: f64) -> usize {
    rank(&p.minus_identity(), pivot_tol)
}

/// Basis of the kernel of `m`, one vector per free column of the reduced
/// echelon form, each scaled to infinity norm 1.
pub fn kernel_basis(m: &DenseMatrix, pivot_tol: f64) -> KernelBasis {
    let n = m.n();
    let mut rows: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let pivot_cols = reduce(&mut rows, pivot_tol);
    let mut vectors = Vec::with_capacity(n - pivot_cols.len());
    let mut next_pivot = 0;
    for free in 0..n {
        if next_pivot < pivot_cols.len() && pivot_cols[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![0.0; n];
        v[free] = 1.0;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[r][free];
        }
        let scale = v.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
        for x in v.iter_mut() {
            *x /= scale;
        }
        vectors.push(RowVector::new(v));
    }
    KernelBasis { vectors }
}

/// Stationary distribution via the kernel of `(P - I)^T`.
///
/// Fails with `NotUniqueStationary` when that kernel is not a line, and
/// with `NonPositiveEntry` when the normalized solution is not strictly
/// positive everywhere. The trivial one-state chain short-circuits to
/// `(1)`.
pub fn solve_stationary_direct(
    p: &StochasticMatrix,
) -> Result<(ProbabilityVector, SolveReport)> {
    let n = p.n();
    if n == 1 {
        let pi = ProbabilityVector::new(vec![1.0], DEFAULT_VECTOR_SUM_TOL)?;
        let residual = residual_norm(&RowVector::from(&pi), p)?;
        return Ok((
            pi,
            SolveReport {
                method: SolveMethod::Direct,
                iterations: 0,
                residual,
                positivity_margin: 1.0,
                kernel_dimension: Some(1),
            },
        ));
    }
    let m = p.minus_identity().transpose();
    let basis = kernel_basis(&m, default_pivot_tol(&m));
    if basis.dimension() != 1 {
        return Err(Error::NotUniqueStationary {
            kernel_dimension: basis.dimension(),
        });
    }
    let v = basis.vectors()[0].entries();
    let sum: f64 = v.iter().sum();
    if sum == 0.0 {
        // Mixed signs cancelled exactly; no positive scaling exists.
        let index = v.iter().position(|&x| x <= 0.0).unwrap_or(0);
        return Err(Error::NonPositiveEntry { index });
    }
    // Dividing by the signed sum makes the entries sum to 1 and flips an
    // all-negative solution to all-positive.
    let pi_entries: Vec<f64> = v.iter().map(|&x| x / sum).collect();
    let mut margin = f64::INFINITY;
    for (i, &x) in pi_entries.iter().enumerate() {
        if !(x > DEFAULT_POSITIVITY_TOL) {
            return Err(Error::NonPositiveEntry { index: i });
        }
        margin = margin.min(x);
    }
    let pi = ProbabilityVector::new(pi_entries, DEFAULT_VECTOR_SUM_TOL)?;
    let residual = residual_norm(&RowVector::from(&pi), p)?;
    Ok((
        pi,
        SolveReport {
            method: SolveMethod::Direct,
            iterations: 0,
            residual,
            positivity_margin: margin,
            kernel_dimension: Some(1),
        },
    ))
}

/// Smallest entry of `pi`, or `NonPositiveEntry` for the first index at
/// or below `positivity_tol`.
pub fn verify_strict_positivity(pi: &ProbabilityVector, positivity_tol: f64) -> Result<f64> {
    for (i, &x) in pi.entries().iter().enumerate() {
        if !(x > positivity_tol) {
            return Err(Error::NonPositiveEntry { index: i });
        }
    }
    Ok(pi.min_entry())
}
