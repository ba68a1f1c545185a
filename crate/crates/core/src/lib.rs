//! Stationary distributions of finite Markov chains, computed and
//! cross-checked.
//!
//! The crate turns one classical fact into working components: a row
//! stochastic matrix `P` is irreducible exactly when its support graph is
//! strongly connected, and then the fixed-point equation `v P = v` has a
//! one-dimensional solution space whose normalized representative is
//! strictly positive. Each link of that chain is available on its own:
//!
//! * [`matrix`] validates matrices and distributions and provides the
//!   product and residual primitives;
//! * [`irreducibility`] certifies strong connectivity of the support
//!   graph and minimal positive powers;
//! * [`direct`] extracts the stationary distribution from the kernel of
//!   `(P - I)^T` by elimination;
//! * [`cesaro`] reaches the same vector by averaging the power sequence
//!   of the uniform distribution, with a proven `2 / k` defect bound;
//! * [`sim`] samples trajectories whose visit frequencies converge to
//!   the same distribution;
//! * [`fixtures`] draws seeded matrix families for tests and benchmarks.
//!
//! The two solvers are deliberately independent implementations; tests
//! play them against each other, against simulation, and against
//! hand-checked cases.
//!
//! ```
//! use stationary_core::{
//!     validate_matrix, solve_stationary_direct, cesaro_solve, is_irreducible,
//! };
//!
//! let p = validate_matrix(
//!     &[vec![0.7, 0.3], vec![0.6, 0.4]],
//!     stationary_core::DEFAULT_ROW_SUM_TOL,
//!     false,
//! )?;
//! assert!(is_irreducible(&p).verdict());
//! let (pi, _) = solve_stationary_direct(&p)?;
//! let (via_averaging, _) = cesaro_solve(&p, 1e-10, 20_000_000_000)?;
//! let gap = pi.infinity_distance(&via_averaging)?;
//! assert!(gap <= 1e-6);
//! # Ok::<(), stationary_core::Error>(())
//! ```

pub mod cesaro;
pub mod direct;
pub mod error;
pub mod fixtures;
pub mod irreducibility;
pub mod matrix;
pub mod report;
pub mod rng;
pub mod sim;

pub use cesaro::{cesaro_solve, default_max_k, residual_bound, step, CesaroState, DEFAULT_EPS};
pub use direct::{
    default_pivot_tol, kernel_basis, rank_of_p_minus_i, solve_stationary_direct,
    verify_strict_positivity, KernelBasis, DEFAULT_POSITIVITY_TOL,
};
pub use error::{Error, Result};
pub use fixtures::{generate, FixtureKind, FixtureSpec, DEFAULT_COUPLING};
pub use irreducibility::{
    build_graph, full_certificate, is_irreducible, min_positive_power, AdjacencyGraph,
    IrreducibilityCertificate, DEFAULT_POS_THRESHOLD,
};
pub use matrix::{
    residual_norm, vec_mat_mul, DenseMatrix, ProbabilityVector, RowVector, StochasticMatrix,
    DEFAULT_ROW_SUM_TOL, DEFAULT_VECTOR_SUM_TOL,
};
pub use report::{SolveMethod, SolveReport};
pub use rng::SplitMix64;
pub use sim::{empirical_distribution, sample_trajectory, TrajectoryStats, DEFAULT_SEED};

/// Validates raw rows as a stochastic matrix; see
/// [`StochasticMatrix::validate`].
pub fn validate_matrix(
    rows: &[Vec<f64>],
    row_sum_tol: f64,
    renormalize: bool,
) -> Result<StochasticMatrix> {
    StochasticMatrix::validate(rows, row_sum_tol, renormalize)
}
