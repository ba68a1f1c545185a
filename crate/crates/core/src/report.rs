//! Summary of a solver run, shared by both solution routes.

/// Which route produced a stationary distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Kernel extraction by Gaussian elimination.
    Direct,
    /// Running average of the powers of an initial distribution.
    Cesaro,
}

impl SolveMethod {
    /// Lower-case name, matching what the command line tool accepts.
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Direct => "direct",
            SolveMethod::Cesaro => "cesaro",
        }
    }
}

/// Facts about a computed stationary distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    /// Route that produced the result.
    pub method: SolveMethod,
    /// Averaging steps taken; 0 for the direct route.
    pub iterations: u64,
    /// `max_i |(pi P)(i) - pi(i)|` of the returned vector.
    pub residual: f64,
    /// Smallest entry of the returned vector, not clamped.
    pub positivity_margin: f64,
    /// Dimension of the solution space of `v P = v`, present for the
    /// direct route, which actually computes it.
    pub kernel_dimension: Option<usize>,
}
