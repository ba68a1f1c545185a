//! Trajectory simulation by inverse-CDF sampling.
//!
//! Row CDFs are precomputed once, with the final value forced to exactly
//! 1 so every draw in [0, 1) lands on a state. A draw advances past a
//! boundary only when it is strictly below the cumulative sum, so states
//! with probability zero are never selected. Runs are pure functions of
//! (matrix, start, steps, seed); concurrent trajectories just need
//! distinct seeds, e.g. derived from a base seed and a trajectory index.

use crate::error::{Error, Result};
use crate::matrix::{ProbabilityVector, StochasticMatrix};
use crate::rng::SplitMix64;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 42;

/// Outcome of one simulated trajectory. `counts` records the state after
/// each transition, so its entries sum to `steps`; the start state is not
/// counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryStats {
    steps: u64,
    start: usize,
    seed: u64,
    counts: Vec<u64>,
}

impl TrajectoryStats {
    /// Number of transitions taken.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Initial state.
    pub fn start(&self) -> usize {
        self.start
    }

    /// Seed the trajectory was drawn with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Visits per state, counted after each transition.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Walks `steps` transitions from `start` and tallies the visited states.
/// Bit-reproducible: the same inputs give the same counts on any platform.
pub fn sample_trajectory(
    p: &StochasticMatrix,
    start: usize,
    steps: u64,
    seed: u64,
) -> Result<TrajectoryStats> {
    let n = p.n();
    if start >= n {
        return Err(Error::IndexOutOfRange { index: start, n });
    }
    // Row CDFs; the last entry is pinned to 1 so draws cannot fall off.
    let mut cdfs = vec![0.0; n * n];
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            acc += p.entry(i, j);
            cdfs[i * n + j] = acc;
        }
        cdfs[i * n + n - 1] = 1.0;
    }
    let mut rng = SplitMix64::new(seed);
    let mut counts = vec![0u64; n];
    let mut state = start;
    for _ in 0..steps {
        let r = rng.next_f64();
        let row = &cdfs[state * n..(state + 1) * n];
        state = row.partition_point(|&c| c <= r);
        counts[state] += 1;
    }
    Ok(TrajectoryStats {
        steps,
        start,
        seed,
        counts,
    })
}

/// Visit frequencies `counts / steps`. Requires at least one step.
pub fn empirical_distribution(stats: &TrajectoryStats) -> ProbabilityVector {
    assert!(stats.steps >= 1, "frequencies need at least one step");
    let total = stats.steps as f64;
    let entries: Vec<f64> = stats.counts.iter().map(|&c| c as f64 / total).collect();
    ProbabilityVector::new(entries, 1e-12).expect("counts sum to steps exactly")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direct::solve_stationary_direct;
    use crate::matrix::DEFAULT_ROW_SUM_TOL;

    fn matrix(rows: &[Vec<f64>]) -> StochasticMatrix {
        StochasticMatrix::validate(rows, DEFAULT_ROW_SUM_TOL, false).unwrap()
    }

    #[test]
    fn swap_chain_alternates_exactly() {
        let p = matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let stats = sample_trajectory(&p, 0, 100, 7).unwrap();
        assert_eq!(stats.counts(), &[50, 50]);
    }

    #[test]
    fn identity_chain_never_moves() {
        let p = matrix(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let stats = sample_trajectory(&p, 0, 100, 7).unwrap();
        assert_eq!(stats.counts(), &[100, 0]);
    }

    #[test]
    fn counts_sum_to_steps() {
        let p = matrix(&[vec![0.7, 0.3], vec![0.6, 0.4]]);
        let stats = sample_trajectory(&p, 1, 12345, 99).unwrap();
        assert_eq!(stats.counts().iter().sum::<u64>(), 12345);
        assert_eq!(stats.start(), 1);
        assert_eq!(stats.seed(), 99);
    }

    #[test]
    fn equal_seeds_reproduce_counts() {
        let p = matrix(&[vec![0.5, 0.25, 0.25], vec![0.1, 0.8, 0.1], vec![0.3, 0.3, 0.4]]);
        let a = sample_trajectory(&p, 2, 10_000, DEFAULT_SEED).unwrap();
        let b = sample_trajectory(&p, 2, 10_000, DEFAULT_SEED).unwrap();
        assert_eq!(a, b);
        let c = sample_trajectory(&p, 2, 10_000, DEFAULT_SEED + 1).unwrap();
        assert_ne!(a.counts(), c.counts());
    }

    #[test]
    fn start_state_is_checked() {
        let p = matrix(&[vec![1.0]]);
        assert_eq!(
            sample_trajectory(&p, 3, 10, 0),
            Err(Error::IndexOutOfRange { index: 3, n: 1 })
        );
    }

    #[test]
    fn zero_probability_states_are_never_visited() {
        // Middle state has probability zero from everywhere.
        let p = matrix(&[
            vec![0.5, 0.0, 0.5],
            vec![0.5, 0.0, 0.5],
            vec![0.5, 0.0, 0.5],
        ]);
        let stats = sample_trajectory(&p, 0, 50_000, 11).unwrap();
        assert_eq!(stats.counts()[1], 0);
    }

    #[test]
    fn empirical_frequencies_of_the_swap_chain() {
        let p = matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let stats = sample_trajectory(&p, 0, 100, 7).unwrap();
        let freq = empirical_distribution(&stats);
        assert_eq!(freq.entries(), &[0.5, 0.5]);
    }

    #[test]
    fn long_run_frequencies_approach_the_stationary_law() {
        let p = matrix(&[vec![0.7, 0.3], vec![0.6, 0.4]]);
        let stats = sample_trajectory(&p, 0, 1_000_000, DEFAULT_SEED).unwrap();
        let freq = empirical_distribution(&stats);
        let (pi, _) = solve_stationary_direct(&p).unwrap();
        let dist = freq.infinity_distance(&pi).unwrap();
        assert!(dist <= 0.01, "distance {dist}");
    }
}
