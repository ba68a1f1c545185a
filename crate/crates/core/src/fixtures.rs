//! Seeded fixture families for tests, benchmarks and the command line
//! generator. Generation is a pure function of (kind, n, seed, coupling),
//! so fixtures are identical across platforms and runs, and every output
//! passes matrix validation at the default tolerance.

use crate::error::{Error, Result};
use crate::matrix::{StochasticMatrix, DEFAULT_ROW_SUM_TOL};
use crate::rng::SplitMix64;

/// Default cross-block mass for [`FixtureKind::NearReducible`].
pub const DEFAULT_COUPLING: f64 = 1e-6;

/// The fixture families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    /// All entries strictly positive, rows normalized; irreducible.
    RandomDense,
    /// A planted full cycle with at least 0.1 on each cycle edge plus
    /// random extra support; irreducible.
    RandomSparseIrreducible,
    /// The deterministic walk `0 -> 1 -> ... -> n-1 -> 0`; irreducible
    /// and maximally periodic.
    Cycle,
    /// Convex mixture of permutation matrices, always including the full
    /// cycle; doubly stochastic and irreducible.
    DoublyStochastic,
    /// Two dense diagonal blocks with nothing between them; reducible.
    ReducibleBlocks,
    /// Two dense diagonal blocks, each row giving exactly `coupling` of
    /// its mass to the other block; irreducible for positive coupling.
    NearReducible,
}

impl FixtureKind {
    /// Every kind, for sweeps.
    pub const ALL: [FixtureKind; 6] = [
        FixtureKind::RandomDense,
        FixtureKind::RandomSparseIrreducible,
        FixtureKind::Cycle,
        FixtureKind::DoublyStochastic,
        FixtureKind::ReducibleBlocks,
        FixtureKind::NearReducible,
    ];

    /// Snake-case name, as accepted by the command line generator.
    pub fn name(self) -> &'static str {
        match self {
            FixtureKind::RandomDense => "random_dense",
            FixtureKind::RandomSparseIrreducible => "random_sparse_irreducible",
            FixtureKind::Cycle => "cycle",
            FixtureKind::DoublyStochastic => "doubly_stochastic",
            FixtureKind::ReducibleBlocks => "reducible_blocks",
            FixtureKind::NearReducible => "near_reducible",
        }
    }

    /// Inverse of [`FixtureKind::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        FixtureKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// A fully determined fixture: kind, size, seed and (for the nearly
/// reducible family) the cross-block mass.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureSpec {
    /// Which family to draw from.
    pub kind: FixtureKind,
    /// Matrix dimension.
    pub n: usize,
    /// Seed for all random choices.
    pub seed: u64,
    /// Cross-block mass; only [`FixtureKind::NearReducible`] reads it.
    pub coupling: f64,
}

impl FixtureSpec {
    /// Spec with the default coupling.
    pub fn new(kind: FixtureKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            seed,
            coupling: DEFAULT_COUPLING,
        }
    }
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidSpec {
        reason: reason.into(),
    }
}

// Strictly positive uniform draw on (0, 1].
fn positive_unit(rng: &mut SplitMix64) -> f64 {
    1.0 - rng.next_f64()
}

fn dense_rows(n: usize, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let raw: Vec<f64> = (0..n).map(|_| positive_unit(rng)).collect();
            let sum: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / sum).collect()
        })
        .collect()
}

fn shuffled(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        order.swap(i, j);
    }
    order
}

fn cycle_rows(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[(i + 1) % n] = 1.0;
            row
        })
        .collect()
}

fn sparse_rows(n: usize, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    // A full cycle through a shuffled order keeps the chain irreducible
    // whatever else lands in the rows.
    let order = shuffled(n, rng);
    let mut cycle_target = vec![0usize; n];
    for t in 0..n {
        cycle_target[order[t]] = order[(t + 1) % n];
    }
    (0..n)
        .map(|i| {
            let heavy = 0.1 + 0.9 * rng.next_f64();
            let mut extra = vec![0.0; n];
            let sprinkles = rng.next_below(n as u64) as usize;
            for _ in 0..sprinkles {
                let col = rng.next_below(n as u64) as usize;
                extra[col] += positive_unit(rng);
            }
            let extra_sum: f64 = extra.iter().sum();
            let mut row = vec![0.0; n];
            if extra_sum > 0.0 {
                let scale = (1.0 - heavy) / extra_sum;
                for (r, e) in row.iter_mut().zip(&extra) {
                    *r = e * scale;
                }
                row[cycle_target[i]] += heavy;
            } else {
                row[cycle_target[i]] = 1.0;
            }
            row
        })
        .collect()
}

fn doubly_stochastic_rows(n: usize, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    // One component is the plain cycle so the support always strongly
    // connects; the rest are random permutations.
    let mut perms: Vec<Vec<usize>> = vec![(0..n).map(|i| (i + 1) % n).collect()];
    for _ in 0..n {
        perms.push(shuffled(n, rng));
    }
    let raw_weights: Vec<f64> = perms.iter().map(|_| positive_unit(rng)).collect();
    let total: f64 = raw_weights.iter().sum();
    let mut rows = vec![vec![0.0; n]; n];
    for (perm, w) in perms.iter().zip(&raw_weights) {
        let weight = w / total;
        for (i, &j) in perm.iter().enumerate() {
            rows[i][j] += weight;
        }
    }
    rows
}

fn split_blocks(n: usize) -> (usize, usize) {
    let first = n / 2;
    (first, n - first)
}

fn block_rows(n: usize, coupling: f64, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    let (n1, _) = split_blocks(n);
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        let (lo, hi) = if i < n1 { (0, n1) } else { (n1, n) };
        let width = hi - lo;
        let raw: Vec<f64> = (0..width).map(|_| positive_unit(rng)).collect();
        let sum: f64 = raw.iter().sum();
        for (offset, x) in raw.iter().enumerate() {
            rows[i][lo + offset] = (1.0 - coupling) * x / sum;
        }
        if coupling > 0.0 {
            let (olo, ohi) = if i < n1 { (n1, n) } else { (0, n1) };
            let share = coupling / (ohi - olo) as f64;
            for j in olo..ohi {
                rows[i][j] = share;
            }
        }
    }
    rows
}

/// Draws the described fixture. Equal specs give bitwise-equal matrices.
pub fn generate(spec: &FixtureSpec) -> Result<StochasticMatrix> {
    let n = spec.n;
    if n == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let mut rng = SplitMix64::new(spec.seed);
    let rows = match spec.kind {
        FixtureKind::RandomDense => dense_rows(n, &mut rng),
        FixtureKind::RandomSparseIrreducible => sparse_rows(n, &mut rng),
        FixtureKind::Cycle => cycle_rows(n),
        FixtureKind::DoublyStochastic => doubly_stochastic_rows(n, &mut rng),
        FixtureKind::ReducibleBlocks => {
            if n < 2 {
                return Err(invalid("block fixtures need at least two states"));
            }
            block_rows(n, 0.0, &mut rng)
        }
        FixtureKind::NearReducible => {
            if n < 2 {
                return Err(invalid("block fixtures need at least two states"));
            }
            if !(0.0..=1.0).contains(&spec.coupling) {
                return Err(invalid(format!(
                    "coupling {} outside [0, 1]",
                    spec.coupling
                )));
            }
            block_rows(n, spec.coupling, &mut rng)
        }
    };
    StochasticMatrix::validate(&rows, DEFAULT_ROW_SUM_TOL, false)
}
