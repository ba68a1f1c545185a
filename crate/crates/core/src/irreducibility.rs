//! Support-graph analysis: strong connectivity and minimal positive powers.
//!
//! A chain is irreducible exactly when its support graph (an edge `i -> j`
//! wherever `p(i, j)` exceeds the positivity threshold) is strongly
//! connected, which in turn holds exactly when for every ordered pair
//! `(i, j)` some power `P^k` has a positive `(i, j)` entry. Strong
//! connectivity is decided by two breadth-first searches from state 0, one
//! along edges and one against them, in O(n^2) total.

use crate::error::{Error, Result};
use crate::matrix::StochasticMatrix;
use std::collections::VecDeque;

/// Default positivity threshold: any strictly positive entry is an edge.
pub const DEFAULT_POS_THRESHOLD: f64 = 0.0;

/// Directed support graph of a stochastic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyGraph {
    n: usize,
    // Row-major n * n; edges[i * n + j] means i -> j.
    edges: Vec<bool>,
}

impl AdjacencyGraph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the edge `i -> j` is present.
    pub fn edge(&self, i: usize, j: usize) -> bool {
        self.edges[i * self.n + j]
    }

    /// Successors of `i` in increasing order.
    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.edges[i * self.n..(i + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(j, &e)| if e { Some(j) } else { None })
    }
}

/// `i -> j` is an edge whenever `p(i, j) > pos_threshold`. Every vertex
/// has at least one successor when the threshold is 0, because each row
/// sums to 1.
pub fn build_graph(p: &StochasticMatrix, pos_threshold: f64) -> AdjacencyGraph {
    let n = p.n();
    let mut edges = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            edges[i * n + j] = p.entry(i, j) > pos_threshold;
        }
    }
    AdjacencyGraph { n, edges }
}

/// Outcome of the irreducibility check.
///
/// When the verdict is positive, `min_powers` (if computed) lists for each
/// ordered pair `(i, j)` the smallest `k >= 1` with a length-`k` walk from
/// `i` to `j`; every value is at most `n`. When negative, `witness` names
/// a pair with no directed path at all.
#[derive(Debug, Clone, PartialEq)]
pub struct IrreducibilityCertificate {
    n: usize,
    verdict: bool,
    witness: Option<(usize, usize)>,
    min_powers: Option<Vec<usize>>,
}

impl IrreducibilityCertificate {
    /// Whether the chain is irreducible.
    pub fn verdict(&self) -> bool {
        self.verdict
    }

    /// A pair `(i, j)` with no directed path from `i` to `j`, present
    /// exactly when the verdict is negative.
    pub fn witness(&self) -> Option<(usize, usize)> {
        self.witness
    }

    /// The full minimal-power table, row-major, when it was computed.
    pub fn min_powers(&self) -> Option<&[usize]> {
        self.min_powers.as_deref()
    }

    /// Convenience lookup into the minimal-power table.
    pub fn min_power(&self, i: usize, j: usize) -> Option<usize> {
        self.min_powers.as_ref().map(|t| t[i * self.n + j])
    }
}

fn reachable_forward(g: &AdjacencyGraph, start: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in g.out_neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

fn reachable_backward(g: &AdjacencyGraph, start: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for u in 0..g.n() {
            if !seen[u] && g.edge(u, v) {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Minimal walk lengths (>= 1) from `i` to every vertex; `None` where no
/// walk exists. The diagonal entry is the shortest cycle through `i`.
fn walk_distances(g: &AdjacencyGraph, i: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for j in g.out_neighbors(i) {
        if dist[j].is_none() {
            dist[j] = Some(1);
            queue.push_back(j);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for w in g.out_neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Decides irreducibility with two breadth-first searches from state 0.
/// The certificate carries a verdict and, when reducible, a witness pair;
/// the minimal-power table is left out (see [`full_certificate`]).
pub fn is_irreducible(p: &StochasticMatrix) -> IrreducibilityCertificate {
    let g = build_graph(p, DEFAULT_POS_THRESHOLD);
    let n = g.n();
    let forward = reachable_forward(&g, 0);
    if let Some(j) = (0..n).find(|&j| !forward[j]) {
        return IrreducibilityCertificate {
            n,
            verdict: false,
            witness: Some((0, j)),
            min_powers: None,
        };
    }
    let backward = reachable_backward(&g, 0);
    if let Some(i) = (0..n).find(|&i| !backward[i]) {
        return IrreducibilityCertificate {
            n,
            verdict: false,
            witness: Some((i, 0)),
            min_powers: None,
        };
    }
    IrreducibilityCertificate {
        n,
        verdict: true,
        witness: None,
        min_powers: None,
    }
}

/// Like [`is_irreducible`], but when the chain is irreducible the
/// certificate also carries the full minimal-power table, computed with
/// one breadth-first search per state.
pub fn full_certificate(p: &StochasticMatrix) -> IrreducibilityCertificate {
    let mut cert = is_irreducible(p);
    if !cert.verdict {
        return cert;
    }
    let g = build_graph(p, DEFAULT_POS_THRESHOLD);
    let n = g.n();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for (j, d) in walk_distances(&g, i).into_iter().enumerate() {
            // Irreducibility guarantees a walk for every pair.
            table[i * n + j] = d.expect("irreducible graph has a walk between every pair");
        }
    }
    cert.min_powers = Some(table);
    cert
}

/// Smallest `k >= 1` such that `P^k` has a positive `(i, j)` entry, i.e.
/// the length of the shortest directed walk from `i` to `j`; `None` when
/// no walk exists. For `i = j` this is the shortest cycle through `i`.
pub fn min_positive_power(p: &StochasticMatrix, i: usize, j: usize) -> Result<Option<usize>> {
    let n = p.n();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    let g = build_graph(p, DEFAULT_POS_THRESHOLD);
    Ok(walk_distances(&g, i)[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::DEFAULT_ROW_SUM_TOL;

    fn matrix(rows: &[Vec<f64>]) -> StochasticMatrix {
        StochasticMatrix::validate(rows, DEFAULT_ROW_SUM_TOL, false).unwrap()
    }

    fn cycle(n: usize) -> StochasticMatrix {
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut row = vec![0.0; n];
                row[(i + 1) % n] = 1.0;
                row
            })
            .collect();
        matrix(&rows)
    }

    #[test]
    fn graph_respects_threshold() {
        let p = matrix(&[vec![0.5, 0.5], vec![1e-12, 1.0]]);
        let g = build_graph(&p, 1e-9);
        assert!(g.edge(0, 0) && g.edge(0, 1) && g.edge(1, 1));
        assert!(!g.edge(1, 0));
        let strict = build_graph(&p, 0.0);
        assert!(strict.edge(1, 0));
    }

    #[test]
    fn identity_is_reducible_with_witness() {
        let cert = is_irreducible(&matrix(&[vec![1.0, 0.0], vec![0.0, 1.0]]));
        assert!(!cert.verdict());
        assert_eq!(cert.witness(), Some((0, 1)));
    }

    #[test]
    fn absorbing_state_gives_backward_witness() {
        let cert = is_irreducible(&matrix(&[vec![0.5, 0.5], vec![0.0, 1.0]]));
        assert!(!cert.verdict());
        assert_eq!(cert.witness(), Some((1, 0)));
    }

    #[test]
    fn swap_chain_is_irreducible() {
        let cert = is_irreducible(&cycle(2));
        assert!(cert.verdict());
        assert_eq!(cert.witness(), None);
    }

    #[test]
    fn cycles_are_irreducible_up_to_twelve() {
        for n in 2..=12 {
            assert!(is_irreducible(&cycle(n)).verdict(), "cycle n={n}");
        }
    }

    #[test]
    fn min_power_on_three_cycle() {
        let p = cycle(3);
        assert_eq!(min_positive_power(&p, 0, 2).unwrap(), Some(2));
        assert_eq!(min_positive_power(&p, 0, 1).unwrap(), Some(1));
        assert_eq!(min_positive_power(&p, 0, 0).unwrap(), Some(3));
    }

    #[test]
    fn min_power_swap_diagonal_is_two() {
        assert_eq!(min_positive_power(&cycle(2), 0, 0).unwrap(), Some(2));
    }

    #[test]
    fn min_power_absent_without_a_path() {
        let p = matrix(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(min_positive_power(&p, 0, 1).unwrap(), None);
    }

    #[test]
    fn min_power_checks_indices() {
        let p = cycle(2);
        assert_eq!(
            min_positive_power(&p, 0, 5),
            Err(Error::IndexOutOfRange { index: 5, n: 2 })
        );
    }

    #[test]
    fn full_certificate_tabulates_three_cycle() {
        let cert = full_certificate(&cycle(3));
        assert!(cert.verdict());
        let expected = [[3, 1, 2], [2, 3, 1], [1, 2, 3]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(cert.min_power(i, j), Some(expected[i][j]));
            }
        }
    }

    #[test]
    fn full_certificate_bounds_hold() {
        let cert = full_certificate(&cycle(12));
        let table = cert.min_powers().unwrap();
        assert!(table.iter().all(|&k| (1..=24).contains(&k)));
    }

    #[test]
    fn full_certificate_skips_table_when_reducible() {
        let cert = full_certificate(&matrix(&[vec![1.0, 0.0], vec![0.0, 1.0]]));
        assert!(!cert.verdict());
        assert!(cert.min_powers().is_none());
    }
}
