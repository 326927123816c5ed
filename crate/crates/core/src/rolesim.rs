//! RoleSim similarity with decay factor 0, used as a baseline.
//!
//! Starting from all ones, every round sets
//! `s(x, y) = max_M Σ_{(u,v) ∈ M} s(u, v) / max(deg x, deg y)`
//! where `M` ranges over matchings between the two neighbourhoods of size
//! `min(deg x, deg y)`. The maximum-similarity matching is found with the
//! minimum-cost solver on integer costs `round((1 - s) * 10⁶)`; the matched
//! similarities themselves are summed in floating point.

use rayon::prelude::*;

use crate::assignment::{solve_assignment, CostMatrix};
use crate::graph::Graph;
use crate::matrix::DistanceMatrix;

pub const DEFAULT_TOL: f64 = 1e-4;
pub const DEFAULT_MAX_ITER: usize = 100;

/// Resolution of the integer costs handed to the assignment solver.
const COST_SCALE: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    pub similarities: DistanceMatrix<f64>,
    pub iterations_run: usize,
    pub converged: bool,
}

impl SimilarityMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.similarities.get(i, j)
    }

    pub fn len(&self) -> usize {
        self.similarities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.similarities.is_empty()
    }
}

/// Iterates RoleSim until the largest change drops below `tol` or
/// `max_iter` rounds have run.
pub fn rolesim_similarities(g: &Graph, tol: f64, max_iter: usize) -> SimilarityMatrix {
    let n = g.node_count();
    let mut s = vec![1.0f64; n * n];
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let mut iterations_run = 0;
    let mut converged = n < 2;

    while !converged && iterations_run < max_iter {
        let updated: Vec<f64> = pairs
            .par_iter()
            .map(|&(x, y)| pair_similarity(g, &s, n, x, y))
            .collect();
        let mut next = vec![1.0f64; n * n];
        let mut max_change = 0.0f64;
        for (&(x, y), value) in pairs.iter().zip(updated) {
            max_change = max_change.max((value - s[x * n + y]).abs());
            next[x * n + y] = value;
            next[y * n + x] = value;
        }
        s = next;
        iterations_run += 1;
        converged = max_change < tol;
    }

    SimilarityMatrix {
        similarities: DistanceMatrix::from_values(g.node_ids().to_vec(), s),
        iterations_run,
        converged,
    }
}

fn pair_similarity(g: &Graph, s: &[f64], n: usize, x: usize, y: usize) -> f64 {
    let (nx, ny) = (g.neighbors(x), g.neighbors(y));
    match (nx.len(), ny.len()) {
        (0, 0) => return 1.0,
        (0, _) | (_, 0) => return 0.0,
        _ => {}
    }
    let costs = CostMatrix::from_fn(nx.len(), ny.len(), |r, c| {
        let sim = s[nx[r] * n + ny[c]].clamp(0.0, 1.0);
        ((1.0 - sim) * COST_SCALE).round() as u64
    })
    .expect("non-empty neighbourhoods");
    let matching = solve_assignment(&costs);
    let total: f64 = matching
        .pairs
        .iter()
        .map(|&(r, c)| s[nx[r] * n + ny[c]])
        .sum();
    (total / nx.len().max(ny.len()) as f64).clamp(0.0, 1.0)
}

/// Complementary distance `1 - s`.
pub fn rolesim_distances(sim: &SimilarityMatrix) -> DistanceMatrix<f64> {
    DistanceMatrix::from_fn(sim.similarities.ids().to_vec(), |i, j| {
        if i == j {
            0.0
        } else {
            (1.0 - sim.get(i, j)).clamp(0.0, 1.0)
        }
    })
}
