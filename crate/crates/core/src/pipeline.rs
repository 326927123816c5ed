//! End-to-end runs: distances under a chosen metric, embeddings, and the
//! side-by-side comparison report.

use std::str::FromStr;
use std::time::Instant;

use crate::autodist::automorphic_run;
use crate::evaluate::{evaluate_metric, CompareReport, MetricReport};
use crate::graph::{Graph, NodeClassMap};
use crate::matrix::DistanceMatrix;
use crate::mds::{classical_mds, Embedding};
use crate::rolesim::{rolesim_distances, rolesim_similarities, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Automorphic,
    RoleSim,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Automorphic, Metric::RoleSim];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Automorphic => "automorphic",
            Metric::RoleSim => "rolesim",
        }
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "automorphic" => Ok(Metric::Automorphic),
            "rolesim" => Ok(Metric::RoleSim),
            other => Err(format!("unknown metric {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoleSimParams {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RoleSimParams {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Distances produced by one metric, with run metadata.
#[derive(Debug, Clone)]
pub struct MetricRun {
    pub metric: Metric,
    pub distances: DistanceMatrix<f64>,
    /// Refinement steps (automorphic) or RoleSim rounds.
    pub iterations: usize,
    pub converged: bool,
}

pub fn metric_distances(g: &Graph, metric: Metric, rolesim: RoleSimParams) -> Result<MetricRun, Error> {
    Ok(match metric {
        Metric::Automorphic => {
            let run = automorphic_run(g)?;
            MetricRun {
                metric,
                distances: run.distances.to_f64(),
                iterations: run.steps,
                converged: true,
            }
        }
        Metric::RoleSim => {
            let sim = rolesim_similarities(g, rolesim.tol, rolesim.max_iter);
            MetricRun {
                metric,
                distances: rolesim_distances(&sim),
                iterations: sim.iterations_run,
                converged: sim.converged,
            }
        }
    })
}

pub fn embed(g: &Graph, metric: Metric, dims: usize, rolesim: RoleSimParams) -> Result<Embedding, Error> {
    let run = metric_distances(g, metric, rolesim)?;
    Ok(classical_mds(&run.distances, dims)?)
}

/// Runs both metrics, embeds each in 2-D and evaluates class separation.
pub fn compare(g: &Graph, classes: &NodeClassMap, rolesim: RoleSimParams) -> Result<CompareReport, Error> {
    let dims = 2.min(g.node_count()).max(1);
    let mut metrics: Vec<MetricReport> = Vec::new();
    for metric in Metric::ALL {
        let start = Instant::now();
        let run = metric_distances(g, metric, rolesim)?;
        let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        let embedding = if g.is_empty() {
            Embedding {
                node_ids: Vec::new(),
                coords: Vec::new(),
                eigenvalues: Vec::new(),
                stress: 0.0,
            }
        } else {
            classical_mds(&run.distances, dims)?
        };
        let mut report = evaluate_metric(metric.name(), g, classes, &run.distances, &embedding);
        report.iterations = run.iterations;
        report.converged = run.converged;
        report.runtime_ms = runtime_ms;
        metrics.push(report);
    }
    Ok(CompareReport {
        nodes: g.node_count(),
        edges: g.edge_count(),
        classes: classes.classes().into_iter().map(str::to_owned).collect(),
        metrics,
    })
}
