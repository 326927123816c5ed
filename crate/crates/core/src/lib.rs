//! Role-based distances between nodes of undirected graphs.
//!
//! The central piece is the automorphic distance ([`autodist`]): nodes are
//! refined by Weisfeiler-Lehman colour refinement ([`wl`]), each iteration's
//! labels get a distance table built from optimal neighbour assignments
//! ([`assignment`]), and the distance between two nodes is the distance
//! between their stable labels. Distances are integers and form a metric on
//! the stable labels.
//!
//! [`rolesim`] provides the RoleSim baseline, [`mds`] turns either distance
//! into coordinates, and [`evaluate`] scores how well the coordinates
//! separate known node classes.
//!
//! ```
//! use rolemetric::{automorphic_distances, parse_edge_list};
//!
//! let g = parse_edge_list("a b\nb c\nc d").unwrap();
//! let d = automorphic_distances(&g).unwrap();
//! assert_eq!(d.get(0, 3), 0); // the two ends of a path play the same role
//! assert!(d.get(0, 1) > 0);
//! ```

pub mod assignment;
pub mod autodist;
pub mod datasets;
pub mod evaluate;
pub mod graph;
pub mod matrix;
pub mod mds;
pub mod output;
pub mod pipeline;
pub mod rolesim;
pub mod wl;

pub use assignment::{brute_force_assignment, solve_assignment, CostMatrix, Matching};
pub use autodist::{
    automorphic_distances, automorphic_run, automorphism_oracle, cross_network_distances, initial_table,
    next_table, AutodistError, AutodistRun, DistanceTable,
};
pub use graph::{
    disjoint_union, parse_classes, parse_edge_list, parse_pajek, parse_pajek_partition, Graph, GraphError,
    NodeClassMap,
};
pub use matrix::{CrossMatrix, DistanceMatrix};
pub use mds::{classical_mds, Embedding, MdsError};
pub use pipeline::{Metric, RoleSimParams};
pub use rolesim::{rolesim_distances, rolesim_similarities, SimilarityMatrix};
pub use wl::{canonical_labeling, initial_labeling, is_stabilized, refine_step, LabelId, Labeling, Signature};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "ROLEMETRIC_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Autodist(#[from] AutodistError),
    #[error(transparent)]
    Mds(#[from] MdsError),
    #[error(transparent)]
    Refinement(#[from] wl::WlError),
    #[error("invalid thread count {0:?}")]
    Threads(String),
}

/// Reads [`THREADS_ENV`]. Unset or empty means "no cap".
pub fn threads_from_env() -> Result<Option<usize>, Error> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or(Error::Threads(v)),
        Err(_) => Ok(None),
    }
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool
/// when `threads` is `None`. Results never depend on the worker count.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
    }
}
