//! Automorphic distances between nodes.
//!
//! Every refinement iteration gets a table of distances between its labels.
//! At iteration 0 the distance of two labels is their absolute degree
//! difference. Later, the distance of two labels is the cost of the optimal
//! assignment between their neighbour label lists under the previous table,
//! the shorter list being padded with the empty label. The distance between
//! two nodes is the distance between their labels in the last iteration
//! before the partition stabilizes.
//!
//! Work is done per label pair rather than per node pair: all nodes sharing
//! a label share its signature.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::assignment::{solve_assignment, CostMatrix};
use crate::graph::{disjoint_union, Graph};
use crate::matrix::{CrossMatrix, DistanceMatrix};
use crate::wl::{initial_labeling, is_stabilized, refine_step, LabelId, Labeling, WlError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutodistError {
    #[error("previous table has no entry for label {0}")]
    MissingEntry(LabelId),
    #[error("label {0} has no signature in the current labeling")]
    MissingSignature(LabelId),
    #[error("table for iteration {prev} cannot feed labeling of iteration {cur}")]
    IterationMismatch { prev: usize, cur: usize },
    #[error("label distance overflowed u64")]
    Overflow,
    #[error("automorphism search limited to {limit} nodes, graph has {n}")]
    OracleTooLarge { n: usize, limit: usize },
    #[error("node index {index} out of range (graph has {n} nodes)")]
    NodeOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Refinement(#[from] WlError),
}

/// Counts [`DistanceTable`]s alive at once during one computation.
#[derive(Debug, Default)]
pub struct TableTracker {
    live: AtomicUsize,
    peak: AtomicUsize,
}

impl TableTracker {
    pub fn new() -> Arc<Self> {
        Arc::new(Self::default())
    }

    pub fn live(&self) -> usize {
        self.live.load(Ordering::SeqCst)
    }

    pub fn peak(&self) -> usize {
        self.peak.load(Ordering::SeqCst)
    }

    fn enter(&self) {
        let now = self.live.fetch_add(1, Ordering::SeqCst) + 1;
        self.peak.fetch_max(now, Ordering::SeqCst);
    }

    fn leave(&self) {
        self.live.fetch_sub(1, Ordering::SeqCst);
    }
}

/// Symmetric distances between the labels of one iteration, the empty label
/// included. Stored as a packed upper triangle.
#[derive(Debug)]
pub struct DistanceTable {
    iteration: usize,
    labels: Vec<LabelId>,
    index: HashMap<LabelId, usize>,
    packed: Vec<u64>,
    tracker: Option<Arc<TableTracker>>,
}

impl Clone for DistanceTable {
    fn clone(&self) -> Self {
        if let Some(t) = &self.tracker {
            t.enter();
        }
        Self {
            iteration: self.iteration,
            labels: self.labels.clone(),
            index: self.index.clone(),
            packed: self.packed.clone(),
            tracker: self.tracker.clone(),
        }
    }
}

impl Drop for DistanceTable {
    fn drop(&mut self) {
        if let Some(t) = &self.tracker {
            t.leave();
        }
    }
}

impl PartialEq for DistanceTable {
    fn eq(&self, other: &Self) -> bool {
        self.iteration == other.iteration && self.labels == other.labels && self.packed == other.packed
    }
}

impl Eq for DistanceTable {}

#[inline]
fn packed_index(size: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // Row r holds columns r..size, so row i starts after sum_{r<i} (size - r).
    i * size - i * i.saturating_sub(1) / 2 + (j - i)
}

impl DistanceTable {
    /// Zero-filled table over `labels` (sorted, deduplicated; the empty label
    /// is added when missing).
    fn zeroed(iteration: usize, mut labels: Vec<LabelId>) -> Self {
        labels.push(LabelId::EMPTY);
        labels.sort_unstable();
        labels.dedup();
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let size = labels.len();
        Self {
            iteration,
            labels,
            index,
            packed: vec![0; size * (size + 1) / 2],
            tracker: None,
        }
    }

    /// Builds a table from explicit `(a, b, distance)` entries. Pairs not
    /// listed and the diagonal are zero.
    pub fn from_entries(
        iteration: usize,
        labels: impl IntoIterator<Item = LabelId>,
        entries: impl IntoIterator<Item = (LabelId, LabelId, u64)>,
    ) -> Result<Self, AutodistError> {
        let mut table = Self::zeroed(iteration, labels.into_iter().collect());
        for (a, b, d) in entries {
            let i = table.slot(a)?;
            let j = table.slot(b)?;
            if i != j {
                table.set_slots(i, j, d);
            }
        }
        Ok(table)
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Labels covered by the table, ascending; the first is always the empty
    /// label.
    pub fn labels(&self) -> &[LabelId] {
        &self.labels
    }

    pub fn contains(&self, label: LabelId) -> bool {
        self.index.contains_key(&label)
    }

    pub fn get(&self, a: LabelId, b: LabelId) -> Option<u64> {
        let i = *self.index.get(&a)?;
        let j = *self.index.get(&b)?;
        Some(self.at(i, j))
    }

    fn slot(&self, label: LabelId) -> Result<usize, AutodistError> {
        self.index
            .get(&label)
            .copied()
            .ok_or(AutodistError::MissingEntry(label))
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.packed[packed_index(self.labels.len(), i, j)]
    }

    fn set_slots(&mut self, i: usize, j: usize, d: u64) {
        let k = packed_index(self.labels.len(), i, j);
        self.packed[k] = d;
    }

    /// Attaches the table to a tracker so its lifetime is counted.
    pub fn track(mut self, tracker: &Arc<TableTracker>) -> Self {
        if self.tracker.is_none() {
            tracker.enter();
            self.tracker = Some(Arc::clone(tracker));
        }
        self
    }
}

/// Iteration-0 table: `d(a, b) = |deg(a) - deg(b)|`, with the empty label
/// standing for degree 0.
pub fn initial_table(
    labeling: &Labeling,
    degrees: &std::collections::BTreeMap<LabelId, usize>,
) -> Result<DistanceTable, AutodistError> {
    if labeling.iteration() != 0 {
        return Err(AutodistError::IterationMismatch {
            prev: 0,
            cur: labeling.iteration(),
        });
    }
    let mut labels: Vec<LabelId> = labeling.active_labels().to_vec();
    labels.extend(degrees.keys().copied());
    let mut table = DistanceTable::zeroed(0, labels);
    let degree_of: Vec<u64> = table
        .labels
        .iter()
        .map(|l| {
            if l.is_empty() {
                Ok(0)
            } else {
                degrees
                    .get(l)
                    .map(|&d| d as u64)
                    .ok_or(AutodistError::MissingEntry(*l))
            }
        })
        .collect::<Result<_, _>>()?;
    for i in 0..degree_of.len() {
        for j in i + 1..degree_of.len() {
            table.set_slots(i, j, degree_of[i].abs_diff(degree_of[j]));
        }
    }
    Ok(table)
}

/// Table for `cur` computed from the previous iteration's table.
///
/// Label pairs are independent and are evaluated on the current rayon pool.
pub fn next_table(prev: &DistanceTable, cur: &Labeling) -> Result<DistanceTable, AutodistError> {
    if cur.iteration() != prev.iteration + 1 {
        return Err(AutodistError::IterationMismatch {
            prev: prev.iteration,
            cur: cur.iteration(),
        });
    }
    let mut table = DistanceTable::zeroed(cur.iteration(), cur.active_labels().to_vec());

    // Neighbour lists resolved to slots of the previous table; slot 0 is the
    // empty label there.
    let empty_slot = prev.slot(LabelId::EMPTY)?;
    let mut neighbor_slots: Vec<Vec<usize>> = vec![Vec::new(); table.labels.len()];
    for (i, &label) in table.labels.iter().enumerate() {
        if label.is_empty() {
            continue;
        }
        let sig = cur
            .signature(label)
            .ok_or(AutodistError::MissingSignature(label))?;
        neighbor_slots[i] = sig
            .neighbors
            .iter()
            .map(|&n| prev.slot(n))
            .collect::<Result<_, _>>()?;
    }

    let size = table.labels.len();
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
        .collect();
    let empty_index = table.slot(LabelId::EMPTY)?;
    let values: Vec<Result<u64, AutodistError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            if i == empty_index || j == empty_index {
                let other = if i == empty_index { j } else { i };
                empty_row_distance(prev, empty_slot, &neighbor_slots[other])
            } else {
                assignment_distance(prev, empty_slot, &neighbor_slots[i], &neighbor_slots[j])
            }
        })
        .collect();
    for (&(i, j), value) in pairs.iter().zip(values) {
        table.set_slots(i, j, value?);
    }
    Ok(table)
}

/// Against an empty neighbourhood every neighbour is matched to a virtual
/// isolated node, so the optimum is forced.
fn empty_row_distance(prev: &DistanceTable, empty: usize, slots: &[usize]) -> Result<u64, AutodistError> {
    slots.iter().try_fold(0u64, |acc, &s| {
        acc.checked_add(prev.at(empty, s)).ok_or(AutodistError::Overflow)
    })
}

fn assignment_distance(
    prev: &DistanceTable,
    empty: usize,
    a: &[usize],
    b: &[usize],
) -> Result<u64, AutodistError> {
    let size = a.len().max(b.len());
    if size == 0 {
        return Ok(0);
    }
    let pick = |list: &[usize], k: usize| list.get(k).copied().unwrap_or(empty);
    let costs = CostMatrix::from_fn(size, size, |r, c| prev.at(pick(a, r), pick(b, c)))
        .expect("square non-empty cost matrix");
    let matching = solve_assignment(&costs);
    // A total near u64::MAX cannot feed another iteration safely.
    if matching.total_cost > u64::MAX / 2 {
        return Err(AutodistError::Overflow);
    }
    Ok(matching.total_cost)
}

/// Full result of one automorphic distance computation.
#[derive(Debug)]
pub struct AutodistRun {
    pub distances: DistanceMatrix<u64>,
    /// Stable labeling whose table produced the distances.
    pub canonical: Labeling,
    /// Refinement steps run, including the one confirming stability.
    pub steps: usize,
    /// Largest number of distance tables alive at any point.
    pub peak_live_tables: usize,
}

/// Pairwise automorphic distances of all nodes of `g`.
pub fn automorphic_distances(g: &Graph) -> Result<DistanceMatrix<u64>, AutodistError> {
    automorphic_run(g).map(|run| run.distances)
}

/// Like [`automorphic_distances`] but also reports the canonical labeling,
/// the step count and the table high-water mark.
pub fn automorphic_run(g: &Graph) -> Result<AutodistRun, AutodistError> {
    let tracker = TableTracker::new();
    let bound = g.node_count() + 1;

    let mut labels = initial_labeling(g);
    let mut table = initial_table(&labels, &labels.label_degrees(g))?.track(&tracker);
    let mut steps = 0;
    loop {
        let next = refine_step(g, &labels);
        steps += 1;
        if is_stabilized(&labels, &next) {
            break;
        }
        if steps >= bound {
            return Err(WlError::IterationBound { bound }.into());
        }
        // Both tables are alive here; the old one is dropped on reassignment.
        let next_t = next_table(&table, &next)?.track(&tracker);
        table = next_t;
        labels = next;
    }

    let n = g.node_count();
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let d = table
                .get(labels.label(x), labels.label(y))
                .ok_or(AutodistError::MissingEntry(labels.label(x)))?;
            values.push(d);
        }
    }
    drop(table);
    Ok(AutodistRun {
        distances: DistanceMatrix::from_values(g.node_ids().to_vec(), values),
        canonical: labels,
        steps,
        peak_live_tables: tracker.peak(),
    })
}

/// Distances between every node of `g1` and every node of `g2`, computed on
/// their disjoint union.
pub fn cross_network_distances(g1: &Graph, g2: &Graph) -> Result<CrossMatrix<u64>, AutodistError> {
    let union = disjoint_union(g1, g2);
    let full = automorphic_distances(&union)?;
    let (n1, n2) = (g1.node_count(), g2.node_count());
    let mut values = Vec::with_capacity(n1 * n2);
    for x in 0..n1 {
        for y in 0..n2 {
            values.push(full.get(x, n1 + y));
        }
    }
    Ok(CrossMatrix::from_values(
        g1.node_ids().to_vec(),
        g2.node_ids().to_vec(),
        values,
    ))
}

/// Largest graph accepted by [`automorphism_oracle`].
pub const ORACLE_LIMIT: usize = 8;

/// Exhaustive search for an automorphism of `g` mapping `x` to `y`.
pub fn automorphism_oracle(g: &Graph, x: usize, y: usize) -> Result<bool, AutodistError> {
    let n = g.node_count();
    if n > ORACLE_LIMIT {
        return Err(AutodistError::OracleTooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    for index in [x, y] {
        if index >= n {
            return Err(AutodistError::NodeOutOfRange { index, n });
        }
    }
    if g.neighbors(x).len() != g.neighbors(y).len() {
        return Ok(false);
    }

    // Place x first (forced onto y), then the remaining nodes ascending,
    // checking adjacency against every node already placed.
    let order: Vec<usize> = std::iter::once(x).chain((0..n).filter(|&v| v != x)).collect();
    let mut image = vec![usize::MAX; n];
    let mut taken = vec![false; n];

    fn extend(
        g: &Graph,
        order: &[usize],
        depth: usize,
        first_target: usize,
        image: &mut [usize],
        taken: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        let candidates: Vec<usize> = if depth == 0 {
            vec![first_target]
        } else {
            (0..g.node_count()).filter(|&c| !taken[c]).collect()
        };
        for c in candidates {
            if g.neighbors(v).len() != g.neighbors(c).len() {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| g.has_edge(u, v) == g.has_edge(image[u], c));
            if !consistent {
                continue;
            }
            image[v] = c;
            taken[c] = true;
            if extend(g, order, depth + 1, first_target, image, taken) {
                return true;
            }
            taken[c] = false;
            image[v] = usize::MAX;
        }
        false
    }

    Ok(extend(g, &order, 0, y, &mut image, &mut taken))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn l(v: u32) -> LabelId {
        LabelId(v)
    }

    fn degree_table() -> DistanceTable {
        let degrees: BTreeMap<LabelId, usize> = (1..=4).map(|d| (l(d), d as usize)).collect();
        let labeling = Labeling::from_signatures(0, []).unwrap();
        initial_table(&labeling, &degrees).unwrap()
    }

    #[test]
    fn packed_index_is_a_bijection() {
        for size in 1..7 {
            let mut seen = vec![false; size * (size + 1) / 2];
            for i in 0..size {
                for j in i..size {
                    let k = packed_index(size, i, j);
                    assert!(!seen[k]);
                    seen[k] = true;
                    assert_eq!(k, packed_index(size, j, i));
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }

    #[test]
    fn initial_table_is_degree_difference() {
        let t = degree_table();
        assert_eq!(t.labels(), [l(0), l(1), l(2), l(3), l(4)]);
        assert_eq!(t.get(l(1), l(4)), Some(3));
        assert_eq!(t.get(LabelId::EMPTY, l(4)), Some(4));
        for &a in t.labels() {
            assert_eq!(t.get(a, a), Some(0));
        }
    }

    #[test]
    fn empty_row_closed_form_matches_padded_assignment() {
        let t = degree_table();
        let slots = [1usize, 1, 2, 4];
        let closed = empty_row_distance(&t, 0, &slots).unwrap();
        let solved = assignment_distance(&t, 0, &[], &slots).unwrap();
        assert_eq!(closed, 8);
        assert_eq!(closed, solved);
    }

    #[test]
    fn next_table_rejects_unknown_neighbor_labels() {
        let t = degree_table();
        let cur = Labeling::from_signatures(
            1,
            [(l(5), crate::wl::Signature::new(l(2), vec![l(9)]))],
        )
        .unwrap();
        assert_eq!(next_table(&t, &cur), Err(AutodistError::MissingEntry(l(9))));
        let wrong_iteration = Labeling::from_signatures(3, []).unwrap();
        assert!(matches!(
            next_table(&t, &wrong_iteration),
            Err(AutodistError::IterationMismatch { .. })
        ));
    }

    #[test]
    fn cycle_distances_vanish() {
        let c6 = Graph::from_index_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let d = automorphic_distances(&c6).unwrap();
        assert!(d.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn path_distances() {
        // a-b-c: ends have degree 1, middle degree 2.
        let g = Graph::from_index_edges(3, [(0, 1), (1, 2)]).unwrap();
        let run = automorphic_run(&g).unwrap();
        assert_eq!(run.distances.get(0, 2), 0);
        assert_eq!(run.distances.get(0, 1), 1);
        assert_eq!(run.steps, 1);
        assert!(run.peak_live_tables <= 2);
    }

    #[test]
    fn trivial_graphs() {
        assert_eq!(automorphic_distances(&Graph::empty()).unwrap().len(), 0);
        let one = Graph::from_index_edges(1, []).unwrap();
        let d = automorphic_distances(&one).unwrap();
        assert_eq!(d.values(), [0]);
    }

    #[test]
    fn isolated_node_against_star() {
        // Single node vs a star with three leaves, on the union.
        let lone = Graph::from_index_edges(1, []).unwrap();
        let star = Graph::from_index_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let cross = cross_network_distances(&lone, &star).unwrap();
        // The star stabilizes at iteration 0: centre degree 3, leaves 1.
        assert_eq!(cross.get(0, 0), 3);
        assert_eq!(cross.get(0, 1), 1);
    }

    #[test]
    fn oracle_basics() {
        let p3 = Graph::from_index_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(automorphism_oracle(&p3, 0, 2).unwrap());
        assert!(!automorphism_oracle(&p3, 0, 1).unwrap());
        assert!(automorphism_oracle(&p3, 1, 1).unwrap());
        let c6 = Graph::from_index_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        for y in 0..6 {
            assert!(automorphism_oracle(&c6, 0, y).unwrap());
        }
        let big = Graph::from_index_edges(9, []).unwrap();
        assert!(matches!(
            automorphism_oracle(&big, 0, 1),
            Err(AutodistError::OracleTooLarge { n: 9, .. })
        ));
    }

    #[test]
    fn tracker_counts_clones_and_drops() {
        let tracker = TableTracker::new();
        let t = degree_table().track(&tracker);
        let c = t.clone();
        assert_eq!(tracker.live(), 2);
        drop(t);
        drop(c);
        assert_eq!(tracker.live(), 0);
        assert_eq!(tracker.peak(), 2);
    }
}
