//! One-dimensional Weisfeiler-Lehman colour refinement.
//!
//! Iteration 0 labels every node by its degree. Each refinement step gives a
//! node the signature `(own label, sorted neighbour labels)` and renames the
//! distinct signatures to fresh integers. Isolated nodes carry the reserved
//! empty label [`LabelId::EMPTY`] throughout and never enter a signature.
//!
//! Fresh labels are handed out in sorted signature order starting right
//! after the previous iteration's largest label, so equal graphs yield
//! bit-identical labelings and labels of different iterations never collide.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WlError {
    #[error("refinement did not stabilize within {bound} steps")]
    IterationBound { bound: usize },
    #[error("signature for label {label} is missing or inconsistent")]
    InconsistentSignature { label: LabelId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LabelId(pub u32);

impl LabelId {
    /// Label of isolated nodes and of virtual padding nodes.
    pub const EMPTY: LabelId = LabelId(0);

    pub fn is_empty(self) -> bool {
        self == Self::EMPTY
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("∅")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Own label from the previous iteration plus the sorted neighbour labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub parent: LabelId,
    pub neighbors: Vec<LabelId>,
}

impl Signature {
    pub fn new(parent: LabelId, mut neighbors: Vec<LabelId>) -> Self {
        neighbors.sort_unstable();
        Self { parent, neighbors }
    }
}

/// Labels of one refinement iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    iteration: usize,
    label_of: Vec<LabelId>,
    signature_of: BTreeMap<LabelId, Signature>,
    active_labels: Vec<LabelId>,
    max_label: u32,
}

impl Labeling {
    /// Labeling that carries only per-label signatures and no nodes. Used to
    /// evaluate distance tables for hand-written neighbour multisets.
    pub fn from_signatures(
        iteration: usize,
        signatures: impl IntoIterator<Item = (LabelId, Signature)>,
    ) -> Result<Self, WlError> {
        let signature_of: BTreeMap<LabelId, Signature> = signatures
            .into_iter()
            .map(|(label, sig)| (label, Signature::new(sig.parent, sig.neighbors)))
            .collect();
        if let Some(&label) = signature_of.keys().find(|l| l.is_empty()) {
            return Err(WlError::InconsistentSignature { label });
        }
        let active_labels: Vec<LabelId> = signature_of.keys().copied().collect();
        let max_label = active_labels.last().map_or(0, |l| l.0);
        Ok(Self {
            iteration,
            label_of: Vec::new(),
            signature_of,
            active_labels,
            max_label,
        })
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn label(&self, v: usize) -> LabelId {
        self.label_of[v]
    }

    pub fn labels(&self) -> &[LabelId] {
        &self.label_of
    }

    /// Signature that produced `label`. Defined for every active label from
    /// iteration 1 on.
    pub fn signature(&self, label: LabelId) -> Option<&Signature> {
        self.signature_of.get(&label)
    }

    /// Distinct non-empty labels, ascending.
    pub fn active_labels(&self) -> &[LabelId] {
        &self.active_labels
    }

    /// Largest label value handed out so far, including earlier iterations.
    pub fn max_label(&self) -> u32 {
        self.max_label
    }

    /// Number of classes in the induced partition, counting the empty class
    /// when some node is isolated.
    pub fn class_count(&self) -> usize {
        self.active_labels.len() + usize::from(self.label_of.iter().any(|l| l.is_empty()))
    }

    /// Node indices grouped by label, groups ordered by label value.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<LabelId, Vec<usize>> = BTreeMap::new();
        for (v, &label) in self.label_of.iter().enumerate() {
            groups.entry(label).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Degree represented by each active label. Only meaningful for
    /// iteration 0, where labels are degrees.
    pub fn label_degrees(&self, g: &Graph) -> BTreeMap<LabelId, usize> {
        let mut out = BTreeMap::new();
        for (v, &label) in self.label_of.iter().enumerate() {
            out.insert(label, g.neighbors(v).len());
        }
        out
    }
}

/// Iteration-0 labeling: the label of a node is its degree, and isolated
/// nodes get [`LabelId::EMPTY`].
pub fn initial_labeling(g: &Graph) -> Labeling {
    let label_of: Vec<LabelId> = g
        .degrees()
        .into_iter()
        .map(|d| LabelId(u32::try_from(d).expect("degree fits in u32")))
        .collect();
    let active: BTreeSet<LabelId> = label_of.iter().copied().filter(|l| !l.is_empty()).collect();
    let active_labels: Vec<LabelId> = active.into_iter().collect();
    let max_label = active_labels.last().map_or(0, |l| l.0);
    Labeling {
        iteration: 0,
        label_of,
        signature_of: BTreeMap::new(),
        active_labels,
        max_label,
    }
}

/// One refinement step.
pub fn refine_step(g: &Graph, prev: &Labeling) -> Labeling {
    let signatures: Vec<Option<Signature>> = (0..g.node_count())
        .into_par_iter()
        .map(|v| {
            let neighbors = g.neighbors(v);
            if neighbors.is_empty() {
                return None;
            }
            let labels = neighbors.iter().map(|&u| prev.label_of[u]).collect();
            Some(Signature::new(prev.label_of[v], labels))
        })
        .collect();

    let distinct: BTreeSet<&Signature> = signatures.iter().flatten().collect();
    let mut next_value = prev.max_label;
    let fresh: HashMap<&Signature, LabelId> = distinct
        .into_iter()
        .map(|sig| {
            next_value += 1;
            (sig, LabelId(next_value))
        })
        .collect();

    let label_of: Vec<LabelId> = signatures
        .iter()
        .map(|sig| sig.as_ref().map_or(LabelId::EMPTY, |s| fresh[s]))
        .collect();
    let signature_of: BTreeMap<LabelId, Signature> = fresh
        .iter()
        .map(|(sig, &label)| (label, (*sig).clone()))
        .collect();
    let active_labels = signature_of.keys().copied().collect();
    Labeling {
        iteration: prev.iteration + 1,
        label_of,
        signature_of,
        active_labels,
        max_label: next_value,
    }
}

/// True when `cur` induces the same partition as `prev`.
///
/// Keeps a map from each previous label to the current label it became and
/// reports a conflict as soon as one previous label splits. The reverse map
/// catches merges, which a genuine refinement step never produces.
pub fn is_stabilized(prev: &Labeling, cur: &Labeling) -> bool {
    if prev.label_of.len() != cur.label_of.len() {
        return false;
    }
    let mut forward: HashMap<LabelId, LabelId> = HashMap::with_capacity(prev.active_labels.len());
    let mut backward: HashMap<LabelId, LabelId> = HashMap::with_capacity(cur.active_labels.len());
    for (&old, &new) in prev.label_of.iter().zip(&cur.label_of) {
        if *forward.entry(old).or_insert(new) != new || *backward.entry(new).or_insert(old) != old {
            return false;
        }
    }
    true
}

/// Refines until the partition stops changing.
///
/// Returns the stable labeling (the one before the confirming step) and the
/// number of refinement steps run, confirming step included.
pub fn canonical_labeling(g: &Graph) -> Result<(Labeling, usize), WlError> {
    let bound = g.node_count() + 1;
    let mut current = initial_labeling(g);
    let mut steps = 0;
    loop {
        let next = refine_step(g, &current);
        steps += 1;
        if is_stabilized(&current, &next) {
            return Ok((current, steps));
        }
        if steps >= bound {
            return Err(WlError::IterationBound { bound });
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(["a", "b", "c"], [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn initial_labels_are_degrees() {
        let g = path3();
        let l = initial_labeling(&g);
        assert_eq!(l.labels(), [LabelId(1), LabelId(2), LabelId(1)]);
        assert_eq!(l.iteration(), 0);
        assert_eq!(l.active_labels(), [LabelId(1), LabelId(2)]);
    }

    #[test]
    fn isolated_nodes_get_the_empty_label() {
        let g = Graph::from_index_edges(3, [(0, 1)]).unwrap();
        let l0 = initial_labeling(&g);
        assert_eq!(l0.label(2), LabelId::EMPTY);
        assert_eq!(l0.class_count(), 2);
        let l1 = refine_step(&g, &l0);
        assert_eq!(l1.label(2), LabelId::EMPTY);
        assert!(!l1.active_labels().contains(&LabelId::EMPTY));
    }

    #[test]
    fn signature_matches_worked_example_shape() {
        // Node with degree 3 whose neighbours have degrees 2, 4 and 2.
        let g = Graph::from_index_edges(
            8,
            [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 5), (3, 6), (3, 7)],
        )
        .unwrap();
        let l0 = initial_labeling(&g);
        assert_eq!(l0.label(0), LabelId(3));
        let l1 = refine_step(&g, &l0);
        let sig = l1.signature(l1.label(0)).unwrap();
        assert_eq!(sig.parent, LabelId(3));
        assert_eq!(sig.neighbors, [LabelId(2), LabelId(2), LabelId(4)]);
    }

    #[test]
    fn fresh_labels_follow_sorted_signatures() {
        let g = path3();
        let l0 = initial_labeling(&g);
        let l1 = refine_step(&g, &l0);
        // (1 | 2) sorts before (2 | 1,1).
        assert_eq!(l1.labels(), [LabelId(3), LabelId(4), LabelId(3)]);
        assert_eq!(l1.max_label(), 4);
        assert_eq!(
            l1.signature(LabelId(4)),
            Some(&Signature::new(LabelId(2), vec![LabelId(1), LabelId(1)]))
        );
        assert!(is_stabilized(&l0, &l1));
    }

    #[test]
    fn regular_graph_keeps_one_class() {
        let c6 = Graph::from_index_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let l1 = refine_step(&c6, &initial_labeling(&c6));
        assert_eq!(l1.active_labels().len(), 1);
    }

    #[test]
    fn stabilization_detects_splits() {
        let g = Graph::from_index_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let whole = initial_labeling(&g);
        let split = Labeling {
            iteration: 1,
            label_of: vec![LabelId(3), LabelId(4), LabelId(4)],
            signature_of: BTreeMap::new(),
            active_labels: vec![LabelId(3), LabelId(4)],
            max_label: 4,
        };
        assert!(!is_stabilized(&whole, &split));
        assert!(is_stabilized(&split, &split.clone()));
    }

    #[test]
    fn canonical_labeling_of_complete_graph() {
        let k4 = Graph::from_index_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (labels, steps) = canonical_labeling(&k4).unwrap();
        assert_eq!(labels.iteration(), 0);
        assert_eq!(steps, 1);
        assert_eq!(labels.active_labels().len(), 1);
    }

    #[test]
    fn canonical_labeling_of_long_path() {
        // P7 needs three splits: ends, then next-to-ends, then the middle.
        let p7 = Graph::from_index_edges(7, (0..6).map(|i| (i, i + 1))).unwrap();
        let (labels, steps) = canonical_labeling(&p7).unwrap();
        assert_eq!(labels.class_count(), 4);
        assert_eq!(labels.label(0), labels.label(6));
        assert_eq!(labels.label(2), labels.label(4));
        assert_eq!(steps, labels.iteration() + 1);
    }

    #[test]
    fn empty_graph_stabilizes_immediately() {
        let (labels, steps) = canonical_labeling(&Graph::empty()).unwrap();
        assert_eq!(steps, 1);
        assert!(labels.active_labels().is_empty());
    }

    #[test]
    fn from_signatures_rejects_the_empty_label() {
        let sig = Signature::new(LabelId(1), vec![LabelId(2)]);
        assert!(Labeling::from_signatures(1, [(LabelId::EMPTY, sig.clone())]).is_err());
        let l = Labeling::from_signatures(1, [(LabelId(7), sig)]).unwrap();
        assert_eq!(l.active_labels(), [LabelId(7)]);
    }
}
