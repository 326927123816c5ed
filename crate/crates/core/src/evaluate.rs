//! Transform-invariant checks of how well an embedding separates classes.

use serde::Serialize;

use crate::graph::{Graph, NodeClassMap};
use crate::matrix::DistanceMatrix;
use crate::mds::Embedding;

/// Epoch cap for [`perceptron_separable`].
pub const PERCEPTRON_MAX_EPOCHS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Separability {
    pub separable: bool,
    pub epochs: usize,
}

/// Runs the perceptron (with bias) on two point sets until an epoch makes
/// no mistake or `max_epochs` have passed. Converging means the sets are
/// linearly separable; coinciding points of different sets never converge.
///
/// Points are centred and scaled into the unit ball first, which changes
/// neither separability nor the verdict's invariance to rotations.
pub fn perceptron_separable(positive: &[Vec<f64>], negative: &[Vec<f64>], max_epochs: usize) -> Separability {
    if positive.is_empty() || negative.is_empty() {
        return Separability {
            separable: true,
            epochs: 0,
        };
    }
    let dims = positive[0].len();
    let all = positive.iter().chain(negative);
    let count = (positive.len() + negative.len()) as f64;
    let mut centre = vec![0.0; dims];
    for p in all.clone() {
        for (c, x) in centre.iter_mut().zip(p) {
            *c += x / count;
        }
    }
    let radius = all
        .clone()
        .map(|p| p.iter().zip(&centre).map(|(x, c)| (x - c) * (x - c)).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max);
    let scale = if radius > 0.0 { 1.0 / radius } else { 1.0 };

    let samples: Vec<(Vec<f64>, f64)> = positive
        .iter()
        .map(|p| (p, 1.0))
        .chain(negative.iter().map(|p| (p, -1.0)))
        .map(|(p, y)| {
            let mut x: Vec<f64> = p.iter().zip(&centre).map(|(x, c)| (x - c) * scale).collect();
            x.push(1.0);
            (x, y)
        })
        .collect();

    let mut w = vec![0.0; dims + 1];
    for epoch in 1..=max_epochs {
        let mut mistakes = 0;
        for (x, y) in &samples {
            let activation: f64 = w.iter().zip(x).map(|(a, b)| a * b).sum();
            if y * activation <= 0.0 {
                for (wi, xi) in w.iter_mut().zip(x) {
                    *wi += y * xi;
                }
                mistakes += 1;
            }
        }
        if mistakes == 0 {
            return Separability {
                separable: true,
                epochs: epoch,
            };
        }
    }
    Separability {
        separable: false,
        epochs: max_epochs,
    }
}

/// Mean distance between classes divided by the mean distance inside them
/// (pairs within either class, pooled). `None` when a mean is undefined or
/// the intra-class mean is zero.
pub fn inter_intra_ratio(a: &[usize], b: &[usize], dist: impl Fn(usize, usize) -> f64) -> Option<f64> {
    let mut inter = (0.0, 0usize);
    for &x in a {
        for &y in b {
            inter.0 += dist(x, y);
            inter.1 += 1;
        }
    }
    let mut intra = (0.0, 0usize);
    for class in [a, b] {
        for (i, &x) in class.iter().enumerate() {
            for &y in &class[i + 1..] {
                intra.0 += dist(x, y);
                intra.1 += 1;
            }
        }
    }
    if inter.1 == 0 || intra.1 == 0 || intra.0 == 0.0 {
        return None;
    }
    Some((inter.0 / inter.1 as f64) / (intra.0 / intra.1 as f64))
}

/// Mean embedding distance from each node to every other node.
pub fn mean_distance_to_others(embedding: &Embedding) -> Vec<f64> {
    let n = embedding.coords.len();
    (0..n)
        .map(|i| {
            if n < 2 {
                return 0.0;
            }
            (0..n).filter(|&j| j != i).map(|j| embedding.distance(i, j)).sum::<f64>() / (n - 1) as f64
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassPairReport {
    pub classes: [String; 2],
    pub separable: bool,
    pub perceptron_epochs: usize,
    /// Inter/intra ratio of embedding distances.
    pub inter_intra_ratio: Option<f64>,
    /// Inter/intra ratio of the metric's own distances.
    pub inter_intra_ratio_metric: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub metric: String,
    pub iterations: usize,
    pub converged: bool,
    pub runtime_ms: f64,
    pub stress: f64,
    /// Mean intra-class over mean inter-class embedding distance, all
    /// classes pooled.
    pub intra_inter_ratio: Option<f64>,
    pub class_pairs: Vec<ClassPairReport>,
}

/// Per-metric evaluation of a 2-D embedding against node classes.
pub fn evaluate_metric(
    metric: &str,
    g: &Graph,
    classes: &NodeClassMap,
    distances: &DistanceMatrix<f64>,
    embedding: &Embedding,
) -> MetricReport {
    let names = classes.classes();
    let members: Vec<Vec<usize>> = names.iter().map(|c| classes.members(g, c)).collect();
    let points = |idx: &[usize]| -> Vec<Vec<f64>> { idx.iter().map(|&v| embedding.coords[v].clone()).collect() };

    let mut class_pairs = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let sep = perceptron_separable(&points(&members[i]), &points(&members[j]), PERCEPTRON_MAX_EPOCHS);
            class_pairs.push(ClassPairReport {
                classes: [names[i].to_owned(), names[j].to_owned()],
                separable: sep.separable,
                perceptron_epochs: sep.epochs,
                inter_intra_ratio: inter_intra_ratio(&members[i], &members[j], |x, y| embedding.distance(x, y)),
                inter_intra_ratio_metric: inter_intra_ratio(&members[i], &members[j], |x, y| distances.get(x, y)),
            });
        }
    }

    let mut class_of = vec![None; g.node_count()];
    for (c, nodes) in members.iter().enumerate() {
        for &v in nodes {
            class_of[v] = Some(c);
        }
    }
    let (mut intra, mut inter) = ((0.0, 0usize), (0.0, 0usize));
    for x in 0..g.node_count() {
        for y in x + 1..g.node_count() {
            let (Some(cx), Some(cy)) = (class_of[x], class_of[y]) else {
                continue;
            };
            let bucket = if cx == cy { &mut intra } else { &mut inter };
            bucket.0 += embedding.distance(x, y);
            bucket.1 += 1;
        }
    }
    let intra_inter_ratio = (intra.1 > 0 && inter.1 > 0 && inter.0 > 0.0)
        .then(|| (intra.0 / intra.1 as f64) / (inter.0 / inter.1 as f64));

    MetricReport {
        metric: metric.to_owned(),
        iterations: 0,
        converged: true,
        runtime_ms: 0.0,
        stress: embedding.stress,
        intra_inter_ratio,
        class_pairs,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub nodes: usize,
    pub edges: usize,
    pub classes: Vec<String>,
    pub metrics: Vec<MetricReport>,
}

impl CompareReport {
    pub fn metric(&self, name: &str) -> Option<&MetricReport> {
        self.metrics.iter().find(|m| m.metric == name)
    }
}

impl MetricReport {
    /// Report for the unordered class pair `{a, b}`.
    pub fn pair(&self, a: &str, b: &str) -> Option<&ClassPairReport> {
        self.class_pairs
            .iter()
            .find(|p| (p.classes[0] == a && p.classes[1] == b) || (p.classes[0] == b && p.classes[1] == a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[[f64; 2]]) -> Vec<Vec<f64>> {
        raw.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn separable_sets_converge() {
        let a = pts(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        let b = pts(&[[3.0, 3.0], [4.0, 3.0], [3.0, 4.0]]);
        assert!(perceptron_separable(&a, &b, 1000).separable);
    }

    #[test]
    fn xor_is_not_separable() {
        let a = pts(&[[0.0, 0.0], [1.0, 1.0]]);
        let b = pts(&[[1.0, 0.0], [0.0, 1.0]]);
        let sep = perceptron_separable(&a, &b, 2000);
        assert!(!sep.separable);
        assert_eq!(sep.epochs, 2000);
    }

    #[test]
    fn coinciding_points_are_not_separable() {
        let a = pts(&[[1.0, 1.0]]);
        let b = pts(&[[1.0, 1.0], [2.0, 2.0]]);
        assert!(!perceptron_separable(&a, &b, 500).separable);
    }

    #[test]
    fn separability_survives_rotation() {
        let a = pts(&[[0.0, 0.0], [1.0, 0.2], [0.3, 0.9]]);
        let b = pts(&[[2.0, 2.0], [2.5, 1.1], [1.6, 2.7]]);
        let rot = |p: &Vec<f64>| {
            let (s, c) = 0.7f64.sin_cos();
            vec![c * p[0] - s * p[1], s * p[0] + c * p[1]]
        };
        let ra: Vec<_> = a.iter().map(rot).collect();
        let rb: Vec<_> = b.iter().map(rot).collect();
        assert!(perceptron_separable(&a, &b, 1000).separable);
        assert!(perceptron_separable(&ra, &rb, 1000).separable);
    }

    #[test]
    fn empty_class_is_trivially_separable() {
        let a = pts(&[[0.0, 0.0]]);
        assert!(perceptron_separable(&a, &[], 10).separable);
    }

    #[test]
    fn ratio_of_means() {
        // Points on a line: class a at 0 and 1, class b at 10 and 11.
        let pos = [0.0f64, 1.0, 10.0, 11.0];
        let d = |x: usize, y: usize| (pos[x] - pos[y]).abs();
        let r = inter_intra_ratio(&[0, 1], &[2, 3], d).unwrap();
        assert!((r - 10.0).abs() < 1e-12);
        assert_eq!(inter_intra_ratio(&[0], &[2], d), None);
    }
}
