//! Classical (Torgerson) multidimensional scaling.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use thiserror::Error;

use crate::matrix::DistanceMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MdsError {
    #[error("cannot embed {n} points into {k} dimensions")]
    TooManyDimensions { k: usize, n: usize },
    #[error("embedding needs at least one dimension")]
    ZeroDimensions,
    #[error("distance matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("distance matrix has non-zero diagonal entry at {0}")]
    NonZeroDiagonal(usize),
    #[error("distance matrix has a negative or non-finite entry at ({i}, {j})")]
    InvalidEntry { i: usize, j: usize },
}

/// Two eigenvalues closer than this are treated as tied.
const EIGEN_TIE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub node_ids: Vec<String>,
    /// `n x k`, row-major.
    pub coords: Vec<Vec<f64>>,
    /// The `k` leading eigenvalues of the centred matrix, descending and
    /// clamped at zero.
    pub eigenvalues: Vec<f64>,
    pub stress: f64,
}

impl Embedding {
    pub fn dims(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.coords[i]
            .iter()
            .zip(&self.coords[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Embeds `dm` into `k` dimensions.
///
/// Computes `B = -½ J D⁽²⁾ J` with the centring matrix `J`, keeps the `k`
/// largest eigenpairs and scales each eigenvector by the square root of its
/// (clamped) eigenvalue. Each eigenvector is flipped so its largest-magnitude
/// entry is positive.
pub fn classical_mds(dm: &DistanceMatrix<f64>, k: usize) -> Result<Embedding, MdsError> {
    let n = dm.len();
    if k == 0 {
        return Err(MdsError::ZeroDimensions);
    }
    if k > n {
        return Err(MdsError::TooManyDimensions { k, n });
    }
    validate(dm)?;

    let squared = DMatrix::from_fn(n, n, |i, j| {
        let d = dm.get(i, j);
        d * d
    });
    let row_means: Vec<f64> = (0..n).map(|i| squared.row(i).sum() / n as f64).collect();
    let grand_mean = row_means.iter().sum::<f64>() / n as f64;
    let b = DMatrix::from_fn(n, n, |i, j| {
        -0.5 * (squared[(i, j)] - row_means[i] - row_means[j] + grand_mean)
    });
    // Exact symmetry for the solver.
    let b = (&b + b.transpose()) * 0.5;

    let eigen = SymmetricEigen::new(b);
    let mut pairs: Vec<(f64, DVector<f64>)> = eigen
        .eigenvalues
        .iter()
        .zip(eigen.eigenvectors.column_iter())
        .map(|(&value, vector)| (value, canonical_sign(vector.into_owned())))
        .collect();
    pairs.sort_by(|a, b| {
        if (a.0 - b.0).abs() <= EIGEN_TIE {
            lexicographic(&a.1, &b.1)
        } else {
            b.0.total_cmp(&a.0)
        }
    });
    pairs.truncate(k);

    let eigenvalues: Vec<f64> = pairs.iter().map(|(v, _)| v.max(0.0)).collect();
    let coords: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            pairs
                .iter()
                .zip(&eigenvalues)
                .map(|((_, vector), &value)| vector[i] * value.sqrt())
                .collect()
        })
        .collect();

    let mut embedding = Embedding {
        node_ids: dm.ids().to_vec(),
        coords,
        eigenvalues,
        stress: 0.0,
    };
    embedding.stress = stress(dm, &embedding);
    Ok(embedding)
}

fn validate(dm: &DistanceMatrix<f64>) -> Result<(), MdsError> {
    let n = dm.len();
    let scale = dm.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..n {
        if dm.get(i, i) != 0.0 {
            return Err(MdsError::NonZeroDiagonal(i));
        }
        for j in 0..n {
            let v = dm.get(i, j);
            if !v.is_finite() || v < 0.0 {
                return Err(MdsError::InvalidEntry { i, j });
            }
            if j > i && (v - dm.get(j, i)).abs() > 1e-12 * scale {
                return Err(MdsError::NotSymmetric { i, j });
            }
        }
    }
    Ok(())
}

fn canonical_sign(mut v: DVector<f64>) -> DVector<f64> {
    let mut pivot = 0.0f64;
    for &x in v.iter() {
        if x.abs() > pivot.abs() {
            pivot = x;
        }
    }
    if pivot < 0.0 {
        v.neg_mut();
    }
    v
}

fn lexicographic(a: &DVector<f64>, b: &DVector<f64>) -> Ordering {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| y.total_cmp(x))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// `sqrt(Σ (d_ij − δ_ij)² / Σ d_ij²)` over `i < j`, zero when every input
/// distance is zero.
pub fn stress(dm: &DistanceMatrix<f64>, embedding: &Embedding) -> f64 {
    let n = dm.len();
    let (mut residual, mut total) = (0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = dm.get(i, j);
            let delta = embedding.distance(i, j);
            residual += (d - delta) * (d - delta);
            total += d * d;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        (residual / total).sqrt()
    }
}
