//! Dense node-by-node matrices labelled with external node ids.

/// Square matrix of pairwise distances, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<T> {
    ids: Vec<String>,
    values: Vec<T>,
}

impl<T: Copy> DistanceMatrix<T> {
    /// Panics unless `values.len() == ids.len()²`.
    pub fn from_values(ids: Vec<String>, values: Vec<T>) -> Self {
        assert_eq!(values.len(), ids.len() * ids.len(), "matrix must be square");
        Self { ids, values }
    }

    pub fn from_fn(ids: Vec<String>, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let n = ids.len();
        let values = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { ids, values }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.ids.len() + j]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[T] {
        let n = self.ids.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> DistanceMatrix<U> {
        DistanceMatrix {
            ids: self.ids.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

impl DistanceMatrix<u64> {
    pub fn to_f64(&self) -> DistanceMatrix<f64> {
        self.map(|v| v as f64)
    }
}

/// Rectangular matrix between the nodes of two graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossMatrix<T> {
    row_ids: Vec<String>,
    col_ids: Vec<String>,
    values: Vec<T>,
}

impl<T: Copy> CrossMatrix<T> {
    pub fn from_values(row_ids: Vec<String>, col_ids: Vec<String>, values: Vec<T>) -> Self {
        assert_eq!(values.len(), row_ids.len() * col_ids.len());
        Self {
            row_ids,
            col_ids,
            values,
        }
    }

    pub fn rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn cols(&self) -> usize {
        self.col_ids.len()
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn col_ids(&self) -> &[String] {
        &self.col_ids
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.col_ids.len() + j]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}
