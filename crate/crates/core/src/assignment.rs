//! Minimum-cost assignment over rectangular integer cost matrices.
//!
//! [`solve_assignment`] is the Hungarian method in its shortest augmenting
//! path form (O(r²c) for r ≤ c). [`brute_force_assignment`] enumerates every
//! injection and exists as an oracle for tests.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("cost matrix must have at least one row and one column (got {rows}x{cols})")]
    ZeroDimension { rows: usize, cols: usize },
    #[error("cost matrix {rows}x{cols} needs {expected} entries, got {actual}")]
    SizeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },
    #[error("brute force limited to min(rows, cols) <= {limit}, got {size}")]
    TooLarge { size: usize, limit: usize },
}

/// Row-major matrix of nonnegative integer costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    cost: Vec<u64>,
}

impl CostMatrix {
    pub fn new(rows: usize, cols: usize, cost: Vec<u64>) -> Result<Self, AssignmentError> {
        if rows == 0 || cols == 0 {
            return Err(AssignmentError::ZeroDimension { rows, cols });
        }
        if cost.len() != rows * cols {
            return Err(AssignmentError::SizeMismatch {
                rows,
                cols,
                expected: rows * cols,
                actual: cost.len(),
            });
        }
        Ok(Self { rows, cols, cost })
    }

    /// Builds a matrix from nested rows, which must all have equal length.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self, AssignmentError> {
        let cols = rows.first().map_or(0, Vec::len);
        let cost: Vec<u64> = rows.iter().flatten().copied().collect();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AssignmentError::SizeMismatch {
                rows: rows.len(),
                cols,
                expected: rows.len() * cols,
                actual: cost.len(),
            });
        }
        Self::new(rows.len(), cols, cost)
    }

    /// Fills an `rows x cols` matrix from a cost function.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Result<Self, AssignmentError> {
        let mut cost = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                cost.push(f(r, c));
            }
        }
        Self::new(rows, cols, cost)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.cost[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u64) {
        self.cost[row * self.cols + col] = value;
    }

    fn transposed(&self) -> Self {
        let mut cost = Vec::with_capacity(self.cost.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                cost.push(self.get(r, c));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            cost,
        }
    }
}

/// A set of `(row, col)` pairs, each row and column used at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub total_cost: u64,
}

impl Matching {
    fn from_pairs(c: &CostMatrix, mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        let total = pairs
            .iter()
            .map(|&(r, col)| u128::from(c.get(r, col)))
            .sum::<u128>();
        let total_cost = u64::try_from(total).expect("assignment cost overflows u64");
        Self { pairs, total_cost }
    }
}

/// Minimum-cost matching of size `min(rows, cols)`.
///
/// The total cost is unique; which optimal pairs are returned is not part of
/// the contract.
pub fn solve_assignment(c: &CostMatrix) -> Matching {
    if c.rows > c.cols {
        let t = c.transposed();
        let pairs = hungarian(&t).into_iter().map(|(r, col)| (col, r)).collect();
        return Matching::from_pairs(c, pairs);
    }
    Matching::from_pairs(c, hungarian(c))
}

/// Shortest augmenting path Hungarian method for `rows <= cols`. Potentials
/// are kept in `i128` so reduced costs never overflow for any `u64` input.
fn hungarian(c: &CostMatrix) -> Vec<(usize, usize)> {
    let (n, m) = (c.rows, c.cols);
    debug_assert!(n <= m);
    // 1-based; column 0 and row 0 are the virtual source.
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; m + 1];
    let mut row_of_col = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    let mut min_slack = vec![i128::MAX; m + 1];
    let mut used = vec![false; m + 1];

    for row in 1..=n {
        row_of_col[0] = row;
        let mut col0 = 0usize;
        min_slack.fill(i128::MAX);
        used.fill(false);
        loop {
            used[col0] = true;
            let r0 = row_of_col[col0];
            let mut delta = i128::MAX;
            let mut col1 = 0usize;
            for col in 1..=m {
                if used[col] {
                    continue;
                }
                let reduced = i128::from(c.get(r0 - 1, col - 1)) - u[r0] - v[col];
                if reduced < min_slack[col] {
                    min_slack[col] = reduced;
                    way[col] = col0;
                }
                if min_slack[col] < delta {
                    delta = min_slack[col];
                    col1 = col;
                }
            }
            for col in 0..=m {
                if used[col] {
                    u[row_of_col[col]] += delta;
                    v[col] -= delta;
                } else {
                    min_slack[col] -= delta;
                }
            }
            col0 = col1;
            if row_of_col[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            row_of_col[col0] = row_of_col[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }

    (1..=m)
        .filter(|&col| row_of_col[col] != 0)
        .map(|col| (row_of_col[col] - 1, col - 1))
        .collect()
}

/// Largest `min(rows, cols)` accepted by [`brute_force_assignment`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Exact minimum by enumerating every injection of the smaller side into
/// the larger one.
pub fn brute_force_assignment(c: &CostMatrix) -> Result<Matching, AssignmentError> {
    let size = c.rows.min(c.cols);
    if size > BRUTE_FORCE_LIMIT {
        return Err(AssignmentError::TooLarge {
            size,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let transpose = c.rows > c.cols;
    let m = if transpose { c.transposed() } else { c.clone() };

    struct Search<'a> {
        m: &'a CostMatrix,
        used: Vec<bool>,
        current: Vec<usize>,
        best: Option<(u128, Vec<usize>)>,
    }

    impl Search<'_> {
        fn go(&mut self, row: usize, acc: u128) {
            if row == self.m.rows {
                if self.best.as_ref().is_none_or(|(b, _)| acc < *b) {
                    self.best = Some((acc, self.current.clone()));
                }
                return;
            }
            for col in 0..self.m.cols {
                if self.used[col] {
                    continue;
                }
                self.used[col] = true;
                self.current.push(col);
                self.go(row + 1, acc + u128::from(self.m.get(row, col)));
                self.current.pop();
                self.used[col] = false;
            }
        }
    }

    let mut search = Search {
        m: &m,
        used: vec![false; m.cols],
        current: Vec::with_capacity(m.rows),
        best: None,
    };
    search.go(0, 0);
    let (_, cols) = search.best.expect("non-empty matrix has an assignment");
    let pairs = cols
        .into_iter()
        .enumerate()
        .map(|(r, col)| if transpose { (col, r) } else { (r, col) })
        .collect();
    Ok(Matching::from_pairs(c, pairs))
}
