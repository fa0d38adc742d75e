//! Minimum-cost rectangular assignment.
//!
//! `solve` matches `min(rows, cols)` row/column pairs so the summed cost is
//! minimal, using the shortest-augmenting-path method in O(k²·max(m,n)).
//! Among equal-cost optima it returns the one whose row-sorted pair list is
//! lexicographically smallest, so results are reproducible down to the bit
//! regardless of input ordering quirks.

use crate::error::{Error, Result};

/// Relative tolerance for recognizing equal-cost alternatives during
/// tie-breaking. Scaled by the largest cost magnitude.
const REL_TOL: f64 = 1e-9;

/// Dense row-major cost matrix. Entries must be finite and non-negative
/// (distances or counts). Either dimension may be zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nr * nc);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != nc {
                return Err(Error::RaggedCostMatrix {
                    row: r,
                    expected: nc,
                    got: row.len(),
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(Error::InvalidCost {
                        row: r,
                        col: c,
                        value,
                    });
                }
                data.push(value);
            }
        }
        Ok(CostMatrix {
            rows: nr,
            cols: nc,
            data,
        })
    }

    /// Builds an `rows × cols` matrix from a cost function.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let value = f(r, c);
                if !value.is_finite() || value < 0.0 {
                    return Err(Error::InvalidCost {
                        row: r,
                        col: c,
                        value,
                    });
                }
                data.push(value);
            }
        }
        Ok(CostMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// Result of an assignment solve: `min(rows, cols)` pairs sorted by row
/// index, plus their summed cost accumulated in that same order.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pairs: Vec<(usize, usize)>,
    total_cost: f64,
}

impl Assignment {
    /// Matched `(row, col)` pairs in ascending row order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn total_cost(&self) -> f64 {
        self.total_cost
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Solves the minimum-cost assignment for `costs`.
///
/// Matches every row when `rows <= cols`, otherwise every column. With an
/// empty dimension the result has no pairs and zero cost. Ties are broken
/// toward the lexicographically smallest row-sorted pair list; in particular
/// matching an earlier row always beats skipping it.
pub fn solve(costs: &CostMatrix) -> Assignment {
    let (m, n) = (costs.rows, costs.cols);
    if m == 0 || n == 0 {
        return Assignment {
            pairs: Vec::new(),
            total_cost: 0.0,
        };
    }
    let (pairs, row_dual, col_dual) = solve_oriented(costs);
    let pairs = canonicalize(costs, pairs, &row_dual, &col_dual);
    let total_cost = pairs.iter().map(|&(r, c)| costs.at(r, c)).sum();
    Assignment { pairs, total_cost }
}

/// Initial optimal solve. Returns pairs sorted by row plus dual vectors in
/// the original orientation; every pair of every optimal assignment has
/// reduced cost `cost - row_dual - col_dual` of (numerically) zero, which is
/// what the tie-break phase filters on.
fn solve_oriented(costs: &CostMatrix) -> (Vec<(usize, usize)>, Vec<f64>, Vec<f64>) {
    let (m, n) = (costs.rows, costs.cols);
    if m <= n {
        let (col4row, u, v) = lapjv_dense(m, n, &costs.data);
        let pairs = col4row.iter().enumerate().map(|(r, &c)| (r, c)).collect();
        (pairs, u, v)
    } else {
        let mut transposed = vec![0.0; m * n];
        for r in 0..m {
            for c in 0..n {
                transposed[c * m + r] = costs.data[r * n + c];
            }
        }
        let (row4col, u, v) = lapjv_dense(n, m, &transposed);
        let mut pairs: Vec<(usize, usize)> =
            row4col.iter().enumerate().map(|(c, &r)| (r, c)).collect();
        pairs.sort_unstable();
        (pairs, v, u)
    }
}

/// Shortest-augmenting-path solver for `nr <= nc`. Returns the matched
/// column for each row plus the final dual values. All-finite costs make the
/// problem always feasible.
fn lapjv_dense(nr: usize, nc: usize, cost: &[f64]) -> (Vec<usize>, Vec<f64>, Vec<f64>) {
    debug_assert!(nr <= nc);
    debug_assert_eq!(cost.len(), nr * nc);

    let mut u = vec![0.0; nr];
    let mut v = vec![0.0; nc];
    let mut col4row: Vec<isize> = vec![-1; nr];
    let mut row4col: Vec<isize> = vec![-1; nc];
    let mut path: Vec<isize> = vec![-1; nc];
    let mut shortest: Vec<f64> = vec![0.0; nc];
    let mut remaining: Vec<usize> = vec![0; nc];
    let mut scanned_rows = vec![false; nr];
    let mut scanned_cols = vec![false; nc];

    for cur_row in 0..nr {
        // Dijkstra-style search for the cheapest augmenting path from
        // cur_row to any unmatched column, in the reduced cost graph.
        let mut min_val = 0.0;
        let mut i = cur_row;
        let mut num_remaining = nc;
        for (it, slot) in remaining.iter_mut().enumerate() {
            *slot = nc - it - 1;
        }
        scanned_rows.iter_mut().for_each(|s| *s = false);
        scanned_cols.iter_mut().for_each(|s| *s = false);
        shortest.iter_mut().for_each(|s| *s = f64::INFINITY);

        let mut sink: isize = -1;
        while sink == -1 {
            let mut index = usize::MAX;
            let mut lowest = f64::INFINITY;
            scanned_rows[i] = true;
            for (it, &j) in remaining[..num_remaining].iter().enumerate() {
                let r = min_val + cost[i * nc + j] - u[i] - v[j];
                if r < shortest[j] {
                    path[j] = i as isize;
                    shortest[j] = r;
                }
                if shortest[j] < lowest || (shortest[j] == lowest && row4col[j] == -1) {
                    lowest = shortest[j];
                    index = it;
                }
            }
            min_val = lowest;
            debug_assert!(min_val.is_finite(), "finite costs keep the search feasible");
            let j = remaining[index];
            if row4col[j] == -1 {
                sink = j as isize;
            } else {
                i = row4col[j] as usize;
            }
            scanned_cols[j] = true;
            num_remaining -= 1;
            remaining[index] = remaining[num_remaining];
        }

        u[cur_row] += min_val;
        for r in 0..nr {
            if scanned_rows[r] && r != cur_row {
                u[r] += min_val - shortest[col4row[r] as usize];
            }
        }
        for c in 0..nc {
            if scanned_cols[c] {
                v[c] -= min_val - shortest[c];
            }
        }

        let mut j = sink as usize;
        loop {
            let r = path[j] as usize;
            row4col[j] = r as isize;
            let prev = col4row[r];
            col4row[r] = j as isize;
            if r == cur_row {
                break;
            }
            // Intermediate rows on the path were matched, so prev >= 0.
            j = prev as usize;
        }
    }

    (col4row.into_iter().map(|c| c as usize).collect(), u, v)
}

/// Rewrites an optimal assignment into the lexicographically smallest one of
/// equal cost. Rows are fixed in ascending order; for each, candidate
/// columns that could preserve optimality (zero reduced cost against the
/// solve's duals) are tried smallest-first and accepted only after an exact
/// re-solve of the remaining subproblem confirms the total is unchanged.
/// Tie-free inputs trigger no re-solves at all.
fn canonicalize(
    costs: &CostMatrix,
    pairs: Vec<(usize, usize)>,
    row_dual: &[f64],
    col_dual: &[f64],
) -> Vec<(usize, usize)> {
    let (m, n) = (costs.rows, costs.cols);
    let k = pairs.len();
    let tol = REL_TOL * (1.0 + costs.max_abs());
    let total_tol = tol * (k as f64 + 1.0);
    let optimal_total: f64 = pairs.iter().map(|&(r, c)| costs.at(r, c)).sum();

    let mut incumbent: Vec<Option<usize>> = vec![None; m];
    for &(r, c) in &pairs {
        incumbent[r] = Some(c);
    }
    let mut used = vec![false; n];
    let mut result: Vec<(usize, usize)> = Vec::with_capacity(k);
    let mut prefix_sum = 0.0;

    for r in 0..m {
        let upper = incumbent[r].unwrap_or(n);
        let mut chosen = incumbent[r];
        for c in 0..upper {
            if used[c] || costs.at(r, c) - row_dual[r] - col_dual[c] > tol {
                continue;
            }
            if let Some(completion) =
                try_complete(costs, r, c, &used, prefix_sum, optimal_total, total_tol)
            {
                chosen = Some(c);
                for slot in incumbent.iter_mut().skip(r + 1) {
                    *slot = None;
                }
                for (rr, cc) in completion {
                    incumbent[rr] = Some(cc);
                }
                break;
            }
        }
        if let Some(c) = chosen {
            used[c] = true;
            prefix_sum += costs.at(r, c);
            result.push((r, c));
        }
    }

    debug_assert_eq!(result.len(), k);
    result
}

/// Solves the subproblem left after forcing `(row, col)` on top of the
/// already-fixed prefix. Returns the completion (in original indices) when
/// the combined total still matches the optimum, `None` otherwise.
fn try_complete(
    costs: &CostMatrix,
    row: usize,
    col: usize,
    used: &[bool],
    prefix_sum: f64,
    optimal_total: f64,
    total_tol: f64,
) -> Option<Vec<(usize, usize)>> {
    let m = costs.rows;
    let n = costs.cols;
    let sub_rows: Vec<usize> = (row + 1..m).collect();
    let sub_cols: Vec<usize> = (0..n).filter(|&c| !used[c] && c != col).collect();

    let sub = CostMatrix::from_fn(sub_rows.len(), sub_cols.len(), |r, c| {
        costs.at(sub_rows[r], sub_cols[c])
    })
    .expect("submatrix of finite costs is finite");
    let (sub_pairs, _, _) = if sub.rows == 0 || sub.cols == 0 {
        (Vec::new(), Vec::new(), Vec::new())
    } else {
        solve_oriented(&sub)
    };
    let sub_total: f64 = sub_pairs.iter().map(|&(r, c)| sub.at(r, c)).sum();

    if prefix_sum + costs.at(row, col) + sub_total <= optimal_total + total_tol {
        Some(
            sub_pairs
                .into_iter()
                .map(|(r, c)| (sub_rows[r], sub_cols[c]))
                .collect(),
        )
    } else {
        None
    }
}
