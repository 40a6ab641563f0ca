//! Exact rational row reduction over sparse vectors. Rows are inserted
//! incrementally; the basis is kept in reduced row-echelon form at all
//! times, so ranks, kernels, and membership tests are exact and the stored
//! echelon rows are canonical.

use num::{BigRational, Zero};

/// A sparse vector: `(column, coefficient)` pairs sorted by column, with no
/// zero coefficients.
pub type SparseVec = Vec<(usize, BigRational)>;

/// Builds a sparse vector from unsorted entries, merging duplicates.
pub fn sparse_from_entries(entries: Vec<(usize, BigRational)>) -> SparseVec {
    let mut entries = entries;
    entries.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a - k * b`, sparse.
fn axpy(a: &SparseVec, k: &BigRational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va - k * vb;
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                let v = -(k * vb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                let v = -(k * vb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Signed dot product with a diagonal weight per column.
pub fn sparse_dot_weighted(
    a: &SparseVec,
    b: &SparseVec,
    weight: impl Fn(usize) -> BigRational,
) -> BigRational {
    let (mut i, mut j) = (0, 0);
    let mut acc = BigRational::zero();
    while i < a.len() && j < b.len() {
        let (ca, va) = &a[i];
        let (cb, vb) = &b[j];
        match ca.cmp(cb) {
            std::cmp::Ordering::Equal => {
                acc += va * vb * weight(*ca);
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    acc
}

/// Incremental reduced row-echelon basis. Pivot columns are processed in
/// canonical (increasing) order, which makes the stored rows independent of
/// insertion batching.
#[derive(Debug, Clone, Default)]
pub struct RowReducer {
    /// Rows with pairwise distinct pivot columns; each row starts with its
    /// pivot at coefficient 1 and is reduced against every other row.
    rows: Vec<SparseVec>,
}

impl RowReducer {
    pub fn new() -> Self {
        RowReducer { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_position(&self, col: usize) -> Result<usize, usize> {
        self.rows.binary_search_by(|r| r[0].0.cmp(&col))
    }

    /// Fully reduces a vector against the current basis.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut idx = 0;
        while idx < v.len() {
            let (col, coeff) = v[idx].clone();
            if let Ok(pos) = self.pivot_position(col) {
                v = axpy(&v, &coeff, &self.rows[pos]);
                // axpy removed column `col`; continue scanning from the same
                // index since everything before it had no pivot.
            } else {
                idx += 1;
            }
        }
        v
    }

    /// True when the vector lies in the current row span.
    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a vector; returns true when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let lead = v[0].1.clone();
        let normalized: SparseVec = v
            .into_iter()
            .map(|(c, x)| (c, x / lead.clone()))
            .collect();
        let pivot = normalized[0].0;
        // Eliminate the new pivot column from existing rows to stay in RREF.
        for row in self.rows.iter_mut() {
            if let Some(pos) = row.iter().position(|(c, _)| *c == pivot) {
                let k = row[pos].1.clone();
                *row = axpy(row, &k, &normalized);
            }
        }
        let at = self
            .pivot_position(pivot)
            .expect_err("pivot column already in basis");
        self.rows.insert(at, normalized);
        true
    }

    /// The canonical reduced row-echelon rows, sorted by pivot column.
    pub fn echelon_rows(&self) -> &[SparseVec] {
        &self.rows
    }
}

/// Rank of a list of sparse vectors.
pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let mut red = RowReducer::new();
    for v in vectors {
        red.insert(v.clone());
    }
    red.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn row(entries: &[(usize, i64)]) -> SparseVec {
        sparse_from_entries(entries.iter().map(|(c, v)| (*c, q(*v))).collect())
    }

    #[test]
    fn rank_of_simple_matrix() {
        let rows = vec![
            row(&[(0, 1), (1, 2)]),
            row(&[(0, 2), (1, 4)]),
            row(&[(1, 1), (2, 1)]),
        ];
        assert_eq!(rank_of(&rows), 2);
    }

    #[test]
    fn rationals_stay_exact() {
        // [[1, 3], [2, 7]] has rank 2 with fractional elimination steps.
        let rows = vec![row(&[(0, 1), (1, 3)]), row(&[(0, 2), (1, 7)])];
        let mut red = RowReducer::new();
        for r in rows {
            red.insert(r);
        }
        assert_eq!(red.rank(), 2);
        // RREF of an invertible 2x2 is the identity.
        assert_eq!(red.echelon_rows()[0], row(&[(0, 1)]));
        assert_eq!(red.echelon_rows()[1], row(&[(1, 1)]));
    }

    #[test]
    fn echelon_is_insertion_order_independent() {
        let a = row(&[(0, 1), (2, 5)]);
        let b = row(&[(1, 3), (2, 1)]);
        let c = row(&[(0, 2), (1, 3), (2, 11)]);
        let mut r1 = RowReducer::new();
        let mut r2 = RowReducer::new();
        for v in [a.clone(), b.clone(), c.clone()] {
            r1.insert(v);
        }
        for v in [c, b, a] {
            r2.insert(v);
        }
        assert_eq!(r1.echelon_rows(), r2.echelon_rows());
    }

    #[test]
    fn membership() {
        let mut red = RowReducer::new();
        red.insert(row(&[(0, 1), (1, 1)]));
        red.insert(row(&[(1, 1), (2, 1)]));
        assert!(red.contains(row(&[(0, 1), (2, -1)])));
        assert!(!red.contains(row(&[(0, 1), (2, 1)])));
    }

    #[test]
    fn weighted_dot() {
        let a = row(&[(0, 1), (3, 2)]);
        let b = row(&[(0, 1), (3, 1)]);
        let dot = sparse_dot_weighted(&a, &b, |c| if c < 2 { q(1) } else { q(-1) });
        assert_eq!(dot, q(-1));
    }
}
