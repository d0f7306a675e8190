//! Sparse Gaussian elimination over `F_p`.

use std::collections::BTreeMap;

use crate::field::PrimeField;

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, u32)>;

/// Incrementally reduced row echelon basis. Rows are inserted one at a time
/// and reduced against the existing pivots.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    // pivot column -> normalized row (leading entry 1 at the pivot column)
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis; returns the reduced row.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        let f = self.field;
        let mut row = row;
        let mut start = 0usize;
        loop {
            let hit = row[start..]
                .iter()
                .position(|(c, _)| self.pivots.contains_key(c))
                .map(|k| k + start);
            let Some(k) = hit else {
                return row;
            };
            let (col, val) = row[k];
            let pivot = &self.pivots[&col];
            row = axpy(f, &row, pivot, f.neg(val));
            // entries before k are untouched and pivot-free
            start = k;
        }
    }

    /// Inserts a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.reduce(row);
        let Some(&(col, val)) = reduced.first() else {
            return false;
        };
        let inv = self.field.inv(val).expect("nonzero pivot");
        let normalized: SparseRow = reduced
            .into_iter()
            .map(|(c, v)| (c, self.field.mul(v, inv)))
            .collect();
        self.pivots.insert(col, normalized);
        true
    }
}

// row + scale * other
fn axpy(f: PrimeField, row: &[(usize, u32)], other: &[(usize, u32)], scale: u32) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_row = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_other = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_other {
            let v = f.mul(other[j].1, scale);
            if v != 0 {
                out.push((other[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(row[i].1, f.mul(other[j].1, scale));
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a matrix given as sparse rows.
pub fn rank(field: PrimeField, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut ech = Echelon::new(field);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Solves `sum_j x_j * columns[j] = target`, where every vector is sparse over
/// a common row index set. Returns `None` when the system is inconsistent.
/// When the columns are independent the solution is unique.
pub fn solve_columns(
    field: PrimeField,
    columns: &[SparseRow],
    target: &SparseRow,
) -> Option<Vec<u32>> {
    // Work with the transposed system: augment each column vector with an
    // indicator of its own index and eliminate on the row coordinates.
    // Combination coefficients are tracked in indicator slots placed after
    // every row coordinate.
    let offset = columns
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|c| c.last().map(|&(r, _)| r + 1))
        .max()
        .unwrap_or(0);
    let mut ech = Echelon::new(field);
    for (j, col) in columns.iter().enumerate() {
        let mut row = col.clone();
        row.push((offset + j, 1));
        ech.insert(row);
    }
    let reduced = ech.reduce(target.clone());
    if reduced.iter().any(|&(c, _)| c < offset) {
        return None;
    }
    // target - sum(reduction multipliers) lies in the indicator block:
    // reduced = target - sum_j x_j (col_j + e_j)  =>  x_j = -reduced[offset + j]
    let mut x = vec![0u32; columns.len()];
    for (c, v) in reduced {
        x[c - offset] = field.neg(v);
    }
    Some(x)
}
