//! Unsigned Stirling numbers of the first kind.

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;

/// Largest row kept in a [`StirlingTable`]; `[20, k]` still fits in `u64`.
pub const MAX_ROW: usize = 20;

/// Triangular table of `[m, k]` for `0 <= k <= m <= rows`, built from
/// `[m+1, k] = [m, k-1] + m [m, k]`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<u64>>,
}

impl StirlingTable {
    pub fn new(max_m: usize) -> Result<Self> {
        if max_m > MAX_ROW {
            return Err(AlgebraError::InvalidParameter(format!(
                "Stirling rows beyond {MAX_ROW} overflow u64"
            )));
        }
        let mut rows: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..max_m {
            let prev = &rows[m];
            let next: Vec<u64> = (0..=m + 1)
                .map(|k| {
                    let left = if k > 0 { prev[k - 1] } else { 0 };
                    let right = prev.get(k).copied().unwrap_or(0);
                    left + m as u64 * right
                })
                .collect();
            rows.push(next);
        }
        Ok(StirlingTable { rows })
    }

    pub fn max_m(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[m, k]` as an exact integer.
    pub fn get(&self, m: usize, k: usize) -> Result<u64> {
        if k > m || m > self.max_m() {
            return Err(AlgebraError::InvalidParameter(format!(
                "Stirling index [{m}, {k}] out of range (table has {} rows)",
                self.max_m()
            )));
        }
        Ok(self.rows[m][k])
    }

    /// `[m, k] mod p`.
    pub fn residue(&self, m: usize, k: usize, field: PrimeField) -> Result<u32> {
        Ok(field.reduce_u64(self.get(m, k)?))
    }

    pub fn row(&self, m: usize) -> &[u64] {
        &self.rows[m]
    }
}

/// Convenience wrapper: `([m, k], [m, k] mod p)` for `0 <= k <= m <= 12`.
pub fn stirling(m: usize, k: usize, field: PrimeField) -> Result<(u64, u32)> {
    if m > 12 {
        return Err(AlgebraError::InvalidParameter(format!(
            "m = {m} exceeds 12"
        )));
    }
    let table = StirlingTable::new(m)?;
    let v = table.get(m, k)?;
    Ok((v, field.reduce_u64(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    // brute force: count permutations of m elements by number of cycles
    fn cycles_count(m: usize) -> Vec<u64> {
        let mut counts = vec![0u64; m + 1];
        let mut perm: Vec<usize> = (0..m).collect();
        fn heap(k: usize, a: &mut Vec<usize>, counts: &mut Vec<u64>) {
            if k <= 1 {
                let mut seen = vec![false; a.len()];
                let mut cycles = 0;
                for s in 0..a.len() {
                    if !seen[s] {
                        cycles += 1;
                        let mut t = s;
                        while !seen[t] {
                            seen[t] = true;
                            t = a[t];
                        }
                    }
                }
                counts[cycles] += 1;
                return;
            }
            for i in 0..k {
                heap(k - 1, a, counts);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                a.swap(j, k - 1);
            }
        }
        if m == 0 {
            counts[0] = 1;
        } else {
            heap(m, &mut perm, &mut counts);
        }
        counts
    }

    #[test]
    fn small_values() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(stirling(3, 1, f).unwrap(), (2, 2));
        assert_eq!(stirling(3, 2, f).unwrap(), (3, 3));
        assert_eq!(stirling(3, 3, f).unwrap(), (1, 1));
        assert_eq!(stirling(4, 2, f).unwrap(), (11, 1));
        assert!(stirling(3, 4, f).is_err());
        assert!(stirling(13, 1, f).is_err());
    }

    #[test]
    fn matches_cycle_counts() {
        let t = StirlingTable::new(8).unwrap();
        for m in 0..=8 {
            assert_eq!(t.row(m), cycles_count(m).as_slice(), "m = {m}");
        }
    }

    #[test]
    fn boundaries_and_row_sums() {
        let t = StirlingTable::new(12).unwrap();
        let mut fact = 1u64;
        for m in 0..=12usize {
            if m > 0 {
                fact *= m as u64;
                assert_eq!(t.get(m, 0).unwrap(), 0);
            }
            assert_eq!(t.get(m, m).unwrap(), 1);
            assert_eq!(t.row(m).iter().sum::<u64>(), fact);
        }
    }
}
