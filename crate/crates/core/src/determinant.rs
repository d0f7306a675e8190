//! Dickson-type determinants `[e_1, ..., e_n] = det(x_j^{p^{e_k}})`.

use std::collections::HashMap;

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::poly::{Monomial, Polynomial};

/// Determinant of a square matrix of polynomials by cofactor expansion along
/// the first remaining row, memoizing minors by their column set.
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = matrix.len();
    if n == 0 {
        return Err(AlgebraError::InvalidParameter("empty matrix".into()));
    }
    if n > 16 || matrix.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::InvalidParameter(
            "matrix must be square with at most 16 rows".into(),
        ));
    }
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    Ok(minor(matrix, 0, (1u32 << n) - 1, &mut memo))
}

// Determinant of rows `row..n` restricted to the columns in `cols`.
fn minor(
    matrix: &[Vec<Polynomial>],
    row: usize,
    cols: u32,
    memo: &mut HashMap<u32, Polynomial>,
) -> Polynomial {
    let n = matrix.len();
    if row == n - 1 {
        let j = cols.trailing_zeros() as usize;
        return matrix[row][j].clone();
    }
    if let Some(hit) = memo.get(&cols) {
        return hit.clone();
    }
    let field = matrix[0][0].field();
    let mut acc = Polynomial::zero(field, matrix[0][0].nvars());
    let mut position = 0u64;
    for j in 0..n {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &matrix[row][j];
        if !entry.is_zero() {
            let sub = minor(matrix, row + 1, cols & !(1 << j), memo);
            let term = (entry * &sub).scale(field.sign(position));
            acc = &acc + &term;
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

fn dickson_matrix(field: PrimeField, n: usize, exps: &[u32]) -> Result<Vec<Vec<Polynomial>>> {
    let p = u64::from(field.characteristic());
    exps.iter()
        .map(|&e| {
            let power = p
                .checked_pow(e)
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| AlgebraError::Budget {
                    what: format!("exponent {p}^{e}"),
                    estimate: u64::MAX,
                    limit: u64::from(u32::MAX),
                })?;
            Ok((0..n)
                .map(|j| Polynomial::monomial(field, Monomial::var(n, j, power), 1))
                .collect())
        })
        .collect()
}

/// `[e_1, ..., e_n]` for strictly increasing exponents.
pub fn dickson_determinant(field: PrimeField, n: usize, exps: &[u32]) -> Result<Polynomial> {
    if n == 0 {
        return Err(AlgebraError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    if exps.len() != n {
        return Err(AlgebraError::InvalidParameter(format!(
            "expected {n} exponents, got {}",
            exps.len()
        )));
    }
    if exps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AlgebraError::InvalidParameter(format!(
            "exponents {exps:?} are not strictly increasing"
        )));
    }
    determinant(&dickson_matrix(field, n, exps)?)
}

/// Leibniz expansion of `det(x_j^{p^{e_k}})` for an arbitrary exponent
/// sequence (repeats and any order allowed). Independent of the cofactor
/// routine; used to cross-check it.
pub fn leibniz_dickson_determinant(
    field: PrimeField,
    n: usize,
    exps: &[u32],
) -> Result<Polynomial> {
    if exps.len() != n || n == 0 {
        return Err(AlgebraError::InvalidParameter(
            "need n >= 1 exponents".into(),
        ));
    }
    let p = u64::from(field.characteristic());
    let powers: Vec<u32> = exps
        .iter()
        .map(|&e| u32::try_from(p.pow(e)).expect("exponent overflow"))
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut terms: Vec<(Vec<u32>, i64)> = Vec::new();
    permutations(&mut perm, 0, &mut |sigma| {
        let inversions = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| sigma[a] > sigma[b])
            .count();
        // row k contributes x_{sigma(k)}^{p^{e_k}}
        let mut e = vec![0u32; n];
        for (k, &j) in sigma.iter().enumerate() {
            e[j] += powers[k];
        }
        terms.push((e, if inversions % 2 == 0 { 1 } else { -1 }));
    });
    Ok(Polynomial::from_terms(field, n, terms))
}

fn permutations(v: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, visit);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn one_by_one() {
        for p in [2, 3, 5] {
            assert_eq!(
                dickson_determinant(f(p), 1, &[0]).unwrap(),
                Polynomial::var(f(p), 1, 0)
            );
        }
    }

    #[test]
    fn two_by_two_char_two() {
        // det [[x1, x2], [x1^2, x2^2]] = x1 x2^2 - x2 x1^2
        let d01 = dickson_determinant(f(2), 2, &[0, 1]).unwrap();
        assert_eq!(
            d01,
            Polynomial::from_terms(f(2), 2, [([1u32, 2], 1), ([2, 1], 1)])
        );
        let d02 = dickson_determinant(f(2), 2, &[0, 2]).unwrap();
        assert_eq!(
            d02,
            Polynomial::from_terms(f(2), 2, [([1u32, 4], 1), ([4, 1], 1)])
        );
    }

    #[test]
    fn rejects_non_increasing() {
        assert!(dickson_determinant(f(3), 2, &[1, 1]).is_err());
        assert!(dickson_determinant(f(3), 2, &[1, 0]).is_err());
        assert!(dickson_determinant(f(3), 2, &[0]).is_err());
    }

    #[test]
    fn cofactor_matches_leibniz() {
        for (p, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (2, 4)] {
            let exps: Vec<u32> = (0..n as u32).collect();
            let mut shifted = exps.clone();
            shifted[0] = n as u32;
            shifted.sort();
            for e in [exps, shifted] {
                assert_eq!(
                    dickson_determinant(f(p), n, &e).unwrap(),
                    leibniz_dickson_determinant(f(p), n, &e).unwrap(),
                    "p={p} n={n} e={e:?}"
                );
            }
        }
    }

    #[test]
    fn alternating() {
        let fld = f(3);
        let a = leibniz_dickson_determinant(fld, 3, &[0, 1, 2]).unwrap();
        let b = leibniz_dickson_determinant(fld, 3, &[1, 0, 2]).unwrap();
        assert_eq!(b, -&a);
        assert!(leibniz_dickson_determinant(fld, 3, &[0, 2, 2])
            .unwrap()
            .is_zero());
    }
}
