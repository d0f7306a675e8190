//! The Milnor primitive `St^{Δ_i}` acting on `P_n` as the derivation with
//! `x_j ↦ x_j^{p^i}`.

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::poly::{Monomial, Polynomial};

/// The `i`-th Milnor primitive over a fixed field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MilnorPrimitive {
    field: PrimeField,
    i: u32,
    // p^i - 1, the degree shift
    shift: u32,
}

impl MilnorPrimitive {
    pub fn new(field: PrimeField, i: u32) -> Result<Self> {
        if i == 0 {
            return Err(AlgebraError::InvalidParameter(
                "operation index i must be at least 1".into(),
            ));
        }
        let pi = u64::from(field.characteristic())
            .checked_pow(i)
            .filter(|&v| v <= crate::budget::EXPONENT_LIMIT)
            .ok_or_else(|| AlgebraError::Budget {
                what: format!("p^i for p={}, i={i}", field.characteristic()),
                estimate: u64::MAX,
                limit: crate::budget::EXPONENT_LIMIT,
            })?;
        Ok(MilnorPrimitive {
            field,
            i,
            shift: (pi - 1) as u32,
        })
    }

    pub fn index(&self) -> u32 {
        self.i
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `p^i - 1`, the degree added by one application.
    pub fn degree_shift(&self) -> u32 {
        self.shift
    }

    /// One application: on `prod x_j^{a_j}` this is
    /// `sum_j a_j x_j^{a_j - 1 + p^i} prod_{k != j} x_k^{a_k}`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.field(), self.field, "field mismatch");
        let field = self.field;
        let shift = self.shift;
        f.map_terms(f.nvars(), |m: &Monomial, c, emit| {
            for (j, &a) in m.exponents().iter().enumerate() {
                let k = field.reduce_u64(u64::from(a));
                if k == 0 {
                    continue;
                }
                let mut e = m.exponents().to_vec();
                e[j] = a.checked_add(shift).expect("exponent overflow");
                emit(Monomial::new(&e), field.mul(c, k));
            }
        })
    }

    /// `m`-fold composition (`m = 0` is the identity).
    pub fn iterate(&self, m: u32, f: &Polynomial) -> Polynomial {
        let mut g = f.clone();
        for _ in 0..m {
            if g.is_zero() {
                break;
            }
            g = self.apply(&g);
        }
        g
    }
}
