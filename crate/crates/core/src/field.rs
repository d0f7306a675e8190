//! Arithmetic in the prime field `F_p` for small primes.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::AlgebraError;

/// Largest characteristic accepted by [`PrimeField::new`].
pub const MAX_PRIME: u32 = 251;

/// The prime field `F_p`. Elements are plain `u32` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidParameter(format!("{p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(AlgebraError::InvalidParameter(format!(
                "characteristic {p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, u64::from(self.p - 2)))
        }
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(i64::from(self.p)) as u32
    }

    #[inline]
    pub fn reduce_u64(self, a: u64) -> u32 {
        (a % u64::from(self.p)) as u32
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(self, k: u64) -> u32 {
        if k.is_multiple_of(2) {
            1 % self.p
        } else {
            self.p - 1
        }
    }

    /// `m!` reduced mod p.
    pub fn factorial(self, m: u64) -> u32 {
        if m >= u64::from(self.p) {
            return 0;
        }
        (1..=m).fold(1 % self.p, |acc, k| self.mul(acc, self.reduce_u64(k)))
    }

    /// Signed representative in `(-p/2, p/2]`, used only for display.
    pub fn centered(self, a: u32) -> i64 {
        let a = i64::from(a);
        let p = i64::from(self.p);
        if 2 * a > p {
            a - p
        } else {
            a
        }
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = AlgebraError;

    fn try_from(p: u32) -> Result<Self, Self::Error> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(9).is_err());
        for p in [2, 3, 5, 7, 11, 13] {
            assert!(PrimeField::new(p).is_ok());
        }
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn factorial_and_sign() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.factorial(3), 1); // 6 mod 5
        assert_eq!(f5.factorial(5), 0);
        assert_eq!(f5.factorial(0), 1);
        assert_eq!(f5.sign(3), 4);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.sign(1), 1);
        assert_eq!(f2.reduce(-3), 1);
    }
}
