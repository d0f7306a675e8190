//! Seeded random polynomials for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dickson::DicksonPoly;
use crate::field::PrimeField;
use crate::poly::Polynomial;

/// Deterministic generator of sparse polynomials with bounded shape.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Between 1 and `max_terms` terms of total degree at most `max_degree`,
    /// with nonzero coefficients.
    pub fn poly(
        &mut self,
        field: PrimeField,
        nvars: usize,
        max_terms: usize,
        max_degree: u32,
    ) -> Polynomial {
        let p = field.characteristic();
        let count = self.rng.gen_range(1..=max_terms.max(1));
        let terms: Vec<(Vec<u32>, i64)> = (0..count)
            .map(|_| {
                let degree = self.rng.gen_range(0..=max_degree);
                let mut e = vec![0u32; nvars];
                if nvars > 0 {
                    for _ in 0..degree {
                        e[self.rng.gen_range(0..nvars)] += 1;
                    }
                }
                (e, i64::from(self.rng.gen_range(1..p)))
            })
            .collect();
        Polynomial::from_terms(field, nvars, terms)
    }

    /// Random Dickson polynomial in `X_0..X_{n-1}`.
    pub fn dickson(
        &mut self,
        field: PrimeField,
        n: usize,
        max_terms: usize,
        max_degree: u32,
    ) -> DicksonPoly {
        DicksonPoly::from_poly(self.poly(field, n, max_terms, max_degree))
    }

    /// Like [`Sampler::dickson`] but never zero.
    pub fn nonzero_dickson(
        &mut self,
        field: PrimeField,
        n: usize,
        max_terms: usize,
        max_degree: u32,
    ) -> DicksonPoly {
        loop {
            let f = self.dickson(field, n, max_terms, max_degree);
            if !f.is_zero() {
                return f;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let f = PrimeField::new(5).unwrap();
        let a: Vec<_> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.poly(f, 3, 4, 3)).collect()
        };
        let b: Vec<_> = {
            let mut s = Sampler::new(7);
            (0..5).map(|_| s.poly(f, 3, 4, 3)).collect()
        };
        assert_eq!(a, b);
        for g in &a {
            assert!(g.degree().unwrap_or(0) <= 3);
            assert!(g.num_terms() <= 4);
        }
    }
}
