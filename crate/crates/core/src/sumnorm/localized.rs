//! Elements of `D_n[Q_{n,0}^{-1}]` written as `num / Q_{n,0}^k`.

use std::fmt;

use super::SumCoefficients;
use crate::dickson::DicksonPoly;

/// `num / X_0^k` with `num` a Dickson polynomial. Always stored normalized:
/// either `k = 0` or `X_0` does not divide `num`.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    num: DicksonPoly,
    k: u32,
}

impl LocalizedElement {
    pub fn new(num: DicksonPoly, k: u32) -> Self {
        let v = if num.is_zero() {
            k
        } else {
            num.x0_valuation().min(k)
        };
        let num = num.div_x0_pow(v).expect("valuation divides");
        LocalizedElement { num, k: k - v }
    }

    pub fn from_poly(num: DicksonPoly) -> Self {
        Self::new(num, 0)
    }

    pub fn numerator(&self) -> &DicksonPoly {
        &self.num
    }

    pub fn denominator_power(&self) -> u32 {
        self.k
    }

    fn x0_pow(&self, e: u32) -> DicksonPoly {
        DicksonPoly::var(self.num.field(), self.num.n(), 0).pow(u64::from(e))
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.k.max(other.k);
        let a = &self.num * &self.x0_pow(k - self.k);
        let b = &other.num * &other.x0_pow(k - other.k);
        Self::new(&a + &b, k)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, self.k + other.k)
    }

    /// `δ_i(num / X_0^k) = (δ_i(num) - k B num) / X_0^k`, using `δ_i(X_0) = B X_0`.
    pub fn delta(&self, coeffs: &SumCoefficients) -> Self {
        let d = coeffs.normalized_delta(&self.num);
        let field = self.num.field();
        let correction =
            (coeffs.b_dickson() * &self.num).scale(field.reduce_u64(u64::from(self.k)));
        Self::new(&d - &correction, self.k)
    }
}

impl PartialEq for LocalizedElement {
    // cross-multiplication: a / X0^k == b / X0^l  iff  a X0^l == b X0^k
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.x0_pow(other.k) == &other.num * &self.x0_pow(self.k)
    }
}

impl Eq for LocalizedElement {}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / Q0^{}", self.num, self.k)
        }
    }
}
