//! Dickson invariants `Q_{n,s}` for fixed `(p, n)` and conversion between
//! `x`-coordinates and Dickson coordinates.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

use crate::budget;
use crate::determinant::dickson_determinant;
use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::linalg::{solve_columns, SparseRow};
use crate::poly::{Monomial, Polynomial};

/// Weighted degree `p^n - p^s` of `Q_{n,s}`.
pub fn generator_weights(field: PrimeField, n: usize) -> Vec<u64> {
    let p = u64::from(field.characteristic());
    let top = p.pow(n as u32);
    (0..n).map(|s| top - p.pow(s as u32)).collect()
}

/// A polynomial in the abstract Dickson variables `X_0, ..., X_{n-1}`,
/// where `X_s` stands for `Q_{n,s}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DicksonPoly(Polynomial);

impl DicksonPoly {
    pub fn from_poly(poly: Polynomial) -> Self {
        DicksonPoly(poly)
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        DicksonPoly(Polynomial::zero(field, n))
    }

    pub fn one(field: PrimeField, n: usize) -> Self {
        DicksonPoly(Polynomial::one(field, n))
    }

    pub fn constant(field: PrimeField, n: usize, c: i64) -> Self {
        DicksonPoly(Polynomial::constant(field, n, c))
    }

    /// The generator `X_s`.
    pub fn var(field: PrimeField, n: usize, s: usize) -> Self {
        DicksonPoly(Polynomial::var(field, n, s))
    }

    pub fn as_poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_poly(self) -> Polynomial {
        self.0
    }

    pub fn field(&self) -> PrimeField {
        self.0.field()
    }

    pub fn n(&self) -> usize {
        self.0.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn weights(&self) -> Vec<u64> {
        generator_weights(self.field(), self.n())
    }

    /// Largest weighted degree of a term; `None` for zero.
    pub fn weighted_degree(&self) -> Option<u64> {
        let w = self.weights();
        self.0.terms().map(|(m, _)| m.weighted_degree(&w)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.components_by_weight(&self.weights()).len() <= 1
    }

    pub fn pow(&self, k: u64) -> Self {
        DicksonPoly(self.0.pow(k))
    }

    pub fn scale(&self, c: u32) -> Self {
        DicksonPoly(self.0.scale(c))
    }

    /// `d/dX_s`.
    pub fn partial(&self, s: usize) -> Result<Self> {
        self.0.partial(s).map(DicksonPoly)
    }

    /// Exact division by `X_0^k`, if possible.
    pub fn div_x0_pow(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return Some(self.clone());
        }
        let m = Monomial::var(self.n(), 0, k);
        let mut terms = Vec::with_capacity(self.0.num_terms());
        for (t, c) in self.0.terms() {
            let q = m.quotient_of(t)?;
            terms.push((q.exponents().to_vec(), i64::from(c)));
        }
        Some(DicksonPoly(Polynomial::from_terms(
            self.field(),
            self.n(),
            terms,
        )))
    }

    /// Largest `k` with `X_0^k` dividing every term (0 for the zero polynomial).
    pub fn x0_valuation(&self) -> u32 {
        self.0
            .terms()
            .map(|(m, _)| m.exponents()[0])
            .min()
            .unwrap_or(0)
    }
}

impl fmt::Display for DicksonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render_with(|s| format!("Q{s}")))
    }
}

impl fmt::Debug for DicksonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DicksonPoly[{}; n={}]({})", self.field(), self.n(), self)
    }
}

impl<'a> Add<&'a DicksonPoly> for &'a DicksonPoly {
    type Output = DicksonPoly;
    fn add(self, rhs: &'a DicksonPoly) -> DicksonPoly {
        DicksonPoly(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a DicksonPoly> for &'a DicksonPoly {
    type Output = DicksonPoly;
    fn sub(self, rhs: &'a DicksonPoly) -> DicksonPoly {
        DicksonPoly(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a DicksonPoly> for &'a DicksonPoly {
    type Output = DicksonPoly;
    fn mul(self, rhs: &'a DicksonPoly) -> DicksonPoly {
        DicksonPoly(&self.0 * &rhs.0)
    }
}

impl Neg for &DicksonPoly {
    type Output = DicksonPoly;
    fn neg(self) -> DicksonPoly {
        DicksonPoly(-&self.0)
    }
}

const PRODUCT_CACHE_LIMIT: usize = 20_000;

/// The Dickson generators for fixed `(p, n)`.
pub struct DicksonFrame {
    field: PrimeField,
    n: usize,
    ln: Polynomial,
    lns: Vec<Polynomial>,
    q: Vec<Polynomial>,
    q0: Polynomial,
    weighted_degrees: Vec<u64>,
    products: Mutex<HashMap<Monomial, Polynomial>>,
}

impl fmt::Debug for DicksonFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DicksonFrame")
            .field("p", &self.field.characteristic())
            .field("n", &self.n)
            .field("weighted_degrees", &self.weighted_degrees)
            .finish()
    }
}

impl DicksonFrame {
    /// Builds `L_n`, `L_{n,s}`, `Q_{n,s}` and `Q_{n,0} = L_n^{p-1}`, checking
    /// every division by re-multiplication.
    pub fn build(field: PrimeField, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::InvalidParameter(
                "n must be at least 1".into(),
            ));
        }
        budget::check_frame(field, n)?;
        let n32 = n as u32;
        let ln = dickson_determinant(field, n, &(0..n32).collect::<Vec<_>>())?;
        let mut lns = Vec::with_capacity(n);
        let mut q = Vec::with_capacity(n);
        for s in 0..n32 {
            let exps: Vec<u32> = (0..=n32).filter(|&e| e != s).collect();
            let l = dickson_determinant(field, n, &exps)?;
            let quotient = l.exact_div(&ln)?;
            if &quotient * &ln != l {
                return Err(AlgebraError::NotDivisible);
            }
            lns.push(l);
            q.push(quotient);
        }
        let q0 = ln.pow(u64::from(field.characteristic() - 1));
        if q0 != q[0] {
            return Err(AlgebraError::InvalidParameter(
                "L_n^(p-1) disagrees with L_{n,0}/L_n".into(),
            ));
        }
        let weighted_degrees = generator_weights(field, n);
        for (s, qs) in q.iter().enumerate() {
            if qs.degree() != Some(weighted_degrees[s]) || !qs.is_homogeneous() {
                return Err(AlgebraError::InvalidParameter(format!(
                    "Q_{{{n},{s}}} has unexpected degree {:?}",
                    qs.degree()
                )));
            }
        }
        Ok(DicksonFrame {
            field,
            n,
            ln,
            lns,
            q,
            q0,
            weighted_degrees,
            products: Mutex::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ln(&self) -> &Polynomial {
        &self.ln
    }

    pub fn lns(&self) -> &[Polynomial] {
        &self.lns
    }

    /// `Q_{n,s}` for `0 <= s < n`.
    pub fn q(&self, s: usize) -> &Polynomial {
        &self.q[s]
    }

    pub fn qs(&self) -> &[Polynomial] {
        &self.q
    }

    pub fn q0(&self) -> &Polynomial {
        &self.q0
    }

    pub fn weighted_degrees(&self) -> &[u64] {
        &self.weighted_degrees
    }

    fn check(&self, f: &DicksonPoly) -> Result<()> {
        if f.field() != self.field || f.n() != self.n {
            return Err(AlgebraError::RingMismatch(format!(
                "Dickson polynomial over {} with n={} vs frame over {} with n={}",
                f.field(),
                f.n(),
                self.field,
                self.n
            )));
        }
        Ok(())
    }

    /// `prod_s Q_{n,s}^{m_s}`, memoized.
    pub fn product(&self, exps: &Monomial) -> Polynomial {
        if let Some(hit) = self.products.lock().unwrap().get(exps) {
            return hit.clone();
        }
        // peel one factor off the largest exponent to reuse cached prefixes
        let value = match exps.exponents().iter().rposition(|&e| e > 0) {
            None => Polynomial::one(self.field, self.n),
            Some(s) => {
                let mut rest = exps.exponents().to_vec();
                rest[s] -= 1;
                &self.product(&Monomial::new(&rest)) * &self.q[s]
            }
        };
        let mut cache = self.products.lock().unwrap();
        if cache.len() >= PRODUCT_CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(exps.clone(), value.clone());
        value
    }

    /// `f(Q_{n,0}, ..., Q_{n,n-1})` in `P_n`.
    pub fn expand(&self, f: &DicksonPoly) -> Result<Polynomial> {
        self.check(f)?;
        let mut out = Polynomial::zero(self.field, self.n);
        for (m, c) in f.as_poly().terms() {
            out = &out + &self.product(m).scale(c);
        }
        Ok(out)
    }

    /// Exponent tuples `(m_0, ..., m_{n-1})` with `sum m_s (p^n - p^s) = degree`.
    pub fn tuples_of_weight(&self, degree: u64) -> Vec<Monomial> {
        fn rec(w: &[u64], s: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if s == w.len() {
                if left == 0 {
                    out.push(Monomial::new(cur));
                }
                return;
            }
            let mut k = 0u64;
            while k * w[s] <= left {
                cur.push(k as u32);
                rec(w, s + 1, left - k * w[s], cur, out);
                cur.pop();
                k += 1;
            }
        }
        let mut out = Vec::new();
        rec(&self.weighted_degrees, 0, degree, &mut Vec::new(), &mut out);
        out
    }

    /// The unique `h` with `expand(h) = g`, or `NotInDickson` if `g` does not
    /// lie in the Dickson algebra. Each homogeneous component is solved as a
    /// linear system over `F_p` and the answer is certified by re-expansion.
    pub fn express(&self, g: &Polynomial) -> Result<DicksonPoly> {
        if g.field() != self.field || g.nvars() != self.n {
            return Err(AlgebraError::RingMismatch(
                "polynomial and frame live in different rings".into(),
            ));
        }
        let mut result = Polynomial::zero(self.field, self.n);
        for (degree, component) in g.homogeneous_components() {
            let tuples = self.tuples_of_weight(degree);
            if tuples.is_empty() {
                return Err(AlgebraError::NotInDickson { degree });
            }
            let mut index: HashMap<Monomial, usize> = HashMap::new();
            let mut to_row = |p: &Polynomial| -> SparseRow {
                let mut row: SparseRow = p
                    .terms()
                    .map(|(m, c)| {
                        let next = index.len();
                        (*index.entry(m.clone()).or_insert(next), c)
                    })
                    .collect();
                row.sort_unstable();
                row
            };
            let columns: Vec<SparseRow> = tuples.iter().map(|t| to_row(&self.product(t))).collect();
            let target = to_row(&component);
            let x = solve_columns(self.field, &columns, &target)
                .ok_or(AlgebraError::NotInDickson { degree })?;
            for (t, &c) in tuples.iter().zip(&x) {
                if c != 0 {
                    result = &result + &Polynomial::monomial(self.field, t.clone(), i64::from(c));
                }
            }
        }
        let h = DicksonPoly(result);
        if self.expand(&h)? != *g {
            return Err(AlgebraError::NotInDickson {
                degree: g.degree().unwrap_or(0),
            });
        }
        Ok(h)
    }
}
