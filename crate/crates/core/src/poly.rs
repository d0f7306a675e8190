//! Sparse multivariate polynomials over `F_p`.
//!
//! A [`Polynomial`] is a map from exponent vectors to nonzero residues.
//! Every constructor and arithmetic routine evicts zero coefficients, so
//! two polynomials are equal exactly when their term maps are equal.
//! Monomials are ordered graded-lexicographically with `x1 > x2 > ... > xn`.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn new(exponents: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, j: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[j] = e;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| u64::from(e) * w)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of monomials. Panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(b, a)| b - a)
                .collect(),
        ))
    }

    fn scaled(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `nvars` variables over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Self {
        Self::monomial(field, Monomial::one(nvars), c)
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    /// The variable `x_{j+1}` (zero-based index `j`).
    pub fn var(field: PrimeField, nvars: usize, j: usize) -> Self {
        assert!(
            j < nvars,
            "variable index {j} out of range for {nvars} variables"
        );
        Self::monomial(field, Monomial::var(nvars, j, 1), 1)
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: i64) -> Self {
        let mut p = Self::zero(field, m.nvars());
        let c = field.reduce(c);
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// repeated monomials.
    pub fn from_terms<I, E>(field: PrimeField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (E, i64)>,
        E: AsRef<[u32]>,
    {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            let e = e.as_ref();
            assert_eq!(e.len(), nvars, "exponent vector has wrong length");
            p.add_term(Monomial::new(e), field.reduce(c));
        }
        p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Monomial::one(self.nvars)) == 1
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Splits into components keyed by weighted degree.
    pub fn components_by_weight(&self, weights: &[u64]) -> BTreeMap<u64, Polynomial> {
        let mut out: BTreeMap<u64, Polynomial> = BTreeMap::new();
        for (m, &c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_insert_with(|| Polynomial::zero(self.field, self.nvars))
                .terms
                .insert(m.clone(), c);
        }
        out
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u64, Polynomial> {
        self.components_by_weight(&vec![1; self.nvars])
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let field = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(AlgebraError::RingMismatch(format!(
                "{}[{} vars] vs {}[{} vars]",
                self.field, self.nvars, other.field, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.field, self.nvars));
        }
        let f = self.field;
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        Ok(Polynomial {
            field: f,
            nvars: self.nvars,
            terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
        })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return Polynomial::zero(self.field, self.nvars);
        }
        let f = self.field;
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), f.mul(a, c)))
                .collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(f, self.nvars);
        }
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, &ca)| (a.mul(m), f.mul(ca, c)))
                .collect(),
        }
    }

    /// `self^k` with `a^0 = 1` for every `a`, including zero.
    pub fn pow(&self, k: u64) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        if k == 0 {
            return acc;
        }
        if self.is_zero() {
            return self.clone();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.leading_term().unwrap();
            let k32 = u32::try_from(k).expect("exponent overflow");
            return Polynomial::monomial(
                self.field,
                m.scaled(k32),
                i64::from(self.field.pow(c, k)),
            );
        }
        let p = u64::from(self.field.characteristic());
        // Peel off p-th powers via Frobenius; the remaining digits use squaring.
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            let digit = k % p;
            if digit > 0 {
                let mut piece = Polynomial::one(self.field, self.nvars);
                let mut b = base.clone();
                let mut d = digit;
                while d > 0 {
                    if d & 1 == 1 {
                        piece = &piece * &b;
                    }
                    d >>= 1;
                    if d > 0 {
                        b = &b * &b;
                    }
                }
                acc = &acc * &piece;
            }
            k /= p;
            if k > 0 {
                base = base.frobenius();
            }
        }
        acc
    }

    /// `self^p`, computed by multiplying exponents by `p`.
    pub fn frobenius(&self) -> Polynomial {
        let p = self.field.characteristic();
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &c)| (m.scaled(p), c)).collect(),
        }
    }

    /// Inverse of Frobenius: `r` with `r^p = self`, when every exponent is
    /// divisible by `p`.
    pub fn pth_root(&self) -> Result<Polynomial> {
        let p = self.field.characteristic();
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            if m.0.iter().any(|e| e % p != 0) {
                return Err(AlgebraError::NotPthPower);
            }
            terms.insert(Monomial(m.0.iter().map(|e| e / p).collect()), c);
        }
        Ok(Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms,
        })
    }

    /// Division with remainder by a single polynomial: every term divisible
    /// by the leading monomial of `divisor` is reduced, largest first.
    /// The remainder is zero exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_ring(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c),
            None => return Err(AlgebraError::DivisionByZero),
        };
        let f = self.field;
        let lc_inv = f.inv(lc).expect("nonzero leading coefficient");
        let mut quotient = Polynomial::zero(f, self.nvars);
        let mut remainder = Polynomial::zero(f, self.nvars);
        let mut work = self.clone();
        while let Some((m, c)) = work.terms.iter().next_back().map(|(m, &c)| (m.clone(), c)) {
            match lm.quotient_of(&m) {
                Some(qm) => {
                    let qc = f.mul(c, lc_inv);
                    quotient.add_term(qm.clone(), qc);
                    for (dm, &dc) in &divisor.terms {
                        work.add_term(dm.mul(&qm), f.neg(f.mul(dc, qc)));
                    }
                }
                None => {
                    work.terms.remove(&m);
                    remainder.add_term(m, c);
                }
            }
        }
        Ok((quotient, remainder))
    }

    /// Exact quotient `self / divisor`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible)
        }
    }

    /// Formal partial derivative with respect to the variable at zero-based
    /// index `j`.
    pub fn partial(&self, j: usize) -> Result<Polynomial> {
        if j >= self.nvars {
            return Err(AlgebraError::IndexOutOfRange {
                index: j,
                nvars: self.nvars,
            });
        }
        let f = self.field;
        let mut out = Polynomial::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[j];
            let k = f.reduce_u64(u64::from(e));
            if k == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[j] = e - 1;
            out.add_term(dm, f.mul(c, k));
        }
        Ok(out)
    }

    /// Evaluates `self` at `images`, one polynomial per variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(AlgebraError::InvalidParameter(format!(
                "substitution needs {} images, got {}",
                self.nvars,
                images.len()
            )));
        }
        let (field, target_nvars) = match images.first() {
            Some(g) => (g.field, g.nvars),
            None => {
                // Zero-variable polynomial: its constant lives in any ring;
                // callers with no images get a zero-variable result.
                return Ok(self.clone());
            }
        };
        for g in images {
            if g.field != field || g.nvars != target_nvars {
                return Err(AlgebraError::RingMismatch(
                    "substitution images live in different rings".into(),
                ));
            }
        }
        if field != self.field {
            return Err(AlgebraError::RingMismatch(format!(
                "substituting {} images into a polynomial over {}",
                field, self.field
            )));
        }
        let mut cache: Vec<HashMap<u32, Polynomial>> = vec![HashMap::new(); self.nvars];
        let mut out = Polynomial::zero(field, target_nvars);
        for (m, &c) in &self.terms {
            let mut term = Polynomial::constant(field, target_nvars, i64::from(c));
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let power = cache[j]
                    .entry(e)
                    .or_insert_with(|| images[j].pow(u64::from(e)));
                term = &term * power;
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Applies `map` to every term, accumulating the results. Used for
    /// linear operators defined on monomials.
    pub fn map_terms<F>(&self, nvars: usize, mut map: F) -> Polynomial
    where
        F: FnMut(&Monomial, u32, &mut dyn FnMut(Monomial, u32)),
    {
        let mut out = Polynomial::zero(self.field, nvars);
        for (m, &c) in &self.terms {
            map(m, c, &mut |mm, cc| out.add_term(mm, cc));
        }
        out
    }

    /// Sorted term list in the `coeff:e1,e2,...,en` text form, leading term first.
    pub fn to_term_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let exps: Vec<String> = m.0.iter().map(u32::to_string).collect();
                format!("{c}:{}", exps.join(","))
            })
            .collect()
    }

    /// Parses whitespace-separated `coeff:e1,...,en` terms. An empty string
    /// (or a lone `0`) is the zero polynomial and then `nvars` must be given.
    pub fn parse_terms(field: PrimeField, nvars: Option<usize>, text: &str) -> Result<Polynomial> {
        let mut terms: Vec<(Vec<u32>, i64)> = Vec::new();
        for tok in text
            .split(|c: char| c.is_whitespace() || c == '+')
            .filter(|t| !t.is_empty())
        {
            if tok == "0" {
                continue;
            }
            let bad = || AlgebraError::InvalidParameter(format!("malformed term `{tok}`"));
            let (c, e) = tok.split_once(':').ok_or_else(bad)?;
            let c: i64 = c.trim().parse().map_err(|_| bad())?;
            let exps: Vec<u32> = if e.trim().is_empty() {
                Vec::new()
            } else {
                e.split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad())?
            };
            terms.push((exps, c));
        }
        let n = match (nvars, terms.first()) {
            (Some(n), _) => n,
            (None, Some((e, _))) => e.len(),
            (None, None) => {
                return Err(AlgebraError::InvalidParameter(
                    "cannot infer the variable count of an empty polynomial".into(),
                ))
            }
        };
        if let Some((e, _)) = terms.iter().find(|(e, _)| e.len() != n) {
            return Err(AlgebraError::InvalidParameter(format!(
                "term has {} exponents, expected {n}",
                e.len()
            )));
        }
        Ok(Polynomial::from_terms(field, n, terms))
    }

    /// Renders with caller-supplied variable names, leading term first.
    pub fn render_with<F: Fn(usize) -> String>(&self, name: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, &c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(name(j)),
                    _ => factors.push(format!("{}^{e}", name(j))),
                }
            }
            let s = if factors.is_empty() {
                c.to_string()
            } else if c == 1 {
                factors.join("*")
            } else {
                format!("{c}*{}", factors.join("*"))
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|j| format!("x{}", j + 1)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}; {}]({})", self.field, self.nvars, self)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("ring mismatch in multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.field.characteristic() - 1)
    }
}

/// Serialized form: `{"p": .., "n": .., "terms": ["c:e1,..,en", ..]}`.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    p: u32,
    n: usize,
    terms: Vec<String>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            p: self.field.characteristic(),
            n: self.nvars,
            terms: self.to_term_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let field = PrimeField::new(repr.p).map_err(serde::de::Error::custom)?;
        Polynomial::parse_terms(field, Some(repr.n), &repr.terms.join(" "))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u32, n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(f(p), n, terms.iter().map(|&(e, c)| (e, c)))
    }

    #[test]
    fn char_two_cancellation() {
        let a = poly(2, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!((&a + &a).is_zero());
    }

    #[test]
    fn freshmans_dream_by_multiplication() {
        let a = poly(2, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(&a * &a, poly(2, 2, &[(&[2, 0], 1), (&[0, 2], 1)]));
    }

    #[test]
    fn q21_times_q20_is_l21() {
        // term-by-term: (x1^2+x1x2+x2^2)(x1^2x2+x1x2^2); the six cross terms
        // x1^3x2^2, x1^2x2^3 each appear twice and cancel mod 2
        let q21 = poly(2, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        let q20 = poly(2, 2, &[(&[2, 1], 1), (&[1, 2], 1)]);
        assert_eq!(&q21 * &q20, poly(2, 2, &[(&[4, 1], 1), (&[1, 4], 1)]));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Polynomial::var(f(2), 2, 0);
        let b = Polynomial::var(f(3), 2, 0);
        let c = Polynomial::var(f(2), 3, 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgebraError::RingMismatch(_))
        ));
        assert!(matches!(
            a.checked_mul(&c),
            Err(AlgebraError::RingMismatch(_))
        ));
    }

    #[test]
    fn powers() {
        let x1 = Polynomial::var(f(2), 2, 0);
        assert!(x1.pow(0).is_one());
        assert!(Polynomial::zero(f(2), 2).pow(0).is_one());
        let l2 = poly(2, 2, &[(&[1, 2], 1), (&[2, 1], 1)]);
        assert_eq!(l2.pow(1), l2);
        assert_eq!(l2.pow(2), poly(2, 2, &[(&[2, 4], 1), (&[4, 2], 1)]));
        let g = poly(3, 2, &[(&[1, 0], 1), (&[0, 1], 2), (&[0, 0], 1)]);
        let mut naive = Polynomial::one(f(3), 2);
        for k in 0..11u64 {
            assert_eq!(g.pow(k), naive, "k = {k}");
            naive = &naive * &g;
        }
    }

    #[test]
    fn exact_division() {
        let l21 = poly(2, 2, &[(&[1, 4], 1), (&[4, 1], 1)]);
        let l2 = poly(2, 2, &[(&[1, 2], 1), (&[2, 1], 1)]);
        let q = l21.exact_div(&l2).unwrap();
        assert_eq!(q, poly(2, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]));
        assert_eq!(&q * &l2, l21);
        assert_eq!(l21.exact_div(&Polynomial::one(f(2), 2)).unwrap(), l21);
        let a = poly(3, 2, &[(&[2, 0], 1), (&[0, 0], 1)]);
        let x2 = Polynomial::var(f(3), 2, 1);
        assert_eq!(a.exact_div(&x2), Err(AlgebraError::NotDivisible));
        assert_eq!(
            a.exact_div(&Polynomial::zero(f(3), 2)),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn pth_roots() {
        let a = poly(2, 2, &[(&[2, 4], 1), (&[4, 2], 1)]);
        let r = a.pth_root().unwrap();
        assert_eq!(r, poly(2, 2, &[(&[1, 2], 1), (&[2, 1], 1)]));
        assert_eq!(r.pow(2), a);
        assert!(Polynomial::zero(f(2), 2).pth_root().unwrap().is_zero());
        let b = poly(3, 1, &[(&[3], 1), (&[1], 1)]);
        assert_eq!(b.pth_root(), Err(AlgebraError::NotPthPower));
    }

    #[test]
    fn partial_derivatives() {
        for p in [2u32, 3, 5] {
            let xp = Polynomial::var(f(p), 1, 0).pow(u64::from(p));
            assert!(xp.partial(0).unwrap().is_zero());
        }
        let a = poly(3, 2, &[(&[2, 1], 1)]);
        assert_eq!(a.partial(0).unwrap(), poly(3, 2, &[(&[1, 1], 2)]));
        let q21 = poly(2, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        assert_eq!(q21.partial(1).unwrap(), Polynomial::var(f(2), 2, 0));
        assert!(matches!(
            q21.partial(2),
            Err(AlgebraError::IndexOutOfRange { index: 2, nvars: 2 })
        ));
    }

    #[test]
    fn substitution() {
        let q20 = poly(2, 2, &[(&[2, 1], 1), (&[1, 2], 1)]);
        let q21 = poly(2, 2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)]);
        let x0 = Polynomial::var(f(2), 2, 0);
        let images = [q20.clone(), q21.clone()];
        assert_eq!(x0.substitute(&images).unwrap(), q20);
        let prod = poly(2, 2, &[(&[1, 1], 1)]);
        assert_eq!(
            prod.substitute(&images).unwrap(),
            poly(2, 2, &[(&[4, 1], 1), (&[1, 4], 1)])
        );
        let sq = poly(2, 1, &[(&[2], 1)]);
        assert_eq!(
            sq.substitute(std::slice::from_ref(&q21)).unwrap(),
            q21.pow(2)
        );
        assert!(prod.substitute(&[q20]).is_err());
    }

    #[test]
    fn term_strings_round_trip() {
        let a = poly(5, 3, &[(&[2, 0, 1], 3), (&[0, 0, 0], 4), (&[1, 1, 1], 1)]);
        let text = a.to_term_strings().join(" ");
        assert_eq!(text, "3:2,0,1 1:1,1,1 4:0,0,0");
        assert_eq!(Polynomial::parse_terms(f(5), None, &text).unwrap(), a);
        assert!(Polynomial::parse_terms(f(5), None, "3:1,x").is_err());
        assert!(Polynomial::parse_terms(f(5), Some(2), "3:1,0,0").is_err());
        assert_eq!(a.to_string(), "3*x1^2*x3 + x1*x2*x3 + 4");
    }

    #[test]
    fn graded_lex_order() {
        let big = Monomial::new(&[0, 3]);
        let small = Monomial::new(&[2, 0]);
        assert!(big > small);
        assert!(Monomial::new(&[2, 1]) > Monomial::new(&[1, 2]));
    }
}
