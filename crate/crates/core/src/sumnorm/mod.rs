//! Structural coefficients of the action of `St^{Δ_i}` on the Dickson
//! generators, the normalized derivation `δ_i` on `D_n`, and closed forms
//! for iterates.
//!
//! For every generator the action has the shape
//! `St(Q_s) = (-1)^n Q_0 (A_s + B Q_s)` with `A_s = P_s^p`, `B = R^p` in
//! `D_n` and `A_0 = 0`. The coefficients are recovered here by exact
//! division: `T_s = (-1)^n St(Q_s) / Q_0`, then `B = T_0 / Q_0` and
//! `A_s = T_s - B Q_s`. Every step is checked, so a successful extraction
//! is a verification of the shape at the given `(p, n, i)`.

mod localized;
mod stirling;

pub use localized::LocalizedElement;
pub use stirling::{stirling, StirlingTable, MAX_ROW as STIRLING_MAX_ROW};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::dickson::{DicksonFrame, DicksonPoly};
use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::milnor::MilnorPrimitive;
use crate::poly::Polynomial;

/// The step of the extraction pipeline that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionStage {
    /// `Q_0` must divide `St(Q_s)`.
    ImageDivisibility,
    /// `Q_0` must divide `T_0`, which forces `A_0 = 0`.
    BDivisibility,
    /// `A_0 = T_0 - B Q_0` must vanish.
    ZeroFirstCoefficient,
    /// `A_s` and `B` must be p-th powers.
    PthRoot,
    /// `A_s`, `B` and their roots must lie in `D_n`.
    DicksonMembership,
    /// Re-expanding the Dickson forms must reproduce `St(Q_s)`.
    Reconstruction,
}

impl fmt::Display for ExtractionStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExtractionStage::ImageDivisibility => "Q0 divides St(Q_s)",
            ExtractionStage::BDivisibility => "Q0 divides T_0",
            ExtractionStage::ZeroFirstCoefficient => "A_0 = 0",
            ExtractionStage::PthRoot => "p-th root",
            ExtractionStage::DicksonMembership => "membership in D_n",
            ExtractionStage::Reconstruction => "reconstruction of St(Q_s)",
        };
        f.write_str(s)
    }
}

/// A failed extraction: the structural identity is falsified at these
/// parameters (or the request was invalid).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("extraction failed at p={p}, n={n}, i={i}, stage `{stage}`{}: {cause}",
        .s.map(|s| format!(" (s={s})")).unwrap_or_default())]
pub struct ExtractionError {
    pub p: u32,
    pub n: usize,
    pub i: u32,
    pub stage: ExtractionStage,
    pub s: Option<usize>,
    pub cause: AlgebraError,
}

/// `A_s`, `B` and their p-th roots `P_s`, `R` for one `(p, n, i)`, in both
/// coordinate systems.
#[derive(Debug, Clone)]
pub struct SumCoefficients {
    frame: Arc<DicksonFrame>,
    st: MilnorPrimitive,
    a: Vec<Polynomial>,
    b: Polynomial,
    p_roots: Vec<Polynomial>,
    r_root: Polynomial,
    a_dickson: Vec<DicksonPoly>,
    b_dickson: DicksonPoly,
    p_roots_dickson: Vec<DicksonPoly>,
    r_root_dickson: DicksonPoly,
    // δ_i(X_s) = A_s + B X_s
    generator_images: Vec<DicksonPoly>,
}

impl SumCoefficients {
    /// Runs the extraction pipeline for the `i`-th primitive.
    pub fn extract(frame: Arc<DicksonFrame>, i: u32) -> std::result::Result<Self, ExtractionError> {
        let field = frame.field();
        let n = frame.n();
        let fail = |stage, s, cause| ExtractionError {
            p: field.characteristic(),
            n,
            i,
            stage,
            s,
            cause,
        };
        let st = MilnorPrimitive::new(field, i)
            .map_err(|e| fail(ExtractionStage::ImageDivisibility, None, e))?;
        let sign = field.sign(n as u64);
        let q0 = frame.q0();

        let images: Vec<Polynomial> = frame.qs().iter().map(|q| st.apply(q)).collect();
        let t: Vec<Polynomial> = images
            .iter()
            .enumerate()
            .map(|(s, img)| {
                img.exact_div(q0)
                    .map(|q| q.scale(sign))
                    .map_err(|e| fail(ExtractionStage::ImageDivisibility, Some(s), e))
            })
            .collect::<std::result::Result<_, _>>()?;
        let b = t[0]
            .exact_div(q0)
            .map_err(|e| fail(ExtractionStage::BDivisibility, Some(0), e))?;
        let a: Vec<Polynomial> = (0..n).map(|s| &t[s] - &(&b * frame.q(s))).collect();
        if !a[0].is_zero() {
            return Err(fail(
                ExtractionStage::ZeroFirstCoefficient,
                Some(0),
                AlgebraError::NotDivisible,
            ));
        }

        let r_root = b
            .pth_root()
            .map_err(|e| fail(ExtractionStage::PthRoot, None, e))?;
        let p_roots: Vec<Polynomial> = a
            .iter()
            .enumerate()
            .map(|(s, a_s)| {
                a_s.pth_root()
                    .map_err(|e| fail(ExtractionStage::PthRoot, Some(s), e))
            })
            .collect::<std::result::Result<_, _>>()?;

        let express = |g: &Polynomial, s: Option<usize>| {
            frame
                .express(g)
                .map_err(|e| fail(ExtractionStage::DicksonMembership, s, e))
        };
        let b_dickson = express(&b, None)?;
        let r_root_dickson = express(&r_root, None)?;
        let a_dickson: Vec<DicksonPoly> = a
            .iter()
            .enumerate()
            .map(|(s, g)| express(g, Some(s)))
            .collect::<std::result::Result<_, _>>()?;
        let p_roots_dickson: Vec<DicksonPoly> = p_roots
            .iter()
            .enumerate()
            .map(|(s, g)| express(g, Some(s)))
            .collect::<std::result::Result<_, _>>()?;

        // Rebuild St(Q_s) from the Dickson forms alone.
        let b_x = frame.expand(&b_dickson).expect("same ring");
        for s in 0..n {
            let a_x = frame.expand(&a_dickson[s]).expect("same ring");
            let rebuilt = (q0 * &(&a_x + &(&b_x * frame.q(s)))).scale(sign);
            if rebuilt != images[s] || p_roots[s].frobenius() != a[s] || r_root.frobenius() != b {
                return Err(fail(
                    ExtractionStage::Reconstruction,
                    Some(s),
                    AlgebraError::NotDivisible,
                ));
            }
        }

        let generator_images = (0..n)
            .map(|s| &a_dickson[s] + &(&b_dickson * &DicksonPoly::var(field, n, s)))
            .collect();
        Ok(SumCoefficients {
            frame,
            st,
            a,
            b,
            p_roots,
            r_root,
            a_dickson,
            b_dickson,
            p_roots_dickson,
            r_root_dickson,
            generator_images,
        })
    }

    pub fn frame(&self) -> &DicksonFrame {
        &self.frame
    }

    pub fn frame_arc(&self) -> &Arc<DicksonFrame> {
        &self.frame
    }

    pub fn primitive(&self) -> &MilnorPrimitive {
        &self.st
    }

    pub fn field(&self) -> PrimeField {
        self.frame.field()
    }

    pub fn p(&self) -> u32 {
        self.frame.p()
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn i(&self) -> u32 {
        self.st.index()
    }

    /// `A_s = P_s^p` in `P_n`.
    pub fn a(&self) -> &[Polynomial] {
        &self.a
    }

    /// `B = R^p` in `P_n`.
    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn p_roots(&self) -> &[Polynomial] {
        &self.p_roots
    }

    pub fn r_root(&self) -> &Polynomial {
        &self.r_root
    }

    pub fn a_dickson(&self) -> &[DicksonPoly] {
        &self.a_dickson
    }

    pub fn b_dickson(&self) -> &DicksonPoly {
        &self.b_dickson
    }

    pub fn p_roots_dickson(&self) -> &[DicksonPoly] {
        &self.p_roots_dickson
    }

    pub fn r_root_dickson(&self) -> &DicksonPoly {
        &self.r_root_dickson
    }

    /// `(-1)^n` in `F_p`.
    pub fn sign(&self) -> u32 {
        self.field().sign(self.n() as u64)
    }

    /// `St^{Δ_i}` applied in `x`-coordinates.
    pub fn st(&self, f: &Polynomial) -> Polynomial {
        self.st.apply(f)
    }

    pub fn expand(&self, f: &DicksonPoly) -> Polynomial {
        self.frame
            .expand(f)
            .expect("Dickson polynomial from a different ring")
    }

    /// `δ_i(f)` computed natively in Dickson coordinates through
    /// `δ_i(X_s) = A_s + B X_s` and the chain rule.
    pub fn normalized_delta(&self, f: &DicksonPoly) -> DicksonPoly {
        let mut out = DicksonPoly::zero(self.field(), self.n());
        for (s, image) in self.generator_images.iter().enumerate() {
            let d = f.partial(s).expect("index in range");
            if !d.is_zero() {
                out = &out + &(&d * image);
            }
        }
        out
    }

    /// `δ_i^m(f)`.
    pub fn delta_iterate(&self, m: u32, f: &DicksonPoly) -> DicksonPoly {
        (0..m).fold(f.clone(), |g, _| self.normalized_delta(&g))
    }

    /// `(-1)^n Q_0 sum_s (∂f/∂X_s)(Q) (A_s + B Q_s)` in `P_n`.
    pub fn chain_rule_apply(&self, f: &DicksonPoly) -> Polynomial {
        let field = self.field();
        let mut sum = Polynomial::zero(field, self.n());
        for s in 0..self.n() {
            let d = f.partial(s).expect("index in range");
            if d.is_zero() {
                continue;
            }
            let image = &self.a[s] + &(&self.b * self.frame.q(s));
            sum = &sum + &(&self.expand(&d) * &image);
        }
        (self.frame.q0() * &sum).scale(self.sign())
    }

    fn check_range(&self, m: u32, s: usize) -> Result<()> {
        if m == 0 {
            return Err(AlgebraError::InvalidParameter(
                "iterate order m must be >= 1".into(),
            ));
        }
        if s >= self.n() {
            return Err(AlgebraError::IndexOutOfRange {
                index: s,
                nvars: self.n(),
            });
        }
        Ok(())
    }

    /// `B^m X_s + B^{m-1} A_s`, the closed form of `δ_i^m(X_s)` (with `B^0 = 1`).
    pub fn delta_iterate_closed(&self, m: u32, s: usize) -> Result<DicksonPoly> {
        self.check_range(m, s)?;
        let x_s = DicksonPoly::var(self.field(), self.n(), s);
        let lower = self.b_dickson.pow(u64::from(m - 1));
        Ok(&(&(&lower * &self.b_dickson) * &x_s) + &(&lower * &self.a_dickson[s]))
    }

    /// The scalar `(-1)^{mn} m!` reduced mod p.
    pub fn iterate_prefactor(&self, m: u32) -> u32 {
        let field = self.field();
        field.mul(
            field.sign(u64::from(m) * self.n() as u64),
            field.factorial(u64::from(m)),
        )
    }

    /// `(-1)^{mn} m! Q_0^m (B^m Q_s + B^{m-1} A_s)` in `P_n`, which is zero
    /// for every `m >= p`.
    pub fn st_iterate_closed(&self, m: u32, s: usize) -> Result<Polynomial> {
        self.check_range(m, s)?;
        let c = self.iterate_prefactor(m);
        if c == 0 {
            return Ok(Polynomial::zero(self.field(), self.n()));
        }
        let lower = self.b.pow(u64::from(m - 1));
        let inner = &(&(&lower * &self.b) * self.frame.q(s)) + &(&lower * &self.a[s]);
        Ok((&self.frame.q0().pow(u64::from(m)) * &inner).scale(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: u32, n: usize, i: u32) -> SumCoefficients {
        let field = PrimeField::new(p).unwrap();
        let frame = Arc::new(DicksonFrame::build(field, n).unwrap());
        SumCoefficients::extract(frame, i).unwrap()
    }

    fn x(p: u32, n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(
            PrimeField::new(p).unwrap(),
            n,
            terms.iter().map(|&(e, c)| (e, c)),
        )
    }

    #[test]
    fn extraction_p2_n2_i1() {
        let c = coeffs(2, 2, 1);
        assert!(c.b().is_zero());
        assert!(c.a()[0].is_zero());
        assert!(c.a()[1].is_one());
        assert!(c.p_roots()[1].is_one());
        assert!(c.r_root().is_zero());
    }

    #[test]
    fn extraction_p2_n2_i2() {
        let c = coeffs(2, 2, 2);
        assert!(c.b().is_one());
        assert!(c.a()[0].is_zero());
        assert!(c.a()[1].is_zero());
        assert!(c.r_root().is_one());
    }

    #[test]
    fn extraction_p3_n1_i2() {
        let c = coeffs(3, 1, 2);
        assert_eq!(c.b(), &x(3, 1, &[(&[6], 1)]));
        assert_eq!(c.r_root(), &x(3, 1, &[(&[2], 1)]));
        assert!(c.a()[0].is_zero());
        let f = PrimeField::new(3).unwrap();
        assert_eq!(c.b_dickson(), &DicksonPoly::var(f, 1, 0).pow(3));
        assert_eq!(c.r_root_dickson(), &DicksonPoly::var(f, 1, 0));
    }

    #[test]
    fn normalized_delta_on_generators() {
        for (p, n, i) in [(2, 2, 1), (2, 2, 2), (3, 1, 2), (3, 2, 2), (2, 3, 2)] {
            let c = coeffs(p, n, i);
            let f = c.field();
            let x0 = DicksonPoly::var(f, n, 0);
            assert_eq!(c.normalized_delta(&x0), c.b_dickson() * &x0);
            for s in 0..n {
                let xs = DicksonPoly::var(f, n, s);
                assert_eq!(
                    c.normalized_delta(&xs),
                    &c.a_dickson()[s] + &(c.b_dickson() * &xs)
                );
            }
        }
    }

    #[test]
    fn normalized_delta_on_a_square() {
        for (p, n, i) in [(2, 2, 2), (3, 2, 2), (5, 2, 2)] {
            let c = coeffs(p, n, i);
            let f = c.field();
            let x1 = DicksonPoly::var(f, n, 1);
            let got = c.normalized_delta(&x1.pow(2));
            let expected = (&x1 * &(&c.a_dickson()[1] + &(c.b_dickson() * &x1))).scale(2);
            assert_eq!(got, expected);
            if p == 2 {
                assert!(got.is_zero());
            }
        }
    }

    #[test]
    fn closed_iterates_examples() {
        let c = coeffs(2, 2, 2);
        let f = c.field();
        assert_eq!(
            c.delta_iterate_closed(2, 1).unwrap(),
            DicksonPoly::var(f, 2, 1)
        );
        let c = coeffs(3, 1, 2);
        let f3 = c.field();
        assert_eq!(
            c.delta_iterate_closed(2, 0).unwrap(),
            DicksonPoly::var(f3, 1, 0).pow(7)
        );
        assert_eq!(c.st_iterate_closed(2, 0).unwrap(), x(3, 1, &[(&[18], 2)]));
        assert!(c.st_iterate_closed(3, 0).unwrap().is_zero());
        assert!(c.st_iterate_closed(0, 0).is_err());
        assert!(c.st_iterate_closed(1, 1).is_err());
    }

    #[test]
    fn closed_first_iterate_is_defining_action() {
        let c = coeffs(2, 2, 1);
        let f = c.field();
        for s in 0..2 {
            let xs = DicksonPoly::var(f, 2, s);
            assert_eq!(
                c.delta_iterate_closed(1, s).unwrap(),
                &c.a_dickson()[s] + &(c.b_dickson() * &xs)
            );
        }
    }

    #[test]
    fn prefactor_at_p5() {
        for n in 1..=2 {
            let c = coeffs(5, n, 2);
            let sign = c.field().sign(n as u64);
            // 6 mod 5 = 1
            assert_eq!(c.iterate_prefactor(3), sign);
        }
    }

    #[test]
    fn chain_rule_examples() {
        let c = coeffs(2, 2, 2);
        let f = c.field();
        for s in 0..2 {
            let xs = DicksonPoly::var(f, 2, s);
            assert_eq!(c.chain_rule_apply(&xs), c.st(c.frame().q(s)));
        }
        let x0p = DicksonPoly::var(f, 2, 0).pow(2);
        assert!(c.chain_rule_apply(&x0p).is_zero());
        let prod = &DicksonPoly::var(f, 2, 0) * &DicksonPoly::var(f, 2, 1);
        assert!(c.chain_rule_apply(&prod).is_zero());
        assert!(c.st(&c.expand(&prod)).is_zero());
    }

    #[test]
    fn localized_delta_and_equality() {
        let c = coeffs(3, 2, 2);
        let f = c.field();
        let x0 = DicksonPoly::var(f, 2, 0);
        let x1 = DicksonPoly::var(f, 2, 1);
        // R_1 = X_1 / X_0 has δ(R_1) = A_1 / X_0
        let r1 = LocalizedElement::new(x1.clone(), 1);
        let expected = LocalizedElement::new(c.a_dickson()[1].clone(), 1);
        assert_eq!(r1.delta(&c), expected);
        // normalization strips common X_0 factors
        let e = LocalizedElement::new(&x0 * &x1, 3);
        assert_eq!(e.denominator_power(), 2);
        assert_eq!(e, LocalizedElement::new(x1.clone(), 2));
        let sum = r1.add(&LocalizedElement::from_poly(x0.clone()));
        assert_eq!(sum, LocalizedElement::new(&x1 + &x0.pow(2), 1));
        assert_eq!(
            r1.mul(&LocalizedElement::from_poly(x0)),
            LocalizedElement::from_poly(x1)
        );
    }
}
