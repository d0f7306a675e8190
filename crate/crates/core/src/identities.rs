//! Falsifiable checks of the identities satisfied by `St^{Δ_i}` and `δ_i`
//! on the Dickson algebra. Each check compares two exactly computed
//! polynomials; a failure carries both sides and their difference.
//!
//! Statements that live in a localization (`D_n[Q_0^{-1}]`, or with `B`
//! inverted) are checked through equivalent denominator-cleared identities.

use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

use crate::dickson::DicksonPoly;
use crate::poly::Polynomial;
use crate::sumnorm::{StirlingTable, SumCoefficients};

/// Outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The statement's hypothesis does not hold at this cell.
    Vacuous,
}

/// Cell coordinates plus a free-form tag (sample index, `s`, `m`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckParams {
    pub p: u32,
    pub n: usize,
    pub i: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<String>,
}

/// Two unequal sides of a failed identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub context: String,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationResult {
    pub name: String,
    pub params: CheckParams,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

// Timing is not part of a result's identity.
impl PartialEq for VerificationResult {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.params == other.params
            && self.status == other.status
            && self.witness == other.witness
            && self.note == other.note
    }
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Folds per-sample results into one: the first failure wins, otherwise
    /// pass (or vacuous if every part was vacuous).
    pub fn combine(
        name: &str,
        params: CheckParams,
        parts: impl IntoIterator<Item = VerificationResult>,
    ) -> VerificationResult {
        let mut elapsed = Duration::ZERO;
        let mut count = 0usize;
        let mut all_vacuous = true;
        let mut failure: Option<VerificationResult> = None;
        let mut note = None;
        for r in parts {
            count += 1;
            elapsed += r.elapsed;
            if r.status != Status::Vacuous {
                all_vacuous = false;
            } else if note.is_none() {
                note = r.note.clone();
            }
            if r.status == Status::Fail && failure.is_none() {
                failure = Some(r);
            }
        }
        let (status, witness) = match failure {
            Some(f) => {
                let mut w = f.witness.unwrap_or_else(|| Witness {
                    context: String::new(),
                    lhs: String::new(),
                    rhs: String::new(),
                    difference: String::new(),
                });
                if let Some(extra) = f.params.extra {
                    w.context = format!("{extra}: {}", w.context);
                }
                (Status::Fail, Some(w))
            }
            None if all_vacuous && count > 0 => (Status::Vacuous, None),
            None => (Status::Pass, None),
        };
        let params = CheckParams {
            extra: Some(match params.extra {
                Some(e) => format!("{e}; {count} cases"),
                None => format!("{count} cases"),
            }),
            ..params
        };
        VerificationResult {
            name: name.to_string(),
            params,
            status,
            witness,
            note: if status == Status::Vacuous {
                note
            } else {
                None
            },
            elapsed,
        }
    }
}

const RENDER_LIMIT: usize = 2000;

/// Full rendering for small polynomials, a size summary otherwise.
pub fn render_bounded(f: &Polynomial) -> String {
    let s = f.to_string();
    if s.len() <= RENDER_LIMIT {
        s
    } else {
        format!(
            "<{} terms, degree {}>",
            f.num_terms(),
            f.degree().unwrap_or(0)
        )
    }
}

struct Check {
    name: &'static str,
    params: CheckParams,
    started: Instant,
    witness: Option<Witness>,
}

impl Check {
    fn new(coeffs: &SumCoefficients, name: &'static str, extra: Option<String>) -> Self {
        Check {
            name,
            params: CheckParams {
                p: coeffs.p(),
                n: coeffs.n(),
                i: coeffs.i(),
                extra,
            },
            started: Instant::now(),
            witness: None,
        }
    }

    /// Records the first mismatch.
    fn expect_eq(&mut self, context: &str, lhs: &Polynomial, rhs: &Polynomial) {
        if self.witness.is_none() && lhs != rhs {
            self.witness = Some(Witness {
                context: context.to_string(),
                lhs: render_bounded(lhs),
                rhs: render_bounded(rhs),
                difference: render_bounded(&(lhs - rhs)),
            });
        }
    }

    fn expect_dickson_eq(&mut self, context: &str, lhs: &DicksonPoly, rhs: &DicksonPoly) {
        if self.witness.is_none() && lhs != rhs {
            self.witness = Some(Witness {
                context: context.to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                difference: (lhs - rhs).to_string(),
            });
        }
    }

    fn fail(&mut self, context: &str, lhs: String, rhs: String, difference: String) {
        if self.witness.is_none() {
            self.witness = Some(Witness {
                context: context.to_string(),
                lhs,
                rhs,
                difference,
            });
        }
    }

    fn finish(self) -> VerificationResult {
        VerificationResult {
            name: self.name.to_string(),
            params: self.params,
            status: if self.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness: self.witness,
            note: None,
            elapsed: self.started.elapsed(),
        }
    }

    fn vacuous(self, note: &str) -> VerificationResult {
        VerificationResult {
            name: self.name.to_string(),
            params: self.params,
            status: Status::Vacuous,
            witness: None,
            note: Some(note.to_string()),
            elapsed: self.started.elapsed(),
        }
    }
}

/// `St(Q_s) = (-1)^n Q_0 (A_s + B Q_s)` with the right side rebuilt from
/// the Dickson forms of `A_s` and `B`, and `P_{n,i,0} = 0`.
pub fn verify_structural_identity(c: &SumCoefficients) -> VerificationResult {
    let mut chk = Check::new(c, "structural_identity", None);
    let fr = c.frame();
    let b = c.expand(c.b_dickson());
    for s in 0..c.n() {
        let a = c.expand(&c.a_dickson()[s]);
        let rhs = (fr.q0() * &(&a + &(&b * fr.q(s)))).scale(c.sign());
        chk.expect_eq(&format!("s={s}"), &c.st(fr.q(s)), &rhs);
        let root = c.expand(&c.p_roots_dickson()[s]);
        chk.expect_eq(
            &format!("P_s^p = A_s, s={s}"),
            &root.pow(u64::from(c.p())),
            &a,
        );
    }
    let r = c.expand(c.r_root_dickson());
    chk.expect_eq("R^p = B", &r.pow(u64::from(c.p())), &b);
    chk.expect_eq(
        "P_{n,i,0} = 0",
        &c.p_roots()[0],
        &Polynomial::zero(c.field(), c.n()),
    );
    chk.finish()
}

/// `St(Q_0^{p-1} F(Q)^p Q_s) = (-1)^n Q_0^p (F(Q) P_s)^p`, and `St` kills the
/// right-hand side.
pub fn verify_kernel_family(
    c: &SumCoefficients,
    big_f: &DicksonPoly,
    s: usize,
) -> VerificationResult {
    let mut chk = Check::new(c, "kernel_family", Some(format!("s={s}, F={big_f}")));
    let fr = c.frame();
    let p = u64::from(c.p());
    let f_x = c.expand(big_f);
    let f_p = f_x.frobenius();
    let element = &(&fr.q0().pow(p - 1) * &f_p) * fr.q(s);
    let lhs = c.st(&element);
    let rhs = (&fr.q0().pow(p) * &(&f_x * &c.p_roots()[s]).frobenius()).scale(c.sign());
    chk.expect_eq("St(Q0^(p-1) F^p Q_s) = (-1)^n Q0^p (F P_s)^p", &lhs, &rhs);
    chk.expect_eq(
        "St applied to the kernel element",
        &c.st(&rhs),
        &Polynomial::zero(c.field(), c.n()),
    );
    chk.finish()
}

/// Image containment: `Q_0 | St(f(Q))` for every `f` in `image_samples`;
/// annihilated ideal: `St(Q_0^p G(Q)^p) = 0` for every `G` in `ideal_samples`.
pub fn verify_global_properties(
    c: &SumCoefficients,
    image_samples: &[DicksonPoly],
    ideal_samples: &[DicksonPoly],
) -> VerificationResult {
    let mut chk = Check::new(
        c,
        "global_properties",
        Some(format!(
            "{} image samples, {} ideal samples",
            image_samples.len(),
            ideal_samples.len()
        )),
    );
    let fr = c.frame();
    let p = u64::from(c.p());
    for (k, f) in image_samples.iter().enumerate() {
        let img = c.st(&c.expand(f));
        let (q, r) = img.div_rem(fr.q0()).expect("Q0 is nonzero");
        if !r.is_zero() {
            chk.fail(
                &format!("image containment, sample {k}: f = {f}"),
                render_bounded(&img),
                format!("Q0 * ({})", render_bounded(&q)),
                render_bounded(&r),
            );
        }
    }
    let zero = Polynomial::zero(c.field(), c.n());
    for (k, g) in ideal_samples.iter().enumerate() {
        let h = &fr.q0().pow(p) * &c.expand(g).frobenius();
        chk.expect_eq(
            &format!("annihilated ideal, sample {k}: G = {g}"),
            &c.st(&h),
            &zero,
        );
    }
    chk.finish()
}

/// Cleared form of `δ(I_s) = 0` for `I_s = (Q_s + B^{-1} A_s) / Q_0`:
/// `δ(V_s) = B V_s` with `V_s = B X_s + A_s`, and `δ(X_0) = B X_0`. Also the
/// decomposition `δ(R_s) = A_s / Q_0`, `δ(B^{-1} A_s / Q_0) = -A_s / Q_0`
/// at cleared level. Vacuous when `B = 0`.
pub fn verify_invariant_ratios(c: &SumCoefficients, s: usize) -> VerificationResult {
    let chk = Check::new(c, "invariant_ratios", Some(format!("s={s}")));
    if c.b_dickson().is_zero() {
        return chk.vacuous("vacuous: B = 0, so B is not invertible");
    }
    let mut chk = chk;
    let field = c.field();
    let n = c.n();
    let b = c.b_dickson();
    let a = &c.a_dickson()[s];
    let x0 = DicksonPoly::var(field, n, 0);
    let xs = DicksonPoly::var(field, n, s);
    let v = &(b * &xs) + a;
    chk.expect_dickson_eq("delta(V_s) = B V_s", &c.normalized_delta(&v), &(b * &v));
    chk.expect_dickson_eq("delta(Q0) = B Q0", &c.normalized_delta(&x0), &(b * &x0));
    // Q0^2 δ(Q_s/Q0) = δ(Q_s) Q0 - Q_s δ(Q0) = A_s Q0
    let cleared_r = &(&c.normalized_delta(&xs) * &x0) - &(&xs * &c.normalized_delta(&x0));
    chk.expect_dickson_eq("Q0^2 delta(R_s) = A_s Q0", &cleared_r, &(a * &x0));
    // with W = B Q0: δ(A_s / W) = -A_s δ(W) / W^2 = -A_s / Q0  <=>  A_s δ(W) = A_s B^2 Q0
    let w = b * &x0;
    chk.expect_dickson_eq(
        "A_s delta(B Q0) = A_s B^2 Q0",
        &(a * &c.normalized_delta(&w)),
        &(a * &(&b.pow(2) * &x0)),
    );
    chk.finish()
}

// X_0^{target - deg t} * t for every term t of `phi`, i.e. the numerator of
// phi(X_1/X_0, ...) over X_0^target with R_s standing for X_s / X_0.
fn homogenize(phi: &Polynomial, target: u64) -> DicksonPoly {
    let n = phi.nvars();
    let terms: Vec<(Vec<u32>, i64)> = phi
        .terms()
        .map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e[0] += (target - m.degree()) as u32;
            (e, i64::from(c))
        })
        .collect();
    DicksonPoly::from_poly(Polynomial::from_terms(phi.field(), n, terms))
}

/// Cleared forms of `St(R_s) = (-1)^n A_s` and, for a polynomial `phi` in the
/// ratios `R_s = Q_s / Q_0`, of `St(phi(R)) = (-1)^n sum_s (∂phi/∂R_s)(R) A_s`.
/// With `d = deg phi` and `Ψ = Q_0^d phi(R)`, the latter multiplied by
/// `Q_0^{d+1}` reads `Q_0 St(Ψ) - d Ψ St(Q_0) = (-1)^n Q_0^2 sum_s Ψ_s A_s`
/// where `Ψ_s = Q_0^{d-1} (∂phi/∂R_s)(R)`.
pub fn verify_ratio_action(c: &SumCoefficients, s: usize, phi: &Polynomial) -> VerificationResult {
    let mut chk = Check::new(c, "ratio_action", Some(format!("s={s}, phi={phi}")));
    let fr = c.frame();
    let q0 = fr.q0();
    let st_q0 = c.st(q0);
    let lhs = &(&c.st(fr.q(s)) * q0) - &(fr.q(s) * &st_q0);
    let rhs = (&c.a()[s] * &q0.pow(2)).scale(c.sign());
    chk.expect_eq("St(Q_s) Q0 - Q_s St(Q0) = (-1)^n A_s Q0^2", &lhs, &rhs);

    if phi.nvars() != c.n() || phi.field() != c.field() {
        chk.fail(
            "ratio polynomial ring",
            format!("{} vars over {}", phi.nvars(), phi.field()),
            format!("{} vars over {}", c.n(), c.field()),
            String::new(),
        );
        return chk.finish();
    }
    let Some(d) = phi.degree() else {
        return chk.finish();
    };
    let psi = c.expand(&homogenize(phi, d));
    let d_mod = c.field().reduce_u64(d);
    let lhs = &(q0 * &c.st(&psi)) - &(&psi * &st_q0).scale(d_mod);
    let mut sum = Polynomial::zero(c.field(), c.n());
    if d > 0 {
        for t in 0..c.n() {
            let dphi = phi.partial(t).expect("index in range");
            if dphi.is_zero() || c.a()[t].is_zero() {
                continue;
            }
            sum = &sum + &(&c.expand(&homogenize(&dphi, d - 1)) * &c.a()[t]);
        }
    }
    let rhs = (&q0.pow(2) * &sum).scale(c.sign());
    chk.expect_eq(
        "Q0^(d+1) St(phi(R)) = (-1)^n Q0^(d+1) sum dphi/dR_s A_s",
        &lhs,
        &rhs,
    );
    chk.finish()
}

/// Chain-rule evaluation of `St(f(Q))` against direct application in `P_n`.
pub fn verify_chain_rule(c: &SumCoefficients, f: &DicksonPoly) -> VerificationResult {
    let mut chk = Check::new(c, "chain_rule", Some(format!("f={f}")));
    chk.expect_eq(
        "chain rule vs St(f(Q))",
        &c.chain_rule_apply(f),
        &c.st(&c.expand(f)),
    );
    chk.finish()
}

/// `(-1)^n Q_0 expand(δ(f)) = St(expand(f))`: the native Dickson-coordinate
/// derivation against the `P_n` route.
pub fn verify_delta_compatibility(c: &SumCoefficients, f: &DicksonPoly) -> VerificationResult {
    let mut chk = Check::new(c, "delta_compatibility", Some(format!("f={f}")));
    let lhs = (c.frame().q0() * &c.expand(&c.normalized_delta(f))).scale(c.sign());
    chk.expect_eq("(-1)^n Q0 delta(f) = St(f)", &lhs, &c.st(&c.expand(f)));
    chk.finish()
}

/// `St(f(Q))` lies in `D_n`.
pub fn verify_stability(c: &SumCoefficients, f: &DicksonPoly) -> VerificationResult {
    let mut chk = Check::new(c, "dickson_stability", Some(format!("f={f}")));
    let img = c.st(&c.expand(f));
    if let Err(e) = c.frame().express(&img) {
        chk.fail(
            "St(f) in D_n",
            render_bounded(&img),
            "element of D_n".into(),
            e.to_string(),
        );
    }
    chk.finish()
}

/// One row of the iterate comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterateRow {
    pub s: usize,
    pub m: u32,
    pub closed: String,
    pub brute: String,
    pub equal: bool,
}

/// Brute-force `St^m(Q_s)` against the closed form for `1 <= m <= max_m`.
pub fn verify_iterates(
    c: &SumCoefficients,
    s: usize,
    max_m: u32,
) -> (VerificationResult, Vec<IterateRow>) {
    let mut chk = Check::new(c, "st_iterates", Some(format!("s={s}, m<={max_m}")));
    let mut rows = Vec::new();
    let mut brute = c.frame().q(s).clone();
    for m in 1..=max_m {
        brute = c.st(&brute);
        let closed = c.st_iterate_closed(m, s).expect("m >= 1, s < n");
        chk.expect_eq(&format!("m={m}"), &brute, &closed);
        rows.push(IterateRow {
            s,
            m,
            closed: render_bounded(&closed),
            brute: render_bounded(&brute),
            equal: brute == closed,
        });
    }
    (chk.finish(), rows)
}

/// `δ^m(X_s)` by repeated application against `B^m X_s + B^{m-1} A_s`.
pub fn verify_delta_iterates(c: &SumCoefficients, s: usize, max_m: u32) -> VerificationResult {
    let mut chk = Check::new(c, "delta_iterates", Some(format!("s={s}, m<={max_m}")));
    let mut g = DicksonPoly::var(c.field(), c.n(), s);
    for m in 1..=max_m {
        g = c.normalized_delta(&g);
        let closed = c.delta_iterate_closed(m, s).expect("m >= 1, s < n");
        chk.expect_dickson_eq(&format!("m={m}"), &g, &closed);
    }
    chk.finish()
}

/// `(M δ)^m f = M^m sum_{j=1}^m [m, j] B^{m-j} δ^j f` with `M` multiplication
/// by `Q_0`, computed in Dickson coordinates.
pub fn verify_operator_identity(
    c: &SumCoefficients,
    stirling: &StirlingTable,
    f: &DicksonPoly,
    m: u32,
) -> VerificationResult {
    let mut chk = Check::new(c, "operator_identity", Some(format!("m={m}, f={f}")));
    let field = c.field();
    let x0 = DicksonPoly::var(field, c.n(), 0);
    let lhs = (0..m).fold(f.clone(), |g, _| &x0 * &c.normalized_delta(&g));
    let mut sum = DicksonPoly::zero(field, c.n());
    let mut delta_j = f.clone();
    for j in 1..=m {
        delta_j = c.normalized_delta(&delta_j);
        let coef = stirling
            .residue(m as usize, j as usize, field)
            .expect("m within table");
        if coef == 0 {
            continue;
        }
        let term = &c.b_dickson().pow(u64::from(m - j)) * &delta_j;
        sum = &sum + &term.scale(coef);
    }
    let rhs = &x0.pow(u64::from(m)) * &sum;
    chk.expect_dickson_eq("(M delta)^m f", &lhs, &rhs);
    chk.finish()
}

/// `δ(Q_0^m f) = Q_0^m (δ(f) + m B f)`.
pub fn verify_commutation(c: &SumCoefficients, f: &DicksonPoly, m: u32) -> VerificationResult {
    let mut chk = Check::new(c, "commutation", Some(format!("m={m}, f={f}")));
    let field = c.field();
    let x0m = DicksonPoly::var(field, c.n(), 0).pow(u64::from(m));
    let lhs = c.normalized_delta(&(&x0m * f));
    let mb = (c.b_dickson() * f).scale(field.reduce_u64(u64::from(m)));
    let rhs = &x0m * &(&c.normalized_delta(f) + &mb);
    chk.expect_dickson_eq("delta M^m = M^m (delta + m B)", &lhs, &rhs);
    chk.finish()
}

/// Leibniz rule for `δ` on a pair of Dickson polynomials.
pub fn verify_delta_leibniz(
    c: &SumCoefficients,
    f: &DicksonPoly,
    g: &DicksonPoly,
) -> VerificationResult {
    let mut chk = Check::new(c, "delta_leibniz", Some(format!("f={f}, g={g}")));
    let lhs = c.normalized_delta(&(f * g));
    let rhs = &(&c.normalized_delta(f) * g) + &(f * &c.normalized_delta(g));
    chk.expect_dickson_eq("delta(fg) = delta(f) g + f delta(g)", &lhs, &rhs);
    chk.finish()
}

/// Leibniz rule for `St` on a pair of polynomials in `P_n`.
pub fn verify_st_leibniz(
    c: &SumCoefficients,
    f: &Polynomial,
    g: &Polynomial,
) -> VerificationResult {
    let mut chk = Check::new(c, "st_leibniz", Some(format!("f={f}, g={g}")));
    let lhs = c.st(&(f * g));
    let rhs = &(&c.st(f) * g) + &(f * &c.st(g));
    chk.expect_eq("St(fg) = St(f) g + f St(g)", &lhs, &rhs);
    chk.finish()
}

/// `δ(F^p) = 0` natively and `St(F(Q)^p) = 0` in `P_n`.
pub fn verify_frobenius_constants(c: &SumCoefficients, big_f: &DicksonPoly) -> VerificationResult {
    let mut chk = Check::new(c, "frobenius_constants", Some(format!("F={big_f}")));
    let p = u64::from(c.p());
    let fp = big_f.pow(p);
    let zero_d = DicksonPoly::zero(c.field(), c.n());
    chk.expect_dickson_eq("delta(F^p) = 0", &c.normalized_delta(&fp), &zero_d);
    let zero = Polynomial::zero(c.field(), c.n());
    chk.expect_eq("St(F^p) = 0", &c.st(&c.expand(big_f).frobenius()), &zero);
    chk.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dickson::DicksonFrame;
    use crate::field::PrimeField;
    use std::sync::Arc;

    fn coeffs(p: u32, n: usize, i: u32) -> SumCoefficients {
        let field = PrimeField::new(p).unwrap();
        let frame = Arc::new(DicksonFrame::build(field, n).unwrap());
        SumCoefficients::extract(frame, i).unwrap()
    }

    #[test]
    fn kernel_family_examples() {
        let c = coeffs(2, 2, 2);
        let f = c.field();
        let one = DicksonPoly::one(f, 2);
        let zero = DicksonPoly::zero(f, 2);
        let x1 = DicksonPoly::var(f, 2, 1);
        for s in 0..2 {
            assert!(verify_kernel_family(&c, &one, s).passed());
            assert!(verify_kernel_family(&c, &zero, s).passed());
        }
        assert!(verify_kernel_family(&c, &x1, 1).passed());
    }

    #[test]
    fn global_properties_examples() {
        let c = coeffs(3, 1, 2);
        let f = c.field();
        let x0 = DicksonPoly::var(f, 1, 0);
        let r = verify_global_properties(&c, &[x0.clone(), x0.pow(2)], &[DicksonPoly::one(f, 1)]);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn invariant_ratios_vacuous_and_pass() {
        let c = coeffs(2, 2, 1);
        assert_eq!(verify_invariant_ratios(&c, 1).status, Status::Vacuous);
        let c = coeffs(2, 2, 2);
        for s in 0..2 {
            assert!(verify_invariant_ratios(&c, s).passed());
        }
    }

    #[test]
    fn ratio_action_examples() {
        let c = coeffs(2, 2, 2);
        let f = c.field();
        let r1 = Polynomial::var(f, 2, 1);
        assert!(verify_ratio_action(&c, 1, &r1).passed());
        assert!(verify_ratio_action(&c, 1, &r1.pow(2)).passed());
        let c = coeffs(3, 2, 3);
        let f = c.field();
        let phi = Polynomial::from_terms(f, 2, [([1u32, 2], 1), ([0, 1], 2), ([0, 0], 1)]);
        assert!(verify_ratio_action(&c, 1, &phi).passed());
    }

    #[test]
    fn a_wrong_identity_produces_a_witness() {
        let c = coeffs(3, 2, 2);
        let mut chk = Check::new(&c, "deliberately_false", None);
        let f = c.field();
        chk.expect_eq(
            "x1 = x2",
            &Polynomial::var(f, 2, 0),
            &Polynomial::var(f, 2, 1),
        );
        let r = chk.finish();
        assert_eq!(r.status, Status::Fail);
        let w = r.witness.unwrap();
        assert_eq!(w.lhs, "x1");
        assert_eq!(w.difference, "x1 + 2*x2");
    }

    #[test]
    fn combine_reports_first_failure() {
        let c = coeffs(2, 2, 2);
        let f = c.field();
        let ok = verify_chain_rule(&c, &DicksonPoly::var(f, 2, 0));
        let mut chk = Check::new(&c, "x", Some("sample 1".into()));
        chk.expect_eq("ctx", &Polynomial::one(f, 2), &Polynomial::zero(f, 2));
        let bad = chk.finish();
        let params = ok.params.clone();
        let all = VerificationResult::combine("chain_rule", params, vec![ok.clone(), bad]);
        assert_eq!(all.status, Status::Fail);
        assert!(all.witness.unwrap().context.starts_with("sample 1"));
        let params = ok.params.clone();
        assert!(VerificationResult::combine("chain_rule", params, vec![ok]).passed());
    }
}
