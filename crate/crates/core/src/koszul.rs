//! Koszul complexes `E(ξ_1..ξ_m) ⊗ R` over graded polynomial rings mod p,
//! with `d(ξ_s) = c_s` and `d|_R = 0`, and their homology computed one
//! internal degree at a time by Gaussian elimination.
//!
//! `ξ_s` carries the internal degree of `c_s`, so `d` preserves internal
//! degree and every graded piece is finite dimensional. Sign convention:
//! `d(ξ_S ⊗ f) = sum_{s in S} (-1)^{#{t in S : t < s}} c_s ξ_{S - s} ⊗ f`.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::determinant::determinant;
use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{Monomial, Polynomial};
use crate::sumnorm::SumCoefficients;

/// Upper bound on the dimension of any single chain group.
pub const CHAIN_DIM_LIMIT: usize = 20_000;

/// Largest number of exterior generators (subsets are `u32` bitmasks).
pub const MAX_GENERATORS: usize = 16;

/// Polynomial ring over `F_p` with positively weighted variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractRing {
    pub field: PrimeField,
    pub var_names: Vec<String>,
    pub var_degrees: Vec<u64>,
}

impl AbstractRing {
    pub fn new(field: PrimeField, var_names: Vec<String>, var_degrees: Vec<u64>) -> Result<Self> {
        if var_names.len() != var_degrees.len() {
            return Err(AlgebraError::InvalidParameter(
                "variable names and degrees differ in length".into(),
            ));
        }
        if var_degrees.contains(&0) {
            return Err(AlgebraError::InvalidParameter(
                "variable degrees must be positive".into(),
            ));
        }
        Ok(AbstractRing {
            field,
            var_names,
            var_degrees,
        })
    }

    /// `k` variables `R0..R{k-1}`, all of degree 1.
    pub fn standard(field: PrimeField, k: usize) -> Self {
        AbstractRing {
            field,
            var_names: (0..k).map(|t| format!("R{t}")).collect(),
            var_degrees: vec![1; k],
        }
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn degree_of(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.var_degrees)
    }

    /// Monomials of weighted degree exactly `d`.
    pub fn monomials_of_degree(&self, d: u64) -> Vec<Monomial> {
        fn rec(w: &[u64], j: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if j == w.len() {
                if left == 0 {
                    out.push(Monomial::new(cur));
                }
                return;
            }
            let mut k = 0u64;
            while k * w[j] <= left {
                cur.push(k as u32);
                rec(w, j + 1, left - k * w[j], cur, out);
                cur.pop();
                k += 1;
            }
        }
        let mut out = Vec::new();
        rec(&self.var_degrees, 0, d, &mut Vec::new(), &mut out);
        out
    }

    /// Number of monomials of each degree `0..=max_degree` (the ring's
    /// Hilbert function), without enumerating them.
    pub fn hilbert_function(&self, max_degree: u64) -> Vec<u64> {
        let len = max_degree as usize + 1;
        let mut series = vec![0u64; len];
        series[0] = 1;
        for &w in &self.var_degrees {
            let w = w as usize;
            for d in w..len {
                series[d] = series[d].saturating_add(series[d - w]);
            }
        }
        series
    }

    pub fn render(&self, f: &Polynomial) -> String {
        f.render_with(|j| self.var_names[j].clone())
    }
}

/// A Koszul complex: ring plus the images `c_s` of the exterior generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KoszulInstance {
    pub ring: AbstractRing,
    pub coeffs: Vec<Polynomial>,
    pub coeff_degrees: Vec<u64>,
}

impl KoszulInstance {
    /// Coefficients must be homogeneous; a zero coefficient gets degree 0.
    pub fn new(ring: AbstractRing, coeffs: Vec<Polynomial>) -> Result<Self> {
        let degrees = coeffs
            .iter()
            .map(|c| {
                let comps = c.components_by_weight(&ring.var_degrees);
                match comps.len() {
                    0 => Ok(0),
                    1 => Ok(*comps.keys().next().unwrap()),
                    _ => Err(AlgebraError::InvalidParameter(format!(
                        "coefficient {} is not homogeneous",
                        ring.render(c)
                    ))),
                }
            })
            .collect::<Result<Vec<u64>>>()?;
        Self::with_degrees(ring, coeffs, degrees)
    }

    /// Explicit degrees; needed to give zero coefficients a nominal degree.
    pub fn with_degrees(
        ring: AbstractRing,
        coeffs: Vec<Polynomial>,
        coeff_degrees: Vec<u64>,
    ) -> Result<Self> {
        if coeffs.len() != coeff_degrees.len() {
            return Err(AlgebraError::InvalidParameter(
                "one degree per coefficient required".into(),
            ));
        }
        if coeffs.len() > MAX_GENERATORS {
            return Err(AlgebraError::InvalidParameter(format!(
                "at most {MAX_GENERATORS} exterior generators supported"
            )));
        }
        for (c, &d) in coeffs.iter().zip(&coeff_degrees) {
            if c.field() != ring.field || c.nvars() != ring.nvars() {
                return Err(AlgebraError::RingMismatch(
                    "coefficient does not live in the instance ring".into(),
                ));
            }
            if !c.is_zero() {
                let comps = c.components_by_weight(&ring.var_degrees);
                if comps.len() != 1 || !comps.contains_key(&d) {
                    return Err(AlgebraError::InvalidParameter(format!(
                        "coefficient {} is not homogeneous of degree {d}",
                        ring.render(c)
                    )));
                }
            }
        }
        Ok(KoszulInstance {
            ring,
            coeffs,
            coeff_degrees,
        })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn subset_degree(&self, mask: u32) -> u64 {
        (0..self.len())
            .filter(|s| mask & (1 << s) != 0)
            .map(|s| self.coeff_degrees[s])
            .sum()
    }

    fn subsets_of_size(&self, q: usize) -> Vec<u32> {
        (0u32..(1u32 << self.len()))
            .filter(|m| m.count_ones() as usize == q)
            .collect()
    }

    /// Largest coefficient degree (0 if there are none).
    pub fn max_coeff_degree(&self) -> u64 {
        self.coeff_degrees.iter().copied().max().unwrap_or(0)
    }
}

/// An element of `E(ξ) ⊗ R`: coefficients of `ξ_S` keyed by the bitmask of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainElement {
    terms: BTreeMap<u32, Polynomial>,
}

impl ChainElement {
    pub fn zero() -> Self {
        ChainElement {
            terms: BTreeMap::new(),
        }
    }

    /// `ξ_S ⊗ f` for `S` given as zero-based generator indices.
    pub fn basis(subset: &[usize], f: Polynomial) -> Self {
        let mask = subset.iter().fold(0u32, |m, &s| m | (1 << s));
        let mut x = Self::zero();
        x.add_term(mask, f);
        x
    }

    pub fn add_term(&mut self, mask: u32, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mask) {
            Some(old) => &old + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    pub fn add(&self, other: &ChainElement) -> ChainElement {
        let mut out = self.clone();
        for (&m, f) in &other.terms {
            out.add_term(m, f.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `ξ_S`.
    pub fn coefficient(&self, subset: &[usize]) -> Option<&Polynomial> {
        let mask = subset.iter().fold(0u32, |m, &s| m | (1 << s));
        self.terms.get(&mask)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.terms.iter().map(|(&m, f)| (m, f))
    }
}

// (-1)^{#{t in S : t < s}}
fn koszul_sign(field: PrimeField, mask: u32, s: usize) -> u32 {
    field.sign(u64::from((mask & ((1u32 << s) - 1)).count_ones()))
}

/// The Koszul differential.
pub fn koszul_d(inst: &KoszulInstance, x: &ChainElement) -> Result<ChainElement> {
    let field = inst.ring.field;
    let mut out = ChainElement::zero();
    for (&mask, f) in &x.terms {
        if f.field() != field || f.nvars() != inst.ring.nvars() {
            return Err(AlgebraError::RingMismatch(
                "chain coefficient does not live in the instance ring".into(),
            ));
        }
        if mask >> inst.len() != 0 {
            return Err(AlgebraError::InvalidParameter(
                "chain uses an exterior generator the instance lacks".into(),
            ));
        }
        for s in 0..inst.len() {
            if mask & (1 << s) == 0 || inst.coeffs[s].is_zero() {
                continue;
            }
            let term = (&inst.coeffs[s] * f).scale(koszul_sign(field, mask, s));
            out.add_term(mask & !(1 << s), term);
        }
    }
    Ok(out)
}

/// Dimensions at one `(exterior degree q, internal degree d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyCell {
    pub q: usize,
    pub d: u64,
    pub chain_dim: u64,
    pub kernel_dim: u64,
    pub image_dim: u64,
    pub homology_dim: u64,
}

/// Homology of a Koszul instance in internal degrees `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedHomologyReport {
    pub max_degree: u64,
    pub generators: usize,
    pub cells: Vec<HomologyCell>,
    /// Coefficients of `prod_s (1 - t^{deg c_s}) / prod_v (1 - t^{deg v})`.
    pub expected_h0: Vec<i64>,
}

impl GradedHomologyReport {
    pub fn homology(&self, q: usize, d: u64) -> Option<u64> {
        self.cells
            .iter()
            .find(|c| c.q == q && c.d == d)
            .map(|c| c.homology_dim)
    }

    /// `dim H_q(d)` for `d = 0..=max_degree`.
    pub fn row(&self, q: usize) -> Vec<u64> {
        (0..=self.max_degree)
            .map(|d| self.homology(q, d).unwrap_or(0))
            .collect()
    }

    pub fn h0_row(&self) -> Vec<u64> {
        self.row(0)
    }

    /// First `(q, d, dim)` with `q > 0` and nonzero homology.
    pub fn first_higher_homology(&self) -> Option<(usize, u64, u64)> {
        self.cells
            .iter()
            .find(|c| c.q > 0 && c.homology_dim > 0)
            .map(|c| (c.q, c.d, c.homology_dim))
    }

    pub fn higher_homology_vanishes(&self) -> bool {
        self.first_higher_homology().is_none()
    }

    pub fn h0_matches_expected(&self) -> bool {
        self.h0_row()
            .iter()
            .zip(&self.expected_h0)
            .all(|(&a, &b)| i64::try_from(a).ok() == Some(b))
    }
}

struct GradedBasis {
    elements: Vec<(u32, Monomial)>,
    index: HashMap<(u32, Monomial), usize>,
}

fn chain_basis(inst: &KoszulInstance, q: usize, d: u64) -> GradedBasis {
    let mut elements = Vec::new();
    for mask in inst.subsets_of_size(q) {
        let sd = inst.subset_degree(mask);
        if sd > d {
            continue;
        }
        for m in inst.ring.monomials_of_degree(d - sd) {
            elements.push((mask, m));
        }
    }
    let index = elements
        .iter()
        .enumerate()
        .map(|(k, e)| (e.clone(), k))
        .collect();
    GradedBasis { elements, index }
}

fn chain_dim(inst: &KoszulInstance, q: usize, d: u64, hilbert: &[u64]) -> u64 {
    inst.subsets_of_size(q)
        .into_iter()
        .map(|mask| inst.subset_degree(mask))
        .filter(|&sd| sd <= d)
        .map(|sd| hilbert[(d - sd) as usize])
        .fold(0u64, u64::saturating_add)
}

// Images of the basis of C_q(d) in C_{q-1}(d), as sparse rows.
fn differential_rows(
    inst: &KoszulInstance,
    source: &GradedBasis,
    target: &GradedBasis,
) -> Vec<SparseRow> {
    let field = inst.ring.field;
    source
        .elements
        .iter()
        .map(|(mask, mono)| {
            let mut row: Vec<(usize, u32)> = Vec::new();
            for s in 0..inst.len() {
                if mask & (1 << s) == 0 {
                    continue;
                }
                let sign = koszul_sign(field, *mask, s);
                let sub = mask & !(1 << s);
                for (cm, cc) in inst.coeffs[s].terms() {
                    let key = (sub, cm.mul(mono));
                    let col = target.index[&key];
                    row.push((col, field.mul(cc, sign)));
                }
            }
            row.sort_unstable_by_key(|&(c, _)| c);
            // combine duplicates
            let mut merged: SparseRow = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = field.add(*lv, v),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != 0);
            merged
        })
        .collect()
}

fn rank_of(field: PrimeField, rows: Vec<SparseRow>) -> u64 {
    let mut ech = Echelon::new(field);
    for r in rows {
        ech.insert(r);
    }
    ech.rank() as u64
}

/// Per-degree homology dimensions for internal degrees `0..=max_degree`.
pub fn homology_dims(inst: &KoszulInstance, max_degree: u64) -> Result<GradedHomologyReport> {
    let field = inst.ring.field;
    let m = inst.len();
    let hilbert = inst.ring.hilbert_function(max_degree);
    for d in 0..=max_degree {
        for q in 0..=m {
            let dim = chain_dim(inst, q, d, &hilbert);
            if dim > CHAIN_DIM_LIMIT as u64 {
                return Err(AlgebraError::Budget {
                    what: format!("chain group C_{q} in degree {d}"),
                    estimate: dim,
                    limit: CHAIN_DIM_LIMIT as u64,
                });
            }
        }
    }
    let mut cells = Vec::new();
    for d in 0..=max_degree {
        let bases: Vec<GradedBasis> = (0..=m).map(|q| chain_basis(inst, q, d)).collect();
        // ranks[q] = rank of d_q : C_q -> C_{q-1}; d_0 = 0
        let mut ranks = vec![0u64; m + 2];
        for q in 1..=m {
            if bases[q].elements.is_empty() || bases[q - 1].elements.is_empty() {
                continue;
            }
            ranks[q] = rank_of(field, differential_rows(inst, &bases[q], &bases[q - 1]));
        }
        for q in 0..=m {
            let chain = bases[q].elements.len() as u64;
            let kernel = chain - ranks[q];
            let image = ranks[q + 1];
            cells.push(HomologyCell {
                q,
                d,
                chain_dim: chain,
                kernel_dim: kernel,
                image_dim: image,
                homology_dim: kernel - image,
            });
        }
    }
    Ok(GradedHomologyReport {
        max_degree,
        generators: m,
        cells,
        expected_h0: expected_quotient_hilbert(inst, max_degree),
    })
}

/// Plain-text sparse triplets (`row col value`, zero-based) of the matrix
/// of `d_q : C_q(d) -> C_{q-1}(d)`; rows index the source basis.
pub fn differential_triplets(inst: &KoszulInstance, q: usize, d: u64) -> Result<String> {
    if q == 0 || q > inst.len() {
        return Err(AlgebraError::InvalidParameter(format!(
            "exterior degree {q} has no differential"
        )));
    }
    let source = chain_basis(inst, q, d);
    let target = chain_basis(inst, q - 1, d);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# d_{q} in degree {d}: {} x {} over F_{}",
        source.elements.len(),
        target.elements.len(),
        inst.ring.field.characteristic()
    );
    for (r, row) in differential_rows(inst, &source, &target)
        .into_iter()
        .enumerate()
    {
        for (c, v) in row {
            let _ = writeln!(out, "{r} {c} {v}");
        }
    }
    Ok(out)
}

/// Coefficients of `prod_s (1 - t^{deg c_s}) / prod_v (1 - t^{deg v})` up
/// to `max_degree`: the Hilbert function of `R/(c)` when `c` is regular.
pub fn expected_quotient_hilbert(inst: &KoszulInstance, max_degree: u64) -> Vec<i64> {
    let len = max_degree as usize + 1;
    let mut series = vec![0i64; len];
    series[0] = 1;
    for &w in &inst.coeff_degrees {
        let w = w as usize;
        for d in (0..len).rev() {
            if d >= w {
                series[d] -= series[d - w];
            } else if w == 0 {
                series[d] = 0;
            }
        }
    }
    for &w in &inst.ring.var_degrees {
        let w = w as usize;
        for d in w..len {
            series[d] += series[d - w];
        }
    }
    series
}

/// `det(∂c_s/∂R_t)` for a square instance; otherwise the product of all
/// maximal minors of the Jacobian matrix.
pub fn jacobian_det(inst: &KoszulInstance) -> Result<Polynomial> {
    let k = inst.ring.nvars();
    let m = inst.len();
    let field = inst.ring.field;
    let jac: Vec<Vec<Polynomial>> = inst
        .coeffs
        .iter()
        .map(|c| (0..k).map(|t| c.partial(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let size = m.min(k);
    if size == 0 {
        return Ok(Polynomial::one(field, k));
    }
    let mut product = Polynomial::one(field, k);
    for rows in combinations(m, size) {
        for cols in combinations(k, size) {
            let minor: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            product = &product * &determinant(&minor)?;
        }
    }
    Ok(product)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&j| m & (1 << j) != 0).collect())
        .collect()
}

/// `F_p[y_1..y_n, V]`, all degrees 1, with `c_s = y_s^{p^j}`.
pub fn tuan_instance(field: PrimeField, n: usize, j: u32) -> Result<KoszulInstance> {
    if n == 0 || n >= MAX_GENERATORS {
        return Err(AlgebraError::InvalidParameter(format!(
            "n must lie in 1..{MAX_GENERATORS}"
        )));
    }
    let power = u64::from(field.characteristic())
        .checked_pow(j)
        .filter(|&v| v <= crate::budget::EXPONENT_LIMIT)
        .ok_or_else(|| AlgebraError::Budget {
            what: format!("exponent p^j with j={j}"),
            estimate: u64::MAX,
            limit: crate::budget::EXPONENT_LIMIT,
        })?;
    let mut names: Vec<String> = (1..=n).map(|s| format!("y{s}")).collect();
    names.push("V".into());
    let ring = AbstractRing::new(field, names, vec![1; n + 1])?;
    let coeffs = (0..n)
        .map(|s| Polynomial::monomial(field, Monomial::var(n + 1, s, power as u32), 1))
        .collect();
    KoszulInstance::new(ring, coeffs)
}

/// Outcome of running the Koszul machinery on the extracted coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DicksonMargolisReport {
    pub p: u32,
    pub n: usize,
    pub i: u32,
    /// Variable weights of the abstract ring `F_p[R_0..R_{n-1}]`.
    pub var_degrees: Vec<u64>,
    /// `P_s` with `X_t` renamed to `R_t`; these are the Koszul coefficients.
    pub coefficients: Vec<String>,
    pub coefficient_degrees: Vec<u64>,
    /// Whether every `A_s` is literally a polynomial in the ratios alone.
    pub literal_encoding: bool,
    pub zero_coefficients: Vec<usize>,
    pub regularity: String,
    /// `(q, d, dim)` with `H_q(d) != 0`, `q > 0`, for the complex on the
    /// zero coefficients alone.
    pub zero_witness: Option<(usize, u64, u64)>,
    pub jacobian: String,
    pub full: GradedHomologyReport,
    /// Homology of the subsequence of nonzero coefficients.
    pub nondegenerate: Option<GradedHomologyReport>,
    /// `H_{>0} = 0` and `H_0` equal to the Hilbert oracle up to the bound.
    pub nondegenerate_regular_up_to_bound: Option<bool>,
    pub notes: Vec<String>,
}

fn restrict(inst: &KoszulInstance, keep: &[usize]) -> Result<KoszulInstance> {
    KoszulInstance::with_degrees(
        inst.ring.clone(),
        keep.iter().map(|&s| inst.coeffs[s].clone()).collect(),
        keep.iter().map(|&s| inst.coeff_degrees[s]).collect(),
    )
}

/// Acyclicity after inverting the Jacobian is not visible to truncated
/// linear algebra over the polynomial ring.
pub const LOCALIZATION_NOTE: &str =
    "acyclicity after localizing at the Jacobian is not checked; only global regularity is tested";

/// Builds the Koszul complex with `d(ξ_s) = P_s` over abstract ratio
/// variables `R_t` (weighted like `X_t`), and reports its homology.
pub fn dickson_margolis_check(
    coeffs: &SumCoefficients,
    max_degree: Option<u64>,
) -> Result<DicksonMargolisReport> {
    let field = coeffs.field();
    let n = coeffs.n();
    let weights = coeffs.frame().weighted_degrees().to_vec();
    let ring = AbstractRing::new(
        field,
        (0..n).map(|t| format!("R{t}")).collect(),
        weights.clone(),
    )?;
    let p = u64::from(coeffs.p());
    let pi = p.pow(coeffs.i());
    let roots: Vec<Polynomial> = coeffs
        .p_roots_dickson()
        .iter()
        .map(|x| x.as_poly().clone())
        .collect();
    // P_s has weight (p^i - p^s) / p; a zero root gets that weight rounded down
    let degrees: Vec<u64> = (0..n)
        .map(|s| {
            let comps = roots[s].components_by_weight(&weights);
            comps
                .keys()
                .next()
                .copied()
                .unwrap_or_else(|| pi.saturating_sub(p.pow(s as u32)) / p)
        })
        .collect();
    let inst = KoszulInstance::with_degrees(ring.clone(), roots.clone(), degrees.clone())?;
    let bound = max_degree.unwrap_or_else(|| 3 * inst.max_coeff_degree().max(1));
    let full = homology_dims(&inst, bound)?;

    let zero_coefficients: Vec<usize> = (0..n).filter(|&s| roots[s].is_zero()).collect();
    let literal_encoding = coeffs.a_dickson().iter().all(|a| a.as_poly().is_constant());
    let mut notes = vec![
        "ratio variables are abstract: X_t is renamed R_t and graded by deg Q_{n,t}".to_string(),
        "regularity is evidenced up to the degree bound, not proven".to_string(),
        LOCALIZATION_NOTE.to_string(),
        "the Jacobian is taken of the p-th roots P_s: derivatives of p-th powers vanish, and (P_s) is regular iff (P_s^p) is".to_string(),
    ];
    if !literal_encoding {
        notes.push(
            "literal re-encoding failed: some A_s carries powers of Q0 and is not a polynomial in the ratios alone".into(),
        );
    }

    let zero_witness = if zero_coefficients.is_empty() {
        None
    } else {
        let zeros = restrict(&inst, &zero_coefficients)?;
        let top = zeros.max_coeff_degree();
        homology_dims(&zeros, top)?.first_higher_homology()
    };
    let regularity = if let Some((q, d, dim)) = zero_witness {
        let mut r =
            format!("regularity fails: zero coefficient (H_{q} has dimension {dim} in degree {d})");
        if full.higher_homology_vanishes() {
            r.push_str(
                "; the full complex is acyclic because a unit coefficient generates the unit ideal",
            );
        }
        r
    } else if full.higher_homology_vanishes() && full.h0_matches_expected() {
        "regular up to the degree bound".to_string()
    } else {
        "not regular".to_string()
    };

    let keep: Vec<usize> = (0..n).filter(|&s| !roots[s].is_zero()).collect();
    let (nondegenerate, nondegenerate_regular_up_to_bound) = if keep.is_empty() {
        (None, None)
    } else if keep.len() == n {
        let ok = full.higher_homology_vanishes() && full.h0_matches_expected();
        (None, Some(ok))
    } else {
        let rep = homology_dims(&restrict(&inst, &keep)?, bound)?;
        let ok = rep.higher_homology_vanishes() && rep.h0_matches_expected();
        (Some(rep), Some(ok))
    };

    Ok(DicksonMargolisReport {
        p: coeffs.p(),
        n,
        i: coeffs.i(),
        var_degrees: weights,
        coefficients: roots.iter().map(|c| ring.render(c)).collect(),
        coefficient_degrees: degrees,
        literal_encoding,
        zero_coefficients,
        regularity,
        zero_witness,
        jacobian: ring.render(&jacobian_det(&inst)?),
        full,
        nondegenerate,
        nondegenerate_regular_up_to_bound,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn differential_on_generators() {
        let fld = f(3);
        let ring = AbstractRing::standard(fld, 2);
        let c1 = Polynomial::var(fld, 2, 0).pow(2);
        let c2 = Polynomial::var(fld, 2, 1);
        let inst = KoszulInstance::new(ring, vec![c1.clone(), c2.clone()]).unwrap();
        let one = Polynomial::one(fld, 2);
        let d1 = koszul_d(&inst, &ChainElement::basis(&[0], one.clone())).unwrap();
        assert_eq!(d1, ChainElement::basis(&[], c1.clone()));
        let d12 = koszul_d(&inst, &ChainElement::basis(&[0, 1], one)).unwrap();
        let expected = ChainElement::basis(&[1], c1).add(&ChainElement::basis(&[0], -&c2));
        assert_eq!(d12, expected);
    }

    #[test]
    fn one_variable_examples() {
        let fld = f(2);
        let ring = AbstractRing::standard(fld, 1);
        let inst = KoszulInstance::new(ring.clone(), vec![Polynomial::var(fld, 1, 0)]).unwrap();
        let rep = homology_dims(&inst, 5).unwrap();
        assert_eq!(rep.h0_row(), vec![1, 0, 0, 0, 0, 0]);
        assert!(rep.higher_homology_vanishes());

        let zero = KoszulInstance::new(ring.clone(), vec![Polynomial::zero(fld, 1)]).unwrap();
        let rep = homology_dims(&zero, 4).unwrap();
        assert_eq!(rep.h0_row(), vec![1; 5]);
        assert_eq!(rep.row(1), vec![1; 5]);

        let pth = KoszulInstance::new(ring, vec![Polynomial::var(fld, 1, 0).pow(2)]).unwrap();
        let rep = homology_dims(&pth, 5).unwrap();
        assert_eq!(rep.h0_row(), vec![1, 1, 0, 0, 0, 0]);
        assert!(rep.higher_homology_vanishes());
    }

    #[test]
    fn tuan_coefficients() {
        let inst = tuan_instance(f(2), 1, 1).unwrap();
        assert_eq!(
            inst.coeffs,
            vec![Polynomial::from_terms(f(2), 2, [([2u32, 0], 1)])]
        );
        let inst = tuan_instance(f(3), 2, 1).unwrap();
        assert_eq!(
            inst.coeffs[1],
            Polynomial::from_terms(f(3), 3, [([0u32, 3, 0], 1)])
        );
        let inst = tuan_instance(f(2), 2, 2).unwrap();
        assert_eq!(inst.coeff_degrees, vec![4, 4]);
    }

    #[test]
    fn hilbert_oracle_examples() {
        let fld = f(2);
        let ring = AbstractRing::standard(fld, 2);
        let inst = KoszulInstance::new(ring, vec![Polynomial::var(fld, 2, 0)]).unwrap();
        assert_eq!(expected_quotient_hilbert(&inst, 4), vec![1; 5]);
        // (1 - t^2)^2 / (1 - t)^3 = (1 + t)^2 / (1 - t)
        let tuan = tuan_instance(fld, 2, 1).unwrap();
        assert_eq!(
            expected_quotient_hilbert(&tuan, 6),
            vec![1, 3, 4, 4, 4, 4, 4]
        );
        let tuan = tuan_instance(f(3), 1, 1).unwrap();
        assert_eq!(expected_quotient_hilbert(&tuan, 5), vec![1, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn jacobian_examples() {
        let fld = f(3);
        let ring = AbstractRing::standard(fld, 2);
        let sq = KoszulInstance::new(
            ring.clone(),
            vec![
                Polynomial::var(fld, 2, 0).pow(2),
                Polynomial::var(fld, 2, 1).pow(2),
            ],
        )
        .unwrap();
        // det diag(2 R0, 2 R1) = 4 R0 R1 = R0 R1
        assert_eq!(
            jacobian_det(&sq).unwrap(),
            Polynomial::from_terms(fld, 2, [([1u32, 1], 1)])
        );
        let cubes = KoszulInstance::new(
            ring.clone(),
            vec![
                Polynomial::var(fld, 2, 0).pow(3),
                Polynomial::var(fld, 2, 1),
            ],
        )
        .unwrap();
        assert!(jacobian_det(&cubes).unwrap().is_zero());
        let lin = KoszulInstance::new(
            ring,
            vec![Polynomial::var(fld, 2, 0), Polynomial::var(fld, 2, 1)],
        )
        .unwrap();
        assert!(jacobian_det(&lin).unwrap().is_one());
    }

    #[test]
    fn inhomogeneous_coefficient_rejected() {
        let fld = f(2);
        let ring = AbstractRing::standard(fld, 2);
        let c = &Polynomial::var(fld, 2, 0) + &Polynomial::var(fld, 2, 1).pow(2);
        assert!(KoszulInstance::new(ring, vec![c]).is_err());
    }

    #[test]
    fn triplet_dump() {
        let inst = tuan_instance(f(2), 1, 1).unwrap();
        let text = differential_triplets(&inst, 1, 2).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# d_1 in degree 2"));
        // C_1(2) = xi_1 * 1, image y1^2 in C_0(2) spanned by y1^2, y1 V, V^2
        assert_eq!(lines.count(), 1);
        assert!(differential_triplets(&inst, 0, 2).is_err());
    }

    #[test]
    fn generic_substitute_instances() {
        let fld = f(2);
        let ring = AbstractRing::standard(fld, 2);
        let inst = KoszulInstance::new(
            ring,
            vec![
                Polynomial::var(fld, 2, 0).pow(2),
                Polynomial::var(fld, 2, 1).pow(2),
            ],
        )
        .unwrap();
        let rep = homology_dims(&inst, 5).unwrap();
        assert_eq!(rep.h0_row(), vec![1, 2, 1, 0, 0, 0]);
        assert!(rep.higher_homology_vanishes());
        assert!(rep.h0_matches_expected());

        let fld = f(5);
        let ring = AbstractRing::standard(fld, 1);
        let inst = KoszulInstance::new(ring, vec![Polynomial::var(fld, 1, 0).pow(5)]).unwrap();
        let rep = homology_dims(&inst, 9).unwrap();
        assert_eq!(rep.h0_row(), vec![1, 1, 1, 1, 1, 0, 0, 0, 0, 0]);
        assert!(rep.higher_homology_vanishes());
    }

    #[test]
    fn non_regular_inputs_have_h1() {
        let fld = f(3);
        let ring = AbstractRing::standard(fld, 2);
        let x = Polynomial::var(fld, 2, 0);
        let repeated = KoszulInstance::new(ring.clone(), vec![x.clone(), x.clone()]).unwrap();
        let rep = homology_dims(&repeated, 4).unwrap();
        assert_eq!(rep.first_higher_homology(), Some((1, 1, 1)));

        let zero =
            KoszulInstance::with_degrees(ring, vec![x, Polynomial::zero(fld, 2)], vec![1, 2])
                .unwrap();
        let rep = homology_dims(&zero, 4).unwrap();
        assert_eq!(rep.first_higher_homology(), Some((1, 2, 1)));
    }

    #[test]
    fn self_duality_in_degree_zero() {
        for (p, n, j) in [(2, 1, 1), (3, 2, 1), (2, 2, 2)] {
            let rep = homology_dims(&tuan_instance(f(p), n, j).unwrap(), 0).unwrap();
            assert_eq!(rep.homology(0, 0), Some(1));
        }
    }

    #[test]
    fn tuan_two_two_one() {
        let rep = homology_dims(&tuan_instance(f(2), 2, 1).unwrap(), 8).unwrap();
        assert_eq!(rep.h0_row(), vec![1, 3, 4, 4, 4, 4, 4, 4, 4]);
        assert!(rep.higher_homology_vanishes());
    }

    fn margolis(p: u32, n: usize, i: u32) -> DicksonMargolisReport {
        let frame = std::sync::Arc::new(crate::DicksonFrame::build(f(p), n).unwrap());
        let c = SumCoefficients::extract(frame, i).unwrap();
        dickson_margolis_check(&c, Some(6)).unwrap()
    }

    #[test]
    fn dickson_cell_with_zero_root() {
        let rep = margolis(2, 2, 1);
        assert!(rep
            .regularity
            .starts_with("regularity fails: zero coefficient"));
        assert_eq!(rep.zero_coefficients, vec![0]);
        assert!(rep.zero_witness.is_some());
        assert_eq!(rep.coefficients, vec!["0".to_string(), "1".to_string()]);
    }

    #[test]
    fn dickson_cell_with_nonconstant_root() {
        // P = (0, Q0) at (2, 2, 3)
        let rep = margolis(2, 2, 3);
        assert_eq!(rep.coefficients[1], "R0");
        assert!(!rep.literal_encoding);
        assert_eq!(rep.nondegenerate_regular_up_to_bound, Some(true));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn chain(fld: PrimeField, nvars: usize, m: usize, seed: u64) -> ChainElement {
            let mut s = crate::sampling::Sampler::new(seed);
            let mut x = ChainElement::zero();
            for mask in 0u32..(1 << m) {
                x.add_term(mask, s.poly(fld, nvars, 3, 3));
            }
            x
        }

        proptest! {
            #[test]
            fn d_squared_vanishes(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
                let fld = f(p);
                let mut s = crate::sampling::Sampler::new(seed ^ 0x5eed);
                let coeffs: Vec<Polynomial> = (0..3)
                    .map(|_| s.poly(fld, 3, 2, 2))
                    .collect();
                let ring = AbstractRing::standard(fld, 3);
                // homogeneity is irrelevant for d^2 = 0; record degree 0
                let inst = KoszulInstance {
                    ring,
                    coeffs,
                    coeff_degrees: vec![0; 3],
                };
                let x = chain(fld, 3, 3, seed);
                let dd = koszul_d(&inst, &koszul_d(&inst, &x).unwrap()).unwrap();
                prop_assert!(dd.is_zero());
            }
        }
    }
}
