//! Command implementations behind the `dmcheck` binary. Each command
//! returns its rendered output; the binary only parses flags, writes the
//! output and maps outcomes to exit codes.

pub mod expr;
pub mod report;

use dickson_milnor::identities::Status;
use dickson_milnor::koszul::{
    dickson_margolis_check, differential_triplets, homology_dims, jacobian_det, tuan_instance,
    AbstractRing, KoszulInstance,
};
use dickson_milnor::suite::{self, CellReport, CoefficientSummary, SuiteConfig};
use dickson_milnor::{
    AlgebraError, DicksonFrame, MilnorPrimitive, Polynomial, PrimeField, SumCoefficients,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

pub use report::{Format, KoszulEntry, Report, RunConfig};

/// Exit code for a falsified identity or failed reproduction.
pub const EXIT_FALSIFIED: u8 = 1;
/// Exit code for usage, parse, I/O and resource errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Io(std::io::Error),
    /// An identity failed where a value was required to continue.
    Falsified(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Falsified(_) => EXIT_FALSIFIED,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Resource(m) => write!(f, "resource error: {m}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
            CliError::Falsified(m) => write!(f, "falsified: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Budget { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<expr::ParseError> for CliError {
    fn from(e: expr::ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Rendered output plus the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn field(p: u32) -> CliResult<PrimeField> {
    Ok(PrimeField::new(p)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedPoly {
    pub name: String,
    pub poly: String,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenOutput {
    pub p: u32,
    pub n: usize,
    pub polynomials: Vec<RenderedPoly>,
}

/// `L_n`, `L_{n,s}`, `Q_{n,s}` and `Q0` with their degrees.
pub fn cmd_gen(p: u32, n: usize, format: Format) -> CliResult<Outcome> {
    let frame = DicksonFrame::build(field(p)?, n)?;
    let entry = |name: String, f: &Polynomial| RenderedPoly {
        name,
        poly: f.to_string(),
        degree: f.degree().unwrap_or(0),
    };
    let mut polys = vec![entry(format!("L_{n}"), frame.ln())];
    for (s, l) in frame.lns().iter().enumerate() {
        polys.push(entry(format!("L_{{{n},{s}}}"), l));
    }
    for (s, q) in frame.qs().iter().enumerate() {
        polys.push(entry(format!("Q_{{{n},{s}}}"), q));
    }
    polys.push(entry("Q0".into(), frame.q0()));
    let out = GenOutput {
        p,
        n,
        polynomials: polys,
    };
    Ok(Outcome::ok(match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("Dickson invariants over F_{p}, n={n}\n");
            for e in &out.polynomials {
                let _ = writeln!(s, "{} = {}    (degree {})", e.name, e.poly, e.degree);
            }
            s
        }
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StOutput {
    pub p: u32,
    pub n: usize,
    pub i: u32,
    pub input: String,
    pub x_coordinates: String,
    /// `None` when the image could not be expressed in the generators.
    pub dickson_coordinates: Option<String>,
}

/// `St^{Δ_i}` applied to an expression in `Q0..Q{n-1}`.
pub fn cmd_st(p: u32, n: usize, i: u32, expression: &str, format: Format) -> CliResult<Outcome> {
    let field = field(p)?;
    let primitive = MilnorPrimitive::new(field, i)?;
    let frame = DicksonFrame::build(field, n)?;
    let f = expr::parse_dickson(field, n, expression)?;
    let image = primitive.apply(&frame.expand(&f)?);
    let out = StOutput {
        p,
        n,
        i,
        input: f.to_string(),
        x_coordinates: image.to_string(),
        dickson_coordinates: frame.express(&image).ok().map(|d| d.to_string()),
    };
    Ok(Outcome::ok(match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("St^{{Δ_{i}}}({}) over F_{p}, n={n}\n", out.input);
            let _ = writeln!(s, "  in x: {}", out.x_coordinates);
            match &out.dickson_coordinates {
                Some(d) => {
                    let _ = writeln!(s, "  in Q: {d}");
                }
                None => s.push_str("  in Q: not expressible\n"),
            }
            s
        }
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractOutput {
    pub p: u32,
    pub n: usize,
    pub i: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The extracted `A_s, B, P_s, R` at one cell; exit 1 if extraction fails.
pub fn cmd_extract(p: u32, n: usize, i: u32, format: Format) -> CliResult<Outcome> {
    suite::precheck(p, n, i, 1)?;
    let frame = Arc::new(DicksonFrame::build(field(p)?, n)?);
    let (coefficients, error) = match SumCoefficients::extract(frame, i) {
        Ok(c) => (Some(CoefficientSummary::of(&c)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let code = if error.is_some() { EXIT_FALSIFIED } else { 0 };
    let out = ExtractOutput {
        p,
        n,
        i,
        coefficients,
        error,
        note: (i == 1).then(|| suite::OUTSIDE_RANGE_NOTE.to_string()),
    };
    let output = match format {
        Format::Json => json(&out),
        Format::Text => {
            let mut s = format!("St(Q_s) = (-1)^n Q0 (A_s + B Q_s) at p={p}, n={n}, i={i}\n");
            if let Some(note) = &out.note {
                let _ = writeln!(s, "  note: {note}");
            }
            if let Some(co) = &out.coefficients {
                for (t, (a, r)) in co.a.iter().zip(&co.p).enumerate() {
                    let _ = writeln!(s, "  A_{t} = {a}    P_{t} = {r}");
                }
                let _ = writeln!(s, "  B   = {}    R   = {}", co.b, co.r);
            }
            if let Some(e) = &out.error {
                let _ = writeln!(s, "  {e}");
            }
            s
        }
    };
    Ok(Outcome { output, code })
}

/// Cells of the default verification grid.
pub fn default_grid() -> Vec<(u32, usize, u32)> {
    let mut grid = Vec::new();
    for n in 1..=3 {
        for i in 1..=2 {
            grid.push((2, n, i));
        }
    }
    for n in 1..=2 {
        for i in 1..=2 {
            grid.push((3, n, i));
        }
    }
    for n in 1..=2 {
        grid.push((5, n, 2));
    }
    grid
}

/// Runs every cell (in parallel) and the Koszul check on each cell's roots.
pub fn cmd_verify(config: RunConfig) -> CliResult<Report> {
    if config.grid.is_empty() {
        return Err(CliError::Usage("empty grid".into()));
    }
    for &(p, n, i) in &config.grid {
        let max_m = config.max_m.unwrap_or(p + 1).max(2 * p);
        suite::precheck(p, n, i, max_m)?;
    }
    let suite_config = SuiteConfig {
        max_m: config.max_m,
        seeds: config.seeds.clone(),
        ..SuiteConfig::default()
    };
    let results: Vec<CliResult<(CellReport, Option<KoszulEntry>)>> = config
        .grid
        .par_iter()
        .map(|&(p, n, i)| {
            let cell = suite::run_cell(p, n, i, &suite_config)?;
            let entry = if cell.coefficients.is_some() {
                Some(dickson_entry(p, n, i, config.koszul_d)?)
            } else {
                None
            };
            Ok((cell, entry))
        })
        .collect();
    let mut cells = Vec::new();
    let mut koszul = Vec::new();
    for r in results {
        let (cell, entry) = r?;
        cells.push(cell);
        koszul.extend(entry);
    }
    koszul.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(Report::new(config, cells, koszul))
}

pub const UNIFORM_GRADING: &str =
    "every variable has degree 1 (uniform grading in place of topological degrees)";

fn entry_from(
    kind: &str,
    label: String,
    grading: &str,
    inst: &KoszulInstance,
    d: u64,
) -> CliResult<KoszulEntry> {
    let homology = homology_dims(inst, d)?;
    let h0 = homology.h0_matches_expected();
    let higher = homology.higher_homology_vanishes();
    Ok(KoszulEntry {
        kind: kind.into(),
        label,
        grading: grading.into(),
        variables: inst.ring.var_names.clone(),
        var_degrees: inst.ring.var_degrees.clone(),
        coefficients: inst.coeffs.iter().map(|c| inst.ring.render(c)).collect(),
        coefficient_degrees: inst.coeff_degrees.clone(),
        jacobian: inst.ring.render(&jacobian_det(inst)?),
        h0_matches_expected: h0,
        higher_homology_vanishes: higher,
        homology,
        dickson: None,
        status: Status::Pass,
    })
}

fn default_bound(inst: &KoszulInstance) -> u64 {
    3 * inst.max_coeff_degree().max(1)
}

/// `F_p[y_1..y_n, V]` with `c_s = y_s^{p^j}`; fails unless regular up to the bound.
pub fn koszul_tuan(
    p: u32,
    n: usize,
    j: u32,
    max_degree: Option<u64>,
) -> CliResult<(KoszulEntry, KoszulInstance)> {
    let inst = tuan_instance(field(p)?, n, j)?;
    let d = max_degree.unwrap_or_else(|| default_bound(&inst));
    let mut entry = entry_from(
        "tuan",
        format!("p={p} n={n} j={j}"),
        UNIFORM_GRADING,
        &inst,
        d,
    )?;
    if !(entry.h0_matches_expected && entry.higher_homology_vanishes) {
        entry.status = Status::Fail;
    }
    Ok((entry, inst))
}

/// Koszul complex on the p-th roots `P_s` at one cell.
pub fn dickson_entry(p: u32, n: usize, i: u32, max_degree: Option<u64>) -> CliResult<KoszulEntry> {
    suite::precheck(p, n, i, 1)?;
    let frame = Arc::new(DicksonFrame::build(field(p)?, n)?);
    let c = SumCoefficients::extract(frame, i).map_err(|e| CliError::Falsified(e.to_string()))?;
    let dm = dickson_margolis_check(&c, max_degree)?;
    let full = &dm.full;
    Ok(KoszulEntry {
        kind: "dickson".into(),
        label: format!("p={p} n={n} i={i}"),
        grading: "R_t has the degree of Q_{n,t}".into(),
        variables: (0..n).map(|t| format!("R{t}")).collect(),
        var_degrees: dm.var_degrees.clone(),
        coefficients: dm.coefficients.clone(),
        coefficient_degrees: dm.coefficient_degrees.clone(),
        homology: full.clone(),
        h0_matches_expected: full.h0_matches_expected(),
        higher_homology_vanishes: full.higher_homology_vanishes(),
        jacobian: dm.jacobian.clone(),
        dickson: Some(dm),
        status: Status::Pass,
    })
}

/// Reads one polynomial per line in the `c:e1,...,ek` term syntax; blank
/// lines and lines starting with `#` are skipped.
pub fn parse_coefficient_file(field: PrimeField, text: &str) -> CliResult<Vec<Polynomial>> {
    let mut coeffs: Vec<Polynomial> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nvars = coeffs.first().map(Polynomial::nvars);
        let f = Polynomial::parse_terms(field, nvars, line)
            .map_err(|e| CliError::Usage(format!("line {}: {e}", lineno + 1)))?;
        coeffs.push(f);
    }
    if coeffs.is_empty() {
        return Err(CliError::Usage("no coefficients in file".into()));
    }
    Ok(coeffs)
}

/// A user-supplied instance; informational, never a falsification.
pub fn koszul_custom(
    p: u32,
    text: &str,
    var_degrees: Option<Vec<u64>>,
    max_degree: Option<u64>,
) -> CliResult<(KoszulEntry, KoszulInstance)> {
    let field = field(p)?;
    let coeffs = parse_coefficient_file(field, text)?;
    let k = coeffs[0].nvars();
    let (ring, grading) = match var_degrees {
        Some(d) if d.len() != k => {
            return Err(CliError::Usage(format!(
                "{} degrees given for {k} variables",
                d.len()
            )));
        }
        Some(d) => {
            let names = (0..k).map(|t| format!("R{t}")).collect();
            (
                AbstractRing::new(field, names, d)?,
                "variable degrees as given",
            )
        }
        None => (AbstractRing::standard(field, k), UNIFORM_GRADING),
    };
    let inst = KoszulInstance::new(ring, coeffs)?;
    let d = max_degree.unwrap_or_else(|| default_bound(&inst));
    let label = format!("p={p} k={k} m={}", inst.len());
    Ok((entry_from("custom", label, grading, &inst, d)?, inst))
}

/// Writes the differential matrices in every degree up to the bound.
pub fn dump_triplets(inst: &KoszulInstance, max_degree: u64, dir: &Path) -> CliResult<usize> {
    std::fs::create_dir_all(dir)?;
    let mut written = 0;
    for q in 1..=inst.len() {
        for d in 0..=max_degree {
            let text = differential_triplets(inst, q, d)?;
            std::fs::write(dir.join(format!("d{q}_deg{d}.txt")), text)?;
            written += 1;
        }
    }
    Ok(written)
}

/// Wraps Koszul entries in a report with an empty cell list.
pub fn koszul_report(config: RunConfig, entries: Vec<KoszulEntry>) -> Report {
    Report::new(config, Vec::new(), entries)
}
