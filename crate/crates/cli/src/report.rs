//! Report types shared by `verify` and `koszul`, with text rendering.

use dickson_milnor::identities::{Status, VerificationResult};
use dickson_milnor::koszul::{DicksonMargolisReport, GradedHomologyReport};
use dickson_milnor::suite::CellReport;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub grid: Vec<(u32, usize, u32)>,
    pub max_m: Option<u32>,
    pub seeds: Vec<u64>,
    pub koszul_d: Option<u64>,
    pub output: Option<String>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KoszulEntry {
    /// `tuan`, `dickson` or `custom`.
    pub kind: String,
    pub label: String,
    pub grading: String,
    pub variables: Vec<String>,
    pub var_degrees: Vec<u64>,
    pub coefficients: Vec<String>,
    pub coefficient_degrees: Vec<u64>,
    pub homology: GradedHomologyReport,
    pub h0_matches_expected: bool,
    pub higher_homology_vanishes: bool,
    pub jacobian: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dickson: Option<DicksonMargolisReport>,
    /// `fail` only when a sequence known to be regular shows otherwise.
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub config: RunConfig,
    pub cells: Vec<CellReport>,
    pub koszul: Vec<KoszulEntry>,
    pub status: Status,
}

impl Report {
    pub fn new(config: RunConfig, mut cells: Vec<CellReport>, koszul: Vec<KoszulEntry>) -> Self {
        cells.sort_by_key(|c| (c.p, c.n, c.i));
        let failed =
            cells.iter().any(|c| !c.passed()) || koszul.iter().any(|k| k.status == Status::Fail);
        Report {
            schema: SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            cells,
            koszul,
            status: if failed { Status::Fail } else { Status::Pass },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for cell in &self.cells {
            render_cell(&mut out, cell);
        }
        for k in &self.koszul {
            render_koszul(&mut out, k);
        }
        let checks: usize = self.cells.iter().map(|c| c.checks.len()).sum();
        let _ = writeln!(
            out,
            "status: {} ({} cells, {checks} checks, {} Koszul tables)",
            status_word(self.status),
            self.cells.len(),
            self.koszul.len()
        );
        out
    }
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Vacuous => "vacuous",
    }
}

fn render_check(out: &mut String, c: &VerificationResult) {
    let extra = c.params.extra.as_deref().unwrap_or("");
    let _ = write!(out, "  {:<8} {:<22} {extra}", status_word(c.status), c.name);
    if let Some(note) = &c.note {
        let _ = write!(out, " [{note}]");
    }
    out.push('\n');
    if let Some(w) = &c.witness {
        let _ = writeln!(out, "           at {}", w.context);
        let _ = writeln!(out, "           lhs  = {}", w.lhs);
        let _ = writeln!(out, "           rhs  = {}", w.rhs);
        let _ = writeln!(out, "           diff = {}", w.difference);
    }
}

fn render_cell(out: &mut String, cell: &CellReport) {
    let _ = writeln!(out, "== cell p={} n={} i={} ==", cell.p, cell.n, cell.i);
    for note in &cell.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    if let Some(co) = &cell.coefficients {
        for (s, (a, p)) in co.a.iter().zip(&co.p).enumerate() {
            let _ = writeln!(out, "  A_{s} = {a}    P_{s} = {p}");
        }
        let _ = writeln!(out, "  B   = {}    R   = {}", co.b, co.r);
    }
    for c in &cell.checks {
        render_check(out, c);
    }
    if !cell.iterates.is_empty() {
        let _ = writeln!(out, "  iterates St^m(Q_s): s m equal closed");
        for r in &cell.iterates {
            let _ = writeln!(
                out,
                "    {} {} {} {}",
                r.s,
                r.m,
                if r.equal { "yes" } else { "NO" },
                r.closed
            );
        }
    }
}

fn row_line(out: &mut String, label: &str, values: impl Iterator<Item = String>) {
    let _ = write!(out, "  {label:<9}");
    for v in values {
        let _ = write!(out, " {v:>4}");
    }
    out.push('\n');
}

/// The graded homology table with the Hilbert row beneath it.
pub fn render_homology(out: &mut String, h: &GradedHomologyReport) {
    row_line(out, "d", (0..=h.max_degree).map(|d| d.to_string()));
    for q in 0..=h.generators {
        row_line(
            out,
            &format!("H_{q}"),
            h.row(q).into_iter().map(|v| v.to_string()),
        );
    }
    row_line(out, "expected", h.expected_h0.iter().map(|v| v.to_string()));
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_koszul(out: &mut String, k: &KoszulEntry) {
    let _ = writeln!(out, "== koszul {} {} ==", k.kind, k.label);
    let _ = writeln!(out, "  grading: {}", k.grading);
    let vars: Vec<String> = k
        .variables
        .iter()
        .zip(&k.var_degrees)
        .map(|(v, d)| format!("{v}:{d}"))
        .collect();
    let _ = writeln!(out, "  variables: {}", vars.join(", "));
    let _ = writeln!(out, "  coefficients: {}", k.coefficients.join(", "));
    render_homology(out, &k.homology);
    let _ = writeln!(
        out,
        "  H_0 matches expected: {}",
        yes_no(k.h0_matches_expected)
    );
    let _ = writeln!(
        out,
        "  H_>0 vanishes: {}",
        yes_no(k.higher_homology_vanishes)
    );
    let _ = writeln!(out, "  jacobian: {}", k.jacobian);
    if let Some(dm) = &k.dickson {
        let _ = writeln!(out, "  {}", dm.regularity);
        let _ = writeln!(
            out,
            "  literal ratio encoding: {}",
            yes_no(dm.literal_encoding)
        );
        if let (Some(sub), Some(ok)) = (&dm.nondegenerate, dm.nondegenerate_regular_up_to_bound) {
            let _ = writeln!(
                out,
                "  nonzero coefficients only (regular up to bound: {}):",
                yes_no(ok)
            );
            render_homology(out, sub);
        }
        for note in &dm.notes {
            let _ = writeln!(out, "  note: {note}");
        }
    }
    let _ = writeln!(out, "  status: {}", status_word(k.status));
}

#[cfg(test)]
mod tests {
    use super::*;
    use dickson_milnor::identities::{CheckParams, Witness};

    fn config() -> RunConfig {
        RunConfig {
            grid: vec![(2, 1, 2)],
            max_m: None,
            seeds: vec![0],
            koszul_d: None,
            output: None,
            format: Format::Json,
        }
    }

    fn cell(status: Status) -> CellReport {
        CellReport {
            p: 2,
            n: 1,
            i: 2,
            coefficients: None,
            checks: vec![VerificationResult {
                name: "structural_identity".into(),
                params: CheckParams {
                    p: 2,
                    n: 1,
                    i: 2,
                    extra: None,
                },
                status,
                witness: (status == Status::Fail).then(|| Witness {
                    context: "s=0".into(),
                    lhs: "x1".into(),
                    rhs: "0".into(),
                    difference: "x1".into(),
                }),
                note: None,
                elapsed: Default::default(),
            }],
            iterates: Vec::new(),
            notes: Vec::new(),
        }
    }

    #[test]
    fn failure_propagates() {
        let r = Report::new(config(), vec![cell(Status::Fail)], Vec::new());
        assert_eq!(r.status, Status::Fail);
        let text = r.to_text();
        assert!(text.contains("FAIL"));
        assert!(text.contains("diff = x1"));
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn vacuous_is_not_failure() {
        let r = Report::new(config(), vec![cell(Status::Vacuous)], Vec::new());
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn cells_sorted() {
        let mut a = cell(Status::Pass);
        a.p = 5;
        let r = Report::new(config(), vec![a, cell(Status::Pass)], Vec::new());
        assert_eq!(r.cells[0].p, 2);
    }
}
