use dickson_milnor::identities::Status;
use dickson_milnor_cli::Report;
use std::path::PathBuf;
use std::process::{Command, Output};

fn dmcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dmcheck-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn gen_prints_frame() {
    let o = dmcheck(&["gen", "-p", "2", "-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Q_{2,1} = x1^2 + x1*x2 + x2^2"));
    let o = dmcheck(&["gen", "-p", "3", "-n", "1"]);
    assert!(stdout(&o).contains("Q_{1,0} = x1^2"));
}

#[test]
fn gen_over_budget_is_resource_error() {
    let o = dmcheck(&["gen", "-p", "2", "-n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("estimated"), "{err}");
}

#[test]
fn st_examples() {
    let o = dmcheck(&["st", "-p", "2", "-n", "2", "-i", "2", "Q1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("in Q: Q0*Q1"));
    let o = dmcheck(&["st", "-p", "3", "-n", "1", "-i", "2", "Q0"]);
    assert!(stdout(&o).contains("in x: 2*x1^10"));
    let o = dmcheck(&["st", "-p", "2", "-n", "2", "-i", "2", "Q0^3 +"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 6"));
}

#[test]
fn extract_reports_coefficients() {
    let o = dmcheck(&[
        "extract", "-p", "2", "-n", "2", "-i", "3", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"]["B"], "Q1^2");
    assert_eq!(v["coefficients"]["P"][1], "Q0");
    let o = dmcheck(&["extract", "-p", "2", "-n", "2", "-i", "1"]);
    assert!(stdout(&o).contains("outside stated range"));
}

#[test]
fn malformed_flags_exit_two() {
    assert_eq!(dmcheck(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        dmcheck(&["gen", "-p", "x", "-n", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dmcheck(&["gen", "-p", "4", "-n", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dmcheck(&["extract", "-p", "2", "-n", "2", "-i", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn default_verify_grid_passes_and_round_trips() {
    let dir = scratch("verify");
    let path = dir.join("report.json");
    let o = dmcheck(&[
        "verify",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.schema, "1");
    assert_eq!(report.status, Status::Pass);
    let cells: Vec<_> = report.cells.iter().map(|c| (c.p, c.n, c.i)).collect();
    assert_eq!(cells, dickson_milnor_cli::default_grid());
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["schema", "version", "config", "cells", "koszul", "status"] {
        assert!(raw.get(key).is_some(), "missing {key}");
    }
    let cell = &raw["cells"][0];
    for key in ["A", "B", "P", "R"] {
        assert!(cell["coefficients"].get(key).is_some());
    }
    assert!(cell["iterates"][0].get("closed").is_some());
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify", "-p", "3", "-n", "2", "-i", "2", "--seeds", "4,5", "--format", "json",
    ];
    assert_eq!(stdout(&dmcheck(&args)), stdout(&dmcheck(&args)));
}

#[test]
fn iterates_vanish_from_p_on() {
    let o = dmcheck(&[
        "verify", "-p", "3", "-n", "1", "-i", "2", "-m", "4", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    for row in &report.cells[0].iterates {
        assert!(row.equal);
        assert_eq!(row.m >= 3, row.closed == "0", "m={}", row.m);
    }
}

#[test]
fn koszul_tuan_table() {
    let o = dmcheck(&[
        "koszul", "tuan", "-p", "2", "-n", "2", "-j", "1", "-D", "8", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    let h = &report.koszul[0].homology;
    assert_eq!(h.h0_row(), vec![1, 3, 4, 4, 4, 4, 4, 4, 4]);
    assert_eq!(h.row(1), vec![0; 9]);
    assert_eq!(h.row(2), vec![0; 9]);
}

#[test]
fn koszul_custom_file() {
    let dir = scratch("custom");
    let file = dir.join("c.txt");
    std::fs::write(&file, "# c = (R0, R1)\n1:1,0\n1:0,1\n").unwrap();
    let dump = dir.join("dump");
    let o = dmcheck(&[
        "koszul",
        "custom",
        "--file",
        file.to_str().unwrap(),
        "-D",
        "3",
        "--dump",
        dump.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.koszul[0].homology.h0_row(), vec![1, 0, 0, 0]);
    let d1 = std::fs::read_to_string(dump.join("d1_deg1.txt")).unwrap();
    assert!(d1.starts_with("# d_1 in degree 1"));

    std::fs::write(&file, "1:1,0\n1:x\n").unwrap();
    let o = dmcheck(&["koszul", "custom", "--file", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = dmcheck(&[
        "koszul",
        "custom",
        "--file",
        dir.join("missing").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn koszul_dickson_zero_coefficient() {
    let o = dmcheck(&[
        "koszul", "dickson", "-p", "2", "-n", "2", "-i", "1", "-D", "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("regularity fails: zero coefficient"));
}
