//! End-to-end CLI contract: exit codes, report content, SVG output and
//! byte determinism. Covers the command-line acceptance criterion.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn test_data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn revmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON report")
}

#[test]
fn exit_codes_pass_fail_malformed() {
    let ok = revmap(&["check", fixture("planar_contained.json").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let fail = revmap(&["check", test_data("bad_involution.json").to_str().unwrap()]);
    assert_eq!(fail.status.code(), Some(1));
    // The failed check is still reported in full.
    let report: serde_json::Value = serde_json::from_slice(&fail.stdout).unwrap();
    assert_eq!(report["result"]["phi1_involution"], false);
    assert_eq!(report["result"]["all_passed"], false);

    let malformed = revmap(&["check", test_data("malformed_scalar.json").to_str().unwrap()]);
    assert_eq!(malformed.status.code(), Some(2));

    let missing = revmap(&["check", "no_such_file.json"]);
    assert_eq!(missing.status.code(), Some(2));

    println!("[PASS] criterion 11a: exit codes 0/1/2 on pass/fail/malformed");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let classify_target = fixture("planar_trace_3.json");
    let chains_target = fixture("planar_contained.json");
    let periodic_target = fixture("planar_abelian.json");
    let symmetries_target = fixture("nilpotent3_n3.json");
    for args in [
        vec!["classify", classify_target.to_str().unwrap()],
        vec!["chains", chains_target.to_str().unwrap(), "--kmax", "8"],
        vec!["periodic", periodic_target.to_str().unwrap()],
        vec!["symmetries", symmetries_target.to_str().unwrap()],
    ] {
        let argrefs: Vec<&str> = args.to_vec();
        let a = revmap(&argrefs);
        let b = revmap(&argrefs);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
    println!("[PASS] criterion 11b: byte-identical reports on repeated runs");
}

#[test]
fn plot_svg_shape_and_determinism() {
    let tmp = tempfile::tempdir().unwrap();

    // Rotation-number-1/5 fixture: exactly five distinct fixed lines.
    let out1 = tmp.path().join("rot72.svg");
    let res = revmap(&[
        "plot",
        fixture("planar_rot72.json").to_str().unwrap(),
        "--kmax",
        "8",
        "--out",
        out1.to_str().unwrap(),
    ]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["fixed_line_count"], 5);
    let svg = std::fs::read_to_string(&out1).unwrap();
    assert_eq!(svg.matches("class=\"fix-line\"").count(), 5);
    assert_well_formed(&svg);

    // Trace-2 fixture: dashed invariant line present.
    let out2 = tmp.path().join("t2.svg");
    revmap(&[
        "plot",
        fixture("planar_trace_2.json").to_str().unwrap(),
        "--kmax",
        "8",
        "--out",
        out2.to_str().unwrap(),
    ]);
    let svg2 = std::fs::read_to_string(&out2).unwrap();
    assert!(svg2.contains("stroke-dasharray"));
    assert!(svg2.contains("class=\"invariant-line\""));
    assert_well_formed(&svg2);

    // Contained-case arrangement at kmax 8: the shared vertical line plus
    // slopes 0..3 and -1..-4, nine distinct lines in all.
    let out_c = tmp.path().join("contained.svg");
    let res = revmap(&[
        "plot",
        fixture("planar_contained.json").to_str().unwrap(),
        "--kmax",
        "8",
        "--out",
        out_c.to_str().unwrap(),
        "--orbit",
        "1,0",
        "--steps",
        "6",
    ]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["fixed_line_count"], 9);
    assert_eq!(report["result"]["orbit_points"], 7);

    // Byte-identical SVG on repeated runs.
    let out3 = tmp.path().join("again.svg");
    revmap(&[
        "plot",
        fixture("planar_rot72.json").to_str().unwrap(),
        "--kmax",
        "8",
        "--out",
        out3.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&out1).unwrap(),
        std::fs::read(&out3).unwrap()
    );
    println!("[PASS] criterion 11c: SVG well-formed, expected lines, deterministic");
}

/// Minimal well-formedness: XML prolog, single root, balanced tags.
fn assert_well_formed(svg: &str) {
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let mut depth = 0i32;
    for raw in svg.split('<').skip(1) {
        let tag = raw.trim_start();
        if tag.starts_with('?') {
            continue;
        }
        if tag.starts_with('/') {
            depth -= 1;
        } else if !raw[..raw.find('>').expect("closed tag")].ends_with('/') {
            depth += 1;
        }
        assert!(depth >= 0, "unbalanced tags");
    }
    assert_eq!(depth, 0, "unbalanced tags at end of document");
}

#[test]
fn classify_reports_case_and_trace() {
    let res = revmap(&["classify", fixture("planar_trace_3.json").to_str().unwrap()]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["case"], "planar_nonabelian_generic");
    assert_eq!(report["result"]["trace"], "3");
    assert_eq!(report["result"]["conjugacy_verified"], true);
    assert_eq!(report["result"]["eigen"]["kind"], "hyperbolic");

    let res = revmap(&["classify", fixture("suspension_trace2_n3.json").to_str().unwrap()]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["case"], "gen_d");
    assert_eq!(report["result"]["suspension"]["core_dim"], 2);
    assert_eq!(report["result"]["suspension"]["trivial_dim"], 1);

    let res = revmap(&["classify", fixture("nilpotent3_n4.json").to_str().unwrap()]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["case"], "gen_e");
}

#[test]
fn chains_report_finiteness() {
    let res = revmap(&[
        "chains",
        fixture("planar_abelian.json").to_str().unwrap(),
        "--kmax",
        "10",
    ]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["finite_chain"], true);
    assert_eq!(report["result"]["all_links_hold"], true);

    let res = revmap(&[
        "chains",
        fixture("planar_trace_2.json").to_str().unwrap(),
        "--kmax",
        "10",
    ]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["finite_chain"], false);
    assert_eq!(report["result"]["distinct_fix_count_even"], 10);
}

#[test]
fn orbit_reports_exact_points() {
    let res = revmap(&[
        "orbit",
        fixture("planar_contained.json").to_str().unwrap(),
        "--point",
        "1,0",
        "--steps",
        "4",
    ]);
    let report = stdout_json(&res);
    let pts = report["result"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), 5);
    assert_eq!(pts[3][0], "-1");
    assert_eq!(pts[3][1], "3");

    // Off-dimension points are input errors.
    let bad = revmap(&[
        "orbit",
        fixture("planar_contained.json").to_str().unwrap(),
        "--point",
        "1,0,3",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn conjugate_finds_and_rejects() {
    let res = revmap(&[
        "conjugate",
        fixture("planar_trace_2.json").to_str().unwrap(),
        fixture("suspension_trace2_n3.json").to_str().unwrap(),
    ]);
    // Dimension mismatch is a mathematical precondition failure.
    assert_eq!(res.status.code(), Some(1));

    let res = revmap(&[
        "conjugate",
        fixture("planar_abelian.json").to_str().unwrap(),
        fixture("planar_contained.json").to_str().unwrap(),
    ]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["found"], false);

    let res = revmap(&[
        "conjugate",
        fixture("planar_trace_3.json").to_str().unwrap(),
        fixture("planar_trace_3.json").to_str().unwrap(),
    ]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["found"], true);
    assert_eq!(report["result"]["verified"], true);
}

#[test]
fn symmetries_dimensions_on_fixtures() {
    let res = revmap(&["symmetries", fixture("planar_contained.json").to_str().unwrap()]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["symmetry_dim"], 2);
    assert_eq!(report["result"]["reversing_dim"], 2);

    let res = revmap(&["symmetries", fixture("nilpotent3_n3.json").to_str().unwrap()]);
    let report = stdout_json(&res);
    assert_eq!(report["result"]["symmetry_dim"], 3);
    assert_eq!(report["result"]["reversing_dim"], 3);
}

#[test]
fn periodic_certificates_for_rotation_fixture() {
    let res = revmap(&[
        "periodic",
        fixture("planar_trace_0.json").to_str().unwrap(),
        "--kmax",
        "6",
    ]);
    let report = stdout_json(&res);
    let certs = report["result"]["certificates"].as_array().unwrap();
    assert!(certs
        .iter()
        .any(|c| c["period_divisor"].as_u64().unwrap() % 4 == 0));
}

#[test]
fn all_shipped_fixtures_pass_check() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            let out = revmap(&["check", path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{path:?}");
            count += 1;
        }
    }
    assert_eq!(count, 17, "all shipped fixtures checked");
}
