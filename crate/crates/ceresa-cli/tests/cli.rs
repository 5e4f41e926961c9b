//! End-to-end tests that spawn the built binary against the fixture curves
//! and check exit codes, human output, and machine reports.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_str()
        .expect("fixture path is utf-8")
        .to_string()
}

fn scratch(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ceresa-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(name).to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ceresa"))
        .args(args)
        .output()
        .expect("the binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn read_json(path: &str) -> Value {
    let text = std::fs::read_to_string(path).expect("report file exists");
    serde_json::from_str(&text).expect("report is valid json")
}

#[test]
fn curve_info_reports_genus_type_and_polarisation() {
    let (code, out, _) = run(&["curve-info", &fixture("k4_symbolic.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("genus 3"), "genus printed: {out}");
    assert!(out.contains("K4 (complete graph on four vertices)"), "type printed");
    assert!(out.contains("[a + e + f, -f, -e]"), "first Q row printed: {out}");
    assert!(
        out.contains("not determined (symbolic lengths)"),
        "definiteness status for symbolic lengths"
    );

    let (code, out, _) = run(&["curve-info", &fixture("k4_numeric.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("positive definite: yes"), "numeric Q is definite: {out}");
}

#[test]
fn curve_info_rejects_malformed_files() {
    let bad = scratch("garbage.json");
    std::fs::write(&bad, "{\"bad\": true").unwrap();
    let (code, _, err) = run(&["curve-info", &bad]);
    assert_eq!(code, 2, "parse failure exits 2: {err}");

    let missing = scratch("does_not_exist.json");
    let (code, _, _) = run(&["curve-info", &missing]);
    assert_eq!(code, 2, "missing file exits 2");
}

#[test]
fn curve_files_are_validated() {
    let zero_len = scratch("zero_len.json");
    std::fs::write(
        &zero_len,
        r#"{"vertices": ["v"], "edges": [{"name": "L", "from": "v", "to": "v", "length": "0"}], "basepoint": "v"}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["curve-info", &zero_len]);
    assert_eq!(code, 2, "zero length rejected: {err}");
    assert!(err.contains("non-positive"), "reason named: {err}");

    let undeclared = scratch("undeclared.json");
    std::fs::write(
        &undeclared,
        r#"{"variables": ["x"], "vertices": ["v"], "edges": [{"name": "L", "from": "v", "to": "v", "length": "y"}], "basepoint": "v"}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["curve-info", &undeclared]);
    assert_eq!(code, 2, "undeclared variable rejected: {err}");

    let bad_vertex = scratch("bad_vertex.json");
    std::fs::write(
        &bad_vertex,
        r#"{"vertices": ["v"], "edges": [{"name": "L", "from": "v", "to": "w", "length": "1"}], "basepoint": "v"}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["curve-info", &bad_vertex]);
    assert_eq!(code, 2, "unknown endpoint rejected: {err}");
}

#[test]
fn periods_lists_the_six_k4_generators() {
    let report = scratch("periods.json");
    let (code, out, _) = run(&[
        "periods",
        &fixture("k4_symbolic.json"),
        "--j",
        "2",
        "--k",
        "1",
        "--json",
        &report,
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("oracle cross-check (cellwise integration): match"));

    let v = read_json(&report);
    assert_eq!(v["results"]["oracle_match"], Value::Bool(true));
    let mut got: Vec<String> = v["results"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap().to_string())
        .collect();
    got.sort();
    let mut expected: Vec<String> = [
        "a*b + a*d + a*f + b*e + b*f + d*e + d*f + e*f",
        "a*d + d*e + d*f + e*f",
        "a*c + a*d + a*e + c*e + c*f + d*e + d*f + e*f",
        "b*e + d*e + d*f + e*f",
        "b*c + b*d + b*e + c*d + c*f + d*e + d*f + e*f",
        "c*f + d*e + d*f + e*f",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    expected.sort();
    assert_eq!(got, expected, "the six period polynomials as a set");
}

#[test]
fn periods_on_the_loop_is_its_length() {
    let (code, out, _) = run(&["periods", &fixture("loop.json"), "--j", "1", "--k", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("\n  l\n"), "single generator l: {out}");
}

#[test]
fn periods_rejects_degrees_above_the_genus() {
    let (code, _, err) = run(&["periods", &fixture("loop.json"), "--j", "1", "--k", "1"]);
    assert_eq!(code, 2, "j + k > genus exits 2: {err}");
    assert!(err.contains("genus"), "reason names the genus: {err}");
}

#[test]
fn ceresa_certifies_infinite_order_on_the_symbolic_k4() {
    let report = scratch("ceresa_symbolic.json");
    let (code, out, _) = run(&["ceresa", &fixture("k4_symbolic.json"), "--json", &report]);
    assert_eq!(code, 0);
    assert!(out.contains("flux of Omega^3_{2,1}: -a*d"), "flux printed: {out}");
    assert!(out.contains("verdict: InfiniteOrder"));
    assert!(out.contains("certificate re-verified: true"));
    assert!(!out.contains("caveat"), "no caveat in symbolic mode");

    let v = read_json(&report);
    let r = &v["results"];
    assert_eq!(r["flux"], Value::String("-a*d".into()));
    assert_eq!(r["verdict"]["kind"], Value::String("infinite_order".into()));
    assert_eq!(r["verdict"]["verified"], Value::Bool(true));
    assert_eq!(r["boundary_verified"], Value::Bool(true));
    let degenerate: Vec<bool> = r["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["degenerate"].as_bool().unwrap())
        .collect();
    assert_eq!(
        degenerate,
        vec![true, true, false, true, true],
        "only the middle cell is transverse"
    );
    for cell in r["cells"].as_array().unwrap() {
        if cell["degenerate"].as_bool().unwrap() {
            assert_eq!(cell["contribution"], Value::String("0".into()));
        }
    }
}

#[test]
fn ceresa_numeric_flux_lands_in_the_specialized_lattice() {
    let (code, out, _) = run(&["ceresa", &fixture("k4_numeric.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("flux of Omega^3_{2,1}: -1"), "flux -1: {out}");
    assert!(out.contains("verdict: InLattice"));
    assert!(out.contains("caveat"), "numeric mode carries a caveat: {out}");
}

#[test]
fn ceresa_equal_star_lengths_give_torsion_of_order_four() {
    let (code, out, _) = run(&["ceresa", &fixture("k4_torsion.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("flux of Omega^3_{2,1}: -s^2"), "flux -s^2: {out}");
    assert!(out.contains("verdict: Torsion"));
    assert!(out.contains("order: 4"));
    assert!(out.contains("certificate re-verified: true"));
}

#[test]
fn ceresa_requires_a_k4_curve() {
    let (code, _, err) = run(&["ceresa", &fixture("theta.json")]);
    assert_eq!(code, 3, "non-K4 input exits 3: {err}");
    let (code, _, _) = run(&["ceresa", &fixture("loop.json")]);
    assert_eq!(code, 3);
}

#[test]
fn flux_classify_matches_the_paperless_oracle() {
    let gens = fixture("k4_periods.json");

    let (code, out, _) = run(&["flux-classify", "--value", "0", "--generators", &gens]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: InLattice"), "zero is in every lattice: {out}");

    let (code, out, _) = run(&[
        "flux-classify",
        "--value",
        "a*d + d*e + d*f + e*f",
        "--generators",
        &gens,
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: InLattice"), "a generator is in the lattice: {out}");

    let (code, out, _) = run(&["flux-classify", "--value", "-a*d", "--generators", &gens]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: InfiniteOrder"), "-a*d has infinite order: {out}");
    assert!(out.contains("certificate re-verified: true"));

    let (code, _, err) = run(&["flux-classify", "--value", "a*q", "--generators", &gens]);
    assert_eq!(code, 2, "unknown variable exits 2: {err}");
}

#[test]
fn lift_check_prints_the_kunneth_example_and_passes_trials() {
    let (code, out, _) = run(&[
        "lift-check",
        &fixture("k4_symbolic.json"),
        "--trials",
        "25",
        "--seed",
        "11",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("psi_hat      = -dx1^dx2^dp1^dp2 - dx1^dx3^dp1^dp3 - dx2^dx3^dp2^dp3"),
        "lifted form printed: {out}"
    );
    assert!(out.matches("equal: true").count() >= 2, "example and pairing agree: {out}");
    assert!(out.contains("tropical integral:   -a*d"));
    assert!(out.contains("symplectic integral: -a*d"));
    assert!(out.contains("25 run (seed 11), all passed"));
}

#[test]
fn lift_check_skips_the_ceresa_section_off_k4() {
    let (code, out, _) = run(&["lift-check", &fixture("theta.json"), "--trials", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("skipped"), "theta has no Ceresa chain: {out}");
    assert!(out.contains("all passed"));
}

#[test]
fn lift_check_reports_are_reproducible() {
    let a = scratch("lift_a.json");
    let b = scratch("lift_b.json");
    for path in [&a, &b] {
        let (code, _, _) = run(&[
            "lift-check",
            &fixture("k4_symbolic.json"),
            "--trials",
            "10",
            "--seed",
            "5",
            "--json",
            path,
        ]);
        assert_eq!(code, 0);
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b, "same input and seed give identical reports");

    let v = read_json(&a);
    assert_eq!(v["results"]["random_trials"]["all_passed"], Value::Bool(true));
    assert_eq!(v["results"]["ceresa_pairing"]["equal"], Value::Bool(true));
    assert_eq!(v["exact_arithmetic"], Value::Bool(true));
}

#[test]
fn lefschetz_ranks_by_level() {
    let (code, out, _) = run(&["lefschetz", &fixture("k4_numeric.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("level 1: primitive rank 14"), "level split: {out}");
    assert!(out.contains("level 2: primitive rank 1"));
    assert!(out.contains("total rank: 15"));
    assert!(out.contains("fiber volume classes lie in level one: true"));

    let (code, out, _) = run(&["lefschetz", &fixture("loop_numeric.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("total rank: 1"), "loop Jacobian has rank 1: {out}");

    let (code, _, err) = run(&["lefschetz", &fixture("k4_symbolic.json")]);
    assert_eq!(code, 2, "symbolic input exits 2: {err}");
    assert!(err.contains("numeric"), "reason named: {err}");
}

#[test]
fn machine_reports_are_byte_identical_across_reruns() {
    let a = scratch("rerun_a.json");
    let b = scratch("rerun_b.json");
    for path in [&a, &b] {
        let (code, _, _) = run(&["ceresa", &fixture("k4_symbolic.json"), "--json", path]);
        assert_eq!(code, 0);
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());

    let v = read_json(&a);
    let digest = v["input_digest"].as_str().unwrap();
    assert!(digest.starts_with("sha256:"), "digest names its algorithm: {digest}");
    assert_eq!(digest.len(), "sha256:".len() + 64);
    assert_eq!(v["command"]["subcommand"], Value::String("ceresa".into()));
}

#[test]
fn plot_writes_an_svg_for_numeric_curves_only() {
    let svg = scratch("k4.svg");
    let (code, _, _) = run(&[
        "curve-info",
        &fixture("k4_numeric.json"),
        "--plot",
        &svg,
    ]);
    assert_eq!(code, 0);
    let body = std::fs::read_to_string(&svg).unwrap();
    assert!(body.starts_with("<svg"), "svg document produced");
    for name in ["D", "E", "F", "A", "B", "C"] {
        assert!(body.contains(&format!(">{name}</text>")), "edge {name} labeled");
    }

    let (code, _, err) = run(&[
        "curve-info",
        &fixture("k4_symbolic.json"),
        "--plot",
        &scratch("sym.svg"),
    ]);
    assert_eq!(code, 2, "symbolic lengths cannot be drawn: {err}");
}
