use std::path::PathBuf;
use std::process::{Command, Output};

use nilsum::text::parse_matrix;
use nilsum::ExactMatrix;
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let json = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), json)
}

/// Rebuilds a matrix from its `{domain, rows}` JSON form.
fn matrix_from_json(v: &Value) -> ExactMatrix {
    let rows = v["rows"].as_array().unwrap();
    let cols = rows.first().map_or(0, |r| r.as_array().unwrap().len());
    let mut text = format!(
        "{}\n{} {}\n",
        v["domain"].as_str().unwrap(),
        rows.len(),
        cols
    );
    for r in rows {
        let entries: Vec<&str> = r
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e.as_str().unwrap())
            .collect();
        text.push_str(&entries.join(" "));
        text.push('\n');
    }
    parse_matrix(&text).unwrap()
}

fn is_nilpotent_by_powers(m: &ExactMatrix) -> bool {
    m.pow(m.rows() as u32).unwrap().is_zero()
}

fn assert_witness_round_trips(report: &Value) {
    let input = matrix_from_json(&report["inputs"]["matrix"]);
    let first = matrix_from_json(&report["result"]["first"]);
    let second = matrix_from_json(&report["result"]["second"]);
    assert_eq!(first.add(&second).unwrap(), input);
    assert!(is_nilpotent_by_powers(&first) && is_nilpotent_by_powers(&second));
}

#[test]
fn decompose_swap_matrix() {
    let (code, r) = run_json(&["decompose", "--in", &data("swap2.mat")]);
    assert_eq!(code, 0);
    assert_eq!(
        r["result"]["first"]["rows"],
        serde_json::json!([["0", "0"], ["1", "0"]])
    );
    assert_eq!(
        r["result"]["second"]["rows"],
        serde_json::json!([["0", "1"], ["0", "0"]])
    );
    assert_eq!(r["verification"]["sum_equals_input"], true);
    assert_witness_round_trips(&r);
}

#[test]
fn decompose_round_trips_over_gf3() {
    let (code, r) = run_json(&["decompose", "--in", &data("gf3_trace_zero.mat")]);
    assert_eq!(code, 0);
    assert_witness_round_trips(&r);
    let p = matrix_from_json(&r["result"]["conjugator"]);
    let b = matrix_from_json(&r["result"]["zero_diagonal"]);
    let a = matrix_from_json(&r["inputs"]["matrix"]);
    assert_eq!(p.inverse().unwrap().mul(&a).unwrap().mul(&p).unwrap(), b);
}

#[test]
fn single_row_obstruction_exits_2() {
    let (code, r) = run_json(&["decompose", "--in", &data("e11.mat"), "--single-row", "1"]);
    assert_eq!(code, 2);
    assert_eq!(r["result"]["decomposable"], false);
    assert_eq!(r["result"]["diagonal"], "1");
    let out = run(&["decompose", "--in", &data("e11.mat"), "--single-row", "2"]);
    assert_eq!(out.status.code(), Some(1), "row 2 is zero but row 1 is not");
}

#[test]
fn trace_obstruction_exits_2() {
    let (code, r) = run_json(&["decompose", "--in", &data("gf3_trace_one.mat")]);
    assert_eq!(code, 2);
    assert_eq!(r["result"]["method"], "trace");
    assert_eq!(r["result"]["trace"], "1");
}

#[test]
fn scalar_matrix_is_an_error() {
    let out = run(&["decompose", "--in", &data("identity2.mat")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scalar"));
}

#[test]
fn limit_commands() {
    let (code, r) = run_json(&[
        "limit",
        "decompose",
        "--level",
        "1",
        "--matrix",
        &data("e11.mat"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["working_level"], 2);
    for part in ["first", "second"] {
        let m = matrix_from_json(&r["result"][part]["matrix"]);
        assert!(is_nilpotent_by_powers(&m));
    }

    let (code, r) = run_json(&["limit", "decompose", "--matrix", &data("identity2.mat")]);
    assert_eq!(code, 2);
    assert_eq!(r["result"]["decomposable"], false);

    let (code, r) = run_json(&[
        "limit",
        "canon",
        "--level",
        "2",
        "--matrix",
        &data("blockdiag.mat"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["canonical"]["level"], 1);
    assert_eq!(
        r["result"]["canonical"]["matrix"]["rows"],
        serde_json::json!([["0", "1"], ["0", "0"]])
    );

    let out = run(&[
        "limit",
        "canon",
        "--level",
        "1",
        "--matrix",
        &data("blockdiag.mat"),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&[
        "--max-level",
        "1",
        "limit",
        "decompose",
        "--matrix",
        &data("e11.mat"),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let (code, r) = run_json(&[
        "limit",
        "mul",
        "--left",
        &data("blockdiag.mat"),
        "--right",
        &data("swap2.mat"),
    ]);
    assert_eq!(code, 0);
    // E12 * (E12 + E21) = E11
    assert_eq!(
        r["result"]["product"]["matrix"]["rows"],
        serde_json::json!([["1", "0"], ["0", "0"]])
    );
}

#[test]
fn default_corpus_is_consistent() {
    let (code, r) = run_json(&["corpus"]);
    assert_eq!(code, 0);
    assert_eq!(r["verification"]["all_consistent"], true);
    let rings = r["result"]["rings"].as_array().unwrap();
    assert_eq!(rings.len(), 26);
    let m2 = rings.iter().find(|x| x["ring"] == "M_2(GF(2))").unwrap();
    assert_eq!(m2["holds"], false);
    assert_eq!(m2["counterexample"], "[[1,0],[0,0]]");
}

#[test]
fn corpus_file() {
    let (code, r) = run_json(&["corpus", "--config", &data("zmod4.cfg")]);
    assert_eq!(code, 0);
    let z4 = &r["result"]["rings"][0];
    assert_eq!(z4["holds"], true);
    assert_eq!(
        z4["minimal_types"]["pairs"],
        serde_json::json!([[1, 2], [2, 1]])
    );
    assert_eq!(z4["lemma21"]["items"].as_array().unwrap().len(), 5);

    let out = run(&["corpus", "--config", &data("bad.cfg")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn quaternion_demo() {
    let (code, r) = run_json(&["quaternion-demo"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["trace"], "2i");
    assert_eq!(
        r["result"]["conjugate"]["rows"],
        serde_json::json!([["0", "j"], ["0", "0"]])
    );
    assert_eq!(r["result"]["conjugate_trace"], "0");
    let square = matrix_from_json(&r["result"]["square"]);
    assert!(square.is_zero());
}

#[test]
fn hessenberg_over_division_rings() {
    for file in ["quat3.mat", "rat3.mat", "swap2.mat"] {
        let (code, r) = run_json(&["hessenberg", "--in", &data(file)]);
        assert_eq!(code, 0, "{file}");
        let u = matrix_from_json(&r["result"]["transform"]);
        let x = matrix_from_json(&r["inputs"]["matrix"]);
        let reduced = matrix_from_json(&r["result"]["reduced"]);
        assert_eq!(
            u.mul(&x).unwrap().mul(&u.inverse().unwrap()).unwrap(),
            reduced,
            "{file}"
        );
    }
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["decompose"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
