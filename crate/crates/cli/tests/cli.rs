use std::path::PathBuf;
use std::process::Command;

use eigenmatrix::samples;
use eigenmatrix::verify::{same_span, seeded_corpus};
use eigenmatrix::{GqMatrix, GqVector};
use eigenmatrix_cli::bench::BenchReport;
use eigenmatrix_cli::io::{matrix_json, parse_matrix_json, spectrum_json};
use eigenmatrix_cli::{run_args, Outcome};
use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn write(&self, name: &str, text: &str) -> String {
        let path: PathBuf = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    }

    fn matrix(&self, name: &str, m: &GqMatrix) -> String {
        self.write(name, &serde_json::to_string(&matrix_json(m)).unwrap())
    }
}

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("eigenmatrix").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn vectors(v: &Value) -> Vec<GqVector> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| {
            GqVector::column(
                row.as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_str().unwrap().parse().unwrap())
                    .collect(),
            )
        })
        .collect()
}

#[test]
fn charpoly_prints_polynomial_and_roots() {
    let ws = Workspace::new();
    let m = ws.write("m.json", r#"{"rows":2,"cols":2,"entries":[["3","1"],["2","4"]]}"#);
    let out = run(&["charpoly", &m]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "l^2 - 7*l + 10\nroots: {2:1, 5:1}");
    let v = json(&run(&["charpoly", &m, "--json"]));
    assert_eq!(v["polynomial"], "l^2 - 7*l + 10");
    assert_eq!(v["roots"]["eigenvalues"][1]["value"], "5");
    let v = json(&run(&["charpoly", &m, "--json", "--no-roots"]));
    assert!(v["roots"].is_null());
}

#[test]
fn check_reports_witness_for_defective_matrix() {
    let ws = Workspace::new();
    let m = ws.matrix("m.json", &samples::defective_3x3());
    let v = json(&run(&["check", &m, "--json"]));
    assert_eq!(v["verdict"], "not diagonalizable");
    let witness = parse_matrix_json(&v["witness"].to_string()).unwrap();
    assert_eq!(witness, GqMatrix::from_ints(&[[-3, -3, 0], [3, 3, 0], [0, 0, 0]]));
    let v = json(&run(&["check", &ws.matrix("e.json", &samples::distinct_3x3()), "--json"]));
    assert_eq!(v["diagonalizable"], true);
    assert!(v["witness"].is_null());
}

#[test]
fn targeted_eigenvector_with_supplied_spectrum() {
    let ws = Workspace::new();
    let m = ws.matrix("h.json", &samples::mixed_4x4());
    let s = ws.write(
        "s.json",
        r#"{"eigenvalues":[{"value":"0","multiplicity":1},{"value":"1","multiplicity":2},{"value":"2","multiplicity":1}]}"#,
    );
    let out = run(&["eigenvectors", &m, "--spectrum", &s, "--target", "0", "--json"]);
    assert_eq!(json(&out), serde_json::json!([["1", "1", "1", "2"]]));
}

#[test]
fn every_method_gives_the_same_span() {
    let ws = Workspace::new();
    for sample in samples::all().into_iter().filter(|s| s.matrix.rows() == 3) {
        let m = ws.matrix("m.json", &sample.matrix);
        let s = ws.write("s.json", &spectrum_json(&sample.spectrum).to_string());
        for (l, _) in sample.spectrum.pairs() {
            let t = l.to_string();
            let get = |method: &str| {
                let out = run(&["eigenvectors", &m, "--spectrum", &s, "--target", &t, "--method", method, "--json"]);
                (out.code == 0).then(|| vectors(&json(&out)))
            };
            let oracle = get("oracle").unwrap();
            for method in ["kappa", "intersect"] {
                let ours = get(method).unwrap_or_else(|| panic!("{} {method} {t}", sample.name));
                assert!(same_span(&ours, &oracle, 3).unwrap(), "{} {method} {t}", sample.name);
            }
            if oracle.len() == 1 {
                let cross = get("cross").unwrap();
                assert!(same_span(&cross, &oracle, 3).unwrap(), "{} cross {t}", sample.name);
            }
        }
    }
}

#[test]
fn left_vectors_satisfy_the_row_equation() {
    let ws = Workspace::new();
    let a = samples::distinct_3x3();
    let m = ws.matrix("m.json", &a);
    for cmd in [vec!["left", m.as_str(), "--json"], vec!["eigenvectors", m.as_str(), "--left", "--json"]] {
        let v = json(&run(&cmd));
        for space in v.as_array().unwrap() {
            let l: eigenmatrix::GaussianRational = space["eigenvalue"].as_str().unwrap().parse().unwrap();
            for w in vectors(&space["vectors"]) {
                let w = w.transposed();
                let image = eigenmatrix::matrix::mat_vec_mul(&a, &w, None).unwrap();
                assert_eq!(image, w.scale(&l));
            }
        }
    }
}

#[test]
fn exit_codes() {
    let ws = Workspace::new();
    let bad = ws.write("bad.json", r#"{"rows":2,"cols":2,"entries":[["3","1"],["2","4x"]]}"#);
    let out = run(&["charpoly", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("row 1, col 1"), "{}", out.stderr);
    assert_eq!(run(&["charpoly", "/nonexistent/m.json"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);

    let fib = ws.write("fib.json", r#"{"rows":2,"cols":2,"entries":[["1","1"],["1","0"]]}"#);
    let out = run(&["eigenvectors", &fib]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("--spectrum"));
    assert_eq!(run(&["charpoly", &fib, "--no-roots"]).code, 0);

    let d = ws.matrix("d.json", &samples::defective_3x3());
    let out = run(&["diagonalize", &d]);
    assert_eq!(out.code, 4);
    assert!(out.stderr.contains("jordan"));
    assert_eq!(run(&["jordan", &d]).code, 0);

    let a = ws.matrix("a.json", &samples::distinct_2x2());
    let wrong = ws.write("s.json", r#"{"eigenvalues":[{"value":"1","multiplicity":1},{"value":"6","multiplicity":1}]}"#);
    assert_eq!(run(&["eigenvectors", &a, "--spectrum", &wrong]).code, 5);
    assert_eq!(run(&["eigenvectors", &a, "--target", "3"]).code, 5);
}

#[test]
fn emitted_matrices_round_trip() {
    let ws = Workspace::new();
    let f = ws.matrix("f.json", &samples::fractional_3x3());
    let v = json(&run(&["diagonalize", &f, "--json"]));
    let p = parse_matrix_json(&v["p"].to_string()).unwrap();
    let d = parse_matrix_json(&v["d"].to_string()).unwrap();
    let p_inv = parse_matrix_json(&v["p_inv"].to_string()).unwrap();
    assert_eq!(p.mul(&d).unwrap().mul(&p_inv).unwrap(), samples::fractional_3x3());
    assert_eq!(v["eigenvalues"], serde_json::json!(["1", "2", "2"]));

    let k = ws.matrix("k.json", &samples::complex_5x5());
    let v = json(&run(&["power", &k, "--n", "3", "--json"]));
    let cube = parse_matrix_json(&v["matrix"].to_string()).unwrap();
    assert_eq!(cube, samples::complex_5x5().pow(3).unwrap());

    let v = json(&run(&["jordan", &ws.matrix("t.json", &samples::two_block_5x5()), "--json"]));
    let sizes: Vec<u64> = v["blocks"].as_array().unwrap().iter().map(|b| b["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![3, 2]);
}

#[test]
fn ode_renders_realified_rotation() {
    let ws = Workspace::new();
    let r = ws.write("r.json", r#"{"rows":2,"cols":2,"entries":[["0","-1"],["1","0"]]}"#);
    let out = run(&["ode", &r]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("X(t) = c1*exp(0t)*("));
    assert!(out.stdout.contains("sin(1t)"));
    let v = json(&run(&["ode", &r, "--json", "--no-realify"]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert!(v["terms"][0]["trig"].is_null());
}

fn bench_keys_present(v: &Value) {
    for key in ["input", "kappa", "oracle", "spans_agree"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["source", "dim", "spectrum"] {
        assert!(v["input"].get(key).is_some(), "missing input.{key}");
    }
    for method in ["kappa", "oracle"] {
        for key in ["scalar_mults", "scalar_adds", "scalar_divs", "wall_time_ns", "per_eigenvalue"] {
            assert!(v[method].get(key).is_some(), "missing {method}.{key}");
        }
    }
}

#[test]
fn bench_is_deterministic_on_files_and_seeds() {
    let ws = Workspace::new();
    for (i, e) in seeded_corpus(11, 12).unwrap().iter().enumerate() {
        let m = ws.matrix(&format!("m{i}.json"), &e.matrix);
        let s = ws.write(&format!("s{i}.json"), &spectrum_json(e.spectrum()).to_string());
        let first = json(&run(&["bench", &m, "--spectrum", &s, "--json"]));
        bench_keys_present(&first);
        let a: BenchReport = serde_json::from_value(first).unwrap();
        let b: BenchReport = serde_json::from_str(&run(&["bench", &m, "--spectrum", &s, "--json"]).stdout).unwrap();
        assert_eq!(a.kappa.without_timing(), b.kappa.without_timing());
        assert_eq!(a.oracle.without_timing(), b.oracle.without_timing());
        assert!(a.spans_agree);
    }
    let a = json(&run(&["bench", "--seed", "3", "--dim", "5", "--json"]));
    let b = json(&run(&["bench", "--seed", "3", "--dim", "5", "--json"]));
    assert_eq!(a["input"], b["input"]);
    assert_eq!(a["kappa"]["scalar_mults"], b["kappa"]["scalar_mults"]);
    assert_eq!(a["input"]["dim"], 5);
}

#[test]
fn binary_sets_exit_status() {
    let ws = Workspace::new();
    let d = ws.matrix("d.json", &samples::defective_3x3());
    let bin = env!("CARGO_BIN_EXE_eigenmatrix");
    let status = Command::new(bin).args(["diagonalize", &d]).output().unwrap();
    assert_eq!(status.status.code(), Some(4));
    let ok = Command::new(bin).args(["check", &d]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with("not diagonalizable"));
}
