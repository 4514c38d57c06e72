use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_turan-workbench"));
    cmd.args(args);
    match cache {
        Some(p) => cmd.env("TURAN_WORKBENCH_CACHE", p),
        None => cmd.env_remove("TURAN_WORKBENCH_CACHE"),
    };
    cmd.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const OCTAHEDRON: &str = r#"{"parts":[2,2,2],"edges":[[0,2],[0,3],[0,4],[0,5],[1,2],[1,3],[1,4],[1,5],[2,4],[2,5],[3,4],[3,5]]}"#;
const HEXAGON: &str = r#"{"parts":[3,3],"edges":[[0,3],[0,4],[1,4],[1,5],[2,3],[2,5]]}"#;

#[test]
fn turan_formula() {
    let o = run(&["formulas", "turan", "--r", "3", "--k", "5"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "8");
    let o = run(&["formulas", "g", "--n", "3", "--r", "2", "--k", "3", "--t", "2", "--z", "6"], None);
    assert_eq!(stdout(&o).trim(), "24");
}

#[test]
fn check_free_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let oct = dir.path().join("oct.json");
    std::fs::write(&oct, OCTAHEDRON).unwrap();
    let oct = oct.to_str().unwrap();

    let o = run(&["check-free", "--pattern", "kqt", "--q", "3", "--t", "2", "--json", oct], None);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["detection"]["outcome"]["found"]["classes"].as_array().unwrap().len(), 3);

    assert_eq!(
        code(&run(&["check-free", "--pattern", "kqt", "--q", "4", "--t", "1", oct], None)),
        0
    );
    assert_eq!(
        code(&run(
            &["check-free", "--pattern", "kqt", "--q", "3", "--t", "2", "--budget", "1", oct],
            None
        )),
        2
    );
    assert_eq!(code(&run(&["check-free", "--pattern", "star", "--t", "5", oct], None)), 0);
    assert_eq!(code(&run(&["check-free", "--pattern", "biclique", "--t", "2", oct], None)), 1);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(code(&run(&["no-such-command"], None)), 3);
    assert_eq!(code(&run(&["formulas", "turan", "--r", "3"], None)), 3);
    assert_eq!(code(&run(&["formulas", "turan", "--r", "4", "--k", "3"], None)), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"parts":[2,2],"edges":[[0,1]]}"#).unwrap();
    let o = run(&["check-free", "--pattern", "star", "--t", "1", bad.to_str().unwrap()], None);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("part 0"));
    assert_eq!(code(&run(&["--help"], None)), 0);
}

#[test]
fn construction_artifacts_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let class1 = dir.path().join("b.json");
    std::fs::write(&class1, HEXAGON).unwrap();
    let mut hashes = Vec::new();
    for name in ["a.json", "b2.json"] {
        let out = dir.path().join(name);
        let o = run(
            &[
                "construct",
                "basic",
                "--n",
                "3",
                "--r",
                "2",
                "--k",
                "3",
                "--t",
                "2",
                "--class1",
                class1.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
            ],
            None,
        );
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        // t_2(3)·9 + 6 + 0.
        assert_eq!(stdout(&o).trim(), "basic construction: 24 edges");
        let manifest: Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(format!("{name}.manifest.json"))).unwrap()).unwrap();
        assert_eq!(manifest["parameters"]["n"], 3);
        assert_eq!(manifest["input_hashes"].as_object().unwrap().len(), 1);
        hashes.push(manifest["output_hashes"].as_object().unwrap().values().next().unwrap().clone());
        let o = run(
            &["check-free", "--pattern", "kqt", "--q", "3", "--t", "2", out.to_str().unwrap()],
            None,
        );
        assert_eq!(code(&o), 0);
    }
    assert_eq!(hashes[0], hashes[1]);
}

#[test]
fn improved_construction_default_class1() {
    let o = run(
        &["construct", "improved", "--n", "32", "--r", "3", "--k", "5", "--t", "2", "--json"],
        None,
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["edges"], v["expected_edges"]);
    // Too small for the moved sets.
    assert_eq!(
        code(&run(
            &["construct", "improved", "--n", "8", "--r", "3", "--k", "5", "--t", "2"],
            None
        )),
        3
    );
}

#[test]
fn zarankiewicz_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let o = run(&["zar", "exact", "--sizes", "5,5", "--t", "2"], Some(&cache));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "z_2(5,5) = 12");
    let lines = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(lines.lines().count(), 1);

    // A torn line is skipped with a warning and the cached value still served.
    std::fs::write(&cache, format!("{lines}{{\"type\":\"zar\"")).unwrap();
    let o = run(&["zar", "exact", "--sizes", "5,5", "--t", "2", "--json"], Some(&cache));
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipping cache line"));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 12);

    let o = run(&["zar", "exact", "--sizes", "6,6", "--t", "2", "--budget", "5"], None);
    assert_eq!(code(&o), 2);
    let o = run(&["zar", "lower", "--n", "7", "--t", "2"], None);
    assert_eq!(stdout(&o).trim(), "z_2(7,7) >= 21");
}

#[test]
fn gaps_and_extremal_numbers() {
    let o = run(&["gaps", "--t", "2", "--max", "4"], None);
    assert_eq!(code(&o), 0);
    let o = run(&["zar", "gaps", "--t", "3", "--max", "3", "--json"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows_hold"], true);

    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let args = ["ex", "solve", "--sizes", "2,2,2", "--pattern", "kqt", "--q", "3", "--t", "1"];
    let o = run(&args, Some(&cache));
    assert_eq!(stdout(&o).trim(), "ex([2, 2, 2]; K_3(1)) = 8");
    assert!(std::fs::read_to_string(&cache).unwrap().contains("\"type\":\"ex\""));
    assert_eq!(stdout(&run(&args, Some(&cache))), stdout(&o));

    let o = run(&["ex", "identity", "--n", "1", "--k", "5", "--r", "3"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("search 8"));
    let o = run(&["ex", "compare", "--n", "2", "--r", "2", "--k", "3", "--t", "2", "--json"], None);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equality_asserted"], false);
}

#[test]
fn analysis_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let o = run(
        &[
            "construct",
            "basic",
            "--n",
            "7",
            "--r",
            "2",
            "--k",
            "3",
            "--t",
            "2",
            "--out",
            g.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    let g = g.to_str().unwrap();

    let o = run(&["analyze", "closest-template", g, "--r", "2", "--json"], None);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["exhaustive"].as_bool().unwrap());

    let o = run(&["analyze", "classify", g, "--r", "2", "--json"], None);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["audit"].is_array());

    let labels = dir.path().join("labels.json");
    let l: Vec<usize> = (0..21).map(|v| usize::from((7..14).contains(&v))).collect();
    std::fs::write(&labels, serde_json::to_string(&l).unwrap()).unwrap();
    let o = run(&["analyze", "core", g, "--r", "2", "--classes", labels.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    let o = run(&["analyze", "structure", g, "--r", "2", "--z", "0,1"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("|Z| = 2"));
    assert_eq!(code(&run(&["analyze", "structure", g, "--r", "2", "--z", "99"], None)), 3);
    assert_eq!(
        code(&run(
            &["analyze", "core", g, "--r", "2", "--gamma", "1/2", "--epsilon", "1/4"],
            None
        )),
        3
    );
}
