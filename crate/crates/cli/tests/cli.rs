use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tropvertex::affine::examples::{quintic_height, quintic_simplex, quintic_triangulation};
use tropvertex::scattering::{parse_diagram, write_diagram};
use tropvertex::tropical::parse_curve;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropvertex"))
        .args(args)
        .env_remove("TROPVERTEX_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn scatter_ell1_adds_one_ray() {
    let ell1 = fixture("ell1.diagram");
    let out = stdout(&["scatter", "--order", "6", path(&ell1)]);
    let added: Vec<&str> = out.lines().filter(|l| l.starts_with("added ray")).collect();
    assert_eq!(added, vec!["added ray dir [1,1], f = 1 + t^2*x^-1*y^-1"]);
    // below t^2 nothing can be produced
    let low = stdout(&["scatter", "--order", "1", path(&ell1)]);
    assert!(!low.contains("added"));
    assert_eq!(low.lines().filter(|l| l.starts_with("line")).count(), 2);
}

#[test]
fn scatter_ell3_has_cubed_ray() {
    let out = stdout(&["scatter", "--order", "8", path(&fixture("ell3.diagram"))]);
    assert!(
        out.lines()
            .any(|l| l == "added ray dir [3,1], f = 1 + 3*t^4*x^-3*y^-1 + 3*t^8*x^-6*y^-2"),
        "{out}"
    );
}

#[test]
fn scatter_json_is_canonical_and_deterministic() {
    let ell2 = fixture("ell2.diagram");
    let a = stdout(&[
        "--format",
        "json-like",
        "scatter",
        "--order",
        "7",
        path(&ell2),
    ]);
    let b = stdout(&["--format", "json", "scatter", "--order", "7", path(&ell2)]);
    assert_eq!(a, b);
    assert_eq!(write_diagram(&parse_diagram(&a, None).unwrap()), a);
    let svg = stdout(&[
        "--format",
        "svg",
        "scatter",
        "--order",
        "4",
        "--svg-terms",
        "2",
        path(&ell2),
    ]);
    assert!(svg.starts_with("<svg") && svg.contains("crimson"));
    let verbose = run(&["--verbose", "scatter", "--order", "5", path(&ell2)]);
    assert!(String::from_utf8_lossy(&verbose.stderr).contains("loop product residual: x: 0, y: 0"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.diagram");
    std::fs::write(&bad, "{\n  \"order\": 3,\n  \"walls\": [ {\"kind\": \"line\", \"dir\": [1, 0], \"f\": \"1 + t*x^\"} ]\n}\n").unwrap();
    let out = run(&["scatter", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(
        code(&["scatter", path(&dir.path().join("missing.diagram"))]),
        5
    );
    assert_eq!(
        code(&["scatter", "--order", "0", path(&fixture("ell1.diagram"))]),
        2
    );
    assert_eq!(
        code(&["gw", "--ells", "1,1", "--out", "1,0", "--order", "4"]),
        4
    );
    assert_eq!(code(&["tropcurve", "min(0, X"]), 2);
    assert_eq!(
        code(&[
            "monodromy",
            path(&fixture("quartic.complex")),
            "--loop",
            "v0,c0,v0"
        ]),
        6
    );
    assert_eq!(code(&["--format", "svg", "gw", "--ells", "1,1"]), 4);
    let no_phi = dir.path().join("nophi.complex");
    std::fs::write(
        &no_phi,
        r#"{"kind": "polytope-boundary", "dim": 2, "vertices": [[-1,-1],[2,-1],[-1,2]]}"#,
    )
    .unwrap();
    assert_eq!(code(&["legendre", path(&no_phi)]), 6);
}

#[test]
fn gw_tables() {
    let out = stdout(&["gw", "--ells", "1,1", "--order", "12"]);
    let rows: Vec<Vec<String>> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    for (i, r) in rows.iter().enumerate() {
        let d = i as i64 + 1;
        let n = if d == 1 {
            "1".to_string()
        } else {
            format!("{}1/{}", if d % 2 == 0 { "-" } else { "" }, d * d)
        };
        assert_eq!(r[0], (2 * d).to_string());
        assert_eq!(r[1], d.to_string());
        assert_eq!(r[3], n);
    }
    let out = stdout(&["gw", "--ells", "2,2", "--order", "4"]);
    assert!(out.lines().any(|l| l == "2\t1\t4\t4"), "{out}");
    let out = stdout(&["--format", "json", "gw", "--ells", "3,3", "--order", "6"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let logs: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["log_coeff"].as_str().unwrap())
        .collect();
    assert_eq!(logs, vec!["9", "63/2", "165"]);
}

#[test]
fn legendre_twice_is_identity() {
    let p2 = fixture("batyrev-p2.complex");
    let original = std::fs::read_to_string(&p2).unwrap();
    assert_eq!(stdout(&["legendre", "--times", "2", path(&p2)]), original);
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.complex");
    std::fs::write(&once, stdout(&["legendre", path(&p2)])).unwrap();
    assert_eq!(stdout(&["legendre", path(&once)]), original);
}

#[test]
fn monodromy_of_quartic_edge_loop() {
    let quartic = fixture("quartic.complex");
    let out = stdout(&[
        "--format",
        "json",
        "monodromy",
        path(&quartic),
        "--loop",
        "v0, c2, v1, c3, v0",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["monodromy"]["rank_t_minus_i"], 1);
    assert_eq!(v["monodromy"]["divisors"], serde_json::json!([4]));
    assert_eq!(v["monodromy"]["unipotent_k"], 4);
    let gamma = stdout(&["monodromy", path(&quartic), "--gamma"]);
    assert!(gamma.starts_with("6 loops"));
}

#[test]
fn monodromy_triples_on_the_quintic() {
    let dir = tempfile::tempdir().unwrap();
    let simplex = quintic_simplex();
    let cells = quintic_triangulation();
    let mut points: Vec<Vec<i64>> = cells.iter().flatten().cloned().collect();
    points.sort();
    points.dedup();
    let heights: Vec<Vec<i64>> = points
        .iter()
        .map(|p| {
            let mut row = p.clone();
            row.push(quintic_height(p));
            row
        })
        .collect();
    let doc = serde_json::json!({
        "kind": "polytope-boundary",
        "dim": 4,
        "vertices": simplex.vertices(),
        "cells": cells,
        "phi": { "heights": heights },
    });
    let file = dir.path().join("quintic.complex");
    std::fs::write(&file, doc.to_string()).unwrap();
    let gamma = stdout(&["--format", "json", "monodromy", path(&file), "--gamma"]);
    let v: serde_json::Value = serde_json::from_str(&gamma).unwrap();
    let loops = v["loops"].as_array().unwrap();
    // pick a triangle and an edge face from the loop list
    let faces: Vec<Vec<String>> = loops
        .iter()
        .map(|l| {
            let f = l["face"].as_str().unwrap();
            f.trim_matches(|c| c == '{' || c == '}')
                .split(',')
                .map(String::from)
                .collect()
        })
        .collect();
    let triangle = faces.iter().find(|f| f.len() == 3).unwrap().join(",");
    let out = stdout(&["monodromy", path(&file), "--triple", &triangle]);
    assert!(
        out.contains("type: Planar, dual type: Edge") && out.ends_with("PASS\n"),
        "{out}"
    );
    // a dual Legendre pass over the same file succeeds too
    assert!(stdout(&["legendre", path(&file)]).starts_with("{\n  \"kind\": \"tropical-manifold\""));
}

#[test]
fn tropcurve_documents() {
    let doc = stdout(&["--format", "json", "tropcurve", "min(0, X, Y)"]);
    let c = parse_curve(&doc).unwrap();
    assert_eq!(c.vertices.len(), 1);
    assert_eq!(c.unbounded().len(), 3);
    assert!(c.check_balanced().unwrap().is_empty());
    let text = stdout(&["tropcurve", "min(0, X, Y, X + Y - 1)"]);
    assert!(
        text.contains("segment 0 -> 1, direction [1, -1], weight 1"),
        "{text}"
    );
    assert!(stdout(&["--format", "svg", "tropcurve", "min(0, 2*X, Y)"]).contains("<text"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_tropvertex"))
        .args([
            "--format",
            "json",
            "--output",
            "curves/line.json",
            "tropcurve",
            "min(0, X, Y)",
        ])
        .env("TROPVERTEX_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(dir.path().join("curves/line.json")).unwrap();
    assert_eq!(
        written,
        stdout(&["--format", "json", "tropcurve", "min(0, X, Y)"])
    );
}

#[test]
fn consistency_runs_are_reproducible() {
    let a = stdout(&["consistency", "--count", "8", "--order", "4", "--seed", "7"]);
    assert!(a.ends_with("8 of 8 consistent (seed 7, order 4)\n"), "{a}");
    assert_eq!(
        a,
        stdout(&["consistency", "--count", "8", "--order", "4", "--seed", "7"])
    );
}
