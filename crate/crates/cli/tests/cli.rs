use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cxc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cxc")).args(args).output().expect("spawn cxc")
}

fn json(args: &[&str]) -> Value {
    let out = cxc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn conformal_dimension_of_two_loops() {
    let v = json(&["dim", "--graph", &data("two_loops.g"), "--mode", "conformal"]);
    assert!((f(&v["exponent"]) - 1.0).abs() < 1e-9);
    assert!((f(&v["skew_dimension"]) - 2.0).abs() < 1e-9);
    let v = json(&["dim", "--graph", &data("two_loops_d4.g")]);
    assert!((f(&v["exponent"]) - 0.5).abs() < 1e-9);
    assert!((f(&v["skew_dimension"]) - 1.5).abs() < 1e-9);
}

#[test]
fn hausdorff_exponent_scales_with_alpha() {
    for alpha in ["0.25", "0.5"] {
        let v = json(&["dim", "--graph", &data("two_loops.g"), "--mode", "hausdorff", "--alpha", alpha, "--tol", "1e-12"]);
        assert!((f(&v["delta_over_alpha"]) - 1.0).abs() < 1e-8, "alpha {alpha}: {v}");
    }
}

#[test]
fn radius_and_perron_modes() {
    let v = json(&["dim", "--graph", &data("two_loops.g"), "--mode", "radius", "--alpha", "0.5"]);
    assert!((f(&v["radius"]) - 0.5).abs() < 1e-9);
    let v = json(&["dim", "--graph", &data("two_vertex.g"), "--mode", "perron", "--alpha", "0.5"]);
    let w: Vec<f64> = v["vector"].as_array().unwrap().iter().map(f).collect();
    assert!(w.iter().all(|&x| x > 0.0 && x <= 1.0));
}

#[test]
fn levy_cycle_is_a_domain_error() {
    let out = cxc(&["dim", "--graph", &data("one_loop.g")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Levy cycle") && err.contains("[1]"), "{err}");

    let out = cxc(&["graph", "--graph", &data("one_loop.g")]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["levy_cycle"], serde_json::json!([1]));
    assert_eq!(v["valid"], false);
}

#[test]
fn usage_errors_exit_with_two() {
    let g = data("two_loops.g");
    for args in [
        vec!["dim", "--graph", g.as_str(), "--bogus"],
        vec!["dim", "--graph", g.as_str(), "--mode", "hausdorff"],
        vec!["pillow", "tent", "--a", "0.1"],
        vec!["pillow", "pcs", "--a", "1/8", "--format", "svg"],
        vec!["verify", "--system", "gdms"],
        vec!["frobnicate"],
    ] {
        assert_eq!(cxc(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(cxc(&["dim", "--graph", "/nonexistent/graph.g"]).status.code(), Some(1));
    assert_eq!(cxc(&["pillow", "diff", "--a", "1/4"]).status.code(), Some(1));
}

#[test]
fn every_subcommand_has_help() {
    for args in [
        vec!["--help"],
        vec!["graph", "--help"],
        vec!["dim", "--help"],
        vec!["gdms", "--help"],
        vec!["skew", "--help"],
        vec!["ifs", "kneading", "--help"],
        vec!["menger", "query", "--help"],
        vec!["pillow", "subdivide", "--help"],
        vec!["verify", "--help"],
    ] {
        let out = cxc(&args);
        assert!(out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("--"), "{args:?}");
    }
}

#[test]
fn subdivision_svg_has_one_path_per_tile() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.svg");
    let out = cxc(&["pillow", "subdivide", "--a", "1/8", "--depth", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<path").count(), 512);

    let v = json(&["pillow", "subdivide", "--a", "0", "--depth", "2"]);
    assert_eq!(v["tile_count"], 32);
    assert_eq!(v["total_area"], "1/2");
    assert_eq!(v["faces"]["front"], 16);
}

#[test]
fn postcritical_sets_are_exact() {
    let v = json(&["pillow", "pcs", "--a", "0"]);
    let pts: Vec<Vec<String>> = v["points"].as_array().unwrap().iter().map(strings).collect();
    assert_eq!(pts, [["0", "0"], ["0", "1/2"], ["1/2", "0"], ["1/2", "1/2"]]);
    let v = json(&["pillow", "pcs", "--a", "1/8"]);
    assert_eq!(v["count"], 6);
    assert!(v["points"].as_array().unwrap().contains(&serde_json::json!(["7/16", "1/2"])));
}

#[test]
fn curve_pullback_and_expansion() {
    let v = json(&["pillow", "obstruct", "--a", "1/64"]);
    let heights: Vec<&str> = v["preimages"].as_array().unwrap().iter().map(|p| p["height"].as_str().unwrap()).collect();
    assert_eq!(heights, ["1/8", "3/8"]);
    assert_eq!(v["thurston"]["matrix"], serde_json::json!([["1"]]));
    assert!((f(&v["thurston"]["radius"]) - 1.0).abs() < 1e-12);

    let v = json(&["pillow", "diff", "--a", "1/16"]);
    let expected = [[1.0, 2.0], [0.5, 2.0], [0.5, 1.0]];
    for (t, want) in v["t_matrices"].as_array().unwrap().iter().zip(expected) {
        let sv: Vec<f64> = t["singular_values"].as_array().unwrap().iter().map(f).collect();
        assert!((sv[0] - want[0]).abs() < 1e-12 && (sv[1] - want[1]).abs() < 1e-12, "{sv:?}");
    }
    assert_eq!(f(&v["min_sv"]), 1.0);
    assert!(f(&v["second_iterate_bound"]) >= 2.0);
    assert_eq!(v["q_disjointness"], true);

    let v = json(&["pillow", "skeleton", "--a", "1/8"]);
    assert_eq!(v["forward_invariant"], true);
}

#[test]
fn kneading_sequences_match() {
    let v = json(&["ifs", "kneading", "--lambda", "0.5", "--length", "16", "--c", "-2"]);
    assert_eq!(v["sequence"], "1000000000000000");
    assert_eq!(v["reference"]["equal"], true);
    let v = json(&["ifs", "reference", "--angle", "1/2", "--length", "4"]);
    assert_eq!(v["sequence"].as_str().unwrap().len(), 4);
}

#[test]
fn ifs_points_raster() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.pgm");
    let out = cxc(&["ifs", "points", "--lambda", "0.3,0.6", "--depth", "10", "--size", "64", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P5\n64 64\n255\n"));
    assert_eq!(bytes.len(), 13 + 64 * 64);
    assert!(bytes[13..].contains(&0));
}

#[test]
fn menger_checks() {
    let v = json(&["menger", "check", "--samples", "10000", "--depth", "5"]);
    assert_eq!(v["membership"]["disagree"], 0);
    assert!(v["membership"]["agree"].as_u64().unwrap() > 9000);
    assert_eq!(v["homothety"]["pairs"], 10000);
    assert!(f(&v["homothety"]["max_abs_error"]) <= 1e-12);
    let v = json(&["menger", "check", "--factors", "3,9,3", "--samples", "2000"]);
    assert!(f(&v["homothety"]["max_abs_error"]) <= 1e-12);

    assert_eq!(json(&["menger", "query", "--point", "0,0,0"])["membership"], "in");
    let v = json(&["menger", "query", "--point", "1/2,1/2,0"]);
    assert_eq!((v["membership"].as_str(), v["level"].as_u64()), (Some("out"), Some(0)));
}

#[test]
fn verifier_on_the_interval_system() {
    let v = json(&["verify", "--system", "gdms", "--graph", &data("two_loops.g"), "--depth", "8"]);
    for (n, m) in v["mesh"].as_array().unwrap().iter().enumerate() {
        assert_eq!(f(m), 4f64.powi(-(n as i32)));
    }
    assert_eq!(v["degree"]["max_degree"], 1);
    assert!((f(&v["distortion"]["roundness"]["max_out"]) - 1.0).abs() < 1e-9);

    let v = json(&["verify", "--system", "half", "--depth", "10"]);
    let eps = f(&v["visual_metric"]["epsilon"]);
    assert!((0.6..=0.8).contains(&eps), "{eps}");
    assert!(f(&v["visual_metric"]["spread"]) <= 8.0);
}

#[test]
fn box_dimensions_of_the_cantor_set() {
    let v = json(&["gdms", "--graph", &data("two_loops.g"), "--alpha", "0.5", "--depth", "10"]);
    assert!((f(&v["box_dimension"]["plain"]) - 0.5).abs() < 0.05);
    assert!((f(&v["box_dimension"]["snowflaked"]) - 1.0).abs() < 0.1);
    let v = json(&["skew", "--graph", &data("two_loops.g"), "--depth", "10"]);
    assert!((f(&v["dimension"]) - 2.0).abs() < 1e-9);
}

#[test]
fn seeded_outputs_are_byte_identical() {
    let g = data("two_vertex.g");
    let runs = [
        vec!["skew", "--graph", g.as_str(), "--format", "csv", "--steps", "200", "--seed", "9"],
        vec!["verify", "--system", "half", "--format", "csv", "--seed", "9"],
        vec!["verify", "--system", "gdms", "--graph", g.as_str(), "--seed", "9"],
        vec!["gdms", "--graph", g.as_str(), "--depth", "6", "--snowflake-pairs", "200", "--seed", "9"],
        vec!["menger", "check", "--samples", "500", "--seed", "9"],
    ];
    for args in &runs {
        let (a, b) = (cxc(args), cxc(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let mut other = runs[0].clone();
    *other.last_mut().unwrap() = "10";
    assert_ne!(cxc(&runs[0]).stdout, cxc(&other).stdout);
}

#[test]
fn interval_diagram_and_cylinder_csv() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("c.svg");
    assert!(cxc(&["gdms", "--graph", &data("two_loops.g"), "--depth", "4", "--out", svg.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_to_string(&svg).unwrap().matches("<rect").count(), 1 + 2 + 4 + 8 + 16);

    let out = cxc(&["gdms", "--graph", &data("two_loops.g"), "--depth", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "word,left,right,length");
    assert_eq!(lines.len(), 1 + 8);
    for line in &lines[1..] {
        let len: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((len - 4f64.powi(-3)).abs() < 1e-15);
    }
}
