use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_traits::Zero;
use orthocentric::scalar::parse_rational;
use orthocentric::Rational;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orthocentric"))
}

fn scene(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/scenes")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).expect("output is JSON")
}

fn q(v: &Value) -> Rational {
    parse_rational(v.as_str().expect("rational string")).unwrap()
}

fn write_scene(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn worked_scene_passes_with_r_sq_three() {
    let out = run(&["analyze", scene("worked-3d.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out.stdout);
    assert_eq!(doc["objects"]["r_sq"], "3");
    assert_eq!(doc["objects"]["orthocenter"], serde_json::json!(["0", "0", "-2"]));
    assert_eq!(doc["summary"]["fail"], 0);
    assert_eq!(doc["summary"]["all_pass"], true);
    for c in doc["clauses"].as_array().unwrap() {
        assert!(
            ["pass", "not_applicable"].contains(&c["verdict"].as_str().unwrap()),
            "{c}"
        );
        assert!(c["reason"].is_string());
    }
}

#[test]
fn reports_are_byte_identical_across_runs_and_modes() {
    let path = scene("worked-3d.json");
    let a = run(&["analyze", path.to_str().unwrap()]);
    let b = run(&["analyze", "--sequential", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_keys_are_emitted_in_sorted_order() {
    let out = run(&["analyze", scene("taxicab.json").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<usize> = [
        "\n  \"clauses\"",
        "\n  \"instance\"",
        "\n  \"objects\"",
        "\n  \"summary\"",
        "\n  \"warnings\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(top.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn collinear_scene_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scene(
        dir.path(),
        "flat.json",
        r#"{"dimension": 2, "points": {"A": ["0","0"], "B": ["1","1"], "C": ["2","2"]}, "triangle": ["A","B","C"]}"#,
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let stderr = String::from_utf8(out.stderr).unwrap();
    let doc: Value = serde_json::from_str(&stderr[stderr.find('{').unwrap()..]).unwrap();
    assert_eq!(doc["error"]["kind"], "geometry");
}

#[test]
fn off_locus_point_reports_its_distances() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scene(
        dir.path(),
        "off.json",
        r#"{"dimension": 2, "points": {"A": ["0","0"], "B": ["4","0"], "C": ["0","3"]},
            "triangle": ["A","B","C"], "p": {"coords": ["1","2"]}}"#,
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    let doc: Value = serde_json::from_str(&stderr[stderr.find('{').unwrap()..]).unwrap();
    assert_eq!(doc["error"]["distances_sq"], serde_json::json!(["5", "13", "2"]));
}

#[test]
fn syntax_errors_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scene(dir.path(), "bad.json", "{\n  \"dimension\": 2,\n  nope\n}\n");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    let doc: Value = serde_json::from_str(&stderr[stderr.find('{').unwrap()..]).unwrap();
    assert_eq!(doc["error"]["kind"], "syntax");
    assert_eq!(doc["error"]["line"], 3);
}

#[test]
fn taxicab_scene_passes_with_a_non_uniqueness_warning() {
    let out = run(&["analyze", scene("taxicab.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out.stdout);
    let warnings = doc["warnings"].as_array().unwrap();
    assert!(warnings
        .iter()
        .any(|w| w.as_str().unwrap().contains("not strictly convex")));
    assert_eq!(doc["objects"]["orthocenter"], serde_json::json!(["0", "3"]));
    assert_eq!(doc["instance"]["effective"]["norm"], "p:1");
}

#[test]
fn norm_flag_overrides_the_scene() {
    let out = run(&[
        "analyze",
        "--norm",
        "p:3",
        scene("right-triangle.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out.stdout);
    assert!(doc["solver"].is_object());
    assert!(doc["minkowski"]["residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn float_backend_agrees_on_the_worked_scene() {
    let out = run(&[
        "analyze",
        "--backend",
        "float",
        scene("worked-3d.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out.stdout);
    let r_sq = doc["objects"]["r_sq"].as_f64().unwrap();
    assert!((r_sq - 3.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        run(&["analyze", "--backend", "quantum", "x.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--tol", "-1", "x.json"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent/scene.json"]).status.code(), Some(2));
    assert_eq!(
        run(&["generate", "-n", "1", "--out", "/tmp/unused"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["generate"]).status.code(), Some(2));
}

fn generate(dir: &Path, seed: &str, n: &str, count: &str) -> Output {
    run(&[
        "generate",
        "--seed",
        seed,
        "-n",
        n,
        "--count",
        count,
        "--out",
        dir.to_str().unwrap(),
    ])
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

#[test]
fn generate_is_reproducible_and_analyzable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(generate(a.path(), "42", "4", "10").status.code(), Some(0));
    assert_eq!(generate(b.path(), "42", "4", "10").status.code(), Some(0));
    let fa = read_dir_sorted(a.path());
    assert_eq!(fa.len(), 10);
    assert_eq!(fa, read_dir_sorted(b.path()));

    let reports = tempfile::tempdir().unwrap();
    let out = run(&[
        "analyze",
        a.path().to_str().unwrap(),
        "--out",
        reports.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out.stdout);
    assert_eq!(doc["summary"]["scenes"], 10);
    assert_eq!(doc["summary"]["pass"], 10);
    let written = read_dir_sorted(reports.path());
    assert_eq!(written.len(), 10);
    assert!(written.iter().all(|(n, _)| n.ends_with(".report.json")));
}

#[test]
fn generate_with_unit_bound_stays_in_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "generate",
        "-n",
        "3",
        "--count",
        "5",
        "--bound",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for (_, bytes) in read_dir_sorted(dir.path()) {
        let doc = json(&bytes);
        for coords in doc["points"].as_object().unwrap().values() {
            for c in coords.as_array().unwrap() {
                let x = q(c);
                assert!(x <= Rational::from_integer(1.into()) && x >= Rational::from_integer((-1).into()));
            }
        }
    }
}

#[test]
fn planar_generation_forces_the_circumcenter() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(generate(dir.path(), "3", "2", "3").status.code(), Some(0));
    for (name, _) in read_dir_sorted(dir.path()) {
        let out = run(&["locus", dir.path().join(&name).to_str().unwrap()]);
        let doc = json(&out.stdout);
        assert_eq!(doc["circumcenter_locus"]["dimension"], 0);
        assert!(doc["circumcenter_locus"]["basis"].as_array().unwrap().is_empty());
    }
}

#[test]
fn batch_reports_failures_and_errors_per_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(scene("worked-3d.json"), dir.path().join("a.json")).unwrap();
    write_scene(dir.path(), "b.json", "not json");
    let out = run(&["analyze", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out.stdout);
    assert_eq!(doc["summary"]["pass"], 1);
    assert_eq!(doc["summary"]["error"], 1);
    assert_eq!(doc["scenes"][1]["status"], "error");
}

#[test]
fn locus_of_the_worked_triangle() {
    let out = run(&["locus", scene("worked-3d.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out.stdout);
    assert_eq!(doc["circumcenter_locus"]["base"], serde_json::json!(["1", "1", "0"]));
    assert_eq!(doc["circumcenter_locus"]["basis"], serde_json::json!([["0", "0", "1"]]));
    assert_eq!(doc["orthocenter_set"]["base"], serde_json::json!(["0", "0", "0"]));
}

#[test]
fn locus_basis_in_five_dimensions_is_orthogonal_to_the_edges() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(generate(dir.path(), "11", "5", "1").status.code(), Some(0));
    let (name, bytes) = read_dir_sorted(dir.path()).remove(0);
    let scene_doc = json(&bytes);
    let pts = |k: &str| -> Vec<Rational> { scene_doc["points"][k].as_array().unwrap().iter().map(q).collect() };
    let (a, b, c) = (pts("A"), pts("B"), pts("C"));
    let out = run(&["locus", dir.path().join(name).to_str().unwrap()]);
    let doc = json(&out.stdout);
    let basis = doc["circumcenter_locus"]["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 3);
    for v in basis {
        let v: Vec<Rational> = v.as_array().unwrap().iter().map(q).collect();
        for other in [&b, &c] {
            let dot: Rational = (0..5).map(|i| &v[i] * (&other[i] - &a[i])).sum();
            assert!(dot.is_zero());
        }
    }
}

#[test]
fn plotdata_samples_lie_on_their_spheres() {
    let out = run(&["plotdata", scene("worked-3d.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out.stdout);
    let spheres = doc["spheres"].as_array().unwrap();
    assert_eq!(spheres.len(), 6);
    for s in spheres {
        let center: Vec<Rational> = s["center"].as_array().unwrap().iter().map(q).collect();
        let r_sq = q(&s["radius_sq"]);
        let samples = s["samples"].as_array().unwrap();
        assert_eq!(samples.len(), 64);
        for x in samples {
            let d: Rational = x
                .as_array()
                .unwrap()
                .iter()
                .map(q)
                .zip(&center)
                .map(|(a, c)| (&a - c) * (&a - c))
                .sum();
            assert_eq!(d, r_sq, "{}", s["label"]);
        }
    }
}

#[test]
fn plotdata_without_samples_keeps_centers_and_radii() {
    let out = run(&[
        "plotdata",
        "--samples",
        "0",
        scene("right-triangle.json").to_str().unwrap(),
    ]);
    let doc = json(&out.stdout);
    for s in doc["spheres"].as_array().unwrap() {
        assert!(s.get("samples").is_none());
        assert!(s["radius_sq"].is_string());
    }
}

#[test]
fn out_flag_writes_the_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = run(&[
        "analyze",
        scene("worked-3d.json").to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = run(&["analyze", scene("worked-3d.json").to_str().unwrap()]);
    assert_eq!(fs::read(&target).unwrap(), direct.stdout);
}
