//! Labeled point clouds for external plotting.
//!
//! Sphere samples are emitted only in two and three dimensions. Euclidean
//! spheres are sampled through a rational parametrization, so on the exact
//! backend every sample satisfies its sphere equation exactly.

use serde_json::{json, Value};

use crate::orthocenter::OrthoConfig;
use crate::report::{configure, sorted, AnalyzeOptions, Configured};
use crate::scalar::Scalar;
use crate::scene::{SceneError, SceneFile};
use crate::triangle::Sphere;
use crate::vector::Point;

/// Number of points emitted along the Euler line.
pub const EULER_LINE_SAMPLES: i64 = 9;

fn labeled<S: Scalar>(label: impl Into<String>, p: &Point<S>) -> Value {
    json!({ "label": label.into(), "point": p.to_json() })
}

fn sphere_entry<S: Scalar>(label: &str, sphere: &Sphere<S>, samples: usize, seed: u64) -> Result<Value, SceneError> {
    let mut v = json!({
        "label": label,
        "center": sphere.center.to_json(),
        "radius_sq": sphere.radius_sq.to_json(),
        "norm": sphere.norm.to_string(),
    });
    if samples > 0 {
        let pts = sphere.samples(samples, seed)?;
        v["samples"] = Value::Array(pts.iter().map(Point::to_json).collect());
    }
    Ok(v)
}

fn plot_body<S: Scalar>(
    cfg: &OrthoConfig<S>,
    names: &[String; 3],
    samples: usize,
    seed: u64,
) -> Result<Value, SceneError> {
    let mut points = Vec::new();
    for (name, v) in names.iter().zip(cfg.triangle().vertices()) {
        points.push(labeled(name.as_str(), v));
    }
    for (i, b) in cfg.antitriangle().iter().enumerate() {
        points.push(labeled(format!("B{i}"), b));
    }
    for (i, m) in cfg.midpoints().iter().enumerate() {
        points.push(labeled(format!("M{i}"), m));
    }
    for (i, n) in cfg.antitriangle_midpoints().iter().enumerate() {
        points.push(labeled(format!("N{i}"), n));
    }
    points.push(labeled("G", cfg.centroid()));
    points.push(labeled("P", cfg.p()));
    points.push(labeled("H_P", cfg.orthocenter()));
    points.push(labeled("Q_P", cfg.symmetry_center()));
    if let Some(c) = cfg.classical() {
        points.push(labeled("O", &c.circumcenter));
        points.push(labeled("H", &c.orthocenter));
    }

    // P + t (H_P − P) for t from −1/2 to 3/2
    let dir = cfg.orthocenter() - cfg.p();
    let euler_line = if dir.is_zero() {
        Value::Null
    } else {
        let last = EULER_LINE_SAMPLES - 1;
        let pts: Vec<Value> = (0..EULER_LINE_SAMPLES)
            .map(|k| {
                let t = S::from_ratio(2 * k - last / 2, last);
                (cfg.p() + &dir.scale(&t)).to_json()
            })
            .collect();
        json!({ "through": ["P", "H_P"], "samples": pts })
    };

    let mut doc = json!({
        "dimension": cfg.triangle().dim(),
        "norm": cfg.norm().to_string(),
        "points": points,
        "euler_line": euler_line,
    });
    if cfg.triangle().dim() <= 3 {
        let reflected = cfg.reflected_spheres();
        let spheres = [
            ("S", cfg.sphere()),
            ("S0", reflected[0].clone()),
            ("S1", reflected[1].clone()),
            ("S2", reflected[2].clone()),
            ("S_M", cfg.feuerbach_sphere()),
            ("S_H", cfg.orthocenter_sphere()),
        ];
        let entries = spheres
            .iter()
            .enumerate()
            .map(|(i, (label, s))| sphere_entry(label, s, samples, seed.wrapping_add(i as u64)))
            .collect::<Result<Vec<_>, _>>()?;
        doc["spheres"] = Value::Array(entries);
    }
    Ok(doc)
}

/// Plot data for a scene with `samples` points per sphere.
pub fn plot_document(scene: &SceneFile, opts: &AnalyzeOptions, samples: usize) -> Result<Value, SceneError> {
    let (cfg, warnings) = configure(scene, opts)?;
    let mut doc = match &cfg {
        Configured::Exact(c) => plot_body(c, &scene.triangle, samples, opts.seed)?,
        Configured::Float(c) => plot_body(c, &scene.triangle, samples, opts.seed)?,
    };
    doc["warnings"] = json!(warnings);
    Ok(sorted(doc))
}
