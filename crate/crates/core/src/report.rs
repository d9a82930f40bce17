//! The analysis pipeline behind the `analyze` and `locus` commands.
//!
//! Documents are `serde_json` values whose object keys are sorted at every
//! level, so output is byte-for-byte reproducible.

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::minkowski::{equidistant_solve, verify_under_norm_with, EquidistantProblem, Solution, DEFAULT_RESIDUAL_TOL};
use crate::norm::NormSpec;
use crate::orthocenter::{orthocenter_set, DEFAULT_SPHERE_SAMPLES};
use crate::orthosys::{derived_point_sets, is_orthocentric, DERIVED_SYSTEM_NAMES};
use crate::scalar::{Rational, Scalar, Tolerance};
use crate::scene::{convert, Backend, ExactP, ExactScene, SceneError, SceneFile};
use crate::triangle::{Sphere, Triangle};
use crate::vector::Point;
use crate::verdict::{Clause, Tally};
use crate::verify::{verify_instance, VerifyOptions};
use crate::OrthoConfig;

/// Float-backend bisector condition number above which a warning is issued.
pub const CONDITION_WARNING: f64 = 1e8;

/// Command-line overrides; `None` defers to the scene.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AnalyzeOptions {
    pub backend: Option<Backend>,
    pub norm: Option<NormSpec>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthoReport {
    pub document: Value,
    pub tally: Tally,
}

impl OrthoReport {
    pub fn all_pass(&self) -> bool {
        self.tally.all_pass()
    }

    pub fn to_pretty(&self) -> String {
        pretty(&self.document)
    }
}

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("document serializes");
    s.push('\n');
    s
}

/// Recursively rebuilds objects with keys in sorted order.
pub fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, sorted(v));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Error document for a failed scene.
pub fn error_document(e: &SceneError) -> Value {
    let mut err = json!({ "kind": e.kind(), "message": e.to_string() });
    match e {
        SceneError::Syntax { line, column, .. } => {
            err["line"] = json!(line);
            err["column"] = json!(column);
        }
        SceneError::Field { path, .. } => err["path"] = json!(path),
        SceneError::Geometry(Error::NotEquidistant { distances_sq }) => err["distances_sq"] = json!(distances_sq),
        SceneError::Geometry(_) => {}
    }
    sorted(json!({ "error": err }))
}

struct Settings {
    backend: Backend,
    norm: NormSpec,
    eps: f64,
    residual_tol: f64,
    seed: u64,
    samples: usize,
    warnings: Vec<String>,
}

impl Settings {
    fn new(scene: &SceneFile, opts: &AnalyzeOptions) -> Result<Self, SceneError> {
        let norm = opts.norm.unwrap_or(scene.norm);
        norm.validate().map_err(|e| SceneError::Field {
            path: "norm".into(),
            message: e.to_string(),
        })?;
        let mut s = Settings {
            backend: opts.backend.unwrap_or(scene.backend),
            norm,
            eps: opts.tol.or(scene.tolerance.eps).unwrap_or(Tolerance::DEFAULT_EPS),
            residual_tol: scene.tolerance.residual.unwrap_or(DEFAULT_RESIDUAL_TOL),
            seed: opts.seed,
            samples: opts.samples.unwrap_or(DEFAULT_SPHERE_SAMPLES),
            warnings: Vec::new(),
        };
        if s.backend == Backend::Exact && !norm.supported_by::<Rational>() {
            s.warnings.push(format!(
                "the exact backend cannot evaluate norm {norm}; using the float backend"
            ));
            s.backend = Backend::Float;
        }
        Ok(s)
    }

    fn effective(&self) -> Value {
        json!({
            "backend": self.backend.to_string(),
            "norm": self.norm.to_string(),
            "eps": self.eps,
            "residual_tol": self.residual_tol,
            "seed": self.seed,
            "sphere_samples": self.samples,
        })
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            sphere_samples: self.samples,
            seed: self.seed,
        }
    }
}

enum Chosen {
    Exact(Point<Rational>),
    Float(Point<f64>),
}

struct PChoice {
    point: Chosen,
    source: &'static str,
    solver: Option<Solution>,
}

fn choose_p(ex: &ExactScene, s: &mut Settings) -> Result<PChoice, SceneError> {
    let exact_tri = || ex.triangle::<Rational>(Tolerance::default());
    match &ex.p {
        Some(ExactP::Point(q)) => Ok(PChoice {
            point: Chosen::Exact(q.clone()),
            source: "given",
            solver: None,
        }),
        Some(ExactP::Locus(params)) => {
            if !s.norm.is_euclidean() {
                return Err(SceneError::Field {
                    path: "p.locus".into(),
                    message: format!("locus parameters need the euclidean norm, not {}", s.norm),
                });
            }
            let p = exact_tri()?.circumlocus().point_at(params)?;
            Ok(PChoice {
                point: Chosen::Exact(p),
                source: "locus",
                solver: None,
            })
        }
        None if s.norm.is_euclidean() => Ok(PChoice {
            point: Chosen::Exact(exact_tri()?.circumcenter_inplane().0),
            source: "circumcenter",
            solver: None,
        }),
        None => {
            let tri = ex.triangle::<f64>(Tolerance::new(s.eps))?;
            let mut prob = EquidistantProblem::new(tri, s.norm).with_seed(s.seed);
            prob.residual_tol = s.residual_tol;
            let sol = equidistant_solve(&prob)?;
            if sol.non_unique {
                s.warnings.push(format!(
                    "equidistant points under {} need not be unique; using the first solver result",
                    s.norm
                ));
            }
            let point = if s.backend == Backend::Exact {
                let snapped: Point<Rational> = Point::new(
                    sol.point
                        .iter()
                        .map(|&c| crate::scalar::snap_to_rational(c, crate::minkowski::SNAP_MAX_DENOMINATOR))
                        .collect(),
                );
                if exact_tri()?.is_equidistant(&snapped, s.norm)? {
                    Chosen::Exact(snapped)
                } else {
                    s.warnings
                        .push("solver result has no exact rational form; using the float backend".to_string());
                    s.backend = Backend::Float;
                    Chosen::Float(sol.point.clone())
                }
            } else {
                Chosen::Float(sol.point.clone())
            };
            Ok(PChoice {
                point,
                source: "solver",
                solver: Some(sol),
            })
        }
    }
}

fn point_as<S: Scalar>(c: &Chosen) -> Point<S> {
    match c {
        Chosen::Exact(q) => convert(q),
        Chosen::Float(f) => Point::new(f.iter().map(|&x| S::from_f64(x)).collect()),
    }
}

fn points_json<S: Scalar>(pts: &[Point<S>]) -> Value {
    Value::Array(pts.iter().map(Point::to_json).collect())
}

fn sphere_json<S: Scalar>(s: &Sphere<S>) -> Value {
    json!({ "center": s.center.to_json(), "radius_sq": s.radius_sq.to_json(), "norm": s.norm.to_string() })
}

fn objects<S: Scalar>(cfg: &OrthoConfig<S>) -> Value {
    let mut o = json!({
        "p": cfg.p().to_json(),
        "r_sq": cfg.r_sq().to_json(),
        "centroid": cfg.centroid().to_json(),
        "orthocenter": cfg.orthocenter().to_json(),
        "symmetry_center": cfg.symmetry_center().to_json(),
        "midpoints": points_json(cfg.midpoints()),
        "antitriangle": points_json(cfg.antitriangle()),
        "antitriangle_midpoints": points_json(cfg.antitriangle_midpoints()),
        "system_centroids": points_json(cfg.system_centroids()),
        "spheres": {
            "circumsphere": sphere_json(&cfg.sphere()),
            "reflected": Value::Array(cfg.reflected_spheres().iter().map(sphere_json).collect()),
            "feuerbach": sphere_json(&cfg.feuerbach_sphere()),
            "orthocenter_sphere": sphere_json(&cfg.orthocenter_sphere()),
        },
    });
    let systems: Vec<Value> = DERIVED_SYSTEM_NAMES
        .iter()
        .zip(derived_point_sets(cfg.frame()))
        .map(|(name, pts)| {
            let mut v = json!({ "name": name, "points": points_json(&pts) });
            if let Ok(sys) = is_orthocentric(&pts, cfg.norm(), cfg.tolerance()) {
                v["witness"] = sys.witness().to_json();
                v["r_sq"] = sys.r_sq().to_json();
            }
            v
        })
        .collect();
    o["systems"] = Value::Array(systems);
    if let Some(c) = cfg.classical() {
        o["classical"] = json!({
            "circumcenter": c.circumcenter.to_json(),
            "circumradius_sq": c.circumradius_sq.to_json(),
            "orthocenter": c.orthocenter.to_json(),
        });
        let locus = cfg.triangle().circumlocus();
        let hset = orthocenter_set(cfg.triangle());
        o["locus"] = json!({
            "dimension": locus.dim(),
            "base": locus.base().to_json(),
            "basis": points_json(locus.basis()),
        });
        o["orthocenter_set"] = json!({
            "base": hset.base().to_json(),
            "basis": points_json(hset.basis()),
        });
    }
    o
}

struct Run {
    objects: Value,
    clauses: Vec<Clause>,
    minkowski: Option<Value>,
}

fn run<S: Scalar>(ex: &ExactScene, p: Point<S>, s: &mut Settings) -> Result<Run, SceneError> {
    let tri: Triangle<S> = ex.triangle(Tolerance::new(s.eps))?;
    if !S::EXACT {
        let cond = tri.bisector_condition();
        if cond > CONDITION_WARNING {
            s.warnings.push(format!(
                "bisector system is ill-conditioned (condition number {cond:.3e}); float results may be inaccurate"
            ));
        }
    }
    let cfg = OrthoConfig::new(tri, p, s.norm)?;
    let vopts = s.verify_options();
    if !S::EXACT && !s.norm.is_euclidean() {
        let rep = verify_under_norm_with(&cfg.triangle().to_f64(), &cfg.p().to_f64(), s.norm, &vopts)?;
        for w in &rep.warnings {
            if !s.warnings.contains(w) {
                s.warnings.push(w.clone());
            }
        }
        let clauses = rep.clauses().cloned().collect();
        return Ok(Run {
            objects: objects(&cfg),
            clauses,
            minkowski: Some(json!({
                "achieved_tolerance": rep.achieved_tolerance,
                "residual": rep.residual,
                "snapped_p": rep.snapped_point.to_json(),
            })),
        });
    }
    if !s.norm.is_strictly_convex() {
        s.warnings.push(format!(
            "norm {} is not strictly convex; equidistant points need not be unique",
            s.norm
        ));
    }
    Ok(Run {
        objects: objects(&cfg),
        clauses: verify_instance(&cfg, &vopts),
        minkowski: None,
    })
}

/// A validated configuration on whichever backend the scene selects.
pub(crate) enum Configured {
    Exact(OrthoConfig<Rational>),
    Float(OrthoConfig<f64>),
}

/// Resolves backend, norm and `P` the same way [`analyze`] does.
pub(crate) fn configure(scene: &SceneFile, opts: &AnalyzeOptions) -> Result<(Configured, Vec<String>), SceneError> {
    let ex = scene.exact()?;
    let mut s = Settings::new(scene, opts)?;
    let choice = choose_p(&ex, &mut s)?;
    let cfg = match s.backend {
        Backend::Exact => Configured::Exact(OrthoConfig::new(
            ex.triangle(Tolerance::new(s.eps))?,
            point_as(&choice.point),
            s.norm,
        )?),
        Backend::Float => Configured::Float(OrthoConfig::new(
            ex.triangle(Tolerance::new(s.eps))?,
            point_as(&choice.point),
            s.norm,
        )?),
    };
    Ok((cfg, s.warnings))
}

/// Runs the full pipeline on a parsed scene.
pub fn analyze(scene: &SceneFile, opts: &AnalyzeOptions) -> Result<OrthoReport, SceneError> {
    let ex = scene.exact()?;
    let mut s = Settings::new(scene, opts)?;
    let choice = choose_p(&ex, &mut s)?;
    let run = match s.backend {
        Backend::Exact => {
            let p = point_as::<Rational>(&choice.point);
            run::<Rational>(&ex, p, &mut s)?
        }
        Backend::Float => {
            let p = point_as::<f64>(&choice.point);
            run::<f64>(&ex, p, &mut s)?
        }
    };
    let tally = Tally::of(&run.clauses);
    let mut doc = json!({
        "instance": {
            "scene": scene.to_json(),
            "effective": s.effective(),
            "p_source": choice.source,
        },
        "objects": run.objects,
        "clauses": run.clauses,
        "summary": {
            "pass": tally.pass,
            "fail": tally.fail,
            "not_applicable": tally.not_applicable,
            "all_pass": tally.all_pass(),
        },
        "warnings": s.warnings,
    });
    if let Some(sol) = &choice.solver {
        doc["solver"] = json!({
            "point": sol.point.to_json(),
            "residual": sol.residual,
            "iterations": sol.iterations,
            "start": sol.start,
            "non_unique": sol.non_unique,
        });
    }
    if let Some(m) = run.minkowski {
        doc["minkowski"] = m;
    }
    Ok(OrthoReport {
        document: sorted(doc),
        tally,
    })
}

fn locus_body<S: Scalar>(ex: &ExactScene, eps: f64) -> Result<Value, SceneError> {
    let tri: Triangle<S> = ex.triangle(Tolerance::new(eps))?;
    let locus = tri.circumlocus();
    let (_, r_sq) = tri.circumcenter_inplane();
    let hset = orthocenter_set(&tri);
    Ok(json!({
        "circumcenter_locus": {
            "dimension": locus.dim(),
            "base": locus.base().to_json(),
            "circumradius_sq": r_sq.to_json(),
            "basis": points_json(locus.basis()),
        },
        "orthocenter_set": {
            "dimension": hset.dim(),
            "base": hset.base().to_json(),
            "basis": points_json(hset.basis()),
        },
    }))
}

/// Euclidean circumcenter locus and orthocenter set of the scene's triangle.
pub fn locus_document(scene: &SceneFile, opts: &AnalyzeOptions) -> Result<Value, SceneError> {
    let ex = scene.exact()?;
    let backend = opts.backend.unwrap_or(scene.backend);
    let eps = opts.tol.or(scene.tolerance.eps).unwrap_or(Tolerance::DEFAULT_EPS);
    let mut doc = match backend {
        Backend::Exact => locus_body::<Rational>(&ex, eps)?,
        Backend::Float => locus_body::<f64>(&ex, eps)?,
    };
    doc["backend"] = json!(backend.to_string());
    doc["instance"] = scene.to_json();
    let norm = opts.norm.unwrap_or(scene.norm);
    let warnings: Vec<String> = if norm.is_euclidean() {
        vec![]
    } else {
        vec![format!("the locus is euclidean; scene norm {norm} is ignored")]
    };
    doc["warnings"] = json!(warnings);
    Ok(sorted(doc))
}
