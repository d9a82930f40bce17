use super::{residual, DEFAULT_RESIDUAL_TOL, METRIC_TOL, SNAP_MAX_DENOMINATOR};
use crate::error::{Error, Result};
use crate::norm::{norm, NormSpec};
use crate::orthocenter::{AffineFrame, OrthoConfig};
use crate::orthosys::{derived_point_sets, is_orthocentric};
use crate::scalar::{snap_to_rational, Rational, Tolerance};
use crate::triangle::Triangle;
use crate::vector::Point;
use crate::verdict::Clause;
use crate::verify::{affine_clauses, metric_clauses, VerifyOptions};

#[derive(Clone, Debug)]
pub struct MinkowskiReport {
    pub point: Point<f64>,
    /// `point` rationalized for the exact affine clauses.
    pub snapped_point: Point<Rational>,
    pub norm: NormSpec,
    pub residual: f64,
    /// `‖P − A₀‖`.
    pub radius: f64,
    /// Largest relative error over the metric identities.
    pub achieved_tolerance: f64,
    /// Checked exactly on the snapped inputs.
    pub affine: Vec<Clause>,
    /// Checked in floating point under `norm` within [`METRIC_TOL`].
    pub metric: Vec<Clause>,
    pub warnings: Vec<String>,
}

impl MinkowskiReport {
    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.affine.iter().chain(&self.metric)
    }

    pub fn all_pass(&self) -> bool {
        self.clauses().all(|c| !c.failed())
    }
}

fn snap(p: &Point<f64>) -> Point<Rational> {
    Point::new(p.iter().map(|&c| snap_to_rational(c, SNAP_MAX_DENOMINATOR)).collect())
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Reruns every clause for a numerically found equidistant `P`.
pub fn verify_under_norm(t: &Triangle<f64>, p: &Point<f64>, ns: NormSpec) -> Result<MinkowskiReport> {
    verify_under_norm_with(t, p, ns, &VerifyOptions::default())
}

pub fn verify_under_norm_with(
    t: &Triangle<f64>,
    p: &Point<f64>,
    ns: NormSpec,
    opts: &VerifyOptions,
) -> Result<MinkowskiReport> {
    ns.validate()?;
    let res = residual(t, p, ns)?;
    if res > DEFAULT_RESIDUAL_TOL {
        return Err(Error::ResidualTooLarge {
            residual: res,
            tolerance: DEFAULT_RESIDUAL_TOL,
        });
    }
    let [a0, a1, a2] = t.vertices().clone();
    let metric_tri = Triangle::with_tolerance(a0, a1, a2, Tolerance::new(METRIC_TOL))?;
    let cfg = OrthoConfig::new(metric_tri, p.clone(), ns)?;
    let metric = metric_clauses(&cfg, opts);

    let snapped_point = snap(p);
    let [s0, s1, s2] = t.vertices().clone().map(|v| snap(&v));
    let frame = AffineFrame::new(Triangle::new(s0, s1, s2)?, snapped_point.clone())?;
    let affine = affine_clauses(&frame, opts);

    let dist = |a: &Point<f64>, b: &Point<f64>| norm(&(a - b), ns).expect("norm validated");
    let r = dist(p, t.vertex(0));
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        worst = worst.max(relative(dist(&cfg.antitriangle()[i], cfg.orthocenter()), r));
        worst = worst.max(relative(dist(&cfg.midpoints()[i], cfg.symmetry_center()), r / 2.0));
        worst = worst.max(relative(
            dist(&cfg.antitriangle_midpoints()[i], cfg.symmetry_center()),
            r / 2.0,
        ));
    }
    for pts in derived_point_sets(cfg.frame()) {
        if let Ok(sys) = is_orthocentric(&pts, ns, cfg.tolerance()) {
            let two_r = 2.0 * sys.r_sq().sqrt();
            for pc in sys.opposite_orthogonality()? {
                worst = worst.max(relative(pc.minus_sq.sqrt(), two_r));
                worst = worst.max(relative(pc.plus_sq.sqrt(), two_r));
            }
        }
    }

    let mut warnings = Vec::new();
    if !ns.is_strictly_convex() {
        warnings.push(format!(
            "norm {ns} is not strictly convex; equidistant points need not be unique"
        ));
    }
    Ok(MinkowskiReport {
        point: p.clone(),
        snapped_point,
        norm: ns,
        residual: res,
        radius: r,
        achieved_tolerance: worst,
        affine,
        metric,
        warnings,
    })
}
