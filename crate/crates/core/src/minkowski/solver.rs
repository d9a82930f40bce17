use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DEFAULT_RESIDUAL_TOL;
use crate::error::{Error, Result};
use crate::norm::{norm, NormSpec};
use crate::scalar::snap_to_rational;
use crate::triangle::Triangle;
use crate::vector::{check_dims, Point, Vector};
use crate::Scalar;

/// Where the solver looks for `P`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchSpace {
    /// The triangle's own affine plane (2 parameters).
    #[default]
    Plane,
    /// All of R^n (n parameters).
    Ambient,
}

#[derive(Clone, Debug)]
pub struct EquidistantProblem {
    pub triangle: Triangle<f64>,
    pub norm: NormSpec,
    pub space: SearchSpace,
    /// First start; defaults to the Euclidean in-plane circumcenter.
    pub initial: Option<Point<f64>>,
    /// Bound on `(d₀ − d₁)² + (d₁ − d₂)²`.
    pub residual_tol: f64,
    /// Iteration cap per start.
    pub max_iter: usize,
    pub starts: usize,
    pub seed: u64,
}

impl EquidistantProblem {
    pub fn new(triangle: Triangle<f64>, norm: NormSpec) -> Self {
        Self {
            triangle,
            norm,
            space: SearchSpace::Plane,
            initial: None,
            residual_tol: DEFAULT_RESIDUAL_TOL,
            max_iter: 400,
            starts: 8,
            seed: 0,
        }
    }

    pub fn with_space(mut self, space: SearchSpace) -> Self {
        self.space = space;
        self
    }

    pub fn with_initial(mut self, initial: Point<f64>) -> Self {
        self.initial = Some(initial);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub point: Point<f64>,
    pub residual: f64,
    /// Iterations spent on the accepted start.
    pub iterations: usize,
    /// Index of the accepted start.
    pub start: usize,
    /// Residual after each accepted move of the accepted start.
    pub trace: Vec<f64>,
    /// Set when the equidistant set may contain other points: the norm is
    /// not strictly convex, or the search ran in more than two dimensions.
    pub non_unique: bool,
}

/// `‖P − A_i‖` under `ns` for i = 0, 1, 2.
pub fn distances(t: &Triangle<f64>, p: &Point<f64>, ns: NormSpec) -> Result<[f64; 3]> {
    check_dims(t.dim(), p)?;
    Ok([
        norm(&(p - t.vertex(0)), ns)?,
        norm(&(p - t.vertex(1)), ns)?,
        norm(&(p - t.vertex(2)), ns)?,
    ])
}

/// `(d₀ − d₁)² + (d₁ − d₂)²`.
pub fn residual(t: &Triangle<f64>, p: &Point<f64>, ns: NormSpec) -> Result<f64> {
    let [d0, d1, d2] = distances(t, p, ns)?;
    Ok((d0 - d1).powi(2) + (d1 - d2).powi(2))
}

/// An affine parametrization `base + Σ x_i dirs_i` with orthonormal
/// directions.
struct Chart {
    base: Point<f64>,
    dirs: Vec<Vector<f64>>,
}

impl Chart {
    fn new(t: &Triangle<f64>, space: SearchSpace) -> Self {
        let n = t.dim();
        let base = t.vertex(0).clone();
        let dirs = match space {
            SearchSpace::Ambient => (0..n).map(|i| Vector::unit(n, i)).collect(),
            SearchSpace::Plane => {
                let e1 = t.vertex(1) - t.vertex(0);
                let u1 = e1.scale(&(1.0 / e1.norm_sq().sqrt()));
                let e2 = t.vertex(2) - t.vertex(0);
                let w = &e2 - &u1.scale(&e2.dot(&u1));
                let u2 = w.scale(&(1.0 / w.norm_sq().sqrt()));
                vec![u1, u2]
            }
        };
        Self { base, dirs }
    }

    fn point(&self, x: &[f64]) -> Point<f64> {
        self.dirs
            .iter()
            .zip(x)
            .fold(self.base.clone(), |acc, (d, xi)| &acc + &d.scale(xi))
    }

    fn coords(&self, p: &Point<f64>) -> Vec<f64> {
        let offset = p - &self.base;
        self.dirs.iter().map(|d| d.dot(&offset)).collect()
    }
}

/// A (sub)gradient of `‖y‖` under `ns`.
fn norm_gradient(y: &Vector<f64>, ns: NormSpec) -> Vector<f64> {
    let m = y.magnitude();
    if m == 0.0 {
        return Vector::zeros(y.dim());
    }
    let p = ns.exponent();
    let sign = |v: f64| {
        if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            0.0
        }
    };
    if p == 1.0 {
        return Vector::new(y.iter().map(|&v| sign(v)).collect());
    }
    if p.is_infinite() {
        let k = y.iter().position(|v| v.abs() == m).expect("max attained");
        let mut g = vec![0.0; y.dim()];
        g[k] = sign(y[k]);
        return Vector::new(g);
    }
    let z: Vec<f64> = y.iter().map(|v| v / m).collect();
    let s: f64 = z.iter().map(|v| v.abs().powf(p)).sum();
    let denom = s.powf((p - 1.0) / p);
    Vector::new(z.iter().map(|&v| sign(v) * v.abs().powf(p - 1.0) / denom).collect())
}

struct Objective<'a> {
    t: &'a Triangle<f64>,
    ns: NormSpec,
    chart: Chart,
}

impl Objective<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        residual(self.t, &self.chart.point(x), self.ns).expect("dimensions checked")
    }

    /// Regularized Gauss-Newton step on `F = (d₀ − d₁, d₁ − d₂)` with
    /// backtracking; `None` when no step size lowers the residual.
    fn newton(&self, x: &[f64], f: f64) -> Option<(Vec<f64>, f64)> {
        let pt = self.chart.point(x);
        let d = distances(self.t, &pt, self.ns).ok()?;
        let g: Vec<Vector<f64>> = (0..3)
            .map(|i| norm_gradient(&(&pt - self.t.vertex(i)), self.ns))
            .collect();
        let rows: Vec<Vec<f64>> = [(0, 1), (1, 2)]
            .iter()
            .map(|&(a, b)| {
                let diff = &g[a] - &g[b];
                self.chart.dirs.iter().map(|dir| diff.dot(dir)).collect()
            })
            .collect();
        let fv = [d[0] - d[1], d[1] - d[2]];
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(u, v)| u * v).sum::<f64>();
        let (a, b, c) = (
            dot(&rows[0], &rows[0]),
            dot(&rows[0], &rows[1]),
            dot(&rows[1], &rows[1]),
        );
        let mu = 1e-12 * (a + c).max(f64::MIN_POSITIVE);
        let (a, c) = (a + mu, c + mu);
        let det = a * c - b * b;
        if !(det.is_finite() && det > 0.0) {
            return None;
        }
        let y0 = (c * fv[0] - b * fv[1]) / det;
        let y1 = (a * fv[1] - b * fv[0]) / det;
        let step: Vec<f64> = (0..x.len()).map(|k| -(rows[0][k] * y0 + rows[1][k] * y1)).collect();
        let mut alpha = 1.0;
        for _ in 0..40 {
            let cand: Vec<f64> = x.iter().zip(&step).map(|(xi, s)| xi + alpha * s).collect();
            let fc = self.value(&cand);
            if fc < f {
                return Some((cand, fc));
            }
            alpha *= 0.5;
        }
        None
    }

    /// One sweep of golden-section searches along each coordinate within
    /// `[x_i − h, x_i + h]`, keeping only improving moves.
    fn sweep(&self, x: &[f64], f: f64, h: f64) -> (Vec<f64>, f64) {
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let mut x = x.to_vec();
        let mut f = f;
        for i in 0..x.len() {
            let at = |v: f64, x: &mut Vec<f64>| {
                let old = x[i];
                x[i] = v;
                let r = self.value(x);
                x[i] = old;
                r
            };
            let (mut lo, mut hi) = (x[i] - h, x[i] + h);
            let mut c = hi - INV_PHI * (hi - lo);
            let mut d = lo + INV_PHI * (hi - lo);
            let mut fc = at(c, &mut x);
            let mut fd = at(d, &mut x);
            for _ in 0..80 {
                if fc < fd {
                    hi = d;
                    d = c;
                    fd = fc;
                    c = hi - INV_PHI * (hi - lo);
                    fc = at(c, &mut x);
                } else {
                    lo = c;
                    c = d;
                    fc = fd;
                    d = lo + INV_PHI * (hi - lo);
                    fd = at(d, &mut x);
                }
                if hi - lo <= f64::EPSILON * (1.0 + x[i].abs()) {
                    break;
                }
            }
            let (v, fv) = if fc < fd { (c, fc) } else { (d, fd) };
            if fv < f {
                x[i] = v;
                f = fv;
            }
        }
        (x, f)
    }

    fn run(&self, x0: Vec<f64>, scale: f64, max_iter: usize) -> (Vec<f64>, f64, usize, Vec<f64>) {
        let floor = (1e-15 * scale).powi(2);
        let mut x = x0;
        let mut f = self.value(&x);
        let mut trace = vec![f];
        let mut h = scale;
        let mut it = 0;
        while it < max_iter && f > floor {
            it += 1;
            if let Some((xn, fnew)) = self.newton(&x, f) {
                x = xn;
                f = fnew;
                trace.push(f);
                continue;
            }
            let (xs, fs) = self.sweep(&x, f, h);
            if fs < f {
                x = xs;
                f = fs;
                trace.push(f);
            } else {
                h *= 0.25;
                if h < 1e-15 * scale {
                    break;
                }
            }
        }
        (x, f, it, trace)
    }
}

/// Finds `P` with `(d₀ − d₁)² + (d₁ − d₂)² ≤ residual_tol`.
///
/// Each start alternates Gauss-Newton steps with coordinate-wise
/// golden-section sweeps; a move is taken only if it lowers the residual.
/// Starts run in order and the first one meeting the tolerance wins, so
/// the result is deterministic for a given seed. A winning point is
/// replaced by its rational snap when that is at least as good.
pub fn equidistant_solve(prob: &EquidistantProblem) -> Result<Solution> {
    prob.norm.validate()?;
    let t = &prob.triangle;
    let n = t.dim();
    if let Some(x) = &prob.initial {
        check_dims(n, x)?;
    }
    let chart = Chart::new(t, prob.space);
    let k = chart.dirs.len();
    let scale = (0..3)
        .map(|i| (t.vertex(i) - t.vertex((i + 1) % 3)).norm_sq().sqrt())
        .fold(0.0, f64::max);
    let (center, _) = t.circumcenter_inplane();
    let first = prob.initial.clone().unwrap_or_else(|| center.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(prob.seed);
    let obj = Objective {
        t,
        ns: prob.norm,
        chart,
    };
    let center_x = obj.chart.coords(&center);
    let non_unique = !prob.norm.is_strictly_convex() || k > 2;

    let mut best: Option<(f64, usize)> = None;
    let mut total = 0;
    for start in 0..prob.starts.max(1) {
        let x0 = if start == 0 {
            obj.chart.coords(&first)
        } else {
            center_x.iter().map(|c| c + scale * rng.gen_range(-1.0..=1.0)).collect()
        };
        let (x, f, it, trace) = obj.run(x0, scale, prob.max_iter);
        total += it;
        if best.is_none_or(|(bf, _)| f < bf) {
            best = Some((f, total));
        }
        if f <= prob.residual_tol {
            let mut point = obj.chart.point(&x);
            let mut res = f;
            let snapped: Point<f64> = Point::new(
                point
                    .iter()
                    .map(|&c| snap_to_rational(c, super::SNAP_MAX_DENOMINATOR).to_f64())
                    .collect(),
            );
            let on_chart = obj
                .chart
                .point(&obj.chart.coords(&snapped))
                .near(&snapped, crate::Tolerance::new(1e-15));
            if let Ok(r) = residual(t, &snapped, prob.norm) {
                if on_chart && r <= res {
                    point = snapped;
                    res = r;
                }
            }
            return Ok(Solution {
                point,
                residual: res,
                iterations: it,
                start,
                trace,
                non_unique,
            });
        }
    }
    let (best_residual, iterations) = best.expect("at least one start");
    Err(Error::NoConvergence {
        iterations,
        best_residual,
    })
}
