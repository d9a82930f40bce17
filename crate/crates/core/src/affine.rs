//! Homotheties, point reflections, affine subspaces, collinearity and the
//! cross-ratio.

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{Scalar, Tolerance};
use crate::vector::{check_dims, Point, Vector};

/// `X ↦ (1 − λ)·center + λ·X`.
#[derive(Clone, Debug, PartialEq)]
pub struct Homothety<S> {
    center: Point<S>,
    ratio: S,
}

impl<S: Scalar> Homothety<S> {
    pub fn new(center: Point<S>, ratio: S) -> Result<Self> {
        if ratio.is_exact_zero() {
            return Err(Error::ZeroRatio);
        }
        Ok(Self { center, ratio })
    }

    pub fn center(&self) -> &Point<S> {
        &self.center
    }

    pub fn ratio(&self) -> &S {
        &self.ratio
    }

    pub fn apply(&self, x: &Point<S>) -> Point<S> {
        let keep = S::one() - self.ratio.clone();
        &self.center.scale(&keep) + &x.scale(&self.ratio)
    }

    pub fn apply_all<'a, I>(&self, points: I) -> Vec<Point<S>>
    where
        I: IntoIterator<Item = &'a Point<S>>,
    {
        points.into_iter().map(|p| self.apply(p)).collect()
    }

    pub fn inverse(&self) -> Self {
        Self {
            center: self.center.clone(),
            ratio: S::one() / self.ratio.clone(),
        }
    }
}

/// `X ↦ 2C − X`, the homothety of ratio −1 about `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointReflection<S> {
    center: Point<S>,
}

impl<S: Scalar> PointReflection<S> {
    pub fn new(center: Point<S>) -> Self {
        Self { center }
    }

    pub fn center(&self) -> &Point<S> {
        &self.center
    }

    pub fn apply(&self, x: &Point<S>) -> Point<S> {
        point_reflect(&self.center, x)
    }

    pub fn as_homothety(&self) -> Homothety<S> {
        Homothety {
            center: self.center.clone(),
            ratio: -S::one(),
        }
    }
}

pub fn homothety_apply<S: Scalar>(h: &Homothety<S>, x: &Point<S>) -> Point<S> {
    h.apply(x)
}

pub fn point_reflect<S: Scalar>(center: &Point<S>, x: &Point<S>) -> Point<S> {
    &center.scale(&S::from_int(2)) - x
}

/// `base + span(basis)` with linearly independent, unnormalized basis
/// vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSubspace<S> {
    base: Point<S>,
    basis: Vec<Vector<S>>,
    tol: Tolerance,
}

impl<S: Scalar> AffineSubspace<S> {
    pub fn new(base: Point<S>, basis: Vec<Vector<S>>, tol: Tolerance) -> Result<Self> {
        for v in &basis {
            check_dims(base.dim(), v)?;
        }
        if linalg::rank(&basis, tol) != basis.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(Self { base, basis, tol })
    }

    pub fn point(base: Point<S>, tol: Tolerance) -> Self {
        Self {
            base,
            basis: Vec::new(),
            tol,
        }
    }

    pub fn base(&self) -> &Point<S> {
        &self.base
    }

    pub fn basis(&self) -> &[Vector<S>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// `x − base ∈ span(basis)`: the residual of the projection onto the
    /// span vanishes, relative to the size of `x` and `base`. Exact on
    /// rationals.
    pub fn contains(&self, x: &Point<S>) -> bool {
        if x.dim() != self.ambient_dim() {
            return false;
        }
        let offset = x - &self.base;
        let mut residual = offset.clone();
        if !self.basis.is_empty() {
            let gram: Vec<Vec<S>> = self
                .basis
                .iter()
                .map(|u| self.basis.iter().map(|v| u.dot(v)).collect())
                .collect();
            let rhs: Vec<S> = self.basis.iter().map(|u| u.dot(&offset)).collect();
            let Some(coeffs) = linalg::solve(&gram, &rhs, self.tol) else {
                return false;
            };
            for (v, c) in self.basis.iter().zip(&coeffs) {
                residual = &residual - &v.scale(c);
            }
        }
        let scale = x.magnitude().max(self.base.magnitude());
        residual.iter().all(|r| r.near_zero(scale, self.tol))
    }

    /// `base + Σ params_i · basis_i`.
    pub fn point_at(&self, params: &[S]) -> Result<Point<S>> {
        if params.len() != self.dim() {
            return Err(Error::ParameterCount {
                expected: self.dim(),
                got: params.len(),
            });
        }
        Ok(self
            .basis
            .iter()
            .zip(params)
            .fold(self.base.clone(), |acc, (v, t)| &acc + &v.scale(t)))
    }

    /// Image under a homothety: base mapped, basis scaled by the ratio.
    pub fn map(&self, h: &Homothety<S>) -> Self {
        Self {
            base: h.apply(&self.base),
            basis: self.basis.iter().map(|v| v.scale(h.ratio())).collect(),
            tol: self.tol,
        }
    }
}

pub fn subspace_contains<S: Scalar>(s: &AffineSubspace<S>, x: &Point<S>) -> bool {
    s.contains(x)
}

pub fn subspace_map<S: Scalar>(h: &Homothety<S>, s: &AffineSubspace<S>) -> AffineSubspace<S> {
    s.map(h)
}

/// All differences from the first point have rank at most 1.
///
/// Implemented with 2×2 minors against the longest difference so that the
/// float test is scale invariant.
pub fn collinear<S: Scalar>(points: &[Point<S>], tol: Tolerance) -> Result<bool> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let n = points[0].dim();
    for p in points {
        check_dims(n, p)?;
    }
    let diffs: Vec<Vector<S>> = points[1..].iter().map(|p| p - &points[0]).collect();
    let reference = diffs
        .iter()
        .max_by(|a, b| a.magnitude().total_cmp(&b.magnitude()))
        .expect("at least two differences");
    if reference.is_zero() {
        return Ok(true);
    }
    let ref_mag = reference.magnitude();
    for u in &diffs {
        let scale = ref_mag * u.magnitude();
        for i in 0..n {
            for j in i + 1..n {
                let minor = reference[i].clone() * u[j].clone() - reference[j].clone() * u[i].clone();
                if !minor.near_zero(scale, tol) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Signed cross-ratio `(AC/CB) / (AD/DB)` of four distinct collinear points,
/// measured along the direction `B − A`. A harmonic range gives −1.
pub fn cross_ratio<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>, d: &Point<S>, tol: Tolerance) -> Result<S> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            check_dims(pts[i].dim(), pts[j])?;
            if pts[i].near(pts[j], tol) {
                return Err(Error::RepeatedPoints(i, j));
            }
        }
    }
    let owned: Vec<Point<S>> = pts.iter().map(|p| (*p).clone()).collect();
    if !collinear(&owned, tol)? {
        return Err(Error::NotCollinear);
    }
    let dir = b - a;
    let len_sq = dir.norm_sq();
    let param = |x: &Point<S>| (x - a).dot(&dir) / len_sq.clone();
    // A sits at 0 and B at 1
    let tc = param(c);
    let td = param(d);
    let one = S::one();
    let ac_cb = tc.clone() / (one.clone() - tc);
    let ad_db = td.clone() / (one - td);
    Ok(ac_cb / ad_db)
}
