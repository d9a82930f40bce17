//! Triangles in R^n, their classical centers, the circumcenter locus and
//! spheres through the vertices.
//!
//! Side `a_i` joins the two vertices other than `A_i`; `M_i` is its
//! midpoint.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::AffineSubspace;
use crate::error::{Error, Result};
use crate::linalg;
use crate::norm::{dist_sq, norm, NormSpec};
use crate::scalar::{Scalar, Tolerance};
use crate::vector::{check_dims, Point, Vector};

/// The two vertices other than `i`, in increasing order.
pub(crate) fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("triangle index out of range: {i}"),
    }
}

/// Gram matrix of the two edge vectors, and the edges.
type Gram<S> = ([[S; 2]; 2], (Vector<S>, Vector<S>));

#[derive(Clone, Debug, PartialEq)]
pub struct Triangle<S> {
    vertices: [Point<S>; 3],
    tol: Tolerance,
}

impl<S: Scalar> Triangle<S> {
    /// Rejects mismatched dimensions, n < 2, repeated and collinear vertices.
    pub fn new(a0: Point<S>, a1: Point<S>, a2: Point<S>) -> Result<Self> {
        Self::with_tolerance(a0, a1, a2, Tolerance::default())
    }

    pub fn with_tolerance(a0: Point<S>, a1: Point<S>, a2: Point<S>, tol: Tolerance) -> Result<Self> {
        let n = a0.dim();
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        check_dims(n, &a1)?;
        check_dims(n, &a2)?;
        let vertices = [a0, a1, a2];
        for i in 0..3 {
            for j in i + 1..3 {
                if vertices[i].near(&vertices[j], tol) {
                    return Err(Error::RepeatedPoints(i, j));
                }
            }
        }
        let t = Self { vertices, tol };
        let (gram, _) = t.gram();
        let det = gram[0][0].clone() * gram[1][1].clone() - gram[0][1].clone() * gram[0][1].clone();
        let scale = gram[0][0].to_f64() * gram[1][1].to_f64();
        if det.near_zero(scale, tol) {
            return Err(Error::CollinearVertices);
        }
        Ok(t)
    }

    pub fn vertices(&self) -> &[Point<S>; 3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point<S> {
        &self.vertices[i]
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn to_f64(&self) -> Triangle<f64> {
        Triangle {
            vertices: self.vertices.clone().map(|v| v.to_f64()),
            tol: self.tol,
        }
    }

    /// `A₀ + A₁ + A₂`, the quantity every construction here is built from.
    pub fn vertex_sum(&self) -> Point<S> {
        Vector::sum(self.dim(), &self.vertices)
    }

    pub fn centroid(&self) -> Point<S> {
        self.vertex_sum().scale(&S::from_ratio(1, 3))
    }

    pub fn midpoint(&self, i: usize) -> Point<S> {
        let (j, k) = others(i);
        self.vertices[j].midpoint(&self.vertices[k])
    }

    /// `[M₀, M₁, M₂]` with `M_i = (A_j + A_k) / 2`.
    pub fn midpoints(&self) -> [Point<S>; 3] {
        [self.midpoint(0), self.midpoint(1), self.midpoint(2)]
    }

    /// The medial triangle `M₀M₁M₂`; never degenerate when `self` is not.
    pub fn medial(&self) -> Triangle<S> {
        Triangle {
            vertices: self.midpoints(),
            tol: self.tol,
        }
    }

    fn edges(&self) -> (Vector<S>, Vector<S>) {
        (
            &self.vertices[1] - &self.vertices[0],
            &self.vertices[2] - &self.vertices[0],
        )
    }

    fn gram(&self) -> Gram<S> {
        let (e1, e2) = self.edges();
        let a = e1.norm_sq();
        let b = e1.dot(&e2);
        let c = e2.norm_sq();
        ([[a, b.clone()], [b, c]], (e1, e2))
    }

    /// In-plane circumcenter `O` and squared circumradius.
    ///
    /// Writes `O = A₀ + s·e₁ + t·e₂` and solves the 2×2 perpendicular
    /// bisector system `(O − A₀)·e_k = ‖e_k‖²/2` by Cramer's rule.
    pub fn circumcenter_inplane(&self) -> (Point<S>, S) {
        let ([[a, b], [_, c]], (e1, e2)) = self.gram();
        let det = a.clone() * c.clone() - b.clone() * b.clone();
        let r1 = a.half();
        let r2 = c.half();
        let s = (r1.clone() * c - b.clone() * r2.clone()) / det.clone();
        let t = (a * r2 - b * r1) / det;
        let o = &(&self.vertices[0] + &e1.scale(&s)) + &e2.scale(&t);
        let r_sq = (&o - &self.vertices[0]).norm_sq();
        (o, r_sq)
    }

    /// Condition number of the bisector system's Gram matrix (f64).
    pub fn bisector_condition(&self) -> f64 {
        let ([[a, b], [_, c]], _) = self.gram();
        let (a, b, c) = (a.to_f64(), b.to_f64(), c.to_f64());
        let mid = (a + c) / 2.0;
        let rad = (((a - c) / 2.0).powi(2) + b * b).sqrt();
        let lo = mid - rad;
        if lo <= 0.0 {
            f64::INFINITY
        } else {
            (mid + rad) / lo
        }
    }

    /// Every point equidistant from the three vertices (Euclidean): the
    /// in-plane circumcenter plus the null space of the two edge vectors,
    /// an (n − 2)-dimensional affine subspace.
    pub fn circumlocus(&self) -> AffineSubspace<S> {
        let (o, _) = self.circumcenter_inplane();
        let (e1, e2) = self.edges();
        let basis = linalg::null_space(&[e1, e2], self.dim(), self.tol);
        AffineSubspace::new(o, basis, self.tol).expect("null-space basis is independent")
    }

    /// `‖P − A_i‖²` under `ns` for i = 0, 1, 2.
    pub fn squared_distances(&self, p: &Point<S>, ns: NormSpec) -> Result<[S; 3]> {
        check_dims(self.dim(), p)?;
        Ok([
            dist_sq(&(p - &self.vertices[0]), ns)?,
            dist_sq(&(p - &self.vertices[1]), ns)?,
            dist_sq(&(p - &self.vertices[2]), ns)?,
        ])
    }

    pub fn is_equidistant(&self, p: &Point<S>, ns: NormSpec) -> Result<bool> {
        let [d0, d1, d2] = self.squared_distances(p, ns)?;
        Ok(d0.near(&d1, self.tol) && d1.near(&d2, self.tol) && d0.near(&d2, self.tol))
    }

    /// The sphere centered at `p` through all three vertices.
    pub fn sphere_through(&self, p: &Point<S>, ns: NormSpec) -> Result<Sphere<S>> {
        let d = self.squared_distances(p, ns)?;
        if !self.is_equidistant(p, ns)? {
            return Err(Error::NotEquidistant {
                distances_sq: d.map(|x| x.to_string()),
            });
        }
        let [r_sq, _, _] = d;
        Ok(Sphere::new(p.clone(), r_sq, ns).with_anchor(self.vertices[0].clone()))
    }
}

/// `base + Σ params_i · basis_i` on a locus.
pub fn locus_sample<S: Scalar>(locus: &AffineSubspace<S>, params: &[S]) -> Result<Point<S>> {
    locus.point_at(params)
}

/// Sphere under a norm, stored by its squared radius so that Euclidean
/// spheres stay exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Sphere<S> {
    pub center: Point<S>,
    pub radius_sq: S,
    pub norm: NormSpec,
    /// A point known to lie on the sphere, used to generate exact samples.
    pub anchor: Option<Point<S>>,
}

impl<S: Scalar> Sphere<S> {
    pub fn new(center: Point<S>, radius_sq: S, norm: NormSpec) -> Self {
        Self {
            center,
            radius_sq,
            norm,
            anchor: None,
        }
    }

    pub fn with_anchor(mut self, anchor: Point<S>) -> Self {
        self.anchor = Some(anchor);
        self
    }

    pub fn radius(&self) -> Option<S> {
        self.radius_sq.sqrt()
    }

    /// Squared distance from the center under the sphere's norm.
    pub fn power(&self, x: &Point<S>) -> Result<S> {
        dist_sq(&(x - &self.center), self.norm)
    }

    pub fn contains(&self, x: &Point<S>, tol: Tolerance) -> Result<bool> {
        Ok(self.power(x)?.near(&self.radius_sq, tol))
    }

    /// Image under a homothety: center mapped, radius scaled by |λ|.
    pub fn map(&self, h: &crate::affine::Homothety<S>) -> Self {
        let l = h.ratio().clone();
        Self {
            center: h.apply(&self.center),
            radius_sq: self.radius_sq.clone() * l.clone() * l,
            norm: self.norm,
            anchor: self.anchor.as_ref().map(|a| h.apply(a)),
        }
    }

    /// Deterministic points on the sphere.
    ///
    /// Euclidean spheres with an anchor use the second intersection of the
    /// line through the anchor with a pseudo-random integer direction `d`:
    /// `X = X₀ − 2((X₀ − c)·d / d·d) d`, which keeps rational inputs
    /// rational. Other norms scale a direction radially, which is exact for
    /// the taxicab and max norms on rationals.
    pub fn samples(&self, count: usize, seed: u64) -> Result<Vec<Point<S>>> {
        let n = self.center.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        let radius = if self.norm.is_euclidean() && self.anchor.is_some() {
            None
        } else {
            Some(
                self.radius()
                    .ok_or_else(|| Error::NormNotExact("irrational sphere radius".into()))?,
            )
        };
        while out.len() < count {
            let d: Vector<S> = Vector::new((0..n).map(|_| S::from_int(rng.gen_range(-6..=6))).collect());
            if d.is_zero() {
                continue;
            }
            let x = match (&radius, &self.anchor) {
                (None, Some(anchor)) => {
                    let offset = anchor - &self.center;
                    let k = S::from_int(2) * offset.dot(&d) / d.norm_sq();
                    anchor - &d.scale(&k)
                }
                (Some(r), _) => {
                    let len = norm(&d, self.norm)?;
                    &self.center + &d.scale(&(r.clone() / len))
                }
                (None, None) => unreachable!(),
            };
            out.push(x);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Vector<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn worked() -> Triangle<Rational> {
        Triangle::new(
            Q::from_ints(&[0, 0, 0]),
            Q::from_ints(&[2, 0, 0]),
            Q::from_ints(&[0, 2, 0]),
        )
        .unwrap()
    }

    fn right() -> Triangle<Rational> {
        Triangle::new(Q::from_ints(&[0, 0]), Q::from_ints(&[1, 0]), Q::from_ints(&[0, 1])).unwrap()
    }

    #[test]
    fn construction_rejects_degenerate_input() {
        let collinear = Triangle::new(Q::from_ints(&[0, 0]), Q::from_ints(&[1, 1]), Q::from_ints(&[3, 3]));
        assert_eq!(collinear, Err(Error::CollinearVertices));
        let repeated = Triangle::new(Q::from_ints(&[0, 0]), Q::from_ints(&[1, 1]), Q::from_ints(&[0, 0]));
        assert_eq!(repeated, Err(Error::RepeatedPoints(0, 2)));
        let mixed = Triangle::new(Q::from_ints(&[0, 0]), Q::from_ints(&[1, 1, 0]), Q::from_ints(&[0, 1]));
        assert!(matches!(mixed, Err(Error::DimensionMismatch { .. })));
        let line = Triangle::new(Q::from_ints(&[0]), Q::from_ints(&[1]), Q::from_ints(&[2]));
        assert_eq!(line, Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(right().centroid(), Q::from_ratios(&[(1, 3), (1, 3)]));
        assert_eq!(worked().centroid(), Q::from_ratios(&[(2, 3), (2, 3), (0, 1)]));
        let shift = Q::from_ints(&[5, -1, 2]);
        let t = worked();
        let moved = Triangle::new(t.vertex(0) + &shift, t.vertex(1) + &shift, t.vertex(2) + &shift).unwrap();
        assert_eq!(moved.centroid(), &t.centroid() + &shift);
    }

    #[test]
    fn midpoint_examples() {
        let [m0, m1, m2] = worked().midpoints();
        assert_eq!(m0, Q::from_ints(&[1, 1, 0]));
        assert_eq!(m1, Q::from_ints(&[0, 1, 0]));
        assert_eq!(m2, Q::from_ints(&[1, 0, 0]));
        assert_eq!(worked().medial().medial().centroid(), worked().centroid());
    }

    #[test]
    fn midpoints_are_homothetic_images_of_vertices() {
        let t = worked();
        let h = crate::affine::Homothety::new(t.centroid(), q(-1, 2)).unwrap();
        for i in 0..3 {
            assert_eq!(t.midpoint(i), h.apply(t.vertex(i)));
        }
    }

    #[test]
    fn circumcenter_examples() {
        let (o, r_sq) = right().circumcenter_inplane();
        assert_eq!(o, Q::from_ratios(&[(1, 2), (1, 2)]));
        assert_eq!(r_sq, q(1, 2));

        let (o, r_sq) = worked().circumcenter_inplane();
        assert_eq!(o, Q::from_ints(&[1, 1, 0]));
        assert_eq!(r_sq, q(2, 1));

        let h = 3f64.sqrt() / 2.0;
        let eq = Triangle::new(
            Vector::new(vec![1.0, 0.0]),
            Vector::new(vec![-0.5, h]),
            Vector::new(vec![-0.5, -h]),
        )
        .unwrap();
        let (o, r_sq) = eq.circumcenter_inplane();
        assert!(o.near(&Vector::zeros(2), Tolerance::default()));
        assert!((r_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circumlocus_examples() {
        let plane = right().circumlocus();
        assert_eq!(plane.dim(), 0);
        assert_eq!(plane.base(), &Q::from_ratios(&[(1, 2), (1, 2)]));

        // oracle: |X|² = |X − (2,0,0)|² forces x = 1, |X|² = |X − (0,2,0)|² forces y = 1
        let line = worked().circumlocus();
        assert_eq!(line.dim(), 1);
        for s in -3..=3 {
            assert!(line.contains(&Q::from_ints(&[1, 1, s])));
        }
        assert!(!line.contains(&Q::from_ints(&[1, 2, 0])));
        assert!(line.contains(&Q::from_ints(&[1, 1, -3])));
    }

    #[test]
    fn locus_samples() {
        let line = worked().circumlocus();
        assert_eq!(locus_sample(&line, &[q(0, 1)]).unwrap(), Q::from_ints(&[1, 1, 0]));
        let p = locus_sample(&line, &[q(1, 1)]).unwrap();
        assert_eq!(p.coords()[2].clone().abs(), q(1, 1));
        assert!(worked().is_equidistant(&p, NormSpec::Euclidean).unwrap());
    }

    #[test]
    fn sphere_through_examples() {
        let t = worked();
        let s = t
            .sphere_through(&Q::from_ints(&[1, 1, 1]), NormSpec::Euclidean)
            .unwrap();
        assert_eq!(s.radius_sq, q(3, 1));

        let (o, r_sq) = t.circumcenter_inplane();
        assert_eq!(t.sphere_through(&o, NormSpec::Euclidean).unwrap().radius_sq, r_sq);

        let err = t
            .sphere_through(&Q::from_ints(&[1, 2, 0]), NormSpec::Euclidean)
            .unwrap_err();
        assert_eq!(
            err,
            Error::NotEquidistant {
                distances_sq: ["5".into(), "5".into(), "1".into()]
            }
        );
    }

    #[test]
    fn exact_sphere_samples_lie_on_sphere() {
        let t = worked();
        let s = t
            .sphere_through(&Q::from_ints(&[1, 1, 1]), NormSpec::Euclidean)
            .unwrap();
        for x in s.samples(32, 7).unwrap() {
            assert!(s.contains(&x, Tolerance::default()).unwrap());
        }
        let l1 = Sphere::new(Q::from_ints(&[0, -1]), q(4, 1), NormSpec::p(1.0).unwrap());
        for x in l1.samples(32, 7).unwrap() {
            assert!(l1.contains(&x, Tolerance::default()).unwrap());
        }
    }

    #[test]
    fn bisector_condition_grows_with_flatness() {
        let good = right().to_f64().bisector_condition();
        let flat = Triangle::new(
            Vector::new(vec![0.0, 0.0]),
            Vector::new(vec![1.0, 0.0]),
            Vector::new(vec![0.5, 1e-4]),
        )
        .unwrap()
        .bisector_condition();
        assert!(good < 10.0);
        assert!(flat > 1e8);
    }
}
