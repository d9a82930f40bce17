//! Orthocentric systems in R^n.
//!
//! Four points `A₀..A₃` form an orthocentric system when some point `P`
//! equidistant from `A₀, A₁, A₂` satisfies `A₃ = A₀ + A₁ + A₂ − 2P`. Since
//! `P` is then forced to be `(A₀ + A₁ + A₂ − A₃) / 2`, recognition is a
//! single equidistance test.

use crate::affine::{collinear, Homothety};
use crate::error::{Error, Result};
use crate::linalg;
use crate::norm::{dist_sq, isosceles_orthogonal, NormSpec};
use crate::orthocenter::{AffineFrame, OrthoConfig};
use crate::scalar::{Scalar, Tolerance};
use crate::triangle::Triangle;
use crate::vector::{check_dims, Point, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct OrthocentricSystem<S> {
    points: [Point<S>; 4],
    witness: Point<S>,
    r_sq: S,
    norm: NormSpec,
    tol: Tolerance,
}

/// Validates `points` as an orthocentric system with the last point in the
/// role of `A₃`.
pub fn is_orthocentric<S: Scalar>(points: &[Point<S>], ns: NormSpec, tol: Tolerance) -> Result<OrthocentricSystem<S>> {
    if points.len() != 4 {
        return Err(Error::TooFewPoints {
            needed: 4,
            got: points.len(),
        });
    }
    let n = points[0].dim();
    for p in points {
        check_dims(n, p)?;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if points[i].near(&points[j], tol) {
                return Err(Error::RepeatedPoints(i, j));
            }
        }
    }
    let t = Triangle::with_tolerance(points[0].clone(), points[1].clone(), points[2].clone(), tol)?;
    let witness = (&t.vertex_sum() - &points[3]).scale(&S::from_ratio(1, 2));
    let sphere = t.sphere_through(&witness, ns)?;
    Ok(OrthocentricSystem {
        points: [
            points[0].clone(),
            points[1].clone(),
            points[2].clone(),
            points[3].clone(),
        ],
        witness,
        r_sq: sphere.radius_sq,
        norm: ns,
        tol,
    })
}

impl<S: Scalar> OrthocentricSystem<S> {
    pub fn points(&self) -> &[Point<S>; 4] {
        &self.points
    }

    /// The equidistant point `P` of the first three points.
    pub fn witness(&self) -> &Point<S> {
        &self.witness
    }

    pub fn r_sq(&self) -> &S {
        &self.r_sq
    }

    pub fn norm(&self) -> NormSpec {
        self.norm
    }

    /// Re-validates with point `apex` moved into the `A₃` role.
    pub fn with_apex(&self, apex: usize) -> Result<Self> {
        let mut order: Vec<Point<S>> = (0..4).filter(|&i| i != apex).map(|i| self.points[i].clone()).collect();
        order.push(self.points[apex].clone());
        is_orthocentric(&order, self.norm, self.tol)
    }

    /// Maps all four points and the witness; the image validates again.
    pub fn homothety_image(&self, h: &Homothety<S>) -> Result<Self> {
        let mapped = h.apply_all(&self.points);
        let image = is_orthocentric(&mapped, self.norm, self.tol)?;
        debug_assert!(image.witness.near(&h.apply(&self.witness), self.tol));
        Ok(image)
    }

    /// Checks the three pairings of opposite edges.
    pub fn opposite_orthogonality(&self) -> Result<Vec<PairingCheck<S>>> {
        const PAIRINGS: [((usize, usize), (usize, usize)); 3] = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
        let four_r_sq = self.r_sq.clone() * S::from_int(4);
        PAIRINGS
            .iter()
            .map(|&((i, j), (k, l))| {
                let u = &self.points[j] - &self.points[i];
                let v = &self.points[l] - &self.points[k];
                let minus_sq = dist_sq(&(&u - &v), self.norm)?;
                let plus_sq = dist_sq(&(&u + &v), self.norm)?;
                let isosceles = isosceles_orthogonal(&u, &v, self.norm, self.tol)?;
                let dot_zero = self.norm.is_euclidean().then(|| {
                    let scale = u.norm_sq().to_f64().sqrt() * v.norm_sq().to_f64().sqrt();
                    u.dot(&v).near_zero(scale, self.tol)
                });
                let equals_two_r = minus_sq.near(&four_r_sq, self.tol) && plus_sq.near(&four_r_sq, self.tol);
                Ok(PairingCheck {
                    edges: [(i, j), (k, l)],
                    isosceles,
                    dot_zero,
                    minus_sq,
                    plus_sq,
                    equals_two_r,
                })
            })
            .collect()
    }

    /// Whether the four points span a 3-dimensional affine hull.
    pub fn affinely_independent(&self) -> bool {
        let diffs: Vec<Vector<S>> = self.points[1..].iter().map(|p| p - &self.points[0]).collect();
        linalg::rank(&diffs, self.tol) == 3
    }
}

/// One pairing of opposite edges `A_iA_j`, `A_kA_l` with `u = A_j − A_i`,
/// `v = A_l − A_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingCheck<S> {
    pub edges: [(usize, usize); 2],
    /// `‖u − v‖ = ‖u + v‖`.
    pub isosceles: bool,
    /// `u · v = 0`, Euclidean norm only.
    pub dot_zero: Option<bool>,
    pub minus_sq: S,
    pub plus_sq: S,
    /// Both combined norms equal `2r`.
    pub equals_two_r: bool,
}

impl<S> PairingCheck<S> {
    pub fn holds(&self) -> bool {
        self.isosceles && self.dot_zero.unwrap_or(true) && self.equals_two_r
    }
}

pub fn opposite_orthogonality<S: Scalar>(sys: &OrthocentricSystem<S>) -> Result<Vec<PairingCheck<S>>> {
    sys.opposite_orthogonality()
}

pub fn homothety_image<S: Scalar>(sys: &OrthocentricSystem<S>, h: &Homothety<S>) -> Result<OrthocentricSystem<S>> {
    sys.homothety_image(h)
}

/// Names of the five systems returned by [`derived_systems`], in order.
pub const DERIVED_SYSTEM_NAMES: [&str; 5] = [
    "vertices_with_orthocenter",
    "antitriangle_with_p",
    "midpoints_with_p",
    "antitriangle_midpoints_with_orthocenter",
    "system_centroids_with_centroid",
];

/// The five orthocentric systems attached to a triangle and equidistant
/// point `P`: `{A_i, H_P}`, `{B_i, P}`, `{M_i, P}`, `{N_i, H_P}` and
/// `{G_i, G}`. Each one is validated.
pub fn derived_systems<S: Scalar>(t: &Triangle<S>, p: &Point<S>, ns: NormSpec) -> Result<[OrthocentricSystem<S>; 5]> {
    let cfg = OrthoConfig::new(t.clone(), p.clone(), ns)?;
    derived_from_config(&cfg)
}

pub fn derived_from_config<S: Scalar>(cfg: &OrthoConfig<S>) -> Result<[OrthocentricSystem<S>; 5]> {
    let [a, b, c, d, e] = derived_point_sets(cfg.frame()).map(|pts| is_orthocentric(&pts, cfg.norm(), cfg.tolerance()));
    Ok([a?, b?, c?, d?, e?])
}

/// Point sets of the five derived systems, in [`DERIVED_SYSTEM_NAMES`]
/// order, each with the distinguished point last.
pub fn derived_point_sets<S: Scalar>(f: &AffineFrame<S>) -> [[Point<S>; 4]; 5] {
    let with = |three: &[Point<S>; 3], fourth: &Point<S>| {
        [three[0].clone(), three[1].clone(), three[2].clone(), fourth.clone()]
    };
    [
        with(f.triangle.vertices(), &f.h_p),
        with(&f.anti, &f.p),
        with(&f.midpoints, &f.p),
        with(&f.anti_midpoints, &f.h_p),
        with(&f.system_centroids, &f.centroid),
    ]
}

/// Intersects the four altitudes of the tetrahedron `A₀A₁A₂A₃` (Euclidean).
///
/// Altitude `i` runs through `A_i` orthogonally to the opposite face,
/// inside the tetrahedron's 3-dimensional affine hull. The first two
/// altitudes are intersected exactly and the remaining two are tested for
/// membership.
pub fn tetrahedron_altitudes_concur<S: Scalar>(points: &[Point<S>; 4], tol: Tolerance) -> Result<Point<S>> {
    let n = points[0].dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    for p in points {
        check_dims(n, p)?;
    }
    let edges: Vec<Vector<S>> = points[1..].iter().map(|p| p - &points[0]).collect();
    if linalg::rank(&edges, tol) != 3 {
        return Err(Error::CoplanarTetrahedron);
    }
    let directions: Vec<Vector<S>> = (0..4)
        .map(|i| {
            let face: Vec<&Point<S>> = (0..4).filter(|&j| j != i).map(|j| &points[j]).collect();
            let f1 = face[1] - face[0];
            let f2 = face[2] - face[0];
            let rows = [
                Vector::new(edges.iter().map(|e| f1.dot(e)).collect()),
                Vector::new(edges.iter().map(|e| f2.dot(e)).collect()),
            ];
            let coeffs = linalg::null_space(&rows, 3, tol);
            let c = coeffs.first().expect("face normal exists in a 3-dimensional hull");
            edges
                .iter()
                .zip(c.iter())
                .fold(Vector::zeros(n), |acc, (e, k)| &acc + &e.scale(k))
        })
        .collect();

    // A₀ + s·w₀ = A₁ + t·w₁
    let rhs = &points[1] - &points[0];
    let a: Vec<Vec<S>> = (0..n)
        .map(|r| vec![directions[0][r].clone(), -directions[1][r].clone()])
        .collect();
    let st = linalg::solve(&a, rhs.coords(), tol).ok_or(Error::AltitudesNotConcurrent)?;
    let x = &points[0] + &directions[0].scale(&st[0]);
    for i in 2..4 {
        let along = &points[i] + &directions[i];
        if !collinear(&[points[i].clone(), along, x.clone()], tol)? {
            return Err(Error::AltitudesNotConcurrent);
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Vector<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn worked_system() -> [Q; 4] {
        [
            Q::from_ints(&[0, 0, 0]),
            Q::from_ints(&[2, 0, 0]),
            Q::from_ints(&[0, 2, 0]),
            Q::from_ints(&[0, 0, -2]),
        ]
    }

    fn l1_system() -> [Q; 4] {
        [
            Q::from_ints(&[1, 0]),
            Q::from_ints(&[-1, 0]),
            Q::from_ints(&[0, 1]),
            Q::from_ints(&[0, 3]),
        ]
    }

    #[test]
    fn recognition_examples() {
        let sys = is_orthocentric(&worked_system(), NormSpec::Euclidean, tol()).unwrap();
        assert_eq!(sys.witness(), &Q::from_ints(&[1, 1, 1]));
        assert_eq!(sys.r_sq(), &q(3, 1));

        let right = [
            Q::from_ints(&[0, 0]),
            Q::from_ints(&[1, 0]),
            Q::from_ints(&[0, 1]),
            Q::from_ints(&[0, 0]),
        ];
        assert_eq!(
            is_orthocentric(&right, NormSpec::Euclidean, tol()),
            Err(Error::RepeatedPoints(0, 3))
        );

        let l1 = is_orthocentric(&l1_system(), NormSpec::p(1.0).unwrap(), tol()).unwrap();
        assert_eq!(l1.witness(), &Q::from_ints(&[0, -1]));
        assert_eq!(l1.r_sq(), &q(4, 1));
        // under the Euclidean norm the same points are not orthocentric
        assert!(matches!(
            is_orthocentric(&l1_system(), NormSpec::Euclidean, tol()),
            Err(Error::NotEquidistant { .. })
        ));
    }

    #[test]
    fn collinear_base_rejected() {
        let pts = [
            Q::from_ints(&[0, 0]),
            Q::from_ints(&[1, 1]),
            Q::from_ints(&[2, 2]),
            Q::from_ints(&[5, 0]),
        ];
        assert_eq!(
            is_orthocentric(&pts, NormSpec::Euclidean, tol()),
            Err(Error::CollinearVertices)
        );
    }

    #[test]
    fn every_apex_validates_with_same_radius() {
        let sys = is_orthocentric(&worked_system(), NormSpec::Euclidean, tol()).unwrap();
        for apex in 0..4 {
            let other = sys.with_apex(apex).unwrap();
            assert_eq!(other.r_sq(), sys.r_sq());
        }
        let l1 = is_orthocentric(&l1_system(), NormSpec::p(1.0).unwrap(), tol()).unwrap();
        for apex in 0..4 {
            assert_eq!(l1.with_apex(apex).unwrap().r_sq(), l1.r_sq());
        }
    }

    #[test]
    fn derived_systems_worked_instance() {
        let t = Triangle::new(
            Q::from_ints(&[0, 0, 0]),
            Q::from_ints(&[2, 0, 0]),
            Q::from_ints(&[0, 2, 0]),
        )
        .unwrap();
        let p = Q::from_ints(&[1, 1, 1]);
        let systems = derived_systems(&t, &p, NormSpec::Euclidean).unwrap();
        assert_eq!(systems[0].points()[3], Q::from_ints(&[0, 0, -2]));
        assert_eq!(systems[2].witness(), &Q::from_ratios(&[(1, 2), (1, 2), (-1, 2)]));
        assert_eq!(systems[2].r_sq(), &q(3, 4));

        let g = t.centroid();
        let to_mid = Homothety::new(g, q(-1, 2)).unwrap();
        assert_eq!(to_mid.apply_all(systems[0].points()), systems[2].points().to_vec());

        let q_p = Q::from_ratios(&[(1, 2), (1, 2), (-1, 2)]);
        let to_centroids = Homothety::new(q_p, q(-1, 3)).unwrap();
        assert_eq!(
            to_centroids.apply_all(systems[0].points()),
            systems[4].points().to_vec()
        );
    }

    #[test]
    fn homothety_image_examples() {
        let sys = is_orthocentric(&worked_system(), NormSpec::Euclidean, tol()).unwrap();
        let origin = Q::from_ints(&[0, 0, 0]);
        let id = Homothety::new(origin.clone(), q(1, 1)).unwrap();
        assert_eq!(sys.homothety_image(&id).unwrap(), sys);

        let h = Homothety::new(origin.clone(), q(-2, 1)).unwrap();
        let image = sys.homothety_image(&h).unwrap();
        assert_eq!(image.r_sq(), &q(12, 1));
        assert_eq!(image.witness(), &Q::from_ints(&[-2, -2, -2]));

        let refl = Homothety::new(Q::from_ints(&[3, 1, 4]), q(-1, 1)).unwrap();
        assert_eq!(sys.homothety_image(&refl).unwrap().r_sq(), sys.r_sq());
        assert_eq!(Homothety::new(origin, q(0, 1)), Err(Error::ZeroRatio));
    }

    #[test]
    fn opposite_edges_worked_euclidean() {
        let sys = is_orthocentric(&worked_system(), NormSpec::Euclidean, tol()).unwrap();
        let checks = sys.opposite_orthogonality().unwrap();
        assert_eq!(checks.len(), 3);
        // first pairing: u = (2,0,0), v = (0,−2,−2)
        assert_eq!(checks[0].minus_sq, q(12, 1));
        assert_eq!(checks[0].plus_sq, q(12, 1));
        assert!(checks.iter().all(PairingCheck::holds));
        assert!(checks.iter().all(|c| c.dot_zero == Some(true)));
    }

    #[test]
    fn opposite_edges_l1() {
        let sys = is_orthocentric(&l1_system(), NormSpec::p(1.0).unwrap(), tol()).unwrap();
        let checks = sys.opposite_orthogonality().unwrap();
        // u = A₁ − A₀ = (−2,0), v = A₃ − A₂ = (0,2): both combined norms are 4 = 2r
        assert_eq!(checks[0].minus_sq, q(16, 1));
        assert_eq!(checks[0].plus_sq, q(16, 1));
        assert!(checks.iter().all(PairingCheck::holds));
        assert!(checks.iter().all(|c| c.dot_zero.is_none()));
    }

    #[test]
    fn tetrahedron_examples() {
        let x = tetrahedron_altitudes_concur(&worked_system(), tol()).unwrap();
        assert_eq!(x, Q::from_ints(&[0, 0, 0]));

        let regular = [
            Q::from_ints(&[1, 1, 1]),
            Q::from_ints(&[1, -1, -1]),
            Q::from_ints(&[-1, 1, -1]),
            Q::from_ints(&[-1, -1, 1]),
        ];
        assert_eq!(
            tetrahedron_altitudes_concur(&regular, tol()).unwrap(),
            Q::from_ints(&[0, 0, 0])
        );

        let generic = [
            Q::from_ints(&[0, 0, 0]),
            Q::from_ints(&[3, 0, 0]),
            Q::from_ints(&[1, 2, 0]),
            Q::from_ints(&[2, 1, 5]),
        ];
        assert_eq!(
            tetrahedron_altitudes_concur(&generic, tol()),
            Err(Error::AltitudesNotConcurrent)
        );

        let flat = [
            Q::from_ints(&[0, 0, 0]),
            Q::from_ints(&[1, 0, 0]),
            Q::from_ints(&[0, 1, 0]),
            Q::from_ints(&[1, 1, 0]),
        ];
        assert_eq!(
            tetrahedron_altitudes_concur(&flat, tol()),
            Err(Error::CoplanarTetrahedron)
        );
    }

    #[test]
    fn tetrahedron_in_four_dimensions() {
        // the worked system lifted into the hyperplane w = 1 of R^4
        let lifted = worked_system().map(|p| {
            let mut c = p.into_coords();
            c.push(q(1, 1));
            Q::new(c)
        });
        let x = tetrahedron_altitudes_concur(&lifted, tol()).unwrap();
        assert_eq!(x, Q::from_ints(&[0, 0, 0, 1]));
    }
}
