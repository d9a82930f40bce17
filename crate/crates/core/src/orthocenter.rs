//! The orthocenter associated with an equidistant point.
//!
//! For a triangle `A₀A₁A₂` and a point `P` equidistant from its vertices
//! (radius `r`), every object below is an affine expression in the
//! vertices and `P`:
//!
//! | object            | formula                         |
//! |-------------------|---------------------------------|
//! | `H_P`             | `A₀ + A₁ + A₂ − 2P`             |
//! | `Q_P`             | `(A₀ + A₁ + A₂ − P) / 2`        |
//! | `B_i`             | `A_j + A_k − P`                 |
//! | `N_i`             | midpoint of `B_j B_k`           |
//! | sphere `𝒮`        | center `P`, radius `r`          |
//! | spheres `𝒮_i`     | center `B_i`, radius `r`        |
//! | Feuerbach `𝒮_M`   | center `Q_P`, radius `r/2`      |
//! | `𝒮_H`             | center `H_P`, radius `r`        |
//!
//! With `P = O`, the in-plane circumcenter, `H_P` is the classical
//! orthocenter `H`.

use crate::affine::{collinear, cross_ratio, point_reflect, AffineSubspace, Homothety};
use crate::error::{Error, Result};
use crate::norm::{dist_sq, NormSpec};
use crate::scalar::{Scalar, Tolerance};
use crate::triangle::{others, Sphere, Triangle};
use crate::vector::{check_dims, Point};

/// Number of sampled sphere points used by the homothety-image checks.
pub const DEFAULT_SPHERE_SAMPLES: usize = 16;

/// Every point built from a triangle and a point `P` by affine formulas.
///
/// Nothing here depends on a norm or on `P` being equidistant, so the same
/// frame serves exact affine checks of a numerically found `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFrame<S> {
    pub triangle: Triangle<S>,
    pub p: Point<S>,
    pub centroid: Point<S>,
    /// `H_P`.
    pub h_p: Point<S>,
    /// `Q_P`.
    pub q_p: Point<S>,
    /// `M_i`, midpoint of the side opposite `A_i`.
    pub midpoints: [Point<S>; 3],
    /// `B_i`.
    pub anti: [Point<S>; 3],
    /// `N_i`, midpoint of the side opposite `B_i`.
    pub anti_midpoints: [Point<S>; 3],
    /// `G_i`, centroid of `H_P A_j A_k`.
    pub system_centroids: [Point<S>; 3],
}

impl<S: Scalar> AffineFrame<S> {
    pub fn new(triangle: Triangle<S>, p: Point<S>) -> Result<Self> {
        check_dims(triangle.dim(), &p)?;
        let sum = triangle.vertex_sum();
        let two = S::from_int(2);
        let h_p = &sum - &p.scale(&two);
        let q_p = (&sum - &p).scale(&S::from_ratio(1, 2));
        let anti = [0, 1, 2].map(|i| {
            let (j, k) = others(i);
            &(triangle.vertex(j) + triangle.vertex(k)) - &p
        });
        let anti_midpoints = [0, 1, 2].map(|i| {
            let (j, k) = others(i);
            anti[j].midpoint(&anti[k])
        });
        let third = S::from_ratio(1, 3);
        let system_centroids = [0, 1, 2].map(|i| {
            let (j, k) = others(i);
            (&(&h_p + triangle.vertex(j)) + triangle.vertex(k)).scale(&third)
        });
        Ok(Self {
            centroid: triangle.centroid(),
            midpoints: triangle.midpoints(),
            triangle,
            p,
            h_p,
            q_p,
            anti,
            anti_midpoints,
            system_centroids,
        })
    }

    pub fn tolerance(&self) -> Tolerance {
        self.triangle.tolerance()
    }
}

#[derive(Clone, Debug)]
pub struct OrthoConfig<S> {
    frame: AffineFrame<S>,
    norm: NormSpec,
    r_sq: S,
    classical: Option<Classical<S>>,
}

/// In-plane circumcenter data, available for the Euclidean norm.
#[derive(Clone, Debug, PartialEq)]
pub struct Classical<S> {
    pub circumcenter: Point<S>,
    pub circumradius_sq: S,
    pub orthocenter: Point<S>,
}

impl<S: Scalar> OrthoConfig<S> {
    /// Fails with [`Error::NotEquidistant`] unless `p` is equidistant from
    /// the vertices under `ns`.
    pub fn new(triangle: Triangle<S>, p: Point<S>, ns: NormSpec) -> Result<Self> {
        let sphere = triangle.sphere_through(&p, ns)?;
        let classical = ns.is_euclidean().then(|| {
            let (o, r_sq) = triangle.circumcenter_inplane();
            Classical {
                orthocenter: &triangle.vertex_sum() - &o.scale(&S::from_int(2)),
                circumcenter: o,
                circumradius_sq: r_sq,
            }
        });
        Ok(Self {
            frame: AffineFrame::new(triangle, p)?,
            norm: ns,
            r_sq: sphere.radius_sq,
            classical,
        })
    }

    pub fn frame(&self) -> &AffineFrame<S> {
        &self.frame
    }

    pub fn triangle(&self) -> &Triangle<S> {
        &self.frame.triangle
    }

    pub fn p(&self) -> &Point<S> {
        &self.frame.p
    }

    pub fn norm(&self) -> NormSpec {
        self.norm
    }

    pub fn tolerance(&self) -> Tolerance {
        self.frame.tolerance()
    }

    /// Squared radius of the sphere through the vertices centered at `P`.
    pub fn r_sq(&self) -> &S {
        &self.r_sq
    }

    pub fn centroid(&self) -> &Point<S> {
        &self.frame.centroid
    }

    /// `H_P = A₀ + A₁ + A₂ − 2P`.
    pub fn orthocenter(&self) -> &Point<S> {
        &self.frame.h_p
    }

    /// `Q_P = (A₀ + A₁ + A₂ − P) / 2`.
    pub fn symmetry_center(&self) -> &Point<S> {
        &self.frame.q_p
    }

    pub fn midpoints(&self) -> &[Point<S>; 3] {
        &self.frame.midpoints
    }

    /// Antitriangle `B₀B₁B₂`.
    pub fn antitriangle(&self) -> &[Point<S>; 3] {
        &self.frame.anti
    }

    /// Side midpoints `N₀N₁N₂` of the antitriangle.
    pub fn antitriangle_midpoints(&self) -> &[Point<S>; 3] {
        &self.frame.anti_midpoints
    }

    pub fn classical(&self) -> Option<&Classical<S>> {
        self.classical.as_ref()
    }

    /// Centroids `G_i` of the triangles obtained by replacing `A_i` with
    /// `H_P`: `(A_i + 2A_j + 2A_k − 2P) / 3`.
    pub fn system_centroids(&self) -> &[Point<S>; 3] {
        &self.frame.system_centroids
    }

    fn dist_sq(&self, a: &Point<S>, b: &Point<S>) -> S {
        dist_sq(&(a - b), self.norm).expect("norm validated at construction")
    }

    fn near(&self, a: &S, b: &S) -> bool {
        a.near(b, self.tolerance())
    }

    /// `𝒮`: center `P` through the vertices.
    pub fn sphere(&self) -> Sphere<S> {
        Sphere::new(self.frame.p.clone(), self.r_sq.clone(), self.norm)
            .with_anchor(self.frame.triangle.vertex(0).clone())
    }

    /// `𝒮_i`: the reflection of `𝒮` in `M_i`, centered at `B_i`.
    pub fn reflected_spheres(&self) -> [Sphere<S>; 3] {
        [0, 1, 2].map(|i| {
            let (j, _) = others(i);
            Sphere::new(self.frame.anti[i].clone(), self.r_sq.clone(), self.norm)
                .with_anchor(self.frame.triangle.vertex(j).clone())
        })
    }

    /// `𝒮_M`: center `Q_P`, radius `r/2`.
    pub fn feuerbach_sphere(&self) -> Sphere<S> {
        Sphere::new(
            self.frame.q_p.clone(),
            self.r_sq.clone() * S::from_ratio(1, 4),
            self.norm,
        )
        .with_anchor(self.frame.midpoints[0].clone())
    }

    /// `𝒮_H`: center `H_P`, radius `r`.
    pub fn orthocenter_sphere(&self) -> Sphere<S> {
        // H_P + (A₀ − P) lies on it
        let anchor = &self.frame.h_p + &(self.frame.triangle.vertex(0) - &self.frame.p);
        Sphere::new(self.frame.h_p.clone(), self.r_sq.clone(), self.norm).with_anchor(anchor)
    }

    /// `‖B_i − X‖² = r²` for all three reflected spheres.
    pub fn spheres_concur_at(&self, x: &Point<S>) -> bool {
        self.frame
            .anti
            .iter()
            .all(|b| self.near(&self.dist_sq(b, x), &self.r_sq))
    }

    /// Each `𝒮_i` passes through the two vertices of side `a_i`.
    pub fn spheres_pass_through_sides(&self) -> bool {
        (0..3).all(|i| {
            let (j, k) = others(i);
            [j, k].iter().all(|&v| {
                self.near(
                    &self.dist_sq(&self.frame.anti[i], self.frame.triangle.vertex(v)),
                    &self.r_sq,
                )
            })
        })
    }

    /// `midpoint(A_i, B_i) = Q_P` and `B_i = 𝒮_{M_i}(P)` for all `i`.
    pub fn symmetry_center_holds(&self) -> bool {
        let tol = self.tolerance();
        (0..3).all(|i| {
            self.frame
                .triangle
                .vertex(i)
                .midpoint(&self.frame.anti[i])
                .near(&self.frame.q_p, tol)
                && point_reflect(&self.frame.midpoints[i], &self.frame.p).near(&self.frame.anti[i], tol)
        })
    }

    /// `P`, `G`, `H_P` collinear with `H_P − G = 2(G − P)`.
    pub fn euler(&self) -> EulerCheck<S> {
        let tol = self.tolerance();
        let g = &self.frame.centroid;
        let identity = (&self.frame.h_p - g).near(&(g - &self.frame.p).scale(&S::from_int(2)), tol);
        let collinear = collinear(&[self.frame.p.clone(), g.clone(), self.frame.h_p.clone()], tol).unwrap_or(false);
        let degenerate = self.frame.p.near(g, tol);
        let line = (!degenerate).then(|| {
            AffineSubspace::new(self.frame.p.clone(), vec![&self.frame.h_p - &self.frame.p], tol)
                .expect("nonzero direction")
        });
        EulerCheck {
            centroid: g.clone(),
            identity,
            collinear,
            degenerate,
            line,
        }
    }

    /// The six side midpoints `M_i`, `N_i` at squared distance `r²/4` from
    /// `Q_P`.
    pub fn feuerbach_contains_midpoints(&self) -> bool {
        let quarter = self.r_sq.clone() * S::from_ratio(1, 4);
        self.frame
            .midpoints
            .iter()
            .chain(self.frame.anti_midpoints.iter())
            .all(|m| self.near(&self.dist_sq(m, &self.frame.q_p), &quarter))
    }

    /// Midpoints of `H_P X` for `X ∈ 𝒮` and of `P Y` for `Y ∈ 𝒮_H` lie on
    /// the Feuerbach sphere. Sample points come from [`Sphere::samples`].
    pub fn feuerbach_contains_homothety_images(&self, samples: usize, seed: u64) -> Result<bool> {
        let target = self.feuerbach_sphere();
        let tol = self.tolerance();
        let half = S::from_ratio(1, 2);
        let from_h = Homothety::new(self.frame.h_p.clone(), half.clone())?;
        let from_p = Homothety::new(self.frame.p.clone(), half)?;
        for x in self.sphere().samples(samples, seed)? {
            if !target.contains(&from_h.apply(&x), tol)? {
                return Ok(false);
            }
        }
        for y in self.orthocenter_sphere().samples(samples, seed.wrapping_add(1))? {
            if !target.contains(&from_p.apply(&y), tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ratio and cross-ratio form of the harmonic range `P, Q_P; G, H_P`.
    pub fn harmonic(&self) -> Result<HarmonicCheck<S>> {
        let tol = self.tolerance();
        let g = &self.frame.centroid;
        if self.frame.p.near(g, tol) {
            return Err(Error::DegenerateEulerLine);
        }
        let pg = self.dist_sq(&self.frame.p, g);
        let gq = self.dist_sq(g, &self.frame.q_p);
        let ph = self.dist_sq(&self.frame.p, &self.frame.h_p);
        let hq = self.dist_sq(&self.frame.h_p, &self.frame.q_p);
        let k = |n: i64| S::from_int(n);
        let lengths_hold = self.near(&(pg.clone() * k(9)), &ph)
            && self.near(&(gq.clone() * k(36)), &ph)
            && self.near(&(hq.clone() * k(4)), &ph);
        let cr = cross_ratio(&self.frame.p, &self.frame.q_p, g, &self.frame.h_p, tol)?;
        let holds = lengths_hold && cr.near(&-S::one(), tol);
        Ok(HarmonicCheck {
            pg_over_gq_sq: pg / gq,
            ph_over_hq_sq: ph / hq,
            cross_ratio: cr,
            lengths_hold,
            holds,
        })
    }

    /// The orthocenter of `H_P A_i A_j` associated with `B_k` is `A_k`.
    pub fn reassociation_holds(&self) -> bool {
        let tol = self.tolerance();
        (0..3).all(|k| {
            let (i, j) = others(k);
            let (ai, aj) = (self.frame.triangle.vertex(i), self.frame.triangle.vertex(j));
            let b = &self.frame.anti[k];
            let equidistant = [&self.frame.h_p, ai, aj]
                .iter()
                .all(|v| self.near(&self.dist_sq(b, v), &self.r_sq));
            let h = &(&(&self.frame.h_p + ai) + aj) - &b.scale(&S::from_int(2));
            equidistant && h.near(self.frame.triangle.vertex(k), tol)
        })
    }
}

#[derive(Clone, Debug)]
pub struct EulerCheck<S> {
    pub centroid: Point<S>,
    /// `H_P − G = 2(G − P)`.
    pub identity: bool,
    pub collinear: bool,
    /// `P = G`, only possible for an equilateral triangle with `P = O`.
    pub degenerate: bool,
    /// The line through `P` and `H_P` when not degenerate.
    pub line: Option<AffineSubspace<S>>,
}

impl<S> EulerCheck<S> {
    pub fn holds(&self) -> bool {
        self.identity && self.collinear
    }
}

#[derive(Clone, Debug)]
pub struct HarmonicCheck<S> {
    /// `PG² / GQ_P²`, expected 4.
    pub pg_over_gq_sq: S,
    /// `PH_P² / H_PQ_P²`, expected 4.
    pub ph_over_hq_sq: S,
    /// `(P, Q_P; G, H_P)`, expected −1.
    pub cross_ratio: S,
    pub lengths_hold: bool,
    pub holds: bool,
}

fn euclidean<S: Scalar>(t: &Triangle<S>, p: &Point<S>) -> Result<OrthoConfig<S>> {
    OrthoConfig::new(t.clone(), p.clone(), NormSpec::Euclidean)
}

/// `H_P = A₀ + A₁ + A₂ − 2P` for a Euclidean-equidistant `P`.
pub fn orthocenter_at<S: Scalar>(t: &Triangle<S>, p: &Point<S>) -> Result<Point<S>> {
    Ok(euclidean(t, p)?.frame.h_p)
}

/// `H = A₀ + A₁ + A₂ − 2O`.
pub fn classical_orthocenter<S: Scalar>(t: &Triangle<S>) -> Point<S> {
    let (o, _) = t.circumcenter_inplane();
    &t.vertex_sum() - &o.scale(&S::from_int(2))
}

pub fn antitriangle<S: Scalar>(t: &Triangle<S>, p: &Point<S>) -> Result<[Point<S>; 3]> {
    Ok(euclidean(t, p)?.frame.anti)
}

pub fn reflected_spheres<S: Scalar>(t: &Triangle<S>, p: &Point<S>) -> Result<[Sphere<S>; 3]> {
    Ok(euclidean(t, p)?.reflected_spheres())
}

pub fn euler_check<S: Scalar>(t: &Triangle<S>, p: &Point<S>) -> Result<EulerCheck<S>> {
    Ok(euclidean(t, p)?.euler())
}

pub fn feuerbach_sphere<S: Scalar>(t: &Triangle<S>, p: &Point<S>) -> Result<Sphere<S>> {
    Ok(euclidean(t, p)?.feuerbach_sphere())
}

pub fn harmonic_range_check<S: Scalar>(t: &Triangle<S>, p: &Point<S>) -> Result<bool> {
    Ok(euclidean(t, p)?.harmonic()?.holds)
}

/// All orthocenters `H_P`, the image of the circumcenter locus under
/// `X ↦ 3G − 2X` (the homothety about `G` with ratio −2).
pub fn orthocenter_set<S: Scalar>(t: &Triangle<S>) -> AffineSubspace<S> {
    let h = Homothety::new(t.centroid(), S::from_int(-2)).expect("nonzero ratio");
    t.circumlocus().map(&h)
}
