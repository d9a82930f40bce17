//! Clause-by-clause verification of one triangle and equidistant point.
//!
//! Clauses fall into two groups. Affine clauses only compare points built
//! by affine formulas, so they hold for any norm and are checked on an
//! [`AffineFrame`]. Metric clauses compare distances under the
//! configuration's norm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::{collinear, cross_ratio, point_reflect, Homothety};
use crate::error::Error;
use crate::orthocenter::{orthocenter_set, AffineFrame, OrthoConfig};
use crate::orthosys::{derived_point_sets, is_orthocentric, tetrahedron_altitudes_concur, DERIVED_SYSTEM_NAMES};
use crate::scalar::Scalar;
use crate::triangle::others;
use crate::vector::Point;
use crate::verdict::Clause;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Points sampled per sphere for the Feuerbach homothety clause.
    pub sphere_samples: usize,
    /// Drives sphere sampling and the homothety spot-check.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            sphere_samples: crate::orthocenter::DEFAULT_SPHERE_SAMPLES,
            seed: 0,
        }
    }
}

/// Affine clauses followed by metric clauses.
pub fn verify_instance<S: Scalar>(cfg: &OrthoConfig<S>, opts: &VerifyOptions) -> Vec<Clause> {
    let mut out = affine_clauses(cfg.frame(), opts);
    out.extend(metric_clauses(cfg, opts));
    out
}

/// Homothety used by the closure spot-checks: ratio `a/b` with
/// `a ∈ [−5, 5] \ {0}`, `b ∈ [1, 5]`, centered at `Q_P` plus a small
/// integer offset.
pub fn spot_check_homothety<S: Scalar>(frame: &AffineFrame<S>, seed: u64) -> Homothety<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_4a11);
    let mut a = 0;
    while a == 0 {
        a = rng.gen_range(-5..=5);
    }
    let b = rng.gen_range(1..=5);
    let offset = Point::new((0..frame.p.dim()).map(|_| S::from_int(rng.gen_range(-3..=3))).collect());
    Homothety::new(&frame.q_p + &offset, S::from_ratio(a, b)).expect("nonzero ratio")
}

fn same_points<S: Scalar>(a: &[Point<S>], b: &[Point<S>], frame: &AffineFrame<S>) -> bool {
    let tol = frame.tolerance();
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.near(y, tol))
}

/// Norm-independent identities among the constructed points.
pub fn affine_clauses<S: Scalar>(f: &AffineFrame<S>, opts: &VerifyOptions) -> Vec<Clause> {
    let tol = f.tolerance();
    let mut out = Vec::new();

    let about_g = |ratio: S| Homothety::new(f.centroid.clone(), ratio).expect("nonzero ratio");
    let expected_h = about_g(S::from_int(-2)).apply(&f.p);
    out.push(Clause::check(
        "affine.orthocenter_homothety",
        f.h_p.near(&expected_h, tol),
        "H_P is the image of P under the homothety about G with ratio -2",
    ));

    let symmetric = (0..3).all(|i| {
        f.triangle.vertex(i).midpoint(&f.anti[i]).near(&f.q_p, tol)
            && point_reflect(&f.midpoints[i], &f.p).near(&f.anti[i], tol)
    });
    out.push(Clause::check(
        "affine.symmetry_center",
        symmetric,
        "Q_P is the midpoint of every A_i B_i and B_i reflects P in M_i",
    ));

    let g = &f.centroid;
    let identity = (&f.h_p - g).near(&(g - &f.p).scale(&S::from_int(2)), tol);
    let on_line = collinear(&[f.p.clone(), g.clone(), f.h_p.clone()], tol).unwrap_or(false);
    out.push(Clause::check(
        "affine.euler_line",
        identity && on_line,
        "H_P - G = 2(G - P) with P, G, H_P collinear",
    ));

    out.push(match cross_ratio(&f.p, &f.q_p, g, &f.h_p, tol) {
        Ok(cr) => Clause::check(
            "affine.harmonic_cross_ratio",
            cr.near(&-S::one(), tol),
            format!("cross ratio (P, Q_P; G, H_P) = {cr}"),
        ),
        Err(Error::RepeatedPoints(..)) => Clause::not_applicable("affine.harmonic_cross_ratio", "P coincides with G"),
        Err(e) => Clause::check("affine.harmonic_cross_ratio", false, e.to_string()),
    });

    let reassociated = (0..3).all(|k| {
        let (i, j) = others(k);
        let h = &(&(&f.h_p + f.triangle.vertex(i)) + f.triangle.vertex(j)) - &f.anti[k].scale(&S::from_int(2));
        h.near(f.triangle.vertex(k), tol)
    });
    out.push(Clause::check(
        "affine.reassociation",
        reassociated,
        "the orthocenter of H_P A_i A_j for B_k is A_k",
    ));

    let sets = derived_point_sets(f);
    let reflect_q = Homothety::new(f.q_p.clone(), -S::one()).expect("nonzero ratio");
    let shrink_g = about_g(S::from_ratio(-1, 2));
    let shrink_q = Homothety::new(f.q_p.clone(), S::from_ratio(-1, 3)).expect("nonzero ratio");
    let images = [
        reflect_q.apply_all(&sets[0]),
        shrink_g.apply_all(&sets[0]),
        reflect_q.apply_all(&shrink_g.apply_all(&sets[0])),
        shrink_q.apply_all(&sets[0]),
    ];
    let map_names = [
        "point reflection in Q_P",
        "homothety about G with ratio -1/2",
        "homothety about G with ratio -1/2, then reflection in Q_P",
        "homothety about Q_P with ratio -1/3",
    ];
    for ((name, set), (image, how)) in DERIVED_SYSTEM_NAMES[1..]
        .iter()
        .zip(&sets[1..])
        .zip(images.iter().zip(map_names))
    {
        out.push(Clause::check(
            format!("affine.derived_map.{name}"),
            same_points(set, image, f),
            format!("pointwise image of the first system under the {how}"),
        ));
    }

    let h = spot_check_homothety(f, opts.seed);
    let mapped = h.apply_all(&sets[0]);
    let witness = (&(&(&mapped[0] + &mapped[1]) + &mapped[2]) - &mapped[3]).scale(&S::from_ratio(1, 2));
    out.push(Clause::check(
        "affine.homothety_closure",
        witness.near(&h.apply(&f.p), tol),
        format!("the image system's witness is the image of P (ratio {})", h.ratio()),
    ));

    out
}

/// Distance identities under the configuration's norm.
pub fn metric_clauses<S: Scalar>(cfg: &OrthoConfig<S>, opts: &VerifyOptions) -> Vec<Clause> {
    let tol = cfg.tolerance();
    let ns = cfg.norm();
    let mut out = Vec::new();

    out.push(Clause::check(
        "spheres.concur_at_orthocenter",
        cfg.spheres_concur_at(cfg.orthocenter()),
        "the three reflected spheres pass through H_P",
    ));
    out.push(match cfg.classical() {
        Some(c) => Clause::check(
            "spheres.concur_at_classical_orthocenter",
            cfg.spheres_concur_at(&c.orthocenter),
            "the three reflected spheres pass through H",
        ),
        None => Clause::not_applicable("spheres.concur_at_classical_orthocenter", "euclidean norm only"),
    });
    out.push(Clause::check(
        "spheres.through_sides",
        cfg.spheres_pass_through_sides(),
        "each reflected sphere passes through both endpoints of its side",
    ));
    out.push(Clause::check(
        "feuerbach.midpoints",
        cfg.feuerbach_contains_midpoints(),
        "the six midpoints M_i, N_i lie at distance r/2 from Q_P",
    ));
    out.push(
        match cfg.feuerbach_contains_homothety_images(opts.sphere_samples, opts.seed) {
            Ok(ok) => Clause::check(
                "feuerbach.homothety_images",
                ok,
                format!(
                    "{} sampled images per sphere lie on the Feuerbach sphere",
                    opts.sphere_samples
                ),
            ),
            Err(e) => Clause::not_applicable("feuerbach.homothety_images", e.to_string()),
        },
    );
    out.push(match cfg.harmonic() {
        Ok(h) => Clause::check("harmonic.lengths", h.lengths_hold, "PH_P = 3 PG = 6 GQ_P = 2 H_P Q_P"),
        Err(Error::DegenerateEulerLine) => Clause::not_applicable("harmonic.lengths", "P coincides with G"),
        Err(e) => Clause::check("harmonic.lengths", false, e.to_string()),
    });
    out.push(Clause::check(
        "reassociation",
        cfg.reassociation_holds(),
        "B_k is equidistant from H_P, A_i, A_j and reassociates to A_k",
    ));

    let sets = derived_point_sets(cfg.frame());
    let mut first_system = None;
    for (k, (name, pts)) in DERIVED_SYSTEM_NAMES.iter().zip(&sets).enumerate() {
        let sys = match is_orthocentric(pts, ns, tol) {
            Ok(sys) => {
                out.push(Clause::check(
                    format!("systems.{name}"),
                    true,
                    format!("validated with r^2 = {}", sys.r_sq()),
                ));
                sys
            }
            Err(Error::RepeatedPoints(i, j)) => {
                let why = format!("degenerate: points {i} and {j} coincide");
                out.push(Clause::not_applicable(format!("systems.{name}"), why.clone()));
                out.push(Clause::not_applicable(format!("orthogonality.{name}"), why));
                continue;
            }
            Err(e) => {
                out.push(Clause::check(format!("systems.{name}"), false, e.to_string()));
                continue;
            }
        };
        match sys.opposite_orthogonality() {
            Ok(pairings) => {
                for pc in pairings {
                    let [(i, j), (k2, l)] = pc.edges;
                    out.push(Clause::check(
                        format!("orthogonality.{name}.{i}{j}_{k2}{l}"),
                        pc.holds(),
                        format!(
                            "|u-v|^2 = {}, |u+v|^2 = {}, 4r^2 = {}",
                            pc.minus_sq,
                            pc.plus_sq,
                            sys.r_sq().clone() * S::from_int(4)
                        ),
                    ));
                }
            }
            Err(e) => out.push(Clause::check(format!("orthogonality.{name}"), false, e.to_string())),
        }
        if k == 0 {
            first_system = Some(sys);
        }
    }

    let h = spot_check_homothety(cfg.frame(), opts.seed);
    out.push(match &first_system {
        Some(sys) => match sys.homothety_image(&h) {
            Ok(img) => {
                let l = h.ratio().clone();
                let scaled = sys.r_sq().clone() * l.clone() * l;
                Clause::check(
                    "homothety_closure",
                    img.r_sq().near(&scaled, tol),
                    format!("image validates; r^2 scales by {}^2", h.ratio()),
                )
            }
            Err(e) => Clause::check("homothety_closure", false, e.to_string()),
        },
        None => Clause::not_applicable("homothety_closure", "first derived system did not validate"),
    });

    out.push(match &first_system {
        Some(sys) if ns.is_euclidean() && cfg.triangle().dim() >= 3 && sys.affinely_independent() => {
            match tetrahedron_altitudes_concur(sys.points(), tol) {
                Ok(x) => Clause::check(
                    "tetrahedron.altitudes_concur",
                    true,
                    format!("altitudes meet at {}", fmt_point(&x)),
                ),
                Err(e) => Clause::check("tetrahedron.altitudes_concur", false, e.to_string()),
            }
        }
        Some(_) if !ns.is_euclidean() => Clause::not_applicable("tetrahedron.altitudes_concur", "euclidean norm only"),
        Some(_) => Clause::not_applicable("tetrahedron.altitudes_concur", "points are not affinely independent"),
        None => Clause::not_applicable("tetrahedron.altitudes_concur", "first derived system did not validate"),
    });

    if ns.is_euclidean() {
        let locus = cfg.triangle().circumlocus();
        out.push(Clause::check(
            "locus.contains_p",
            locus.contains(cfg.p()),
            format!("P lies on the {}-dimensional circumcenter locus", locus.dim()),
        ));
        out.push(Clause::check(
            "locus.orthocenter_set_contains",
            orthocenter_set(cfg.triangle()).contains(cfg.orthocenter()),
            "H_P lies on the orthocenter set",
        ));
    } else {
        out.push(Clause::not_applicable("locus.contains_p", "euclidean norm only"));
        out.push(Clause::not_applicable(
            "locus.orthocenter_set_contains",
            "euclidean norm only",
        ));
    }

    out
}

fn fmt_point<S: Scalar>(x: &Point<S>) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::NormSpec;
    use crate::scalar::Rational;
    use crate::triangle::Triangle;
    use crate::verdict::{Tally, Verdict};

    type Q = Point<Rational>;

    fn worked() -> OrthoConfig<Rational> {
        let t = Triangle::new(
            Q::from_ints(&[0, 0, 0]),
            Q::from_ints(&[2, 0, 0]),
            Q::from_ints(&[0, 2, 0]),
        )
        .unwrap();
        OrthoConfig::new(t, Q::from_ints(&[1, 1, 1]), NormSpec::Euclidean).unwrap()
    }

    #[test]
    fn worked_instance_passes_everything() {
        let clauses = verify_instance(&worked(), &VerifyOptions::default());
        let failed: Vec<_> = clauses.iter().filter(|c| c.failed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        let tally = Tally::of(&clauses);
        assert_eq!(tally.not_applicable, 0);
        let tet = clauses.iter().find(|c| c.id == "tetrahedron.altitudes_concur").unwrap();
        assert_eq!(tet.verdict, Verdict::Pass);
        assert_eq!(
            clauses.iter().filter(|c| c.id.starts_with("orthogonality.")).count(),
            15
        );
    }

    #[test]
    fn taxicab_instance_passes_with_euclidean_only_clauses_skipped() {
        let t = Triangle::new(Q::from_ints(&[1, 0]), Q::from_ints(&[-1, 0]), Q::from_ints(&[0, 1])).unwrap();
        let cfg = OrthoConfig::new(t, Q::from_ints(&[0, -1]), NormSpec::p(1.0).unwrap()).unwrap();
        let clauses = verify_instance(&cfg, &VerifyOptions::default());
        assert!(clauses.iter().all(|c| !c.failed()), "{clauses:#?}");
        let na: Vec<_> = clauses
            .iter()
            .filter(|c| c.verdict == Verdict::NotApplicable)
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(
            na,
            [
                "spheres.concur_at_classical_orthocenter",
                "tetrahedron.altitudes_concur",
                "locus.contains_p",
                "locus.orthocenter_set_contains"
            ]
        );
    }

    #[test]
    fn affine_clauses_hold_for_a_non_equidistant_point() {
        let t = Triangle::new(Q::from_ints(&[0, 0]), Q::from_ints(&[3, 1]), Q::from_ints(&[1, 4])).unwrap();
        let f = AffineFrame::new(t, Q::from_ratios(&[(7, 3), (-1, 5)])).unwrap();
        assert!(affine_clauses(&f, &VerifyOptions::default()).iter().all(Clause::passed));
    }

    #[test]
    fn centroid_as_p_makes_harmonic_clauses_not_applicable() {
        let t = Triangle::new(
            Q::from_ints(&[1, 0, 0]),
            Q::from_ints(&[0, 1, 0]),
            Q::from_ints(&[0, 0, 1]),
        )
        .unwrap();
        let g = t.centroid();
        let cfg = OrthoConfig::new(t, g, NormSpec::Euclidean).unwrap();
        let clauses = verify_instance(&cfg, &VerifyOptions::default());
        let harmonic: Vec<_> = clauses.iter().filter(|c| c.id.contains("harmonic")).collect();
        assert!(harmonic.iter().all(|c| c.verdict == Verdict::NotApplicable));
    }
}
