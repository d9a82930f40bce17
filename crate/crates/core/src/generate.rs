//! Seeded random instances and scene files.
//!
//! Scene `i` of a run draws from its own ChaCha stream (`seed`, stream
//! `i`), so output does not depend on how many scenes are generated or in
//! which order they are processed.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::norm::NormSpec;
use crate::orthocenter::OrthoConfig;
use crate::orthosys::derived_from_config;
use crate::par::{map_range, Parallelism};
use crate::scalar::{Rational, Scalar};
use crate::scene::{Backend, Coord, PSpec, SceneFile, ToleranceOverrides};
use crate::triangle::Triangle;
use crate::vector::Point;

/// Largest denominator of generated coordinates.
pub const MAX_DENOMINATOR: i64 = 6;

/// A triangle with a point on its circumcenter locus.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub triangle: Triangle<Rational>,
    pub locus_params: Vec<Rational>,
    pub p: Point<Rational>,
}

impl Instance {
    pub fn config(&self) -> OrthoConfig<Rational> {
        OrthoConfig::new(self.triangle.clone(), self.p.clone(), NormSpec::Euclidean).expect("P lies on the locus")
    }
}

/// Rational in `[−bound, bound]` with denominator at most [`MAX_DENOMINATOR`].
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    let num = rng.gen_range(-bound * den..=bound * den);
    Rational::from_ratio(num, den)
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Point<Rational> {
    Point::new((0..n).map(|_| random_rational(rng, bound)).collect())
}

/// Draws until the instance is usable: non-collinear vertices, `P ≠ G`
/// and five derived systems without coincident points.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Result<Instance> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if bound < 1 {
        return Err(Error::InvalidParameter(format!(
            "coordinate bound {bound} must be at least 1"
        )));
    }
    loop {
        let [a, b, c] = [0; 3].map(|_| random_point(rng, n, bound));
        let Ok(triangle) = Triangle::new(a, b, c) else {
            continue;
        };
        let locus = triangle.circumlocus();
        let locus_params: Vec<Rational> = (0..locus.dim()).map(|_| random_rational(rng, bound)).collect();
        let p = locus.point_at(&locus_params)?;
        let instance = Instance {
            triangle,
            locus_params,
            p,
        };
        let cfg = instance.config();
        if cfg.p() == cfg.centroid() || derived_from_config(&cfg).is_err() {
            continue;
        }
        return Ok(instance);
    }
}

/// `count` instances with dimensions cycling through `dims`.
pub fn corpus(seed: u64, count: usize, dims: &[usize], bound: i64, mode: Parallelism) -> Result<Vec<Instance>> {
    map_range(count, mode, |i| {
        let mut rng = stream(seed, i);
        random_instance(&mut rng, dims[i % dims.len()], bound)
    })
    .into_iter()
    .collect()
}

pub fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerateOptions {
    pub seed: u64,
    pub dimension: usize,
    pub count: usize,
    pub bound: i64,
}

/// File name for scene `index`.
pub fn scene_name(seed: u64, index: usize) -> String {
    format!("scene-{seed}-{index:05}.json")
}

pub fn scene_from_instance(inst: &Instance) -> SceneFile {
    let coords = |p: &Point<Rational>| p.iter().map(Coord::rational).collect::<Vec<_>>();
    let mut points = BTreeMap::new();
    for (name, v) in ["A", "B", "C"].iter().zip(inst.triangle.vertices()) {
        points.insert(name.to_string(), coords(v));
    }
    SceneFile {
        dimension: inst.triangle.dim(),
        points,
        triangle: ["A".into(), "B".into(), "C".into()],
        p: Some(PSpec::Locus(inst.locus_params.iter().map(Coord::rational).collect())),
        norm: NormSpec::Euclidean,
        backend: Backend::Exact,
        tolerance: ToleranceOverrides::default(),
    }
}

/// Named scenes, identical for identical options.
pub fn generate_scenes(opts: &GenerateOptions, mode: Parallelism) -> Result<Vec<(String, SceneFile)>> {
    if opts.count == 0 {
        return Err(Error::InvalidParameter("scene count must be at least 1".into()));
    }
    let instances = corpus(opts.seed, opts.count, &[opts.dimension], opts.bound, mode)?;
    Ok(instances
        .iter()
        .enumerate()
        .map(|(i, inst)| (scene_name(opts.seed, i), scene_from_instance(inst)))
        .collect())
}
