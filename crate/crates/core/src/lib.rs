//! Generalized orthocenters of triangles in R^n.
//!
//! A triangle in R^n has a whole (n − 2)-dimensional affine subspace of
//! points equidistant from its vertices. Each such point `P` determines an
//! orthocenter `H_P = A₀ + A₁ + A₂ − 2P`, an antitriangle, a Feuerbach
//! sphere and five orthocentric systems. This crate constructs all of
//! them and checks their properties, exactly over the rationals for the
//! Euclidean norm and numerically for p-norms.
//!
//! ```
//! use orthocentric::{NormSpec, OrthoConfig, Point, Rational, Triangle};
//!
//! let t = Triangle::<Rational>::new(
//!     Point::from_ints(&[0, 0, 0]),
//!     Point::from_ints(&[2, 0, 0]),
//!     Point::from_ints(&[0, 2, 0]),
//! )
//! .unwrap();
//! let cfg = OrthoConfig::new(t, Point::from_ints(&[1, 1, 1]), NormSpec::Euclidean).unwrap();
//! assert_eq!(cfg.orthocenter(), &Point::from_ints(&[0, 0, -2]));
//! ```

pub mod affine;
pub mod batch;
pub mod error;
pub mod generate;
pub mod linalg;
pub mod minkowski;
pub mod norm;
pub mod orthocenter;
pub mod orthosys;
pub mod par;
pub mod plot;
pub mod report;
pub mod scalar;
pub mod scene;
pub mod triangle;
pub mod vector;
pub mod verdict;
pub mod verify;

pub use affine::{collinear, cross_ratio, point_reflect, AffineSubspace, Homothety, PointReflection};
pub use error::{Error, Result};
pub use norm::{dist_sq, isosceles_orthogonal, norm, NormSpec};
pub use orthocenter::OrthoConfig;
pub use orthosys::{is_orthocentric, tetrahedron_altitudes_concur, OrthocentricSystem};
pub use par::Parallelism;
pub use scalar::{Rational, Scalar, Tolerance};
pub use triangle::{Sphere, Triangle};
pub use vector::{Point, Vector};
pub use verdict::{Clause, Tally, Verdict};
