//! Scene files: a JSON description of one triangle and its point `P`.
//!
//! ```json
//! {
//!   "dimension": 3,
//!   "points": { "A": ["0", "0", "0"], "B": ["2", "0", "0"], "C": ["0", "2", "0"] },
//!   "triangle": ["A", "B", "C"],
//!   "p": { "coords": ["1", "1", "1"] },
//!   "norm": "euclidean",
//!   "backend": "exact"
//! }
//! ```
//!
//! Coordinates are `"num/den"` strings, decimal strings, or JSON numbers.
//! Numbers are read through their decimal text, so `0.1` means `1/10` on
//! the exact backend.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::norm::NormSpec;
use crate::scalar::{parse_rational, Rational, Scalar, Tolerance};
use crate::triangle::Triangle;
use crate::vector::Point;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub dimension: usize,
    pub points: BTreeMap<String, Vec<Coord>>,
    pub triangle: [String; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PSpec>,
    #[serde(default)]
    pub norm: NormSpec,
    #[serde(default)]
    pub backend: Backend,
    #[serde(default, skip_serializing_if = "ToleranceOverrides::is_empty")]
    pub tolerance: ToleranceOverrides,
}

/// One coordinate as written in the file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Text(String),
    Number(serde_json::Number),
}

impl Coord {
    pub fn rational(q: &Rational) -> Self {
        Coord::Text(q.to_string())
    }

    fn parse(&self) -> Result<Rational, String> {
        let text = match self {
            Coord::Text(s) => s.clone(),
            Coord::Number(n) => n.to_string(),
        };
        parse_rational(&text).map_err(|e| format!("{text:?}: {e}"))
    }
}

/// How `P` is chosen. Without one, `P` is the in-plane circumcenter for the
/// Euclidean norm and a solver result otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PSpec {
    /// Explicit coordinates.
    Coords(Vec<Coord>),
    /// Name of an entry in `points`.
    Point(String),
    /// `n − 2` parameters on the Euclidean circumcenter locus.
    Locus(Vec<Coord>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(format!("unknown backend {other:?} (expected exact or float)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    /// Relative comparison tolerance for the float backend.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Solver residual bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl ToleranceOverrides {
    pub fn is_empty(&self) -> bool {
        self.eps.is_none() && self.residual.is_none()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Geometry(#[from] Error),
}

impl SceneError {
    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        SceneError::Field {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Machine-readable kind for error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            SceneError::Syntax { .. } => "syntax",
            SceneError::Field { .. } => "field",
            SceneError::Geometry(_) => "geometry",
        }
    }
}

impl From<serde_json::Error> for SceneError {
    fn from(e: serde_json::Error) -> Self {
        SceneError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Rational coordinates of a scene, checked against its declarations.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactScene {
    pub vertices: [Point<Rational>; 3],
    pub p: Option<ExactP>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExactP {
    Point(Point<Rational>),
    Locus(Vec<Rational>),
}

impl SceneFile {
    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let scene: SceneFile = serde_json::from_str(text)?;
        scene.check()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("scene serializes")
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("scene serializes");
        s.push('\n');
        s
    }

    fn coords(&self, path: &str, raw: &[Coord]) -> Result<Point<Rational>, SceneError> {
        if raw.len() != self.dimension {
            return Err(SceneError::field(
                path,
                format!("expected {} coordinates, found {}", self.dimension, raw.len()),
            ));
        }
        raw.iter()
            .enumerate()
            .map(|(i, c)| c.parse().map_err(|m| SceneError::field(format!("{path}[{i}]"), m)))
            .collect::<Result<Vec<_>, _>>()
            .map(Point::new)
    }

    fn named(&self, path: &str, name: &str) -> Result<Point<Rational>, SceneError> {
        let raw = self
            .points
            .get(name)
            .ok_or_else(|| SceneError::field(path, format!("unknown point {name:?}")))?;
        self.coords(&format!("points.{name}"), raw)
    }

    /// Parses every coordinate and resolves names.
    pub fn exact(&self) -> Result<ExactScene, SceneError> {
        if self.dimension < 2 {
            return Err(SceneError::field("dimension", "must be at least 2"));
        }
        self.norm
            .validate()
            .map_err(|e| SceneError::field("norm", e.to_string()))?;
        for (name, raw) in &self.points {
            self.coords(&format!("points.{name}"), raw)?;
        }
        let v = |i: usize| self.named(&format!("triangle[{i}]"), &self.triangle[i]);
        let vertices = [v(0)?, v(1)?, v(2)?];
        let p = match &self.p {
            None => None,
            Some(PSpec::Coords(raw)) => Some(ExactP::Point(self.coords("p.coords", raw)?)),
            Some(PSpec::Point(name)) => Some(ExactP::Point(self.named("p.point", name)?)),
            Some(PSpec::Locus(raw)) => {
                let want = self.dimension - 2;
                if raw.len() != want {
                    return Err(SceneError::field(
                        "p.locus",
                        format!("expected {want} locus parameters, found {}", raw.len()),
                    ));
                }
                let params = raw
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.parse().map_err(|m| SceneError::field(format!("p.locus[{i}]"), m)))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(ExactP::Locus(params))
            }
        };
        Ok(ExactScene { vertices, p })
    }

    fn check(&self) -> Result<(), SceneError> {
        if let Some(eps) = self.tolerance.eps {
            if !(eps.is_finite() && eps >= 0.0) {
                return Err(SceneError::field(
                    "tolerance.eps",
                    "must be a finite non-negative number",
                ));
            }
        }
        if let Some(r) = self.tolerance.residual {
            if !(r.is_finite() && r > 0.0) {
                return Err(SceneError::field(
                    "tolerance.residual",
                    "must be a finite positive number",
                ));
            }
        }
        self.exact().map(|_| ())
    }
}

impl ExactScene {
    /// The triangle on backend `S`.
    pub fn triangle<S: Scalar>(&self, tol: Tolerance) -> Result<Triangle<S>, Error> {
        let [a, b, c] = self.vertices.clone().map(|v| convert::<S>(&v));
        Triangle::with_tolerance(a, b, c, tol)
    }
}

pub fn convert<S: Scalar>(p: &Point<Rational>) -> Point<S> {
    Point::new(p.iter().map(S::from_rational).collect())
}
