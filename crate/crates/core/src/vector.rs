use std::ops::{Add, Index, Neg, Sub};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Coordinate tuple in R^n.
///
/// Points and vectors share the representation; the vector from `a` to `b`
/// is `b - a`. Binary operators panic on a dimension mismatch, which the
/// constructors of [`Triangle`](crate::Triangle) and friends rule out; use
/// [`dot`] and [`check_dims`] at API boundaries.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<S>(Vec<S>);

/// A vector read with affine semantics.
pub type Point<S> = Vector<S>;

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Self(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![S::zero(); n])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = S::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<S> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    pub fn scale(&self, k: &S) -> Self {
        Self(self.0.iter().map(|x| x.clone() * k.clone()).collect())
    }

    pub fn dot(&self, other: &Self) -> S {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_exact_zero)
    }

    /// Largest absolute coordinate, as f64. Used for tolerance scaling.
    pub fn magnitude(&self) -> f64 {
        self.0.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Coordinate-wise comparison under the backend's tolerance.
    pub fn near(&self, other: &Self, tol: crate::Tolerance) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let scale = self.magnitude().max(other.magnitude());
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| (a.clone() - b.clone()).near_zero(scale, tol))
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        (self + other).scale(&S::from_ratio(1, 2))
    }

    pub fn to_f64(&self) -> Vector<f64> {
        Vector(self.0.iter().map(Scalar::to_f64).collect())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(Scalar::to_json).collect())
    }

    /// Returns an empty-safe sum of points.
    pub fn sum<'a, I>(n: usize, items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        items.into_iter().fold(Self::zeros(n), |acc, v| &acc + v)
    }
}

impl Vector<Rational> {
    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Self(coords.iter().map(|&(n, d)| Rational::from_ratio(n, d)).collect())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: Scalar> Add for &Vector<S> {
    type Output = Vector<S>;

    fn add(self, rhs: &Vector<S>) -> Vector<S> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<S: Scalar> Sub for &Vector<S> {
    type Output = Vector<S>;

    fn sub(self, rhs: &Vector<S>) -> Vector<S> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

impl<S: Scalar> Add for Vector<S> {
    type Output = Vector<S>;

    fn add(self, rhs: Vector<S>) -> Vector<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Vector<S> {
    type Output = Vector<S>;

    fn sub(self, rhs: Vector<S>) -> Vector<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for &Vector<S> {
    type Output = Vector<S>;

    fn neg(self) -> Vector<S> {
        Vector(self.0.iter().map(|x| -x.clone()).collect())
    }
}

impl<S: Scalar> Neg for Vector<S> {
    type Output = Vector<S>;

    fn neg(self) -> Vector<S> {
        -&self
    }
}

pub fn check_dims<S: Scalar>(expected: usize, v: &Vector<S>) -> Result<()> {
    if v.dim() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            found: v.dim(),
        })
    }
}

/// Standard inner product.
pub fn dot<S: Scalar>(u: &Vector<S>, v: &Vector<S>) -> Result<S> {
    check_dims(u.dim(), v)?;
    Ok(u.dot(v))
}

/// `Σ coords²`, exact on the rational backend.
pub fn norm_sq<S: Scalar>(v: &Vector<S>) -> S {
    v.norm_sq()
}
