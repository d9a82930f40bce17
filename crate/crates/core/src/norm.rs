//! Euclidean and p-norms.
//!
//! Distances are compared through [`dist_sq`], the squared norm, so that
//! Euclidean lengths stay rational on the exact backend. The rational
//! backend can evaluate the Euclidean (p = 2), taxicab (p = 1) and max
//! (p = ∞) norms exactly; any other exponent requires `f64`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NormSpec {
    #[default]
    Euclidean,
    /// Finite exponent `p >= 1`.
    P(f64),
    /// p = ∞.
    Max,
}

impl NormSpec {
    /// Validated constructor; `f64::INFINITY` maps to [`NormSpec::Max`].
    pub fn p(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidNorm(format!("p = {p} is below 1")));
        }
        if p.is_infinite() {
            return Ok(NormSpec::Max);
        }
        Ok(NormSpec::P(p))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            NormSpec::P(p) if p.is_nan() || p < 1.0 || p.is_infinite() => {
                Err(Error::InvalidNorm(format!("p = {p} is not a finite exponent >= 1")))
            }
            _ => Ok(()),
        }
    }

    /// Exponent as a float (∞ for the max norm).
    pub fn exponent(&self) -> f64 {
        match *self {
            NormSpec::Euclidean => 2.0,
            NormSpec::P(p) => p,
            NormSpec::Max => f64::INFINITY,
        }
    }

    pub fn is_euclidean(&self) -> bool {
        self.exponent() == 2.0
    }

    /// p ∈ {1, ∞}: the unit ball has flat faces and equidistant points need
    /// not be unique.
    pub fn is_strictly_convex(&self) -> bool {
        let p = self.exponent();
        p > 1.0 && p.is_finite()
    }

    /// Whether the scalar backend `S` can evaluate this norm.
    pub fn supported_by<S: Scalar>(&self) -> bool {
        !S::EXACT || matches!(self.exponent(), e if e == 1.0 || e == 2.0 || e.is_infinite())
    }

    fn require<S: Scalar>(&self) -> Result<()> {
        self.validate()?;
        if self.supported_by::<S>() {
            Ok(())
        } else {
            Err(Error::NormNotExact(self.to_string()))
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Euclidean => f.write_str("euclidean"),
            NormSpec::P(p) => write!(f, "p:{p}"),
            NormSpec::Max => f.write_str("p:inf"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("euclidean") {
            return Ok(NormSpec::Euclidean);
        }
        let value = s
            .strip_prefix("p:")
            .ok_or_else(|| Error::InvalidNorm(format!("`{s}` (expected `euclidean` or `p:<value>`)")))?;
        if matches!(value, "inf" | "infinity" | "∞") {
            return Ok(NormSpec::Max);
        }
        let p: f64 = value
            .parse()
            .map_err(|_| Error::InvalidNorm(format!("`{value}` is not a number")))?;
        NormSpec::p(p)
    }
}

impl TryFrom<String> for NormSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NormSpec> for String {
    fn from(ns: NormSpec) -> String {
        ns.to_string()
    }
}

/// ‖v‖ under `ns`.
///
/// On the rational backend the Euclidean norm is returned only when it is
/// rational; use [`dist_sq`] for comparisons.
pub fn norm<S: Scalar>(v: &Vector<S>, ns: NormSpec) -> Result<S> {
    ns.require::<S>()?;
    let p = ns.exponent();
    if p == 2.0 {
        return v
            .norm_sq()
            .sqrt()
            .ok_or_else(|| Error::NormNotExact("euclidean (irrational length)".into()));
    }
    if p == 1.0 {
        return Ok(v.iter().fold(S::zero(), |acc, x| acc + x.abs()));
    }
    if p.is_infinite() {
        return Ok(v.iter().fold(S::zero(), |acc, x| acc.max_of(x.abs())));
    }
    // float backend only from here on
    let m = v.magnitude();
    if m == 0.0 {
        return Ok(S::zero());
    }
    let sum: f64 = v.iter().map(|x| (x.to_f64().abs() / m).powf(p)).sum();
    Ok(S::from_f64(m * sum.powf(1.0 / p)))
}

/// ‖v‖² under `ns`; exact on the rational backend for every supported norm.
pub fn dist_sq<S: Scalar>(v: &Vector<S>, ns: NormSpec) -> Result<S> {
    if ns.is_euclidean() {
        ns.require::<S>()?;
        return Ok(v.norm_sq());
    }
    let n = norm(v, ns)?;
    Ok(n.clone() * n)
}

/// `‖u − v‖ = ‖u + v‖` under `ns`.
///
/// Exact backend: squared norms compared with `==`. Float backend: the norms
/// must agree within `eps · max(1, ‖u‖ + ‖v‖)`.
pub fn isosceles_orthogonal<S: Scalar>(u: &Vector<S>, v: &Vector<S>, ns: NormSpec, tol: Tolerance) -> Result<bool> {
    crate::vector::check_dims(u.dim(), v)?;
    let diff = u - v;
    let sum = u + v;
    if S::EXACT {
        return Ok(dist_sq(&diff, ns)? == dist_sq(&sum, ns)?);
    }
    let d = norm(&diff, ns)?.to_f64();
    let s = norm(&sum, ns)?.to_f64();
    let scale = norm(u, ns)?.to_f64() + norm(v, ns)?.to_f64();
    Ok(tol.negligible(d - s, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Vector<Rational>;
    type F = Vector<f64>;

    #[test]
    fn norm_examples() {
        assert_eq!(
            norm(&Q::from_ints(&[3, 4]), NormSpec::Euclidean).unwrap(),
            Rational::from_int(5)
        );
        assert_eq!(
            norm(&Q::from_ints(&[1, 1]), NormSpec::p(1.0).unwrap()).unwrap(),
            Rational::from_int(2)
        );
        let n = norm(&F::from_ints(&[2, 0, 0]), NormSpec::p(3.0).unwrap()).unwrap();
        assert!((n - 2.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_exponents_rejected() {
        assert!(matches!(NormSpec::p(0.5), Err(Error::InvalidNorm(_))));
        assert!(matches!(NormSpec::p(f64::NAN), Err(Error::InvalidNorm(_))));
        assert!(matches!(
            norm(&F::from_ints(&[1, 1]), NormSpec::P(0.5)),
            Err(Error::InvalidNorm(_))
        ));
        assert_eq!(NormSpec::p(f64::INFINITY).unwrap(), NormSpec::Max);
    }

    #[test]
    fn exact_backend_rejects_irrational_or_unsupported() {
        assert!(matches!(
            norm(&Q::from_ints(&[1, 1]), NormSpec::Euclidean),
            Err(Error::NormNotExact(_))
        ));
        assert!(matches!(
            norm(&Q::from_ints(&[1, 1]), NormSpec::P(3.0)),
            Err(Error::NormNotExact(_))
        ));
        assert_eq!(
            dist_sq(&Q::from_ints(&[1, 1]), NormSpec::Euclidean).unwrap(),
            Rational::from_int(2)
        );
        assert_eq!(
            norm(&Q::from_ints(&[-3, 2]), NormSpec::Max).unwrap(),
            Rational::from_int(3)
        );
    }

    #[test]
    fn p2_matches_euclidean_on_floats() {
        let v = F::new(vec![0.3, -1.7, 2.9]);
        let a = norm(&v, NormSpec::Euclidean).unwrap();
        let b = norm(&v, NormSpec::P(2.0)).unwrap();
        assert!(a.near(&b, Tolerance::default()));
    }

    #[test]
    fn isosceles_examples() {
        let tol = Tolerance::default();
        assert!(
            isosceles_orthogonal(&Q::from_ints(&[1, 0]), &Q::from_ints(&[0, 1]), NormSpec::Euclidean, tol).unwrap()
        );
        // L1: ‖u − v‖₁ = ‖(−2,−2)‖₁ = 4, ‖u + v‖₁ = ‖(−2,2)‖₁ = 4
        assert!(isosceles_orthogonal(
            &Q::from_ints(&[-2, 0]),
            &Q::from_ints(&[0, 2]),
            NormSpec::p(1.0).unwrap(),
            tol
        )
        .unwrap());
        assert!(
            !isosceles_orthogonal(&Q::from_ints(&[1, 0]), &Q::from_ints(&[1, 0]), NormSpec::Euclidean, tol).unwrap()
        );
    }

    #[test]
    fn norm_spec_text_form() {
        for text in ["euclidean", "p:1", "p:1.5", "p:inf"] {
            let ns: NormSpec = text.parse().unwrap();
            assert_eq!(ns.to_string(), text);
        }
        assert!("l2".parse::<NormSpec>().is_err());
        assert!("p:0.9".parse::<NormSpec>().is_err());
    }
}
