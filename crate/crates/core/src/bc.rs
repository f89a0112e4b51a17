//! Robin boundary parameters.
//!
//! The left condition is `u'(-L/2) = α u(-L/2)`, the right one
//! `u'(L/2) = -β u(L/2)`. `α = 0` is Neumann; the Dirichlet condition
//! `u = 0` is a separate variant rather than a large number.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One Robin parameter: a finite real or the Dirichlet symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RobinParam<T> {
    Finite(T),
    Dirichlet,
}

impl<T: Real> RobinParam<T> {
    pub fn finite(value: T) -> Self {
        RobinParam::Finite(value)
    }

    pub fn neumann() -> Self {
        RobinParam::Finite(T::zero())
    }

    pub fn is_dirichlet(&self) -> bool {
        matches!(self, RobinParam::Dirichlet)
    }

    pub fn value(&self) -> Option<T> {
        match *self {
            RobinParam::Finite(a) => Some(a),
            RobinParam::Dirichlet => None,
        }
    }

    /// `α/t`, the parameter seen after stretching the interval by `t`.
    pub fn scaled_by(&self, t: T) -> Self {
        match *self {
            RobinParam::Finite(a) => RobinParam::Finite(a / t),
            RobinParam::Dirichlet => RobinParam::Dirichlet,
        }
    }

    /// `α + γ`, with Dirichlet absorbing any finite shift.
    pub fn shifted(&self, gamma: T) -> Self {
        match *self {
            RobinParam::Finite(a) => RobinParam::Finite(a + gamma),
            RobinParam::Dirichlet => RobinParam::Dirichlet,
        }
    }

    /// Order on `(-∞, ∞]` with Dirichlet as the top element.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RobinParam::Dirichlet, RobinParam::Dirichlet) => Ordering::Equal,
            (RobinParam::Dirichlet, _) => Ordering::Greater,
            (_, RobinParam::Dirichlet) => Ordering::Less,
            (RobinParam::Finite(a), RobinParam::Finite(b)) => {
                a.partial_cmp(b).unwrap_or(Ordering::Equal)
            }
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self.total_cmp(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> RobinParam<f64> {
        match *self {
            RobinParam::Finite(a) => RobinParam::Finite(a.to_f64_lossy()),
            RobinParam::Dirichlet => RobinParam::Dirichlet,
        }
    }

    pub fn cast<U: Real>(&self) -> RobinParam<U> {
        match *self {
            RobinParam::Finite(a) => RobinParam::Finite(U::of(a.to_f64_lossy())),
            RobinParam::Dirichlet => RobinParam::Dirichlet,
        }
    }
}

impl<T: Real> From<T> for RobinParam<T> {
    fn from(value: T) -> Self {
        RobinParam::Finite(value)
    }
}

impl<T: Real> fmt::Display for RobinParam<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RobinParam::Finite(a) => write!(f, "{a}"),
            RobinParam::Dirichlet => f.write_str("inf"),
        }
    }
}

impl<T: Real> FromStr for RobinParam<T> {
    type Err = Error;

    /// Accepts a decimal literal or `inf` (Dirichlet). NaN and values that
    /// overflow to infinity are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text.eq_ignore_ascii_case("inf") || text.eq_ignore_ascii_case("+inf") {
            return Ok(RobinParam::Dirichlet);
        }
        if text.is_empty() {
            return Err(Error::Domain("empty Robin parameter".into()));
        }
        let parsed: f64 = text
            .parse()
            .map_err(|_| Error::Domain(format!("not a number or 'inf': {text:?}")))?;
        if !parsed.is_finite() {
            return Err(Error::Domain(format!(
                "Robin parameter must be finite or 'inf': {text:?}"
            )));
        }
        Ok(RobinParam::Finite(T::of(parsed)))
    }
}

impl<T: Real> Serialize for RobinParam<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            RobinParam::Finite(a) => serializer.serialize_f64(a.to_f64_lossy()),
            RobinParam::Dirichlet => serializer.serialize_str("inf"),
        }
    }
}

impl<'de, T: Real> Deserialize<'de> for RobinParam<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ParamVisitor<T>(std::marker::PhantomData<T>);

        impl<'de, T: Real> Visitor<'de> for ParamVisitor<T> {
            type Value = RobinParam<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a finite number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                if v.is_finite() {
                    Ok(RobinParam::Finite(T::of(v)))
                } else {
                    Err(E::custom("non-finite Robin parameter"))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                self.visit_f64(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ParamVisitor(std::marker::PhantomData))
    }
}

/// Left/right Robin parameters `(α, β)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", deny_unknown_fields)]
pub struct RobinPair<T> {
    pub alpha: RobinParam<T>,
    pub beta: RobinParam<T>,
}

impl<T: Real> RobinPair<T> {
    pub fn new(alpha: RobinParam<T>, beta: RobinParam<T>) -> Self {
        RobinPair { alpha, beta }
    }

    pub fn symmetric(alpha: RobinParam<T>) -> Self {
        RobinPair { alpha, beta: alpha }
    }

    pub fn neumann() -> Self {
        Self::symmetric(RobinParam::neumann())
    }

    pub fn dirichlet() -> Self {
        Self::symmetric(RobinParam::Dirichlet)
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    /// Boundary conditions seen by the reflected problem `x ↦ -x`.
    pub fn reflected(&self) -> Self {
        RobinPair {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    pub fn scaled_by(&self, t: T) -> Self {
        RobinPair {
            alpha: self.alpha.scaled_by(t),
            beta: self.beta.scaled_by(t),
        }
    }

    pub fn shifted(&self, gamma: T) -> Self {
        RobinPair {
            alpha: self.alpha.shifted(gamma),
            beta: self.beta.shifted(gamma),
        }
    }
}

impl<T: Real> fmt::Display for RobinPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inf_and_literals() {
        assert_eq!(
            "inf".parse::<RobinParam<f64>>().unwrap(),
            RobinParam::Dirichlet
        );
        let p: RobinParam<f64> = "-0.318309886".parse().unwrap();
        assert!((p.value().unwrap() + 1.0 / std::f64::consts::PI).abs() < 1e-9);
        assert!("abc".parse::<RobinParam<f64>>().is_err());
        assert!("nan".parse::<RobinParam<f64>>().is_err());
        assert!("".parse::<RobinParam<f64>>().is_err());
        assert!("1e400".parse::<RobinParam<f64>>().is_err());
    }

    #[test]
    fn dirichlet_is_top_of_order() {
        let d = RobinParam::<f64>::Dirichlet;
        let a = RobinParam::Finite(1e300);
        assert_eq!(d.total_cmp(&a), Ordering::Greater);
        assert_eq!(d.min(a), a);
        assert_eq!(
            RobinParam::Finite(-1.0).min(RobinParam::Finite(2.0)),
            RobinParam::Finite(-1.0)
        );
    }

    #[test]
    fn json_uses_inf_string() {
        let pair = RobinPair::new(RobinParam::Dirichlet, RobinParam::Finite(0.5_f64));
        let text = serde_json::to_string(&pair).unwrap();
        assert_eq!(text, r#"{"alpha":"inf","beta":0.5}"#);
        let back: RobinPair<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, pair);
        assert!(serde_json::from_str::<RobinParam<f64>>("\"nan\"").is_err());
    }
}
