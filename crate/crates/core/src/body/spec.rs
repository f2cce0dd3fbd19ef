//! JSON descriptions of bodies.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::vector::Vector;

/// ℓp exponent; serialized as a number or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponent(f64);

impl Exponent {
    pub fn from_value(p: f64) -> Self {
        Exponent(p)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Ok(Exponent(p)),
            Raw::Text(t) if matches!(t.as_str(), "inf" | "infinity" | "Infinity") => Ok(Exponent(f64::INFINITY)),
            Raw::Text(t) => Err(D::Error::custom(format!("unknown exponent {t:?}"))),
        }
    }
}

/// `{"kind":"lp","p":4.0,"dim":2}`, `{"kind":"ellipse","axes":[2.0,1.0]}` or
/// `{"kind":"polytope","vertices":[[1,1],[-1,1],...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Lp {
        p: Exponent,
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radii: Option<Vec<f64>>,
    },
    #[serde(alias = "ellipsoid")]
    Ellipse { axes: Vec<f64> },
    Polytope { vertices: Vec<Vector> },
}

impl BodySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("body specs always serialize")
    }
}
