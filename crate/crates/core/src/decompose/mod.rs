//! Constructive decompositions of ball-valued maps into combinations of
//! sphere-valued maps, emitted as replayable certificates.

mod grid;
mod path;
mod planar;
mod three;

use std::io::Write;

use serde::{Deserialize, Serialize};

pub use grid::{ball_grid, circle_grid, interval_grid};
pub use path::{shell_convex_decomposition, two_nonvanishing_average, two_nonvanishing_average_with};
pub use planar::{decompose_four_extreme, decompose_two_disk};
pub use three::{decompose_three, eps_select, three_term_params, ThreeTermParams};

use crate::body::{BodySpec, ConvexBody};
use crate::error::{Error, Result};
use crate::vector::Vector;

/// A map known at finitely many domain samples. Interval domains use
/// one-dimensional sample vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledMap {
    pub samples: Vec<Vector>,
    pub values: Vec<Vector>,
}

impl SampledMap {
    pub fn new(samples: Vec<Vector>, values: Vec<Vector>) -> Result<Self> {
        let m = SampledMap { samples, values };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(samples: Vec<Vector>) -> Result<Self> {
        Self::new(samples.clone(), samples)
    }

    /// Evaluates `f` at every sample, in parallel, keeping sample order.
    pub fn from_fn<F>(samples: Vec<Vector>, f: F) -> Result<Self>
    where
        F: Fn(&Vector) -> Vector + Sync,
    {
        use rayon::prelude::*;
        let values = samples.par_iter().map(&f).collect();
        Self::new(samples, values)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples.len() < 2 {
            return Err(Error::InvalidSampledMap(format!("{} samples, need at least 2", self.samples.len())));
        }
        if self.samples.len() != self.values.len() {
            return Err(Error::InvalidSampledMap(format!(
                "{} samples but {} values",
                self.samples.len(),
                self.values.len()
            )));
        }
        if let Some(i) = self.values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSampledMap(format!("value {i} is not finite")));
        }
        let d = self.values[0].dim();
        if let Some(i) = self.values.iter().position(|v| v.dim() != d) {
            return Err(Error::InvalidSampledMap(format!("value {i} has dimension {}", self.values[i].dim())));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Largest jump between consecutive values: a sampled continuity proxy.
    pub fn continuity_modulus(&self) -> f64 {
        self.values.windows(2).map(|w| w[0].distance(&w[1])).fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Span,
    Convex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateErrors {
    pub sup_reconstruction_error: f64,
    pub sphere_error: f64,
    pub shell_min_gauge: f64,
    pub continuity_modulus: Vec<f64>,
}

/// `target(x) = Σ αᵢ·componentᵢ(x)` at every sample, with the measured
/// reconstruction and sphere-membership errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub kind: CertificateKind,
    pub coefficients: Vec<f64>,
    pub components: Vec<SampledMap>,
    pub target: SampledMap,
    pub errors: CertificateErrors,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<BodySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Outcome of replaying a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub reconstruction_error: f64,
    pub sphere_error: f64,
    pub coefficients_ok: bool,
    pub samples_consistent: bool,
    pub reconstruction_ok: bool,
    pub sphere_ok: bool,
    pub passed: bool,
}

impl DecompositionCertificate {
    /// Builds a certificate and measures its errors against `body`.
    pub fn assemble(
        kind: CertificateKind,
        coefficients: Vec<f64>,
        components: Vec<SampledMap>,
        target: SampledMap,
        body: &ConvexBody,
        params: serde_json::Value,
        seed: Option<u64>,
    ) -> Result<Self> {
        let (rec, sphere, shell) = measure(&coefficients, &components, &target, body)?;
        let continuity_modulus = components.iter().map(SampledMap::continuity_modulus).collect();
        Ok(DecompositionCertificate {
            kind,
            coefficients,
            components,
            target,
            errors: CertificateErrors {
                sup_reconstruction_error: rec,
                sphere_error: sphere,
                shell_min_gauge: shell,
                continuity_modulus,
            },
            params,
            seed,
            body: body.spec(),
            notes: Vec::new(),
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Replays the reconstruction and sphere-membership checks. The recomputed
    /// errors must not exceed the stored ones (up to rounding) and, for convex
    /// certificates, the coefficients must be nonnegative and sum to 1.
    pub fn verify(&self, body: &ConvexBody) -> Result<VerifyReport> {
        let samples_consistent = self.components.len() == self.coefficients.len()
            && self.components.iter().all(|c| c.samples == self.target.samples);
        let (rec, sphere) = if samples_consistent {
            let (r, s, _) = measure(&self.coefficients, &self.components, &self.target, body)?;
            (r, s)
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        let coefficients_ok = match self.kind {
            CertificateKind::Span => self.coefficients.iter().all(|a| a.is_finite()),
            CertificateKind::Convex => {
                self.coefficients.iter().all(|a| *a >= 0.0)
                    && (self.coefficients.iter().sum::<f64>() - 1.0).abs() <= 1e-12
            }
        };
        let slack = |stored: f64| stored * (1.0 + 1e-9) + 1e-15;
        let reconstruction_ok = rec <= slack(self.errors.sup_reconstruction_error);
        let sphere_ok = sphere <= slack(self.errors.sphere_error);
        Ok(VerifyReport {
            reconstruction_error: rec,
            sphere_error: sphere,
            coefficients_ok,
            samples_consistent,
            reconstruction_ok,
            sphere_ok,
            passed: coefficients_ok && samples_consistent && reconstruction_ok && sphere_ok,
        })
    }

    /// One row per (sample, component): index, component, coefficient, then
    /// sample and value coordinates.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let sd = self.target.samples.first().map_or(1, Vector::dim);
        let vd = self.target.values.first().map_or(2, Vector::dim);
        let mut header = vec!["sample".to_string(), "component".into(), "coefficient".into()];
        header.extend((0..sd).map(|i| format!("x{i}")));
        header.extend((0..vd).map(|i| format!("f{i}")));
        w.write_record(&header)?;
        for (i, x) in self.target.samples.iter().enumerate() {
            for (j, (c, a)) in self.components.iter().zip(&self.coefficients).enumerate() {
                let mut row = vec![i.to_string(), j.to_string(), a.to_string()];
                row.extend(x.as_slice().iter().map(|t| t.to_string()));
                row.extend(c.values[i].as_slice().iter().map(|t| t.to_string()));
                w.write_record(&row)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// `(sup reconstruction error, sphere error, min component gauge)`.
fn measure(
    coefficients: &[f64],
    components: &[SampledMap],
    target: &SampledMap,
    body: &ConvexBody,
) -> Result<(f64, f64, f64)> {
    if coefficients.len() != components.len() {
        return Err(Error::InvalidSampledMap("coefficient and component counts differ".into()));
    }
    let mut rec: f64 = 0.0;
    for (i, t) in target.values.iter().enumerate() {
        let mut s = Vector::zeros(t.dim());
        for (c, a) in components.iter().zip(coefficients) {
            let v = c.values.get(i).ok_or_else(|| Error::InvalidSampledMap("component too short".into()))?;
            s += *v * *a;
        }
        rec = rec.max(s.distance(t));
    }
    let mut sphere: f64 = 0.0;
    let mut shell = f64::INFINITY;
    for c in components {
        for v in &c.values {
            let g = body.gauge(v)?;
            sphere = sphere.max((g - 1.0).abs());
            shell = shell.min(g);
        }
    }
    Ok((rec, sphere, shell))
}
