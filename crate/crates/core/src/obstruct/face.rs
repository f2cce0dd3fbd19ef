//! A convex combination landing on the unit sphere has all its (weighted)
//! terms on one supporting hyperplane.

use serde::Serialize;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::vector::Vector;

pub const FACE_TOLERANCE: f64 = 1e-6;
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;
const DIFFERENCE_STEP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FaceOutcome {
    Pass,
    /// `⟨u, c_index⟩ = value` differs from 1.
    OffFace { index: usize, value: f64 },
    ReconstructionMismatch { residual: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    #[serde(flatten)]
    pub outcome: FaceOutcome,
    /// Support functional at `v`, scaled so that `⟨u, v⟩ = 1`.
    pub functional: Vector,
    /// `⟨u, cᵢ⟩` for every component.
    pub values: Vec<f64>,
}

/// Support functional at a boundary point `v`, normalized to `⟨u, v⟩ = 1`.
///
/// Polytopes use the facet through `v` whose outer normal is best aligned
/// with `v`; other bodies use the gauge gradient by central differences
/// with step `10⁻⁶·|v|`.
pub fn support_functional(body: &ConvexBody, v: &Vector) -> Result<Vector> {
    let gauge = body.gauge(v)?;
    if (gauge - 1.0).abs() > BOUNDARY_TOLERANCE {
        return Err(Error::NotOnBoundary { gauge });
    }
    if let Some(p) = body.as_polytope() {
        let scale = p.circumradius();
        let vn = v.normalized().ok_or(Error::ZeroVector)?;
        let facet = p
            .facets()
            .iter()
            .filter(|f| (f.normal.dot(v) - f.offset).abs() <= BOUNDARY_TOLERANCE * scale)
            .max_by(|a, b| a.normal.dot(&vn).total_cmp(&b.normal.dot(&vn)))
            .ok_or(Error::NoSupportFunctional)?;
        return Ok(facet.normal / facet.offset);
    }
    let h = DIFFERENCE_STEP * v.norm();
    let mut grad = Vector::zeros(v.dim());
    for i in 0..v.dim() {
        let e = Vector::axis(v.dim(), i) * h;
        grad.set(i, (body.gauge(&(*v + e))? - body.gauge(&(*v - e))?) / (2.0 * h));
    }
    let s = grad.dot(v);
    if !(grad.is_finite() && s > 0.0) {
        return Err(Error::NoSupportFunctional);
    }
    Ok(grad / s)
}

/// Checks that every component with positive weight lies on the support
/// hyperplane at `v`. The face test runs before the reconstruction test, so
/// a component pulled off the face is reported as such even though it also
/// breaks `Σλᵢcᵢ = v`.
pub fn face_containment_check(body: &ConvexBody, v: &Vector, components: &[Vector], lambdas: &[f64]) -> Result<FaceReport> {
    if components.is_empty() || components.len() != lambdas.len() {
        return Err(Error::MalformedInput(format!(
            "{} components but {} coefficients",
            components.len(),
            lambdas.len()
        )));
    }
    let sum: f64 = lambdas.iter().sum();
    if lambdas.iter().any(|l| !(*l >= 0.0)) || (sum - 1.0).abs() > 1e-12 {
        return Err(Error::MalformedInput(format!("coefficients {lambdas:?} are not convex")));
    }
    for (i, c) in components.iter().enumerate() {
        let g = body.gauge(c)?;
        if g > 1.0 + BOUNDARY_TOLERANCE {
            return Err(Error::MalformedInput(format!("component {i} has gauge {g} > 1")));
        }
    }
    let u = support_functional(body, v)?;
    let values: Vec<f64> = components.iter().map(|c| u.dot(c)).collect();
    let off = values
        .iter()
        .zip(lambdas)
        .position(|(x, l)| *l > 0.0 && (x - 1.0).abs() > FACE_TOLERANCE);
    let outcome = if let Some(index) = off {
        FaceOutcome::OffFace { index, value: values[index] }
    } else {
        let mut s = Vector::zeros(v.dim());
        for (c, l) in components.iter().zip(lambdas) {
            s += *c * *l;
        }
        let residual = s.distance(v);
        if residual > BOUNDARY_TOLERANCE {
            FaceOutcome::ReconstructionMismatch { residual }
        } else {
            FaceOutcome::Pass
        }
    };
    Ok(FaceReport { outcome, functional: u, values })
}
