//! Inscribed polytope approximations, Hausdorff distances and radial
//! transport of sphere maps between bodies.

use rayon::prelude::*;
use serde::Serialize;

use super::{ConvexBody, Polytope, RadialBody};
use crate::degree::SphereMapSamples;
use crate::error::{Error, Result};
use crate::sampling::{self, periodic_min, sphere_min};
use crate::vector::Vector;

/// Inscribed polytope spanned by `m` boundary points of `body`: equal-angle
/// directions in the plane, Fibonacci directions in space.
pub fn polytope_approx(body: &ConvexBody, m: usize) -> Result<Polytope> {
    let n = body.dim();
    if m < n + 1 {
        return Err(Error::TooFewVertices { min: n + 1, got: m });
    }
    let points = sampling::sphere_directions(n, m)
        .iter()
        .map(|d| body.boundary_point(d))
        .collect::<Result<Vec<_>>>()?;
    Polytope::from_points(&points)
}

pub enum HausdorffTarget<'a> {
    Polytope(&'a Polytope),
    Body(&'a ConvexBody),
}

#[derive(Clone, Debug, Serialize)]
pub struct HausdorffEstimate {
    pub distance: f64,
    /// True for polytope pairs, where the distance is computed from vertices and facets.
    pub exact: bool,
    /// Boundary samples scanned before local refinement (0 when exact).
    pub resolution: usize,
}

/// Hausdorff distance between a polytope and a polytope or oracle body.
///
/// Against an oracle body both one-sided distances are attained at boundary
/// points (distance to a convex set is convex), so the polytope side is
/// checked at its vertices and the body side by a dense boundary scan with
/// golden-section (2D) or pattern-search (3D) refinement of the best sample.
pub fn hausdorff_distance(p: &Polytope, target: HausdorffTarget<'_>, resolution: usize) -> Result<HausdorffEstimate> {
    match target {
        HausdorffTarget::Polytope(q) => Ok(HausdorffEstimate {
            distance: p.hausdorff(q)?,
            exact: true,
            resolution: 0,
        }),
        HausdorffTarget::Body(k) => {
            if k.dim() != p.dim() {
                return Err(Error::DimensionMismatch { expected: p.dim(), got: k.dim() });
            }
            let outward = p
                .vertices()
                .par_iter()
                .map(|v| distance_to_body(k, v))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let inward = if k.dim() == 2 {
                let f = |t: f64| k.boundary_at(t).map(|b| -p.distance_to(&b)).unwrap_or(0.0);
                -periodic_min(f, resolution.max(16)).1
            } else {
                let f = |u: &Vector| k.boundary_point(u).map(|b| -p.distance_to(&b)).unwrap_or(0.0);
                -sphere_min(f, resolution.max(16)).1
            };
            Ok(HausdorffEstimate { distance: outward.max(inward), exact: false, resolution })
        }
    }
}

/// Euclidean distance from `x` to the body (zero inside).
fn distance_to_body(k: &ConvexBody, x: &Vector) -> Result<f64> {
    if k.gauge(x)? <= 1.0 {
        return Ok(0.0);
    }
    Ok(if k.dim() == 2 {
        periodic_min(|t| k.boundary_at(t).map(|b| b.distance(x)).unwrap_or(f64::INFINITY), 4096).1
    } else {
        sphere_min(|u| k.boundary_point(u).map(|b| b.distance(x)).unwrap_or(f64::INFINITY), 4000).1
    })
}

/// Pushes a sampled self-map of `∂from` to `∂to` along rays through the
/// origin: domain points and image points are both replaced by the boundary
/// point of `to` on their ray.
pub fn radial_transport(from: &dyn RadialBody, to: &dyn RadialBody, f: &SphereMapSamples) -> Result<SphereMapSamples> {
    if from.dim() != to.dim() {
        return Err(Error::DimensionMismatch { expected: from.dim(), got: to.dim() });
    }
    let push = |xs: &[Vector]| xs.iter().map(|x| to.boundary_point(x)).collect::<Result<Vec<_>>>();
    Ok(match f {
        SphereMapSamples::Loop { domain, image } => SphereMapSamples::Loop {
            domain: push(domain)?,
            image: push(image)?,
        },
        SphereMapSamples::Surface { vertices, faces, image } => SphereMapSamples::Surface {
            vertices: push(vertices)?,
            faces: faces.clone(),
            image: push(image)?,
        },
    })
}
