use rayon::prelude::*;

use super::{CertificateKind, DecompositionCertificate, SampledMap};
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::section::{chord_map, disk_chord, Chord};
use crate::vector::Vector;

/// `f = (c1 + c2)/2` on the disk, where `[c1, c2]` is the circle chord with
/// midpoint `f(x)`. Requires `|f| ≥ r` at every sample.
pub fn decompose_two_disk(f: &SampledMap, r: f64) -> Result<DecompositionCertificate> {
    f.validate()?;
    for (index, v) in f.values.iter().enumerate() {
        if v.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: v.dim() });
        }
        let g = v.norm();
        if g < r - 1e-12 || g == 0.0 {
            return Err(Error::VanishingValue { index, gauge: g, radius: r });
        }
    }
    let chords = f.values.iter().map(disk_chord).collect::<Result<Vec<_>>>()?;
    let disk = ConvexBody::disk();
    DecompositionCertificate::assemble(
        CertificateKind::Convex,
        vec![0.5, 0.5],
        endpoint_maps(&f.samples, &chords)?,
        f.clone(),
        &disk,
        serde_json::json!({ "r": r }),
        None,
    )
}

fn endpoint_maps(samples: &[Vector], chords: &[Chord]) -> Result<Vec<SampledMap>> {
    Ok(vec![
        SampledMap::new(samples.to_vec(), chords.iter().map(|c| c.p1).collect())?,
        SampledMap::new(samples.to_vec(), chords.iter().map(|c| c.p2).collect())?,
    ])
}

/// `f = k·u0 + (s/2)·c1 + (s/2)·c2` for a strictly convex planar body, with
/// `u0 = ∂K ∩ ℝ₊e₁`, `k = sup‖f‖ + 1` and `[c1, c2]` the chord bisected by
/// `g/s`, `g = f − k·u0`, `s = sup‖g‖`. Since `‖g‖ ≥ k − ‖f‖ ≥ 1`, the chord
/// map is never evaluated at the origin.
pub fn decompose_four_extreme(body: &ConvexBody, f: &SampledMap) -> Result<DecompositionCertificate> {
    if !body.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    f.validate()?;
    let gauges = f.values.iter().map(|v| body.gauge(v)).collect::<Result<Vec<_>>>()?;
    let k = gauges.iter().cloned().fold(0.0, f64::max) + 1.0;
    let u0 = body.boundary_point(&Vector::new2(1.0, 0.0))?;
    let g: Vec<Vector> = f.values.iter().map(|v| *v - u0 * k).collect();
    let s = g.iter().map(|x| body.gauge(x)).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
    let chords = g
        .par_iter()
        .map(|x| {
            let c = chord_map(body, &(*x / s))?;
            // Midpoint exactly g/s in the stored endpoints.
            Ok(Chord::from_midpoint(c.p1, *x / s))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut components = vec![SampledMap::new(f.samples.clone(), vec![u0; f.len()])?];
    components.extend(endpoint_maps(&f.samples, &chords)?);
    let cert = DecompositionCertificate::assemble(
        CertificateKind::Span,
        vec![k, s / 2.0, s / 2.0],
        components,
        f.clone(),
        body,
        serde_json::json!({ "k": k, "s": s, "u0": u0, "component_bound": 4 }),
        None,
    )?;
    Ok(cert.with_note("3 extreme-point-valued components; the certified bound is 4"))
}
