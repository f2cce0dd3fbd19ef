use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use super::{make_section, Chord};
use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::sampling::bisect;
use crate::vector::Vector;

/// Angular samples used by [`strip_chord`] on bodies that are not strictly convex.
pub const DEFAULT_CHORD_RESOLUTION: usize = 2048;

const MERGE_THRESHOLD: f64 = 1e-6;
const ZERO_RESIDUAL: f64 = 1e-12;

fn check_planar(body: &ConvexBody, v: &Vector) -> Result<f64> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    let g = body.gauge(v)?;
    if v.is_zero() {
        return Err(Error::MidpointZero);
    }
    Ok(g)
}

/// All chords of a planar body bisected by `v`.
///
/// Roots of `F(t) = ‖2v − γ(t)‖ − 1` are located on `resolution` equally
/// spaced angles of the radial boundary parametrization `γ`, polished by
/// bisection and merged up to endpoint swaps. Chords are returned in
/// counter-clockwise order. More than `resolution / 10` distinct chords is
/// taken as the sign of a continuum of solutions (parallel edges).
pub fn bisected_chords_2d(body: &ConvexBody, v: &Vector, resolution: usize) -> Result<Vec<Chord>> {
    let n = resolution.max(8);
    let chords = sampled_chords_2d(body, v, n)?;
    if chords.len() > n / 10 {
        return Err(Error::ContinuumSuspected { count: chords.len() });
    }
    Ok(chords)
}

/// [`bisected_chords_2d`] without the continuum check: on a flat piece of
/// boundary the result is a sample of the continuum at the given resolution.
pub(crate) fn sampled_chords_2d(body: &ConvexBody, v: &Vector, resolution: usize) -> Result<Vec<Chord>> {
    let g = check_planar(body, v)?;
    if g >= 1.0 {
        return Err(Error::MidpointOutside(g));
    }
    let n = resolution.max(8);
    let f = |t: f64| -> f64 {
        match body.boundary_at(t) {
            Ok(b) => body.gauge(&(*v * 2.0 - b)).map_or(f64::NAN, |x| x - 1.0),
            Err(_) => f64::NAN,
        }
    };
    let ts: Vec<f64> = (0..=n).map(|i| TAU * i as f64 / n as f64).collect();
    let fs: Vec<f64> = ts.par_iter().map(|&t| f(t)).collect();
    if fs.iter().any(|x| x.is_nan()) {
        return Err(Error::OracleInconsistent(format!("chord residual undefined at midpoint {v}")));
    }
    let mut roots = Vec::new();
    for i in 0..n {
        let (a, b) = (fs[i], fs[i + 1]);
        if a.abs() <= ZERO_RESIDUAL {
            roots.push(ts[i]);
        } else if b.abs() > ZERO_RESIDUAL && (a < 0.0) != (b < 0.0) {
            roots.push(bisect(f, ts[i], ts[i + 1], a));
        }
    }
    // Each chord is met at both endpoints; keep the endpoint that makes the
    // chord counter-clockwise. Near-duplicates then only arise from adjacent
    // samples (or the wrap-around), so long runs on flat pieces stay linear.
    let mut chords: Vec<Chord> = Vec::new();
    for t in roots {
        let b = body.boundary_at(t)?;
        if b.cross2(v) < 0.0 {
            continue;
        }
        let c = Chord::from_midpoint(b, *v);
        let fresh = if chords.len() < 64 {
            chords.iter().all(|k| k.d_sym(&c) >= MERGE_THRESHOLD)
        } else {
            [chords[0], chords[chords.len() - 1]].iter().all(|k| k.d_sym(&c) >= MERGE_THRESHOLD)
        };
        if fresh {
            chords.push(c);
        }
    }
    Ok(chords)
}

/// The unique chord of a strictly convex planar body bisected by `p ≠ 0`,
/// ordered so that `(0, p1, p2)` is counter-clockwise.
///
/// `F` is negative at the direction of `p` and positive at the opposite
/// direction, so the endpoint to the left of `p` is the single root of `F`
/// on `(θ_p, θ_p + π)`. A boundary point `p` yields the degenerate chord `(p, p)`.
pub fn chord_map(body: &ConvexBody, p: &Vector) -> Result<Chord> {
    if !body.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    let g = check_planar(body, p).map_err(|e| match e {
        Error::MidpointZero => Error::ZeroMidpoint,
        e => e,
    })?;
    if (g - 1.0).abs() <= ZERO_RESIDUAL {
        return Ok(Chord::new(*p, *p));
    }
    if g > 1.0 {
        return Err(Error::MidpointOutside(g));
    }
    let f = |t: f64| match body.boundary_at(t) {
        Ok(b) => body.gauge(&(*p * 2.0 - b)).map_or(1.0, |x| x - 1.0),
        Err(_) => 1.0,
    };
    let tp = p.angle();
    let lo = f(tp);
    let t = bisect(f, tp, tp + PI, lo);
    let left = body.boundary_at(t)?;
    let right = *p * 2.0 - left;
    Ok(Chord::new(right, left))
}

/// Closed-form chord of the Euclidean unit circle with midpoint `z`:
/// `z ∓ √(1−|z|²)·rot90(z)/|z|`, counter-clockwise.
pub fn disk_chord(z: &Vector) -> Result<Chord> {
    if z.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: z.dim() });
    }
    if !z.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::ZeroMidpoint);
    }
    if r > 1.0 + ZERO_RESIDUAL {
        return Err(Error::MidpointOutside(r));
    }
    if (r - 1.0).abs() <= ZERO_RESIDUAL {
        return Ok(Chord::new(*z, *z));
    }
    let a = z.rot90() * ((1.0 - r * r).max(0.0).sqrt() / r);
    Ok(Chord::new(*z - a, *z + a))
}

/// The bisected chord of `K ∩ span{v, q}` with both endpoints in the cap
/// `{φ ≤ m + eps}`, where `m = φ(q)`.
///
/// `p1` is the endpoint separated from `v` by the line `ℝq` (the one with the
/// smaller coordinate along the section's second basis vector, which points
/// towards `v`); `p2 = 2v − p1`.
pub fn strip_chord(body: &ConvexBody, v: &Vector, q: &Vector, phi: &Vector, eps: f64, resolution: usize) -> Result<Chord> {
    let section = make_section(body, v, q)?;
    let w = section.coords(v);
    let m = phi.dot(q);
    let candidates = if section.body.is_strictly_convex() {
        vec![chord_map(&section.body, &w)?]
    } else {
        bisected_chords_2d(&section.body, &w, resolution)?
    };
    let in_cap = |c: &Chord| {
        let a = section.ambient(&c.p1);
        let b = section.ambient(&c.p2);
        phi.dot(&a) <= m + eps && phi.dot(&b) <= m + eps
    };
    let surviving: Vec<&Chord> = candidates.iter().filter(|c| in_cap(c)).collect();
    match surviving.len() {
        0 => Err(Error::NoStripChord),
        1 => {
            let c = surviving[0];
            let low = if c.p1.y() <= c.p2.y() { c.p1 } else { c.p2 };
            Ok(Chord::from_midpoint(section.ambient(&low), *v))
        }
        count => Err(Error::MultipleStripChords { count }),
    }
}
