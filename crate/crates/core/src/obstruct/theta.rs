//! Brute-force lower bound on the angle between a short radius `[0, p]` and
//! any chord bisected by `p`.

use std::f64::consts::TAU;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::section::{sampled_chords_2d, Chord};
use crate::vector::Vector;

/// Directions per midpoint ring.
pub const THETA_DIRECTIONS: usize = 40;
pub const DEFAULT_MIDPOINTS: usize = 2000;
pub const DEFAULT_THETA_RESOLUTION: usize = 4000;
/// Largest accepted neighbourhood, as a gauge radius.
pub const MAX_U_RADIUS: f64 = 0.25;
/// Neighbourhoods at most this large are flagged as small.
pub const SMALL_U_RADIUS: f64 = 0.1;

/// Angle in `[0, π/2]` between the lines spanned by `a` and `b`.
pub fn line_angle(a: &Vector, b: &Vector) -> f64 {
    a.cross2(b).abs().atan2(a.dot(b).abs())
}

/// The parallel segments `[0, p]` and `[q, p1]` with `q = −p0`, for a chord
/// `(p0, p1)` bisected by `p`.
#[derive(Clone, Debug, Serialize)]
pub struct DoubleChord {
    pub q: Vector,
    /// `|q − p1|`.
    pub length: f64,
    /// `2|p|`.
    pub expected: f64,
    pub length_residual: f64,
    /// Sine of the angle between `[0, p]` and `[q, p1]`.
    pub parallel_residual: f64,
}

impl DoubleChord {
    pub fn new(p: &Vector, chord: &Chord) -> Self {
        let q = -chord.p1;
        let d = q - chord.p2;
        let length = d.norm();
        let expected = 2.0 * p.norm();
        let parallel_residual = if length > 0.0 && p.norm() > 0.0 {
            p.cross2(&d).abs() / (length * p.norm())
        } else {
            0.0
        };
        DoubleChord { q, length, expected, length_residual: (length - expected).abs(), parallel_residual }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaWitness {
    pub p: Vector,
    pub chord: Chord,
    pub angle: f64,
    pub double_chord: DoubleChord,
}

/// Smallest sampled angle at one midpoint.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThetaSample {
    pub p: Vector,
    pub angle: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaBound {
    pub body: String,
    pub u_radius: f64,
    /// `u_radius ≤ 0.1`.
    pub small_radius: bool,
    pub theta: f64,
    pub midpoints: usize,
    pub chords: usize,
    pub chord_resolution: usize,
    pub witness: ThetaWitness,
    #[serde(skip)]
    pub scan: Vec<ThetaSample>,
}

impl ThetaBound {
    /// `p_x,p_y,angle` per sampled midpoint.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["p_x", "p_y", "angle"])?;
        for s in &self.scan {
            w.write_record([s.p.x().to_string(), s.p.y().to_string(), s.angle.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Midpoints on rings at gauge radii `U·i/n_r`, `i = 1..=n_r`, with
/// [`THETA_DIRECTIONS`] directions each. Doubling both `U` and `n_r` gives a
/// superset of the original grid.
pub fn theta_midpoints(body: &ConvexBody, u_radius: f64, samples: usize) -> Result<Vec<Vector>> {
    let rings = (samples / THETA_DIRECTIONS).max(1);
    let dirs = (0..THETA_DIRECTIONS)
        .map(|j| body.boundary_at(TAU * j as f64 / THETA_DIRECTIONS as f64))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(rings * THETA_DIRECTIONS);
    for i in 1..=rings {
        let r = u_radius * i as f64 / rings as f64;
        out.extend(dirs.iter().map(|d| *d * r));
    }
    Ok(out)
}

/// Minimum, over sampled midpoints `p` with `0 < ‖p‖ ≤ U` and every chord
/// they bisect, of the angle between the line `0p` and the chord.
/// Angles and lengths are Euclidean.
pub fn theta_bound(body: &ConvexBody, u_radius: f64, midpoint_samples: usize, chord_resolution: usize) -> Result<ThetaBound> {
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    if !(u_radius > 0.0 && u_radius <= MAX_U_RADIUS) {
        return Err(Error::Config(format!("uradius = {u_radius} must lie in (0, {MAX_U_RADIUS}]")));
    }
    let midpoints = theta_midpoints(body, u_radius, midpoint_samples)?;
    let scans = midpoints
        .par_iter()
        .map(|p| {
            let chords = sampled_chords_2d(body, p, chord_resolution)?;
            let best = chords
                .iter()
                .map(|c| (line_angle(p, &(c.p2 - c.p1)), *c))
                .min_by(|a, b| a.0.total_cmp(&b.0));
            Ok((chords.len(), best))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut witness: Option<(Vector, Chord, f64)> = None;
    let mut scan = Vec::new();
    let mut total = 0;
    for (p, (count, best)) in midpoints.iter().zip(scans) {
        total += count;
        if let Some((angle, c)) = best {
            scan.push(ThetaSample { p: *p, angle });
            if witness.as_ref().is_none_or(|w| angle < w.2) {
                witness = Some((*p, c, angle));
            }
        }
    }
    let (p, chord, theta) = witness.ok_or(Error::NoChordsFound)?;
    Ok(ThetaBound {
        body: body.label(),
        u_radius,
        small_radius: u_radius <= SMALL_U_RADIUS,
        theta,
        midpoints: midpoints.len(),
        chords: total,
        chord_resolution,
        witness: ThetaWitness { p, chord, angle: theta, double_chord: DoubleChord::new(&p, &chord) },
        scan,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;

    use super::*;

    #[test]
    fn disk_chords_are_perpendicular() {
        let disk = ConvexBody::disk();
        for u in [0.2, 0.1, 0.05] {
            let t = theta_bound(&disk, u, 400, 1000).unwrap();
            assert!((t.theta - FRAC_PI_2).abs() < 1e-6, "{}", t.theta);
            assert_eq!(t.small_radius, u <= 0.1);
        }
    }

    #[test]
    fn witness_reproduces_theta() {
        let k = ConvexBody::lp(4.0, 2).unwrap();
        let t = theta_bound(&k, 0.05, 400, 1000).unwrap();
        assert!(t.theta > 0.0);
        let w = &t.witness;
        assert!((line_angle(&w.p, &(w.chord.p2 - w.chord.p1)) - t.theta).abs() < 1e-9);
        assert!(w.double_chord.length_residual < 1e-12);
        assert!(w.double_chord.parallel_residual < 1e-9);
        assert!(w.chord.gauge_defect(&k).unwrap() < 1e-9);
    }

    #[test]
    fn larger_neighbourhoods_can_only_lower_theta() {
        let k = ConvexBody::lp(4.0, 2).unwrap();
        let small = theta_bound(&k, 0.05, 200, 800).unwrap();
        let large = theta_bound(&k, 0.1, 400, 800).unwrap();
        assert!(large.theta <= small.theta);
    }

    #[test]
    fn flat_edges_are_sampled() {
        let t = theta_bound(&ConvexBody::hexagon(), 0.1, 80, 400).unwrap();
        assert!(t.theta > 0.0 && t.theta <= FRAC_PI_2);
    }

    #[test]
    fn rejects_large_neighbourhoods() {
        assert!(matches!(theta_bound(&ConvexBody::disk(), 0.3, 10, 100), Err(Error::Config(_))));
        assert!(matches!(theta_bound(&ConvexBody::ball3(), 0.1, 10, 100), Err(Error::UnsupportedDimension(3))));
    }
}
