//! Sample grids on balls, spheres and intervals, ordered so that consecutive
//! samples are close (the continuity proxy compares neighbours).

use std::f64::consts::{PI, TAU};

use crate::body::ConvexBody;
use crate::error::Result;
use crate::vector::Vector;

/// Polar grid on the unit ball of `body`.
///
/// In the plane: `n` rings at gauge radii `i/n`, `n` angles each, ring by
/// ring (so `n = 100` gives 10⁴ samples). In space: `max(2, n/10)` shells,
/// `max(2, n/5)` latitudes and `max(3, n/2)` longitudes, latitude rows
/// alternating direction from shell to shell.
pub fn ball_grid(body: &ConvexBody, n: usize) -> Result<Vec<Vector>> {
    let n = n.max(2);
    let mut out = Vec::new();
    if body.dim() == 2 {
        for i in 1..=n {
            let r = i as f64 / n as f64;
            for j in 0..n {
                out.push(body.boundary_at(TAU * j as f64 / n as f64)? * r);
            }
        }
        return Ok(out);
    }
    let (nr, nlat, nlon) = ((n / 10).max(2), (n / 5).max(2), (n / 2).max(3));
    for i in 1..=nr {
        let r = i as f64 / nr as f64;
        for jj in 0..nlat {
            let j = if i % 2 == 1 { jj } else { nlat - 1 - jj };
            let lat = PI * (j as f64 + 0.5) / nlat as f64;
            for k in 0..nlon {
                let lon = TAU * k as f64 / nlon as f64;
                let d = Vector::new3(lat.sin() * lon.cos(), lat.sin() * lon.sin(), lat.cos());
                out.push(body.boundary_point(&d)? * r);
            }
        }
    }
    Ok(out)
}

/// `n` points of `radius · ∂K` at equal direction angles (planar bodies).
pub fn circle_grid(body: &ConvexBody, n: usize, radius: f64) -> Result<Vec<Vector>> {
    (0..n).map(|j| Ok(body.boundary_at(TAU * j as f64 / n as f64)? * radius)).collect()
}

/// `n + 1` equally spaced points of `[0, 1]` as one-dimensional vectors.
pub fn interval_grid(n: usize) -> Vec<Vector> {
    let n = n.max(1);
    (0..=n).map(|i| Vector::scalar(i as f64 / n as f64)).collect()
}
