//! Maps of a polygon boundary that fix every vertex, and the check that such
//! maps have degree one.
//!
//! A vertex-fixing map is only forced to have degree one when each edge is
//! sent to a path homotopic (rel endpoints) to the edge itself; an edge that
//! wraps once more around the boundary still fixes the vertices but adds one
//! to the degree. The generators below therefore move along each edge by a
//! path in arclength coordinates that may wander (excursions) but has the
//! edge's own net displacement.

use std::f64::consts::TAU;

use rand::Rng;
use serde::Serialize;

use super::{loop_winding, SphereMapSamples};
use crate::body::{radial_transport, ConvexBody, Polytope};
use crate::error::{Error, Result};
use crate::sampling::{self, SeededRng};
use crate::vector::Vector;

/// Arclength parametrization of a convex polygon boundary, counter-clockwise
/// from the first vertex of the first facet.
#[derive(Clone, Debug)]
pub struct PerimeterPath {
    pub ring: Vec<Vector>,
    /// `starts[j]` is the arclength of `ring[j]`; `starts[k] = length`.
    pub starts: Vec<f64>,
    pub length: f64,
}

impl PerimeterPath {
    pub fn new(poly: &Polytope) -> Result<Self> {
        if poly.dim() != 2 {
            return Err(Error::UnsupportedDimension(poly.dim()));
        }
        let k = poly.vertices().len();
        let mut next = vec![usize::MAX; k];
        for f in poly.facets() {
            next[f.vertices[0]] = f.vertices[1];
        }
        let mut ring = Vec::with_capacity(k);
        let mut i = poly.facets()[0].vertices[0];
        for _ in 0..k {
            ring.push(poly.vertices()[i]);
            i = next[i];
        }
        let mut starts = vec![0.0];
        for j in 0..k {
            let len = ring[j].distance(&ring[(j + 1) % k]);
            starts.push(starts[j] + len);
        }
        let length = starts[k];
        Ok(PerimeterPath { ring, starts, length })
    }

    /// Boundary point at arclength `s` (any real; taken modulo the length).
    pub fn point(&self, s: f64) -> Vector {
        let s = s.rem_euclid(self.length);
        let k = self.ring.len();
        let j = match self.starts.binary_search_by(|x| x.total_cmp(&s)) {
            Ok(j) => j.min(k - 1),
            Err(j) => j - 1,
        };
        let len = self.starts[j + 1] - self.starts[j];
        let t = (s - self.starts[j]) / len;
        if t == 0.0 {
            return self.ring[j];
        }
        self.ring[j] * (1.0 - t) + self.ring[(j + 1) % k] * t
    }
}

/// How each edge is traversed by [`vertex_fixing_map`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeMotion {
    /// Random increasing reparametrization of each edge.
    Monotone,
    /// Random back-and-forth path along the boundary with the edge's net displacement.
    Excursion,
    /// Monotone, except the first edge gains `k` extra full turns.
    NetWrap(i64),
}

/// Random piecewise-linear self-map of `∂P` fixing every vertex, sampled
/// densely enough for the winding number.
pub fn vertex_fixing_map(poly: &Polytope, seed: u64, motion: EdgeMotion) -> Result<SphereMapSamples> {
    let path = PerimeterPath::new(poly)?;
    let mut rng = sampling::rng(seed);
    let (l, k) = (path.length, path.ring.len());
    let mut domain = Vec::new();
    let mut image = Vec::new();
    for j in 0..k {
        let a = path.starts[j];
        let len = path.starts[j + 1] - a;
        let mut b = a + len;
        if let EdgeMotion::NetWrap(w) = motion {
            if j == 0 {
                b += w as f64 * l;
            }
        }
        let waypoints = lift_waypoints(&mut rng, a, b, l, motion);
        let variation: f64 = waypoints.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
        let m = ((variation / (l / 256.0)).ceil() as usize).max(8);
        let pieces = (waypoints.len() - 1) as f64;
        for i in 0..m {
            let t = i as f64 / m as f64;
            domain.push(path.point(a + t * len));
            let u = t * pieces;
            let seg = (u.floor() as usize).min(waypoints.len() - 2);
            let r = u - seg as f64;
            let s = waypoints[seg] * (1.0 - r) + waypoints[seg + 1] * r;
            image.push(if i == 0 { path.ring[j] } else { path.point(s) });
        }
    }
    Ok(SphereMapSamples::Loop { domain, image })
}

fn lift_waypoints(rng: &mut SeededRng, a: f64, b: f64, l: f64, motion: EdgeMotion) -> Vec<f64> {
    let n = rng.gen_range(0..=3);
    let mut inner: Vec<f64> = match motion {
        EdgeMotion::Excursion => (0..n).map(|_| rng.gen_range(a - 2.0 * l..b + 2.0 * l)).collect(),
        _ => (0..n).map(|_| rng.gen_range(a.min(b)..=a.max(b))).collect(),
    };
    if motion != EdgeMotion::Excursion {
        inner.sort_by(f64::total_cmp);
    }
    let mut w = vec![a];
    w.extend(inner);
    w.push(b);
    w
}

/// Random convex polygon with `k` vertices on a random centered ellipse,
/// containing the origin in its interior.
pub fn random_polygon(rng: &mut SeededRng, k: usize) -> Result<Polytope> {
    let k = k.max(3);
    loop {
        let (a, b) = (rng.gen_range(0.5..1.5), rng.gen_range(0.5..1.5));
        let rot = rng.gen_range(0.0..TAU);
        let mut ts: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..TAU)).collect();
        ts.sort_by(f64::total_cmp);
        let gaps = (0..k).map(|i| {
            let next = if i + 1 < k { ts[i + 1] } else { ts[0] + TAU };
            next - ts[i]
        });
        let (min_gap, max_gap) = gaps.fold((f64::INFINITY, 0.0_f64), |(lo, hi), g| (lo.min(g), hi.max(g)));
        if min_gap < 0.05 || max_gap > 0.9 * std::f64::consts::PI {
            continue;
        }
        let vs = ts.iter().map(|t| Vector::new2(a * t.cos(), b * t.sin()).rotate(rot)).collect();
        if let Ok(p) = Polytope::new(vs) {
            return Ok(p);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixCheckReport {
    pub vertices: usize,
    pub degree: i64,
    /// Degree after radial transport of the map to the unit circle.
    pub transported_degree: i64,
    pub max_step: f64,
    pub holds: bool,
}

/// Checks that a vertex-fixing loop map of `∂P` has degree one, computing the
/// winding after radial transport to the unit circle.
pub fn fix_extreme_degree_check(poly: &Polytope, f: &SphereMapSamples) -> Result<FixCheckReport> {
    let SphereMapSamples::Loop { domain, image } = f else {
        return Err(Error::MalformedInput("vertex-fixing check needs a planar loop".into()));
    };
    if poly.dim() != 2 {
        return Err(Error::UnsupportedDimension(poly.dim()));
    }
    f.validate()?;
    let tol = 1e-12 * poly.circumradius();
    for (index, v) in poly.vertices().iter().enumerate() {
        let fixed = domain
            .iter()
            .zip(image)
            .any(|(x, y)| x.distance(v) <= tol && y.distance(v) <= tol);
        if !fixed {
            return Err(Error::VerticesNotFixed { index });
        }
    }
    let direct = loop_winding(image)?;
    let disk = ConvexBody::disk();
    let moved = radial_transport(poly, &disk, f)?;
    let transported = loop_winding(moved.image())?;
    Ok(FixCheckReport {
        vertices: poly.vertices().len(),
        degree: direct.winding,
        transported_degree: transported.winding,
        max_step: transported.max_step,
        holds: transported.winding == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> Polytope {
        ConvexBody::hexagon().as_polytope().unwrap().clone()
    }

    #[test]
    fn identity_on_square() {
        let sq = Polytope::new(vec![
            Vector::new2(1.0, 1.0),
            Vector::new2(-1.0, 1.0),
            Vector::new2(-1.0, -1.0),
            Vector::new2(1.0, -1.0),
        ])
        .unwrap();
        let path = PerimeterPath::new(&sq).unwrap();
        assert_eq!(path.length, 8.0);
        let domain: Vec<Vector> = (0..64).map(|i| path.point(i as f64 / 8.0)).collect();
        let f = SphereMapSamples::Loop { domain: domain.clone(), image: domain };
        let r = fix_extreme_degree_check(&sq, &f).unwrap();
        assert!(r.holds && r.degree == 1);
    }

    #[test]
    fn hexagon_reparametrizations() {
        let hex = hexagon();
        for seed in 0..100 {
            let f = vertex_fixing_map(&hex, seed, EdgeMotion::Monotone).unwrap();
            assert!(fix_extreme_degree_check(&hex, &f).unwrap().holds);
        }
        let f = vertex_fixing_map(&hex, 7, EdgeMotion::Excursion).unwrap();
        assert!(fix_extreme_degree_check(&hex, &f).unwrap().holds);
    }

    #[test]
    fn net_wrap_changes_the_degree() {
        // Fixing the vertices alone does not force degree one.
        let hex = hexagon();
        let f = vertex_fixing_map(&hex, 3, EdgeMotion::NetWrap(1)).unwrap();
        let r = fix_extreme_degree_check(&hex, &f).unwrap();
        assert_eq!(r.degree, 2);
        assert!(!r.holds);
    }

    #[test]
    fn moved_vertex_is_reported() {
        let hex = hexagon();
        let f = vertex_fixing_map(&hex, 0, EdgeMotion::Monotone).unwrap();
        let SphereMapSamples::Loop { domain, mut image } = f else { unreachable!() };
        let idx = domain.iter().position(|x| x.distance(&hex.vertices()[2]) < 1e-12).unwrap();
        image[idx] = image[idx].rotate(0.01);
        let f = SphereMapSamples::Loop { domain, image };
        assert!(matches!(fix_extreme_degree_check(&hex, &f), Err(Error::VerticesNotFixed { index: 2 })));
    }
}
