//! Convex polytopes in R² and R³ given by their vertices, with facet data
//! recovered by a convex hull.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{segment_distance, Vector};

/// Supporting hyperplane `⟨normal, x⟩ = offset` of a facet, with the facet's
/// vertex indices (counter-clockwise seen from outside).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vector,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

impl Facet {
    fn signed_distance(&self, x: &Vector) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
}

impl Polytope {
    /// Builds a polytope whose listed vertices must all be extreme.
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        let (dim, extreme, facets) = hull(&vertices)?;
        if extreme.len() != vertices.len() {
            let bad = (0..vertices.len()).find(|i| !extreme.contains(i)).unwrap_or(0);
            return Err(Error::InvalidBody(format!(
                "vertex {bad} {} is not an extreme point",
                vertices[bad]
            )));
        }
        Ok(Polytope { dim, vertices, facets })
    }

    /// Convex hull of arbitrary points; non-extreme points are dropped.
    pub fn from_points(points: &[Vector]) -> Result<Self> {
        let (_, extreme, _) = hull(points)?;
        let vertices = extreme.iter().map(|&i| points[i]).collect();
        Polytope::new(vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Whether the origin is an interior point (all facet offsets positive).
    pub fn contains_origin_in_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset > 1e-12)
    }

    /// Whether the vertex set is closed under negation.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.vertices
            .iter()
            .all(|v| self.vertices.iter().any(|w| (*v + *w).norm() <= tol))
    }

    /// Minkowski functional, `max_j ⟨n_j, v⟩ / h_j`.
    pub fn gauge(&self, v: &Vector) -> Result<f64> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim() });
        }
        if !self.contains_origin_in_interior() {
            return Err(Error::InvalidBody("origin is not interior to the polytope".into()));
        }
        let g = self
            .facets
            .iter()
            .map(|f| f.normal.dot(v) / f.offset)
            .fold(0.0_f64, f64::max);
        Ok(g)
    }

    /// Maximum of `⟨u, ·⟩`, attained at the lowest-index maximizing vertex.
    pub fn support(&self, u: &Vector) -> (f64, usize) {
        let scale = self.circumradius() * u.norm();
        let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);
        let best = self.vertices.iter().map(|v| u.dot(v)).fold(f64::NEG_INFINITY, f64::max);
        let idx = self
            .vertices
            .iter()
            .position(|v| u.dot(v) >= best - tol)
            .expect("nonempty vertex set");
        (best, idx)
    }

    pub fn circumradius(&self) -> f64 {
        self.vertices.iter().map(Vector::norm).fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.facets.iter().all(|f| f.signed_distance(x) <= tol)
    }

    /// Euclidean distance from `x` to the polytope (zero inside).
    pub fn distance_to(&self, x: &Vector) -> f64 {
        if self.contains(x, 0.0) {
            return 0.0;
        }
        self.facets
            .iter()
            .map(|f| self.facet_distance(f, x))
            .fold(f64::INFINITY, f64::min)
    }

    fn facet_distance(&self, f: &Facet, x: &Vector) -> f64 {
        let vs: Vec<Vector> = f.vertices.iter().map(|&i| self.vertices[i]).collect();
        if self.dim == 2 {
            return segment_distance(x, &vs[0], &vs[1]);
        }
        let s = f.signed_distance(x);
        let y = *x - f.normal * s;
        let k = vs.len();
        let inside = (0..k).all(|i| {
            let a = vs[i];
            let b = vs[(i + 1) % k];
            (b - a).cross3(&(y - a)).dot(&f.normal) >= -1e-14
        });
        if inside {
            s.abs()
        } else {
            (0..k)
                .map(|i| segment_distance(x, &vs[i], &vs[(i + 1) % k]))
                .fold(f64::INFINITY, f64::min)
        }
    }

    /// Exact Hausdorff distance between two polytopes: the farthest point of
    /// either body from the other is one of its vertices.
    pub fn hausdorff(&self, other: &Polytope) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let a = self.vertices.iter().map(|v| other.distance_to(v)).fold(0.0, f64::max);
        let b = other.vertices.iter().map(|v| self.distance_to(v)).fold(0.0, f64::max);
        Ok(a.max(b))
    }
}

/// Convex hull: returns the ambient dimension, indices of the extreme points
/// and the facets (indices refer to `points`).
fn hull(points: &[Vector]) -> Result<(usize, Vec<usize>, Vec<Facet>)> {
    let dim = points.first().map(Vector::dim).ok_or(Error::InvalidBody("no vertices".into()))?;
    if !(2..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
        }
        if !p.is_finite() {
            return Err(Error::NonFiniteInput);
        }
    }
    if points.len() < dim + 1 {
        return Err(Error::InvalidBody(format!(
            "{} points cannot span a {dim}-dimensional body",
            points.len()
        )));
    }
    let scale = points.iter().map(Vector::norm).fold(0.0, f64::max).max(1e-300);
    let (extreme, mut facets) = if dim == 2 { hull2(points, scale) } else { hull3(points, scale) };
    if facets.len() < dim + 1 {
        return Err(Error::InvalidBody("points are degenerate (no interior)".into()));
    }
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok((dim, extreme, facets))
}

/// Andrew's monotone chain; collinear points are not hull vertices.
fn hull2(points: &[Vector], scale: f64) -> (Vec<usize>, Vec<Facet>) {
    let ring = hull2_ring(points, scale);
    let k = ring.len();
    let facets = (0..k)
        .map(|e| {
            let (a, b) = (points[ring[e]], points[ring[(e + 1) % k]]);
            let d = b - a;
            let normal = Vector::new2(d.y(), -d.x()).normalized().unwrap_or(Vector::zeros(2));
            Facet { normal, offset: normal.dot(&a), vertices: vec![ring[e], ring[(e + 1) % k]] }
        })
        .collect();
    let mut extreme = ring;
    extreme.sort_unstable();
    (extreme, facets)
}

/// Incremental hull: triangles of the hull surface are merged into planar
/// facets whose vertex rings come from a planar hull in a tangent frame.
fn hull3(points: &[Vector], scale: f64) -> (Vec<usize>, Vec<Facet>) {
    let tol = 1e-10 * scale;
    let n = points.len();
    let mut planes: Vec<(Vector, f64)> = Vec::new();
    for [a, b, c] in hull3_triangles(points, tol) {
        let Some(normal) = (points[b] - points[a]).cross3(&(points[c] - points[a])).normalized() else {
            continue;
        };
        let offset = normal.dot(&points[a]);
        let dup = planes
            .iter()
            .any(|(m, h)| m.dot(&normal) > 1.0 - 1e-9 && (h - offset).abs() <= tol);
        if !dup {
            planes.push((normal, offset));
        }
    }
    let mut extreme = Vec::new();
    let mut facets = Vec::new();
    for (normal, offset) in planes {
        let on: Vec<usize> = (0..n).filter(|&i| (normal.dot(&points[i]) - offset).abs() <= tol).collect();
        // Facet polygon: 2D hull of the coplanar points in a tangent frame.
        let (t1, t2) = crate::sampling::tangent_basis(&normal);
        let flat: Vec<Vector> = on.iter().map(|&i| Vector::new2(points[i].dot(&t1), points[i].dot(&t2))).collect();
        let ring_local = hull2_ring(&flat, scale);
        let ring: Vec<usize> = ring_local.into_iter().map(|l| on[l]).collect();
        extreme.extend(ring.iter().copied());
        facets.push(Facet { normal, offset, vertices: ring });
    }
    extreme.sort_unstable();
    extreme.dedup();
    (extreme, facets)
}

/// Outward triangles of the hull surface; empty if the points are coplanar.
fn hull3_triangles(points: &[Vector], tol: f64) -> Vec<[usize; 3]> {
    let n = points.len();
    let far = |key: &dyn Fn(usize) -> f64| (0..n).max_by(|&i, &j| key(i).total_cmp(&key(j))).expect("nonempty");
    let i0 = 0;
    let i1 = far(&|i| points[i].distance(&points[i0]));
    let i2 = far(&|i| (points[i1] - points[i0]).cross3(&(points[i] - points[i0])).norm());
    let normal = (points[i1] - points[i0]).cross3(&(points[i2] - points[i0]));
    let i3 = far(&|i| normal.dot(&(points[i] - points[i0])).abs());
    if normal.dot(&(points[i3] - points[i0])).abs() <= tol * normal.norm() {
        return Vec::new();
    }
    let signed = |f: &[usize; 3], p: &Vector| {
        let (a, b, c) = (points[f[0]], points[f[1]], points[f[2]]);
        let m = (b - a).cross3(&(c - a));
        m.dot(&(*p - a)) / m.norm()
    };
    let inner = (points[i0] + points[i1] + points[i2] + points[i3]) * 0.25;
    let mut faces: Vec<[usize; 3]> = [[i0, i1, i2], [i0, i1, i3], [i0, i2, i3], [i1, i2, i3]]
        .into_iter()
        .map(|f| if signed(&f, &inner) > 0.0 { [f[0], f[2], f[1]] } else { f })
        .collect();
    for p in 0..n {
        if [i0, i1, i2, i3].contains(&p) {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| signed(f, &points[p]) > tol).collect();
        if !visible.contains(&true) {
            continue;
        }
        let mut edges = std::collections::HashSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, v)| **v) {
            for e in 0..3 {
                edges.insert((f[e], f[(e + 1) % 3]));
            }
        }
        let mut next: Vec<[usize; 3]> = faces.iter().zip(&visible).filter(|(_, v)| !**v).map(|(f, _)| *f).collect();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, v)| **v) {
            for e in 0..3 {
                let (a, b) = (f[e], f[(e + 1) % 3]);
                if !edges.contains(&(b, a)) {
                    next.push([a, b, p]);
                }
            }
        }
        faces = next;
    }
    faces
}

/// Counter-clockwise hull ring of planar points (indices into `flat`).
fn hull2_ring(flat: &[Vector], scale: f64) -> Vec<usize> {
    let tol = 1e-12 * scale * scale;
    let mut idx: Vec<usize> = (0..flat.len()).collect();
    idx.sort_by(|&i, &j| flat[i].x().total_cmp(&flat[j].x()).then(flat[i].y().total_cmp(&flat[j].y())));
    idx.dedup_by(|i, j| flat[*i].distance(&flat[*j]) <= 1e-14 * scale);
    if idx.len() < 3 {
        return idx;
    }
    let turn = |o: usize, a: usize, b: usize| (flat[a] - flat[o]).cross2(&(flat[b] - flat[o]));
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], i) <= tol {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], i) <= tol {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polytope {
        Polytope::new(vec![
            Vector::new2(1.0, 1.0),
            Vector::new2(-1.0, 1.0),
            Vector::new2(-1.0, -1.0),
            Vector::new2(1.0, -1.0),
        ])
        .unwrap()
    }

    fn cube() -> Polytope {
        let mut vs = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    vs.push(Vector::new3(x, y, z));
                }
            }
        }
        Polytope::new(vs).unwrap()
    }

    #[test]
    fn square_facets_and_gauge() {
        let sq = square();
        assert_eq!(sq.facets().len(), 4);
        assert!((sq.gauge(&Vector::new2(0.5, 0.25)).unwrap() - 0.5).abs() < 1e-15);
        assert!(sq.is_symmetric(1e-12));
    }

    #[test]
    fn cube_has_six_merged_facets() {
        let c = cube();
        assert_eq!(c.facets().len(), 6);
        for f in c.facets() {
            assert_eq!(f.vertices.len(), 4);
            assert!((f.offset - 1.0).abs() < 1e-12);
        }
        assert!((c.gauge(&Vector::new3(0.2, -0.7, 0.1)).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn non_extreme_vertex_rejected() {
        let r = Polytope::new(vec![
            Vector::new2(1.0, 0.0),
            Vector::new2(0.0, 1.0),
            Vector::new2(-1.0, 0.0),
            Vector::new2(0.0, -1.0),
            Vector::new2(0.5, 0.5),
        ]);
        assert!(matches!(r, Err(Error::InvalidBody(_))));
        let p = Polytope::from_points(&[
            Vector::new2(1.0, 0.0),
            Vector::new2(0.0, 1.0),
            Vector::new2(-1.0, 0.0),
            Vector::new2(0.0, -1.0),
            Vector::new2(0.5, 0.5),
            Vector::new2(0.1, 0.1),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn support_tie_break_is_lowest_index() {
        // (1,1) is listed before (1,-1).
        let sq = square();
        let (h, i) = sq.support(&Vector::new2(1.0, 0.0));
        assert_eq!(h, 1.0);
        assert_eq!(sq.vertices()[i], Vector::new2(1.0, 1.0));
    }

    #[test]
    fn point_distances() {
        let sq = square();
        assert_eq!(sq.distance_to(&Vector::new2(0.2, 0.3)), 0.0);
        assert!((sq.distance_to(&Vector::new2(3.0, 0.0)) - 2.0).abs() < 1e-15);
        assert!((sq.distance_to(&Vector::new2(2.0, 2.0)) - 2f64.sqrt()).abs() < 1e-15);
        let c = cube();
        assert!((c.distance_to(&Vector::new3(0.0, 0.0, 3.0)) - 2.0).abs() < 1e-12);
        assert!((c.distance_to(&Vector::new3(2.0, 2.0, 0.0)) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_square_diamond() {
        let sq = square();
        let diamond = Polytope::new(vec![
            Vector::new2(1.0, 0.0),
            Vector::new2(0.0, 1.0),
            Vector::new2(-1.0, 0.0),
            Vector::new2(0.0, -1.0),
        ])
        .unwrap();
        // Square corner (1,1) is at distance 1/√2 from the edge x+y=1.
        let d = sq.hausdorff(&diamond).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-14);
        assert_eq!(sq.hausdorff(&sq).unwrap(), 0.0);
    }
}
