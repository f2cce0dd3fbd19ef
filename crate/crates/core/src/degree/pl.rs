use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use super::SphereMapSamples;
use crate::error::{Error, Result};
use crate::sampling;
use crate::vector::{det3, Vector};

const EDGE_MARGIN: f64 = 1e-9;
const ATTEMPTS: usize = 16;

/// Unit icosahedron refined `subdivisions` times, faces counter-clockwise
/// seen from outside.
pub fn icosphere(subdivisions: usize) -> (Vec<Vector>, Vec<[usize; 3]>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ];
    let mut vertices: Vec<Vector> = raw
        .iter()
        .map(|&(x, y, z)| Vector::new3(x, y, z).normalized().expect("nonzero"))
        .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, vs: &mut Vec<Vector>| -> usize {
            let key = (a.min(b), a.max(b));
            *cache.entry(key).or_insert_with(|| {
                vs.push((vs[a] + vs[b]).normalized().expect("nonantipodal"));
                vs.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    for f in &mut faces {
        if det3(&vertices[f[0]], &vertices[f[1]], &vertices[f[2]]) < 0.0 {
            f.swap(1, 2);
        }
    }
    (vertices, faces)
}

/// Checks that the faces form a closed oriented surface with Euler
/// characteristic 2: every directed edge occurs once and is matched by its
/// reverse.
pub fn validate_triangulation(vertex_count: usize, faces: &[[usize; 3]]) -> Result<()> {
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    let mut used = vec![false; vertex_count];
    for (k, f) in faces.iter().enumerate() {
        if f.iter().any(|&i| i >= vertex_count) {
            return Err(Error::BadTriangulation(format!("face {k} references a missing vertex")));
        }
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(Error::BadTriangulation(format!("face {k} repeats a vertex")));
        }
        for i in 0..3 {
            used[f[i]] = true;
            *edges.entry((f[i], f[(i + 1) % 3])).or_default() += 1;
        }
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(Error::BadTriangulation(format!("vertex {i} belongs to no face")));
    }
    for (&(a, b), &count) in &edges {
        if count != 1 || edges.get(&(b, a)) != Some(&1) {
            return Err(Error::BadTriangulation(format!("edge ({a}, {b}) is not matched by a single reverse edge")));
        }
    }
    let euler = vertex_count as i64 - (edges.len() / 2) as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(Error::BadTriangulation(format!("Euler characteristic {euler}, expected 2")));
    }
    Ok(())
}

/// Signed count of image triangles whose cone contains the ray through `y`.
/// `None` when the ray passes within the margin of an image edge.
fn crossing_count(vertices_image: &[Vector], faces: &[[usize; 3]], y: &Vector) -> Option<i64> {
    let mut count = 0;
    for f in faces {
        let (a, b, c) = (vertices_image[f[0]], vertices_image[f[1]], vertices_image[f[2]]);
        let det = det3(&a, &b, &c);
        let scale = a.norm() * b.norm() * c.norm();
        if det.abs() <= 1e-14 * scale {
            continue;
        }
        let alpha = det3(y, &b, &c) / det;
        let beta = det3(&a, y, &c) / det;
        let gamma = det3(&a, &b, y) / det;
        let (lo, hi) = (alpha.min(beta).min(gamma), alpha.max(beta).max(gamma));
        if lo > EDGE_MARGIN {
            count += det.signum() as i64;
        } else if lo >= -EDGE_MARGIN && hi > 0.0 {
            return None;
        }
    }
    Some(count)
}

/// PL degree of a triangulated sphere map at the regular value `y`; `y` is
/// perturbed (up to 16 times) when its ray grazes an image edge.
pub fn pl_degree(f: &SphereMapSamples, regular_value: &Vector) -> Result<i64> {
    let SphereMapSamples::Surface { faces, image, .. } = f else {
        return Err(Error::MalformedInput("PL degree needs a triangulated surface".into()));
    };
    f.validate()?;
    let y0 = regular_value.normalized().ok_or(Error::ZeroVector)?;
    let mut rng = sampling::rng(0x9e1);
    let mut y = y0;
    for _ in 0..ATTEMPTS {
        if let Some(d) = crossing_count(image, faces, &y) {
            return Ok(d);
        }
        let mut e = Vector::zeros(3);
        for i in 0..3 {
            e.set(i, rng.gen_range(-1e-4..1e-4));
        }
        y = (y0 + e).normalized().ok_or(Error::ZeroVector)?;
    }
    Err(Error::NonRegularValue { attempts: ATTEMPTS })
}

#[derive(Clone, Debug, Serialize)]
pub struct PlDegreeReport {
    pub degree: i64,
    pub values: Vec<i64>,
    pub consistent: bool,
}

/// PL degree at 8 seeded random regular values, with a consistency flag.
pub fn pl_degree_checked(f: &SphereMapSamples, seed: u64) -> Result<PlDegreeReport> {
    let mut rng = sampling::rng(seed);
    let values = (0..8)
        .map(|_| pl_degree(f, &sampling::random_unit(&mut rng, 3)))
        .collect::<Result<Vec<_>>>()?;
    let consistent = values.iter().all(|d| *d == values[0]);
    if !consistent {
        return Err(Error::MalformedInput(format!("degree depends on the regular value: {values:?}")));
    }
    Ok(PlDegreeReport { degree: values[0], values, consistent })
}
