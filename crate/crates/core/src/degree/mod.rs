//! Degrees of sampled self-maps of spheres: winding numbers of loops in the
//! plane and signed ray crossings of triangulated maps of S².

mod fixcheck;
mod pl;
mod winding;

use serde::{Deserialize, Serialize};

pub use fixcheck::{fix_extreme_degree_check, random_polygon, vertex_fixing_map, EdgeMotion, FixCheckReport, PerimeterPath};
pub use pl::{icosphere, pl_degree, pl_degree_checked, validate_triangulation, PlDegreeReport};
pub use winding::{loop_winding, winding_number, Winding};

use crate::error::{Error, Result};
use crate::vector::Vector;

/// A sampled map between boundaries of bodies: a cyclically ordered loop in
/// the plane, or a triangulated sphere in space with one image per vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SphereMapSamples {
    Surface {
        vertices: Vec<Vector>,
        faces: Vec<[usize; 3]>,
        image: Vec<Vector>,
    },
    Loop {
        domain: Vec<Vector>,
        image: Vec<Vector>,
    },
}

impl SphereMapSamples {
    /// Loop samples `x ↦ f(x)` on the given domain points.
    pub fn loop_from_fn<F: Fn(&Vector) -> Vector>(domain: Vec<Vector>, f: F) -> Self {
        let image = domain.iter().map(f).collect();
        SphereMapSamples::Loop { domain, image }
    }

    pub fn image(&self) -> &[Vector] {
        match self {
            SphereMapSamples::Loop { image, .. } | SphereMapSamples::Surface { image, .. } => image,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (n, image) = match self {
            SphereMapSamples::Loop { domain, image } => (domain.len(), image),
            SphereMapSamples::Surface { vertices, faces, image } => {
                validate_triangulation(vertices.len(), faces)?;
                (vertices.len(), image)
            }
        };
        if n != image.len() {
            return Err(Error::MalformedInput(format!("{n} domain points but {} images", image.len())));
        }
        if let Some(index) = image.iter().position(Vector::is_zero) {
            return Err(Error::ZeroImage { index });
        }
        Ok(())
    }
}

/// Degree of a sampled sphere map: winding number for loops, PL degree
/// (checked over several regular values) for triangulated surfaces.
pub fn degree(f: &SphereMapSamples, seed: u64) -> Result<i64> {
    match f {
        SphereMapSamples::Loop { .. } => winding_number(f),
        SphereMapSamples::Surface { .. } => Ok(pl_degree_checked(f, seed)?.degree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let l: SphereMapSamples = serde_json::from_str(r#"{"domain":[[1,0],[0,1],[-1,0]],"image":[[1,0],[0,1],[-1,0]]}"#).unwrap();
        assert!(matches!(l, SphereMapSamples::Loop { .. }));
        let (v, f) = icosphere(0);
        let s = SphereMapSamples::Surface { vertices: v.clone(), faces: f, image: v };
        let text = serde_json::to_string(&s).unwrap();
        let back: SphereMapSamples = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(degree(&back, 0).unwrap(), 1);
    }
}
