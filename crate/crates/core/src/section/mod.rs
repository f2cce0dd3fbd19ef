//! Planar sections, chords and the bisected-chord solvers.
//!
//! A chord is stored by its endpoints; its midpoint is always recomputed as
//! `(p1 + p2) / 2`. Whenever a solver knows the midpoint `v` it stores the
//! second endpoint as `2v − p1` so that the stored midpoint is `v` up to one
//! rounding.

mod solver;

use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use solver::{bisected_chords_2d, chord_map, disk_chord, strip_chord, DEFAULT_CHORD_RESOLUTION};
pub(crate) use solver::sampled_chords_2d;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::vector::Vector;

/// Segment between two boundary points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub p1: Vector,
    pub p2: Vector,
}

impl Chord {
    pub fn new(p1: Vector, p2: Vector) -> Self {
        Chord { p1, p2 }
    }

    /// Chord through `p1` whose midpoint is `mid`.
    pub fn from_midpoint(p1: Vector, mid: Vector) -> Self {
        Chord { p1, p2: mid * 2.0 - p1 }
    }

    pub fn midpoint(&self) -> Vector {
        (self.p1 + self.p2) * 0.5
    }

    pub fn swapped(&self) -> Self {
        Chord { p1: self.p2, p2: self.p1 }
    }

    /// Planar chords: order the endpoints so that `(0, p1, p2)` turns
    /// counter-clockwise. Chords through the origin are left unchanged.
    pub fn ccw(self) -> Self {
        if self.p1.cross2(&self.p2) < 0.0 {
            self.swapped()
        } else {
            self
        }
    }

    /// Distance between the unordered endpoint pairs.
    pub fn d_sym(&self, other: &Chord) -> f64 {
        d_sym((self.p1, self.p2), (other.p1, other.p2))
    }

    /// Largest deviation of the endpoints from the unit sphere of `body`.
    pub fn gauge_defect(&self, body: &ConvexBody) -> Result<f64> {
        Ok((body.gauge(&self.p1)? - 1.0).abs().max((body.gauge(&self.p2)? - 1.0).abs()))
    }
}

/// Quotient distance on unordered pairs:
/// `min(max(|a−c|, |b−d|), max(|a−d|, |b−c|))`.
pub fn d_sym((a, b): (Vector, Vector), (c, d): (Vector, Vector)) -> f64 {
    let straight = a.distance(&c).max(b.distance(&d));
    let crossed = a.distance(&d).max(b.distance(&c));
    straight.min(crossed)
}

/// One row per chord: `p1_x,p1_y[,p1_z],p2_x,p2_y[,p2_z]`.
pub fn write_chords_csv<W: Write>(out: W, chords: &[Chord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let dim = chords.first().map_or(2, |c| c.p1.dim());
    let axes = ["x", "y", "z"];
    let mut header = Vec::new();
    for end in ["p1", "p2"] {
        for a in &axes[..dim] {
            header.push(format!("{end}_{a}"));
        }
    }
    w.write_record(&header)?;
    for c in chords {
        let row: Vec<String> = c.p1.as_slice().iter().chain(c.p2.as_slice()).map(|x| x.to_string()).collect();
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// The 2-plane `span{v, q}` with orthonormal basis `b1 = q/|q|` and `b2`
/// chosen so that `v` has a positive second coordinate, and the body
/// `K ∩ span{v, q}` in those coordinates.
#[derive(Clone, Debug)]
pub struct PlanarSection {
    pub basis: [Vector; 2],
    pub body: ConvexBody,
}

impl PlanarSection {
    /// Coordinates of an ambient point (assumed to lie in the plane).
    pub fn coords(&self, x: &Vector) -> Vector {
        Vector::new2(x.dot(&self.basis[0]), x.dot(&self.basis[1]))
    }

    pub fn ambient(&self, y: &Vector) -> Vector {
        self.basis[0] * y.x() + self.basis[1] * y.y()
    }

    pub fn chord_to_ambient(&self, c: &Chord) -> Chord {
        Chord::new(self.ambient(&c.p1), self.ambient(&c.p2))
    }
}

/// Builds the section of `body` by the plane through the origin, `v` and `q`.
pub fn make_section(body: &ConvexBody, v: &Vector, q: &Vector) -> Result<PlanarSection> {
    make_section_arc(Arc::new(body.clone()), v, q)
}

fn make_section_arc(body: Arc<ConvexBody>, v: &Vector, q: &Vector) -> Result<PlanarSection> {
    for x in [v, q] {
        if x.dim() != body.dim() {
            return Err(Error::DimensionMismatch { expected: body.dim(), got: x.dim() });
        }
        if !x.is_finite() {
            return Err(Error::NonFiniteInput);
        }
    }
    let (qq, vv, qv) = (q.norm_sq(), v.norm_sq(), q.dot(v));
    let gram = qq * vv - qv * qv;
    if !(gram > 1e-12 * qq * vv) {
        return Err(Error::DegenerateSection);
    }
    let b1 = *q / qq.sqrt();
    let b2 = (*v - b1 * v.dot(&b1)).normalized().ok_or(Error::DegenerateSection)?;
    let basis = [b1, b2];
    Ok(PlanarSection { basis, body: ConvexBody::section_of(body, basis) })
}

/// Section chooser off the line `ℝq`: for a query `v ∉ ℝq`, the unique chord
/// of `K ∩ span{v, q}` bisected by `v`, in ambient coordinates and ordered
/// counter-clockwise with respect to the section basis.
pub struct OffLineSection {
    body: Arc<ConvexBody>,
    q: Vector,
}

pub fn section_off_line(body: &ConvexBody, q: &Vector) -> Result<OffLineSection> {
    if !body.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    let g = body.gauge(q)?;
    if (g - 1.0).abs() > 1e-8 {
        return Err(Error::NotOnBoundary { gauge: g });
    }
    Ok(OffLineSection { body: Arc::new(body.clone()), q: *q })
}

impl OffLineSection {
    pub fn chord(&self, v: &Vector) -> Result<Chord> {
        let s = make_section_arc(self.body.clone(), v, &self.q)?;
        let w = s.coords(v);
        let c = chord_map(&s.body, &w)?;
        let p1 = s.ambient(&c.p1);
        Ok(Chord::from_midpoint(p1, *v))
    }
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::*;
    use crate::sampling;

    #[test]
    fn ball_section_is_the_disk() {
        let ball = ConvexBody::ball3();
        let s = make_section(&ball, &Vector::new3(0.0, 0.5, 0.0), &Vector::new3(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(s.basis[0], Vector::new3(1.0, 0.0, 0.0));
        assert_eq!(s.basis[1], Vector::new3(0.0, 1.0, 0.0));
        assert_eq!(s.body.gauge(&Vector::new2(0.6, 0.8)).unwrap(), 1.0);
        assert!(matches!(
            make_section(&ball, &Vector::new3(2.0, 0.0, 0.0), &Vector::new3(1.0, 0.0, 0.0)),
            Err(Error::DegenerateSection)
        ));
    }

    #[test]
    fn section_gauge_consistency() {
        let k = ConvexBody::lp_with_radii(3.0, vec![1.0, 2.0, 0.5]).unwrap();
        let mut rng = sampling::rng(3);
        for _ in 0..1000 {
            let v = sampling::random_unit(&mut rng, 3);
            let q = k.boundary_point(&sampling::random_unit(&mut rng, 3)).unwrap();
            let s = make_section(&k, &v, &q).unwrap();
            let y = Vector::new2(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let lhs = s.body.gauge(&y).unwrap();
            let rhs = k.gauge(&s.ambient(&y)).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }
    }

    #[test]
    fn d_sym_basics() {
        let a = Chord::new(Vector::new2(1.0, 0.0), Vector::new2(0.0, 1.0));
        assert_eq!(a.d_sym(&a.swapped()), 0.0);
        let b = Chord::new(Vector::new2(1.0, 0.0), Vector::new2(0.0, 2.0));
        assert_eq!(a.d_sym(&b), 1.0);
    }

    #[test]
    fn off_line_section_in_the_ball() {
        let ball = ConvexBody::ball3();
        let sec = section_off_line(&ball, &Vector::new3(0.0, 0.0, 1.0)).unwrap();
        let c = sec.chord(&Vector::new3(0.5, 0.0, 0.0)).unwrap();
        let h = 0.75f64.sqrt();
        let expect = Chord::new(Vector::new3(0.5, 0.0, h), Vector::new3(0.5, 0.0, -h));
        assert!(c.d_sym(&expect) < 1e-12);
        assert!(matches!(sec.chord(&Vector::new3(0.0, 0.0, 0.5)), Err(Error::DegenerateSection)));
        assert!(matches!(
            section_off_line(&ConvexBody::lp(f64::INFINITY, 3).unwrap(), &Vector::new3(0.0, 0.0, 1.0)),
            Err(Error::NotStrictlyConvex)
        ));
    }

    #[test]
    fn off_line_section_continuity_on_a_loop() {
        // Loop at distance 0.3 from the z-axis.
        let ball = ConvexBody::ball3();
        let sec = section_off_line(&ball, &Vector::new3(0.0, 0.0, 1.0)).unwrap();
        let chords: Vec<Chord> = sampling::angles(720, 0.0)
            .map(|t| sec.chord(&Vector::new3(0.3 * t.cos(), 0.3 * t.sin(), 0.2)).unwrap())
            .collect();
        let jump = (0..chords.len())
            .map(|i| chords[i].d_sym(&chords[(i + 1) % chords.len()]))
            .fold(0.0, f64::max);
        assert!(jump < 0.01, "jump {jump}");
    }

    #[test]
    fn csv_rows() {
        let mut out = Vec::new();
        write_chords_csv(&mut out, &[Chord::new(Vector::new2(1.0, 0.0), Vector::new2(-1.0, 0.5))]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "p1_x,p1_y,p2_x,p2_y\n1,0,-1,0.5\n");
    }
}
