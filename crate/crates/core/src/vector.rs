//! Small fixed-capacity vectors for the ambient spaces R¹, R² and R³.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Maximum supported ambient dimension.
pub const MAX_DIM: usize = 3;

/// A point or direction in R^n, n ≤ 3.
///
/// Coordinates beyond `dim` are kept at zero so that equality and the
/// arithmetic operators never see stale data.
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    c: [f64; MAX_DIM],
    dim: usize,
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} unsupported");
        Vector { c: [0.0; MAX_DIM], dim }
    }

    pub fn new2(x: f64, y: f64) -> Self {
        Vector { c: [x, y, 0.0], dim: 2 }
    }

    pub fn new3(x: f64, y: f64, z: f64) -> Self {
        Vector { c: [x, y, z], dim: 3 }
    }

    pub fn scalar(t: f64) -> Self {
        Vector { c: [t, 0.0, 0.0], dim: 1 }
    }

    pub fn from_slice(xs: &[f64]) -> Result<Self> {
        if xs.is_empty() || xs.len() > MAX_DIM {
            return Err(Error::UnsupportedDimension(xs.len()));
        }
        let mut v = Vector::zeros(xs.len());
        v.c[..xs.len()].copy_from_slice(xs);
        Ok(v)
    }

    /// Unit vector `e_i` in R^dim.
    pub fn axis(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.c[i] = 1.0;
        v
    }

    /// Unit vector at angle `theta` in the plane.
    pub fn polar(theta: f64) -> Self {
        Vector::new2(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.c[0]
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.c[1]
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.c[2]
    }

    pub fn set(&mut self, i: usize, value: f64) {
        assert!(i < self.dim);
        self.c[i] = value;
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.c[0] * other.c[0] + self.c[1] * other.c[1] + self.c[2] * other.c[2]
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        (*self - *other).norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.as_slice().iter().all(|&x| x == 0.0)
    }

    /// Euclidean normalization. Returns `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| *self / n)
    }

    /// Planar cross product `x₁y₂ − y₁x₂` (twice the signed area of `(0, self, other)`).
    #[inline]
    pub fn cross2(&self, other: &Vector) -> f64 {
        self.c[0] * other.c[1] - self.c[1] * other.c[0]
    }

    pub fn cross3(&self, other: &Vector) -> Vector {
        let (a, b) = (&self.c, &other.c);
        Vector::new3(
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
    }

    /// Counter-clockwise quarter turn in the plane.
    pub fn rot90(&self) -> Vector {
        Vector::new2(-self.c[1], self.c[0])
    }

    /// Planar rotation by `angle`.
    pub fn rotate(&self, angle: f64) -> Vector {
        let (s, c) = angle.sin_cos();
        Vector::new2(c * self.c[0] - s * self.c[1], s * self.c[0] + c * self.c[1])
    }

    /// Polar angle of a planar vector in (−π, π].
    pub fn angle(&self) -> f64 {
        self.c[1].atan2(self.c[0])
    }
}

/// `det[a b c]` for three vectors in R³.
pub fn det3(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    a.dot(&b.cross3(c))
}

/// Euclidean distance from `x` to the segment `[a, b]`.
pub fn segment_distance(x: &Vector, a: &Vector, b: &Vector) -> f64 {
    let d = *b - *a;
    let len2 = d.norm_sq();
    if len2 == 0.0 {
        return x.distance(a);
    }
    let t = ((*x - *a).dot(&d) / len2).clamp(0.0, 1.0);
    x.distance(&(*a + d * t))
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(self, o: Vector) -> Vector {
        debug_assert_eq!(self.dim, o.dim);
        Vector {
            c: [self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2]],
            dim: self.dim,
        }
    }
}

impl AddAssign for Vector {
    fn add_assign(&mut self, o: Vector) {
        *self = *self + o;
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(self, o: Vector) -> Vector {
        debug_assert_eq!(self.dim, o.dim);
        Vector {
            c: [self.c[0] - o.c[0], self.c[1] - o.c[1], self.c[2] - o.c[2]],
            dim: self.dim,
        }
    }
}

impl SubAssign for Vector {
    fn sub_assign(&mut self, o: Vector) {
        *self = *self - o;
    }
}

impl Neg for Vector {
    type Output = Vector;
    #[inline]
    fn neg(self) -> Vector {
        Vector { c: [-self.c[0], -self.c[1], -self.c[2]], dim: self.dim }
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(self, s: f64) -> Vector {
        Vector { c: [self.c[0] * s, self.c[1] * s, self.c[2] * s], dim: self.dim }
    }
}

impl Mul<Vector> for f64 {
    type Output = Vector;
    #[inline]
    fn mul(self, v: Vector) -> Vector {
        v * self
    }
}

impl Div<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn div(self, s: f64) -> Vector {
        Vector { c: [self.c[0] / s, self.c[1] / s, self.c[2] / s], dim: self.dim }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let xs = Vec::<f64>::deserialize(d)?;
        Vector::from_slice(&xs).map_err(D::Error::custom)
    }
}
