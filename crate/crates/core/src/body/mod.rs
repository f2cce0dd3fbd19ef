//! Origin-symmetric convex bodies described by oracles.
//!
//! Every downstream algorithm only needs three queries: the Minkowski gauge
//! `‖v‖_K`, the support function `h_K(u)` with a maximizer, and the boundary
//! point along a ray. Closed forms are used for ℓp balls, ellipsoids and
//! polytopes; a membership-only oracle falls back to bisection along rays.

mod approx;
mod polytope;
mod spec;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use approx::{hausdorff_distance, polytope_approx, radial_transport, HausdorffEstimate, HausdorffTarget};
pub use polytope::{Facet, Polytope};
pub use spec::{BodySpec, Exponent};

use crate::error::{Error, Result};
use crate::sampling::{self, periodic_min, sphere_min};
use crate::vector::Vector;

/// Default absolute tolerance of the ray bisection used by membership oracles.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Anything with a Minkowski gauge around an interior origin: convex bodies
/// and (not necessarily symmetric) polytopes.
pub trait RadialBody: Sync {
    fn dim(&self) -> usize;

    fn gauge(&self, v: &Vector) -> Result<f64>;

    /// The boundary point `u / gauge(u)` on the ray through `u`.
    fn boundary_point(&self, u: &Vector) -> Result<Vector> {
        if !u.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        if u.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = self.gauge(u)?;
        Ok(*u / g)
    }
}

impl RadialBody for Polytope {
    fn dim(&self) -> usize {
        Polytope::dim(self)
    }

    fn gauge(&self, v: &Vector) -> Result<f64> {
        Polytope::gauge(self, v)
    }
}

/// Membership predicate `x ∈ K` for bodies known only through an oracle.
pub type MembershipFn = Arc<dyn Fn(&Vector) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum BodyKind {
    /// `{x : Σ |x_i / r_i|^p ≤ 1}`; `p = ∞` gives a box.
    Lp { p: f64, radii: Vec<f64> },
    /// `{x : Σ (x_i / a_i)² ≤ 1}`.
    Ellipsoid { axes: Vec<f64> },
    Polytope(Polytope),
    Oracle { contains: MembershipFn, strictly_convex: bool, radial_floor: f64 },
    /// Planar section `K ∩ span{b1, b2}` in the coordinates of an orthonormal basis.
    Section { ambient: Arc<ConvexBody>, basis: [Vector; 2] },
}

#[derive(Clone)]
pub struct ConvexBody {
    dim: usize,
    kind: BodyKind,
    tolerance: f64,
    inradius: OnceLock<f64>,
    circumradius: OnceLock<f64>,
}

impl fmt::Debug for ConvexBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConvexBody({})", self.label())
    }
}

impl ConvexBody {
    fn from_kind(dim: usize, kind: BodyKind) -> Self {
        ConvexBody {
            dim,
            kind,
            tolerance: DEFAULT_TOLERANCE,
            inradius: OnceLock::new(),
            circumradius: OnceLock::new(),
        }
    }

    fn check_dim(dim: usize) -> Result<()> {
        if (2..=3).contains(&dim) {
            Ok(())
        } else {
            Err(Error::UnsupportedDimension(dim))
        }
    }

    /// Unit ℓp ball; `p` may be `f64::INFINITY`.
    pub fn lp(p: f64, dim: usize) -> Result<Self> {
        Self::lp_with_radii(p, vec![1.0; dim])
    }

    pub fn lp_with_radii(p: f64, radii: Vec<f64>) -> Result<Self> {
        Self::check_dim(radii.len())?;
        if !(p >= 1.0) {
            return Err(Error::InvalidBody(format!("ℓp exponent {p} must be >= 1")));
        }
        if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::InvalidBody("ℓp radii must be positive and finite".into()));
        }
        Ok(Self::from_kind(radii.len(), BodyKind::Lp { p, radii }))
    }

    /// Ellipse (2 axes) or ellipsoid (3 axes) with the given semi-axes.
    pub fn ellipsoid(axes: Vec<f64>) -> Result<Self> {
        Self::check_dim(axes.len())?;
        if axes.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::InvalidBody("semi-axes must be positive and finite".into()));
        }
        Ok(Self::from_kind(axes.len(), BodyKind::Ellipsoid { axes }))
    }

    /// Symmetric polytope norm ball with the given (extreme) vertices.
    pub fn polytope(vertices: Vec<Vector>) -> Result<Self> {
        let p = Polytope::new(vertices)?;
        Self::from_polytope(p)
    }

    pub fn from_polytope(p: Polytope) -> Result<Self> {
        if !p.is_symmetric(1e-9 * p.circumradius()) {
            return Err(Error::InvalidBody("polytope vertex set is not closed under negation".into()));
        }
        if !p.contains_origin_in_interior() {
            return Err(Error::InvalidBody("origin is not interior to the polytope".into()));
        }
        Ok(Self::from_kind(p.dim(), BodyKind::Polytope(p)))
    }

    /// Body known only through a membership oracle. The oracle must describe a
    /// compact, origin-symmetric convex set with the origin in its interior.
    pub fn from_membership<F>(dim: usize, contains: F, strictly_convex: bool) -> Result<Self>
    where
        F: Fn(&Vector) -> bool + Send + Sync + 'static,
    {
        Self::check_dim(dim)?;
        if !contains(&Vector::zeros(dim)) {
            return Err(Error::InvalidBody("oracle does not contain the origin".into()));
        }
        let contains: MembershipFn = Arc::new(contains);
        let mut floor = f64::INFINITY;
        for i in 0..dim {
            for s in [1.0, -1.0] {
                let e = Vector::axis(dim, i) * s;
                floor = floor.min(radial_extent(&contains, &e)?);
            }
        }
        Ok(Self::from_kind(
            dim,
            BodyKind::Oracle { contains, strictly_convex, radial_floor: floor },
        ))
    }

    pub(crate) fn section_of(ambient: Arc<ConvexBody>, basis: [Vector; 2]) -> Self {
        let tol = ambient.tolerance;
        let mut b = Self::from_kind(2, BodyKind::Section { ambient, basis });
        b.tolerance = tol;
        b
    }

    pub fn disk() -> Self {
        Self::lp(2.0, 2).expect("valid")
    }

    pub fn ball3() -> Self {
        Self::lp(2.0, 3).expect("valid")
    }

    /// The ℓ∞ unit square.
    pub fn square() -> Self {
        Self::lp(f64::INFINITY, 2).expect("valid")
    }

    /// Regular hexagon with vertices at angles kπ/3.
    pub fn hexagon() -> Self {
        let vs = (0..6).map(|k| Vector::polar(k as f64 * std::f64::consts::PI / 3.0)).collect();
        Self::polytope(vs).expect("valid")
    }

    pub fn with_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Config(format!("tolerance {tol} must be positive")));
        }
        self.tolerance = tol;
        Ok(self)
    }

    pub fn from_spec(spec: &BodySpec) -> Result<Self> {
        match spec {
            BodySpec::Lp { p, dim, radii } => match radii {
                Some(r) => {
                    if r.len() != *dim {
                        return Err(Error::DimensionMismatch { expected: *dim, got: r.len() });
                    }
                    Self::lp_with_radii(p.value(), r.clone())
                }
                None => Self::lp(p.value(), *dim),
            },
            BodySpec::Ellipse { axes } => Self::ellipsoid(axes.clone()),
            BodySpec::Polytope { vertices } => Self::polytope(vertices.clone()),
        }
    }

    /// Serializable description, when the body has one.
    pub fn spec(&self) -> Option<BodySpec> {
        match &self.kind {
            BodyKind::Lp { p, radii } => Some(BodySpec::Lp {
                p: Exponent::from_value(*p),
                dim: self.dim,
                radii: radii.iter().any(|r| *r != 1.0).then(|| radii.clone()),
            }),
            BodyKind::Ellipsoid { axes } => Some(BodySpec::Ellipse { axes: axes.clone() }),
            BodyKind::Polytope(p) => Some(BodySpec::Polytope { vertices: p.vertices().to_vec() }),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            BodyKind::Lp { p, radii } => format!("lp(p={p}, radii={radii:?})"),
            BodyKind::Ellipsoid { axes } => format!("ellipsoid(axes={axes:?})"),
            BodyKind::Polytope(p) => format!("polytope({} vertices, dim {})", p.vertices().len(), p.dim()),
            BodyKind::Oracle { .. } => format!("oracle(dim {})", self.dim),
            BodyKind::Section { ambient, .. } => format!("section of {}", ambient.label()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match &self.kind {
            BodyKind::Polytope(p) => Some(p),
            _ => None,
        }
    }

    /// Whether the boundary is known to contain no segments.
    pub fn is_strictly_convex(&self) -> bool {
        match &self.kind {
            BodyKind::Lp { p, .. } => *p > 1.0 && p.is_finite(),
            BodyKind::Ellipsoid { .. } => true,
            BodyKind::Polytope(_) => false,
            BodyKind::Oracle { strictly_convex, .. } => *strictly_convex,
            BodyKind::Section { ambient, .. } => ambient.is_strictly_convex(),
        }
    }

    fn check_input(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.dim() });
        }
        if !v.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        Ok(())
    }

    /// Minkowski functional `‖v‖_K = inf{t > 0 : v/t ∈ K}`.
    pub fn gauge(&self, v: &Vector) -> Result<f64> {
        self.check_input(v)?;
        Ok(match &self.kind {
            BodyKind::Lp { p, radii } => lp_norm(v, *p, radii),
            BodyKind::Ellipsoid { axes } => {
                let mut y = *v;
                for (i, a) in axes.iter().enumerate() {
                    y.set(i, v[i] / a);
                }
                y.norm()
            }
            BodyKind::Polytope(p) => p.gauge(v)?,
            BodyKind::Oracle { contains, radial_floor, .. } => {
                oracle_gauge(contains, *radial_floor, self.tolerance, v)?
            }
            BodyKind::Section { ambient, basis } => {
                ambient.gauge(&(basis[0] * v.x() + basis[1] * v.y()))?
            }
        })
    }

    /// Membership with the body's tolerance.
    pub fn contains(&self, x: &Vector) -> Result<bool> {
        Ok(self.gauge(x)? <= 1.0 + self.tolerance)
    }

    pub fn boundary_point(&self, u: &Vector) -> Result<Vector> {
        RadialBody::boundary_point(self, u)
    }

    /// Boundary point in direction angle `theta` (planar bodies).
    pub fn boundary_at(&self, theta: f64) -> Result<Vector> {
        self.boundary_point(&Vector::polar(theta))
    }

    /// `max_{x∈K} ⟨u, x⟩` together with a maximizer. Polytope ties resolve
    /// to the lowest-index vertex.
    pub fn support(&self, u: &Vector) -> Result<(f64, Vector)> {
        self.check_input(u)?;
        if u.is_zero() {
            return Err(Error::ZeroVector);
        }
        match &self.kind {
            BodyKind::Lp { p, radii } => Ok(lp_support(u, *p, radii)),
            BodyKind::Ellipsoid { axes } => {
                let mut w = *u;
                for (i, a) in axes.iter().enumerate() {
                    w.set(i, u[i] * a);
                }
                let value = w.norm();
                let mut x = *u;
                for (i, a) in axes.iter().enumerate() {
                    x.set(i, a * a * u[i] / value);
                }
                Ok((value, x))
            }
            BodyKind::Polytope(p) => {
                let (h, i) = p.support(u);
                Ok((h, p.vertices()[i]))
            }
            BodyKind::Oracle { .. } | BodyKind::Section { .. } => self.numeric_support(u),
        }
    }

    fn numeric_support(&self, u: &Vector) -> Result<(f64, Vector)> {
        if self.dim == 2 {
            let f = |t: f64| self.boundary_at(t).map(|b| -u.dot(&b)).unwrap_or(f64::INFINITY);
            let (t, v) = periodic_min(f, 1440);
            Ok((-v, self.boundary_at(t)?))
        } else {
            let f = |d: &Vector| self.boundary_point(d).map(|b| -u.dot(&b)).unwrap_or(f64::INFINITY);
            let (d, v) = sphere_min(f, 4000);
            Ok((-v, self.boundary_point(&d)?))
        }
    }

    /// Minimizer `q` of the functional `phi` over K with minimum value `m`.
    ///
    /// The minimizer is accepted as exposed only if every sampled boundary
    /// point farther than 1% of the circumradius from `q` exceeds `m` by a
    /// positive gap; a flat face through `q` is reported as
    /// [`Error::NonExposedDirection`].
    pub fn exposed_point(&self, phi: &Vector) -> Result<(Vector, f64)> {
        let (h, x) = self.support(&(-*phi))?;
        let (q, m) = (x, -h);
        let scale = self.circumradius() * phi.norm();
        if let BodyKind::Polytope(p) = &self.kind {
            let tol = 1e-12 * scale;
            let count = p.vertices().iter().filter(|v| phi.dot(v) <= m + tol).count();
            if count > 1 {
                return Err(Error::NonExposedDirection { gap: 0.0 });
            }
            return Ok((q, m));
        }
        let radius = 1e-2 * self.circumradius();
        let threshold = 1e-10 * scale;
        let gap = sampling::sphere_directions(self.dim, 4096)
            .into_iter()
            .filter_map(|d| self.boundary_point(&d).ok())
            .filter(|b| b.distance(&q) > radius)
            .map(|b| phi.dot(&b) - m)
            .fold(f64::INFINITY, f64::min);
        if gap <= threshold {
            return Err(Error::NonExposedDirection { gap });
        }
        Ok((q, m))
    }

    /// Largest Euclidean ball around the origin inside K.
    pub fn inradius(&self) -> f64 {
        *self.inradius.get_or_init(|| match &self.kind {
            BodyKind::Polytope(p) => p.facets().iter().map(|f| f.offset).fold(f64::INFINITY, f64::min),
            _ => {
                let h = |u: &Vector| self.support(u).map(|(h, _)| h).unwrap_or(f64::INFINITY);
                if self.dim == 2 {
                    periodic_min(|t| h(&Vector::polar(t)), 1440).1
                } else {
                    sphere_min(h, 4000).1
                }
            }
        })
    }

    /// Smallest Euclidean ball around the origin containing K.
    pub fn circumradius(&self) -> f64 {
        *self.circumradius.get_or_init(|| match &self.kind {
            BodyKind::Polytope(p) => p.circumradius(),
            BodyKind::Ellipsoid { axes } => axes.iter().cloned().fold(0.0, f64::max),
            _ => {
                let r = |u: &Vector| self.boundary_point(u).map(|b| -b.norm()).unwrap_or(0.0);
                if self.dim == 2 {
                    -periodic_min(|t| r(&Vector::polar(t)), 1440).1
                } else {
                    -sphere_min(r, 4000).1
                }
            }
        })
    }
}

impl RadialBody for ConvexBody {
    fn dim(&self) -> usize {
        self.dim
    }

    fn gauge(&self, v: &Vector) -> Result<f64> {
        ConvexBody::gauge(self, v)
    }
}

fn lp_norm(v: &Vector, p: f64, radii: &[f64]) -> f64 {
    let mut y = [0.0; 3];
    for (i, r) in radii.iter().enumerate() {
        y[i] = (v[i] / r).abs();
    }
    let y = &y[..radii.len()];
    if p == 2.0 {
        return y.iter().map(|a| a * a).sum::<f64>().sqrt();
    }
    if p == 1.0 {
        return y.iter().sum();
    }
    let m = y.iter().cloned().fold(0.0, f64::max);
    if m == 0.0 || p.is_infinite() {
        return m;
    }
    m * y.iter().map(|a| (a / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Support of a scaled ℓp ball via the dual ℓq norm of `(u_i r_i)`.
fn lp_support(u: &Vector, p: f64, radii: &[f64]) -> (f64, Vector) {
    let n = radii.len();
    let mut w = [0.0; 3];
    for i in 0..n {
        w[i] = u[i] * radii[i];
    }
    let sign = |x: f64| if x < 0.0 { -1.0 } else { 1.0 };
    let mut y = [0.0; 3];
    let value;
    if p.is_infinite() {
        for i in 0..n {
            y[i] = sign(w[i]);
        }
        value = w[..n].iter().map(|a| a.abs()).sum();
    } else if p == 1.0 {
        let m = w[..n].iter().map(|a| a.abs()).fold(0.0, f64::max);
        let k = (0..n).find(|&i| w[i].abs() == m).expect("nonzero functional");
        y[k] = sign(w[k]);
        value = m;
    } else {
        let q = p / (p - 1.0);
        let m = w[..n].iter().map(|a| a.abs()).fold(0.0, f64::max);
        let mut s = 0.0;
        for i in 0..n {
            s += (w[i].abs() / m).powf(q);
        }
        let dual = m * s.powf(1.0 / q);
        for i in 0..n {
            // |w_i|^{q-1} / ‖w‖_q^{q-1}, computed on the m-scaled values.
            y[i] = sign(w[i]) * ((w[i].abs() / m).powf(q - 1.0) / s.powf((q - 1.0) / q));
        }
        value = dual;
    }
    let mut x = Vector::zeros(n);
    for i in 0..n {
        x.set(i, y[i] * radii[i]);
    }
    (value, x)
}

/// Distance along the ray through `e` from the origin to the boundary.
fn radial_extent(contains: &MembershipFn, e: &Vector) -> Result<f64> {
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut expansions = 0;
    while contains(&(*e * hi)) {
        lo = hi;
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::InvalidBody("oracle body is unbounded".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if contains(&(*e * mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo <= 0.0 {
        return Err(Error::InvalidBody("origin is not interior to the oracle body".into()));
    }
    Ok(lo)
}

/// Gauge by bisection on `t ↦ [v/t ∈ K]`, bracketed by `[0, 2|v|/floor]`.
fn oracle_gauge(contains: &MembershipFn, floor: f64, tol: f64, v: &Vector) -> Result<f64> {
    if v.is_zero() {
        return Ok(0.0);
    }
    let inside = |t: f64| contains(&(*v / t));
    let mut hi = 2.0 * v.norm() / floor;
    let mut guard = 0;
    while !inside(hi) {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::OracleInconsistent(format!("{v}: no interior point on the ray")));
        }
    }
    let mut lo = 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let g = hi;
    // Membership must switch exactly once along the ray.
    let outside = [0.25, 0.5, 0.75, 0.9, 0.97];
    let within = [1.03, 1.1, 1.25, 1.5, 2.0, 3.0, 4.0];
    if outside.iter().any(|&s| g * s > tol && inside(g * s)) || within.iter().any(|&s| !inside(g * s)) {
        return Err(Error::OracleInconsistent(format!("{v}")));
    }
    Ok(g)
}
