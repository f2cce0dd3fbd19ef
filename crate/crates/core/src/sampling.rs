//! Direction samplers and 1D search helpers shared by the geometric modules.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vector::Vector;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` equally spaced angles in `[offset, offset + 2π)`.
pub fn angles(n: usize, offset: f64) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| offset + TAU * i as f64 / n as f64)
}

/// Fibonacci-lattice unit vectors on S².
pub fn fibonacci_sphere(n: usize) -> Vec<Vector> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            Vector::new3(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// Evenly spread unit directions in R^dim (equal angles in 2D, Fibonacci in 3D).
pub fn sphere_directions(dim: usize, n: usize) -> Vec<Vector> {
    match dim {
        2 => angles(n, 0.0).map(Vector::polar).collect(),
        3 => fibonacci_sphere(n),
        _ => panic!("unsupported dimension {dim}"),
    }
}

/// Uniformly random unit vector.
pub fn random_unit<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let mut v = Vector::zeros(dim);
        for i in 0..dim {
            v.set(i, rng.gen_range(-1.0..1.0));
        }
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Uniformly random point of the Euclidean unit ball.
pub fn random_in_unit_ball<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let mut v = Vector::zeros(dim);
        for i in 0..dim {
            v.set(i, rng.gen_range(-1.0..1.0));
        }
        if v.norm_sq() <= 1.0 {
            return v;
        }
    }
}

/// Bisection for a sign change of `f` on `[lo, hi]`, assuming `f(lo)` and
/// `f(hi)` have opposite signs. Runs until the bracket stops shrinking.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-15 {
            break;
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Dense scan over a periodic parameter followed by golden refinement of the
/// best cell. Returns `(argmin, min)`.
pub fn periodic_min<F: Fn(f64) -> f64>(f: F, samples: usize) -> (f64, f64) {
    let h = TAU / samples as f64;
    let (mut best_t, mut best) = (0.0, f64::INFINITY);
    for t in angles(samples, 0.0) {
        let v = f(t);
        if v < best {
            best = v;
            best_t = t;
        }
    }
    let (t, v) = golden_min(&f, best_t - h, best_t + h, 100);
    if v < best {
        (t, v)
    } else {
        (best_t, best)
    }
}

/// Minimize `f` over the unit sphere S²: Fibonacci scan, then a shrinking
/// pattern search in the tangent plane of the incumbent.
pub fn sphere_min<F: Fn(&Vector) -> f64>(f: F, samples: usize) -> (Vector, f64) {
    let mut best_u = Vector::new3(0.0, 0.0, 1.0);
    let mut best = f64::INFINITY;
    for u in fibonacci_sphere(samples) {
        let v = f(&u);
        if v < best {
            best = v;
            best_u = u;
        }
    }
    let mut step = 2.0 * (4.0 * PI / samples as f64).sqrt();
    while step > 1e-12 {
        let (t1, t2) = tangent_basis(&best_u);
        let mut improved = false;
        for (a, b) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let cand = best_u + t1 * (a * step) + t2 * (b * step);
            let cand = cand / cand.norm();
            let v = f(&cand);
            if v < best {
                best = v;
                best_u = cand;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (best_u, best)
}

/// Two unit vectors completing `u` (unit, in R³) to an orthonormal basis.
pub fn tangent_basis(u: &Vector) -> (Vector, Vector) {
    let helper = if u.x().abs() < 0.9 { Vector::axis(3, 0) } else { Vector::axis(3, 1) };
    let t1 = (helper - *u * helper.dot(u)).normalized().expect("nonparallel helper");
    let t2 = u.cross3(&t1);
    (t1, t2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_points_are_unit() {
        for u in fibonacci_sphere(100) {
            assert!((u.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, -2.0);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn periodic_min_of_cosine() {
        let (t, v) = periodic_min(|t| (t - 1.0).cos(), 64);
        assert!((v + 1.0).abs() < 1e-14);
        assert!(((t - 1.0 - PI).rem_euclid(TAU)).min(TAU - (t - 1.0 - PI).rem_euclid(TAU)) < 1e-6);
    }

    #[test]
    fn sphere_min_finds_pole() {
        let target = Vector::new3(0.3, -0.4, 0.5).normalized().unwrap();
        let (u, _) = sphere_min(|u| -u.dot(&target), 500);
        assert!(u.distance(&target) < 1e-6);
    }
}
