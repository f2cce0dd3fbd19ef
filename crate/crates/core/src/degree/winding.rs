use std::f64::consts::{FRAC_PI_2, TAU};

use serde::Serialize;

use super::SphereMapSamples;
use crate::error::{Error, Result};
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Winding {
    pub winding: i64,
    /// Distance of the accumulated turn (in turns) from the nearest integer.
    pub residual: f64,
    /// Largest angle between consecutive images.
    pub max_step: f64,
}

/// Winding number of a closed loop of planar images around the origin: the
/// sum of principal angle increments (closing edge included) over 2π.
pub fn loop_winding(image: &[Vector]) -> Result<Winding> {
    if let Some(index) = image.iter().position(Vector::is_zero) {
        return Err(Error::ZeroImage { index });
    }
    if image.len() < 2 {
        return Err(Error::MalformedInput("a loop needs at least two samples".into()));
    }
    let n = image.len();
    let mut total = 0.0;
    let mut max_step: f64 = 0.0;
    for i in 0..n {
        let (a, b) = (image[i], image[(i + 1) % n]);
        let step = a.cross2(&b).atan2(a.dot(&b));
        max_step = max_step.max(step.abs());
        total += step;
    }
    if max_step >= FRAC_PI_2 {
        return Err(Error::SamplingTooCoarse { max_step });
    }
    let turns = total / TAU;
    let winding = turns.round();
    let residual = (turns - winding).abs();
    if residual > 0.01 {
        return Err(Error::NonIntegralWinding { residual });
    }
    Ok(Winding { winding: winding as i64, residual, max_step })
}

/// Winding number of a planar loop map.
pub fn winding_number(f: &SphereMapSamples) -> Result<i64> {
    match f {
        SphereMapSamples::Loop { image, .. } => {
            if image.first().is_some_and(|v| v.dim() != 2) {
                return Err(Error::UnsupportedDimension(image[0].dim()));
            }
            Ok(loop_winding(image)?.winding)
        }
        SphereMapSamples::Surface { .. } => Err(Error::MalformedInput("winding numbers need a planar loop".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn circle(n: usize, k: f64) -> SphereMapSamples {
        SphereMapSamples::loop_from_fn(sampling::angles(n, 0.0).map(Vector::polar).collect(), |x| {
            Vector::polar(k * x.angle())
        })
    }

    #[test]
    fn basic_windings() {
        assert_eq!(winding_number(&circle(360, 1.0)).unwrap(), 1);
        assert_eq!(winding_number(&circle(360, 2.0)).unwrap(), 2);
        assert_eq!(winding_number(&circle(360, -3.0)).unwrap(), -3);
        let c = SphereMapSamples::loop_from_fn(sampling::angles(10, 0.0).map(Vector::polar).collect(), |_| {
            Vector::new2(0.3, 0.4)
        });
        assert_eq!(winding_number(&c).unwrap(), 0);
    }

    #[test]
    fn failures() {
        assert!(matches!(winding_number(&circle(6, 2.0)), Err(Error::SamplingTooCoarse { .. })));
        let mut pts: Vec<Vector> = sampling::angles(64, 0.0).map(Vector::polar).collect();
        pts[5] = Vector::zeros(2);
        assert!(matches!(loop_winding(&pts), Err(Error::ZeroImage { index: 5 })));
    }
}
