//! Two unit vectors can only average to zero with equal weights, and only
//! when they are antipodal.

use serde::Serialize;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::vector::Vector;

pub const SPHERE_TOLERANCE: f64 = 1e-8;
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Forcing {
    Forced,
    /// `residual = ‖α1·s1 + α2·s2‖`, at least `|α1 − α2|`.
    Violated { residual: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct ForcingReport {
    #[serde(flatten)]
    pub outcome: Forcing,
    /// `|α1 − 1/2|`.
    pub weight_defect: f64,
    /// Euclidean `|s1 + s2|`.
    pub antipodal_defect: f64,
}

/// Checks whether `α1·s1 + α2·s2 = 0` with unit-gauge `s1, s2` and
/// `α1 + α2 = 1`: it holds exactly when `α1 = 1/2` and `s2 = −s1`, and
/// otherwise the combination has gauge at least `|α1 − α2|`.
pub fn lambda_forcing_check(alpha1: f64, alpha2: f64, s1: &Vector, s2: &Vector, body: &ConvexBody) -> Result<ForcingReport> {
    for a in [alpha1, alpha2] {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::MalformedInput(format!("weight {a} is not in [0, 1]")));
        }
    }
    if (alpha1 + alpha2 - 1.0).abs() > 1e-12 {
        return Err(Error::MalformedInput(format!("weights sum to {}, not 1", alpha1 + alpha2)));
    }
    for s in [s1, s2] {
        let gauge = body.gauge(s)?;
        if (gauge - 1.0).abs() > SPHERE_TOLERANCE {
            return Err(Error::NotOnSphere { gauge });
        }
    }
    let residual = body.gauge(&(*s1 * alpha1 + *s2 * alpha2))?;
    let weight_defect = (alpha1 - 0.5).abs();
    let antipodal_defect = (*s1 + *s2).norm();
    let outcome = if weight_defect <= WEIGHT_TOLERANCE && antipodal_defect <= SPHERE_TOLERANCE {
        Forcing::Forced
    } else {
        Forcing::Violated { residual }
    };
    Ok(ForcingReport { outcome, weight_defect, antipodal_defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    #[test]
    fn balanced_antipodes_are_forced() {
        let disk = ConvexBody::disk();
        let r = lambda_forcing_check(0.5, 0.5, &Vector::new2(1.0, 0.0), &Vector::new2(-1.0, 0.0), &disk).unwrap();
        assert_eq!(r.outcome, Forcing::Forced);
    }

    #[test]
    fn unbalanced_weights_leave_a_residual() {
        let disk = ConvexBody::disk();
        let s = Vector::new2(0.6, 0.8);
        let r = lambda_forcing_check(0.6, 0.4, &s, &-s, &disk).unwrap();
        let Forcing::Violated { residual } = r.outcome else { panic!("forced") };
        assert!((residual - 0.2).abs() < 1e-15);
    }

    #[test]
    fn residual_bounds_the_weight_gap() {
        let k = ConvexBody::lp(3.0, 2).unwrap();
        let mut rng = sampling::rng(2);
        for _ in 0..200 {
            let s1 = k.boundary_point(&sampling::random_unit(&mut rng, 2)).unwrap();
            let s2 = k.boundary_point(&sampling::random_unit(&mut rng, 2)).unwrap();
            let a = rand::Rng::gen_range(&mut rng, 0.0..1.0);
            let r = lambda_forcing_check(a, 1.0 - a, &s1, &s2, &k).unwrap();
            let Forcing::Violated { residual } = r.outcome else { panic!("forced") };
            assert!(residual >= (2.0 * a - 1.0).abs() - 1e-12);
        }
    }

    #[test]
    fn input_errors() {
        let disk = ConvexBody::disk();
        let e = Vector::new2(1.0, 0.0);
        assert!(matches!(lambda_forcing_check(0.5, 0.5, &(e * 0.9), &-e, &disk), Err(Error::NotOnSphere { .. })));
        assert!(matches!(lambda_forcing_check(0.5, 0.6, &e, &-e, &disk), Err(Error::MalformedInput(_))));
    }
}
