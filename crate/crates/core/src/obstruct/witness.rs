//! Search for a discontinuity of a candidate midpoint section at the origin,
//! plus a library of heuristic sections to feed it.
//!
//! Every section bisecting chords near `0` must jump there. The search
//! evaluates the candidate on the innermost ring of a polar grid, where any
//! two points are within two grid spacings of each other, and reports the
//! pair with the largest `d_sym` jump. The ring shrinks geometrically when no
//! jump is large enough.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Mutex;

use serde::Serialize;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::section::{chord_map, sampled_chords_2d, Chord};
use crate::vector::Vector;

pub const DEFAULT_JUMP: f64 = 0.5;
pub const SHRINK_ROUNDS: usize = 8;
/// Chords farther than this from `∂K`, or from bisection by the query point,
/// are rejected as invalid.
pub const CHORD_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub p: Vector,
    pub p_prime: Vector,
    pub chord: Chord,
    pub chord_prime: Chord,
    pub jump: f64,
    /// `|p − p′|`.
    pub distance: f64,
    pub grid_spacing: f64,
    pub u_radius: f64,
    pub round: usize,
    /// Grid points where the section returned an error.
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WitnessOutcome {
    Witness(Witness),
    /// No pair jumped by the threshold in any round.
    Consistent { rounds: usize, u_radius: f64, max_jump: f64, failures: usize },
    /// The section returned a chord that is not a chord bisected by the query.
    InvalidSection { p: Vector, chord: Chord, midpoint_error: f64, gauge_defect: f64 },
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WitnessOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// [`discontinuity_witness_with`] at the default jump of 0.5.
pub fn discontinuity_witness<S>(body: &ConvexBody, section: S, u_radius: f64, grid: usize) -> Result<WitnessOutcome>
where
    S: Fn(&Vector) -> Result<Chord> + Sync,
{
    discontinuity_witness_with(body, section, u_radius, grid, DEFAULT_JUMP)
}

/// Evaluates `section` at `grid` points of the ring `(U/grid)·∂K`, halving
/// `U` for up to [`SHRINK_ROUNDS`] rounds, and returns the first pair whose
/// chords differ by at least `jump` in `d_sym`.
///
/// Points are evaluated in angular order on the calling thread, so stateful
/// sections see a reproducible sequence; they must still be `Sync`.
pub fn discontinuity_witness_with<S>(body: &ConvexBody, section: S, u_radius: f64, grid: usize, jump: f64) -> Result<WitnessOutcome>
where
    S: Fn(&Vector) -> Result<Chord> + Sync,
{
    if body.dim() != 2 {
        return Err(Error::UnsupportedDimension(body.dim()));
    }
    if !(u_radius > 0.0 && u_radius < 1.0) {
        return Err(Error::Config(format!("uradius = {u_radius} must lie in (0, 1)")));
    }
    if grid < 4 {
        return Err(Error::Config(format!("grid = {grid} must be at least 4")));
    }
    let dirs = (0..grid)
        .map(|j| body.boundary_at(TAU * j as f64 / grid as f64))
        .collect::<Result<Vec<_>>>()?;
    let mut u = u_radius;
    let mut max_jump: f64 = 0.0;
    let mut failures = 0;
    let mut defined_anywhere = false;
    for round in 0..SHRINK_ROUNDS {
        let ring: Vec<Vector> = dirs.iter().map(|d| *d * (u / grid as f64)).collect();
        let mut values = Vec::with_capacity(grid);
        for p in &ring {
            match section(p) {
                Ok(c) => {
                    let midpoint_error = c.midpoint().distance(p);
                    let gauge_defect = c.gauge_defect(body)?;
                    if !(midpoint_error <= CHORD_TOLERANCE && gauge_defect <= CHORD_TOLERANCE) {
                        return Ok(WitnessOutcome::InvalidSection { p: *p, chord: c, midpoint_error, gauge_defect });
                    }
                    values.push(Some(c));
                }
                Err(_) => {
                    failures += 1;
                    values.push(None);
                }
            }
        }
        defined_anywhere |= values.iter().any(Option::is_some);
        let spacing = ring.iter().map(Vector::norm).fold(0.0, f64::max);
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..grid {
            let Some(a) = values[i] else { continue };
            for j in i + 1..grid {
                let Some(b) = values[j] else { continue };
                let d = a.d_sym(&b);
                if best.is_none_or(|x| d > x.2) {
                    best = Some((i, j, d));
                }
            }
        }
        if let Some((i, j, d)) = best {
            max_jump = max_jump.max(d);
            if d >= jump {
                return Ok(WitnessOutcome::Witness(Witness {
                    p: ring[i],
                    p_prime: ring[j],
                    chord: values[i].expect("defined"),
                    chord_prime: values[j].expect("defined"),
                    jump: d,
                    distance: ring[i].distance(&ring[j]),
                    grid_spacing: spacing,
                    u_radius: u,
                    round,
                    failures,
                }));
            }
        }
        if round + 1 < SHRINK_ROUNDS {
            u *= 0.5;
        }
    }
    if !defined_anywhere {
        return Err(Error::SectionUndefinedEverywhere);
    }
    Ok(WitnessOutcome::Consistent { rounds: SHRINK_ROUNDS, u_radius: u, max_jump, failures })
}

const HEURISTIC_RESOLUTION: usize = 1024;

enum Rule {
    ChordMap,
    FirstRoot(usize),
    FirstAfter(f64),
    LastRoot,
    NearestDirection(Vector),
    MostPerpendicular,
    Longest,
    Shortest,
    AlignedWith(Vector),
    NearestPrevious(Mutex<Option<Chord>>),
    NearestPreviousReset(Mutex<(usize, Option<Chord>)>),
    Hashed(u64),
}

/// A candidate section built from the sampled bisected chords by a fixed
/// selection rule.
pub struct HeuristicSection {
    pub name: String,
    body: ConvexBody,
    rule: Rule,
}

impl HeuristicSection {
    fn new(name: &str, body: &ConvexBody, rule: Rule) -> Self {
        HeuristicSection { name: name.into(), body: body.clone(), rule }
    }

    pub fn chord(&self, p: &Vector) -> Result<Chord> {
        let roots = |n: usize| -> Result<Vec<Chord>> {
            let cs = sampled_chords_2d(&self.body, p, n)?;
            if cs.is_empty() {
                return Err(Error::NoChordsFound);
            }
            Ok(cs)
        };
        let pick = |cs: Vec<Chord>, key: &dyn Fn(&Chord) -> f64| -> Chord {
            *cs.iter().min_by(|a, b| key(a).total_cmp(&key(b))).expect("nonempty")
        };
        let nearest = |cs: Vec<Chord>, prev: &Option<Chord>| match prev {
            Some(c0) => pick(cs, &|c| c.d_sym(c0)),
            None => cs[0],
        };
        let dir = |c: &Chord| (c.p2 - c.p1).normalized().unwrap_or(Vector::zeros(2));
        Ok(match &self.rule {
            Rule::ChordMap => {
                if self.body.is_strictly_convex() {
                    chord_map(&self.body, p)?
                } else {
                    roots(HEURISTIC_RESOLUTION)?[0]
                }
            }
            Rule::FirstRoot(n) => roots(*n)?[0],
            Rule::FirstAfter(a) => pick(roots(HEURISTIC_RESOLUTION)?, &|c| (c.p1.angle() - a).rem_euclid(TAU)),
            Rule::LastRoot => *roots(HEURISTIC_RESOLUTION)?.last().expect("nonempty"),
            Rule::NearestDirection(d) => pick(roots(HEURISTIC_RESOLUTION)?, &|c| c.p1.distance(d).min(c.p2.distance(d))),
            Rule::MostPerpendicular => pick(roots(HEURISTIC_RESOLUTION)?, &|c| dir(c).dot(p).abs()),
            Rule::Longest => pick(roots(HEURISTIC_RESOLUTION)?, &|c| -c.p1.distance(&c.p2)),
            Rule::Shortest => pick(roots(HEURISTIC_RESOLUTION)?, &|c| c.p1.distance(&c.p2)),
            Rule::AlignedWith(a) => pick(roots(HEURISTIC_RESOLUTION)?, &|c| -dir(c).dot(a).abs()),
            Rule::NearestPrevious(state) => {
                let mut prev = state.lock().expect("unpoisoned");
                let c = nearest(roots(HEURISTIC_RESOLUTION)?, &prev);
                *prev = Some(c);
                c
            }
            Rule::NearestPreviousReset(state) => {
                let mut s = state.lock().expect("unpoisoned");
                if s.0 % 16 == 0 {
                    s.1 = None;
                }
                s.0 += 1;
                let c = nearest(roots(HEURISTIC_RESOLUTION)?, &s.1);
                s.1 = Some(c);
                c
            }
            Rule::Hashed(seed) => {
                let cs = roots(HEURISTIC_RESOLUTION)?;
                let h = p.as_slice().iter().fold(*seed, |h, x| (h ^ x.to_bits()).wrapping_mul(0x100000001b3));
                cs[(h % cs.len() as u64) as usize]
            }
        })
    }
}

/// Twenty selection rules over the sampled bisected chords of `body`.
pub fn builtin_heuristics(body: &ConvexBody) -> Vec<HeuristicSection> {
    let mut out = vec![HeuristicSection::new("chord map", body, Rule::ChordMap)];
    for n in [512, 1024, 2048, 4096] {
        out.push(HeuristicSection::new(&format!("first root at resolution {n}"), body, Rule::FirstRoot(n)));
    }
    for a in [PI / 4.0, FRAC_PI_2, PI, 1.5 * PI] {
        out.push(HeuristicSection::new(&format!("first root after angle {a:.4}"), body, Rule::FirstAfter(a)));
    }
    out.push(HeuristicSection::new("last root", body, Rule::LastRoot));
    for (name, d) in [("(1, 0)", Vector::new2(1.0, 0.0)), ("(0, 1)", Vector::new2(0.0, 1.0))] {
        out.push(HeuristicSection::new(&format!("endpoint nearest {name}"), body, Rule::NearestDirection(d)));
        out.push(HeuristicSection::new(&format!("chord most aligned with {name}"), body, Rule::AlignedWith(d)));
    }
    out.push(HeuristicSection::new("most perpendicular to the radius", body, Rule::MostPerpendicular));
    out.push(HeuristicSection::new("longest chord", body, Rule::Longest));
    out.push(HeuristicSection::new("shortest chord", body, Rule::Shortest));
    out.push(HeuristicSection::new("nearest to previous root", body, Rule::NearestPrevious(Mutex::new(None))));
    out.push(HeuristicSection::new(
        "nearest to previous root, reset every 16 calls",
        body,
        Rule::NearestPreviousReset(Mutex::new((0, None))),
    ));
    out.push(HeuristicSection::new("hashed root choice", body, Rule::Hashed(0xcbf29ce484222325)));
    out
}
