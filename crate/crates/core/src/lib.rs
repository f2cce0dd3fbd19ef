//! Executable decompositions of ball-valued maps into combinations of
//! sphere-valued maps for finite-dimensional norms in dimensions 2 and 3,
//! together with numerical certificates for the matching impossibility
//! results (degree obstructions, angle bounds, discontinuity of midpoint
//! sections).
//!
//! Module map:
//! - [`body`]: gauges, support functions, exposed points, polytope approximation.
//! - [`section`]: planar sections, bisected chords and the chord map.
//! - [`decompose`]: three-term, two-term, four-term and path decompositions.
//! - [`degree`]: winding numbers, PL degree, the vertex-fixing degree check.
//! - [`obstruct`]: θ bounds, discontinuity witnesses, λ forcing, refuters.
//! - [`cli`]: the `kmspan` command line.

pub mod body;
pub mod cli;
pub mod decompose;
pub mod degree;
pub mod error;
pub mod obstruct;
pub mod sampling;
pub mod section;
pub mod vector;

pub use body::{BodySpec, ConvexBody, Polytope, RadialBody};
pub use error::{Error, Result};
pub use section::Chord;
pub use vector::Vector;
