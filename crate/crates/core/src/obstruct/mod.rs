//! Executable obstructions: the angle bound behind the discontinuity of
//! midpoint sections, the search for that discontinuity, equal-weight
//! forcing, the degree refuter for convex decompositions and the
//! face-containment check at boundary points.

mod face;
mod forcing;
mod refuter;
mod theta;
mod witness;

pub use face::{face_containment_check, support_functional, FaceOutcome, FaceReport};
pub use forcing::{lambda_forcing_check, Forcing, ForcingReport};
pub use refuter::{
    adversarial_candidates, convex_decomposition_refuter, partial_candidates, ring_samples, Candidate,
    ContradictionCertificate, RefuterCheck, RefuterOutcome, Rejection, RingWindings, CANDIDATE_RINGS,
};
pub use theta::{
    line_angle, theta_bound, theta_midpoints, DoubleChord, ThetaBound, ThetaSample, ThetaWitness, DEFAULT_MIDPOINTS,
    DEFAULT_THETA_RESOLUTION, MAX_U_RADIUS,
};
pub use witness::{
    builtin_heuristics, discontinuity_witness, discontinuity_witness_with, HeuristicSection, Witness, WitnessOutcome,
    DEFAULT_JUMP, SHRINK_ROUNDS,
};
