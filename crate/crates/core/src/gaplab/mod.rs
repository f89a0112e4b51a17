//! Gap computations built on the engines: dispatch, parameter sweeps,
//! checks of gap inequalities over potential corpora, and one-parameter
//! minimizer searches.

pub mod corpus;
mod gap;
mod search;
pub mod suites;
mod sweep;
mod verify;

pub use gap::{
    free_gap, gap, gap_spectrum, gap_value, gap_with, transcendental_spectrum, GapReport,
    GAP_TOLERANCE,
};
pub use search::{
    find_offcenter_counterexample, find_offcenter_counterexample_on, search_linear_minimizer,
    search_step_minimizer_mixed_bc, Counterexample, FamilyMinimum,
};
pub use sweep::{
    step_curve_crossings, sweep, sweep_gap_vs_alpha, sweep_gap_vs_m, uniform_points, SweepCurve,
};
pub use verify::{
    concavity_profile, verify_alpha_monotone, verify_concavity, verify_convex_bound,
    verify_general_single_well_dirichlet, verify_single_well_bound, verify_symmetric_monotone,
    ConcavityProfile, Rejection, SymmetricCase, VerifierOutcome, Violation, THETA_SQUARED,
};
