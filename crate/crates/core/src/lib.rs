//! Spectral gaps of one-dimensional Schrödinger operators
//! `-u'' + V u = λ u` on `(-L/2, L/2)` with Robin boundary conditions
//! `u'(-L/2) = α u(-L/2)`, `u'(L/2) = -β u(L/2)`.
//!
//! Two independent engines compute eigenvalues: an exact solver for step
//! potentials built on a transcendental matching equation
//! ([`transcendental`]), and a general finite-difference solver with a
//! Prüfer shooting cross-check ([`solver`]). [`gaplab`] builds gap reports,
//! parameter sweeps, property verifiers and minimizer searches on top.
//!
//! The numerics are generic over [`Real`]; the aliases at the crate root fix
//! the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bc;
pub mod error;
pub mod gaplab;
pub mod numerics;
pub mod potential;
pub mod scalar;
pub mod solver;
pub mod transcendental;

pub use error::{Error, Result};
pub use scalar::Real;

pub type RobinParam = bc::RobinParam<f64>;
pub type RobinPair = bc::RobinPair<f64>;
pub type Interval = potential::Interval<f64>;
pub type Potential = potential::Potential<f64>;
pub type Form = potential::Form<f64>;
pub type PotentialClass = potential::PotentialClass<f64>;
pub type Spectrum = solver::Spectrum<f64>;
pub type CrossingData = solver::CrossingData<f64>;
pub type StepSpectrum = transcendental::StepSpectrum<f64>;
pub type GapReport = gaplab::GapReport<f64>;
pub type SweepCurve = gaplab::SweepCurve<f64>;
pub type Counterexample = gaplab::Counterexample<f64>;
pub type FamilyMinimum = gaplab::FamilyMinimum<f64>;
