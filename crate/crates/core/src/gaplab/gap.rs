use serde_json::{json, Value};

use crate::bc::{RobinPair, RobinParam};
use crate::error::Result;
use crate::potential::{Form, Potential};
use crate::scalar::Real;
use crate::solver::{
    crossing_points, eigenpairs, spectrum_from_step, CrossingData, Engine, Spectrum, DEFAULT_CELLS,
};
use crate::transcendental::{step_eigenvalues, step_gap};

/// Absolute tolerance on gap comparisons in verifiers and searches.
pub const GAP_TOLERANCE: f64 = 1e-6;

/// `λ₁`, `λ₂`, their gap and the crossing structure of `u₁`, `u₂`.
#[derive(Clone, Debug)]
pub struct GapReport<T> {
    pub lambda1: T,
    pub lambda2: T,
    pub gap: T,
    pub crossing: CrossingData<T>,
    pub engine: Engine,
    pub cells: usize,
    pub tolerance: T,
}

impl<T: Real> GapReport<T> {
    pub fn to_json(&self) -> Value {
        let f = |x: T| x.to_f64_lossy();
        let c = &self.crossing;
        json!({
            "lambda": [f(self.lambda1), f(self.lambda2)],
            "gap": f(self.gap),
            "engine": self.engine.label(),
            "N": self.cells,
            "tolerance": f(self.tolerance),
            "crossing": {
                "x_minus": f(c.x_minus),
                "x0": f(c.x0),
                "x_plus": f(c.x_plus),
                "u1_sq": [f(c.u1_left_sq), f(c.u1_right_sq)],
                "u2_sq": [f(c.u2_left_sq), f(c.u2_right_sq)],
            },
        })
    }
}

/// Height `m` when `V = m·1₍₀,L/2₎` with `m ≥ 0` (zero counts as `m = 0`).
fn centered_step<T: Real>(v: &Potential<T>) -> Option<T> {
    match v.form() {
        Form::Zero => Some(T::zero()),
        Form::Step { height, split } if *split == T::zero() && *height >= T::zero() => {
            Some(*height)
        }
        _ => None,
    }
}

/// Step height and Robin parameter transported to `L = π`, when the
/// transcendental engine applies.
fn step_problem<T: Real>(v: &Potential<T>, bc: &RobinPair<T>) -> Option<(T, RobinParam<T>)> {
    if !bc.is_symmetric() {
        return None;
    }
    let m = centered_step(v)?;
    let t = v.interval().length() / T::PI();
    Some((m * t * t, bc.alpha.scaled_by(T::one() / t)))
}

/// First `k` eigenpairs from the transcendental engine, or `None` unless `V`
/// is a centered step `m·1₍₀,L/2₎` (`m ≥ 0`) with a symmetric condition.
pub fn transcendental_spectrum<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    k: usize,
    cells: usize,
) -> Result<Option<Spectrum<T>>> {
    match step_problem(v, bc) {
        Some((m, alpha)) => spectrum_from_step(
            &step_eigenvalues(m, alpha, k)?,
            v.interval().length(),
            cells,
        )
        .map(Some),
        None => Ok(None),
    }
}

/// First two eigenpairs: transcendental engine for centered steps with a
/// symmetric condition, grid engine otherwise.
pub fn gap_spectrum<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    cells: usize,
) -> Result<Spectrum<T>> {
    match transcendental_spectrum(v, bc, 2, cells)? {
        Some(spec) => Ok(spec),
        None => eigenpairs(v, bc, 2, cells),
    }
}

/// `Λ = λ₂ - λ₁` with the same dispatch as [`gap_spectrum`] but without eigenfunctions
/// on the transcendental path.
pub fn gap_value<T: Real>(v: &Potential<T>, bc: &RobinPair<T>) -> Result<T> {
    match step_problem(v, bc) {
        Some((m, alpha)) => {
            let t = v.interval().length() / T::PI();
            Ok(step_gap(m, alpha)? / (t * t))
        }
        None => {
            let spec = eigenpairs(v, bc, 2, DEFAULT_CELLS)?;
            Ok(spec.eigenvalues[1] - spec.eigenvalues[0])
        }
    }
}

/// `Λ(0, bc)` on the interval of `v`.
pub fn free_gap<T: Real>(v: &Potential<T>, bc: &RobinPair<T>) -> Result<T> {
    gap_value(&Potential::new(Form::Zero, v.interval())?, bc)
}

pub fn gap<T: Real>(v: &Potential<T>, bc: &RobinPair<T>) -> Result<GapReport<T>> {
    gap_with(v, bc, DEFAULT_CELLS)
}

pub fn gap_with<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    cells: usize,
) -> Result<GapReport<T>> {
    let spec = gap_spectrum(v, bc, cells)?;
    let crossing = crossing_points(&spec)?;
    let (lambda1, lambda2) = (spec.eigenvalues[0], spec.eigenvalues[1]);
    Ok(GapReport {
        lambda1,
        lambda2,
        gap: lambda2 - lambda1,
        crossing,
        engine: spec.engine,
        cells,
        tolerance: T::of(GAP_TOLERANCE),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Interval;

    fn mixed() -> RobinPair<f64> {
        RobinPair::new(RobinParam::Dirichlet, RobinParam::neumann())
    }

    #[test]
    fn free_gaps() {
        let z = Potential::<f64>::zero();
        for (bc, want) in [
            (RobinPair::neumann(), 1.0),
            (RobinPair::dirichlet(), 3.0),
            (mixed(), 2.0),
        ] {
            let r = gap(&z, &bc).unwrap();
            assert!((r.gap - want).abs() < 1e-8, "{bc}: {}", r.gap);
        }
        assert_eq!(
            gap(&z, &RobinPair::neumann()).unwrap().engine,
            Engine::Transcendental
        );
        assert_eq!(gap(&z, &mixed()).unwrap().engine, Engine::FiniteDifference);
    }

    #[test]
    fn engines_agree_on_steps_at_other_lengths() {
        let interval = Interval::<f64>::new(2.0).unwrap();
        for m in [0.0, 0.5, 2.0, 10.0] {
            let v = Potential::new(
                Form::Step {
                    height: m,
                    split: 0.0,
                },
                interval,
            )
            .unwrap();
            for alpha in [
                RobinParam::neumann(),
                RobinParam::Finite(1.0),
                RobinParam::Dirichlet,
            ] {
                let bc = RobinPair::symmetric(alpha);
                let exact = gap(&v, &bc).unwrap();
                let grid = eigenpairs(&v, &bc, 2, DEFAULT_CELLS).unwrap();
                assert_eq!(exact.engine, Engine::Transcendental);
                assert!((exact.lambda1 - grid.eigenvalues[0]).abs() < 5e-6);
                assert!((exact.lambda2 - grid.eigenvalues[1]).abs() < 5e-6);
                assert!((gap_value(&v, &bc).unwrap() - exact.gap).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn crossing_data_is_reported() {
        let r = gap(&Potential::<f64>::zero(), &RobinPair::neumann()).unwrap();
        assert!(r.crossing.x0.abs() < 1e-9);
        assert!((r.crossing.x_plus - std::f64::consts::FRAC_PI_4).abs() < 1e-5);
        let json = r.to_json();
        assert_eq!(json["engine"], "transcendental");
    }

    #[test]
    fn constant_shift_leaves_gap_unchanged() {
        let v = Potential::<f64>::linear(0.7, 0.0);
        let bc = RobinPair::new(RobinParam::Finite(0.3), RobinParam::Finite(2.0));
        let base = gap(&v, &bc).unwrap();
        let shifted = gap(&v.shifted(5.0), &bc).unwrap();
        assert!((base.gap - shifted.gap).abs() < 1e-10);
        assert!((shifted.lambda1 - base.lambda1 - 5.0).abs() < 1e-9);
    }
}
