use log::warn;
use rayon::prelude::*;

use super::gap::{free_gap, gap_value, gap_with, GAP_TOLERANCE};
use super::sweep::uniform_points;
use crate::bc::{RobinPair, RobinParam};
use crate::error::{Error, Result};
use crate::numerics::optimize::{golden_section, is_unimodal};
use crate::potential::{Form, Interval, Potential};
use crate::scalar::Real;
use crate::solver::{eigenpairs_default, eigenvalue_derivative};

/// Samples scanned before a golden-section refinement.
const SCAN_POINTS: usize = 40;

/// A potential `t·1₍s,L/2₎` whose gap drops below the free gap.
#[derive(Clone, Debug)]
pub struct Counterexample<T> {
    pub potential: Potential<T>,
    pub t: T,
    /// Left end `s` of the support.
    pub split: T,
    pub gap: T,
    pub free_gap: T,
    /// `Λ(0, α) - Λ(V, α) > 0`.
    pub margin: T,
}

/// [`find_offcenter_counterexample_on`] on `L = π` with `t ∈ (0, 1]`.
pub fn find_offcenter_counterexample<T: Real>(alpha: T, tau: T) -> Result<Counterexample<T>> {
    find_offcenter_counterexample_on(Interval::default(), alpha, tau, T::one())
}

/// Searches `t ∈ (0, t_max]` for `Λ(t·1₍τ,L/2₎, α) < Λ(0, α)` and returns the
/// largest margin found. For `τ = -L/2` the support starts at `x₋` of the free
/// problem instead, since `t·1₍-L/2,L/2₎` is constant.
pub fn find_offcenter_counterexample_on<T: Real>(
    interval: Interval<T>,
    alpha: T,
    tau: T,
    t_max: T,
) -> Result<Counterexample<T>> {
    if !alpha.is_finite() {
        return Err(Error::Domain("alpha must be finite".into()));
    }
    if tau < interval.left() || tau > T::zero() {
        return Err(Error::Domain(format!(
            "tau must lie in [-L/2, 0], got {tau}"
        )));
    }
    if !(t_max > T::zero()) {
        return Err(Error::Domain("t_max must be positive".into()));
    }
    let bc = RobinPair::symmetric(RobinParam::Finite(alpha));
    let zero = Potential::new(Form::Zero, interval)?;
    let split = if tau <= interval.left() {
        gap_with(&zero, &bc, 2000)?.crossing.x_minus
    } else {
        tau
    };
    let reference = free_gap(&zero, &bc)?;
    let family = |t: T| Potential::new(Form::Step { height: t, split }, interval);
    let margin = |t: T| -> Result<T> { Ok(reference - gap_value(&family(t)?, &bc)?) };

    let ts = uniform_points(T::zero(), t_max, SCAN_POINTS);
    let margins = ts[1..]
        .par_iter()
        .map(|&t| margin(t))
        .collect::<Result<Vec<T>>>()?;
    let (best, &best_margin) = margins
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .expect("scan is non-empty");
    if !(best_margin > T::of(GAP_TOLERANCE)) {
        return Err(Error::SearchFailure(format!(
            "no t in (0, {t_max}] lowers the gap below Λ(0, {alpha}) (best margin {best_margin})"
        )));
    }
    // ts[best + 1] is the best sample; refine between its neighbours
    let lo = ts[best];
    let hi = ts[(best + 2).min(ts.len() - 1)];
    let refined = golden_section(
        |t| -margin(t).unwrap_or(T::neg_infinity()),
        lo,
        hi,
        T::of(1e-6) * t_max,
    );
    let (t, m) = if -refined.value > best_margin {
        (refined.x, -refined.value)
    } else {
        (ts[best + 1], best_margin)
    };
    Ok(Counterexample {
        potential: family(t)?,
        t,
        split,
        gap: reference - m,
        free_gap: reference,
        margin: m,
    })
}

/// Minimizer of a one-parameter gap family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMinimum<T> {
    pub argmin: T,
    pub gap: T,
    /// `dΛ/dp` at `p = 0` from the perturbation formula.
    pub slope_at_zero: T,
    /// Whether the scan looked unimodal; otherwise the best sample is returned.
    pub unimodal: bool,
    pub warning: Option<String>,
}

/// Scans `[lo, hi]`, then refines by golden section when the samples are unimodal.
fn minimize_family<T: Real, F>(
    f: F,
    lo: T,
    hi: T,
    label: &str,
) -> Result<(T, T, bool, Option<String>)>
where
    F: Fn(T) -> Result<T> + Sync,
{
    if !(hi > lo) {
        return Err(Error::Domain(format!("empty search range [{lo}, {hi}]")));
    }
    let xs = uniform_points(lo, hi, SCAN_POINTS);
    let values = xs.par_iter().map(|&x| f(x)).collect::<Result<Vec<T>>>()?;
    let best = (0..values.len())
        .min_by(|&a, &b| {
            values[a]
                .partial_cmp(&values[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("scan is non-empty");
    if !is_unimodal(&values, T::of(1e-9)) {
        let msg = format!(
            "{label}: sampled gap is not unimodal on [{lo}, {hi}]; returning the best sample"
        );
        warn!("{msg}");
        return Ok((xs[best], values[best], false, Some(msg)));
    }
    let a = xs[best.saturating_sub(1)];
    let b = xs[(best + 1).min(xs.len() - 1)];
    let m = golden_section(|x| f(x).unwrap_or(T::infinity()), a, b, T::of(1e-7));
    Ok(if m.value < values[best] {
        (m.x, m.value, true, None)
    } else {
        (xs[best], values[best], true, None)
    })
}

/// `d/dp Λ(p·W, bc)` at `p = 0`, i.e. `∫ W (u₂² - u₁²)` for the free problem.
fn gap_slope_at_zero<T: Real>(w: &Potential<T>, bc: &RobinPair<T>) -> Result<T> {
    let spec = eigenpairs_default(&Potential::new(Form::Zero, w.interval())?, bc, 2)?;
    Ok(eigenvalue_derivative(&spec, 2, w, T::zero(), T::zero())?
        - eigenvalue_derivative(&spec, 1, w, T::zero(), T::zero())?)
}

/// Minimizes `a ↦ Λ(ax, bc)` over `[lo, hi]` on `L = π`.
pub fn search_linear_minimizer<T: Real>(
    bc: &RobinPair<T>,
    lo: T,
    hi: T,
) -> Result<FamilyMinimum<T>> {
    let interval = Interval::default();
    let family = |a: T| {
        Potential::new(
            Form::Linear {
                slope: a,
                offset: T::zero(),
            },
            interval,
        )
    };
    let (argmin, gap, unimodal, warning) =
        minimize_family(|a| gap_value(&family(a)?, bc), lo, hi, "linear family")?;
    let slope_at_zero = gap_slope_at_zero(&family(T::one())?, bc)?;
    Ok(FamilyMinimum {
        argmin,
        gap,
        slope_at_zero,
        unimodal,
        warning,
    })
}

/// Minimizes `m ↦ Λ(m·1₍₀,π/2₎, (D, 0))` over `[lo, hi]` (either sign of `m`).
pub fn search_step_minimizer_mixed_bc<T: Real>(lo: T, hi: T) -> Result<FamilyMinimum<T>> {
    let interval = Interval::default();
    let bc = RobinPair::new(RobinParam::Dirichlet, RobinParam::neumann());
    let family = |m: T| {
        Potential::new(
            Form::Step {
                height: m,
                split: T::zero(),
            },
            interval,
        )
    };
    let (argmin, gap, unimodal, warning) =
        minimize_family(|m| gap_value(&family(m)?, &bc), lo, hi, "step family")?;
    let slope_at_zero = gap_slope_at_zero(&family(T::one())?, &bc)?;
    Ok(FamilyMinimum {
        argmin,
        gap,
        slope_at_zero,
        unimodal,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn offcenter_counterexample_and_control() {
        let c = find_offcenter_counterexample(1.0, -PI / 4.0).unwrap();
        assert!(c.margin > 1e-4);
        assert!((c.free_gap - c.gap - c.margin).abs() < 1e-12);
        assert!(matches!(
            find_offcenter_counterexample(0.0, 0.0),
            Err(Error::SearchFailure(_))
        ));
        assert!(find_offcenter_counterexample(0.0, 0.5).is_err());
    }

    #[test]
    fn endpoint_variant_uses_free_crossing() {
        let c = find_offcenter_counterexample(0.0, -PI / 2.0).unwrap();
        assert!((c.split + PI / 4.0).abs() < 1e-4);
        assert!(c.margin > 0.0);
    }

    #[test]
    fn linear_family_minimizers() {
        let neumann = search_linear_minimizer(&RobinPair::<f64>::neumann(), -3.0, 3.0).unwrap();
        assert!(neumann.argmin.abs() < 1e-3, "{}", neumann.argmin);
        assert!(
            neumann.slope_at_zero.abs() < 1e-8,
            "{}",
            neumann.slope_at_zero
        );
        let mixed = RobinPair::new(RobinParam::Dirichlet, RobinParam::neumann());
        let m = search_linear_minimizer(&mixed, -2.0, 6.0).unwrap();
        assert!(
            (m.slope_at_zero + 16.0 / (9.0 * PI)).abs() < 1e-6,
            "{}",
            m.slope_at_zero
        );
        assert!(m.argmin > 0.0 && m.gap < 2.0 - 1e-4);
    }

    #[test]
    fn mixed_step_minimizer() {
        let m = search_step_minimizer_mixed_bc(-5.0, 10.0).unwrap();
        assert!(
            (m.slope_at_zero + 4.0 / (3.0 * PI)).abs() < 1e-6,
            "{}",
            m.slope_at_zero
        );
        assert!(m.argmin > 0.0 && m.gap < 2.0 - 1e-4, "{m:?}");
    }
}
