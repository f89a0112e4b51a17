use std::io::Write;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bc::RobinParam;
use crate::error::{Error, Result};
use crate::numerics::roots::bisect;
use crate::scalar::Real;
use crate::transcendental::step_gap;

/// Gap as a function of one parameter with everything else held fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepCurve<T> {
    /// `m`, `alpha`, `gamma`, `a` or `t`.
    pub parameter: String,
    pub grid: Vec<T>,
    pub gaps: Vec<T>,
    /// Fixed part of the problem, for reports.
    pub context: String,
}

impl<T: Real> SweepCurve<T> {
    pub fn new(
        parameter: impl Into<String>,
        grid: Vec<T>,
        gaps: Vec<T>,
        context: impl Into<String>,
    ) -> Result<Self> {
        if grid.len() != gaps.len() {
            return Err(Error::Domain(format!(
                "{} grid points but {} gap values",
                grid.len(),
                gaps.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain(
                "sweep grid must be strictly increasing".into(),
            ));
        }
        Ok(SweepCurve {
            parameter: parameter.into(),
            grid,
            gaps,
            context: context.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.gaps.windows(2).all(|w| w[1] > w[0])
    }

    /// Nondecreasing up to `tol` between neighbours.
    pub fn is_nondecreasing(&self, tol: T) -> bool {
        self.gaps.windows(2).all(|w| w[1] >= w[0] - tol)
    }

    /// Restriction to grid points inside `[lo, hi]`.
    pub fn restricted(&self, lo: T, hi: T) -> Self {
        let (grid, gaps) = self
            .grid
            .iter()
            .zip(&self.gaps)
            .filter(|(&p, _)| p >= lo && p <= hi)
            .map(|(&p, &g)| (p, g))
            .unzip();
        SweepCurve {
            parameter: self.parameter.clone(),
            grid,
            gaps,
            context: self.context.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "parameter": self.parameter,
            "context": self.context,
            "grid": self.grid.iter().map(|p| p.to_f64_lossy()).collect::<Vec<_>>(),
            "gap": self.gaps.iter().map(|g| g.to_f64_lossy()).collect::<Vec<_>>(),
        })
    }

    /// `param,gap` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "param,gap")?;
        for (p, g) in self.grid.iter().zip(&self.gaps) {
            writeln!(out, "{:.16e},{:.16e}", p.to_f64_lossy(), g.to_f64_lossy())?;
        }
        Ok(())
    }
}

/// `steps + 1` equally spaced points from `lo` to `hi`.
pub fn uniform_points<T: Real>(lo: T, hi: T, steps: usize) -> Vec<T> {
    let steps = steps.max(1);
    let h = (hi - lo) / T::of_usize(steps);
    (0..=steps)
        .map(|i| {
            if i == steps {
                hi
            } else {
                lo + h * T::of_usize(i)
            }
        })
        .collect()
}

/// Evaluates `f` on the grid in parallel; results keep grid order.
pub fn sweep<T, F>(
    parameter: &str,
    grid: Vec<T>,
    context: impl Into<String>,
    f: F,
) -> Result<SweepCurve<T>>
where
    T: Real,
    F: Fn(T) -> Result<T> + Sync,
{
    let gaps = grid.par_iter().map(|&p| f(p)).collect::<Result<Vec<T>>>()?;
    SweepCurve::new(parameter, grid, gaps, context)
}

/// `m ↦ Λ(m·1₍₀,π/2₎, α)` on `L = π` (transcendental engine).
pub fn sweep_gap_vs_m<T: Real>(alpha: RobinParam<T>, ms: Vec<T>) -> Result<SweepCurve<T>> {
    if let Some(m) = ms.iter().find(|m| !(**m >= T::zero())) {
        return Err(Error::Domain(format!("step height must be ≥ 0, got {m}")));
    }
    sweep("m", ms, format!("alpha = {alpha}"), |m| step_gap(m, alpha))
}

/// `α ↦ Λ(m·1₍₀,π/2₎, α)` on `L = π` (transcendental engine).
pub fn sweep_gap_vs_alpha<T: Real>(m: T, alphas: Vec<T>) -> Result<SweepCurve<T>> {
    sweep("alpha", alphas, format!("m = {m}"), |a| {
        step_gap(m, RobinParam::Finite(a))
    })
}

/// Points where the step-gap curves for `alpha_a` and `alpha_b` cross: sign
/// changes of the sampled difference, refined by bisection to `1e-10`.
pub fn step_curve_crossings<T: Real>(
    alpha_a: RobinParam<T>,
    curve_a: &SweepCurve<T>,
    alpha_b: RobinParam<T>,
    curve_b: &SweepCurve<T>,
) -> Result<Vec<T>> {
    if curve_a.grid != curve_b.grid {
        return Err(Error::Domain("curves must share the grid".into()));
    }
    let diff: Vec<T> = curve_a
        .gaps
        .iter()
        .zip(&curve_b.gaps)
        .map(|(&a, &b)| a - b)
        .collect();
    let mut out = Vec::new();
    for i in 0..diff.len().saturating_sub(1) {
        let (d0, d1) = (diff[i], diff[i + 1]);
        if d0 == T::zero() {
            out.push(curve_a.grid[i]);
        } else if d0 * d1 < T::zero() {
            let f = |m: T| {
                step_gap(m, alpha_a)
                    .and_then(|a| Ok(a - step_gap(m, alpha_b)?))
                    .unwrap_or(T::nan())
            };
            out.push(bisect(
                f,
                curve_a.grid[i],
                curve_a.grid[i + 1],
                T::of(1e-10),
            )?);
        }
    }
    Ok(out)
}
