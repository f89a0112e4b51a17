//! General eigenvalue engine for `-u'' + V u = λ u` on `(-L/2, L/2)` with
//! independent Robin (or Dirichlet) conditions at the two ends.
//!
//! [`eigenpairs`] discretizes on a uniform grid with the lumped
//! piecewise-linear scheme (central differences in the interior, Robin
//! conditions through ghost points, symmetrized by the trapezoid weights
//! `(1/2, 1, …, 1, 1/2)`), solves the tridiagonal problem on `N` and `2N`
//! cells and Richardson-extrapolates the eigenvalues. [`shooting_eigenvalue`]
//! is an independent Prüfer-angle shooting method used as a cross-check.

mod crossing;
mod fd;
mod perturbation;
mod shooting;

pub use crossing::{crossing_points, wronskian_residual, CrossingData};
pub use fd::{eigenpairs, eigenpairs_default, spectrum_from_step, DEFAULT_CELLS, MIN_CELLS};
pub use perturbation::{
    eigenvalue_derivative, rayleigh_quotient, second_order_derivative, SecondOrder,
};
pub use shooting::{
    shooting_eigenvalue, shooting_eigenvalue_with, shooting_spectrum, ShootingTolerance,
};

use std::fmt;
use std::io::Write;

use serde_json::{json, Value};

use crate::bc::RobinPair;
use crate::error::Result;
use crate::numerics::grid::UniformGrid;
use crate::potential::Interval;
use crate::scalar::Real;

/// Which engine produced a spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    FiniteDifference,
    Shooting,
    Transcendental,
}

impl Engine {
    pub fn label(&self) -> &'static str {
        match self {
            Engine::FiniteDifference => "fd",
            Engine::Shooting => "shooting",
            Engine::Transcendental => "transcendental",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Raw eigenpairs on one grid: the eigenvalues of the discrete problem and
/// eigenfunctions normalized by `h Σ w_i u_i² = 1`.
#[derive(Clone, Debug)]
pub struct Level<T> {
    pub grid: UniformGrid<T>,
    pub eigenvalues: Vec<T>,
    pub eigenfunctions: Vec<Vec<T>>,
}

impl<T: Real> Level<T> {
    /// `h Σ w_i f_i g_i`.
    pub fn inner(&self, f: &[T], g: &[T]) -> T {
        weighted_inner(f, g, self.grid.h)
    }
}

pub(crate) fn weighted_inner<T: Real>(f: &[T], g: &[T], h: T) -> T {
    let n = f.len();
    let mut acc = T::zero();
    for i in 0..n {
        let w = if i == 0 || i + 1 == n {
            T::half()
        } else {
            T::one()
        };
        acc = acc + w * f[i] * g[i];
    }
    acc * h
}

/// Quality numbers attached to a spectrum.
#[derive(Clone, Debug, Default)]
pub struct Residuals<T> {
    /// `|λ_j(2N) - λ_j(N)|` per eigenvalue.
    pub richardson: Vec<T>,
    /// `max |h Σ w u_i u_j - δ_ij|` on the reported grid.
    pub orthonormality: T,
    /// Largest projective residual (transcendental engine).
    pub equation: Option<T>,
}

/// The first `k` eigenpairs of one problem.
///
/// `eigenvalues` are the best estimates (extrapolated for the grid engine);
/// `eigenfunctions` live on `grid`. The raw per-grid data stay available in
/// `levels` for discrete inner products that must match the matrix exactly.
#[derive(Clone, Debug)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
    pub eigenfunctions: Vec<Vec<T>>,
    pub grid: UniformGrid<T>,
    pub interval: Interval<T>,
    pub bc: RobinPair<T>,
    pub engine: Engine,
    /// Cells of the base grid.
    pub cells: usize,
    pub residuals: Residuals<T>,
    pub warnings: Vec<String>,
    pub levels: Vec<Level<T>>,
}

impl<T: Real> Spectrum<T> {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `λ₂ - λ₁`, if two eigenvalues were computed.
    pub fn gap(&self) -> Option<T> {
        (self.eigenvalues.len() >= 2).then(|| self.eigenvalues[1] - self.eigenvalues[0])
    }

    /// `u_j` (1-based) on the reported grid.
    pub fn eigenfunction(&self, j: usize) -> Option<&[T]> {
        self.eigenfunctions
            .get(j.checked_sub(1)?)
            .map(Vec::as_slice)
    }

    /// `{"lambda", "gap", "N", "engine", "residuals"}`.
    pub fn to_json(&self) -> Value {
        let f = |x: T| x.to_f64_lossy();
        let mut residuals = serde_json::Map::new();
        if !self.residuals.richardson.is_empty() {
            residuals.insert(
                "richardson".into(),
                json!(self
                    .residuals
                    .richardson
                    .iter()
                    .map(|&r| f(r))
                    .collect::<Vec<_>>()),
            );
        }
        if !self.eigenfunctions.is_empty() {
            residuals.insert(
                "orthonormality".into(),
                json!(f(self.residuals.orthonormality)),
            );
        }
        if let Some(e) = self.residuals.equation {
            residuals.insert("equation".into(), json!(f(e)));
        }
        json!({
            "lambda": self.eigenvalues.iter().map(|&l| f(l)).collect::<Vec<_>>(),
            "gap": self.gap().map(f),
            "N": self.cells,
            "engine": self.engine.label(),
            "residuals": residuals,
        })
    }

    /// Writes `x,u1,u2` rows of the first two eigenfunctions.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,u1,u2")?;
        let u1 = self.eigenfunction(1);
        let u2 = self.eigenfunction(2);
        for i in 0..self.grid.len() {
            let col = |u: Option<&[T]>| {
                u.map_or(String::new(), |u| format!("{:.16e}", u[i].to_f64_lossy()))
            };
            writeln!(
                out,
                "{:.16e},{},{}",
                self.grid.node(i).to_f64_lossy(),
                col(u1),
                col(u2)
            )?;
        }
        Ok(())
    }

    pub(crate) fn require_pair(&self) -> Result<(&[T], &[T])> {
        match (self.eigenfunction(1), self.eigenfunction(2)) {
            (Some(u1), Some(u2)) => Ok((u1, u2)),
            _ => Err(crate::error::Error::Precondition(
                "spectrum needs u₁ and u₂".into(),
            )),
        }
    }
}

/// Flips `u` so that its first non-negligible value (from the left) is positive.
pub(crate) fn fix_sign<T: Real>(u: &mut [T]) {
    let scale = u.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let threshold = scale * T::of(1e-8);
    if let Some(first) = u.iter().find(|v| v.abs() > threshold) {
        if *first < T::zero() {
            u.iter_mut().for_each(|v| *v = -*v);
        }
    }
}
