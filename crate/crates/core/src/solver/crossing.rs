use super::Spectrum;
use crate::error::{Error, Result};
use crate::numerics::quad::cumulative_trapezoid;
use crate::numerics::roots::linear_zero;
use crate::scalar::Real;

/// Sign structure of the first two eigenfunctions: `u₂` vanishes only at
/// `x₀`, and `u₂² > u₁²` exactly on `(-L/2, x₋) ∪ (x₊, L/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingData<T> {
    pub x_minus: T,
    pub x0: T,
    pub x_plus: T,
    /// `u₁(-L/2)²`, `u₁(L/2)²`, `u₂(-L/2)²`, `u₂(L/2)²`.
    pub u1_left_sq: T,
    pub u1_right_sq: T,
    pub u2_left_sq: T,
    pub u2_right_sq: T,
}

/// Locates `x₀` and `x±` by linear interpolation between grid nodes.
/// A missing left (right) crossing is reported as `-L/2` (`L/2`).
pub fn crossing_points<T: Real>(spec: &Spectrum<T>) -> Result<CrossingData<T>> {
    let (u1, u2) = spec.require_pair()?;
    let grid = &spec.grid;
    let n = u2.len();
    let scale = u2.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let tiny = scale * T::of(1e-10);

    // sign changes of u₂ among non-negligible nodes
    let significant: Vec<usize> = (0..n).filter(|&i| u2[i].abs() > tiny).collect();
    let changes: Vec<(usize, usize)> = significant
        .windows(2)
        .filter(|w| (u2[w[0]] > T::zero()) != (u2[w[1]] > T::zero()))
        .map(|w| (w[0], w[1]))
        .collect();
    let (i0, k0) = match changes.as_slice() {
        [single] => *single,
        [] => return Err(Error::SolverInconsistency("u₂ has no sign change".into())),
        many => {
            return Err(Error::SolverInconsistency(format!(
                "u₂ changes sign {} times",
                many.len()
            )));
        }
    };
    let x0 = linear_zero(grid.node(i0), u2[i0], grid.node(k0), u2[k0]);

    let d: Vec<T> = u1.iter().zip(u2).map(|(&a, &b)| b * b - a * a).collect();
    let dscale = d.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let positive = |i: usize| d[i] > dscale * T::of(1e-12);

    let x_minus = match (0..=i0).rev().find(|&i| positive(i)) {
        Some(i) => linear_zero(grid.node(i), d[i], grid.node(i + 1), d[i + 1]),
        None => spec.interval.left(),
    };
    let x_plus = match (k0..n).find(|&i| positive(i)) {
        Some(i) => linear_zero(grid.node(i - 1), d[i - 1], grid.node(i), d[i]),
        None => spec.interval.right(),
    };
    let last = n - 1;
    Ok(CrossingData {
        x_minus,
        x0,
        x_plus,
        u1_left_sq: u1[0] * u1[0],
        u1_right_sq: u1[last] * u1[last],
        u2_left_sq: u2[0] * u2[0],
        u2_right_sq: u2[last] * u2[last],
    })
}

fn derivative<T: Real>(u: &[T], h: T) -> Vec<T> {
    let n = u.len();
    let two_h = h + h;
    (0..n)
        .map(|i| {
            if i == 0 {
                (-T::of(3.0) * u[0] + T::of(4.0) * u[1] - u[2]) / two_h
            } else if i == n - 1 {
                (T::of(3.0) * u[n - 1] - T::of(4.0) * u[n - 2] + u[n - 3]) / two_h
            } else {
                (u[i + 1] - u[i - 1]) / two_h
            }
        })
        .collect()
}

/// `max_x |(u₂'u₁ - u₂u₁')(x) + (λ₂ - λ₁) ∫_{-L/2}^x u₁u₂|` on the base grid,
/// with the raw eigenvalues of that grid.
pub fn wronskian_residual<T: Real>(spec: &Spectrum<T>) -> Result<T> {
    let level = spec
        .levels
        .first()
        .ok_or_else(|| Error::Precondition("spectrum carries no eigenfunctions".into()))?;
    if level.eigenfunctions.len() < 2 {
        return Err(Error::Precondition("spectrum needs u₁ and u₂".into()));
    }
    let (u1, u2) = (&level.eigenfunctions[0], &level.eigenfunctions[1]);
    let h = level.grid.h;
    let gap = level.eigenvalues[1] - level.eigenvalues[0];
    let (d1, d2) = (derivative(u1, h), derivative(u2, h));
    let product: Vec<T> = u1.iter().zip(u2).map(|(&a, &b)| a * b).collect();
    let integral = cumulative_trapezoid(&product, h);
    Ok((0..u1.len()).fold(T::zero(), |m, i| {
        let w = d2[i] * u1[i] - u2[i] * d1[i];
        m.max((w + gap * integral[i]).abs())
    }))
}
