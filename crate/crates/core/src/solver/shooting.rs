use super::{Engine, Residuals, Spectrum};
use crate::bc::{RobinPair, RobinParam};
use crate::error::{Error, Result};
use crate::numerics::ode::{dopri5, Tolerance};
use crate::potential::Potential;
use crate::scalar::Real;

/// Accuracy knobs of the shooting engine.
#[derive(Clone, Copy, Debug)]
pub struct ShootingTolerance<T> {
    /// Width of the final eigenvalue bracket.
    pub bisection: T,
    pub ode: Tolerance<T>,
}

impl<T: Real> Default for ShootingTolerance<T> {
    fn default() -> Self {
        ShootingTolerance {
            bisection: T::of(1e-10),
            ode: Tolerance::default(),
        }
    }
}

/// `j`-th eigenvalue (1-based) by Prüfer shooting with default tolerances.
pub fn shooting_eigenvalue<T: Real>(v: &Potential<T>, bc: &RobinPair<T>, j: usize) -> Result<T> {
    shooting_eigenvalue_with(v, bc, j, &ShootingTolerance::default())
}

/// Prüfer angle `θ` with `tan θ = u/u'` obeys `θ' = cos²θ + (λ - V) sin²θ`.
/// It is integrated from both ends to the midpoint; the `j`-th eigenvalue
/// solves `θ_L(0) - θ_R(0) = (j - 1)π`, a mismatch increasing in `λ`.
pub fn shooting_eigenvalue_with<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    j: usize,
    tol: &ShootingTolerance<T>,
) -> Result<T> {
    if j == 0 {
        return Err(Error::Domain("eigenvalue index is 1-based".into()));
    }
    let shooter = Shooter::new(v, bc);
    let target = T::of_usize(j - 1) * T::PI();
    let (vmin, vmax) = v.range();
    let length = v.interval().length();

    let a = [bc.alpha, bc.beta]
        .iter()
        .filter_map(RobinParam::value)
        .fold(T::zero(), |m, p| m.max(-p));
    let reach = if a > T::zero() {
        a / (a * T::half() * length).tanh()
    } else {
        T::two() / length
    };
    let mut lo = vmin - reach * reach - T::one();
    let mut hi = vmax + (T::of_usize(j) * T::PI() / length).powi(2) + T::one();

    let mut expand = 0;
    while shooter.mismatch(lo, &tol.ode)? >= target {
        lo = lo - (hi - lo);
        expand += 1;
        if expand > 60 {
            return Err(Error::Engine("shooting: no lower bracket".into()));
        }
    }
    while shooter.mismatch(hi, &tol.ode)? <= target {
        hi = hi + (hi - lo);
        expand += 1;
        if expand > 60 {
            return Err(Error::Engine("shooting: no upper bracket".into()));
        }
    }
    while hi - lo > tol.bisection {
        let mid = T::half() * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if shooter.mismatch(mid, &tol.ode)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(T::half() * (lo + hi))
}

/// First `k` eigenvalues by shooting, wrapped as an eigenvalue-only spectrum.
pub fn shooting_spectrum<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    k: usize,
) -> Result<Spectrum<T>> {
    let eigenvalues = (1..=k)
        .map(|j| shooting_eigenvalue(v, bc, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum {
        eigenvalues,
        eigenfunctions: Vec::new(),
        grid: v.interval().grid(1),
        interval: v.interval(),
        bc: *bc,
        engine: Engine::Shooting,
        cells: 0,
        residuals: Residuals::default(),
        warnings: Vec::new(),
        levels: Vec::new(),
    })
}

struct Shooter<'a, T> {
    v: &'a Potential<T>,
    theta_left: T,
    theta_right: T,
    /// Integration knots left of the midpoint, left to right, and right of it, right to left.
    left_knots: Vec<T>,
    right_knots: Vec<T>,
}

impl<'a, T: Real> Shooter<'a, T> {
    fn new(v: &'a Potential<T>, bc: &RobinPair<T>) -> Self {
        let interval = v.interval();
        let breaks = v.breakpoints();
        let mut left_knots = vec![interval.left()];
        left_knots.extend(breaks.iter().copied().filter(|&x| x < T::zero()));
        left_knots.push(T::zero());
        let mut right_knots = vec![interval.right()];
        right_knots.extend(breaks.iter().rev().copied().filter(|&x| x > T::zero()));
        right_knots.push(T::zero());
        let theta_left = match bc.alpha {
            RobinParam::Finite(a) => T::one().atan2(a),
            RobinParam::Dirichlet => T::zero(),
        };
        let theta_right = match bc.beta {
            RobinParam::Finite(b) => T::one().atan2(-b),
            RobinParam::Dirichlet => T::PI(),
        };
        Shooter {
            v,
            theta_left,
            theta_right,
            left_knots,
            right_knots,
        }
    }

    fn sweep(&self, knots: &[T], theta0: T, lambda: T, tol: &Tolerance<T>) -> Result<T> {
        let rhs = |x: T, theta: T| {
            let (s, c) = theta.sin_cos();
            c * c + (lambda - self.v.value_at(x)) * s * s
        };
        knots
            .windows(2)
            .try_fold(theta0, |theta, w| dopri5(rhs, w[0], theta, w[1], tol))
    }

    fn mismatch(&self, lambda: T, tol: &Tolerance<T>) -> Result<T> {
        let left = self.sweep(&self.left_knots, self.theta_left, lambda, tol)?;
        let right = self.sweep(&self.right_knots, self.theta_right, lambda, tol)?;
        Ok(left - right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_examples() {
        let z = Potential::<f64>::zero();
        assert!((shooting_eigenvalue(&z, &RobinPair::neumann(), 2).unwrap() - 1.0).abs() < 1e-9);
        assert!((shooting_eigenvalue(&z, &RobinPair::dirichlet(), 1).unwrap() - 1.0).abs() < 1e-9);
        let mixed = RobinPair::new(RobinParam::Dirichlet, RobinParam::neumann());
        assert!((shooting_eigenvalue(&z, &mixed, 3).unwrap() - 6.25).abs() < 1e-9);
    }

    #[test]
    fn agrees_with_grid_engine() {
        let v = Potential::<f64>::linear(1.0, 0.0);
        let bc = RobinPair::symmetric(RobinParam::Finite(1.0));
        let grid = super::super::eigenpairs_default(&v, &bc, 3).unwrap();
        for j in 1..=3 {
            let s = shooting_eigenvalue(&v, &bc, j).unwrap();
            assert!(
                (s - grid.eigenvalues[j - 1]).abs() < 1e-7,
                "j = {j}: {s} vs {}",
                grid.eigenvalues[j - 1]
            );
        }
    }

    #[test]
    fn negative_robin_parameters() {
        let bc = RobinPair::new(RobinParam::Finite(-2.0), RobinParam::Finite(-0.5));
        let v = Potential::<f64>::zero();
        let grid = super::super::eigenpairs_default(&v, &bc, 2).unwrap();
        for j in 1..=2 {
            let s = shooting_eigenvalue(&v, &bc, j).unwrap();
            assert!((s - grid.eigenvalues[j - 1]).abs() < 1e-7);
        }
    }
}
