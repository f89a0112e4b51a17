use super::{eigenpairs, weighted_inner, Level, Spectrum, DEFAULT_CELLS};
use crate::bc::{RobinPair, RobinParam};
use crate::error::{Error, Result};
use crate::numerics::grid::UniformGrid;
use crate::potential::Potential;
use crate::scalar::Real;

/// Combines per-level values: fourth-order extrapolation for two levels.
fn extrapolate<T: Real>(values: &[T]) -> T {
    match values {
        [single] => *single,
        [coarse, fine, ..] => (T::of(4.0) * *fine - *coarse) / T::of(3.0),
        [] => T::nan(),
    }
}

fn check_same_interval<T: Real>(spec: &Spectrum<T>, v: &Potential<T>) -> Result<()> {
    let (a, b) = (spec.interval.length(), v.interval().length());
    if (a - b).abs() > T::of(1e-12) * a {
        return Err(Error::Domain(format!(
            "perturbation lives on L = {b}, spectrum on L = {a}"
        )));
    }
    Ok(())
}

/// `dλ_j = ∫ dV u_j² + dα u_j(-L/2)² + dβ u_j(L/2)²` (first-order perturbation).
///
/// Evaluated with the discrete inner product of each grid level, which makes
/// it the exact derivative of the discrete eigenvalue, then extrapolated.
pub fn eigenvalue_derivative<T: Real>(
    spec: &Spectrum<T>,
    j: usize,
    dv: &Potential<T>,
    d_alpha: T,
    d_beta: T,
) -> Result<T> {
    if j == 0 || j > spec.len() {
        return Err(Error::Domain(format!(
            "eigenvalue index {j} outside 1..={}",
            spec.len()
        )));
    }
    if spec.levels.is_empty() {
        return Err(Error::Precondition(
            "spectrum carries no eigenfunctions".into(),
        ));
    }
    if spec.bc.alpha.is_dirichlet() && d_alpha != T::zero() {
        return Err(Error::Domain("left side is Dirichlet: dα must be 0".into()));
    }
    if spec.bc.beta.is_dirichlet() && d_beta != T::zero() {
        return Err(Error::Domain(
            "right side is Dirichlet: dβ must be 0".into(),
        ));
    }
    check_same_interval(spec, dv)?;
    let per_level: Vec<T> = spec
        .levels
        .iter()
        .map(|level| {
            let u = &level.eigenfunctions[j - 1];
            let dvals = dv.discretize(&level.grid);
            let weighted: Vec<T> = dvals.iter().zip(u).map(|(&d, &x)| d * x).collect();
            let n = u.len() - 1;
            level.inner(&weighted, u) + d_alpha * u[0] * u[0] + d_beta * u[n] * u[n]
        })
        .collect();
    Ok(extrapolate(&per_level))
}

/// Second-order perturbation sum with a doubling estimate of its truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecondOrder<T> {
    /// `-2 Σ_{j=2}^{J+1} ⟨u₁, V₀ u_j⟩² / (λ_j - λ₁)`.
    pub value: T,
    /// Same sum with `2J` terms.
    pub doubled: T,
}

impl<T: Real> SecondOrder<T> {
    pub fn truncation_estimate(&self) -> T {
        (self.doubled - self.value).abs()
    }
}

/// `d²/dt² λ₁(V + tV₀)` at `t = 0`, truncated after `J ≥ 8` terms.
pub fn second_order_derivative<T: Real>(
    v: &Potential<T>,
    v0: &Potential<T>,
    bc: &RobinPair<T>,
    terms: usize,
) -> Result<SecondOrder<T>> {
    second_order_derivative_with(v, v0, bc, terms, DEFAULT_CELLS)
}

pub fn second_order_derivative_with<T: Real>(
    v: &Potential<T>,
    v0: &Potential<T>,
    bc: &RobinPair<T>,
    terms: usize,
    cells: usize,
) -> Result<SecondOrder<T>> {
    if terms < 8 {
        return Err(Error::Domain(format!(
            "truncation needs J ≥ 8, got {terms}"
        )));
    }
    let spec = eigenpairs(v, bc, 2 * terms + 1, cells)?;
    check_same_interval(&spec, v0)?;
    let partial = |level: &Level<T>, count: usize| -> T {
        let v0vals = v0.discretize(&level.grid);
        let u1 = &level.eigenfunctions[0];
        let v0u1: Vec<T> = v0vals.iter().zip(u1).map(|(&a, &b)| a * b).collect();
        let sum = (1..=count).fold(T::zero(), |acc, j| {
            let c = level.inner(&v0u1, &level.eigenfunctions[j]);
            acc + c * c / (level.eigenvalues[j] - level.eigenvalues[0])
        });
        -T::two() * sum
    };
    let at = |count: usize| {
        let values: Vec<T> = spec.levels.iter().map(|l| partial(l, count)).collect();
        extrapolate(&values).min(T::zero())
    };
    Ok(SecondOrder {
        value: at(terms),
        doubled: at(2 * terms),
    })
}

/// Discrete quotient `(Σ (Δu)²/h + α u₀² + β u_N² + h Σ w V u²) / (h Σ w u²)`.
fn discrete_quotient<T: Real>(
    u: &[T],
    v: &Potential<T>,
    bc: &RobinPair<T>,
    grid: &UniformGrid<T>,
) -> Result<T> {
    let h = grid.h;
    let vals = v.discretize(grid);
    let kinetic = u
        .windows(2)
        .fold(T::zero(), |acc, w| acc + (w[1] - w[0]) * (w[1] - w[0]))
        / h;
    let n = u.len() - 1;
    let boundary = bc.alpha.value().map_or(T::zero(), |a| a * u[0] * u[0])
        + bc.beta.value().map_or(T::zero(), |b| b * u[n] * u[n]);
    let vu: Vec<T> = vals.iter().zip(u).map(|(&a, &b)| a * b).collect();
    let potential = weighted_inner(&vu, u, h);
    let mass = weighted_inner(u, u, h);
    if !(mass > T::zero()) {
        return Err(Error::Domain(
            "Rayleigh quotient of the zero function".into(),
        ));
    }
    Ok((kinetic + boundary + potential) / mass)
}

/// Rayleigh quotient `(∫ u'² + V u² + α u(-L/2)² + β u(L/2)²) / ∫ u²` of a
/// function sampled on a uniform grid over the interval of `V`.
///
/// The discrete quotient on the given grid equals the grid eigenvalue for a
/// grid eigenvector. When the cell count is even it is also evaluated on
/// every other node and the two are Richardson-combined, which removes the
/// `h²` term for smooth `u`.
pub fn rayleigh_quotient<T: Real>(u: &[T], v: &Potential<T>, bc: &RobinPair<T>) -> Result<T> {
    if u.len() < 3 {
        return Err(Error::Domain("need at least three samples".into()));
    }
    let scale = u.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    if !(scale > T::zero()) {
        return Err(Error::Domain(
            "Rayleigh quotient of the zero function".into(),
        ));
    }
    let n = u.len() - 1;
    let tiny = T::of(1e-10) * scale;
    if (bc.alpha == RobinParam::Dirichlet && u[0].abs() > tiny)
        || (bc.beta == RobinParam::Dirichlet && u[n].abs() > tiny)
    {
        return Err(Error::Precondition(
            "Dirichlet side requires u = 0 at that endpoint".into(),
        ));
    }
    let grid = v.interval().grid(n);
    let fine = discrete_quotient(u, v, bc, &grid)?;
    if !n.is_multiple_of(2) || n < 4 {
        return Ok(fine);
    }
    let coarse_u: Vec<T> = u.iter().step_by(2).copied().collect();
    let coarse = discrete_quotient(&coarse_u, v, bc, &v.interval().grid(n / 2))?;
    Ok(extrapolate(&[coarse, fine]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::eigenpairs_default;
    use std::f64::consts::PI;

    #[test]
    fn free_neumann_step_derivative_is_half() {
        let spec = eigenpairs_default(&Potential::<f64>::zero(), &RobinPair::neumann(), 2).unwrap();
        let d =
            eigenvalue_derivative(&spec, 1, &Potential::<f64>::step(1.0, 0.0), 0.0, 0.0).unwrap();
        assert!((d - 0.5).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let v = Potential::linear(0.8, 0.2);
        let bc = RobinPair::new(RobinParam::Finite(0.5), RobinParam::Finite(1.5));
        let dv = Potential::power_well(1.0, 2.0);
        let (da, db) = (0.3, -0.2);
        let spec = eigenpairs_default(&v, &bc, 2).unwrap();
        let eps = 1e-4;
        let solve = |s: f64| {
            let w = v.plus(&dv.scaled(s).form().clone());
            let b = RobinPair::new(bc.alpha.shifted(s * da), bc.beta.shifted(s * db));
            eigenpairs_default(&w, &b, 2).unwrap().eigenvalues
        };
        let (up, down) = (solve(eps), solve(-eps));
        for j in 1..=2 {
            let fd = (up[j - 1] - down[j - 1]) / (2.0 * eps);
            let exact = eigenvalue_derivative(&spec, j, &dv, da, db).unwrap();
            assert!(
                (exact - fd).abs() <= 1e-5 * fd.abs(),
                "j = {j}: {exact} vs {fd}"
            );
        }
    }

    #[test]
    fn dirichlet_side_rejects_boundary_perturbation() {
        let spec =
            eigenpairs_default(&Potential::<f64>::zero(), &RobinPair::dirichlet(), 1).unwrap();
        assert!(eigenvalue_derivative(&spec, 1, &Potential::<f64>::zero(), 1.0, 0.0).is_err());
        assert!(eigenvalue_derivative(&spec, 1, &Potential::<f64>::zero(), 0.0, 0.0).is_ok());
    }

    #[test]
    fn second_order_trivial_cases() {
        let bc = RobinPair::<f64>::neumann();
        let zero = second_order_derivative_with(
            &Potential::<f64>::zero(),
            &Potential::<f64>::zero(),
            &bc,
            8,
            400,
        )
        .unwrap();
        assert_eq!(zero.value, 0.0);
        let constant = second_order_derivative_with(
            &Potential::<f64>::zero(),
            &Potential::constant(1.0),
            &bc,
            8,
            400,
        )
        .unwrap();
        assert!(constant.value.abs() < 1e-12);
        assert!(second_order_derivative(
            &Potential::<f64>::zero(),
            &Potential::<f64>::zero(),
            &bc,
            4
        )
        .is_err());
    }

    #[test]
    fn second_order_for_neumann_step() {
        // Σ over odd k of -2·(2/(π²k⁴)) = -π²/24
        let s = second_order_derivative(
            &Potential::<f64>::zero(),
            &Potential::<f64>::step(1.0, 0.0),
            &RobinPair::neumann(),
            64,
        )
        .unwrap();
        assert!((s.value + PI * PI / 24.0).abs() < 2e-6, "{}", s.value);
        assert!(s.truncation_estimate() < 1e-5);
    }

    #[test]
    fn rayleigh_examples() {
        let spec = eigenpairs_default(
            &Potential::<f64>::linear(1.0, 0.0),
            &RobinPair::symmetric(RobinParam::Finite(1.0)),
            1,
        )
        .unwrap();
        let rq = rayleigh_quotient(
            spec.eigenfunction(1).unwrap(),
            &Potential::<f64>::linear(1.0, 0.0),
            &spec.bc,
        )
        .unwrap();
        assert!(
            (rq - spec.eigenvalues[0]).abs() < 1e-8,
            "{rq} vs {}",
            spec.eigenvalues[0]
        );

        let ones = vec![1.0; 101];
        for a in [0.0, 0.5, 3.0] {
            let rq = rayleigh_quotient(
                &ones,
                &Potential::<f64>::zero(),
                &RobinPair::symmetric(RobinParam::Finite(a)),
            )
            .unwrap();
            assert!((rq - 2.0 * a / PI).abs() < 1e-13);
        }
        assert!(
            rayleigh_quotient(&[0.0; 10], &Potential::<f64>::zero(), &RobinPair::neumann())
                .is_err()
        );
        assert!(
            rayleigh_quotient(&ones, &Potential::<f64>::zero(), &RobinPair::dirichlet()).is_err()
        );
    }
}
