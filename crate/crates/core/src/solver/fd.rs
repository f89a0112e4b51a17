use log::{debug, warn};

use super::{fix_sign, weighted_inner, Engine, Level, Residuals, Spectrum};
use crate::bc::{RobinPair, RobinParam};
use crate::error::{Error, Result};
use crate::numerics::tridiag::SymTridiag;
use crate::potential::{Interval, Potential};
use crate::scalar::Real;
use crate::transcendental::{step_eigenfunction, StepSpectrum};

pub const DEFAULT_CELLS: usize = 2000;
pub const MIN_CELLS: usize = 64;
/// Eigenvalues closer than this trigger a conditioning warning.
const DEGENERACY: f64 = 1e-10;

/// [`eigenpairs`] with `N = 2000`.
pub fn eigenpairs_default<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    k: usize,
) -> Result<Spectrum<T>> {
    eigenpairs(v, bc, k, DEFAULT_CELLS)
}

/// First `k` eigenpairs of the grid discretization with `cells` and
/// `2·cells` cells, eigenvalues Richardson-extrapolated to fourth order.
pub fn eigenpairs<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    k: usize,
    cells: usize,
) -> Result<Spectrum<T>> {
    if k == 0 {
        return Err(Error::Domain("need at least one eigenpair".into()));
    }
    if cells < MIN_CELLS {
        return Err(Error::Domain(format!(
            "grid needs at least {MIN_CELLS} cells, got {cells}"
        )));
    }
    for p in [bc.alpha, bc.beta] {
        if let RobinParam::Finite(a) = p {
            if !a.is_finite() {
                return Err(Error::Domain(format!(
                    "Robin parameter must be finite or Dirichlet, got {a}"
                )));
            }
        }
    }
    let (coarse, fine) = rayon::join(
        || solve_level(v, bc, k, cells),
        || solve_level(v, bc, k, 2 * cells),
    );
    let (coarse, fine) = (coarse?, fine?);
    let three = T::of(3.0);
    let eigenvalues: Vec<T> = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(&c, &f)| (T::of(4.0) * f - c) / three)
        .collect();
    let richardson = coarse
        .eigenvalues
        .iter()
        .zip(&fine.eigenvalues)
        .map(|(&c, &f)| (f - c).abs())
        .collect();

    let mut warnings = Vec::new();
    for (j, pair) in eigenvalues.windows(2).enumerate() {
        if (pair[1] - pair[0]).abs() < T::of(DEGENERACY) {
            let msg = format!(
                "eigenvalues {} and {} are nearly degenerate ({} apart); results may be ill-conditioned",
                j + 1,
                j + 2,
                (pair[1] - pair[0]).abs()
            );
            warn!("{msg}");
            warnings.push(msg);
        }
    }
    debug!("fd solve: N = {cells}, k = {k}, λ = {eigenvalues:?}");

    let orthonormality = orthonormality_defect(&coarse);
    Ok(Spectrum {
        eigenvalues,
        eigenfunctions: coarse.eigenfunctions.clone(),
        grid: coarse.grid,
        interval: v.interval(),
        bc: *bc,
        engine: Engine::FiniteDifference,
        cells,
        residuals: Residuals {
            richardson,
            orthonormality,
            equation: None,
        },
        warnings,
        levels: vec![coarse, fine],
    })
}

fn orthonormality_defect<T: Real>(level: &Level<T>) -> T {
    let mut worst = T::zero();
    for (i, u) in level.eigenfunctions.iter().enumerate() {
        for (j, w) in level.eigenfunctions.iter().enumerate().skip(i) {
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max((level.inner(u, w) - target).abs());
        }
    }
    worst
}

fn solve_level<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    k: usize,
    cells: usize,
) -> Result<Level<T>> {
    let grid = v.interval().grid(cells);
    let h = grid.h;
    let inv_h2 = T::one() / (h * h);
    let values = v.discretize(&grid);
    let first = usize::from(bc.alpha.is_dirichlet());
    let last = if bc.beta.is_dirichlet() {
        cells - 1
    } else {
        cells
    };
    let weight = |i: usize| {
        if i == 0 || i == cells {
            T::half()
        } else {
            T::one()
        }
    };

    let diag: Vec<T> = (first..=last)
        .map(|i| {
            let kinetic = match (i, bc.alpha, bc.beta) {
                (0, RobinParam::Finite(a), _) => T::two() * (T::one() + h * a) * inv_h2,
                (i, _, RobinParam::Finite(b)) if i == cells => {
                    T::two() * (T::one() + h * b) * inv_h2
                }
                _ => T::two() * inv_h2,
            };
            kinetic + values[i]
        })
        .collect();
    let off: Vec<T> = (first..last)
        .map(|i| -inv_h2 / (weight(i) * weight(i + 1)).sqrt())
        .collect();
    let matrix = SymTridiag::new(diag, off);
    if k > matrix.dim() {
        return Err(Error::Domain(format!(
            "asked for {k} eigenpairs of a {}-dimensional problem",
            matrix.dim()
        )));
    }

    let eigenvalues = matrix.lowest_eigenvalues(k);
    let mut vectors: Vec<Vec<T>> = Vec::with_capacity(k);
    for &lambda in &eigenvalues {
        let vec = matrix.eigenvector(lambda, &vectors)?;
        vectors.push(vec);
    }
    let eigenfunctions = vectors
        .iter()
        .map(|vec| {
            let mut u = vec![T::zero(); cells + 1];
            for (offset, &x) in vec.iter().enumerate() {
                let i = first + offset;
                u[i] = x / (h * weight(i)).sqrt();
            }
            fix_sign(&mut u);
            u
        })
        .collect();
    Ok(Level {
        grid,
        eigenvalues,
        eigenfunctions,
    })
}

/// Wraps roots of the step engine as a spectrum on the interval of length
/// `length`, with eigenfunctions sampled on `cells` cells. Uses the scaling
/// `λ_j(L) = (π/L)² λ_j(π)` with the step height and `α` rescaled alike.
pub fn spectrum_from_step<T: Real>(
    step: &StepSpectrum<T>,
    length: T,
    cells: usize,
) -> Result<Spectrum<T>> {
    let interval = Interval::new(length)?;
    let t = length / T::PI();
    let grid = interval.grid(cells);
    let xs: Vec<T> = grid.nodes().iter().map(|&x| x / t).collect();
    let eigenvalues: Vec<T> = step.roots.iter().map(|&r| r / (t * t)).collect();
    let eigenfunctions: Vec<Vec<T>> = step
        .roots
        .iter()
        .map(|&root| {
            let mut u = step_eigenfunction(root, step.m, step.alpha, &xs);
            let norm = weighted_inner(&u, &u, grid.h).sqrt();
            u.iter_mut().for_each(|x| *x = *x / norm);
            fix_sign(&mut u);
            u
        })
        .collect();
    let level = Level {
        grid,
        eigenvalues: eigenvalues.clone(),
        eigenfunctions: eigenfunctions.clone(),
    };
    let orthonormality = orthonormality_defect(&level);
    let equation = step.residuals.iter().fold(T::zero(), |m, &r| m.max(r));
    Ok(Spectrum {
        eigenvalues,
        eigenfunctions,
        grid,
        interval,
        bc: RobinPair::symmetric(step.alpha.scaled_by(t)),
        engine: Engine::Transcendental,
        cells,
        residuals: Residuals {
            richardson: Vec::new(),
            orthonormality,
            equation: Some(equation),
        },
        warnings: Vec::new(),
        levels: vec![level],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Form;
    use crate::transcendental::step_eigenvalues;

    fn d() -> RobinParam<f64> {
        RobinParam::Dirichlet
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn free_closed_forms() {
        let zero = Potential::<f64>::zero();
        let n = eigenpairs_default(&zero, &RobinPair::neumann(), 4).unwrap();
        assert_close(&n.eigenvalues, &[0.0, 1.0, 4.0, 9.0], 1e-8);
        let dd = eigenpairs_default(&zero, &RobinPair::dirichlet(), 4).unwrap();
        assert_close(&dd.eigenvalues, &[1.0, 4.0, 9.0, 16.0], 1e-8);
        let dn = eigenpairs_default(&zero, &RobinPair::new(d(), RobinParam::neumann()), 3).unwrap();
        assert_close(&dn.eigenvalues, &[0.25, 2.25, 6.25], 1e-8);
        let nd = eigenpairs_default(&zero, &RobinPair::new(RobinParam::neumann(), d()), 3).unwrap();
        assert_close(&nd.eigenvalues, &[0.25, 2.25, 6.25], 1e-8);
    }

    #[test]
    fn normalization_and_signs() {
        let v = Potential::linear(1.0, 0.3);
        let spec = eigenpairs(
            &v,
            &RobinPair::new(RobinParam::Finite(0.5), RobinParam::Finite(2.0)),
            3,
            400,
        )
        .unwrap();
        assert!(spec.residuals.orthonormality < 1e-9);
        let u1 = spec.eigenfunction(1).unwrap();
        assert!(u1.iter().all(|&x| x > 0.0));
        let u2 = spec.eigenfunction(2).unwrap();
        assert!(u2[0] > 0.0);
    }

    #[test]
    fn agrees_with_step_engine() {
        for m in [0.5, 2.0, 10.0] {
            for alpha in [RobinParam::Finite(0.0), RobinParam::Finite(1.0), d()] {
                let exact = step_eigenvalues(m, alpha, 4).unwrap();
                let grid =
                    eigenpairs_default(&Potential::step(m, 0.0), &RobinPair::symmetric(alpha), 4)
                        .unwrap();
                assert_close(&grid.eigenvalues, &exact.roots, 5e-6);
            }
        }
    }

    #[test]
    fn scaling_relation() {
        let v = Potential::sum(vec![
            Form::Linear {
                slope: 0.7,
                offset: 0.0,
            },
            Form::Step {
                height: 1.5,
                split: 0.2,
            },
        ]);
        let bc = RobinPair::new(RobinParam::Finite(0.4), RobinParam::Finite(1.2));
        let base = eigenpairs_default(&v, &bc, 3).unwrap();
        for t in [0.5f64, 2.0] {
            let (w, b, _) = crate::potential::rescale(&v, &bc, t).unwrap();
            let scaled = eigenpairs_default(&w, &b, 3).unwrap();
            for (s, e) in scaled.eigenvalues.iter().zip(&base.eigenvalues) {
                assert!((s - e / (t * t)).abs() <= 1e-6 * e.abs().max(1.0f64));
            }
        }
    }

    #[test]
    fn step_spectrum_wrapper() {
        let step = step_eigenvalues(2.0, RobinParam::Finite(1.0), 2).unwrap();
        let spec = spectrum_from_step(&step, std::f64::consts::PI, 2000).unwrap();
        assert!(spec.residuals.orthonormality < 1e-6);
        assert_eq!(spec.engine, Engine::Transcendental);
        let grid = eigenpairs_default(
            &Potential::step(2.0, 0.0),
            &RobinPair::symmetric(RobinParam::Finite(1.0)),
            2,
        )
        .unwrap();
        for (a, b) in spec
            .eigenfunction(2)
            .unwrap()
            .iter()
            .zip(grid.eigenfunction(2).unwrap())
        {
            assert!((a - b).abs() < 1e-4);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let z = Potential::<f64>::zero();
        assert!(eigenpairs(&z, &RobinPair::neumann(), 0, 100).is_err());
        assert!(eigenpairs(&z, &RobinPair::neumann(), 2, 10).is_err());
    }
}
