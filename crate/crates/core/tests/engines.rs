use proptest::prelude::*;
use robin_gap::gaplab::{free_gap, gap_with};
use robin_gap::solver::{eigenpairs, shooting_eigenvalue, DEFAULT_CELLS};
use robin_gap::transcendental::step_eigenvalues;
use robin_gap::{Potential, RobinPair, RobinParam};

#[test]
fn grid_and_shooting_agree_on_linear_potential() {
    let v = Potential::linear(1.5, 0.25);
    let bc = RobinPair::new(RobinParam::Finite(0.5), RobinParam::Finite(2.0));
    let grid = eigenpairs(&v, &bc, 3, DEFAULT_CELLS).unwrap();
    for j in 1..=3 {
        let shot = shooting_eigenvalue(&v, &bc, j).unwrap();
        assert!(
            (grid.eigenvalues[j - 1] - shot).abs() < 1e-7,
            "j = {j}: {} vs {shot}",
            grid.eigenvalues[j - 1]
        );
    }
}

#[test]
fn gap_report_uses_transcendental_engine_for_centered_steps() {
    let bc = RobinPair::symmetric(RobinParam::Finite(1.0));
    let report = gap_with(&Potential::step(2.0, 0.0), &bc, DEFAULT_CELLS).unwrap();
    assert_eq!(report.engine.to_string(), "transcendental");
    let direct = step_eigenvalues(2.0, RobinParam::Finite(1.0), 2).unwrap();
    assert!((report.gap - direct.gap()).abs() < 1e-12);
}

#[test]
fn free_gap_ignores_potential() {
    let bc = RobinPair::new(RobinParam::Dirichlet, RobinParam::neumann());
    assert!((free_gap(&Potential::linear(3.0, 1.0), &bc).unwrap() - 2.0).abs() < 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transcendental_matches_grid_on_steps(m in 0.0f64..12.0, a in -0.5f64..8.0) {
        let alpha = RobinParam::Finite(a);
        let exact = step_eigenvalues(m, alpha, 3).unwrap().roots;
        let grid = eigenpairs(&Potential::step(m, 0.0), &RobinPair::symmetric(alpha), 3, DEFAULT_CELLS).unwrap();
        for (x, y) in exact.iter().zip(&grid.eigenvalues) {
            prop_assert!((x - y).abs() < 5e-6, "{x} vs {y}");
        }
    }
}
