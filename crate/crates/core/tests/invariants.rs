use proptest::prelude::*;
use robin_gap::gaplab::gap_value;
use robin_gap::potential::rescale;
use robin_gap::solver::eigenpairs;
use robin_gap::{Potential, RobinPair, RobinParam};

const CELLS: usize = 400;

fn robin() -> impl Strategy<Value = RobinParam> {
    prop_oneof![
        (-0.3f64..6.0).prop_map(RobinParam::Finite),
        Just(RobinParam::Dirichlet)
    ]
}

fn potential() -> impl Strategy<Value = Potential> {
    prop_oneof![
        (-3.0f64..3.0, -1.0f64..1.0).prop_map(|(s, c)| Potential::linear(s, c)),
        (0.0f64..8.0, -1.2f64..1.2).prop_map(|(h, s)| Potential::step(h, s)),
        (0.1f64..3.0, 1.0f64..3.0).prop_map(|(c, p)| Potential::power_well(c, p)),
    ]
}

fn eigenvalues(v: &Potential, bc: &RobinPair, k: usize) -> Vec<f64> {
    eigenpairs(v, bc, k, CELLS).unwrap().eigenvalues
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reflection_preserves_spectrum(v in potential(), a in robin(), b in robin()) {
        let bc = RobinPair::new(a, b);
        let direct = eigenvalues(&v, &bc, 3);
        let mirrored = eigenvalues(&v.reflected(), &bc.reflected(), 3);
        for (x, y) in direct.iter().zip(&mirrored) {
            prop_assert!((x - y).abs() <= 1e-7 * x.abs().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn constant_shift_moves_every_eigenvalue(v in potential(), a in robin(), c in -5.0f64..5.0) {
        let bc = RobinPair::symmetric(a);
        let shifted = v.shifted(c);
        let base = eigenvalues(&v, &bc, 3);
        let moved = eigenvalues(&shifted, &bc, 3);
        for (x, y) in base.iter().zip(&moved) {
            prop_assert!((y - x - c).abs() <= 1e-9 * (1.0 + x.abs()), "{x} + {c} vs {y}");
        }
    }

    #[test]
    fn rescaling_divides_eigenvalues_by_square(v in potential(), a in robin(), t in 0.4f64..2.5) {
        let bc = RobinPair::new(a, RobinParam::Finite(1.0));
        let (w, scaled_bc, _) = rescale(&v, &bc, t).unwrap();
        let base = eigenvalues(&v, &bc, 2);
        let scaled = eigenvalues(&w, &scaled_bc, 2);
        for (x, y) in base.iter().zip(&scaled) {
            prop_assert!((y * t * t - x).abs() <= 1e-7 * x.abs().max(1.0), "{x} vs {y}·t²");
        }
    }

    #[test]
    fn eigenvalues_increase_with_robin_parameter(v in potential(), a in -0.3f64..4.0, da in 0.1f64..2.0) {
        let low = eigenvalues(&v, &RobinPair::symmetric(RobinParam::Finite(a)), 2);
        let high = eigenvalues(&v, &RobinPair::symmetric(RobinParam::Finite(a + da)), 2);
        let top = eigenvalues(&v, &RobinPair::dirichlet(), 2);
        for j in 0..2 {
            prop_assert!(low[j] < high[j] && high[j] < top[j]);
        }
    }

    #[test]
    fn gap_is_positive_and_finite(v in potential(), a in robin(), b in robin()) {
        let g = gap_value(&v, &RobinPair::new(a, b)).unwrap();
        prop_assert!(g.is_finite() && g > 0.0);
    }
}
