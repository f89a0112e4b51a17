//! Named verification suites over seeded corpora (`f64` only).
//!
//! Each suite returns one [`VerifierOutcome`]; engine failures propagate as
//! errors. Outcomes depend only on the seed.

use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;

use super::corpus::{self, choice_stream, choose};
use super::search::{
    find_offcenter_counterexample, search_linear_minimizer, search_step_minimizer_mixed_bc,
};
use super::sweep::{
    step_curve_crossings, sweep_gap_vs_alpha, sweep_gap_vs_m, uniform_points, SweepCurve,
};
use super::verify::{
    concavity_profile, verify_alpha_monotone, verify_concavity, verify_convex_bound,
    verify_general_single_well_dirichlet, verify_single_well_bound, verify_symmetric_monotone,
    VerifierOutcome,
};
use crate::error::{Error, Result};
use crate::potential::{classify, Form, WellProfile};
use crate::solver::{
    crossing_points, eigenpairs, eigenpairs_default, eigenvalue_derivative,
    second_order_derivative, wronskian_residual,
};
use crate::transcendental::{free_eigenvalues, m0, slope_check, step_eigenvalues};
use crate::{Interval, Potential, RobinPair, RobinParam};

/// Suite names accepted by [`run_suite`], in run order.
pub const SUITES: [&str; 13] = [
    "thm-1.2",
    "thm-1.3",
    "cor-1.4",
    "thm-1.5",
    "lemma-deriv",
    "lemma-wrskn",
    "lemma-concave",
    "eq-dti",
    "m0-identity",
    "harrell-bound",
    "fig2",
    "fig3",
    "fig4",
];

/// Relative tolerance for derivative formulas against finite differences.
pub const DERIVATIVE_RTOL: f64 = 1e-5;
/// Required counterexample margin.
pub const COUNTEREXAMPLE_MARGIN: f64 = 1e-4;
/// Slope tolerance on the `t₁` bound and its limit at `m = 0`.
pub const SLOPE_TOL: f64 = 1e-9;
pub const SLOPE_LIMIT_TOL: f64 = 1e-4;
pub const M0_IDENTITY_TOL: f64 = 1e-8;
pub const SECOND_ORDER_RTOL: f64 = 1e-4;

/// Runs one suite by name.
pub fn run_suite(name: &str, seed: u64) -> Result<VerifierOutcome> {
    let mut out = match name {
        "thm-1.2" => single_well_suite(seed),
        "thm-1.3" => symmetric_suite(seed),
        "cor-1.4" => alpha_monotone_suite(seed),
        "thm-1.5" => convex_suite(seed),
        "lemma-deriv" => derivative_suite(seed),
        "lemma-wrskn" => crossing_suite(seed),
        "lemma-concave" => concavity_suite(),
        "eq-dti" => slope_suite(),
        "m0-identity" => m0_suite(),
        "harrell-bound" => dirichlet_single_well_suite(seed),
        "fig2" => negative_alpha_figure(),
        "fig3" => positive_alpha_figure(),
        "fig4" => alpha_sweep_figure(),
        other => Err(Error::Domain(format!(
            "unknown suite '{other}'; known: {}",
            SUITES.join(", ")
        ))),
    }?;
    out.claim = format!("{name}: {}", out.claim);
    Ok(out)
}

/// Runs the named suites (`"all"` expands to every suite) in order.
pub fn run_suites(names: &[String], seed: u64) -> Result<Vec<VerifierOutcome>> {
    let expanded: Vec<&str> = if names.iter().any(|n| n == "all") {
        SUITES.to_vec()
    } else {
        names.iter().map(String::as_str).collect()
    };
    expanded.into_iter().map(|n| run_suite(n, seed)).collect()
}

fn dirichlet() -> RobinParam {
    RobinParam::Dirichlet
}

fn single_well_suite(seed: u64) -> Result<VerifierOutcome> {
    let alphas = [
        RobinParam::Finite(0.0),
        RobinParam::Finite(1.0),
        RobinParam::Finite(5.0),
        dirichlet(),
    ];
    let wells = corpus::centered_single_wells(50, seed);
    let cases: Vec<(Potential, RobinParam)> = wells
        .iter()
        .flat_map(|v| alphas.iter().map(move |a| (v.clone(), *a)))
        .collect();
    let mut out = verify_single_well_bound(&cases)?;
    out.claim = "centered single wells do not lower the gap; off-centre steps can".into();
    for alpha in [0.0, 1.0] {
        let found = find_offcenter_counterexample(alpha, -PI / 4.0)?;
        out.at_least(
            format!(
                "counterexample t·1(-π/4, π/2), alpha = {alpha}: margin at t = {:.6}",
                found.t
            ),
            found.margin,
            COUNTEREXAMPLE_MARGIN,
            0.0,
        );
    }
    let control = find_offcenter_counterexample(0.0, 0.0);
    let control_margin = control.as_ref().map_or(0.0, |c| c.margin);
    out.check(
        "negative control tau = 0 finds no counterexample",
        control_margin,
        0.0,
        matches!(control, Err(Error::SearchFailure(_))),
    );
    Ok(out)
}

fn symmetric_suite(seed: u64) -> Result<VerifierOutcome> {
    let shapes = corpus::symmetric_potentials(10, seed);
    let wells = corpus::centered_single_wells(10, seed ^ 0x51);
    let mut rng = choice_stream(seed, 1);
    let options = [
        RobinParam::Finite(-1.0),
        RobinParam::Finite(0.0),
        RobinParam::Finite(1.0),
        RobinParam::Finite(5.0),
        dirichlet(),
    ];
    let mut cases = Vec::new();
    for (s, v) in shapes.iter().zip(&wells) {
        for _ in 0..2 {
            let alpha = choose(&mut rng, &options);
            for gamma in [0.0, 1.0] {
                cases.push((s.clone(), v.clone(), alpha, gamma));
            }
        }
    }
    let mut out = verify_symmetric_monotone(&cases)?;
    out.claim = "adding a symmetric single well and raising alpha does not lower the gap of a symmetric potential".into();
    Ok(out)
}

fn alpha_monotone_suite(seed: u64) -> Result<VerifierOutcome> {
    let mut shapes = corpus::symmetric_potentials(9, seed);
    shapes.insert(0, Potential::power_well(1.0, 2.0));
    let alphas = [-3.0, -1.0, 0.0, 1.0, 5.0, 20.0].map(RobinParam::Finite);
    let mut out = verify_alpha_monotone(&shapes, &alphas)?;
    out.claim = "the gap of a symmetric potential strictly increases with alpha".into();
    Ok(out)
}

fn convex_suite(seed: u64) -> Result<VerifierOutcome> {
    let mut rng = choice_stream(seed, 2);
    let options = [
        RobinParam::Finite(-1.0 / PI),
        RobinParam::Finite(0.0),
        RobinParam::Finite(2.0),
        dirichlet(),
    ];
    let cases: Vec<(Potential, RobinParam, RobinParam)> = corpus::convex_potentials(30, seed)
        .into_iter()
        .map(|v| (v, choose(&mut rng, &options), choose(&mut rng, &options)))
        .collect();
    let mut out = verify_convex_bound(&cases)?;
    out.claim = "convex potentials keep the gap above the free gap at min(alpha, beta)".into();

    // with mixed conditions the constant potential is not the minimizer
    let mixed = RobinPair::new(dirichlet(), RobinParam::neumann());
    let linear = search_linear_minimizer(&mixed, -2.0, 6.0)?;
    let oracle = -16.0 / (9.0 * PI);
    out.check(
        "d/da Λ(ax, (D,0)) at a = 0 equals -16/(9π)",
        linear.slope_at_zero,
        oracle,
        (linear.slope_at_zero - oracle).abs() <= 1e-6,
    );
    out.at_most(
        format!("linear minimizer a* = {:.6}: Λ* below 2", linear.argmin),
        linear.gap,
        2.0 - 1e-4,
        0.0,
    );
    out.check(
        "linear minimizer a* ≠ 0",
        linear.argmin,
        0.0,
        linear.argmin.abs() > 1e-3,
    );
    let step = search_step_minimizer_mixed_bc(-5.0, 10.0)?;
    out.at_most(
        format!("step minimizer m* = {:.6}: Λ* below 2", step.argmin),
        step.gap,
        2.0 - 1e-4,
        0.0,
    );
    out.check(
        "step minimizer m* ≠ 0",
        step.argmin,
        0.0,
        step.argmin.abs() > 1e-3,
    );
    for w in [linear.warning, step.warning].into_iter().flatten() {
        out.note(w);
    }
    Ok(out)
}

/// Fourth-order central difference of `f` at 0.
fn central_derivative(f: impl Fn(f64) -> Result<f64>, eps: f64) -> Result<f64> {
    let d1 = f(eps)? - f(-eps)?;
    let d2 = f(2.0 * eps)? - f(-2.0 * eps)?;
    Ok((8.0 * d1 - d2) / (12.0 * eps))
}

fn derivative_suite(seed: u64) -> Result<VerifierOutcome> {
    let mut rng = choice_stream(seed, 3);
    let bases = corpus::general_potentials(20, seed);
    let cases: Vec<(Potential, Potential, RobinPair, f64, f64)> = bases
        .into_iter()
        .map(|v| {
            let dv = match rng.gen_range(0..3) {
                0 => Potential::linear(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0)),
                1 => Potential::power_well(rng.gen_range(0.2..2.0), 2.0),
                _ => Potential::step(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0)),
            };
            let side = |rng: &mut rand_chacha::ChaCha8Rng| {
                if rng.gen_bool(0.2) {
                    (dirichlet(), 0.0)
                } else {
                    (
                        RobinParam::Finite(rng.gen_range(-1.0..3.0)),
                        rng.gen_range(-1.0..1.0),
                    )
                }
            };
            let (alpha, da) = side(&mut rng);
            let (beta, db) = side(&mut rng);
            (v, dv, RobinPair::new(alpha, beta), da, db)
        })
        .collect();
    let rows = cases
        .par_iter()
        .map(|(v, dv, bc, da, db)| -> Result<Vec<(String, f64, f64)>> {
            let spec = eigenpairs_default(v, bc, 2)?;
            let perturbed = |s: f64| -> Result<Vec<f64>> {
                let w = v.plus(dv.scaled(s).form());
                let b = RobinPair::new(bc.alpha.shifted(s * da), bc.beta.shifted(s * db));
                Ok(eigenpairs_default(&w, &b, 2)?.eigenvalues)
            };
            (1..=2)
                .map(|j| {
                    let formula = eigenvalue_derivative(&spec, j, dv, *da, *db)?;
                    let fd = central_derivative(|s| Ok(perturbed(s)?[j - 1]), 1e-3)?;
                    let input = format!(
                        "V = {}, dV = {}, bc = {bc}, da = {da:.4}, db = {db:.4}, j = {j}",
                        v.describe(),
                        dv.describe()
                    );
                    Ok((input, formula, fd))
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = VerifierOutcome::new("eigenvalue derivative formula matches finite differences");
    for (input, formula, fd) in rows.into_iter().flatten() {
        let rel = (formula - fd).abs() / fd.abs();
        out.at_most(input, rel, DERIVATIVE_RTOL, 0.0);
    }
    Ok(out)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Residuals of the Wronskian identity on `cells` grids.
pub fn wronskian_convergence(
    v: &Potential,
    bc: &RobinPair,
    cells: &[usize],
) -> Result<(Vec<f64>, f64)> {
    let residuals = cells
        .iter()
        .map(|&n| wronskian_residual(&eigenpairs(v, bc, 2, n)?))
        .collect::<Result<Vec<f64>>>()?;
    let ns: Vec<f64> = cells.iter().map(|&n| n as f64).collect();
    let slope = log_log_slope(&ns, &residuals);
    Ok((residuals, slope))
}

fn crossing_suite(seed: u64) -> Result<VerifierOutcome> {
    let mut rng = choice_stream(seed, 4);
    let options = [
        RobinParam::Finite(-0.5),
        RobinParam::Finite(0.0),
        RobinParam::Finite(1.0),
        RobinParam::Finite(4.0),
        dirichlet(),
    ];
    let mut cases: Vec<(Potential, RobinPair)> = corpus::general_potentials(6, seed)
        .into_iter()
        .map(|v| {
            (
                v,
                RobinPair::new(choose(&mut rng, &options), choose(&mut rng, &options)),
            )
        })
        .collect();
    cases.extend(
        corpus::symmetric_potentials(4, seed)
            .into_iter()
            .map(|v| (v, RobinPair::symmetric(choose(&mut rng, &options)))),
    );
    cases.push((Potential::zero(), RobinPair::neumann()));

    let results = cases
        .par_iter()
        .map(|(v, bc)| -> Result<VerifierOutcome> {
            let input = format!("V = {}, bc = {bc}", v.describe());
            let mut out = VerifierOutcome::new("");
            let spec = eigenpairs_default(v, bc, 2)?;
            let c = match crossing_points(&spec) {
                Ok(c) => c,
                Err(e) => {
                    out.check(format!("{input}: {e}"), 0.0, 0.0, false);
                    return Ok(out);
                }
            };
            let (u1, u2) = (
                spec.eigenfunction(1).unwrap(),
                spec.eigenfunction(2).unwrap(),
            );
            let h = spec.grid.h;
            let interior: Vec<usize> = (0..u1.len()).filter(|&i| u1[i] > 0.0).collect();
            let ratio: Vec<f64> = interior.iter().map(|&i| u2[i] / u1[i]).collect();
            let rises = ratio.windows(2).filter(|w| w[1] >= w[0]).count();
            out.check(
                format!("{input}: u₂/u₁ decreasing (non-decreasing steps)"),
                rises as f64,
                0.0,
                rises == 0,
            );

            let scale = u1.iter().chain(u2).fold(0.0f64, |m, x| m.max(x * x));
            let wrong = (0..u1.len())
                .filter(|&i| {
                    let x = spec.grid.node(i);
                    let d = u2[i] * u2[i] - u1[i] * u1[i];
                    let near = (x - c.x_minus).abs() <= h || (x - c.x_plus).abs() <= h;
                    let inside = x > c.x_minus && x < c.x_plus;
                    let tiny = d.abs() <= 1e-12 * scale;
                    !near && !tiny && (inside == (d > 0.0))
                })
                .count();
            out.check(
                format!("{input}: sign of u₂² - u₁² off [x₋, x₊] (wrong nodes)"),
                wrong as f64,
                0.0,
                wrong == 0,
            );
            if classify(v, v.default_class_tolerance()).symmetric && bc.is_symmetric() {
                out.at_most(
                    format!("{input}: |x₋ + x₊|"),
                    (c.x_minus + c.x_plus).abs(),
                    2.0 * h,
                    0.0,
                );
                out.check(
                    format!("{input}: x₊ in (0, L/2)"),
                    c.x_plus,
                    0.0,
                    c.x_plus > 0.0 && c.x_plus < spec.interval.right(),
                );
            }
            let (_, slope) = wronskian_convergence(v, bc, &[500, 1000, 2000])?;
            out.at_most(
                format!("{input}: Wronskian residual order (at least 2)"),
                slope,
                -1.8,
                0.0,
            );
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = VerifierOutcome::new("u₂/u₁ decreases and u₂² > u₁² exactly near the ends");
    results.into_iter().for_each(|r| out.absorb(r));
    let quadratic = Potential::new(
        Form::SymmetricWell(WellProfile::Power {
            coeff: 1.0,
            exponent: 2.0,
        }),
        Interval::new(PI)?,
    )?;
    let robin = RobinPair::new(RobinParam::finite(0.5), RobinParam::finite(2.0));
    let (_, slope) = wronskian_convergence(&quadratic, &robin, &[500, 1000, 2000])?;
    out.check(
        "V = x², bc = (0.5, 2): Wronskian residual order",
        slope,
        -2.0,
        (slope + 2.0).abs() <= 0.2,
    );
    Ok(out)
}

fn concavity_suite() -> Result<VerifierOutcome> {
    let v0 = Potential::step(1.0, 0.0);
    let bc = RobinPair::neumann();
    let ts = uniform_points(0.0, 5.0, 10);
    let mut out = verify_concavity(&v0, &bc, &ts)?;
    let profile = concavity_profile(&v0, &bc, &ts)?;
    for (i, d) in profile.second.iter().enumerate() {
        out.check(
            format!("strict concavity at t = {}", ts[i + 1]),
            *d,
            0.0,
            *d < 0.0,
        );
    }
    let (observed, reference) = second_order_check(&v0, &bc)?;
    let rel = (observed - reference).abs() / reference.abs();
    out.at_most(
        "second-order formula vs second difference at t = 0 (relative)",
        rel,
        SECOND_ORDER_RTOL,
        0.0,
    );
    Ok(out)
}

/// Second-order formula at `t = 0` and a Richardson-improved second central
/// difference of `λ₁(tV₀)`.
pub fn second_order_check(v0: &Potential, bc: &RobinPair) -> Result<(f64, f64)> {
    let zero = Potential::new(Form::Zero, v0.interval())?;
    let formula = second_order_derivative(&zero, v0, bc, 64)?.value;
    let lambda =
        |t: f64| -> Result<f64> { Ok(eigenpairs_default(&v0.scaled(t), bc, 1)?.eigenvalues[0]) };
    let second =
        |d: f64| -> Result<f64> { Ok((lambda(d)? - 2.0 * lambda(0.0)? + lambda(-d)?) / (d * d)) };
    let delta = 0.02;
    let reference = (16.0 * second(delta)? - second(2.0 * delta)?) / 15.0;
    Ok((formula, reference))
}

/// `dt_j/dm` from the implicit formula at `m`.
fn slope_fd(m: f64, alpha: RobinParam, j: usize) -> Result<f64> {
    let h = 1e-5 * m.max(1.0);
    let t = |m: f64| -> Result<f64> { Ok(step_eigenvalues(m, alpha, j)?.roots[j - 1]) };
    Ok((t(m + h)? - t(m - h)?) / (2.0 * h))
}

/// `t₁'(m)` at small `m`, extrapolated linearly to `m = 0`.
pub fn slope_limit(alpha: RobinParam) -> Result<f64> {
    let h = 1e-3;
    let (s1, _) = slope_check(h, alpha)?;
    let (s2, _) = slope_check(2.0 * h, alpha)?;
    Ok(2.0 * s1 - s2)
}

fn slope_suite() -> Result<VerifierOutcome> {
    let mut out = VerifierOutcome::new("t₁' ≤ 1/2 < t₂' on (0, m₀), with t₁'(0) = 1/2");
    for a in [0.0, 1.0, 5.0] {
        let alpha = RobinParam::Finite(a);
        let top = m0(alpha)?;
        let ms: Vec<f64> = (0..20).map(|i| top * (i as f64 + 0.5) / 20.0).collect();
        let rows = ms
            .par_iter()
            .map(|&m| -> Result<(f64, f64, f64, f64, f64)> {
                let (s1, s2) = slope_check(m, alpha)?;
                Ok((m, s1, s2, slope_fd(m, alpha, 1)?, slope_fd(m, alpha, 2)?))
            })
            .collect::<Result<Vec<_>>>()?;
        for (m, s1, s2, f1, f2) in rows {
            let at = format!("alpha = {a}, m = {m:.6}");
            out.at_most(format!("{at}: t₁'"), s1, 0.5, SLOPE_TOL);
            out.check(format!("{at}: t₂'"), s2, 0.5, s2 > 0.5);
            out.at_most(
                format!("{at}: |t₁' - finite difference|"),
                (s1 - f1).abs(),
                DERIVATIVE_RTOL,
                0.0,
            );
            out.at_most(
                format!("{at}: |t₂' - finite difference|"),
                (s2 - f2).abs(),
                DERIVATIVE_RTOL,
                0.0,
            );
        }
        let limit = slope_limit(alpha)?;
        out.at_most(
            format!("alpha = {a}: |t₁'(0⁺) - 1/2|"),
            (limit - 0.5).abs(),
            SLOPE_LIMIT_TOL,
            0.0,
        );
    }
    Ok(out)
}

fn m0_suite() -> Result<VerifierOutcome> {
    let mut out = VerifierOutcome::new("t₂(λ₃ - λ₁) = λ₃");
    for a in [0.0, 0.5, 2.0] {
        let alpha = RobinParam::Finite(a);
        let free = free_eigenvalues(alpha, 3)?;
        let m = free[2] - free[0];
        let t2 = step_eigenvalues(m, alpha, 2)?.roots[1];
        out.at_most(
            format!("alpha = {a}: |t₂(m₀) - λ₃|"),
            (t2 - free[2]).abs(),
            M0_IDENTITY_TOL,
            0.0,
        );
    }
    Ok(out)
}

fn dirichlet_single_well_suite(seed: u64) -> Result<VerifierOutcome> {
    let mut corpus: Vec<Potential> = vec![Potential::zero(), Potential::step(5.0, 0.4)];
    corpus.extend(corpus::centered_single_wells(14, seed));
    corpus.extend(corpus::offcenter_single_wells(14, seed));
    let mut out = verify_general_single_well_dirichlet(&corpus)?;
    out.claim = "Dirichlet gap of any single well exceeds 2.04575 π²/L²".into();
    Ok(out)
}

fn m_curves(alphas: &[f64], m_max: f64, steps: usize) -> Result<Vec<SweepCurve<f64>>> {
    let ms = uniform_points(0.0, m_max, steps);
    alphas
        .iter()
        .map(|&a| sweep_gap_vs_m(RobinParam::Finite(a), ms.clone()))
        .collect()
}

fn check_start_increasing(out: &mut VerifierOutcome, alphas: &[f64], curves: &[SweepCurve<f64>]) {
    for i in 1..curves.len() {
        let (lo, hi) = (curves[i - 1].gaps[0], curves[i].gaps[0]);
        out.check(
            format!("Λ(0, {}) > Λ(0, {})", alphas[i], alphas[i - 1]),
            hi,
            lo,
            hi > lo,
        );
    }
}

fn negative_alpha_figure() -> Result<VerifierOutcome> {
    let alphas = [-2.0, -1.0, -0.1];
    let curves = m_curves(&alphas, 30.0, 600)?;
    let mut out = VerifierOutcome::new("m-sweeps for alpha < 0: ordered at m = 0 and crossing");
    check_start_increasing(&mut out, &alphas, &curves);
    let mut crossings = 0;
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            let found = step_curve_crossings(
                RobinParam::Finite(alphas[i]),
                &curves[i],
                RobinParam::Finite(alphas[j]),
                &curves[j],
            )?;
            for m in found.iter().filter(|&&m| m > 0.0) {
                out.note(format!(
                    "curves for alpha = {} and {} cross at m = {m:.10}",
                    alphas[i], alphas[j]
                ));
                crossings += 1;
            }
        }
    }
    out.at_least(
        "crossings among alpha < 0 curves on (0, 30]",
        crossings as f64,
        1.0,
        0.0,
    );
    for (a, c) in alphas.iter().zip(&curves) {
        let base = c.gaps[0];
        let low = c.gaps.iter().fold(f64::INFINITY, |m, g| m.min(g - base));
        out.note(format!(
            "alpha = {a}: min over m of Λ(m) - Λ(0) = {low:.6e} (exploratory, not checked)"
        ));
    }
    Ok(out)
}

fn positive_alpha_figure() -> Result<VerifierOutcome> {
    let alphas = [0.0, 2.0, 100.0];
    let curves = m_curves(&alphas, 4.0, 400)?;
    let mut out =
        VerifierOutcome::new("m-sweeps for alpha ≥ 0: ordered at m = 0 and increasing in m");
    check_start_increasing(&mut out, &alphas, &curves);
    for (a, c) in alphas.iter().zip(&curves) {
        let rises = c.gaps.windows(2).filter(|w| !(w[1] > w[0])).count();
        out.check(
            format!("alpha = {a}: non-increasing steps along m"),
            rises as f64,
            0.0,
            rises == 0,
        );
    }
    Ok(out)
}

fn alpha_sweep_figure() -> Result<VerifierOutcome> {
    let alphas = uniform_points(-6.0, 6.0, 240);
    let ms: Vec<f64> = (0..=6).map(|k| 0.5 * k as f64).collect();
    let curves = ms
        .iter()
        .map(|&m| sweep_gap_vs_alpha(m, alphas.clone()))
        .collect::<Result<Vec<_>>>()?;
    let zero = alphas
        .iter()
        .position(|&a| a == 0.0)
        .expect("grid contains 0");
    let mut out = VerifierOutcome::new(
        "alpha-sweeps: ordered in m at alpha = 0; monotone only for alpha ≥ 0 at m = 3",
    );
    for k in 2..ms.len() {
        let (lo, hi) = (curves[k - 1].gaps[zero], curves[k].gaps[zero]);
        out.check(
            format!("Λ({}, 0) > Λ({}, 0)", ms[k], ms[k - 1]),
            hi,
            lo,
            hi > lo,
        );
    }
    let free = &curves[0];
    out.check(
        "m = 0: strictly increasing in alpha",
        free.gaps[0],
        free.gaps[1],
        free.is_strictly_increasing(),
    );
    let m3 = &curves[6];
    let right = m3.restricted(0.0, 6.0);
    out.check(
        "m = 3: increasing on alpha ≥ 0",
        right.gaps[0],
        right.gaps[1],
        right.is_strictly_increasing(),
    );
    let left = m3.restricted(-6.0, -1e-12);
    out.check(
        "m = 3: not monotone on [-6, 0)",
        left.gaps[0],
        left.gaps[left.len() - 1],
        !left.is_nondecreasing(0.0),
    );
    Ok(out)
}
