use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::gap::{free_gap, gap_value, GAP_TOLERANCE};
use crate::bc::{RobinPair, RobinParam};
use crate::error::{Error, Result};
use crate::potential::{classify, Potential};
use crate::scalar::Real;
use crate::solver::eigenpairs_default;

/// Lower-bound constant: `Λ(V, ∞) ≥ θ² π²/L²` for every single well.
pub const THETA_SQUARED: f64 = 2.04575;

/// One case that broke the checked inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub input: String,
    pub observed: f64,
    pub bound: f64,
    /// `observed - bound`, negative for a violation.
    pub margin: f64,
}

/// A corpus entry that does not satisfy the hypotheses of the claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rejection {
    pub input: String,
    pub reason: String,
}

/// Result of checking one claim over a corpus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifierOutcome {
    pub claim: String,
    pub cases: usize,
    pub violations: Vec<Violation>,
    pub rejected: Vec<Rejection>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl VerifierOutcome {
    pub fn new(claim: impl Into<String>) -> Self {
        VerifierOutcome {
            claim: claim.into(),
            cases: 0,
            violations: Vec::new(),
            rejected: Vec::new(),
            notes: Vec::new(),
            pass: true,
        }
    }

    /// Counts a case with `observed ≥ bound - tol` as the requirement.
    pub fn at_least(&mut self, input: impl Into<String>, observed: f64, bound: f64, tol: f64) {
        self.check(
            input,
            observed,
            bound,
            observed - bound >= -tol && observed.is_finite(),
        );
    }

    /// Counts a case with `observed ≤ bound + tol` as the requirement.
    pub fn at_most(&mut self, input: impl Into<String>, observed: f64, bound: f64, tol: f64) {
        self.check(
            input,
            observed,
            bound,
            bound - observed >= -tol && observed.is_finite(),
        );
    }

    /// Counts a case; `ok` decides, `observed - bound` is reported as margin.
    pub fn check(&mut self, input: impl Into<String>, observed: f64, bound: f64, ok: bool) {
        self.cases += 1;
        if !ok {
            let finite = |x: f64| {
                if x.is_finite() {
                    x
                } else {
                    f64::MAX.copysign(x)
                }
            };
            let (observed, bound) = (finite(observed), finite(bound));
            self.violations.push(Violation {
                input: input.into(),
                observed,
                bound,
                margin: observed - bound,
            });
            self.pass = false;
        }
    }

    pub fn reject(&mut self, input: impl Into<String>, reason: impl Into<String>) {
        self.rejected.push(Rejection {
            input: input.into(),
            reason: reason.into(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Appends the cases, violations, rejections and notes of `other`.
    pub fn absorb(&mut self, other: VerifierOutcome) {
        self.cases += other.cases;
        self.pass &= other.pass;
        self.violations.extend(other.violations);
        self.rejected.extend(other.rejected);
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("outcome serializes")
    }
}

/// Per-case result, merged in corpus order.
enum Case {
    Rejected(String, String),
    Checked {
        input: String,
        observed: f64,
        bound: f64,
        note: Option<String>,
    },
}

fn merge(claim: &str, cases: Vec<Case>) -> VerifierOutcome {
    let tol = GAP_TOLERANCE;
    let mut out = VerifierOutcome::new(claim);
    for case in cases {
        match case {
            Case::Rejected(input, reason) => out.reject(input, reason),
            Case::Checked {
                input,
                observed,
                bound,
                note,
            } => {
                if let Some(n) = note {
                    out.note(format!("{input}: {n}"));
                }
                out.at_least(input, observed, bound, tol);
            }
        }
    }
    out
}

fn oscillation<T: Real>(v: &Potential<T>) -> T {
    let (lo, hi) = v.range();
    hi - lo
}

fn equality_note<T: Real>(observed: T, bound: T, v: &Potential<T>, extra: bool) -> Option<String> {
    let close = (observed - bound).abs() <= T::of(GAP_TOLERANCE);
    let flat = oscillation(v) <= v.default_class_tolerance();
    match (close, flat && extra) {
        (true, true) => Some("equality within tolerance, consistent with the equality case".into()),
        (true, false) => Some("equality within tolerance for a non-equality case".into()),
        _ => None,
    }
}

/// Centered single wells: `Λ(V, α) ≥ Λ(0, α)` for `α ∈ [0, ∞]`.
pub fn verify_single_well_bound<T: Real>(
    corpus: &[(Potential<T>, RobinParam<T>)],
) -> Result<VerifierOutcome> {
    let cases = corpus
        .par_iter()
        .map(|(v, alpha)| -> Result<Case> {
            let input = format!("V = {}, alpha = {alpha}", v.describe());
            if alpha.value().is_some_and(|a| a < T::zero()) {
                return Ok(Case::Rejected(
                    input,
                    "alpha must be ≥ 0 or Dirichlet".into(),
                ));
            }
            match classify(v, v.default_class_tolerance()).single_well {
                None => return Ok(Case::Rejected(input, "not a single-well potential".into())),
                Some(tp) if !tp.admits(T::zero()) => {
                    return Ok(Case::Rejected(
                        input,
                        format!("transition points lie in [{}, {}], not at 0", tp.lo, tp.hi),
                    ));
                }
                Some(_) => {}
            }
            let bc = RobinPair::symmetric(*alpha);
            let observed = gap_value(v, &bc)?;
            let bound = free_gap(v, &bc)?;
            let note = equality_note(observed, bound, v, true);
            Ok(Case::Checked {
                input,
                observed: observed.to_f64_lossy(),
                bound: bound.to_f64_lossy(),
                note,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge("single-well bound Λ(V,α) ≥ Λ(0,α)", cases))
}

/// `(S, V, α, γ)` case of [`verify_symmetric_monotone`].
pub type SymmetricCase<T> = (Potential<T>, Potential<T>, RobinParam<T>, T);

/// Symmetric `S`, symmetric single well `V`, `γ ≥ 0`: `Λ(S + V, α + γ) ≥ Λ(S, α)`.
pub fn verify_symmetric_monotone<T: Real>(corpus: &[SymmetricCase<T>]) -> Result<VerifierOutcome> {
    let cases = corpus
        .par_iter()
        .map(|(s, v, alpha, gamma)| -> Result<Case> {
            let input = format!(
                "S = {}, V = {}, alpha = {alpha}, gamma = {gamma}",
                s.describe(),
                v.describe()
            );
            if (s.interval().length() - v.interval().length()).abs() > T::of(1e-12) {
                return Ok(Case::Rejected(
                    input,
                    "S and V live on different intervals".into(),
                ));
            }
            if !(*gamma >= T::zero()) {
                return Ok(Case::Rejected(input, "gamma must be ≥ 0".into()));
            }
            if !classify(s, s.default_class_tolerance()).symmetric {
                return Ok(Case::Rejected(input, "S is not symmetric".into()));
            }
            let class = classify(v, v.default_class_tolerance());
            if !class.symmetric || !class.single_well.is_some_and(|tp| tp.admits(T::zero())) {
                return Ok(Case::Rejected(
                    input,
                    "V is not a symmetric single well".into(),
                ));
            }
            let observed = gap_value(
                &s.plus(v.form()),
                &RobinPair::symmetric(alpha.shifted(*gamma)),
            )?;
            let bound = gap_value(s, &RobinPair::symmetric(*alpha))?;
            let note = equality_note(observed, bound, v, *gamma == T::zero());
            Ok(Case::Checked {
                input,
                observed: observed.to_f64_lossy(),
                bound: bound.to_f64_lossy(),
                note,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge("symmetric monotonicity Λ(S+V,α+γ) ≥ Λ(S,α)", cases))
}

/// Strict increase of `α ↦ Λ(S, α)` along the sorted grid, for each symmetric `S`.
/// Consecutive gaps must differ by more than the gap tolerance.
pub fn verify_alpha_monotone<T: Real>(
    corpus: &[Potential<T>],
    alphas: &[RobinParam<T>],
) -> Result<VerifierOutcome> {
    let mut grid = alphas.to_vec();
    grid.sort_by(RobinParam::total_cmp);
    let rows = corpus
        .par_iter()
        .map(|s| -> Result<Option<Vec<T>>> {
            if !classify(s, s.default_class_tolerance()).symmetric {
                return Ok(None);
            }
            grid.iter()
                .map(|a| gap_value(s, &RobinPair::symmetric(*a)))
                .collect::<Result<Vec<_>>>()
                .map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = VerifierOutcome::new("strict monotonicity of α ↦ Λ(S,α)");
    let tol = GAP_TOLERANCE;
    for (s, row) in corpus.iter().zip(rows) {
        let Some(gaps) = row else {
            out.reject(s.describe(), "S is not symmetric");
            continue;
        };
        for (i, w) in gaps.windows(2).enumerate() {
            let input = format!("S = {}, alpha {} -> {}", s.describe(), grid[i], grid[i + 1]);
            let (lo, hi) = (w[0].to_f64_lossy(), w[1].to_f64_lossy());
            out.check(input, hi, lo, hi - lo > tol);
        }
    }
    Ok(out)
}

/// Convex `V`, `α, β ∈ [-1/L, ∞]`: `Λ(V, (α, β)) ≥ Λ(0, min{α, β})`.
pub fn verify_convex_bound<T: Real>(
    corpus: &[(Potential<T>, RobinParam<T>, RobinParam<T>)],
) -> Result<VerifierOutcome> {
    let cases = corpus
        .par_iter()
        .map(|(v, alpha, beta)| -> Result<Case> {
            let input = format!("V = {}, alpha = {alpha}, beta = {beta}", v.describe());
            let floor = -T::one() / v.interval().length() * (T::one() + T::of(1e-12));
            if [alpha, beta]
                .iter()
                .any(|p| p.value().is_some_and(|a| a < floor))
            {
                return Ok(Case::Rejected(
                    input,
                    "Robin parameters must be ≥ -1/L".into(),
                ));
            }
            if !classify(v, v.default_class_tolerance()).convex {
                return Ok(Case::Rejected(input, "V is not convex".into()));
            }
            let observed = gap_value(v, &RobinPair::new(*alpha, *beta))?;
            let bound = free_gap(v, &RobinPair::symmetric(alpha.min(*beta)))?;
            let note = equality_note(observed, bound, v, alpha == beta);
            Ok(Case::Checked {
                input,
                observed: observed.to_f64_lossy(),
                bound: bound.to_f64_lossy(),
                note,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge("convex bound Λ(V,(α,β)) ≥ Λ(0,min{α,β})", cases))
}

/// Any single well with Dirichlet conditions: `Λ(V, ∞) ≥ θ² π²/L²`.
pub fn verify_general_single_well_dirichlet<T: Real>(
    corpus: &[Potential<T>],
) -> Result<VerifierOutcome> {
    let cases = corpus
        .par_iter()
        .map(|v| -> Result<Case> {
            let input = format!("V = {}", v.describe());
            if classify(v, v.default_class_tolerance())
                .single_well
                .is_none()
            {
                return Ok(Case::Rejected(input, "not a single-well potential".into()));
            }
            let length = v.interval().length();
            let bound = T::of(THETA_SQUARED) * T::PI() * T::PI() / (length * length);
            let observed = gap_value(v, &RobinPair::dirichlet())?;
            Ok(Case::Checked {
                input,
                observed: observed.to_f64_lossy(),
                bound: bound.to_f64_lossy(),
                note: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge("Dirichlet single-well bound Λ ≥ θ²π²/L²", cases))
}

/// `λ₁(tV₀)` along a grid of `t` with its first and second differences.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcavityProfile<T> {
    pub t: Vec<T>,
    pub lambda1: Vec<T>,
    pub first: Vec<T>,
    pub second: Vec<T>,
}

/// Lowest eigenvalue of `t·V₀` over `ts` (strictly increasing, at least three points).
pub fn concavity_profile<T: Real>(
    v0: &Potential<T>,
    bc: &RobinPair<T>,
    ts: &[T],
) -> Result<ConcavityProfile<T>> {
    if ts.len() < 3 || ts.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain(
            "need at least three strictly increasing t values".into(),
        ));
    }
    let (lo, _) = v0.range();
    let mass = v0.integral(v0.interval().left(), v0.interval().right());
    if lo < -v0.default_class_tolerance() || !(mass > T::of(1e-12) * (T::one() + v0.bound())) {
        return Err(Error::Precondition(
            "V₀ must be ≥ 0 and positive on a set of positive measure".into(),
        ));
    }
    let lambda1 = ts
        .par_iter()
        .map(|&t| eigenpairs_default(&v0.scaled(t), bc, 1).map(|s| s.eigenvalues[0]))
        .collect::<Result<Vec<T>>>()?;
    let first: Vec<T> = lambda1.windows(2).map(|w| w[1] - w[0]).collect();
    let second: Vec<T> = lambda1
        .windows(3)
        .map(|w| w[2] - T::two() * w[1] + w[0])
        .collect();
    Ok(ConcavityProfile {
        t: ts.to_vec(),
        lambda1,
        first,
        second,
    })
}

/// `t ↦ λ₁(tV₀)` increasing with second differences `≤ tol`; a note records
/// whether they are strictly negative.
pub fn verify_concavity<T: Real>(
    v0: &Potential<T>,
    bc: &RobinPair<T>,
    ts: &[T],
) -> Result<VerifierOutcome> {
    let profile = concavity_profile(v0, bc, ts)?;
    let mut out = VerifierOutcome::new("λ₁(tV₀) increasing and concave");
    for (i, d) in profile.first.iter().enumerate() {
        let input = format!("t {} -> {}", profile.t[i], profile.t[i + 1]);
        out.check(input, d.to_f64_lossy(), 0.0, *d > T::zero());
    }
    for (i, d) in profile.second.iter().enumerate() {
        out.at_most(
            format!("second difference at t = {}", profile.t[i + 1]),
            d.to_f64_lossy(),
            0.0,
            GAP_TOLERANCE,
        );
    }
    let strict = profile.second.iter().all(|d| *d < T::zero());
    out.note(if strict {
        "second differences strictly negative"
    } else {
        "some second differences are not negative"
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_potential_is_an_equality_case() {
        let out =
            verify_single_well_bound(&[(Potential::<f64>::constant(7.0), RobinParam::Finite(1.0))])
                .unwrap();
        assert!(out.pass);
        assert_eq!(out.cases, 1);
        assert!(out.notes[0].contains("consistent with the equality case"));
    }

    #[test]
    fn harmonic_well_is_strict() {
        let out = verify_single_well_bound(&[(
            Potential::<f64>::power_well(1.0, 2.0),
            RobinParam::neumann(),
        )])
        .unwrap();
        assert!(out.pass && out.notes.is_empty());
    }

    #[test]
    fn hypotheses_are_enforced() {
        let off = Potential::<f64>::step(-1.0, 0.5);
        let out = verify_single_well_bound(&[(off, RobinParam::neumann())]).unwrap();
        assert_eq!(out.cases, 0);
        assert_eq!(out.rejected.len(), 1);
        let negative =
            verify_single_well_bound(&[(Potential::<f64>::zero(), RobinParam::Finite(-1.0))])
                .unwrap();
        assert_eq!(negative.rejected.len(), 1);
        let concave = Potential::<f64>::power_well(-1.0, 2.0);
        let out = verify_convex_bound(&[(concave, RobinParam::neumann(), RobinParam::neumann())])
            .unwrap();
        assert_eq!(out.rejected.len(), 1);
    }

    #[test]
    fn free_alpha_monotonicity() {
        let alphas: Vec<RobinParam<f64>> = [-3.0, -1.0, 0.0, 1.0, 5.0, 20.0]
            .map(RobinParam::Finite)
            .to_vec();
        let out = verify_alpha_monotone(&[Potential::zero()], &alphas).unwrap();
        assert!(out.pass, "{:?}", out.violations);
        assert_eq!(out.cases, 5);
    }

    #[test]
    fn convex_equality_at_lowest_parameter() {
        let a = RobinParam::Finite(-1.0 / std::f64::consts::PI);
        let out = verify_convex_bound(&[(Potential::<f64>::zero(), a, a)]).unwrap();
        assert!(out.pass);
        assert!(out.notes[0].contains("consistent"));
    }

    #[test]
    fn concavity_precondition_and_profile() {
        let ts: Vec<f64> = (0..=10).map(|i| 0.5 * i as f64).collect();
        assert!(verify_concavity(&Potential::zero(), &RobinPair::neumann(), &ts).is_err());
        let out = verify_concavity(&Potential::step(1.0, 0.0), &RobinPair::neumann(), &ts).unwrap();
        assert!(out.pass, "{:?}", out.violations);
        assert_eq!(
            out.notes,
            vec!["second differences strictly negative".to_string()]
        );
    }

    #[test]
    fn outcome_json_has_no_nan() {
        let mut out = VerifierOutcome::new("x");
        out.at_least("nan case", f64::NAN, 1.0, 0.0);
        assert!(!out.pass);
        let text = out.to_json().to_string();
        assert!(!text.contains("null") && !text.contains("NaN"));
    }
}
