//! Exact eigenvalues of `H_m = -d²/dx² + m·1(0, π/2)` on `(-π/2, π/2)` with
//! the symmetric Robin parameter `α` on both ends.
//!
//! With `z = √t·π/2` the left solution normalized by `u(-π/2) = 1`,
//! `u'(-π/2) = α` reaches `x = 0` with `u = K(t)`, `u' = -S(t)`, where
//!
//! ```text
//! S(t) = √t sin z - α cos z,    K(t) = cos z + α sin z / √t.
//! ```
//!
//! Both are entire in `t` and real for `t < 0` (hyperbolic branch). The
//! right solution mirrors this with `t - m`, so eigenvalues are the zeros of
//! the matching Wronskian `G(t) = S(t)K(t-m) + S(t-m)K(t)`, equivalently the
//! solutions of `f_α(t) = -f_α(t-m)` with `f_α = -S/K`. Dirichlet uses its
//! own kernel `S = -cos z`, `K = sin z / √t`.
//!
//! Roots are isolated with an exact eigenvalue counting function (the Prüfer
//! angle propagated in closed form through both constant pieces) so that
//! nearly coincident roots are never merged, then polished on `G`.

use std::fmt;

use serde::Serialize;

use crate::bc::RobinParam;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Below this `|t|` the kernels switch to Taylor series.
const SERIES_CUTOFF: f64 = 1e-4;
/// Roots whose projective residual exceeds this are rejected.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

/// A point of the projective real line: a real number or the single point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectiveReal<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> ProjectiveReal<T> {
    pub fn finite(&self) -> Option<T> {
        match *self {
            ProjectiveReal::Finite(v) => Some(v),
            ProjectiveReal::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjectiveReal::Infinity)
    }
}

impl<T: fmt::Display> fmt::Display for ProjectiveReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveReal::Finite(v) => write!(f, "{v}"),
            ProjectiveReal::Infinity => f.write_str("∞"),
        }
    }
}

/// `cos z` and `sin z / √t` for `z = √t·π/2`, multiplied by `e^{-scale}`
/// (nonzero only on the hyperbolic branch, where both grow like `e^z`).
#[derive(Clone, Copy, Debug)]
struct Trig<T> {
    cosq: T,
    sincq: T,
    scale: T,
}

fn trig<T: Real>(t: T) -> Trig<T> {
    let half_pi = T::FRAC_PI_2();
    if t.abs() < T::of(SERIES_CUTOFF) {
        // cos z = Σ (-w)^n/(2n)!, sin z/√t = (π/2) Σ (-w)^n/(2n+1)!, w = tπ²/4
        let w = t * half_pi * half_pi;
        let (mut c, mut s) = (T::zero(), T::zero());
        let (mut term_c, mut term_s) = (T::one(), T::one());
        for n in 0..8 {
            c = c + term_c;
            s = s + term_s;
            let k = T::of_usize(2 * n + 1);
            term_c = -term_c * w / (k * (k + T::one()));
            term_s = -term_s * w / ((k + T::one()) * (k + T::two()));
        }
        return Trig {
            cosq: c,
            sincq: half_pi * s,
            scale: T::zero(),
        };
    }
    if t > T::zero() {
        let r = t.sqrt();
        let z = r * half_pi;
        Trig {
            cosq: z.cos(),
            sincq: z.sin() / r,
            scale: T::zero(),
        }
    } else {
        let r = (-t).sqrt();
        let z = r * half_pi;
        let e = (-(z + z)).exp();
        Trig {
            cosq: T::half() * (T::one() + e),
            sincq: T::half() * (T::one() - e) / r,
            scale: z,
        }
    }
}

/// `φ₃(t) = (x - sin x)/x³` with `x = √t·π`, times `e^{-2·scale}` of [`trig`].
fn phi3_scaled<T: Real>(t: T) -> T {
    let x2 = t * T::PI() * T::PI();
    let series = |x2: T| {
        let mut acc = T::zero();
        let mut term = T::one() / T::of(6.0);
        for n in 0..14 {
            acc = acc + term;
            let k = T::of_usize(2 * n + 4);
            term = -term * x2 / (k * (k + T::one()));
        }
        acc
    };
    if x2.abs() < T::one() {
        let s = series(x2);
        if t.abs() < T::of(SERIES_CUTOFF) || t >= T::zero() {
            s
        } else {
            s * (-T::PI() * (-t).sqrt()).exp()
        }
    } else if t > T::zero() {
        let x = x2.sqrt();
        (x - x.sin()) / (x2 * x)
    } else {
        // (sinh y - y)/y³ · e^{-y}
        let y = (-x2).sqrt();
        let e = (-(y + y)).exp();
        (T::half() * (T::one() - e) - y * (-y).exp()) / (y * y * y)
    }
}

/// The kernel pair `(S, K)` for one Robin parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrigKernel<T> {
    pub alpha: RobinParam<T>,
}

/// `(S, K)` at one point, scaled by the positive factor `e^{-scale}`.
#[derive(Clone, Copy, Debug)]
pub struct KernelPair<T> {
    pub s: T,
    pub k: T,
    pub scale: T,
}

impl<T: Real> KernelPair<T> {
    fn norm(&self) -> T {
        self.s.hypot(self.k)
    }
}

impl<T: Real> TrigKernel<T> {
    pub fn new(alpha: RobinParam<T>) -> Self {
        TrigKernel { alpha }
    }

    /// Scaled `(S(t), K(t))`; the common factor does not affect any ratio or sign.
    pub fn pair(&self, t: T) -> KernelPair<T> {
        let q = trig(t);
        match self.alpha {
            RobinParam::Finite(a) => KernelPair {
                s: t * q.sincq - a * q.cosq,
                k: q.cosq + a * q.sincq,
                scale: q.scale,
            },
            RobinParam::Dirichlet => KernelPair {
                s: -q.cosq,
                k: q.sincq,
                scale: q.scale,
            },
        }
    }

    /// `S(t)`, unscaled.
    pub fn s(&self, t: T) -> T {
        let p = self.pair(t);
        p.s * p.scale.exp()
    }

    /// `K(t)`, unscaled; `C(t) = √t·K(t)`.
    pub fn k(&self, t: T) -> T {
        let p = self.pair(t);
        p.k * p.scale.exp()
    }

    /// `C(t)² = t·K(t)²`, real for every real `t`.
    pub fn c_squared(&self, t: T) -> T {
        let k = self.k(t);
        t * k * k
    }

    /// `|C² + S² - (t + α²)|` relative to the largest of the three magnitudes.
    pub fn identity_residual(&self, t: T) -> Option<T> {
        let a = self.alpha.value()?;
        let s = self.s(t);
        let c2 = self.c_squared(t);
        let rhs = t + a * a;
        let scale = rhs
            .abs()
            .max(s * s)
            .max(c2.abs())
            .max(T::min_positive_value());
        Some((c2 + s * s - rhs).abs() / scale)
    }

    /// `P(t)·e^{-2·scale}` with `f'(t) = -P(t)/(4K(t)²)`.
    fn p_scaled(&self, t: T) -> T {
        let q = trig(t);
        let pi = T::PI();
        let phi3 = phi3_scaled(t);
        match self.alpha {
            RobinParam::Finite(a) => {
                let four = T::of(4.0);
                four * a * q.sincq * q.sincq
                    + a * a * pi * pi * pi * phi3
                    + pi * (-(q.scale + q.scale)).exp()
                    + T::two() * q.sincq * q.cosq
            }
            RobinParam::Dirichlet => pi * pi * pi * phi3,
        }
    }
}

/// `f_α(t) = -S(t)/K(t)`, with the point at infinity at zeros of `K`.
pub fn f_alpha<T: Real>(t: T, alpha: RobinParam<T>) -> ProjectiveReal<T> {
    let p = TrigKernel::new(alpha).pair(t);
    if p.k == T::zero() {
        ProjectiveReal::Infinity
    } else {
        ProjectiveReal::Finite(-p.s / p.k)
    }
}

/// `f_α'(t)`; errors at poles of `f_α`.
pub fn f_alpha_prime<T: Real>(t: T, alpha: RobinParam<T>) -> Result<T> {
    let kernel = TrigKernel::new(alpha);
    let pair = kernel.pair(t);
    if pair.k.abs() <= T::epsilon() * pair.norm() {
        return Err(Error::Pole {
            t: t.to_f64_lossy(),
        });
    }
    Ok(-kernel.p_scaled(t) / (T::of(4.0) * pair.k * pair.k))
}

/// Matching Wronskian `G(t) = S(t)K(t-m) + S(t-m)K(t)` up to a positive factor.
pub fn matching_wronskian<T: Real>(t: T, m: T, alpha: RobinParam<T>) -> T {
    let kernel = TrigKernel::new(alpha);
    let l = kernel.pair(t);
    let r = kernel.pair(t - m);
    l.s * r.k + r.s * l.k
}

/// `|G(t)|` normalized by the kernel vectors on both sides; zero exactly at eigenvalues.
pub fn projective_residual<T: Real>(t: T, m: T, alpha: RobinParam<T>) -> T {
    let kernel = TrigKernel::new(alpha);
    let l = kernel.pair(t);
    let r = kernel.pair(t - m);
    (l.s * r.k + r.s * l.k).abs() / (l.norm() * r.norm())
}

/// `(cos(ωs), sin(ωs)/ω)` for `ω² = mu`, hyperbolic for `mu < 0`.
pub(crate) fn fundamental<T: Real>(mu: T, s: T) -> (T, T) {
    if mu > T::zero() {
        let w = mu.sqrt();
        ((w * s).cos(), (w * s).sin() / w)
    } else if mu < T::zero() {
        let k = (-mu).sqrt();
        (
            (k * s).cosh(),
            if k * s == T::zero() {
                s
            } else {
                (k * s).sinh() / k
            },
        )
    } else {
        (T::one(), s)
    }
}

/// Number of eigenvalues strictly below `lambda` for a piecewise-constant
/// potential given as `(length, value)` pieces from left to right.
///
/// The state is the Prüfer angle reduced to `[0, π)` plus the number of
/// zeros of `u` passed so far; each piece is crossed in closed form.
pub fn count_below_piecewise<T: Real>(
    pieces: &[(T, T)],
    alpha: RobinParam<T>,
    beta: RobinParam<T>,
    lambda: T,
) -> usize {
    let pi = T::PI();
    let mut phi = match alpha {
        RobinParam::Finite(a) => T::one().atan2(a),
        RobinParam::Dirichlet => T::zero(),
    };
    let mut zeros: usize = 0;
    for &(len, v) in pieces {
        let mu = lambda - v;
        if mu > T::zero() {
            let w = mu.sqrt();
            // modified angle with u = R sin ψ, u' = R ω cos ψ
            let psi0 = (w * phi.sin()).atan2(phi.cos());
            let psi0 = if psi0 < T::zero() { psi0 + pi } else { psi0 };
            let psi = psi0 + w * len;
            let turns = (psi / pi).floor();
            zeros += turns.to_usize().unwrap_or(0);
            let r = psi - turns * pi;
            phi = r.sin().atan2(w * r.cos());
            if phi < T::zero() {
                phi = phi + pi;
            }
        } else {
            let (u0, du0) = (phi.sin(), phi.cos());
            let (u, du) = if mu < T::zero() {
                let k = (-mu).sqrt();
                let e = (-T::two() * k * len).exp();
                let (ch, sh) = (T::half() * (T::one() + e), T::half() * (T::one() - e));
                (u0 * ch + du0 * sh / k, u0 * k * sh + du0 * ch)
            } else {
                (u0 + du0 * len, du0)
            };
            if u0 != T::zero() && (u == T::zero() || (u > T::zero()) != (u0 > T::zero())) {
                zeros += 1;
            }
            phi = u.atan2(du);
            if phi < T::zero() {
                phi = phi + pi;
            }
            if phi >= pi {
                phi = phi - pi;
            }
        }
    }
    let theta_b = match beta {
        RobinParam::Finite(b) => T::one().atan2(-b),
        RobinParam::Dirichlet => pi,
    };
    zeros + usize::from(phi > theta_b)
}

/// Eigenvalue count below `t` for the step operator on `(-π/2, π/2)`.
pub fn count_below<T: Real>(m: T, alpha: RobinParam<T>, t: T) -> usize {
    let half = T::FRAC_PI_2();
    count_below_piecewise(&[(half, T::zero()), (half, m)], alpha, alpha, t)
}

/// Roots of the step problem with metadata.
#[derive(Clone, Debug, Serialize)]
pub struct StepSpectrum<T> {
    pub m: T,
    #[serde(skip)]
    pub alpha: RobinParam<T>,
    /// `t₁ < t₂ < … < t_k`.
    pub roots: Vec<T>,
    /// `λ₃(α) - λ₁(α)` of the free problem.
    pub m0: T,
    /// Projective residual of each root.
    pub residuals: Vec<T>,
}

impl<T: Real> StepSpectrum<T> {
    pub fn gap(&self) -> T {
        self.roots[1] - self.roots[0]
    }
}

fn lower_bound<T: Real>(alpha: RobinParam<T>) -> T {
    // λ₁(α) ≥ -(a coth(aπ/2))² for α = -a < 0; the step only raises it.
    let a = match alpha {
        RobinParam::Finite(a) if a < T::zero() => -a,
        _ => T::zero(),
    };
    let k = if a > T::zero() {
        a / (a * T::FRAC_PI_2()).tanh()
    } else {
        T::FRAC_2_PI()
    };
    -(k * k) - T::one()
}

/// Narrows `[lo, hi]` until it holds exactly the `j`-th eigenvalue.
fn isolate<T: Real>(m: T, alpha: RobinParam<T>, j: usize, mut lo: T, mut hi: T) -> (T, T) {
    let mut count_lo = count_below(m, alpha, lo);
    let mut count_hi = count_below(m, alpha, hi);
    while !(count_lo + 1 == j && count_hi == j) {
        let mid = T::half() * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let c = count_below(m, alpha, mid);
        if c >= j {
            hi = mid;
            count_hi = c;
        } else {
            lo = mid;
            count_lo = c;
        }
    }
    (lo, hi)
}

fn polish<T: Real>(m: T, alpha: RobinParam<T>, j: usize, lo: T, hi: T) -> T {
    let g = |t: T| matching_wronskian(t, m, alpha);
    let (mut a, mut b) = (lo, hi);
    let (mut ga, gb) = (g(a), g(b));
    if ga == T::zero() {
        return a;
    }
    if gb == T::zero() {
        return b;
    }
    if (ga > T::zero()) == (gb > T::zero()) {
        // roundoff hid the sign change: fall back to the count alone
        let (a, b) = isolate_to_precision(m, alpha, j, a, b);
        return T::half() * (a + b);
    }
    let mut gb = gb;
    loop {
        let mid = T::half() * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if gm == T::zero() {
            return mid;
        }
        if (gm > T::zero()) == (ga > T::zero()) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
            gb = gm;
        }
    }
    // one secant step, kept only if it stays inside the final bracket
    let secant = a - ga * (b - a) / (gb - ga);
    if secant > a && secant < b {
        secant
    } else {
        T::half() * (a + b)
    }
}

/// True when `G` changes sign within a few ulps of `t`.
fn sign_certified<T: Real>(t: T, m: T, alpha: RobinParam<T>) -> bool {
    let delta = T::of(64.0) * T::epsilon() * t.abs().max(T::one());
    let lo = matching_wronskian(t - delta, m, alpha);
    let hi = matching_wronskian(t + delta, m, alpha);
    lo == T::zero() || hi == T::zero() || (lo > T::zero()) != (hi > T::zero())
}

fn isolate_to_precision<T: Real>(
    m: T,
    alpha: RobinParam<T>,
    j: usize,
    mut lo: T,
    mut hi: T,
) -> (T, T) {
    loop {
        let mid = T::half() * (lo + hi);
        if mid <= lo || mid >= hi {
            return (lo, hi);
        }
        if count_below(m, alpha, mid) >= j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

fn roots<T: Real>(m: T, alpha: RobinParam<T>, k: usize) -> Result<(Vec<T>, Vec<T>)> {
    let kf = T::of_usize(k);
    let ceiling = (kf * kf + m.max(T::zero())).min(T::of(4.0) * kf * kf) + T::one();
    let mut lo = lower_bound(alpha) + m.min(T::zero());
    let mut guard = 0;
    while count_below(m, alpha, lo) > 0 {
        lo = lo * T::two() - T::one();
        guard += 1;
        if guard > 60 {
            return Err(Error::Engine("no lower bound for the step spectrum".into()));
        }
    }
    let found = count_below(m, alpha, ceiling);
    if found < k {
        return Err(Error::SearchExhausted {
            found,
            wanted: k,
            ceiling: ceiling.to_f64_lossy(),
        });
    }
    let mut out = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    let mut left = lo;
    for j in 1..=k {
        let (a, b) = isolate(m, alpha, j, left, ceiling);
        let t = polish(m, alpha, j, a, b);
        let res = projective_residual(t, m, alpha);
        if !(res <= T::of(RESIDUAL_TOLERANCE) || sign_certified(t, m, alpha)) {
            return Err(Error::Engine(format!(
                "root t_{j} = {t} has residual {res}"
            )));
        }
        out.push(t);
        residuals.push(res);
        left = a;
    }
    Ok((out, residuals))
}

/// Eigenvalues `λ₁ < … < λ_k` of the free problem (`m = 0`) on length π.
pub fn free_eigenvalues<T: Real>(alpha: RobinParam<T>, k: usize) -> Result<Vec<T>> {
    if k == 0 {
        return Err(Error::Domain("need at least one eigenvalue".into()));
    }
    Ok(roots(T::zero(), alpha, k)?.0)
}

/// `m₀ = λ₃(α) - λ₁(α)`.
pub fn m0<T: Real>(alpha: RobinParam<T>) -> Result<T> {
    let free = free_eigenvalues(alpha, 3)?;
    Ok(free[2] - free[0])
}

/// The `k` smallest eigenvalues of `H_m` with symmetric parameter `α`.
pub fn step_eigenvalues<T: Real>(m: T, alpha: RobinParam<T>, k: usize) -> Result<StepSpectrum<T>> {
    if k == 0 {
        return Err(Error::Domain("need at least one eigenvalue".into()));
    }
    if !(m >= T::zero()) || !m.is_finite() {
        return Err(Error::Domain(format!(
            "step height must be finite and nonnegative, got {m}"
        )));
    }
    if let RobinParam::Finite(a) = alpha {
        if !a.is_finite() {
            return Err(Error::Domain(format!(
                "Robin parameter must be finite or Dirichlet, got {a}"
            )));
        }
    }
    let (roots, residuals) = roots(m, alpha, k)?;
    Ok(StepSpectrum {
        m,
        alpha,
        roots,
        m0: m0(alpha)?,
        residuals,
    })
}

/// `t₂(m) - t₁(m)`.
pub fn step_gap<T: Real>(m: T, alpha: RobinParam<T>) -> Result<T> {
    Ok(step_eigenvalues(m, alpha, 2)?.gap())
}

/// `t_j'(m)` from implicit differentiation of `f_α(t) = -f_α(t - m)`:
/// `t' = f'(t-m) / (f'(t-m) + f'(t))`, written without the poles of `f_α`.
pub fn root_slope<T: Real>(t: T, m: T, alpha: RobinParam<T>) -> Result<T> {
    let kernel = TrigKernel::new(alpha);
    let left = kernel.pair(t);
    let right = kernel.pair(t - m);
    let num = kernel.p_scaled(t - m) * left.k * left.k;
    let den = num + kernel.p_scaled(t) * right.k * right.k;
    if den == T::zero() {
        return Err(Error::Pole {
            t: t.to_f64_lossy(),
        });
    }
    Ok(num / den)
}

/// `(dt₁/dm, dt₂/dm)` at `m ∈ (0, m₀)` for finite `α ≥ 0`.
pub fn slope_check<T: Real>(m: T, alpha: RobinParam<T>) -> Result<(T, T)> {
    let a = match alpha {
        RobinParam::Finite(a) if a >= T::zero() => a,
        _ => {
            return Err(Error::Domain(format!(
                "slope check needs a finite α ≥ 0, got {alpha}"
            )))
        }
    };
    let alpha = RobinParam::Finite(a);
    let threshold = m0(alpha)?;
    if !(m > T::zero() && m < threshold) {
        return Err(Error::Domain(format!(
            "m = {m} outside (0, m₀) with m₀ = {threshold}"
        )));
    }
    let spec = step_eigenvalues(m, alpha, 2)?;
    Ok((
        root_slope(spec.roots[0], m, alpha)?,
        root_slope(spec.roots[1], m, alpha)?,
    ))
}

/// Eigenfunction of `H_m` for the root `t`, unnormalized, at the points `xs`
/// of `[-π/2, π/2]`.
pub fn step_eigenfunction<T: Real>(t: T, m: T, alpha: RobinParam<T>, xs: &[T]) -> Vec<T> {
    let half = T::FRAC_PI_2();
    let kernel = TrigKernel::new(alpha);
    let left = kernel.pair(t);
    let right = kernel.pair(t - m);
    // initial data (u, u') at -π/2 and, mirrored, at π/2
    let (u0, du0) = match alpha {
        RobinParam::Finite(a) => (T::one(), a),
        RobinParam::Dirichlet => (T::zero(), T::one()),
    };
    // u_L(0) = K(t), u_L'(0) = -S(t); u_R(0) = K(t-m), u_R'(0) = S(t-m), in scaled units
    let ratio = if right.k.abs() >= right.s.abs() {
        left.k / right.k
    } else {
        -left.s / right.s
    } * (left.scale - right.scale).exp();
    xs.iter()
        .map(|&x| {
            if x < T::zero() {
                let (c, s) = fundamental(t, x + half);
                u0 * c + du0 * s
            } else {
                let (c, s) = fundamental(t - m, half - x);
                ratio * (u0 * c + du0 * s)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    const D: RobinParam<f64> = RobinParam::Dirichlet;

    fn fin(a: f64) -> RobinParam<f64> {
        RobinParam::Finite(a)
    }

    #[test]
    fn f_alpha_examples() {
        assert_relative_eq!(
            f_alpha(0.0, fin(1.0)).finite().unwrap(),
            2.0 / (PI + 2.0),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            f_alpha(0.25, fin(0.0)).finite().unwrap(),
            -0.5,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            f_alpha(-1.0, fin(0.0)).finite().unwrap(),
            (PI / 2.0).tanh(),
            epsilon = 1e-15
        );
        assert!(f_alpha(1.0, D).finite().unwrap().abs() < 1e-15);
        assert_relative_eq!(f_alpha(0.0, D).finite().unwrap(), 2.0 / PI, epsilon = 1e-15);
        assert!(f_alpha(1.0, fin(0.0))
            .finite()
            .is_none_or(|v| v.abs() > 1e15));
    }

    #[test]
    fn f_alpha_is_continuous_across_series_cutoff() {
        for alpha in [fin(0.0), fin(2.0), D] {
            for t in [SERIES_CUTOFF, -SERIES_CUTOFF] {
                let inner = f_alpha(t * 0.999_999, alpha).finite().unwrap();
                let outer = f_alpha(t * 1.000_001, alpha).finite().unwrap();
                assert!((inner - outer).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn f_prime_at_zero() {
        assert_relative_eq!(
            f_alpha_prime(0.0, fin(0.0)).unwrap(),
            -PI / 2.0,
            epsilon = 1e-14
        );
        for a in [0.5, 1.0, 5.0] {
            let closed =
                -PI * (PI * PI * a * a + 6.0 * PI * a + 12.0) / (6.0 * (PI * a + 2.0).powi(2));
            assert_relative_eq!(
                f_alpha_prime(0.0, fin(a)).unwrap(),
                closed,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn f_prime_matches_finite_differences() {
        let h = 1e-5;
        for alpha in [fin(0.0), fin(1.0), fin(5.0), fin(-0.7), D] {
            for t in [-4.0, -1.0, 0.25, 0.3, 2.5, 7.3] {
                let f = |s: f64| f_alpha(s, alpha).finite().unwrap();
                let fd = (f(t + h) - f(t - h)) / (2.0 * h);
                let exact = f_alpha_prime(t, alpha).unwrap();
                assert_relative_eq!(exact, fd, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn f_prime_is_negative_for_nonnegative_alpha() {
        for a in [0.0, 1.0, 5.0] {
            for t in [-4.0, -1.0, 0.3, 2.5] {
                assert!(f_alpha_prime(t, fin(a)).unwrap() < 0.0);
            }
        }
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(
            f_alpha_prime(1.0, fin(0.0)),
            Err(Error::Pole { .. })
        ));
        assert!(f_alpha(1.0, fin(0.0))
            .finite()
            .is_none_or(|v| v.abs() > 1e15));
    }

    #[test]
    fn kernel_identity() {
        for a in [0.0, 0.5, 1.0, 5.0, 20.0] {
            let kernel = TrigKernel::new(fin(a));
            for i in 0..=500 {
                let t = -50.0 + 250.0 * i as f64 / 500.0;
                assert!(
                    kernel.identity_residual(t).unwrap() < 1e-12,
                    "t = {t}, α = {a}"
                );
            }
        }
    }

    #[test]
    fn free_spectra() {
        let neumann = step_eigenvalues(0.0, fin(0.0), 4).unwrap();
        for (got, want) in neumann.roots.iter().zip([0.0, 1.0, 4.0, 9.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        let dirichlet = step_eigenvalues(0.0, D, 4).unwrap();
        for (got, want) in dirichlet.roots.iter().zip([1.0, 4.0, 9.0, 16.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        assert_relative_eq!(neumann.m0, 4.0, epsilon = 1e-12);
        assert_relative_eq!(dirichlet.m0, 8.0, epsilon = 1e-12);
    }

    #[test]
    fn free_roots_alternate_between_s_and_k() {
        let alpha = fin(1.3);
        let kernel = TrigKernel::new(alpha);
        let free = free_eigenvalues(alpha, 4).unwrap();
        for (j, t) in free.iter().enumerate() {
            let v = if j % 2 == 0 {
                kernel.s(*t)
            } else {
                kernel.k(*t)
            };
            assert!(v.abs() < 1e-12, "j = {j}: {v}");
        }
    }

    #[test]
    fn nearly_degenerate_pair_is_resolved() {
        // strongly attractive ends: λ₁, λ₂ both near -36 and about 1e-6 apart
        let spec = step_eigenvalues(0.0, fin(-6.0), 3).unwrap();
        let gap = spec.gap();
        assert!(gap > 0.0 && gap < 1e-4, "gap {gap}");
        assert!(spec.roots[2] > 0.0);
    }

    #[test]
    fn step_four_hits_lambda_three() {
        let spec = step_eigenvalues(4.0, fin(0.0), 3).unwrap();
        assert!((spec.roots[1] - 4.0).abs() < 1e-10);
    }

    #[test]
    fn infinite_well_limit() {
        // independent bracketing of G at α = 0, m = 10⁴
        let spec = step_eigenvalues(1e4, fin(0.0), 2).unwrap();
        assert!((spec.roots[0] - 0.987_387_960_486_405_6).abs() < 1e-9);
        assert!((spec.roots[1] - 8.886_476_836_166_382).abs() < 1e-9);
        // the approach to λ₂(0) = 1, λ₄(0) = 9 is O(m^{-1/2})
        let deep = step_eigenvalues(1e8, fin(0.0), 2).unwrap();
        assert!((deep.roots[0] - 1.0).abs() < 1e-3);
        assert!((deep.roots[1] - 9.0).abs() < 1e-2);
    }

    #[test]
    fn count_matches_roots() {
        for alpha in [fin(-2.0), fin(0.0), fin(3.0), D] {
            let spec = step_eigenvalues(2.5, alpha, 5).unwrap();
            for (j, t) in spec.roots.iter().enumerate() {
                assert_eq!(count_below(2.5, alpha, t - 1e-7), j);
                assert_eq!(count_below(2.5, alpha, t + 1e-7), j + 1);
            }
        }
    }

    #[test]
    fn step_gap_examples() {
        assert_relative_eq!(step_gap(0.0, fin(0.0)).unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(step_gap(0.0, D).unwrap(), 3.0, epsilon = 1e-12);
        let g2 = step_gap(2.0, fin(0.0)).unwrap();
        assert!(g2 > 1.0);
        assert!(step_gap(2.01, fin(0.0)).unwrap() > g2);
    }

    #[test]
    fn slopes_match_finite_differences() {
        let h = 1e-4;
        for a in [0.0, 1.0, 5.0] {
            let alpha = fin(a);
            for m in [0.3, 1.0, 2.2] {
                let (s1, s2) = slope_check(m, alpha).unwrap();
                let up = step_eigenvalues(m + h, alpha, 2).unwrap().roots;
                let down = step_eigenvalues(m - h, alpha, 2).unwrap().roots;
                assert!((s1 - (up[0] - down[0]) / (2.0 * h)).abs() < 1e-6);
                assert!((s2 - (up[1] - down[1]) / (2.0 * h)).abs() < 1e-6);
                assert!(s1 <= 0.5 && s2 > 0.5);
            }
        }
    }

    #[test]
    fn slope_check_domain() {
        assert!(slope_check(0.0, fin(0.0)).is_err());
        assert!(slope_check(4.5, fin(0.0)).is_err());
        assert!(slope_check(1.0, D).is_err());
        assert!(slope_check(1.0, fin(-1.0)).is_err());
    }

    #[test]
    fn eigenfunction_solves_matching_problem() {
        let (m, alpha) = (3.0, fin(0.7));
        let spec = step_eigenvalues(m, alpha, 2).unwrap();
        let eps = 1e-7;
        for &t in &spec.roots {
            let u = step_eigenfunction(t, m, alpha, &[-eps, 0.0, eps]);
            assert!((u[0] - u[1]).abs() < 1e-6 * u[1].abs().max(1.0));
            let du_left = step_eigenfunction(t, m, alpha, &[-2.0 * eps, -eps]);
            let du_right = step_eigenfunction(t, m, alpha, &[eps, 2.0 * eps]);
            let slope_l = (du_left[1] - du_left[0]) / eps;
            let slope_r = (du_right[1] - du_right[0]) / eps;
            assert!((slope_l - slope_r).abs() < 1e-5 * slope_l.abs().max(1.0));
        }
    }
}
