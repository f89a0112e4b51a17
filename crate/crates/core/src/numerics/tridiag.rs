//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! eigenvalues and inverse iteration for eigenvectors.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`.
#[derive(Clone, Debug)]
pub struct SymTridiag<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> SymTridiag<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Self {
        assert!(
            !diag.is_empty() && off.len() + 1 == diag.len(),
            "inconsistent tridiagonal sizes"
        );
        SymTridiag { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.dim();
        (0..n).fold((T::infinity(), T::neg_infinity()), |(lo, hi), i| {
            let left = if i > 0 {
                self.off[i - 1].abs()
            } else {
                T::zero()
            };
            let right = if i + 1 < n {
                self.off[i].abs()
            } else {
                T::zero()
            };
            (
                lo.min(self.diag[i] - left - right),
                hi.max(self.diag[i] + left + right),
            )
        })
    }

    /// Number of eigenvalues strictly below `x` (inertia of `A - x I`).
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut d = self.diag[0] - x;
        for i in 0..self.dim() {
            if i > 0 {
                d = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / d;
            }
            if d == T::zero() {
                d = -tiny;
            }
            if d < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// The `j`-th smallest eigenvalue (0-based) by bisection to working precision.
    pub fn eigenvalue(&self, j: usize) -> T {
        let (mut lo, mut hi) = self.gershgorin();
        let pad = T::of(1e-8) * (hi - lo).abs().max(T::one());
        lo = lo - pad;
        hi = hi + pad;
        loop {
            let mid = T::half() * (lo + hi);
            if mid <= lo || mid >= hi {
                return mid;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// The `k` smallest eigenvalues in increasing order.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<T> {
        (0..k.min(self.dim())).map(|j| self.eigenvalue(j)).collect()
    }

    /// Unit eigenvector for the eigenvalue estimate `lambda`, orthogonalized
    /// against `previous` (used when eigenvalues are close).
    pub fn eigenvector(&self, lambda: T, previous: &[Vec<T>]) -> Result<Vec<T>> {
        let n = self.dim();
        let (glo, ghi) = self.gershgorin();
        let norm = glo.abs().max(ghi.abs()).max(T::one());
        let lu = TridiagLu::factor(self, lambda, T::epsilon() * norm);
        // deterministic start vector with no special symmetry
        let mut x: Vec<T> = (0..n)
            .map(|i| T::one() + T::of(((i * 7919) % 101) as f64 / 1000.0))
            .collect();
        for _ in 0..4 {
            orthogonalize(&mut x, previous);
            normalize(&mut x)?;
            x = lu.solve(&x);
        }
        orthogonalize(&mut x, previous);
        normalize(&mut x)?;
        Ok(x)
    }

    /// `A x`.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc = acc + self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    acc = acc + self.off[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }
}

fn orthogonalize<T: Real>(x: &mut [T], basis: &[Vec<T>]) {
    for b in basis {
        let dot = x.iter().zip(b).fold(T::zero(), |acc, (&p, &q)| acc + p * q);
        x.iter_mut().zip(b).for_each(|(p, &q)| *p = *p - dot * q);
    }
}

fn normalize<T: Real>(x: &mut [T]) -> Result<()> {
    let scale = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if !(scale > T::zero()) || !scale.is_finite() {
        return Err(Error::Engine(
            "inverse iteration produced a degenerate vector".into(),
        ));
    }
    let norm = x
        .iter()
        .fold(T::zero(), |acc, &v| acc + (v / scale) * (v / scale))
        .sqrt()
        * scale;
    x.iter_mut().for_each(|v| *v = *v / norm);
    Ok(())
}

/// LU factorization with partial pivoting of `A - σI` (upper factor has two
/// superdiagonals).
struct TridiagLu<T> {
    u0: Vec<T>,
    u1: Vec<T>,
    u2: Vec<T>,
    mult: Vec<T>,
    swapped: Vec<bool>,
}

impl<T: Real> TridiagLu<T> {
    fn factor(a: &SymTridiag<T>, sigma: T, tiny: T) -> Self {
        let n = a.dim();
        let mut u0 = vec![T::zero(); n];
        let mut u1 = vec![T::zero(); n];
        let mut u2 = vec![T::zero(); n];
        let mut mult = vec![T::zero(); n];
        let mut swapped = vec![false; n];
        // current row i, entries at columns i, i+1, i+2
        let mut r0 = a.diag[0] - sigma;
        let mut r1 = if n > 1 { a.off[0] } else { T::zero() };
        let mut r2 = T::zero();
        for i in 0..n {
            if i + 1 < n {
                let below0 = a.off[i];
                let below1 = a.diag[i + 1] - sigma;
                let below2 = if i + 2 < n { a.off[i + 1] } else { T::zero() };
                if below0.abs() > r0.abs() {
                    swapped[i] = true;
                    let m = r0 / below0;
                    u0[i] = below0;
                    u1[i] = below1;
                    u2[i] = below2;
                    mult[i] = m;
                    r0 = r1 - m * below1;
                    r1 = r2 - m * below2;
                } else {
                    if r0 == T::zero() {
                        r0 = tiny;
                    }
                    let m = below0 / r0;
                    u0[i] = r0;
                    u1[i] = r1;
                    u2[i] = r2;
                    mult[i] = m;
                    r0 = below1 - m * r1;
                    r1 = below2 - m * r2;
                }
                r2 = T::zero();
            } else {
                u0[i] = if r0 == T::zero() { tiny } else { r0 };
            }
        }
        TridiagLu {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve(&self, b: &[T]) -> Vec<T> {
        let n = b.len();
        let mut y = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                y.swap(i, i + 1);
            }
            y[i + 1] = y[i + 1] - self.mult[i] * y[i];
        }
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            if i + 1 < n {
                acc = acc - self.u1[i] * x[i + 1];
            }
            if i + 2 < n {
                acc = acc - self.u2[i] * x[i + 2];
            }
            x[i] = acc / self.u0[i];
        }
        x
    }
}
