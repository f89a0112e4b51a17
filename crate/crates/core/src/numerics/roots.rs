//! Bracketing root finders for continuous scalar functions.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Bisection on a sign change of `f` in `[a, b]`, stopping when the bracket
/// is narrower than `tol` or stops shrinking. Returns the bracket midpoint.
pub fn bisect<T: Real, F: FnMut(T) -> T>(mut f: F, mut a: T, mut b: T, tol: T) -> Result<T> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return Err(Error::Domain(format!("no sign change on [{a}, {b}]")));
    }
    for _ in 0..400 {
        let mid = T::half() * (a + b);
        if (b - a).abs() <= tol || mid == a || mid == b {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm > T::zero()) == (fa > T::zero()) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(T::half() * (a + b))
}

/// Bisection on a monotone predicate: returns the smallest `x` in `[a, b]`
/// (to within `tol`) where `pred` holds, assuming `pred(b)` and not `pred(a)`.
pub fn bisect_predicate<T: Real, P: FnMut(T) -> bool>(
    mut pred: P,
    mut a: T,
    mut b: T,
    tol: T,
) -> T {
    while b - a > tol {
        let mid = T::half() * (a + b);
        if mid == a || mid == b {
            break;
        }
        if pred(mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    b
}

/// Linear interpolation of the zero of the segment through `(x0, y0)` and `(x1, y1)`.
#[inline]
pub fn linear_zero<T: Real>(x0: T, y0: T, x1: T, y1: T) -> T {
    if y1 == y0 {
        T::half() * (x0 + x1)
    } else {
        x0 - y0 * (x1 - x0) / (y1 - y0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(bisect(|x: f64| x * x + 1.0, 0.0, 2.0, 1e-14).is_err());
    }

    #[test]
    fn predicate_bisection() {
        let x = bisect_predicate(|x: f64| x >= 0.3, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-12);
    }

    #[test]
    fn linear_zero_of_segment() {
        assert_eq!(linear_zero(0.0, -1.0, 1.0, 1.0), 0.5);
    }
}
