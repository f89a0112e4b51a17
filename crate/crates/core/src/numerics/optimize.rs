//! Derivative-free one-dimensional minimization.

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum<T> {
    pub x: T,
    pub value: T,
    pub evaluations: usize,
}

/// Golden-section search for a minimum of `f` on `[a, b]`, until the bracket
/// is narrower than `tol`. Assumes `f` is unimodal on the interval.
pub fn golden_section<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    mut a: T,
    mut b: T,
    tol: T,
) -> Minimum<T> {
    let inv_phi = (T::of(5.0).sqrt() - T::one()) * T::half();
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evaluations = 2;
    while (b - a).abs() > tol && evaluations < 400 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        evaluations += 1;
    }
    if fc <= fd {
        Minimum {
            x: c,
            value: fc,
            evaluations,
        }
    } else {
        Minimum {
            x: d,
            value: fd,
            evaluations,
        }
    }
}

/// Whether samples decrease then increase (ties allowed up to `tol`).
pub fn is_unimodal<T: Real>(values: &[T], tol: T) -> bool {
    let mut rising = false;
    for w in values.windows(2) {
        if w[1] > w[0] + tol {
            rising = true;
        } else if rising && w[1] < w[0] - tol {
            return false;
        }
    }
    true
}
