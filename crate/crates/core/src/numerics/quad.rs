//! Quadrature on uniform grids and on short intervals.

use crate::scalar::Real;

/// Composite trapezoid rule for samples spaced `h` apart.
pub fn trapezoid<T: Real>(values: &[T], h: T) -> T {
    match values.len() {
        0 | 1 => T::zero(),
        n => {
            let inner = values[1..n - 1].iter().fold(T::zero(), |acc, &v| acc + v);
            h * (inner + T::half() * (values[0] + values[n - 1]))
        }
    }
}

/// Running trapezoid integral `∫_{x_0}^{x_i}`, same length as `values`.
pub fn cumulative_trapezoid<T: Real>(values: &[T], h: T) -> Vec<T> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = T::zero();
    for (i, &v) in values.iter().enumerate() {
        if i > 0 {
            acc = acc + T::half() * h * (values[i - 1] + v);
        }
        out.push(acc);
    }
    out
}

/// Composite Simpson rule; an odd number of cells gets a 3/8 rule on the
/// last three cells.
pub fn simpson<T: Real>(values: &[T], h: T) -> T {
    let n = values.len();
    if n < 3 {
        return trapezoid(values, h);
    }
    let cells = n - 1;
    let third = T::one() / T::of(3.0);
    let simpson_range = |vals: &[T]| -> T {
        let m = vals.len() - 1;
        let mut acc = vals[0] + vals[m];
        for (i, &v) in vals.iter().enumerate().take(m).skip(1) {
            acc = acc
                + if i % 2 == 1 {
                    T::of(4.0) * v
                } else {
                    T::two() * v
                };
        }
        acc * h * third
    };
    if cells.is_multiple_of(2) {
        simpson_range(values)
    } else if cells == 3 {
        T::of(0.375) * h * (values[0] + T::of(3.0) * (values[1] + values[2]) + values[3])
    } else {
        let head = simpson_range(&values[..n - 3]);
        let tail = &values[n - 4..];
        head + T::of(0.375) * h * (tail[0] + T::of(3.0) * (tail[1] + tail[2]) + tail[3])
    }
}

const GL5_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

/// Five-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss_legendre5<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T) -> T {
    let mid = T::half() * (a + b);
    let half = T::half() * (b - a);
    GL5_NODES
        .iter()
        .zip(GL5_WEIGHTS.iter())
        .fold(T::zero(), |acc, (&x, &w)| {
            acc + T::of(w) * f(mid + half * T::of(x))
        })
        * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_on_cubics() {
        for cells in [2usize, 3, 5, 8, 11] {
            let h = 1.0 / cells as f64;
            let v: Vec<f64> = (0..=cells).map(|i| (i as f64 * h).powi(3)).collect();
            assert!((simpson(&v, h) - 0.25).abs() < 1e-14, "cells = {cells}");
        }
    }

    #[test]
    fn trapezoid_and_cumulative_agree() {
        let h = 0.1;
        let v: Vec<f64> = (0..=10).map(|i| (i as f64 * h).sin()).collect();
        let c = cumulative_trapezoid(&v, h);
        assert!((c[10] - trapezoid(&v, h)).abs() < 1e-15);
        assert_eq!(c[0], 0.0);
    }

    #[test]
    fn gauss_legendre_integrates_degree_nine() {
        let got = gauss_legendre5(|x: f64| x.powi(9) + x.powi(4), -1.0, 2.0);
        let exact = (2f64.powi(10) - 1.0) / 10.0 + (2f64.powi(5) + 1.0) / 5.0;
        assert!((got - exact).abs() < 1e-11);
    }
}
