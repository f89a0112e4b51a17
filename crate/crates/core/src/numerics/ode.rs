//! Adaptive Dormand-Prince 5(4) integration of scalar ODEs `y' = f(x, y)`.

use crate::error::{Error, Result};
use crate::scalar::Real;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights (first-same-as-last row of `A`).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Clone, Copy, Debug)]
pub struct Tolerance<T> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance {
            rtol: T::of(1e-12),
            atol: T::of(1e-12),
            max_steps: 200_000,
        }
    }
}

/// Integrates from `x0` to `x1` (either direction) and returns `y(x1)`.
pub fn dopri5<T: Real, F: Fn(T, T) -> T>(
    f: F,
    x0: T,
    y0: T,
    x1: T,
    tol: &Tolerance<T>,
) -> Result<T> {
    let span = x1 - x0;
    if span == T::zero() {
        return Ok(y0);
    }
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut h = span.abs() * T::of(1e-2);
    let min_h = span.abs() * T::of(1e-14);
    let mut k = [T::zero(); 7];
    k[0] = f(x, y);
    let mut steps = 0;
    while (x1 - x) * dir > T::zero() {
        steps += 1;
        if steps > tol.max_steps {
            return Err(Error::Engine(format!("ODE step limit reached at x = {x}")));
        }
        h = h.min((x1 - x).abs());
        let hs = h * dir;
        for s in 1..7 {
            let incr = (0..s).fold(T::zero(), |acc, j| acc + T::of(A[s][j]) * k[j]);
            k[s] = f(x + T::of(C[s]) * hs, y + hs * incr);
        }
        let y5 = y + hs * (0..7).fold(T::zero(), |acc, j| acc + T::of(B5[j]) * k[j]);
        let y4 = y + hs * (0..7).fold(T::zero(), |acc, j| acc + T::of(B4[j]) * k[j]);
        let scale = tol.atol + tol.rtol * y.abs().max(y5.abs());
        let err = (y5 - y4).abs() / scale;
        if !err.is_finite() {
            return Err(Error::Engine(format!("non-finite ODE state near x = {x}")));
        }
        if err <= T::one() {
            x = if (x1 - (x + hs)) * dir <= T::zero() {
                x1
            } else {
                x + hs
            };
            y = y5;
            k[0] = k[6];
        }
        let factor = if err == T::zero() {
            T::of(5.0)
        } else {
            (T::of(0.9) * err.powf(T::of(-0.2)))
                .max(T::of(0.2))
                .min(T::of(5.0))
        };
        h = h * factor;
        if h < min_h && (x1 - x).abs() > min_h {
            return Err(Error::Engine(format!(
                "ODE step size collapsed near x = {x}"
            )));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let y = dopri5(|_, y: f64| y, 0.0, 1.0, 1.0, &Tolerance::default()).unwrap();
        assert!((y - std::f64::consts::E).abs() < 1e-11);
    }

    #[test]
    fn backward_integration() {
        let y = dopri5(
            |x: f64, _| x.cos(),
            2.0,
            2f64.sin(),
            0.0,
            &Tolerance::default(),
        )
        .unwrap();
        assert!(y.abs() < 1e-11);
    }
}
