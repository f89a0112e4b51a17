//! Seeded random potential corpora for the verifier suites (`f64` only).
//!
//! Every generator draws from its own ChaCha8 stream derived from the seed,
//! so a corpus depends only on `(seed, count)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::potential::{Form, Interval, WellProfile};
use crate::Potential;

/// Sample cells for corpus entries stored as piecewise-linear data.
pub const SAMPLE_CELLS: usize = 256;

fn stream(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
}

/// `Σ c_k max(0, r - r_k)`, optionally capped at `cap`.
#[derive(Clone, Debug)]
struct Ramp {
    coeffs: Vec<(f64, f64)>,
    cap: Option<f64>,
}

impl Ramp {
    fn random(rng: &mut ChaCha8Rng, reach: f64) -> Self {
        let terms = rng.gen_range(1..=3);
        let coeffs = (0..terms)
            .map(|_| (rng.gen_range(0.2..4.0), rng.gen_range(0.0..0.9 * reach)))
            .collect();
        let cap = rng.gen_bool(0.3).then(|| rng.gen_range(0.5..3.0));
        Ramp { coeffs, cap }
    }

    fn at(&self, r: f64) -> f64 {
        let v: f64 = self
            .coeffs
            .iter()
            .map(|&(c, r0)| c * (r - r0).max(0.0))
            .sum();
        self.cap.map_or(v, |cap| v.min(cap))
    }

    /// Radii where the profile bends.
    fn kinks(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.coeffs.iter().map(|&(_, r0)| r0).collect();
        if let Some(cap) = self.cap {
            let (mut lo, mut hi) = (0.0, 100.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if self.at_uncapped(mid) < cap {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        out
    }

    fn at_uncapped(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|&(c, r0)| c * (r - r0).max(0.0))
            .sum()
    }

    fn label(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(c, r0)| format!("{c:.4}*max(0,|x|-{r0:.4})"))
            .collect();
        match self.cap {
            Some(cap) => format!("min({}, {cap:.4})", terms.join("+")),
            None => terms.join("+"),
        }
    }
}

fn ramp_well(ramp: Ramp, offset: f64) -> Potential {
    let label = format!("{}+{offset:.4}", ramp.label());
    let kinks = ramp.kinks();
    let profile = WellProfile::custom_with_kinks(label, kinks, move |r| ramp.at(r) + offset);
    Potential::new(Form::SymmetricWell(profile), Interval::default()).expect("valid well")
}

fn sample(f: impl Fn(f64) -> f64) -> Potential {
    let grid = Interval::<f64>::default().grid(SAMPLE_CELLS);
    Potential::sampled(grid.nodes().into_iter().map(f).collect())
}

/// Symmetric piecewise-linear wells `Σ c_k max(0, |x| - r_k)` (some capped)
/// plus a random constant, on `L = π`.
pub fn centered_single_wells(count: usize, seed: u64) -> Vec<Potential> {
    let mut rng = stream(seed, 1);
    (0..count)
        .map(|_| {
            let ramp = Ramp::random(&mut rng, PI / 2.0);
            ramp_well(ramp, rng.gen_range(-1.0..1.0))
        })
        .collect()
}

/// Shifted wells `Σ c_k max(0, |x - s| - r_k)` sampled on [`SAMPLE_CELLS`]
/// cells, alternating with off-centre steps `c·1[x ≥ s]`.
pub fn offcenter_single_wells(count: usize, seed: u64) -> Vec<Potential> {
    let mut rng = stream(seed, 2);
    (0..count)
        .map(|i| {
            let shift = rng.gen_range(-PI / 4.0..PI / 4.0);
            if i % 3 == 2 {
                Potential::step(rng.gen_range(0.5..8.0), shift)
            } else {
                let ramp = Ramp::random(&mut rng, PI / 2.0);
                sample(move |x| ramp.at((x - shift).abs()))
            }
        })
        .collect()
}

/// Smooth symmetric potentials (wells, humps, oscillating and double-well shapes).
pub fn symmetric_potentials(count: usize, seed: u64) -> Vec<Potential> {
    let mut rng = stream(seed, 3);
    (0..count)
        .map(|i| {
            let c: f64 = rng.gen_range(0.3..3.0);
            match i % 4 {
                0 => Potential::power_well(c, 2.0),
                1 => Potential::symmetric_well(format!("{c:.4}*cos(x)"), move |r| c * r.cos()),
                2 => {
                    let k = rng.gen_range(1..=3) as f64;
                    Potential::symmetric_well(format!("{c:.4}*cos({k}x)"), move |r| {
                        c * (k * r).cos()
                    })
                }
                _ => {
                    let r0: f64 = rng.gen_range(0.3..1.2);
                    Potential::symmetric_well(format!("{c:.4}*(x^2-{r0:.4}^2)^2"), move |r| {
                        c * (r * r - r0 * r0).powi(2)
                    })
                }
            }
        })
        .collect()
}

/// Convex potentials: maxima of two to four random affine functions (sampled
/// on [`SAMPLE_CELLS`] cells), alternating with linear potentials.
pub fn convex_potentials(count: usize, seed: u64) -> Vec<Potential> {
    let mut rng = stream(seed, 4);
    (0..count)
        .map(|i| {
            if i % 4 == 3 {
                return Potential::linear(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
            }
            let pieces: Vec<(f64, f64)> = (0..rng.gen_range(2..=4))
                .map(|_| (rng.gen_range(-4.0..4.0), rng.gen_range(-1.0..1.0)))
                .collect();
            sample(move |x| {
                pieces
                    .iter()
                    .map(|&(a, b)| a * x + b)
                    .fold(f64::NEG_INFINITY, f64::max)
            })
        })
        .collect()
}

/// Smooth bounded potentials without shape constraints.
pub fn general_potentials(count: usize, seed: u64) -> Vec<Potential> {
    let mut rng = stream(seed, 5);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(-2.0..2.0);
            let b = rng.gen_range(-2.0..2.0);
            let k = rng.gen_range(1..=3) as f64;
            sample(move |x| a * x + b * (k * x).sin())
        })
        .collect()
}

/// Uniform choice from `options`.
pub fn choose<T: Copy>(rng: &mut ChaCha8Rng, options: &[T]) -> T {
    options[rng.gen_range(0..options.len())]
}

/// Stream for suite-level random choices (boundary parameters and the like).
pub fn choice_stream(seed: u64, salt: u64) -> ChaCha8Rng {
    stream(seed, 0x100 + salt)
}
