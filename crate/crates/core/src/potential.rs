//! Bounded potentials on the symmetric interval `I = (-L/2, L/2)`.
//!
//! A [`Potential`] is an immutable value: a [`Form`] (symbolic, sampled or a
//! sum of those) together with the [`Interval`] it lives on. Forms know how to
//! evaluate themselves pointwise, integrate exactly over sub-intervals and
//! report their jump discontinuities, which is what the grid engine needs to
//! discretize them without losing accuracy at steps.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::bc::RobinPair;
use crate::error::{Error, Result};
use crate::numerics::grid::UniformGrid;
use crate::numerics::quad::gauss_legendre5;
use crate::scalar::Real;

/// Number of cells of the grid used for classification and sup-norm estimates.
pub const CLASSIFICATION_CELLS: usize = 4096;

/// Default class tolerance for symbolic forms.
pub const EPS_CLASS_SYMBOLIC: f64 = 1e-10;
/// Default class tolerance for forms containing sampled data.
pub const EPS_CLASS_SAMPLED: f64 = 1e-8;

/// The interval `(-L/2, L/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    length: T,
}

impl<T: Real> Interval<T> {
    pub fn new(length: T) -> Result<Self> {
        if !(length > T::zero()) || !length.is_finite() {
            return Err(Error::Domain(format!(
                "interval length must be positive, got {length}"
            )));
        }
        Ok(Interval { length })
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn left(&self) -> T {
        -self.half()
    }

    pub fn right(&self) -> T {
        self.half()
    }

    pub fn half(&self) -> T {
        T::half() * self.length
    }

    /// Closed-interval membership with a few ulps of slack at the ends.
    pub fn contains(&self, x: T) -> bool {
        let slack = T::of(1e-12) * self.length;
        x >= self.left() - slack && x <= self.right() + slack
    }

    pub fn grid(&self, cells: usize) -> UniformGrid<T> {
        UniformGrid::new(self.left(), self.right(), cells)
    }

    /// `tI`.
    pub fn scaled_by(&self, t: T) -> Self {
        Interval {
            length: self.length * t,
        }
    }
}

impl<T: Real> Default for Interval<T> {
    /// `L = π`, the normalization under which the step-potential formulas hold verbatim.
    fn default() -> Self {
        Interval { length: T::PI() }
    }
}

/// Even profile of a symmetric well, evaluated at `|x|`.
#[derive(Clone)]
pub enum WellProfile<T> {
    /// `coeff · |x|^exponent`.
    Power { coeff: T, exponent: T },
    /// Arbitrary even profile; `kinks` lists radii where it is not smooth.
    Custom {
        label: String,
        kinks: Vec<T>,
        f: Arc<dyn Fn(T) -> T + Send + Sync>,
    },
}

impl<T: Real> WellProfile<T> {
    pub fn custom(label: impl Into<String>, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        WellProfile::Custom {
            label: label.into(),
            kinks: Vec::new(),
            f: Arc::new(f),
        }
    }

    /// A custom profile that is smooth except at the radii in `kinks`.
    pub fn custom_with_kinks(
        label: impl Into<String>,
        kinks: Vec<T>,
        f: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        WellProfile::Custom {
            label: label.into(),
            kinks,
            f: Arc::new(f),
        }
    }

    fn at(&self, r: T) -> T {
        match self {
            WellProfile::Power { coeff, exponent } => {
                if r == T::zero() {
                    T::zero()
                } else {
                    *coeff * r.powf(*exponent)
                }
            }
            WellProfile::Custom { f, .. } => f(r),
        }
    }

    fn scaled(&self, factor: T) -> Self {
        match self {
            WellProfile::Power { coeff, exponent } => WellProfile::Power {
                coeff: *coeff * factor,
                exponent: *exponent,
            },
            WellProfile::Custom { label, kinks, f } => {
                let f = Arc::clone(f);
                WellProfile::Custom {
                    label: format!("{factor}*{label}"),
                    kinks: kinks.clone(),
                    f: Arc::new(move |r| factor * f(r)),
                }
            }
        }
    }

    /// Profile of `t^{-2} V(·/t)`.
    fn rescaled(&self, t: T) -> Self {
        match self {
            WellProfile::Power { coeff, exponent } => WellProfile::Power {
                coeff: *coeff / (t * t * t.powf(*exponent)),
                exponent: *exponent,
            },
            WellProfile::Custom { label, kinks, f } => {
                let f = Arc::clone(f);
                WellProfile::Custom {
                    label: format!("rescale({label}, {t})"),
                    kinks: kinks.iter().map(|&r| r * t).collect(),
                    f: Arc::new(move |r| f(r / t) / (t * t)),
                }
            }
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for WellProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WellProfile::Power { coeff, exponent } => write!(f, "{coeff:?}*|x|^{exponent:?}"),
            WellProfile::Custom { label, .. } => write!(f, "custom({label})"),
        }
    }
}

/// Shape of a potential, independent of the interval.
#[derive(Clone, Debug)]
pub enum Form<T> {
    Zero,
    Constant(T),
    /// `height` for `x >= split`, zero to the left.
    Step {
        height: T,
        split: T,
    },
    /// `slope·x + offset`.
    Linear {
        slope: T,
        offset: T,
    },
    SymmetricWell(WellProfile<T>),
    /// Values on a uniform grid over the interval, endpoints included;
    /// piecewise-linear in between.
    Sampled(Vec<T>),
    Sum(Vec<Form<T>>),
}

impl<T: Real> Form<T> {
    fn value_at(&self, x: T, interval: &Interval<T>) -> T {
        match self {
            Form::Zero => T::zero(),
            Form::Constant(c) => *c,
            Form::Step { height, split } => {
                if x < *split {
                    T::zero()
                } else {
                    *height
                }
            }
            Form::Linear { slope, offset } => *slope * x + *offset,
            Form::SymmetricWell(profile) => profile.at(x.abs()),
            Form::Sampled(values) => {
                let cells = values.len() - 1;
                let h = interval.length() / T::of_usize(cells);
                let s = ((x - interval.left()) / h).max(T::zero());
                let i = s.floor().to_usize().unwrap_or(0).min(cells - 1);
                let frac = (s - T::of_usize(i)).min(T::one());
                values[i] + frac * (values[i + 1] - values[i])
            }
            Form::Sum(terms) => terms
                .iter()
                .fold(T::zero(), |acc, f| acc + f.value_at(x, interval)),
        }
    }

    /// Exact (or Gauss-Legendre for custom wells) `∫_a^b V` for `a <= b` in `I`.
    fn integral(&self, a: T, b: T, interval: &Interval<T>) -> T {
        match self {
            Form::Zero => T::zero(),
            Form::Constant(c) => *c * (b - a),
            Form::Step { height, split } => *height * (b - a.max(*split)).max(T::zero()),
            Form::Linear { slope, offset } => {
                *slope * T::half() * (b * b - a * a) + *offset * (b - a)
            }
            Form::SymmetricWell(_) => {
                let f = |x: T| self.value_at(x, interval);
                if a < T::zero() && b > T::zero() {
                    gauss_legendre5(f, a, T::zero()) + gauss_legendre5(f, T::zero(), b)
                } else {
                    gauss_legendre5(f, a, b)
                }
            }
            Form::Sampled(values) => {
                let cells = values.len() - 1;
                let h = interval.length() / T::of_usize(cells);
                let left = interval.left();
                let mut acc = T::zero();
                let mut lo = a;
                while lo < b {
                    let cell = ((lo - left) / h)
                        .floor()
                        .to_usize()
                        .unwrap_or(0)
                        .min(cells - 1);
                    let cell_end = (left + T::of_usize(cell + 1) * h).min(b);
                    let hi = if cell_end > lo { cell_end } else { b };
                    acc = acc
                        + T::half()
                            * (hi - lo)
                            * (self.value_at(lo, interval) + self.value_at(hi, interval));
                    lo = hi;
                }
                acc
            }
            Form::Sum(terms) => terms
                .iter()
                .fold(T::zero(), |acc, f| acc + f.integral(a, b, interval)),
        }
    }

    fn collect_jumps(&self, out: &mut Vec<T>) {
        match self {
            Form::Step { height, split } if *height != T::zero() => out.push(*split),
            Form::Sum(terms) => terms.iter().for_each(|t| t.collect_jumps(out)),
            _ => {}
        }
    }

    /// Points where the form is not smooth (jumps, kinks, sample nodes).
    fn collect_breakpoints(&self, interval: &Interval<T>, out: &mut Vec<T>) {
        match self {
            Form::Step { split, .. } => out.push(*split),
            Form::SymmetricWell(profile) => {
                out.push(T::zero());
                if let WellProfile::Custom { kinks, .. } = profile {
                    for &r in kinks {
                        out.push(r);
                        out.push(-r);
                    }
                }
            }
            Form::Sampled(values) => {
                let cells = values.len() - 1;
                let h = interval.length() / T::of_usize(cells);
                out.extend((1..cells).map(|i| interval.left() + T::of_usize(i) * h));
            }
            Form::Sum(terms) => terms
                .iter()
                .for_each(|t| t.collect_breakpoints(interval, out)),
            _ => {}
        }
    }

    fn contains_sampled(&self) -> bool {
        match self {
            Form::Sampled(_) => true,
            Form::Sum(terms) => terms.iter().any(Form::contains_sampled),
            _ => false,
        }
    }

    fn scaled(&self, factor: T) -> Self {
        match self {
            Form::Zero => Form::Zero,
            Form::Constant(c) => Form::Constant(*c * factor),
            Form::Step { height, split } => Form::Step {
                height: *height * factor,
                split: *split,
            },
            Form::Linear { slope, offset } => Form::Linear {
                slope: *slope * factor,
                offset: *offset * factor,
            },
            Form::SymmetricWell(p) => Form::SymmetricWell(p.scaled(factor)),
            Form::Sampled(v) => Form::Sampled(v.iter().map(|&x| x * factor).collect()),
            Form::Sum(terms) => Form::Sum(terms.iter().map(|t| t.scaled(factor)).collect()),
        }
    }

    fn rescaled(&self, t: T) -> Self {
        let inv2 = T::one() / (t * t);
        match self {
            Form::Zero => Form::Zero,
            Form::Constant(c) => Form::Constant(*c * inv2),
            Form::Step { height, split } => Form::Step {
                height: *height * inv2,
                split: *split * t,
            },
            Form::Linear { slope, offset } => Form::Linear {
                slope: *slope * inv2 / t,
                offset: *offset * inv2,
            },
            Form::SymmetricWell(p) => Form::SymmetricWell(p.rescaled(t)),
            Form::Sampled(v) => Form::Sampled(v.iter().map(|&x| x * inv2).collect()),
            Form::Sum(terms) => Form::Sum(terms.iter().map(|f| f.rescaled(t)).collect()),
        }
    }

    fn reflected(&self) -> Self {
        match self {
            Form::Zero | Form::Constant(_) | Form::SymmetricWell(_) => self.clone(),
            // m·1[x >= s] reflected is m·1[x <= -s] = m - m·1[x > -s]
            Form::Step { height, split } => Form::Sum(vec![
                Form::Constant(*height),
                Form::Step {
                    height: -*height,
                    split: -*split,
                },
            ]),
            Form::Linear { slope, offset } => Form::Linear {
                slope: -*slope,
                offset: *offset,
            },
            Form::Sampled(v) => Form::Sampled(v.iter().rev().copied().collect()),
            Form::Sum(terms) => Form::Sum(terms.iter().map(Form::reflected).collect()),
        }
    }

    fn validate(&self, interval: &Interval<T>) -> Result<()> {
        let finite = |x: T, what: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidPotential(format!("{what} is not finite")))
            }
        };
        match self {
            Form::Zero => Ok(()),
            Form::Constant(c) => finite(*c, "constant"),
            Form::Step { height, split } => {
                finite(*height, "step height")?;
                finite(*split, "step split")?;
                if !interval.contains(*split) {
                    return Err(Error::InvalidPotential(format!(
                        "step split {split} outside [{}, {}]",
                        interval.left(),
                        interval.right()
                    )));
                }
                Ok(())
            }
            Form::Linear { slope, offset } => {
                finite(*slope, "slope")?;
                finite(*offset, "offset")
            }
            Form::SymmetricWell(profile) => {
                if let WellProfile::Power { coeff, exponent } = profile {
                    finite(*coeff, "coefficient")?;
                    if !(*exponent > T::zero()) {
                        return Err(Error::InvalidPotential(
                            "power-well exponent must be positive".into(),
                        ));
                    }
                }
                let grid = interval.grid(CLASSIFICATION_CELLS);
                for x in grid.nodes() {
                    finite(profile.at(x.abs()), "symmetric-well profile value")?;
                }
                Ok(())
            }
            Form::Sampled(values) => {
                if values.len() < 3 {
                    return Err(Error::InvalidPotential(format!(
                        "sampled potential needs at least 3 values, got {}",
                        values.len()
                    )));
                }
                values.iter().try_for_each(|&v| finite(v, "sample"))
            }
            Form::Sum(terms) => terms.iter().try_for_each(|t| t.validate(interval)),
        }
    }

    fn to_json(&self) -> Result<Value> {
        let f = |x: T| x.to_f64_lossy();
        Ok(match self {
            Form::Zero => json!({"form": "zero"}),
            Form::Constant(c) => json!({"form": "constant", "c": f(*c)}),
            Form::Step { height, split } => {
                json!({"form": "step", "m": f(*height), "split": f(*split)})
            }
            Form::Linear { slope, offset } => {
                json!({"form": "linear", "a": f(*slope), "b": f(*offset)})
            }
            Form::SymmetricWell(WellProfile::Power { coeff, exponent }) => {
                json!({"form": "power_well", "c": f(*coeff), "p": f(*exponent)})
            }
            Form::SymmetricWell(WellProfile::Custom { label, .. }) => {
                return Err(Error::InvalidPotential(format!(
                    "custom symmetric well '{label}' has no JSON representation"
                )))
            }
            Form::Sampled(values) => {
                json!({"form": "sampled", "values": values.iter().map(|&v| f(v)).collect::<Vec<_>>()})
            }
            Form::Sum(terms) => json!({
                "form": "sum",
                "terms": terms.iter().map(Form::to_json).collect::<Result<Vec<_>>>()?,
            }),
        })
    }

    fn from_json(value: &Value, allow_length: bool) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidPotential("potential must be a JSON object".into()))?;
        let form = obj
            .get("form")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidPotential("missing string field 'form'".into()))?;
        let allowed: &[&str] = match form {
            "zero" => &[],
            "constant" => &["c"],
            "step" => &["m", "split"],
            "linear" => &["a", "b"],
            "power_well" => &["c", "p"],
            "sampled" => &["values"],
            "sum" => &["terms"],
            other => return Err(Error::InvalidPotential(format!("unknown form '{other}'"))),
        };
        for key in obj.keys() {
            let known =
                key == "form" || (allow_length && key == "L") || allowed.contains(&key.as_str());
            if !known {
                return Err(Error::InvalidPotential(format!(
                    "unknown key '{key}' for form '{form}'"
                )));
            }
        }
        let num = |key: &str, default: Option<f64>| -> Result<T> {
            match obj.get(key) {
                Some(v) => v.as_f64().map(T::of).ok_or_else(|| {
                    Error::InvalidPotential(format!("field '{key}' must be a number"))
                }),
                None => default
                    .map(T::of)
                    .ok_or_else(|| Error::InvalidPotential(format!("missing field '{key}'"))),
            }
        };
        Ok(match form {
            "zero" => Form::Zero,
            "constant" => Form::Constant(num("c", None)?),
            "step" => Form::Step {
                height: num("m", None)?,
                split: num("split", Some(0.0))?,
            },
            "linear" => Form::Linear {
                slope: num("a", None)?,
                offset: num("b", Some(0.0))?,
            },
            "power_well" => Form::SymmetricWell(WellProfile::Power {
                coeff: num("c", Some(1.0))?,
                exponent: num("p", Some(2.0))?,
            }),
            "sampled" => {
                let values = obj
                    .get("values")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidPotential("'values' must be an array".into()))?;
                Form::Sampled(
                    values
                        .iter()
                        .map(|v| {
                            v.as_f64().map(T::of).ok_or_else(|| {
                                Error::InvalidPotential("sample must be a number".into())
                            })
                        })
                        .collect::<Result<_>>()?,
                )
            }
            "sum" => {
                let terms = obj
                    .get("terms")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidPotential("'terms' must be an array".into()))?;
                Form::Sum(
                    terms
                        .iter()
                        .map(|t| Form::from_json(t, false))
                        .collect::<Result<_>>()?,
                )
            }
            _ => unreachable!(),
        })
    }
}

/// A bounded potential on a concrete interval.
#[derive(Clone, Debug)]
pub struct Potential<T> {
    form: Form<T>,
    interval: Interval<T>,
    bound: T,
}

impl<T: Real> Potential<T> {
    pub fn new(form: Form<T>, interval: Interval<T>) -> Result<Self> {
        form.validate(&interval)?;
        let mut p = Potential {
            form,
            interval,
            bound: T::zero(),
        };
        p.bound = p.compute_bound();
        Ok(p)
    }

    fn on_default(form: Form<T>) -> Self {
        Self::new(form, Interval::default()).expect("invalid potential on the default interval")
    }

    pub fn zero() -> Self {
        Self::on_default(Form::Zero)
    }

    pub fn constant(c: T) -> Self {
        Self::on_default(Form::Constant(c))
    }

    /// `height · 1[x >= split]` on `L = π`. Panics if `split` is outside the interval.
    pub fn step(height: T, split: T) -> Self {
        Self::on_default(Form::Step { height, split })
    }

    pub fn linear(slope: T, offset: T) -> Self {
        Self::on_default(Form::Linear { slope, offset })
    }

    /// `coeff · |x|^exponent`.
    pub fn power_well(coeff: T, exponent: T) -> Self {
        Self::on_default(Form::SymmetricWell(WellProfile::Power { coeff, exponent }))
    }

    pub fn symmetric_well(
        label: impl Into<String>,
        profile: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::on_default(Form::SymmetricWell(WellProfile::custom(label, profile)))
    }

    /// Even profile with known non-smooth radii, see [`WellProfile::custom_with_kinks`].
    pub fn symmetric_well_with_kinks(
        label: impl Into<String>,
        kinks: Vec<T>,
        profile: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::on_default(Form::SymmetricWell(WellProfile::custom_with_kinks(
            label, kinks, profile,
        )))
    }

    /// Panics on fewer than three samples.
    pub fn sampled(values: Vec<T>) -> Self {
        Self::on_default(Form::Sampled(values))
    }

    pub fn sum(terms: Vec<Form<T>>) -> Self {
        Self::on_default(Form::Sum(terms))
    }

    /// Same form on another interval.
    pub fn on(&self, interval: Interval<T>) -> Result<Self> {
        Self::new(self.form.clone(), interval)
    }

    pub fn form(&self) -> &Form<T> {
        &self.form
    }

    pub fn interval(&self) -> Interval<T> {
        self.interval
    }

    /// Upper bound on `sup |V|` over the interval.
    pub fn bound(&self) -> T {
        self.bound
    }

    fn compute_bound(&self) -> T {
        fn form_bound<T: Real>(form: &Form<T>, interval: &Interval<T>) -> T {
            match form {
                Form::Zero => T::zero(),
                Form::Constant(c) => c.abs(),
                Form::Step { height, .. } => height.abs(),
                Form::Linear { slope, offset } => {
                    (slope.abs() * interval.half() + offset.abs()).max((*offset).abs())
                }
                Form::Sampled(v) => v.iter().fold(T::zero(), |m, x| m.max(x.abs())),
                Form::SymmetricWell(_) => interval
                    .grid(CLASSIFICATION_CELLS)
                    .nodes()
                    .into_iter()
                    .fold(T::zero(), |m, x| m.max(form.value_at(x, interval).abs())),
                Form::Sum(terms) => terms
                    .iter()
                    .fold(T::zero(), |m, t| m + form_bound(t, interval)),
            }
        }
        form_bound(&self.form, &self.interval)
    }

    /// `V(x)`; errors when `x` is outside `[-L/2, L/2]`.
    pub fn evaluate(&self, x: T) -> Result<T> {
        if !self.interval.contains(x) {
            return Err(Error::Domain(format!(
                "x = {x} outside [{}, {}]",
                self.interval.left(),
                self.interval.right()
            )));
        }
        Ok(self.form.value_at(x, &self.interval))
    }

    /// Unchecked evaluation for callers that already hold grid nodes of `I`.
    #[inline]
    pub fn value_at(&self, x: T) -> T {
        self.form.value_at(x, &self.interval)
    }

    /// `∫_a^b V dx` for `-L/2 <= a <= b <= L/2`.
    pub fn integral(&self, a: T, b: T) -> T {
        self.form.integral(a, b, &self.interval)
    }

    /// Interior jump locations, sorted and deduplicated.
    pub fn jumps(&self) -> Vec<T> {
        let mut out = Vec::new();
        self.form.collect_jumps(&mut out);
        let (lo, hi) = (self.interval.left(), self.interval.right());
        out.retain(|&x| x > lo && x < hi);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        out
    }

    pub fn has_sampled_data(&self) -> bool {
        self.form.contains_sampled()
    }

    /// Interior breakpoints (jumps, kinks, sample nodes), sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut out = Vec::new();
        self.form.collect_breakpoints(&self.interval, &mut out);
        let (lo, hi) = (self.interval.left(), self.interval.right());
        out.retain(|&x| x > lo && x < hi);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out.dedup();
        out
    }

    /// Node values for a finite-difference grid: averages of `V` against the
    /// hat function of each node, `∫ V φ_i / ∫ φ_i`, with half hats at the
    /// ends. Panels are split at breakpoints and integrated by five-point
    /// Gauss-Legendre, so steps and kinks are integrated exactly and the
    /// discretization error keeps a smooth `h²` expansion. Linear in `V`.
    pub fn discretize(&self, grid: &UniformGrid<T>) -> Vec<T> {
        let breaks = self.breakpoints();
        let h = grid.h;
        // ∫_a^b V(x) (x - c)/(b - a)-type weights, split at breakpoints
        let weighted = |a: T, b: T, hat: &dyn Fn(T) -> T| -> T {
            let start = breaks.partition_point(|&x| x <= a);
            let mut acc = T::zero();
            let mut lo = a;
            for &bp in breaks[start..].iter().take_while(|&&x| x < b) {
                acc = acc + gauss_legendre5(|x| self.value_at(x) * hat(x), lo, bp);
                lo = bp;
            }
            acc + gauss_legendre5(|x| self.value_at(x) * hat(x), lo, b)
        };
        let last = grid.cells;
        (0..grid.len())
            .map(|i| {
                let x = grid.node(i);
                let mut acc = T::zero();
                let mut mass = T::zero();
                if i > 0 {
                    let a = grid.node(i - 1);
                    acc = acc + weighted(a, x, &|s| (s - a) / h);
                    mass = mass + T::half() * h;
                }
                if i < last {
                    let b = grid.node(i + 1);
                    acc = acc + weighted(x, b, &|s| (b - s) / h);
                    mass = mass + T::half() * h;
                }
                acc / mass
            })
            .collect()
    }

    /// `(min V, max V)` estimated on the classification grid plus one-sided
    /// limits at the jumps.
    pub fn range(&self) -> (T, T) {
        let grid = self.interval.grid(CLASSIFICATION_CELLS);
        let eps = T::of(1e-9) * self.interval.length();
        let mut probe: Vec<T> = grid.nodes();
        for s in self.jumps() {
            probe.push((s - eps).max(self.interval.left()));
            probe.push((s + eps).min(self.interval.right()));
        }
        probe
            .into_iter()
            .map(|x| self.value_at(x))
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// `s·V`.
    pub fn scaled(&self, factor: T) -> Self {
        Potential {
            form: self.form.scaled(factor),
            interval: self.interval,
            bound: self.bound * factor.abs(),
        }
    }

    /// `V + c`.
    pub fn shifted(&self, c: T) -> Self {
        self.plus(&Form::Constant(c))
    }

    /// `V + W` where `W` is a form on the same interval.
    pub fn plus(&self, other: &Form<T>) -> Self {
        let mut terms = match &self.form {
            Form::Sum(t) => t.clone(),
            f => vec![f.clone()],
        };
        terms.push(other.clone());
        Self::new(Form::Sum(terms), self.interval).expect("sum of valid forms is valid")
    }

    /// `V(-x)`.
    pub fn reflected(&self) -> Self {
        Self::new(self.form.reflected(), self.interval)
            .expect("reflection of a valid form is valid")
    }

    /// Class tolerance matching the form: looser when sampled data is involved.
    pub fn default_class_tolerance(&self) -> T {
        if self.has_sampled_data() {
            T::of(EPS_CLASS_SAMPLED)
        } else {
            T::of(EPS_CLASS_SYMBOLIC)
        }
    }

    /// Serializes to `{"form": ..., <parameters>, "L": ...}`.
    pub fn to_json(&self) -> Result<Value> {
        let mut value = self.form.to_json()?;
        value
            .as_object_mut()
            .expect("form serializes to an object")
            .insert("L".into(), json!(self.interval.length().to_f64_lossy()));
        Ok(value)
    }

    /// Parses the JSON object produced by [`Potential::to_json`]; `L` defaults to π.
    pub fn from_json(value: &Value) -> Result<Self> {
        let form = Form::from_json(value, true)?;
        let length = match value.get("L") {
            Some(v) => T::of(
                v.as_f64()
                    .ok_or_else(|| Error::InvalidPotential("field 'L' must be a number".into()))?,
            ),
            None => T::PI(),
        };
        Self::new(form, Interval::new(length)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_json(&value)
    }

    /// Short human-readable description for reports.
    pub fn describe(&self) -> String {
        match self.to_json() {
            Ok(mut v) => {
                if let Some(Value::Array(values)) = v.get("values") {
                    let n = values.len();
                    v.as_object_mut()
                        .unwrap()
                        .insert("values".into(), json!(format!("<{n} samples>")));
                }
                v.to_string()
            }
            Err(_) => format!("{:?} on L={}", self.form, self.interval.length()),
        }
    }
}

impl<T: Real> Default for Potential<T> {
    fn default() -> Self {
        Self::zero()
    }
}

/// Transition point data of a single-well potential.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionPoint<T> {
    /// Reported transition point: the admissible point closest to the centre.
    pub tau: T,
    /// Admissible transition points found on the classification grid.
    pub lo: T,
    pub hi: T,
    /// Classification grid spacing; admissibility is known up to this.
    pub resolution: T,
}

impl<T: Real> TransitionPoint<T> {
    /// Whether `x` is an admissible transition point up to one grid cell.
    pub fn admits(&self, x: T) -> bool {
        let slack = self.resolution * T::of(1.000_001);
        x >= self.lo - slack && x <= self.hi + slack
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialClass<T> {
    pub single_well: Option<TransitionPoint<T>>,
    pub convex: bool,
    pub symmetric: bool,
}

/// Detects single-well, convex and symmetric structure on a uniform grid of
/// [`CLASSIFICATION_CELLS`] cells, up to `eps`.
pub fn classify<T: Real>(v: &Potential<T>, eps: T) -> PotentialClass<T> {
    let interval = v.interval();
    let grid = interval.grid(CLASSIFICATION_CELLS);
    let values: Vec<T> = grid.nodes().into_iter().map(|x| v.value_at(x)).collect();
    let n = values.len();

    let symmetric = (0..n / 2).all(|i| (values[i] - values[n - 1 - i]).abs() <= eps);
    let convex = values
        .windows(3)
        .all(|w| w[0] - T::two() * w[1] + w[2] >= -eps);

    // Node p is admissible when V is nonincreasing on nodes 0..=p and
    // nondecreasing on p..n.
    let diffs: Vec<T> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let first_rise = diffs.iter().position(|&d| d > eps).unwrap_or(diffs.len());
    let after_last_fall = diffs.iter().rposition(|&d| d < -eps).map_or(0, |i| i + 1);
    let single_well = (after_last_fall <= first_rise).then(|| {
        let lo = grid.node(after_last_fall);
        let hi = grid.node(first_rise);
        TransitionPoint {
            tau: T::zero().max(lo).min(hi),
            lo,
            hi,
            resolution: grid.h,
        }
    });

    PotentialClass {
        single_well,
        convex,
        symmetric,
    }
}

/// `(t^{-2} V(·/t), α/t, tI)`. Dirichlet parameters stay Dirichlet.
pub fn rescale<T: Real>(
    v: &Potential<T>,
    bc: &RobinPair<T>,
    t: T,
) -> Result<(Potential<T>, RobinPair<T>, Interval<T>)> {
    if !(t > T::zero()) {
        return Err(Error::Domain(format!(
            "scale factor must be positive, got {t}"
        )));
    }
    let interval = v.interval().scaled_by(t);
    let potential = Potential::new(v.form().rescaled(t), interval)?;
    Ok((potential, bc.scaled_by(t), interval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bc::RobinParam;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn evaluate_examples() {
        let step = Potential::step(3.0, 0.0);
        assert_eq!(step.evaluate(-1.0).unwrap(), 0.0);
        assert_eq!(step.evaluate(1.0).unwrap(), 3.0);
        assert_eq!(step.evaluate(0.0).unwrap(), 3.0);
        assert_eq!(Potential::linear(2.0, 1.0).evaluate(0.5).unwrap(), 2.0);
        assert!(matches!(step.evaluate(2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&Potential::constant(5.0), 1e-10);
        assert!(c.convex && c.symmetric);
        assert_eq!(c.single_well.unwrap().tau, 0.0);

        let s = classify(&Potential::step(2.0, 0.0), 1e-10);
        assert!(!s.convex && !s.symmetric);
        let tp = s.single_well.unwrap();
        assert!(tp.tau <= 0.0 && tp.tau > -2.0 * tp.resolution);
        assert!(tp.admits(0.0));

        let l = classify(&Potential::linear(1.0, 0.0), 1e-10);
        assert!(l.convex && !l.symmetric);
        assert!((l.single_well.unwrap().tau + PI / 2.0).abs() < 1e-12);

        let w = classify(&Potential::power_well(1.0, 2.0), 1e-10);
        assert!(w.convex && w.symmetric && w.single_well.unwrap().tau == 0.0);

        let barrier = classify(&Potential::symmetric_well("cos", |r: f64| r.cos()), 1e-10);
        assert!(barrier.symmetric && barrier.single_well.is_none() && !barrier.convex);
    }

    #[test]
    fn rescale_examples() {
        let bc = RobinPair::symmetric(RobinParam::Finite(1.0));
        let (v, b, i) = rescale(&Potential::zero(), &bc, 2.0).unwrap();
        assert_eq!(v.value_at(0.3), 0.0);
        assert_eq!(b.alpha, RobinParam::Finite(0.5));
        assert!((i.length() - 2.0 * PI).abs() < 1e-15);

        let (v, b, i) = rescale(&Potential::constant(4.0), &RobinPair::dirichlet(), 2.0).unwrap();
        assert_eq!(v.value_at(1.0), 1.0);
        assert!(b.alpha.is_dirichlet() && b.beta.is_dirichlet());
        assert!((i.length() - 2.0 * PI).abs() < 1e-15);

        assert!(rescale(&Potential::zero(), &bc, 0.0).is_err());
    }

    #[test]
    fn rescaled_forms_match_definition() {
        let t = 1.7;
        let bc = RobinPair::neumann();
        let forms = vec![
            Potential::step(2.0, 0.3),
            Potential::linear(1.5, -0.2),
            Potential::power_well(0.7, 1.5),
            Potential::symmetric_well("tri", |r: f64| (1.0 - r).max(0.0)),
            Potential::sampled(vec![1.0, 0.0, 0.5, 2.0]),
        ];
        for v in forms {
            let (w, _, interval) = rescale(&v, &bc, t).unwrap();
            for k in 0..=20 {
                let x = interval.left() + interval.length() * k as f64 / 20.0;
                let expect = v.value_at(x / t) / (t * t);
                assert!(
                    (w.value_at(x) - expect).abs() < 1e-12,
                    "{} at {x}",
                    v.describe()
                );
            }
        }
    }

    #[test]
    fn discretize_uses_hat_averages() {
        let v = Potential::step(2.0f64, 0.0);
        let grid = v.interval().grid(8);
        let nodes = v.discretize(&grid);
        assert!((nodes[4] - 1.0).abs() < 1e-14);
        assert!(nodes[3].abs() < 1e-14);
        assert!((nodes[5] - 2.0).abs() < 1e-14);

        let h = grid.h;
        let off = Potential::step(2.0f64, 0.1);
        let vals = off.discretize(&grid);
        // ∫_{0.1}^{h} 2(1 - x/h) dx / h
        let expect = 2.0 * ((h - 0.1) - (h * h - 0.01) / (2.0 * h)) / h;
        assert!((vals[4] - expect).abs() < 1e-14);

        let lin = Potential::linear(3.0, 1.0);
        let lv = lin.discretize(&grid);
        assert!((lv[3] - lin.value_at(grid.node(3))).abs() < 1e-14);
        assert!((lv[0] - lin.value_at(grid.node(0) + h / 3.0)).abs() < 1e-14);

        let kinked =
            Potential::symmetric_well_with_kinks("v", vec![0.3], |r: f64| (r - 0.3).max(0.0));
        let fine = kinked.interval().grid(4096);
        let kv = kinked.discretize(&v.interval().grid(16));
        let g16 = v.interval().grid(16);
        for (i, &val) in kv.iter().enumerate().skip(1).take(15) {
            let x = g16.node(i);
            let brute: f64 = fine
                .nodes()
                .iter()
                .map(|&s| kinked.value_at(s) * (1.0 - (s - x).abs() / g16.h).max(0.0) * fine.h)
                .sum::<f64>()
                / g16.h;
            assert!((val - brute).abs() < 1e-5);
        }
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let v = Potential::<f64>::from_json_str(
            r#"{"form": "step", "m": 3.0, "split": 0.0, "L": 3.141592653589793}"#,
        )
        .unwrap();
        assert_eq!(v.value_at(1.0), 3.0);
        let back = Potential::<f64>::from_json(&v.to_json().unwrap()).unwrap();
        assert_eq!(back.to_json().unwrap(), v.to_json().unwrap());

        let s = Potential::<f64>::from_json_str(r#"{"form":"sampled","values":[0,1,0],"L":2.0}"#)
            .unwrap();
        assert_eq!(s.interval().length(), 2.0);
        assert!((s.value_at(-0.5) - 0.5).abs() < 1e-15);

        assert!(Potential::<f64>::from_json_str(r#"{"form":"zero","bogus":1}"#).is_err());
        assert!(Potential::<f64>::from_json_str(r#"{"form":"sampled","values":[0,1]}"#).is_err());
        assert!(Potential::<f64>::from_json_str(r#"{"form":"step","m":1,"split":9}"#).is_err());
        assert!(Potential::<f64>::from_json_str(r#"{"form":"zero","L":-1}"#).is_err());
        assert!(Potential::symmetric_well("f", |r: f64| r)
            .to_json()
            .is_err());
    }

    #[test]
    fn reflection_matches_pointwise() {
        let v = Potential::sum(vec![
            Form::Step {
                height: 1.0,
                split: 0.4,
            },
            Form::Linear {
                slope: 2.0,
                offset: 0.1,
            },
            Form::Sampled(vec![0.0, 1.0, 3.0, 2.0, 0.5]),
        ]);
        let r = v.reflected();
        for k in 0..=40 {
            let x = -PI / 2.0 + PI * k as f64 / 40.0;
            if (x + 0.4).abs() < 1e-9 {
                continue;
            }
            assert!((r.value_at(x) - v.value_at(-x)).abs() < 1e-12);
        }
    }

    fn well_strategy() -> impl Strategy<Value = Potential<f64>> {
        prop::collection::vec((0.0f64..3.0, 0.0f64..1.5), 1..4).prop_map(|kinks| {
            let profile = move |r: f64| {
                kinks
                    .iter()
                    .map(|&(c, k)| c * (r - k).max(0.0))
                    .sum::<f64>()
            };
            Potential::symmetric_well("kinks", profile)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn symmetric_background_plus_scaled_well_stays_symmetric(
            well in well_strategy(), c in -2.0f64..2.0, p in 0.5f64..3.0, t in 0.0f64..1.0,
        ) {
            let background = Form::SymmetricWell(WellProfile::Power { coeff: c, exponent: p });
            let sum = well.scaled(t).plus(&background);
            prop_assert!(classify(&sum, 1e-10).symmetric);
        }

        #[test]
        fn class_flags_survive_rescaling(well in well_strategy(), slope in -2.0f64..2.0, t in 0.3f64..3.0) {
            let v = well.plus(&Form::Linear { slope, offset: 0.0 });
            let before = classify(&v, 1e-10);
            let (w, _, _) = rescale(&v, &RobinPair::neumann(), t).unwrap();
            let after = classify(&w, 1e-10);
            prop_assert_eq!(before.convex, after.convex);
            prop_assert_eq!(before.symmetric, after.symmetric);
            prop_assert_eq!(before.single_well.is_some(), after.single_well.is_some());
        }

        #[test]
        fn dense_sampling_interpolates_to_second_order(a in -2.0f64..2.0, c in 0.1f64..2.0) {
            let v = Potential::sum(vec![
                Form::Linear { slope: a, offset: 0.0 },
                Form::SymmetricWell(WellProfile::Power { coeff: c, exponent: 2.0 }),
            ]);
            for cells in [64usize, 128] {
                let grid = v.interval().grid(cells);
                let sampled = Potential::sampled(grid.nodes().iter().map(|&x| v.value_at(x)).collect());
                let h = grid.h;
                let err = (0..997)
                    .map(|k| -PI / 2.0 + PI * (k as f64 + 0.5) / 997.0)
                    .map(|x| (sampled.value_at(x) - v.value_at(x)).abs())
                    .fold(0.0, f64::max);
                // |V''| h^2 / 8 for the piecewise-linear interpolant
                prop_assert!(err <= 2.0 * c * h * h / 8.0 + 1e-12);
            }
        }
    }
}
