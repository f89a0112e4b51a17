use std::fmt;
use std::fs;

use log::info;
use serde_json::{json, Value};

use robin_gap::gaplab::{
    self, find_offcenter_counterexample_on, search_linear_minimizer,
    search_step_minimizer_mixed_bc, suites, sweep_gap_vs_alpha, sweep_gap_vs_m, uniform_points,
};
use robin_gap::potential::Interval;
use robin_gap::solver::{eigenpairs, shooting_spectrum};
use robin_gap::{Error, FamilyMinimum, Potential, RobinPair, RobinParam, Spectrum, SweepCurve};

use crate::config::{Command, EngineChoice, Family, Format, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Engine(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Engine(_) => EXIT_ENGINE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Engine(e) => write!(f, "numerical engine error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    /// Bad inputs are usage errors; everything raised while computing is an engine error.
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::InvalidPotential(_) | Error::Json(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Engine(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Rendered output of a run and whether it reports a failed check.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub body: String,
    pub violation: bool,
}

impl Artifact {
    fn ok(body: String) -> Self {
        Artifact {
            body,
            violation: false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.violation {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        }
    }
}

/// Executes `config` and writes the artifact to `config.output` (or returns it
/// for printing when no output path is set).
pub fn run(config: &RunConfig) -> Result<Artifact, CliError> {
    let artifact = execute(config)?;
    if let Some(path) = &config.output {
        fs::write(path, &artifact.body)?;
        info!("wrote {}", path.display());
    }
    Ok(artifact)
}

/// Computes the artifact of `config` without writing it anywhere.
pub fn execute(config: &RunConfig) -> Result<Artifact, CliError> {
    match config.command {
        Command::Eig => eig(config),
        Command::Gap => gap(config),
        Command::SweepM => sweep_m(config),
        Command::SweepAlpha => sweep_alpha(config),
        Command::Verify => verify(config),
        Command::Search => search(config),
    }
}

fn load_potential(config: &RunConfig) -> Result<Potential, CliError> {
    let potential = match &config.potential {
        None => Potential::zero(),
        Some(Value::String(text)) if text.trim_start().starts_with('{') => {
            Potential::from_json_str(text)?
        }
        Some(Value::String(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read potential file {path}: {e}")))?;
            Potential::from_json_str(&text)?
        }
        Some(value @ Value::Object(_)) => Potential::from_json(value)?,
        Some(other) => {
            return Err(CliError::Usage(format!(
                "potential must be an object or a file path, got {other}"
            )))
        }
    };
    match config.length {
        Some(length) => Ok(potential.on(Interval::new(length)?)?),
        None => Ok(potential),
    }
}

fn bc(config: &RunConfig) -> RobinPair {
    RobinPair::new(config.alpha, config.beta)
}

/// Pretty JSON with a trailing newline; refuses non-finite numbers (which
/// serialize as `null`).
fn render(value: &Value) -> Result<String, CliError> {
    fn has_null(v: &Value) -> bool {
        match v {
            Value::Null => true,
            Value::Array(items) => items.iter().any(has_null),
            Value::Object(map) => map.values().any(has_null),
            _ => false,
        }
    }
    fn positive_zero(v: &mut Value) {
        match v {
            Value::Number(n) if n.as_f64() == Some(0.0) && n.is_f64() => *v = json!(0.0),
            Value::Array(items) => items.iter_mut().for_each(positive_zero),
            Value::Object(map) => map.values_mut().for_each(positive_zero),
            _ => {}
        }
    }
    if has_null(value) {
        return Err(CliError::Engine(Error::Engine(
            "result contains a non-finite number".into(),
        )));
    }
    let mut value = value.clone();
    positive_zero(&mut value);
    Ok(serde_json::to_string_pretty(&value).expect("value serializes") + "\n")
}

fn insert(value: &mut Value, key: &str, entry: Value) {
    value
        .as_object_mut()
        .expect("object")
        .insert(key.into(), entry);
}

fn problem_json(v: &Potential, bc: &RobinPair) -> Result<Value, CliError> {
    Ok(
        json!({ "potential": v.to_json()?, "alpha": bc.alpha, "beta": bc.beta, "L": v.interval().length() }),
    )
}

fn eig(config: &RunConfig) -> Result<Artifact, CliError> {
    let v = load_potential(config)?;
    let bc = bc(config);
    let spec: Spectrum = match config.engine {
        EngineChoice::Fd => eigenpairs(&v, &bc, config.k, config.cells)?,
        EngineChoice::Shooting => shooting_spectrum(&v, &bc, config.k)?,
        EngineChoice::Transcendental => {
            gaplab::transcendental_spectrum(&v, &bc, config.k, config.cells)?.ok_or_else(|| {
                CliError::Usage(
                "transcendental engine needs a centered step m·1(0,L/2), m ≥ 0, with alpha = beta"
                    .into(),
            )
            })?
        }
        EngineChoice::Auto => {
            match gaplab::transcendental_spectrum(&v, &bc, config.k, config.cells)? {
                Some(spec) => spec,
                None => eigenpairs(&v, &bc, config.k, config.cells)?,
            }
        }
    };
    info!(
        "eig: engine = {}, N = {}, k = {}, bc = {bc}",
        spec.engine, spec.cells, config.k
    );
    for w in &spec.warnings {
        log::warn!("{w}");
    }
    match config.format {
        Format::Json => {
            let mut value = spec.to_json();
            if spec.gap().is_none() {
                value.as_object_mut().expect("object").remove("gap");
            }
            insert(&mut value, "problem", problem_json(&v, &bc)?);
            Ok(Artifact::ok(render(&value)?))
        }
        Format::Csv => {
            if spec.eigenfunctions.is_empty() {
                return Err(CliError::Usage(format!(
                    "the {} engine produces no eigenfunctions for CSV",
                    spec.engine
                )));
            }
            let mut buf = Vec::new();
            spec.write_csv(&mut buf)?;
            Ok(Artifact::ok(String::from_utf8(buf).expect("ascii csv")))
        }
    }
}

fn gap(config: &RunConfig) -> Result<Artifact, CliError> {
    let v = load_potential(config)?;
    let bc = bc(config);
    let report = gaplab::gap_with(&v, &bc, config.cells)?;
    info!(
        "gap: engine = {}, N = {}, tolerance = {:e}",
        report.engine, report.cells, report.tolerance
    );
    match config.format {
        Format::Json => {
            let mut value = report.to_json();
            insert(&mut value, "problem", problem_json(&v, &bc)?);
            Ok(Artifact::ok(render(&value)?))
        }
        Format::Csv => Ok(Artifact::ok(format!(
            "lambda1,lambda2,gap\n{:.16e},{:.16e},{:.16e}\n",
            report.lambda1, report.lambda2, report.gap
        ))),
    }
}

fn label(x: RobinParam) -> String {
    match x {
        RobinParam::Finite(a) => format!("{a}"),
        RobinParam::Dirichlet => "inf".into(),
    }
}

/// Single curves use `param,gap`; several curves prepend their label column.
fn curves_artifact(
    config: &RunConfig,
    key: &str,
    labels: Vec<Value>,
    names: Vec<String>,
    curves: Vec<SweepCurve>,
) -> Result<Artifact, CliError> {
    match config.format {
        Format::Json => {
            let items: Vec<Value> = labels
                .into_iter()
                .zip(&curves)
                .map(|(l, c)| {
                    let mut v = c.to_json();
                    insert(&mut v, key, l);
                    v
                })
                .collect();
            Ok(Artifact::ok(render(
                &json!({ "parameter": curves[0].parameter, "curves": items }),
            )?))
        }
        Format::Csv if curves.len() == 1 => {
            let mut buf = Vec::new();
            curves[0].write_csv(&mut buf)?;
            Ok(Artifact::ok(String::from_utf8(buf).expect("ascii csv")))
        }
        Format::Csv => {
            let mut body = format!("{key},param,gap\n");
            for (name, c) in names.iter().zip(&curves) {
                for (p, g) in c.grid.iter().zip(&c.gaps) {
                    body.push_str(&format!("{name},{p:.16e},{g:.16e}\n"));
                }
            }
            Ok(Artifact::ok(body))
        }
    }
}

fn sweep_m(config: &RunConfig) -> Result<Artifact, CliError> {
    let alphas = if config.alphas.is_empty() {
        vec![config.alpha]
    } else {
        config.alphas.clone()
    };
    if config.steps == 0
        || config.m_max.partial_cmp(&config.m_min) != Some(std::cmp::Ordering::Greater)
    {
        return Err(CliError::Usage(
            "sweep-m needs m-max > m-min and at least one step".into(),
        ));
    }
    let ms = uniform_points(config.m_min, config.m_max, config.steps);
    info!(
        "sweep-m: engine = transcendental, alphas = {alphas:?}, {} points on [{}, {}]",
        ms.len(),
        config.m_min,
        config.m_max
    );
    let curves = alphas
        .iter()
        .map(|&a| sweep_gap_vs_m(a, ms.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let labels = alphas.iter().map(|a| json!(a)).collect();
    let names = alphas.iter().map(|&a| label(a)).collect();
    curves_artifact(config, "alpha", labels, names, curves)
}

fn sweep_alpha(config: &RunConfig) -> Result<Artifact, CliError> {
    let ms = if config.ms.is_empty() {
        vec![0.0]
    } else {
        config.ms.clone()
    };
    if config.steps == 0
        || config.alpha_max.partial_cmp(&config.alpha_min) != Some(std::cmp::Ordering::Greater)
    {
        return Err(CliError::Usage(
            "sweep-alpha needs alpha-max > alpha-min and at least one step".into(),
        ));
    }
    let alphas = uniform_points(config.alpha_min, config.alpha_max, config.steps);
    info!(
        "sweep-alpha: engine = transcendental, ms = {ms:?}, {} points on [{}, {}]",
        alphas.len(),
        config.alpha_min,
        config.alpha_max
    );
    let curves = ms
        .iter()
        .map(|&m| sweep_gap_vs_alpha(m, alphas.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let labels = ms.iter().map(|m| json!(m)).collect();
    let names = ms.iter().map(|m| format!("{m}")).collect();
    curves_artifact(config, "m", labels, names, curves)
}

fn verify(config: &RunConfig) -> Result<Artifact, CliError> {
    info!(
        "verify: suites = {:?}, seed = {}, tolerance = {:e}",
        config.suites,
        config.seed,
        gaplab::GAP_TOLERANCE
    );
    let outcomes = suites::run_suites(&config.suites, config.seed)?;
    let pass = outcomes.iter().all(|o| o.pass);
    for o in &outcomes {
        info!(
            "{}: {} cases, {} violations",
            o.claim,
            o.cases,
            o.violations.len()
        );
    }
    let body = match config.format {
        Format::Json => render(&json!({
            "seed": config.seed,
            "pass": pass,
            "suites": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            let mut body = String::from("suite,cases,violations,rejected,pass\n");
            for o in &outcomes {
                let name = o.claim.split(':').next().unwrap_or_default();
                body.push_str(&format!(
                    "{name},{},{},{},{}\n",
                    o.cases,
                    o.violations.len(),
                    o.rejected.len(),
                    o.pass
                ));
            }
            body
        }
    };
    Ok(Artifact {
        body,
        violation: !pass,
    })
}

fn minimum_json(family: &str, m: &FamilyMinimum) -> Value {
    let mut value = json!({
        "family": family,
        "argmin": m.argmin,
        "gap": m.gap,
        "slope_at_zero": m.slope_at_zero,
        "unimodal": m.unimodal,
    });
    if let Some(w) = &m.warning {
        insert(&mut value, "warning", json!(w));
    }
    value
}

fn search(config: &RunConfig) -> Result<Artifact, CliError> {
    if config.format == Format::Csv {
        return Err(CliError::Usage("search reports JSON only".into()));
    }
    let value = match config.family {
        Family::Linear => {
            let (lo, hi) = (config.lo.unwrap_or(-5.0), config.hi.unwrap_or(5.0));
            info!("search: linear family on [{lo}, {hi}], bc = {}", bc(config));
            let mut v = minimum_json("linear", &search_linear_minimizer(&bc(config), lo, hi)?);
            insert(&mut v, "alpha", json!(config.alpha));
            insert(&mut v, "beta", json!(config.beta));
            v
        }
        Family::Step => {
            let (lo, hi) = (config.lo.unwrap_or(-5.0), config.hi.unwrap_or(10.0));
            info!("search: step family with (D, 0) on [{lo}, {hi}]");
            minimum_json("step", &search_step_minimizer_mixed_bc(lo, hi)?)
        }
        Family::Offcenter => {
            let alpha = config
                .alpha
                .value()
                .ok_or_else(|| CliError::Usage("off-centre search needs a finite alpha".into()))?;
            let interval = Interval::new(config.length.unwrap_or(std::f64::consts::PI))?;
            let t_max = config.hi.unwrap_or(1.0);
            info!(
                "search: off-centre family, alpha = {alpha}, tau = {}, t in (0, {t_max}]",
                config.tau
            );
            match find_offcenter_counterexample_on(interval, alpha, config.tau, t_max) {
                Ok(c) => json!({
                    "family": "offcenter",
                    "found": true,
                    "alpha": alpha,
                    "tau": config.tau,
                    "split": c.split,
                    "t": c.t,
                    "gap": c.gap,
                    "free_gap": c.free_gap,
                    "margin": c.margin,
                }),
                Err(Error::SearchFailure(reason)) => {
                    let value = json!({ "family": "offcenter", "found": false, "alpha": alpha, "tau": config.tau, "reason": reason });
                    return Ok(Artifact {
                        body: render(&value)?,
                        violation: true,
                    });
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    Ok(Artifact::ok(render(&value)?))
}
