use std::f64::consts::PI;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use robin_gap::RobinParam;

/// Subcommand selected by a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Eig,
    Gap,
    SweepM,
    SweepAlpha,
    Verify,
    Search,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Engine requested by `eig`; `auto` uses the transcendental engine for
/// centered steps with a symmetric condition and the grid engine otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum EngineChoice {
    Auto,
    #[default]
    Fd,
    Shooting,
    Transcendental,
}

/// One-parameter family searched by `search`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `a ↦ Λ(ax, (α, β))`.
    #[default]
    Linear,
    /// `m ↦ Λ(m·1₍₀,L/2₎, (D, 0))`.
    Step,
    /// `t ↦ Λ(t·1₍τ,L/2₎, α)` against the free gap.
    Offcenter,
}

/// Everything a run needs. Flags and `--config` files both produce one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: Command,
    /// Inline potential object, or a path to a JSON file holding one.
    #[serde(default)]
    pub potential: Option<Value>,
    #[serde(default = "neumann")]
    pub alpha: RobinParam,
    #[serde(default = "neumann")]
    pub beta: RobinParam,
    /// Interval length; overrides an `L` inside the potential when given.
    #[serde(default, rename = "L")]
    pub length: Option<f64>,
    #[serde(default = "default_cells", rename = "N")]
    pub cells: usize,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub engine: EngineChoice,
    /// Curves of `sweep-m`.
    #[serde(default)]
    pub alphas: Vec<RobinParam>,
    #[serde(default)]
    pub m_min: f64,
    #[serde(default = "default_m_max")]
    pub m_max: f64,
    /// Curves of `sweep-alpha`.
    #[serde(default)]
    pub ms: Vec<f64>,
    #[serde(default = "default_alpha_min")]
    pub alpha_min: f64,
    #[serde(default = "default_alpha_max")]
    pub alpha_max: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_suites")]
    pub suites: Vec<String>,
    #[serde(default)]
    pub family: Family,
    #[serde(default)]
    pub lo: Option<f64>,
    #[serde(default)]
    pub hi: Option<f64>,
    #[serde(default = "default_tau")]
    pub tau: f64,
}

fn neumann() -> RobinParam {
    RobinParam::neumann()
}
fn default_cells() -> usize {
    robin_gap::solver::DEFAULT_CELLS
}
fn default_k() -> usize {
    2
}
fn default_seed() -> u64 {
    7
}
fn default_m_max() -> f64 {
    30.0
}
fn default_alpha_min() -> f64 {
    -6.0
}
fn default_alpha_max() -> f64 {
    6.0
}
fn default_steps() -> usize {
    600
}
fn default_suites() -> Vec<String> {
    vec!["all".into()]
}
fn default_tau() -> f64 {
    -PI / 4.0
}

impl RunConfig {
    /// Defaults for `command`.
    pub fn new(command: Command) -> Self {
        serde_json::from_value(serde_json::json!({ "command": command }))
            .expect("defaults deserialize")
    }
}
