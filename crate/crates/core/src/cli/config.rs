//! Line-oriented `key = value` run configuration.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::floquet::{default_grid_len, KickProfile, ModelParams, PhaseSign, RotorKind};
use crate::hilbert::{rule_cutoff, BasisSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Spectrum,
    Echo,
    Wigner,
    Otoc,
    Autocorr,
    Sff,
    Localization,
    Classical,
    OracleCheck,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Spectrum => "spectrum",
            Task::Echo => "echo",
            Task::Wigner => "wigner",
            Task::Otoc => "otoc",
            Task::Autocorr => "autocorr",
            Task::Sff => "sff",
            Task::Localization => "localization",
            Task::Classical => "classical",
            Task::OracleCheck => "oracle-check",
        }
    }
}

impl FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "spectrum" => Task::Spectrum,
            "echo" => Task::Echo,
            "wigner" => Task::Wigner,
            "otoc" => Task::Otoc,
            "autocorr" => Task::Autocorr,
            "sff" => Task::Sff,
            "localization" => Task::Localization,
            "classical" => Task::Classical,
            "oracle-check" => Task::OracleCheck,
            _ => return Err(format!("unknown task `{s}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Cosine,
    Lloyd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EchoMethod {
    #[default]
    Direct,
    Eigensystem,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelConfig {
    pub kind: RotorKind,
    pub k_kick: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_free: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_free: Option<f64>,
    pub phase_sign: PhaseSign,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lloyd_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisConfig {
    pub cutoff: usize,
    pub hbar_eff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskConfig {
    pub task: Task,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_k: Option<f64>,
    pub initial_n: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_theta: Option<usize>,
    pub seed: u64,
    pub n_points: usize,
    pub echo_method: EchoMethod,
}

/// Where results go. The directory is left out of the metadata so that runs
/// written to different places stay byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputConfig {
    #[serde(skip)]
    pub path: PathBuf,
    pub format: Format,
}

/// Fully resolved run description, echoed into every output's metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub basis: BasisConfig,
    pub task: TaskConfig,
    pub output: OutputConfig,
}

pub const DEFAULT_OUTPUT_DIR: &str = "out";
pub const DEFAULT_N_POINTS: usize = 10_000;
pub const DEFAULT_ORACLE_J_MAX: usize = 20;
pub const DEFAULT_ORACLE_DELTA_K: f64 = 0.01;

const KEYS: &[(&str, &str)] = &[
    ("kind", "model"),
    ("k_kick", "model"),
    ("tau_free", "model"),
    ("phi_free", "model"),
    ("phase_sign", "model"),
    ("profile", "model"),
    ("lloyd_energy", "model"),
    ("profile_samples", "model"),
    ("cutoff", "basis"),
    ("hbar_eff", "basis"),
    ("task", "task"),
    ("j_max", "task"),
    ("delta_k", "task"),
    ("initial_n", "task"),
    ("times", "task"),
    ("n_theta", "task"),
    ("seed", "task"),
    ("n_points", "task"),
    ("echo_method", "task"),
    ("path", "output"),
    ("format", "output"),
];

struct Entries {
    map: BTreeMap<&'static str, (usize, String)>,
    /// Line of the last section header or first key, for missing-key errors.
    anchor: BTreeMap<&'static str, usize>,
}

impl Entries {
    fn raw(&self, key: &str) -> Option<&(usize, String)> {
        self.map.get(key)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.map.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|e| Error::Config { line: *line, message: format!("key `{key}`: cannot parse `{v}`: {e}") }),
        }
    }

    fn require<T: FromStr>(&self, key: &str, section: &str, why: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)?.ok_or_else(|| Error::Config {
            line: self.anchor.get(section).copied().unwrap_or(0),
            message: format!("missing required key `{key}` ({why})"),
        })
    }

    fn line(&self, key: &str) -> usize {
        self.map.get(key).map_or(0, |(l, _)| *l)
    }
}

fn parse_enum<T>(e: &Entries, key: &str, options: &[(&str, T)]) -> Result<Option<T>>
where
    T: Copy,
{
    let Some((line, v)) = e.raw(key) else { return Ok(None) };
    options.iter().find(|(name, _)| *name == v).map(|(_, t)| Some(*t)).ok_or_else(|| Error::Config {
        line: *line,
        message: format!(
            "key `{key}`: `{v}` is not one of {}",
            options.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ),
    })
}

fn tokenize(text: &str) -> Result<Entries> {
    let mut map = BTreeMap::new();
    let mut anchor = BTreeMap::new();
    let mut section: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| Error::Config { line, message: format!("malformed section header `{content}`") })?
                .trim();
            let known = KEYS.iter().find(|(_, s)| *s == name).map(|(_, s)| *s);
            let name = known.ok_or_else(|| Error::Config { line, message: format!("unknown section `[{name}]`") })?;
            anchor.insert(name, line);
            section = Some(name.to_string());
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Error::Config { line, message: format!("expected `key = value`, got `{content}`") })?;
        let (key, value) = (key.trim(), value.trim());
        let &(key, home) = KEYS
            .iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| Error::Config { line, message: format!("unknown key `{key}`") })?;
        if let Some(s) = &section {
            if s != home {
                return Err(Error::Config { line, message: format!("key `{key}` belongs in [{home}], found in [{s}]") });
            }
        }
        if value.is_empty() {
            return Err(Error::Config { line, message: format!("key `{key}` has no value") });
        }
        anchor.entry(home).or_insert(line);
        if map.insert(key, (line, value.to_string())).is_some() {
            return Err(Error::Config { line, message: format!("duplicate key `{key}`") });
        }
    }
    Ok(Entries { map, anchor })
}

/// Parses and validates a configuration, filling every default.
///
/// Keys may appear under their `[model]`, `[basis]`, `[task]` or `[output]`
/// header, or before any header.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let e = tokenize(text)?;

    let kind = parse_enum(
        &e,
        "kind",
        &[("standard", RotorKind::Standard), ("linear", RotorKind::Linear), ("generic", RotorKind::Generic)],
    )?
    .ok_or_else(|| Error::Config {
        line: e.anchor.get("model").copied().unwrap_or(0),
        message: "missing required key `kind`".into(),
    })?;
    let phase_sign =
        parse_enum(&e, "phase_sign", &[("derived", PhaseSign::Derived), ("paper", PhaseSign::Paper)])?.unwrap_or_default();
    let mut model = ModelConfig {
        kind,
        k_kick: 0.0,
        tau_free: None,
        phi_free: None,
        phase_sign,
        profile: None,
        lloyd_energy: None,
        profile_samples: None,
    };
    match kind {
        RotorKind::Standard => {
            model.k_kick = e.require("k_kick", "model", "standard rotor")?;
            model.tau_free = Some(e.require("tau_free", "model", "standard rotor")?);
        }
        RotorKind::Linear => {
            model.k_kick = e.require("k_kick", "model", "linear rotor")?;
            model.phi_free = Some(e.require("phi_free", "model", "linear rotor")?);
        }
        RotorKind::Generic => {
            let profile = parse_enum(&e, "profile", &[("cosine", ProfileKind::Cosine), ("lloyd", ProfileKind::Lloyd)])?
                .ok_or_else(|| Error::Config {
                    line: e.line("kind"),
                    message: "missing required key `profile` (generic rotor)".into(),
                })?;
            model.profile = Some(profile);
            model.k_kick = e.require("k_kick", "model", "generic rotor")?;
            model.tau_free = Some(e.require("tau_free", "model", "generic rotor")?);
            if profile == ProfileKind::Lloyd {
                model.lloyd_energy = Some(e.get("lloyd_energy")?.unwrap_or(0.0));
            }
        }
    }
    if kind != RotorKind::Linear && e.raw("phi_free").is_some() {
        return Err(Error::Config { line: e.line("phi_free"), message: "key `phi_free` applies to the linear rotor only".into() });
    }
    if kind == RotorKind::Linear && e.raw("tau_free").is_some() {
        return Err(Error::Config { line: e.line("tau_free"), message: "key `tau_free` does not apply to the linear rotor".into() });
    }

    let default_cutoff = match model.profile {
        Some(ProfileKind::Lloyd) => rule_cutoff(PI),
        _ => rule_cutoff(model.k_kick),
    };
    let basis = BasisConfig {
        cutoff: e.get("cutoff")?.unwrap_or(default_cutoff),
        hbar_eff: e.get("hbar_eff")?.unwrap_or(1.0),
    };
    let dim = 2 * basis.cutoff + 1;
    if kind == RotorKind::Generic {
        model.profile_samples = Some(e.get("profile_samples")?.unwrap_or(default_grid_len(dim)));
    }

    let task_line = e.line("task");
    let task: Task = e.require("task", "task", "selects the computation")?;
    let why = format!("task {}", task.name());
    let mut tc = TaskConfig {
        task,
        j_max: e.get("j_max")?,
        delta_k: e.get("delta_k")?,
        initial_n: e.get("initial_n")?.unwrap_or(0),
        times: None,
        n_theta: e.get("n_theta")?,
        seed: e.get("seed")?.unwrap_or(0),
        n_points: e.get("n_points")?.unwrap_or(DEFAULT_N_POINTS),
        echo_method: parse_enum(
            &e,
            "echo_method",
            &[("direct", EchoMethod::Direct), ("eigensystem", EchoMethod::Eigensystem)],
        )?
        .unwrap_or_default(),
    };
    if let Some((line, v)) = e.raw("times") {
        let parsed: std::result::Result<Vec<usize>, _> = v.split(',').map(|t| t.trim().parse::<usize>()).collect();
        tc.times = Some(parsed.map_err(|err| Error::Config {
            line: *line,
            message: format!("key `times`: expected comma-separated non-negative integers: {err}"),
        })?);
    }
    let missing = |key: &str| Error::Config { line: task_line, message: format!("missing required key `{key}` ({why})") };
    match task {
        Task::Spectrum => {}
        Task::Echo => {
            if tc.delta_k.is_none() {
                return Err(missing("delta_k"));
            }
            if tc.j_max.is_none() {
                return Err(missing("j_max"));
            }
        }
        Task::Wigner => {
            if tc.times.is_none() {
                return Err(missing("times"));
            }
            tc.n_theta.get_or_insert(2 * dim);
        }
        Task::Otoc | Task::Autocorr | Task::Sff | Task::Localization | Task::Classical => {
            if tc.j_max.is_none() {
                return Err(missing("j_max"));
            }
        }
        Task::OracleCheck => {
            tc.j_max.get_or_insert(DEFAULT_ORACLE_J_MAX);
            tc.delta_k.get_or_insert(DEFAULT_ORACLE_DELTA_K);
            if kind == RotorKind::Linear {
                tc.n_theta.get_or_insert(2 * dim);
            }
        }
    }

    let format = parse_enum(&e, "format", &[("csv", Format::Csv), ("json", Format::Json)])?.unwrap_or_default();
    let path = e.raw("path").map_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR), |(_, v)| PathBuf::from(v));
    Ok(RunConfig { model, basis, task: tc, output: OutputConfig { path, format } })
}

impl RunConfig {
    pub fn basis_spec(&self) -> Result<BasisSpec> {
        BasisSpec::new(self.basis.cutoff, self.basis.hbar_eff)
    }

    pub fn model_params(&self) -> Result<ModelParams> {
        let basis = self.basis_spec()?;
        let m = &self.model;
        let params = match m.kind {
            RotorKind::Standard => ModelParams::standard(m.k_kick, m.tau_free.expect("resolved"), basis)?,
            RotorKind::Linear => ModelParams::linear(m.k_kick, m.phi_free.expect("resolved"), basis)?,
            RotorKind::Generic => {
                let len = m.profile_samples.expect("resolved");
                let profile = match m.profile.expect("resolved") {
                    ProfileKind::Cosine => KickProfile::cosine(m.k_kick, len)?,
                    ProfileKind::Lloyd => KickProfile::lloyd(m.k_kick, m.lloyd_energy.unwrap_or(0.0), len)?,
                };
                ModelParams::generic(profile, m.tau_free.expect("resolved"), basis)?
            }
        };
        Ok(params.with_phase_sign(m.phase_sign))
    }
}
