use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::channels::file::toml_error;
use crate::channels::{load_channel_file, pauli_channel, KrausChannel};
use crate::circuit::{ChannelKind, MemorySpec};
use crate::error::{Error, Result};
use crate::experiment::presets;
use crate::qmath::{c, re, ComplexMatrix, DensityMatrix, Layout, C64};

/// Which channel family an experiment simulates.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelChoice {
    AmplitudeDamping,
    Dephasing,
    /// Pauli channel with probabilities `(px, py, pz)`.
    Pauli([f64; 3]),
    /// Channel loaded from a specification file.
    Custom {
        path: PathBuf,
        channel: KrausChannel,
    },
}

impl ChannelChoice {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelChoice::AmplitudeDamping => "amplitude-damping",
            ChannelChoice::Dephasing => "dephasing",
            ChannelChoice::Pauli(_) => "pauli",
            ChannelChoice::Custom { .. } => "custom-file",
        }
    }

    pub fn builtin_kind(&self) -> Option<ChannelKind> {
        match self {
            ChannelChoice::AmplitudeDamping => Some(ChannelKind::AmplitudeDamping),
            ChannelChoice::Dephasing => Some(ChannelKind::Dephasing),
            _ => None,
        }
    }

    /// Kraus channel for the Pauli and file-backed choices.
    pub fn kraus(&self) -> Option<Result<KrausChannel>> {
        match self {
            ChannelChoice::Pauli([px, py, pz]) => Some(pauli_channel(*px, *py, *pz)),
            ChannelChoice::Custom { channel, .. } => Some(Ok(channel.clone())),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Markovian,
    NonMarkovian,
    Sequential,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Markovian => "markovian",
            Mode::NonMarkovian => "non-markovian",
            Mode::Sequential => "sequential",
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "markovian" => Ok(Mode::Markovian),
            "non-markovian" => Ok(Mode::NonMarkovian),
            "sequential" => Ok(Mode::Sequential),
            other => Err(format!(
                "unknown mode `{other}` (expected markovian, non-markovian or sequential)"
            )),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One trajectory to compute: channel, circuit mode and angles.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesConfig {
    pub label: String,
    pub channel: ChannelChoice,
    pub mode: Mode,
    /// Rotation angle of the Markovian step.
    pub theta: Option<f64>,
    /// Memory angles `θ¹..θᵏ`.
    pub memory: Option<MemorySpec>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outputs {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub circuit: Option<PathBuf>,
    pub resource_table: bool,
}

/// A validated experiment: one or more series sharing the step count,
/// initial state and observables.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub series: Vec<SeriesConfig>,
    pub steps: usize,
    pub initial: InitialState,
    pub observables: Vec<String>,
    pub outputs: Outputs,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Named(String),
    Matrix(ComplexMatrix),
}

impl InitialState {
    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        let layout = Layout::qubits(&["q"])?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            InitialState::Named(n) => match n.as_str() {
                "0" => DensityMatrix::basis(0, layout),
                "1" => DensityMatrix::basis(1, layout),
                "+" => DensityMatrix::pure(&[re(s), re(s)], layout),
                "-" => DensityMatrix::pure(&[re(s), re(-s)], layout),
                other => Err(Error::Config {
                    field: "initial".into(),
                    message: format!("unknown state `{other}` (expected 0, 1, + or -)"),
                }),
            },
            InitialState::Matrix(m) => {
                DensityMatrix::new(m.clone(), layout).map_err(|e| Error::Config {
                    field: "initial_matrix".into(),
                    message: e.to_string(),
                })
            }
        }
    }
}

/// Parses `pi/10`, `2pi/3`, `5*pi/6`, `pi`, `-pi/4` or a plain decimal.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
    let bad = || format!("cannot parse angle `{s}`");
    let Some(idx) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let coeff = t[..idx].trim_end_matches('*');
    let coeff = match coeff {
        "" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = &t[idx + 2..];
    let denom = if rest.is_empty() {
        1.0
    } else {
        rest.strip_prefix('/')
            .ok_or_else(bad)?
            .parse::<f64>()
            .map_err(|_| bad())?
    };
    if denom == 0.0 {
        return Err(bad());
    }
    Ok(coeff * PI / denom)
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AngleValue {
    Number(f64),
    Text(String),
}

impl AngleValue {
    fn resolve(&self, field: &str) -> Result<f64> {
        match self {
            AngleValue::Number(x) => Ok(*x),
            AngleValue::Text(s) => parse_angle(s).map_err(|message| Error::Config {
                field: field.into(),
                message,
            }),
        }
    }
}

/// Raw `[experiment]` section; also filled from command-line flags.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawExperiment {
    pub channel: Option<String>,
    pub mode: Option<String>,
    pub theta: Option<AngleValue>,
    pub thetas: Option<Vec<AngleValue>>,
    pub k: Option<usize>,
    pub steps: Option<usize>,
    pub initial: Option<String>,
    /// Row-major `[re, im]` pairs of a 2×2 density matrix.
    pub initial_matrix: Option<Vec<[f64; 2]>>,
    pub observables: Option<Vec<String>>,
    pub probabilities: Option<[f64; 3]>,
    pub channel_file: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawOutput {
    pub csv: Option<String>,
    pub svg: Option<String>,
    pub circuit: Option<String>,
    pub resource_table: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub preset: Option<String>,
    pub experiment: Option<RawExperiment>,
    pub output: Option<RawOutput>,
}

fn field_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        message: message.into(),
    }
}

impl RawConfig {
    /// Validates and fills defaults. Relative channel-file and output paths
    /// resolve against `base_dir`.
    pub fn resolve(&self, base_dir: &Path) -> Result<ExperimentConfig> {
        let outputs = self.output.clone().unwrap_or_default();
        let outputs = Outputs {
            csv: outputs.csv.map(|p| base_dir.join(p)),
            svg: outputs.svg.map(|p| base_dir.join(p)),
            circuit: outputs.circuit.map(|p| base_dir.join(p)),
            resource_table: outputs.resource_table.unwrap_or(false),
        };
        match (&self.preset, &self.experiment) {
            (Some(_), Some(_)) => Err(field_err(
                "preset",
                "a preset cannot be combined with an [experiment] section",
            )),
            (Some(name), None) => {
                let mut cfg = presets::preset(name)?;
                cfg.outputs = outputs;
                Ok(cfg)
            }
            (None, None) => Err(field_err(
                "experiment",
                "missing [experiment] section or preset",
            )),
            (None, Some(exp)) => resolve_experiment(exp, base_dir, outputs),
        }
    }
}

fn resolve_experiment(
    exp: &RawExperiment,
    base_dir: &Path,
    outputs: Outputs,
) -> Result<ExperimentConfig> {
    let channel_name = exp
        .channel
        .as_deref()
        .ok_or_else(|| field_err("channel", "required"))?;
    let channel = match channel_name {
        "amplitude-damping" => ChannelChoice::AmplitudeDamping,
        "dephasing" => ChannelChoice::Dephasing,
        "pauli" => {
            let p = exp
                .probabilities
                .ok_or_else(|| field_err("probabilities", "required for channel = \"pauli\""))?;
            pauli_channel(p[0], p[1], p[2]).map_err(|e| field_err("probabilities", e.to_string()))?;
            ChannelChoice::Pauli(p)
        }
        "custom-file" => {
            let rel = exp
                .channel_file
                .as_deref()
                .ok_or_else(|| field_err("channel_file", "required for channel = \"custom-file\""))?;
            let path = base_dir.join(rel);
            let channel =
                load_channel_file(&path).map_err(|e| field_err("channel_file", e.to_string()))?;
            ChannelChoice::Custom { path, channel }
        }
        other => {
            return Err(field_err(
                "channel",
                format!("unknown channel `{other}` (expected amplitude-damping, dephasing, pauli or custom-file)"),
            ))
        }
    };
    if channel_name != "pauli" && exp.probabilities.is_some() {
        return Err(field_err(
            "probabilities",
            "only valid for channel = \"pauli\"",
        ));
    }
    if channel_name != "custom-file" && exp.channel_file.is_some() {
        return Err(field_err(
            "channel_file",
            "only valid for channel = \"custom-file\"",
        ));
    }

    let mode: Mode = exp
        .mode
        .as_deref()
        .ok_or_else(|| field_err("mode", "required"))?
        .parse()
        .map_err(|m: String| field_err("mode", m))?;

    let theta = exp.theta.as_ref().map(|t| t.resolve("theta")).transpose()?;
    let thetas = exp
        .thetas
        .as_ref()
        .map(|ts| {
            ts.iter()
                .map(|t| t.resolve("thetas"))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    if let (Some(k), Some(ts)) = (exp.k, &thetas) {
        if ts.len() != k {
            return Err(field_err(
                "thetas",
                format!("has {} angles but k = {k}", ts.len()),
            ));
        }
    }
    if exp.k.is_some() && thetas.is_none() {
        return Err(field_err("thetas", "required when k is given"));
    }

    let (theta, memory) = match mode {
        Mode::Markovian => {
            if channel.builtin_kind().is_none() {
                return Err(field_err(
                    "mode",
                    "markovian mode needs channel amplitude-damping or dephasing; use mode = \"sequential\" for pauli/custom-file",
                ));
            }
            if thetas.is_some() {
                return Err(field_err(
                    "thetas",
                    "not used in markovian mode (use theta)",
                ));
            }
            let t = theta.ok_or_else(|| field_err("theta", "required in markovian mode"))?;
            check_angle("theta", t)?;
            (Some(t), None)
        }
        Mode::NonMarkovian => {
            if channel.builtin_kind().is_none() {
                return Err(field_err(
                    "mode",
                    "non-markovian mode needs channel amplitude-damping or dephasing",
                ));
            }
            if theta.is_some() {
                return Err(field_err(
                    "theta",
                    "not used in non-markovian mode (use thetas)",
                ));
            }
            let ts = thetas.ok_or_else(|| field_err("thetas", "required in non-markovian mode"))?;
            if ts.len() < 2 {
                return Err(field_err(
                    "thetas",
                    "non-markovian mode needs k >= 2 angles",
                ));
            }
            let mem = MemorySpec::new(ts).map_err(|e| field_err("thetas", e.to_string()))?;
            (None, Some(mem))
        }
        Mode::Sequential => {
            if channel.builtin_kind().is_some() {
                return Err(field_err(
                    "mode",
                    "sequential mode needs channel = \"pauli\" or \"custom-file\"",
                ));
            }
            if theta.is_some() {
                return Err(field_err("theta", "not used in sequential mode"));
            }
            let mem = thetas
                .map(|ts| MemorySpec::new(ts).map_err(|e| field_err("thetas", e.to_string())))
                .transpose()?;
            (None, mem)
        }
    };

    let steps = exp.steps.unwrap_or(match channel {
        ChannelChoice::Dephasing => 100,
        _ => 50,
    });
    if steps == 0 {
        return Err(field_err("steps", "must be at least 1"));
    }

    let initial = match (&exp.initial, &exp.initial_matrix) {
        (Some(_), Some(_)) => {
            return Err(field_err(
                "initial_matrix",
                "give either initial or initial_matrix",
            ))
        }
        (Some(n), None) => InitialState::Named(n.clone()),
        (None, Some(entries)) => {
            let vals: Vec<C64> = entries.iter().map(|[r, i]| c(*r, *i)).collect();
            let m = ComplexMatrix::from_row_major(2, &vals)
                .map_err(|e| field_err("initial_matrix", e.to_string()))?;
            InitialState::Matrix(m)
        }
        (None, None) => InitialState::Named(
            match channel {
                ChannelChoice::AmplitudeDamping => "1",
                _ => "+",
            }
            .into(),
        ),
    };
    initial.density_matrix()?;

    let observables = exp.observables.clone().unwrap_or_else(|| match channel {
        ChannelChoice::AmplitudeDamping => vec!["1".into()],
        ChannelChoice::Dephasing => vec!["+".into()],
        _ => vec!["0".into(), "+".into()],
    });
    if observables.is_empty() {
        return Err(field_err(
            "observables",
            "at least one observable is required",
        ));
    }
    if let Some(bad) = observables
        .iter()
        .find(|o| !["0", "1", "+", "-"].contains(&o.as_str()))
    {
        return Err(field_err(
            "observables",
            format!("unknown observable `{bad}` (expected 0, 1, + or -)"),
        ));
    }

    let label = mode.name().to_string();
    Ok(ExperimentConfig {
        name: format!("{}-{}", channel.name(), mode.name()),
        series: vec![SeriesConfig {
            label,
            channel,
            mode,
            theta,
            memory,
        }],
        steps,
        initial,
        observables,
        outputs,
    })
}

fn check_angle(field: &str, t: f64) -> Result<()> {
    if (0.0..2.0 * PI).contains(&t) {
        Ok(())
    } else {
        Err(field_err(field, format!("angle {t} outside [0, 2π)")))
    }
}

/// First line whose key is `field` (1-based).
fn locate_field(text: &str, field: &str) -> Option<usize> {
    text.lines()
        .position(|l| {
            let l = l.trim_start();
            l.strip_prefix(field)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map(|i| i + 1)
}

/// Parses configuration text. Validation failures are reported with the line
/// of the offending key when it appears in the text.
pub fn parse_config_str(text: &str, base_dir: &Path) -> Result<ExperimentConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| toml_error(text, &e))?;
    raw.resolve(base_dir).map_err(|e| match e {
        Error::Config { field, message } => match locate_field(text, &field) {
            Some(line) => Error::Parse {
                line,
                message: format!("invalid field `{field}`: {message}"),
            },
            None => Error::Config { field, message },
        },
        other => other,
    })
}

pub fn parse_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        field: "config".into(),
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_config_str(&text, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ExperimentConfig> {
        parse_config_str(text, Path::new("."))
    }

    #[test]
    fn angle_forms() {
        assert!((parse_angle("pi/10").unwrap() - PI / 10.0).abs() < 1e-15);
        assert!((parse_angle("2pi/3").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((parse_angle("5*pi/6").unwrap() - 5.0 * PI / 6.0).abs() < 1e-15);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("tau").is_err());
        assert!(parse_angle("pi*2").is_err());
    }

    #[test]
    fn minimal_file_gets_defaults() {
        let cfg = parse(
            "[experiment]\nchannel = \"amplitude-damping\"\nmode = \"markovian\"\ntheta = \"pi/10\"\nsteps = 20\n",
        )
        .unwrap();
        assert_eq!(cfg.steps, 20);
        assert_eq!(cfg.initial, InitialState::Named("1".into()));
        assert_eq!(cfg.observables, vec!["1".to_string()]);
        assert_eq!(cfg.series.len(), 1);
        assert_eq!(cfg.series[0].theta, Some(PI / 10.0));
        assert_eq!(cfg.outputs, Outputs::default());

        let d = parse("[experiment]\nchannel = \"dephasing\"\nmode = \"markovian\"\ntheta = 0.5\n")
            .unwrap();
        assert_eq!(d.steps, 100);
        assert_eq!(d.initial, InitialState::Named("+".into()));
    }

    #[test]
    fn thetas_length_mismatch_names_field() {
        let err = parse(
            "[experiment]\nchannel = \"dephasing\"\nmode = \"non-markovian\"\nk = 3\nthetas = [\"pi/5\", \"pi/4\"]\n",
        )
        .unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 5);
                assert!(message.contains("`thetas`"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected_with_line() {
        let err =
            parse("[experiment]\nchannel = \"dephasing\"\nmode = \"markovian\"\ntheat = 0.1\n")
                .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = parse("[experiment]\nchannel = \"dephasing\"\nmode = \n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn constraint_violations() {
        let bad = [
            ("[experiment]\nchannel = \"amplitude-damping\"\nmode = \"sequential\"\n", "mode"),
            ("[experiment]\nchannel = \"pauli\"\nmode = \"markovian\"\ntheta = 0.1\nprobabilities = [0.1, 0.1, 0.1]\n", "mode"),
            ("[experiment]\nchannel = \"dephasing\"\nmode = \"non-markovian\"\nthetas = [0.1]\n", "thetas"),
            ("[experiment]\nchannel = \"dephasing\"\nmode = \"markovian\"\ntheta = 7.0\n", "theta"),
            ("[experiment]\nchannel = \"dephasing\"\nmode = \"markovian\"\ntheta = 0.1\ninitial = \"x\"\n", "initial"),
            ("[experiment]\nchannel = \"dephasing\"\nmode = \"markovian\"\ntheta = 0.1\nobservables = [\"2\"]\n", "observables"),
            ("[experiment]\nchannel = \"pauli\"\nmode = \"sequential\"\nprobabilities = [0.5, 0.5, 0.5]\n", "probabilities"),
            ("[experiment]\nchannel = \"dephasing\"\nmode = \"markovian\"\ntheta = 0.1\nsteps = 0\n", "steps"),
        ];
        for (text, field) in bad {
            match parse(text) {
                Err(Error::Parse { message, .. }) => {
                    assert!(message.contains(&format!("`{field}`")), "{text}: {message}")
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn explicit_initial_matrix() {
        let cfg = parse(
            "[experiment]\nchannel = \"dephasing\"\nmode = \"markovian\"\ntheta = 0.1\ninitial_matrix = [[0.5, 0], [0.5, 0], [0.5, 0], [0.5, 0]]\n",
        )
        .unwrap();
        let rho = cfg.initial.density_matrix().unwrap();
        assert!((rho.matrix().get(0, 1).re - 0.5).abs() < 1e-15);
        let err = parse(
            "[experiment]\nchannel = \"dephasing\"\nmode = \"markovian\"\ntheta = 0.1\ninitial_matrix = [[2, 0], [0, 0], [0, 0], [0, 0]]\n",
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err:?}");
    }

    #[test]
    fn preset_expands() {
        let cfg = parse("preset = \"fig6\"\n[output]\ncsv = \"out.csv\"\n").unwrap();
        assert_eq!(cfg.series.len(), 2);
        assert_eq!(cfg.steps, 50);
        let nm = cfg.series[1].memory.as_ref().unwrap();
        assert_eq!(nm.thetas(), &[PI / 10.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0]);
        assert_eq!(cfg.outputs.csv, Some(Path::new(".").join("out.csv")));
        assert!(parse("preset = \"fig9\"\n").is_err());
        assert!(parse("preset = \"fig6\"\n[experiment]\nchannel = \"dephasing\"\n").is_err());
    }
}
