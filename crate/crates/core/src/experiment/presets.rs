//! Built-in parameter sets: `fig6`, `fig7` and `fig8`.

use std::f64::consts::PI;

use crate::circuit::MemorySpec;
use crate::error::{Error, Result};

use super::config::{ChannelChoice, ExperimentConfig, InitialState, Mode, Outputs, SeriesConfig};

pub const PRESET_NAMES: [&str; 3] = ["fig6", "fig7", "fig8"];

fn pair(
    name: &str,
    channel: ChannelChoice,
    theta: f64,
    memory: [f64; 3],
    steps: usize,
    initial: &str,
    observable: &str,
) -> Result<ExperimentConfig> {
    Ok(ExperimentConfig {
        name: name.into(),
        series: vec![
            SeriesConfig {
                label: Mode::Markovian.name().into(),
                channel: channel.clone(),
                mode: Mode::Markovian,
                theta: Some(theta),
                memory: None,
            },
            SeriesConfig {
                label: Mode::NonMarkovian.name().into(),
                channel,
                mode: Mode::NonMarkovian,
                theta: None,
                memory: Some(MemorySpec::new(memory.to_vec())?),
            },
        ],
        steps,
        initial: InitialState::Named(initial.into()),
        observables: vec![observable.into()],
        outputs: Outputs::default(),
    })
}

/// `fig6`: amplitude damping from `|1⟩`; `fig7`: dephasing from `|+⟩`;
/// `fig8`: amplitude damping with a stronger memory.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    match name {
        "fig6" => pair(
            name,
            ChannelChoice::AmplitudeDamping,
            PI / 10.0,
            [PI / 10.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0],
            50,
            "1",
            "1",
        ),
        "fig7" => pair(
            name,
            ChannelChoice::Dephasing,
            PI / 5.0,
            [PI / 5.0, PI / 4.0, PI / 2.0],
            100,
            "+",
            "+",
        ),
        "fig8" => pair(
            name,
            ChannelChoice::AmplitudeDamping,
            PI / 8.0,
            [PI / 8.0, 5.0 * PI / 6.0, PI],
            50,
            "1",
            "1",
        ),
        other => Err(Error::Config {
            field: "preset".into(),
            message: format!(
                "unknown preset `{other}` (expected {})",
                PRESET_NAMES.join(", ")
            ),
        }),
    }
}
