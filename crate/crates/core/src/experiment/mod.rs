//! Configuration-driven experiments: parse a TOML file or a preset, simulate
//! every series, and write CSV, SVG, circuit dumps and resource tables.

pub mod config;
pub mod output;
pub mod presets;
pub mod runner;

pub use config::{
    parse_angle, parse_config, parse_config_str, ChannelChoice, ExperimentConfig, InitialState,
    Mode, Outputs, RawConfig, RawExperiment, RawOutput, SeriesConfig,
};
pub use output::{resource_table, trajectories_svg, trajectory_csv, write_atomic};
pub use presets::{preset, PRESET_NAMES};
pub use runner::{
    build_series_step, exit_code, run_experiment, run_sweep, simulate, ExperimentOutcome,
    SeriesOutcome,
};
