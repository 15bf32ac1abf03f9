//! Command-line front end for configuration files, presets and one-off runs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use openqc::experiment::config::AngleValue;
use openqc::experiment::{
    exit_code, parse_config, run_experiment, run_sweep, ExperimentConfig, ExperimentOutcome,
    RawConfig, RawExperiment, RawOutput,
};
use openqc::Error;

#[derive(Parser, Debug)]
#[command(
    name = "simulate",
    version,
    about = "Simulate open-system dynamics with collision-model circuits"
)]
struct Cli {
    /// TOML experiment file.
    #[arg(long, conflicts_with_all = ["preset", "sweep"])]
    config: Option<PathBuf>,
    /// Built-in parameter set: fig6, fig7 or fig8.
    #[arg(long, conflicts_with = "sweep")]
    preset: Option<String>,
    /// Run several experiment files concurrently.
    #[arg(long, num_args = 1..)]
    sweep: Vec<PathBuf>,

    /// amplitude-damping, dephasing, pauli or custom-file.
    #[arg(long)]
    channel: Option<String>,
    /// markovian, non-markovian or sequential.
    #[arg(long)]
    mode: Option<String>,
    /// Markovian rotation angle, e.g. `pi/10` or `0.314`.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Comma-separated memory angles.
    #[arg(long, value_delimiter = ',')]
    thetas: Vec<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    /// Initial system state: 0, 1, + or -.
    #[arg(long, allow_hyphen_values = true)]
    initial: Option<String>,
    /// Comma-separated observables from 0, 1, +, -.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    observables: Vec<String>,
    /// Pauli probabilities px,py,pz.
    #[arg(long, value_delimiter = ',')]
    probabilities: Vec<f64>,
    /// Kraus specification file for `--channel custom-file`.
    #[arg(long)]
    channel_file: Option<String>,

    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the step circuit in text form.
    #[arg(long)]
    dump_circuit: Option<PathBuf>,
    /// Print gate and qubit counts.
    #[arg(long)]
    resource_table: bool,
}

impl Cli {
    fn has_experiment_flags(&self) -> bool {
        self.channel.is_some()
            || self.mode.is_some()
            || self.theta.is_some()
            || !self.thetas.is_empty()
            || self.k.is_some()
            || self.steps.is_some()
            || self.initial.is_some()
            || !self.observables.is_empty()
            || !self.probabilities.is_empty()
            || self.channel_file.is_some()
    }

    fn apply_outputs(&self, cfg: &mut ExperimentConfig) {
        if let Some(p) = &self.csv {
            cfg.outputs.csv = Some(p.clone());
        }
        if let Some(p) = &self.svg {
            cfg.outputs.svg = Some(p.clone());
        }
        if let Some(p) = &self.dump_circuit {
            cfg.outputs.circuit = Some(p.clone());
        }
        cfg.outputs.resource_table |= self.resource_table;
    }

    fn config_from_flags(&self) -> openqc::Result<ExperimentConfig> {
        if !self.probabilities.is_empty() && self.probabilities.len() != 3 {
            return Err(Error::Config {
                field: "probabilities".into(),
                message: format!("expected 3 values, got {}", self.probabilities.len()),
            });
        }
        let text = |s: &String| AngleValue::Text(s.clone());
        let experiment =
            (self.preset.is_none() || self.has_experiment_flags()).then(|| RawExperiment {
                channel: self.channel.clone(),
                mode: self.mode.clone(),
                theta: self.theta.as_ref().map(text),
                thetas: (!self.thetas.is_empty()).then(|| self.thetas.iter().map(text).collect()),
                k: self.k,
                steps: self.steps,
                initial: self.initial.clone(),
                initial_matrix: None,
                observables: (!self.observables.is_empty()).then(|| self.observables.clone()),
                probabilities: (self.probabilities.len() == 3).then(|| {
                    [
                        self.probabilities[0],
                        self.probabilities[1],
                        self.probabilities[2],
                    ]
                }),
                channel_file: self.channel_file.clone(),
            });
        let raw = RawConfig {
            preset: self.preset.clone(),
            experiment,
            output: Some(RawOutput::default()),
        };
        raw.resolve(Path::new("."))
    }

    fn configs(&self) -> openqc::Result<Vec<ExperimentConfig>> {
        let mut cfgs = if !self.sweep.is_empty() {
            self.sweep
                .iter()
                .map(|p| parse_config(p))
                .collect::<openqc::Result<Vec<_>>>()?
        } else if let Some(path) = &self.config {
            if self.has_experiment_flags() {
                return Err(Error::Config {
                    field: "config".into(),
                    message: "experiment flags cannot be combined with --config".into(),
                });
            }
            vec![parse_config(path)?]
        } else {
            vec![self.config_from_flags()?]
        };
        if self.sweep.is_empty() {
            for cfg in &mut cfgs {
                self.apply_outputs(cfg);
            }
        }
        Ok(cfgs)
    }
}

fn report(out: &ExperimentOutcome) {
    println!("experiment {}", out.name);
    for s in &out.series {
        let last = s.trajectory.records.last().expect("at least one record");
        let values: Vec<String> = last
            .values
            .iter()
            .map(|(n, v)| format!("{n}={v:.6}"))
            .collect();
        println!(
            "  {:<16} steps={} {} purity={:.6}",
            s.label,
            s.trajectory.step_count,
            values.join(" "),
            last.purity
        );
    }
    if let Some(table) = &out.resource_table {
        print!("{table}");
    }
    for p in &out.written {
        println!("  wrote {}", p.display());
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code(err) as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let configs = match cli.configs() {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let results = if configs.len() == 1 {
        vec![run_experiment(&configs[0])]
    } else {
        run_sweep(&configs)
    };
    let mut code = ExitCode::SUCCESS;
    for r in results {
        match r {
            Ok(out) => report(&out),
            Err(e) => code = fail(&e),
        }
    }
    code
}
