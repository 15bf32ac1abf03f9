use std::path::PathBuf;

use crate::analysis::{resource_count, Method, ResourceReport};
use crate::circuit::{
    build_markovian_step, build_nonmarkovian_step, build_sequential_step, write_circuit,
    StepCircuit,
};
use crate::engine::{run, Observable, Trajectory};
use crate::error::{Error, Result};

use super::config::{ExperimentConfig, Mode, SeriesConfig};
use super::output::{resource_table, series_path, trajectories_svg, trajectory_csv, write_atomic};

/// Process exit code for a failed run: 2 for configuration problems, 3 for a
/// numerical invariant violation, 1 for anything else (I/O).
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Invariant { .. } => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

pub fn build_series_step(series: &SeriesConfig) -> Result<StepCircuit> {
    match series.mode {
        Mode::Markovian | Mode::NonMarkovian => {
            let kind = series.channel.builtin_kind().ok_or_else(|| Error::Config {
                field: "mode".into(),
                message: format!("{} mode needs a built-in channel", series.mode),
            })?;
            match (&series.memory, series.theta) {
                (Some(mem), _) => build_nonmarkovian_step(kind, mem),
                (None, Some(theta)) => build_markovian_step(kind, theta),
                (None, None) => Err(Error::Config {
                    field: "theta".into(),
                    message: "missing rotation angle".into(),
                }),
            }
        }
        Mode::Sequential => {
            let ch = series.channel.kraus().ok_or_else(|| Error::Config {
                field: "mode".into(),
                message: "sequential mode needs a pauli or custom-file channel".into(),
            })??;
            build_sequential_step(&ch, series.memory.as_ref())
        }
    }
}

fn series_reports(
    series: &SeriesConfig,
    step: &StepCircuit,
    steps: usize,
) -> Result<Vec<(String, ResourceReport)>> {
    let k = series.memory.as_ref().map_or(1, |m| m.k());
    Ok(match series.mode {
        Mode::Markovian | Mode::NonMarkovian => vec![(
            series.label.clone(),
            resource_count(step, steps, Method::DirectDilation, k, 2),
        )],
        Mode::Sequential => {
            let l = series
                .channel
                .kraus()
                .expect("sequential series has Kraus operators")?
                .rank();
            vec![
                (
                    series.label.clone(),
                    resource_count(step, steps, Method::Sequential, k, l),
                ),
                (
                    format!("{}/direct-dilation", series.label),
                    resource_count(step, steps, Method::DirectDilation, k, l),
                ),
            ]
        }
    })
}

#[derive(Debug, Clone)]
pub struct SeriesOutcome {
    pub label: String,
    pub step: StepCircuit,
    pub trajectory: Trajectory,
    pub reports: Vec<(String, ResourceReport)>,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub name: String,
    pub series: Vec<SeriesOutcome>,
    /// Rendered resource table when requested.
    pub resource_table: Option<String>,
    /// Files written, in order.
    pub written: Vec<PathBuf>,
}

/// Simulates every series without touching the filesystem.
pub fn simulate(cfg: &ExperimentConfig) -> Result<Vec<SeriesOutcome>> {
    let rho0 = cfg.initial.density_matrix()?;
    let observables = cfg
        .observables
        .iter()
        .map(|o| Observable::qubit(o))
        .collect::<Result<Vec<_>>>()?;
    cfg.series
        .iter()
        .map(|s| {
            let step = build_series_step(s)?;
            let trajectory = run(&step, &rho0, cfg.steps, &observables)?;
            let reports = series_reports(s, &step, cfg.steps)?;
            Ok(SeriesOutcome {
                label: s.label.clone(),
                step,
                trajectory,
                reports,
            })
        })
        .collect()
}

/// Simulates and writes every requested output. Nothing is written unless all
/// series complete without an invariant violation.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let series = simulate(cfg)?;
    let n = series.len();
    let mut written = Vec::new();
    if let Some(base) = &cfg.outputs.csv {
        for s in &series {
            let p = series_path(base, &s.label, n);
            write_atomic(&p, &trajectory_csv(&s.trajectory))?;
            written.push(p);
        }
    }
    if let Some(base) = &cfg.outputs.circuit {
        for s in &series {
            let p = series_path(base, &s.label, n);
            write_atomic(&p, &write_circuit(&s.step))?;
            written.push(p);
        }
    }
    if let Some(p) = &cfg.outputs.svg {
        let curves: Vec<(String, Trajectory)> = series
            .iter()
            .map(|s| (s.label.clone(), s.trajectory.clone()))
            .collect();
        write_atomic(p, &trajectories_svg(&cfg.name, &curves))?;
        written.push(p.clone());
    }
    let resource_table = cfg.outputs.resource_table.then(|| {
        let all: Vec<(String, ResourceReport)> = series
            .iter()
            .flat_map(|s| s.reports.iter().cloned())
            .collect();
        resource_table(&all)
    });
    Ok(ExperimentOutcome {
        name: cfg.name.clone(),
        series,
        resource_table,
        written,
    })
}

/// Runs independent experiments on scoped threads; results keep input order.
pub fn run_sweep(configs: &[ExperimentConfig]) -> Vec<Result<ExperimentOutcome>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|cfg| scope.spawn(move || run_experiment(cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(Error::Circuit("worker panicked".into())))
            })
            .collect()
    })
}
