// Copyright 2026 The qmean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `qmean`: run the mean-estimation circuit from the command line.

mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use qmean::mean::{
    build_mean_circuit, classical_mean, expected_checkpoint, MeanEstimator, Mode, DEFAULT_SHOTS,
};
use qmean::qasm::QasmDocument;
use qmean::statevector::{Limits, DEFAULT_MAX_QUBITS};
use qmean::{experiments, Dataset};
use thiserror::Error;

use input::{load_dataset, InputFormat};
use report::ResultReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Output(String),
    #[error(transparent)]
    Sim(#[from] qmean::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Sim(qmean::Error::Capacity { .. }) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qmean",
    version,
    about = "Quantum mean-estimation circuit simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate the mean of a dataset by simulating the circuit.
    Estimate(EstimateArgs),
    /// Write the circuit as OpenQASM 2.0.
    Export(ExportArgs),
    /// Compare simulated intermediate states with their analytic form.
    Checkpoints(CheckpointArgs),
}

#[derive(Debug, Args)]
struct Source {
    /// Input file with one number per line or a comma-separated line (CSV), or a JSON array.
    #[arg(
        long,
        conflicts_with = "experiment",
        required_unless_present = "experiment"
    )]
    input: Option<PathBuf>,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum, requires = "input")]
    format: Option<InputFormat>,
    /// Built-in reference dataset.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
    experiment: Option<u32>,
    /// Largest register the simulator may allocate.
    #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
}

impl Source {
    fn dataset(&self) -> Result<Dataset, CliError> {
        let raw = match (&self.input, self.experiment) {
            (Some(path), _) => load_dataset(path, self.format)?,
            (None, Some(id)) => experiments::experiment(id)
                .ok_or_else(|| CliError::Input(format!("no experiment {id}")))?,
            (None, None) => {
                return Err(CliError::Input(
                    "one of --input or --experiment is required".into(),
                ))
            }
        };
        Dataset::rescale(&raw).map_err(|e| CliError::Input(e.to_string()))
    }

    fn limits(&self) -> Limits {
        Limits {
            max_qubits: self.max_qubits,
        }
    }
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = DEFAULT_SHOTS, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report the exact probability instead of sampling shots.
    #[arg(long)]
    exact: bool,
    /// Recover the sign of the mean with a second, shifted run.
    #[arg(long)]
    sign: bool,
    /// Also write the circuit as OpenQASM 2.0.
    #[arg(long)]
    qasm_out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    qasm_out: PathBuf,
}

#[derive(Debug, Args)]
struct CheckpointArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    json: bool,
}

fn write_qasm(dataset: &Dataset, path: &PathBuf) -> Result<usize, CliError> {
    let doc = QasmDocument::from_circuit(&build_mean_circuit(dataset)?)?;
    fs::write(path, doc.to_string())
        .map_err(|e| CliError::Output(format!("cannot write {}: {e}", path.display())))?;
    Ok(doc.gate_count())
}

fn cmd_estimate(args: &EstimateArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let dataset = args.source.dataset()?;
    let estimator = MeanEstimator::new(args.source.limits());
    let mode = if args.exact {
        Mode::Exact
    } else {
        Mode::Sampled {
            shots: args.shots,
            seed: args.seed,
        }
    };
    let estimate = if args.sign {
        estimator.estimate_signed(&dataset, mode)?
    } else {
        estimator.estimate(&dataset, mode)?
    };
    let estimate = estimate.with_truth(classical_mean(&dataset));
    let report = ResultReport::new(
        &dataset,
        &estimate,
        args.seed,
        start.elapsed().as_secs_f64(),
    );
    if let Some(path) = &args.qasm_out {
        write_qasm(&dataset, path)?;
    }
    if args.json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!("{report}");
    }
    Ok(())
}

fn cmd_export(args: &ExportArgs) -> Result<(), CliError> {
    let dataset = args.source.dataset()?;
    args.source.limits().check(dataset.layout().num_qubits())?;
    let gates = write_qasm(&dataset, &args.qasm_out)?;
    println!("wrote {} ({gates} gates)", args.qasm_out.display());
    Ok(())
}

fn cmd_checkpoints(args: &CheckpointArgs) -> Result<(), CliError> {
    let dataset = args.source.dataset()?;
    let snapshots = MeanEstimator::new(args.source.limits()).simulate_checkpoints(&dataset)?;
    let mut rows = serde_json::Map::new();
    for (stage, state) in &snapshots {
        let dev = expected_checkpoint(&dataset, *stage)?.max_deviation(state)?;
        if args.json {
            rows.insert(stage.to_string(), dev.into());
        } else {
            println!("{stage}  max deviation {dev:.3e}");
        }
    }
    if args.json {
        println!("{}", serde_json::Value::Object(rows));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Estimate(a) => cmd_estimate(a),
        Command::Export(a) => cmd_export(a),
        Command::Checkpoints(a) => cmd_checkpoints(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
