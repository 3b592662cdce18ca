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

//! The mean-estimation circuit and the estimators built on it.
//!
//! The circuit spreads the index register with Hadamards, loads f(x) into
//! the data qubit, interferes the index register again, copies the data
//! qubit of the |0…0⟩ index branch onto the mean qubit, and applies a last
//! Hadamard layer. The mean qubit then reads |1⟩ with probability μ², where
//! μ = Σ f(x) / N.

use num_complex::Complex64;

use crate::encoding::{build_qram_oracle, Dataset};
use crate::error::{invalid, Error, Result};
use crate::statevector::{Circuit, Control, GateOp, Limits, QubitLayout, Stage, StateVector};

/// How the mean qubit is read out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Use the exact |1⟩ probability of the simulated state.
    Exact,
    /// Draw `shots` measurements from a generator seeded with `seed`.
    Sampled { shots: u64, seed: u64 },
}

/// Shots used by default, the maximum the reference experiments ran.
pub const DEFAULT_SHOTS: u64 = 8192;

#[derive(Debug, Clone, PartialEq)]
pub struct MeanEstimate {
    /// 0 in exact mode.
    pub shots: u64,
    pub ones_count: u64,
    /// Exact probability, or `ones_count / shots`.
    pub p1: f64,
    /// √p1, the estimate of |μ|.
    pub magnitude: f64,
    pub signed_mean: Option<f64>,
    pub epsilon: Option<f64>,
    pub classical_mean: Option<f64>,
}

impl MeanEstimate {
    fn from_p1(p1: f64, shots: u64, ones_count: u64) -> Self {
        MeanEstimate {
            shots,
            ones_count,
            p1,
            magnitude: p1.sqrt(),
            signed_mean: None,
            epsilon: None,
            classical_mean: None,
        }
    }

    /// Records the classical mean and the error against it. The signed
    /// estimate is compared when present, otherwise the magnitude is
    /// compared with |truth|.
    pub fn with_truth(mut self, truth: f64) -> Self {
        self.classical_mean = Some(truth);
        self.epsilon = Some(match self.signed_mean {
            Some(signed) => (signed - truth).abs(),
            None => (self.magnitude - truth.abs()).abs(),
        });
        self
    }

    /// Mean estimate in the caller's units, `magnitude · scale`.
    pub fn unscaled_magnitude(&self, dataset: &Dataset) -> f64 {
        self.magnitude * dataset.scale()
    }
}

/// The terms s = Σ f(x), ŝ = Σ √(1−f(x)²) and δ that describe the final
/// interference pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceSums {
    pub n: usize,
    pub s: f64,
    pub s_hat: f64,
}

impl InterferenceSums {
    pub fn of(dataset: &Dataset) -> Self {
        let f = dataset.values();
        InterferenceSums {
            n: f.len(),
            s: f.iter().sum(),
            s_hat: f.iter().map(|v| (1.0 - v * v).sqrt()).sum(),
        }
    }

    /// δ₀ = N − 1, δ_z = −1 for z ≠ 0.
    pub fn delta(&self, z: usize) -> f64 {
        if z == 0 {
            self.n as f64 - 1.0
        } else {
            -1.0
        }
    }
}

/// Analytically derived amplitudes at one stage of the circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckpointState {
    pub stage: Stage,
    pub amps: Vec<Complex64>,
}

impl CheckpointState {
    /// Largest per-amplitude deviation from a simulated state.
    pub fn max_deviation(&self, state: &StateVector) -> Result<f64> {
        if state.amplitudes().len() != self.amps.len() {
            return invalid("state and checkpoint have different sizes");
        }
        Ok(self
            .amps
            .iter()
            .zip(state.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Assembles the full circuit with markers after each stage.
pub fn build_mean_circuit(dataset: &Dataset) -> Result<Circuit> {
    let layout = dataset.layout();
    let mut c = Circuit::new(layout);
    hadamard_layer(&mut c)?;
    c.mark(Stage::Psi1);
    c.append(&build_qram_oracle(dataset, &layout)?)?;
    c.mark(Stage::Psi2);
    hadamard_layer(&mut c)?;
    c.mark(Stage::Psi3);
    c.push(copy_gate(&layout))?;
    c.mark(Stage::Psi4);
    hadamard_layer(&mut c)?;
    c.mark(Stage::Psi5);
    Ok(c)
}

fn hadamard_layer(c: &mut Circuit) -> Result<()> {
    for q in c.layout().index_qubits() {
        c.push(GateOp::h(q))?;
    }
    Ok(())
}

/// X on the mean qubit, open-controlled on every index qubit and
/// closed-controlled on the data qubit.
fn copy_gate(layout: &QubitLayout) -> GateOp {
    GateOp::x(layout.mean_qubit())
        .with_controls(layout.index_qubits().map(Control::open))
        .controlled_by(Control::closed(layout.data_qubit()))
}

/// Largest index register for which [`expected_checkpoint`] runs its
/// quadratic-cost transform.
pub const MAX_CHECKPOINT_INDEX_QUBITS: usize = 12;

/// Expected state at `stage`, computed from f(x) without simulating gates.
///
/// ψ₃ is a direct bitwise-dot-product sum; ψ₄ moves the (index 0, data 1)
/// amplitude onto mean = 1. For ψ₅, the last Hadamard layer undoes the
/// previous one everywhere except on that moved amplitude s/N, which gives
/// ψ₅ = ψ₂ + (s/N)·H|0⟩·(|1,1⟩ − |1,0⟩) on (data, mean).
pub fn expected_checkpoint(dataset: &Dataset, stage: Stage) -> Result<CheckpointState> {
    let layout = dataset.layout();
    if layout.n_index() > MAX_CHECKPOINT_INDEX_QUBITS {
        return Err(Error::Capacity {
            requested: layout.num_qubits(),
            limit: MAX_CHECKPOINT_INDEX_QUBITS + 2,
        });
    }
    let f = dataset.values();
    let n = f.len();
    let nf = n as f64;
    let root_n = nf.sqrt();
    let cos: Vec<f64> = f.iter().map(|v| (1.0 - v * v).sqrt()).collect();
    let mut amps = vec![0.0f64; 1 << layout.num_qubits()];

    match stage {
        Stage::Psi1 => {
            for x in 0..n {
                amps[layout.basis(x, false, false)] = 1.0 / root_n;
            }
        }
        Stage::Psi2 => {
            for x in 0..n {
                amps[layout.basis(x, false, false)] = cos[x] / root_n;
                amps[layout.basis(x, true, false)] = f[x] / root_n;
            }
        }
        Stage::Psi3 | Stage::Psi4 => {
            for x in 0..n {
                let (mut zero, mut one) = (0.0, 0.0);
                for y in 0..n {
                    let sign = if (x & y).count_ones() % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    zero += sign * cos[y];
                    one += sign * f[y];
                }
                amps[layout.basis(x, false, false)] = zero / nf;
                amps[layout.basis(x, true, false)] = one / nf;
            }
            if stage == Stage::Psi4 {
                let from = layout.basis(0, true, false);
                amps[layout.basis(0, true, true)] = amps[from];
                amps[from] = 0.0;
            }
        }
        Stage::Psi5 => {
            let s: f64 = f.iter().sum();
            let moved = s / (nf * root_n);
            for x in 0..n {
                amps[layout.basis(x, false, false)] = cos[x] / root_n;
                amps[layout.basis(x, true, false)] = f[x] / root_n - moved;
                amps[layout.basis(x, true, true)] = moved;
            }
        }
    }
    Ok(CheckpointState {
        stage,
        amps: amps.into_iter().map(|a| Complex64::new(a, 0.0)).collect(),
    })
}

/// Arithmetic mean of the encoded values over the padded length N.
pub fn classical_mean(dataset: &Dataset) -> f64 {
    dataset.values().iter().sum::<f64>() / dataset.len() as f64
}

/// Arithmetic mean of the encoded values over the caller-supplied entries.
pub fn classical_mean_unpadded(dataset: &Dataset) -> f64 {
    dataset.values().iter().sum::<f64>() / dataset.original_len() as f64
}

/// Runs mean-estimation circuits under a register size limit.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanEstimator {
    pub limits: Limits,
}

impl MeanEstimator {
    pub fn new(limits: Limits) -> Self {
        MeanEstimator { limits }
    }

    /// Final state of the circuit, starting from the ground state.
    pub fn simulate(&self, dataset: &Dataset) -> Result<StateVector> {
        let circuit = build_mean_circuit(dataset)?;
        let mut state = StateVector::ground_with_limits(circuit.layout(), self.limits)?;
        state.apply_circuit(&circuit)?;
        Ok(state)
    }

    /// Simulated states at every stage marker.
    pub fn simulate_checkpoints(&self, dataset: &Dataset) -> Result<Vec<(Stage, StateVector)>> {
        let circuit = build_mean_circuit(dataset)?;
        let mut state = StateVector::ground_with_limits(circuit.layout(), self.limits)?;
        state.apply_circuit_with_checkpoints(&circuit)
    }

    pub fn exact_probability(&self, dataset: &Dataset) -> Result<f64> {
        let state = self.simulate(dataset)?;
        state.probability_of_bit(dataset.layout().mean_qubit(), true)
    }

    pub fn estimate(&self, dataset: &Dataset, mode: Mode) -> Result<MeanEstimate> {
        let state = self.simulate(dataset)?;
        let mean_qubit = dataset.layout().mean_qubit();
        match mode {
            Mode::Exact => {
                let p1 = state.probability_of_bit(mean_qubit, true)?.clamp(0.0, 1.0);
                Ok(MeanEstimate::from_p1(p1, 0, 0))
            }
            Mode::Sampled { shots, seed } => {
                let ones = state.sample_bit(mean_qubit, shots, seed)?;
                Ok(MeanEstimate::from_p1(
                    ones as f64 / shots as f64,
                    shots,
                    ones,
                ))
            }
        }
    }

    /// Signed mean from a second run on g = (f + 1) / 2.
    ///
    /// Every g(x) is in [0, 1], so √p₁ of that run estimates μ_g ≥ 0
    /// directly, and μ_f = 2·μ_g − 1. In sampled mode the second run reuses
    /// `seed`.
    pub fn resolve_sign(&self, dataset: &Dataset, mode: Mode) -> Result<f64> {
        let shifted = self.estimate(&dataset.shifted(), mode)?;
        Ok(2.0 * shifted.magnitude - 1.0)
    }

    /// [`MeanEstimator::estimate`] with `signed_mean` filled in.
    pub fn estimate_signed(&self, dataset: &Dataset, mode: Mode) -> Result<MeanEstimate> {
        let mut est = self.estimate(dataset, mode)?;
        est.signed_mean = Some(self.resolve_sign(dataset, mode)?);
        Ok(est)
    }
}

pub fn exact_probability(dataset: &Dataset) -> Result<f64> {
    MeanEstimator::default().exact_probability(dataset)
}

pub fn estimate_mean(dataset: &Dataset, shots: u64, seed: u64) -> Result<MeanEstimate> {
    if shots == 0 {
        return invalid("shots must be at least 1");
    }
    MeanEstimator::default().estimate(dataset, Mode::Sampled { shots, seed })
}

pub fn resolve_sign(dataset: &Dataset, shots: u64, seed: u64) -> Result<f64> {
    if shots == 0 {
        return invalid("shots must be at least 1");
    }
    MeanEstimator::default().resolve_sign(dataset, Mode::Sampled { shots, seed })
}
