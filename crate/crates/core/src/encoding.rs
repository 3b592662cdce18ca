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

//! Amplitude encoding of a dataset and the qRAM oracle that loads it.
//!
//! Each value f(x) ∈ [−1, 1] becomes the single-qubit state
//! √(1−f(x)²)|0⟩ + f(x)|1⟩, produced by RY(2·asin f(x)) acting on |0⟩. The
//! oracle conditions that rotation on the index register reading `x`. In a
//! qRAM model this is one query; the simulator pays one fused pass over the
//! amplitudes, and the expanded gate-level form costs N controlled rotations.

use crate::error::{invalid, Result};
use crate::statevector::{Circuit, Limits, MultiplexedRy, QubitLayout};

/// Input values together with their encodable, power-of-two padded form.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    raw: Vec<f64>,
    f: Vec<f64>,
    scale: f64,
    n_index: usize,
    pad_count: usize,
}

impl Dataset {
    /// Rescales `raw` into [−1, 1] and zero-pads it to a power of two.
    ///
    /// Values are divided by max|raw| only when that exceeds 1, so data that
    /// already fits is encoded unchanged. At least two slots are always
    /// produced, since the index register needs one qubit.
    pub fn rescale(raw: &[f64]) -> Result<Dataset> {
        if raw.is_empty() {
            return invalid("dataset is empty");
        }
        if let Some(pos) = raw.iter().position(|v| !v.is_finite()) {
            return invalid(format!(
                "value at position {pos} is not finite ({})",
                raw[pos]
            ));
        }
        let max_abs = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let scale = if max_abs > 1.0 { max_abs } else { 1.0 };
        let len = raw.len().next_power_of_two().max(2);
        let mut f: Vec<f64> = raw.iter().map(|v| (v / scale).clamp(-1.0, 1.0)).collect();
        f.resize(len, 0.0);
        Ok(Dataset {
            raw: raw.to_vec(),
            f,
            scale,
            n_index: len.trailing_zeros() as usize,
            pad_count: len - raw.len(),
        })
    }

    /// Wraps values that are already in [−1, 1] with power-of-two length.
    pub fn from_encoded(f: Vec<f64>) -> Result<Dataset> {
        if f.len() < 2 || !f.len().is_power_of_two() {
            return invalid(format!(
                "encoded length {} is not a power of two ≥ 2",
                f.len()
            ));
        }
        if let Some(pos) = f.iter().position(|v| !(-1.0..=1.0).contains(v)) {
            return invalid(format!(
                "encoded value at position {pos} is outside [-1, 1] ({})",
                f[pos]
            ));
        }
        Ok(Dataset {
            raw: f.clone(),
            scale: 1.0,
            n_index: f.len().trailing_zeros() as usize,
            pad_count: 0,
            f,
        })
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    /// Encoded values, including padding.
    pub fn values(&self) -> &[f64] {
        &self.f
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn n_index(&self) -> usize {
        self.n_index
    }

    pub fn pad_count(&self) -> usize {
        self.pad_count
    }

    /// Padded length N.
    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// Number of caller-supplied values.
    pub fn original_len(&self) -> usize {
        self.f.len() - self.pad_count
    }

    pub fn layout(&self) -> QubitLayout {
        QubitLayout::new(self.n_index).expect("dataset always has at least one index qubit")
    }

    /// g(x) = (f(x) + 1) / 2 over all N slots, padding included. The mean
    /// of g is (μ_f + 1) / 2 and never negative.
    pub fn shifted(&self) -> Dataset {
        let g = self.f.iter().map(|v| (v + 1.0) / 2.0).collect();
        Dataset::from_encoded(g).expect("shift keeps values in [0, 1]")
    }
}

/// Rotation angles θ_x = 2·asin f(x), in [−π, π].
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedAngles {
    pub theta: Vec<f64>,
}

pub fn angles_of(dataset: &Dataset) -> EncodedAngles {
    EncodedAngles {
        theta: dataset.values().iter().map(|f| 2.0 * f.asin()).collect(),
    }
}

/// Oracle fragment mapping |x⟩|0⟩ to |x⟩(√(1−f(x)²)|0⟩ + f(x)|1⟩).
///
/// The fragment holds one fused multiplexer over the index register; call
/// [`Circuit::expanded`] for the equivalent list of controlled rotations.
pub fn build_qram_oracle(dataset: &Dataset, layout: &QubitLayout) -> Result<Circuit> {
    if layout.n_index() != dataset.n_index() {
        return invalid(format!(
            "dataset needs {} index qubits, layout has {}",
            dataset.n_index(),
            layout.n_index()
        ));
    }
    let mux = MultiplexedRy::new(
        layout.index_qubits().collect(),
        layout.data_qubit(),
        angles_of(dataset).theta,
    )?;
    let mut c = Circuit::new(*layout);
    c.push(mux)?;
    Ok(c)
}

/// Builds the oracle's dense matrix U and checks U†U = I within 1e-10.
pub fn oracle_unitarity_check(dataset: &Dataset) -> Result<bool> {
    let layout = dataset.layout();
    Limits {
        max_qubits: Circuit::MAX_UNITARY_QUBITS,
    }
    .check(layout.num_qubits())?;
    let u = build_qram_oracle(dataset, &layout)?.unitary()?;
    let dim = u.len();
    for i in 0..dim {
        for j in 0..dim {
            let dot: num_complex::Complex64 = (0..dim).map(|k| u[k][i].conj() * u[k][j]).sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            if (dot.re - expected).abs() > 1e-10 || dot.im.abs() > 1e-10 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
