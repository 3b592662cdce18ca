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

//! Dense state-vector simulation.
//!
//! A register of `q` qubits is stored as `2^q` complex amplitudes. Qubit `i`
//! is bit `i` of the basis index, so qubit 0 is the least significant bit.
//! Gates are applied in place to pairs of amplitudes that differ only in the
//! target bit; full matrices are never built.

mod circuit;
mod gate;

pub use circuit::{Circuit, Instruction, QubitLayout, Stage};
pub use gate::{Control, GateKind, GateOp, MultiplexedRy, Polarity};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};

/// Default cap on register size: 2^24 amplitudes, 256 MiB.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Upper bound on the register size a simulation may allocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_qubits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl Limits {
    pub fn check(&self, num_qubits: usize) -> Result<()> {
        // The second test guards `1 << num_qubits`.
        if num_qubits > self.max_qubits || num_qubits >= usize::BITS as usize {
            return Err(Error::Capacity {
                requested: num_qubits,
                limit: self.max_qubits,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0…0⟩ on `num_qubits` qubits under the default limits.
    pub fn new(num_qubits: usize) -> Result<Self> {
        Self::with_limits(num_qubits, Limits::default())
    }

    pub fn with_limits(num_qubits: usize, limits: Limits) -> Result<Self> {
        if num_qubits == 0 {
            return invalid("a state needs at least one qubit");
        }
        limits.check(num_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// Ground state for a mean-estimation register layout.
    pub fn ground(layout: &QubitLayout) -> Result<Self> {
        Self::ground_with_limits(layout, Limits::default())
    }

    pub fn ground_with_limits(layout: &QubitLayout, limits: Limits) -> Result<Self> {
        Self::with_limits(layout.num_qubits(), limits)
    }

    /// Wraps an explicit amplitude vector. The length must be a power of two
    /// (at least 2) and the vector must be normalized to within 1e-10.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return invalid(format!("amplitude count {len} is not a power of two ≥ 2"));
        }
        let state = StateVector {
            num_qubits: len.trailing_zeros() as usize,
            amps,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return invalid(format!("amplitudes have squared norm {norm}, expected 1"));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .par_iter()
            .with_min_len(1 << 12)
            .map(|a| a.norm_sqr())
            .sum()
    }

    pub fn apply_gate(&mut self, op: &GateOp) -> Result<()> {
        op.validate(self.num_qubits)?;
        gate::apply_gate_in_place(&mut self.amps, op);
        Ok(())
    }

    /// Applies a uniformly controlled RY in a single pass.
    pub fn apply_multiplexed(&mut self, mux: &MultiplexedRy) -> Result<()> {
        mux.validate(self.num_qubits)?;
        gate::apply_multiplexed_in_place(&mut self.amps, mux);
        Ok(())
    }

    /// Probability that measuring `qubit` yields `value`.
    pub fn probability_of_bit(&self, qubit: usize, value: bool) -> Result<f64> {
        if qubit >= self.num_qubits {
            return invalid(format!(
                "qubit {qubit} out of range for {} qubits",
                self.num_qubits
            ));
        }
        let want = usize::from(value) << qubit;
        let p = self
            .amps
            .par_iter()
            .with_min_len(1 << 12)
            .enumerate()
            .filter(|(k, _)| k & (1 << qubit) == want)
            .map(|(_, a)| a.norm_sqr())
            .sum::<f64>();
        Ok(p)
    }

    /// Number of |1⟩ outcomes in `shots` independent measurements of `qubit`.
    ///
    /// The count is one draw from Binomial(shots, p₁), using a ChaCha8
    /// stream seeded with `seed` via `SeedableRng::seed_from_u64`. The result
    /// depends only on the state, `qubit`, `shots` and `seed`.
    pub fn sample_bit(&self, qubit: usize, shots: u64, seed: u64) -> Result<u64> {
        if shots == 0 {
            return invalid("shots must be at least 1");
        }
        let p1 = self.probability_of_bit(qubit, true)?.clamp(0.0, 1.0);
        let dist = Binomial::new(shots, p1).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(dist.sample(&mut rng))
    }
}
