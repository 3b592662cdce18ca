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

//! Exact and shot-sampled simulation of a quantum mean estimator.
//!
//! A dataset of N values in [−1, 1] is amplitude-encoded into a data qubit
//! under an n = log₂N qubit index register. Two Hadamard layers around a
//! qRAM-style oracle, followed by a controlled copy onto a mean qubit and a
//! final Hadamard layer, leave the mean qubit in |1⟩ with probability μ².
//!
//! ```
//! use qmean::{encoding::Dataset, mean};
//!
//! let data = Dataset::rescale(&[0.836, -0.549, 0.615, 0.053]).unwrap();
//! let p1 = mean::exact_probability(&data).unwrap();
//! assert!((p1.sqrt() - 0.23875).abs() < 1e-12);
//! ```

pub mod encoding;
pub mod error;
pub mod experiments;
pub mod mean;
pub mod qasm;
pub mod statevector;

pub use encoding::{Dataset, EncodedAngles};
pub use error::{Error, Result};
pub use mean::{MeanEstimate, MeanEstimator, Mode};
pub use statevector::{Circuit, GateOp, QubitLayout, Stage, StateVector};
