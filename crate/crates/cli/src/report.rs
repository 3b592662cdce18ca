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

use std::fmt;

use qmean::mean::{classical_mean, classical_mean_unpadded, MeanEstimate};
use qmean::Dataset;
use serde::Serialize;

/// Everything `estimate` reports. Serialized as a flat JSON object.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultReport {
    pub n: usize,
    pub n_index: usize,
    pub original_count: usize,
    pub scale: f64,
    pub pad_count: usize,
    pub mode: &'static str,
    pub shots: u64,
    pub seed: u64,
    pub ones_count: u64,
    pub p1: f64,
    pub magnitude: f64,
    pub signed_mean: Option<f64>,
    pub classical_mean: f64,
    pub classical_mean_unpadded: f64,
    pub epsilon: f64,
    /// Magnitude in the caller's units, `magnitude · scale`.
    pub unscaled_magnitude: f64,
    pub wall_time: f64,
}

impl ResultReport {
    pub fn new(dataset: &Dataset, estimate: &MeanEstimate, seed: u64, wall_time: f64) -> Self {
        ResultReport {
            n: dataset.len(),
            n_index: dataset.n_index(),
            original_count: dataset.original_len(),
            scale: dataset.scale(),
            pad_count: dataset.pad_count(),
            mode: if estimate.shots == 0 {
                "exact"
            } else {
                "sampled"
            },
            shots: estimate.shots,
            seed,
            ones_count: estimate.ones_count,
            p1: estimate.p1,
            magnitude: estimate.magnitude,
            signed_mean: estimate.signed_mean,
            classical_mean: estimate
                .classical_mean
                .unwrap_or_else(|| classical_mean(dataset)),
            classical_mean_unpadded: classical_mean_unpadded(dataset),
            epsilon: estimate.epsilon.unwrap_or(f64::NAN),
            unscaled_magnitude: estimate.unscaled_magnitude(dataset),
            wall_time,
        }
    }
}

impl fmt::Display for ResultReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dataset          N = {} (n_index = {}), {} input values, {} padded, scale = {}",
            self.n, self.n_index, self.original_count, self.pad_count, self.scale
        )?;
        match self.mode {
            "exact" => writeln!(f, "mode             exact")?,
            _ => writeln!(
                f,
                "mode             sampled, {} shots, seed {}, {} ones",
                self.shots, self.seed, self.ones_count
            )?,
        }
        writeln!(f, "p1               {:.12}", self.p1)?;
        writeln!(f, "|mean|           {:.12}", self.magnitude)?;
        if let Some(s) = self.signed_mean {
            writeln!(f, "signed mean      {s:.12}")?;
        }
        writeln!(f, "classical mean   {:.12}", self.classical_mean)?;
        if self.pad_count > 0 {
            writeln!(f, "unpadded mean    {:.12}", self.classical_mean_unpadded)?;
        }
        if self.scale != 1.0 {
            writeln!(f, "|mean| unscaled  {:.12}", self.unscaled_magnitude)?;
        }
        writeln!(f, "epsilon          {:.3e}", self.epsilon)?;
        write!(f, "wall time        {:.3} ms", self.wall_time * 1e3)
    }
}
