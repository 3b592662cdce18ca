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

//! The two reference datasets, bundled with the crate.

const EXPERIMENT_2_CSV: &str = include_str!("../data/experiment2.csv");

/// Experiment 1: four values already inside [−1, 1].
pub const EXPERIMENT_1: [f64; 4] = [0.836, -0.549, 0.615, 0.053];

/// Experiment 2: 64 values already inside [−1, 1].
pub fn experiment_2() -> Vec<f64> {
    EXPERIMENT_2_CSV
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse().expect("bundled experiment data is numeric"))
        .collect()
}

/// Raw values of a bundled experiment by number (1 or 2).
pub fn experiment(id: u32) -> Option<Vec<f64>> {
    match id {
        1 => Some(EXPERIMENT_1.to_vec()),
        2 => Some(experiment_2()),
        _ => None,
    }
}
