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

//! Properties of the encoder and the mean-estimation circuit.

mod common;

use common::*;
use proptest::prelude::*;
use qmean::encoding::{build_qram_oracle, Dataset};
use qmean::mean::{self, classical_mean, expected_checkpoint, MeanEstimator, Mode};
use qmean::statevector::{GateOp, StateVector};
use rand::Rng;

fn dataset_strategy(max_index: u32) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_index).prop_flat_map(|n| proptest::collection::vec(-1.0f64..=1.0, 1usize << n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probability_is_squared_mean(values in dataset_strategy(10)) {
        let d = Dataset::rescale(&values).unwrap();
        let p = mean::exact_probability(&d).unwrap();
        prop_assert!((p - brute_mean(&values).powi(2)).abs() < 1e-10);
    }

    #[test]
    fn checkpoints_follow_analytic_states(values in dataset_strategy(5)) {
        let d = Dataset::rescale(&values).unwrap();
        for (stage, state) in MeanEstimator::default().simulate_checkpoints(&d).unwrap() {
            let dev = expected_checkpoint(&d, stage).unwrap().max_deviation(&state).unwrap();
            prop_assert!(dev < 1e-10, "{} deviates by {}", stage, dev);
        }
    }

    #[test]
    fn fused_oracle_equals_expanded_rotations(values in dataset_strategy(6)) {
        let d = Dataset::rescale(&values).unwrap();
        let layout = d.layout();
        let oracle = build_qram_oracle(&d, &layout).unwrap();
        let mut start = StateVector::ground(&layout).unwrap();
        for q in layout.index_qubits() {
            start.apply_gate(&GateOp::h(q)).unwrap();
        }
        let mut fused = start.clone();
        fused.apply_circuit(&oracle).unwrap();
        let mut expanded = start;
        expanded.apply_circuit(&oracle.expanded()).unwrap();
        prop_assert!(max_diff(fused.amplitudes(), expanded.amplitudes()) < 1e-12);
    }

    #[test]
    fn each_index_loads_its_value(values in dataset_strategy(4), pick in any::<prop::sample::Index>()) {
        let d = Dataset::rescale(&values).unwrap();
        let layout = d.layout();
        let x = pick.index(d.len());
        let mut amps = vec![num_complex::Complex64::new(0.0, 0.0); 1 << layout.num_qubits()];
        amps[layout.basis(x, false, false)] = num_complex::Complex64::new(1.0, 0.0);
        let mut s = StateVector::from_amplitudes(amps).unwrap();
        s.apply_circuit(&build_qram_oracle(&d, &layout).unwrap()).unwrap();
        let f = d.values()[x];
        prop_assert!((s.amplitudes()[layout.basis(x, false, false)].re - (1.0 - f * f).sqrt()).abs() < 1e-12);
        prop_assert!((s.amplitudes()[layout.basis(x, true, false)].re - f).abs() < 1e-12);
        prop_assert!(s.amplitudes()[layout.basis(x, false, false)].re >= 0.0);
    }

    #[test]
    fn rescale_is_idempotent_on_encoded_data(values in dataset_strategy(6)) {
        let once = Dataset::rescale(&values).unwrap();
        let twice = Dataset::rescale(once.values()).unwrap();
        prop_assert_eq!(once.values(), twice.values());
        prop_assert_eq!(twice.scale(), 1.0);
        prop_assert_eq!(twice.pad_count(), 0);
    }

    #[test]
    fn rescaled_values_respect_dataset_invariants(raw in proptest::collection::vec(-50.0f64..50.0, 1..40)) {
        let d = Dataset::rescale(&raw).unwrap();
        prop_assert!(d.values().iter().all(|v| (-1.0..=1.0).contains(v)));
        prop_assert!(d.len().is_power_of_two());
        prop_assert_eq!(d.len(), 1 << d.n_index());
        prop_assert!(d.values()[raw.len()..].iter().all(|v| *v == 0.0));
        let max = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert_eq!(d.scale(), if max > 1.0 { max } else { 1.0 });
        let expected = raw.iter().sum::<f64>() / (d.scale() * d.len() as f64);
        prop_assert!((classical_mean(&d) - expected).abs() < 1e-12);
    }

    #[test]
    fn scaling_raw_data_leaves_probability_alone(raw in proptest::collection::vec(-5.0f64..5.0, 2..17), k in 1.5f64..20.0) {
        let max = raw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assume!(max > 1.0);
        let base = Dataset::rescale(&raw).unwrap();
        let scaled_raw: Vec<f64> = raw.iter().map(|v| v * k).collect();
        let scaled = Dataset::rescale(&scaled_raw).unwrap();
        let p_base = mean::exact_probability(&base).unwrap();
        let p_scaled = mean::exact_probability(&scaled).unwrap();
        prop_assert!((p_base - p_scaled).abs() < 1e-12);
        let est = MeanEstimator::default().estimate(&scaled, Mode::Exact).unwrap();
        let raw_mean = scaled_raw.iter().sum::<f64>() / scaled.len() as f64;
        prop_assert!((est.unscaled_magnitude(&scaled) - raw_mean.abs()).abs() < 1e-9 * scaled.scale());
    }
}

#[test]
fn sampled_probability_converges() {
    let d = Dataset::rescale(&qmean::experiments::EXPERIMENT_1).unwrap();
    let p = mean::exact_probability(&d).unwrap();
    let seeds = 200u64;
    for shots in [1024u64, 8192, 65536] {
        let sigma = (p * (1.0 - p) / shots as f64).sqrt();
        let mut total = 0.0;
        for seed in 0..seeds {
            let est = mean::estimate_mean(&d, shots, seed).unwrap();
            assert!(
                (est.p1 - p).abs() < 5.0 * sigma,
                "shots {shots}, seed {seed}: {}",
                est.p1
            );
            total += est.p1;
        }
        let avg = total / seeds as f64;
        assert!(
            (avg - p).abs() < 3.0 * sigma / (seeds as f64).sqrt(),
            "shots {shots}: mean p̂ {avg}"
        );
    }
}

#[test]
fn sign_agrees_when_mean_is_well_separated() {
    let mut rng = rng(99);
    let est = MeanEstimator::default();
    let mut checked = 0;
    while checked < 40 {
        let n = 1 << rng.random_range(1..6);
        let values = random_values(n, &mut rng);
        let d = Dataset::rescale(&values).unwrap();
        let mu = classical_mean(&d);
        let g = (mu + 1.0) / 2.0;
        let sigma = ((g * g * (1.0 - g * g)) / 8192.0).sqrt() / g;
        if mu.abs() <= 5.0 * sigma {
            continue;
        }
        checked += 1;
        let signed = est
            .resolve_sign(
                &d,
                Mode::Sampled {
                    shots: 8192,
                    seed: checked,
                },
            )
            .unwrap();
        assert_eq!(signed.signum(), mu.signum(), "μ = {mu}, resolved {signed}");
    }
}
