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

//! Test-only oracles that share no code path with the simulator kernels.

#![allow(dead_code)]

use num_complex::Complex64;
use qmean::statevector::{GateOp, Polarity, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| c(if i == j { 1.0 } else { 0.0 }))
                .collect()
        })
        .collect()
}

/// ⊗ of per-qubit 2×2 factors, qubit `q-1` leftmost so qubit 0 is the
/// least significant index bit.
fn tensor(q: usize, factor: impl Fn(usize) -> Matrix) -> Matrix {
    (0..q)
        .rev()
        .fold(identity(1), |acc, qubit| kron(&acc, &factor(qubit)))
}

/// Gate matrices written out by hand.
fn single(op: &GateOp) -> Matrix {
    use qmean::statevector::GateKind::*;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match op.kind {
        Hadamard => vec![vec![c(s), c(s)], vec![c(s), c(-s)]],
        PauliX => vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]],
        RotY(t) => vec![
            vec![c((t / 2.0).cos()), c(-(t / 2.0).sin())],
            vec![c((t / 2.0).sin()), c((t / 2.0).cos())],
        ],
        Phase(l) => vec![
            vec![c(1.0), c(0.0)],
            vec![c(0.0), Complex64::from_polar(1.0, l)],
        ],
    }
}

/// Dense 2^q × 2^q matrix of a (controlled) gate:
/// U = I − Π + Π·(G on target), with Π the projector onto the firing
/// control pattern.
pub fn dense_gate(op: &GateOp, q: usize) -> Matrix {
    let proj = |qubit: usize| -> Matrix {
        match op.controls.iter().find(|ctl| ctl.qubit == qubit) {
            Some(ctl) if ctl.polarity == Polarity::Open => {
                vec![vec![c(1.0), c(0.0)], vec![c(0.0), c(0.0)]]
            }
            Some(_) => vec![vec![c(0.0), c(0.0)], vec![c(0.0), c(1.0)]],
            None => identity(2),
        }
    };
    let pi = tensor(q, proj);
    let g = tensor(q, |qubit| {
        if qubit == op.target {
            single(op)
        } else {
            identity(2)
        }
    });
    let pig = matmul(&pi, &g);
    let dim = 1 << q;
    let id = identity(dim);
    (0..dim)
        .map(|i| (0..dim).map(|j| id[i][j] - pi[i][j] + pig[i][j]).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn matvec(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn random_state(q: usize, rng: &mut impl Rng) -> StateVector {
    let mut amps: Vec<Complex64> = (0..1 << q)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    StateVector::from_amplitudes(amps).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_values(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// max |a_k − e^{iφ} b_k| with φ fixed by the largest amplitude of `b`.
pub fn max_diff_up_to_phase(a: &[Complex64], b: &[Complex64]) -> f64 {
    let (k, _) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).unwrap())
        .unwrap();
    let phase = if b[k].norm() > 0.0 && a[k].norm() > 0.0 {
        a[k] / b[k] / (a[k] / b[k]).norm()
    } else {
        c(1.0)
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

/// Classical mean over the padded length, computed independently.
pub fn brute_mean(values: &[f64]) -> f64 {
    let n = values.len().next_power_of_two().max(2);
    values.iter().sum::<f64>() / n as f64
}
