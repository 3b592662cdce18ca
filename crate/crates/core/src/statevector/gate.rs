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

//! Gate descriptions and the in-place amplitude kernels that apply them.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Result};

/// States with fewer amplitudes than this are updated on the calling thread.
const PAR_THRESHOLD: usize = 1 << 14;
/// Number of amplitude pairs handed to one worker.
const PAR_CHUNK: usize = 1 << 12;

/// Which control value activates a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires when the control qubit is |0⟩.
    Open,
    /// Fires when the control qubit is |1⟩.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn open(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Open,
        }
    }

    pub fn closed(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Closed,
        }
    }
}

/// Single-qubit gate kinds understood by the simulator.
///
/// `Phase` is diag(1, e^{iλ}); circuits built for mean estimation never use
/// it directly, but the QASM lowering of multi-controlled X needs it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    Hadamard,
    PauliX,
    /// Rotation about Y by the given angle in radians.
    RotY(f64),
    /// Relative phase on |1⟩, in radians.
    Phase(f64),
}

impl GateKind {
    /// The 2×2 matrix in the computational basis, row-major.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let r = |v: f64| Complex64::new(v, 0.0);
        match *self {
            GateKind::Hadamard => [
                [r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2)],
                [r(FRAC_1_SQRT_2), r(-FRAC_1_SQRT_2)],
            ],
            GateKind::PauliX => [[r(0.0), r(1.0)], [r(1.0), r(0.0)]],
            GateKind::RotY(theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                [[r(c), r(-s)], [r(s), r(c)]]
            }
            GateKind::Phase(lambda) => [
                [r(1.0), r(0.0)],
                [r(0.0), Complex64::from_polar(1.0, lambda)],
            ],
        }
    }

    pub fn inverse(&self) -> GateKind {
        match *self {
            GateKind::RotY(theta) => GateKind::RotY(-theta),
            GateKind::Phase(lambda) => GateKind::Phase(-lambda),
            other => other,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::Hadamard => write!(f, "H"),
            GateKind::PauliX => write!(f, "X"),
            GateKind::RotY(theta) => write!(f, "RY({theta})"),
            GateKind::Phase(lambda) => write!(f, "P({lambda})"),
        }
    }
}

/// A single-qubit gate on `target`, optionally conditioned on other qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl GateOp {
    pub fn new(kind: GateKind, target: usize) -> Self {
        GateOp {
            kind,
            target,
            controls: Vec::new(),
        }
    }

    pub fn h(target: usize) -> Self {
        Self::new(GateKind::Hadamard, target)
    }

    pub fn x(target: usize) -> Self {
        Self::new(GateKind::PauliX, target)
    }

    pub fn ry(theta: f64, target: usize) -> Self {
        Self::new(GateKind::RotY(theta), target)
    }

    pub fn phase(lambda: f64, target: usize) -> Self {
        Self::new(GateKind::Phase(lambda), target)
    }

    pub fn controlled_by(mut self, control: Control) -> Self {
        self.controls.push(control);
        self
    }

    pub fn with_controls(mut self, controls: impl IntoIterator<Item = Control>) -> Self {
        self.controls.extend(controls);
        self
    }

    pub fn inverse(&self) -> GateOp {
        GateOp {
            kind: self.kind.inverse(),
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    /// Checks qubit positions against a register of `num_qubits`.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if self.target >= num_qubits {
            return invalid(format!(
                "target qubit {} out of range for {num_qubits} qubits",
                self.target
            ));
        }
        let mut seen = 1usize << self.target;
        for c in &self.controls {
            if c.qubit >= num_qubits {
                return invalid(format!(
                    "control qubit {} out of range for {num_qubits} qubits",
                    c.qubit
                ));
            }
            let bit = 1usize << c.qubit;
            if seen & bit != 0 {
                return invalid(format!("qubit {} used twice in one gate", c.qubit));
            }
            seen |= bit;
        }
        Ok(())
    }

    /// (mask, required value) over basis indices for the control condition.
    pub(crate) fn control_condition(&self) -> (usize, usize) {
        self.controls.iter().fold((0, 0), |(mask, want), c| {
            let bit = 1usize << c.qubit;
            match c.polarity {
                Polarity::Open => (mask | bit, want),
                Polarity::Closed => (mask | bit, want | bit),
            }
        })
    }
}

/// A uniformly controlled RY: when the control register reads `sel`, the
/// target is rotated by `angles[sel]`. Bit `j` of `sel` is the value of
/// `controls[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplexedRy {
    pub controls: Vec<usize>,
    pub target: usize,
    pub angles: Vec<f64>,
}

impl MultiplexedRy {
    pub fn new(controls: Vec<usize>, target: usize, angles: Vec<f64>) -> Result<Self> {
        if angles.len() != 1usize << controls.len() {
            return invalid(format!(
                "multiplexer over {} controls needs {} angles, got {}",
                controls.len(),
                1usize << controls.len(),
                angles.len()
            ));
        }
        Ok(MultiplexedRy {
            controls,
            target,
            angles,
        })
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let probe = GateOp::ry(0.0, self.target)
            .with_controls(self.controls.iter().map(|&q| Control::closed(q)));
        probe.validate(num_qubits)
    }

    /// One controlled RY per selector value, with polarities spelling out
    /// the selector's bit pattern. Zero angles are kept so the expansion
    /// always has `2^k` gates.
    pub fn expand(&self) -> Vec<GateOp> {
        self.angles
            .iter()
            .enumerate()
            .map(|(sel, &theta)| {
                let controls = self.controls.iter().enumerate().map(|(j, &q)| {
                    if (sel >> j) & 1 == 1 {
                        Control::closed(q)
                    } else {
                        Control::open(q)
                    }
                });
                GateOp::ry(theta, self.target).with_controls(controls)
            })
            .collect()
    }

    /// Selector value encoded in basis index `k`.
    #[inline]
    fn selector(&self, k: usize, contiguous: Option<usize>) -> usize {
        match contiguous {
            Some(mask) => k & mask,
            None => self
                .controls
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &q)| acc | (((k >> q) & 1) << j)),
        }
    }

    /// `Some(mask)` when the controls are qubits 0, 1, ..., k-1 in order.
    fn contiguous_mask(&self) -> Option<usize> {
        self.controls
            .iter()
            .enumerate()
            .all(|(j, &q)| j == q)
            .then(|| (1usize << self.controls.len()) - 1)
    }
}

/// Calls `f(k, a_k, a_{k|t})` for every basis index `k` with the target bit
/// clear. Pairs are independent, so the parallel split yields the same bits
/// as a sequential sweep.
pub(crate) fn for_each_pair<F>(amps: &mut [Complex64], target: usize, f: F)
where
    F: Fn(usize, &mut Complex64, &mut Complex64) + Sync + Send,
{
    let half = 1usize << target;
    let block = half << 1;
    let sweep = |base: usize, lo: &mut [Complex64], hi: &mut [Complex64]| {
        for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            f(base + j, a, b);
        }
    };

    if amps.len() < PAR_THRESHOLD {
        for (bi, chunk) in amps.chunks_mut(block).enumerate() {
            let (lo, hi) = chunk.split_at_mut(half);
            sweep(bi * block, lo, hi);
        }
    } else if half >= PAR_CHUNK {
        amps.par_chunks_mut(block)
            .enumerate()
            .for_each(|(bi, chunk)| {
                let (lo, hi) = chunk.split_at_mut(half);
                lo.par_chunks_mut(PAR_CHUNK)
                    .zip(hi.par_chunks_mut(PAR_CHUNK))
                    .enumerate()
                    .for_each(|(ci, (l, h))| sweep(bi * block + ci * PAR_CHUNK, l, h));
            });
    } else {
        let group = block * (PAR_CHUNK / half);
        amps.par_chunks_mut(group)
            .enumerate()
            .for_each(|(gi, chunk)| {
                for (bi, pair) in chunk.chunks_mut(block).enumerate() {
                    let (lo, hi) = pair.split_at_mut(half);
                    sweep(gi * group + bi * block, lo, hi);
                }
            });
    }
}

pub(crate) fn apply_gate_in_place(amps: &mut [Complex64], op: &GateOp) {
    let (mask, want) = op.control_condition();
    let active = move |k: usize| k & mask == want;
    match op.kind {
        GateKind::Hadamard => for_each_pair(amps, op.target, |k, a, b| {
            if active(k) {
                let (x, y) = (*a, *b);
                *a = (x + y) * FRAC_1_SQRT_2;
                *b = (x - y) * FRAC_1_SQRT_2;
            }
        }),
        GateKind::PauliX => for_each_pair(amps, op.target, |k, a, b| {
            if active(k) {
                std::mem::swap(a, b);
            }
        }),
        GateKind::RotY(theta) => {
            let (s, c) = (theta / 2.0).sin_cos();
            for_each_pair(amps, op.target, |k, a, b| {
                if active(k) {
                    let (x, y) = (*a, *b);
                    *a = x * c - y * s;
                    *b = x * s + y * c;
                }
            })
        }
        GateKind::Phase(lambda) => {
            let w = Complex64::from_polar(1.0, lambda);
            for_each_pair(amps, op.target, |k, _, b| {
                if active(k) {
                    *b *= w;
                }
            })
        }
    }
}

/// Applies the whole multiplexer in one sweep over the amplitudes.
pub(crate) fn apply_multiplexed_in_place(amps: &mut [Complex64], mux: &MultiplexedRy) {
    let trig: Vec<(f64, f64)> = mux.angles.iter().map(|t| (t / 2.0).sin_cos()).collect();
    let contiguous = mux.contiguous_mask();
    for_each_pair(amps, mux.target, |k, a, b| {
        let (s, c) = trig[mux.selector(k, contiguous)];
        if s != 0.0 || c != 1.0 {
            let (x, y) = (*a, *b);
            *a = x * c - y * s;
            *b = x * s + y * c;
        }
    });
}
