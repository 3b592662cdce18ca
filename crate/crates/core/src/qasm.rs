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

//! OpenQASM 2.0 export.
//!
//! Circuits are first lowered to the gate set `h`, `x`, `cx`, `ccx`, `ry`
//! and `u1`, all declared by `qelib1.inc`, and then printed one statement
//! per line. The lowered gate list is kept as [`GateOp`]s so it can be run
//! through the simulator and compared with the original circuit.
//!
//! Lowering rules:
//! * open controls become closed controls conjugated by `x`;
//! * X with three or more controls becomes `h`, a multi-controlled phase of
//!   π over all involved qubits, `h`;
//! * a multi-controlled phase is a product of parity phases, one per
//!   non-empty qubit subset, with the parities accumulated by `cx` along a
//!   Gray-code walk;
//! * controlled RY(θ) becomes `ry(θ/2)`, C^kX, `ry(−θ/2)`, C^kX;
//! * a fused multiplexer becomes the Gray-code chain of `ry` and `cx`, with
//!   angles from a Walsh–Hadamard transform of the selector angles.
//!
//! No ancillas are used. Real gates alone cannot realize C^kX exactly on
//! four or more qubits (every such gate has determinant +1 there, while
//! C^kX has −1), hence the `u1` phases.

use std::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::statevector::{
    Circuit, Control, GateKind, GateOp, Instruction, MultiplexedRy, Polarity,
};

/// A lowered circuit ready to be printed as OpenQASM 2.0.
#[derive(Debug, Clone, PartialEq)]
pub struct QasmDocument {
    num_qubits: usize,
    gates: Vec<GateOp>,
    measured: usize,
}

impl QasmDocument {
    /// Lowers `circuit`; the mean qubit of its layout is the one measured.
    pub fn from_circuit(circuit: &Circuit) -> Result<Self> {
        let mut gates = Vec::new();
        for op in circuit.ops() {
            match op {
                Instruction::Gate(g) => lower_gate(g, &mut gates)?,
                Instruction::Multiplexed(m) => lower_multiplexer(m, &mut gates),
            }
        }
        Ok(QasmDocument {
            num_qubits: circuit.num_qubits(),
            gates,
            measured: circuit.layout().mean_qubit(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// The lowered gates, each of which maps to exactly one statement.
    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// The lowered gates as a circuit over the same register.
    pub fn to_circuit(&self, template: &Circuit) -> Result<Circuit> {
        let mut c = Circuit::new(*template.layout());
        for g in &self.gates {
            c.push(g.clone())?;
        }
        Ok(c)
    }
}

/// Renders `circuit` as OpenQASM 2.0 text.
pub fn export_qasm(circuit: &Circuit) -> Result<String> {
    Ok(QasmDocument::from_circuit(circuit)?.to_string())
}

fn angle(v: f64) -> String {
    // 17 significant digits round-trip any f64.
    format!("{v:.16e}")
}

impl fmt::Display for QasmDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OPENQASM 2.0;")?;
        writeln!(f, "include \"qelib1.inc\";")?;
        writeln!(f, "qreg q[{}];", self.num_qubits)?;
        writeln!(f, "creg c[1];")?;
        let mut line = String::new();
        for g in &self.gates {
            line.clear();
            let controls: Vec<usize> = g.controls.iter().map(|c| c.qubit).collect();
            match (g.kind, controls.as_slice()) {
                (GateKind::Hadamard, []) => write!(line, "h q[{}];", g.target)?,
                (GateKind::PauliX, []) => write!(line, "x q[{}];", g.target)?,
                (GateKind::PauliX, [a]) => write!(line, "cx q[{a}],q[{}];", g.target)?,
                (GateKind::PauliX, [a, b]) => write!(line, "ccx q[{a}],q[{b}],q[{}];", g.target)?,
                (GateKind::RotY(t), []) => write!(line, "ry({}) q[{}];", angle(t), g.target)?,
                (GateKind::Phase(l), []) => write!(line, "u1({}) q[{}];", angle(l), g.target)?,
                _ => unreachable!("lowering emits only elementary gates"),
            }
            writeln!(f, "{line}")?;
        }
        writeln!(f, "measure q[{}] -> c[0];", self.measured)
    }
}

fn lower_gate(g: &GateOp, out: &mut Vec<GateOp>) -> Result<()> {
    if g.kind == GateKind::Hadamard && !g.controls.is_empty() {
        return Err(Error::Export("controlled Hadamard is not supported".into()));
    }
    let flips: Vec<usize> = g
        .controls
        .iter()
        .filter(|c| c.polarity == Polarity::Open)
        .map(|c| c.qubit)
        .collect();
    out.extend(flips.iter().map(|&q| GateOp::x(q)));
    let controls: Vec<usize> = g.controls.iter().map(|c| c.qubit).collect();
    match g.kind {
        GateKind::Hadamard => out.push(GateOp::h(g.target)),
        GateKind::PauliX => mcx(&controls, g.target, out),
        GateKind::RotY(theta) => {
            if controls.is_empty() {
                out.push(GateOp::ry(theta, g.target));
            } else {
                out.push(GateOp::ry(theta / 2.0, g.target));
                mcx(&controls, g.target, out);
                out.push(GateOp::ry(-theta / 2.0, g.target));
                mcx(&controls, g.target, out);
            }
        }
        GateKind::Phase(lambda) => {
            let mut qubits = controls;
            qubits.push(g.target);
            mcphase(lambda, &qubits, out);
        }
    }
    out.extend(flips.iter().map(|&q| GateOp::x(q)));
    Ok(())
}

fn cx(control: usize, target: usize) -> GateOp {
    GateOp::x(target).controlled_by(Control::closed(control))
}

fn mcx(controls: &[usize], target: usize, out: &mut Vec<GateOp>) {
    match controls.len() {
        0..=2 => {
            out.push(GateOp::x(target).with_controls(controls.iter().map(|&q| Control::closed(q))))
        }
        _ => {
            out.push(GateOp::h(target));
            let mut qubits = controls.to_vec();
            qubits.push(target);
            mcphase(std::f64::consts::PI, &qubits, out);
            out.push(GateOp::h(target));
        }
    }
}

/// Phase e^{iλ} on the all-ones state of `qubits`, using
/// ∏ x_j = 2^{1−m} Σ_{S≠∅} (−1)^{|S|+1} ⊕_{j∈S} x_j.
fn mcphase(lambda: f64, qubits: &[usize], out: &mut Vec<GateOp>) {
    let m = qubits.len();
    let unit = lambda / (1u64 << (m - 1)) as f64;
    // Subsets whose highest member is qubits[acc], walked in Gray-code order
    // over the members below it. The accumulator holds the subset parity.
    for acc in (0..m).rev() {
        let lower = &qubits[..acc];
        let target = qubits[acc];
        let count = 1usize << acc;
        let mut prev = 0usize;
        for j in 0..count {
            let gray = j ^ (j >> 1);
            let changed = gray ^ prev;
            if changed != 0 {
                out.push(cx(lower[changed.trailing_zeros() as usize], target));
            }
            prev = gray;
            let size = gray.count_ones() + 1;
            let sign = if size % 2 == 1 { 1.0 } else { -1.0 };
            out.push(GateOp::phase(sign * unit, target));
        }
        if prev != 0 {
            out.push(cx(lower[prev.trailing_zeros() as usize], target));
        }
    }
}

fn lower_multiplexer(mux: &MultiplexedRy, out: &mut Vec<GateOp>) {
    let k = mux.controls.len();
    if k == 0 {
        out.push(GateOp::ry(mux.angles[0], mux.target));
        return;
    }
    let alpha = gray_chain_angles(&mux.angles);
    let count = 1usize << k;
    for (j, a) in alpha.iter().enumerate() {
        let gray = j ^ (j >> 1);
        let next = (j + 1) % count;
        let bit = (gray ^ (next ^ (next >> 1))).trailing_zeros() as usize;
        out.push(GateOp::ry(*a, mux.target));
        out.push(cx(mux.controls[bit], mux.target));
    }
}

/// α_j = 2^{−k} Σ_sel (−1)^{popcount(sel & g_j)} θ_sel with g_j the j-th
/// Gray code, via an in-place fast Walsh–Hadamard transform.
fn gray_chain_angles(theta: &[f64]) -> Vec<f64> {
    let n = theta.len();
    let mut w = theta.to_vec();
    let mut h = 1;
    while h < n {
        for block in w.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    (0..n).map(|j| w[j ^ (j >> 1)] / n as f64).collect()
}
