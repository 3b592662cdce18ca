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
use std::ops::Range;
use std::str::FromStr;

use num_complex::Complex64;

use super::gate::{GateOp, MultiplexedRy};
use super::StateVector;
use crate::error::{invalid, Error, Result};

/// Register layout of the mean-estimation circuit.
///
/// The index register holds the `n_index` least-significant qubits, the
/// data qubit sits at position `n_index` and the mean qubit at
/// `n_index + 1`, so basis index `b = mean << (n+1) | data << n | x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitLayout {
    n_index: usize,
}

impl QubitLayout {
    pub fn new(n_index: usize) -> Result<Self> {
        if n_index == 0 {
            return invalid("index register needs at least one qubit");
        }
        Ok(QubitLayout { n_index })
    }

    pub fn n_index(&self) -> usize {
        self.n_index
    }

    /// Number of index values, N = 2^n.
    pub fn index_len(&self) -> usize {
        1 << self.n_index
    }

    pub fn index_qubits(&self) -> Range<usize> {
        0..self.n_index
    }

    pub fn data_qubit(&self) -> usize {
        self.n_index
    }

    pub fn mean_qubit(&self) -> usize {
        self.n_index + 1
    }

    pub fn num_qubits(&self) -> usize {
        self.n_index + 2
    }

    pub fn basis(&self, x: usize, data: bool, mean: bool) -> usize {
        debug_assert!(x < self.index_len());
        (usize::from(mean) << (self.n_index + 1)) | (usize::from(data) << self.n_index) | x
    }
}

/// Named intermediate states of the mean-estimation circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    /// Uniform superposition over the index register.
    Psi1,
    /// After the qRAM oracle.
    Psi2,
    /// After the second Hadamard layer.
    Psi3,
    /// After copying the index-zero data branch to the mean qubit.
    Psi4,
    /// After the final Hadamard layer.
    Psi5,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Psi1,
        Stage::Psi2,
        Stage::Psi3,
        Stage::Psi4,
        Stage::Psi5,
    ];
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self as usize + 1;
        write!(f, "psi{n}")
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psi1" | "1" => Ok(Stage::Psi1),
            "psi2" | "2" => Ok(Stage::Psi2),
            "psi3" | "3" => Ok(Stage::Psi3),
            "psi4" | "4" => Ok(Stage::Psi4),
            "psi5" | "5" => Ok(Stage::Psi5),
            other => invalid(format!("unknown stage {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Gate(GateOp),
    /// Fused uniformly controlled rotation; see [`MultiplexedRy::expand`]
    /// for the equivalent gate-by-gate form.
    Multiplexed(MultiplexedRy),
}

impl Instruction {
    fn validate(&self, num_qubits: usize) -> Result<()> {
        match self {
            Instruction::Gate(op) => op.validate(num_qubits),
            Instruction::Multiplexed(mux) => mux.validate(num_qubits),
        }
    }
}

impl From<GateOp> for Instruction {
    fn from(op: GateOp) -> Self {
        Instruction::Gate(op)
    }
}

impl From<MultiplexedRy> for Instruction {
    fn from(mux: MultiplexedRy) -> Self {
        Instruction::Multiplexed(mux)
    }
}

/// An ordered instruction list over a [`QubitLayout`], with optional stage
/// markers. A marker at position `i` refers to the state after the first
/// `i` instructions.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    layout: QubitLayout,
    ops: Vec<Instruction>,
    checkpoints: Vec<(usize, Stage)>,
}

impl Circuit {
    pub fn new(layout: QubitLayout) -> Self {
        Circuit {
            layout,
            ops: Vec::new(),
            checkpoints: Vec::new(),
        }
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn num_qubits(&self) -> usize {
        self.layout.num_qubits()
    }

    pub fn ops(&self) -> &[Instruction] {
        &self.ops
    }

    pub fn checkpoints(&self) -> &[(usize, Stage)] {
        &self.checkpoints
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn push(&mut self, op: impl Into<Instruction>) -> Result<&mut Self> {
        let op = op.into();
        op.validate(self.num_qubits())?;
        self.ops.push(op);
        Ok(self)
    }

    /// Marks the current end of the circuit as `stage`.
    pub fn mark(&mut self, stage: Stage) -> &mut Self {
        self.checkpoints.push((self.ops.len(), stage));
        self
    }

    /// Appends another circuit over the same layout, shifting its markers.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.layout != self.layout {
            return invalid("cannot append a circuit with a different layout");
        }
        let offset = self.ops.len();
        self.ops.extend(other.ops.iter().cloned());
        self.checkpoints
            .extend(other.checkpoints.iter().map(|&(i, s)| (i + offset, s)));
        Ok(self)
    }

    /// The same circuit with every multiplexer replaced by its per-selector
    /// controlled rotations. Markers are moved to the matching positions.
    pub fn expanded(&self) -> Circuit {
        let mut out = Circuit::new(self.layout);
        let mut marks = self.checkpoints.iter().peekable();
        for (i, op) in self.ops.iter().enumerate() {
            while let Some(&(_, stage)) = marks.next_if(|(at, _)| *at == i) {
                out.checkpoints.push((out.ops.len(), stage));
            }
            match op {
                Instruction::Gate(g) => out.ops.push(Instruction::Gate(g.clone())),
                Instruction::Multiplexed(m) => out
                    .ops
                    .extend(m.expand().into_iter().map(Instruction::Gate)),
            }
        }
        for &(_, stage) in marks {
            out.checkpoints.push((out.ops.len(), stage));
        }
        out
    }

    /// Dense unitary of the circuit, `u[row][col]`, built column by column
    /// from basis-state runs. Limited to [`Circuit::MAX_UNITARY_QUBITS`].
    pub fn unitary(&self) -> Result<Vec<Vec<Complex64>>> {
        let q = self.num_qubits();
        if q > Self::MAX_UNITARY_QUBITS {
            return Err(Error::Capacity {
                requested: q,
                limit: Self::MAX_UNITARY_QUBITS,
            });
        }
        let dim = 1usize << q;
        let mut u = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[col] = Complex64::new(1.0, 0.0);
            let mut s = StateVector::from_amplitudes(amps)?;
            s.apply_circuit(self)?;
            for (row, a) in s.amplitudes().iter().enumerate() {
                u[row][col] = *a;
            }
        }
        Ok(u)
    }

    pub const MAX_UNITARY_QUBITS: usize = 10;
}

impl StateVector {
    pub fn apply_instruction(&mut self, op: &Instruction) -> Result<()> {
        match op {
            Instruction::Gate(g) => self.apply_gate(g),
            Instruction::Multiplexed(m) => self.apply_multiplexed(m),
        }
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        self.check_layout(circuit)?;
        circuit
            .ops
            .iter()
            .try_for_each(|op| self.apply_instruction(op))
    }

    /// Runs `circuit` and returns a copy of the state at each marker.
    pub fn apply_circuit_with_checkpoints(
        &mut self,
        circuit: &Circuit,
    ) -> Result<Vec<(Stage, StateVector)>> {
        self.check_layout(circuit)?;
        let mut snaps = Vec::with_capacity(circuit.checkpoints.len());
        let mut marks = circuit.checkpoints.iter().peekable();
        for (i, op) in circuit.ops.iter().enumerate() {
            while let Some(&(_, stage)) = marks.next_if(|(at, _)| *at == i) {
                snaps.push((stage, self.clone()));
            }
            self.apply_instruction(op)?;
        }
        for &(_, stage) in marks {
            snaps.push((stage, self.clone()));
        }
        Ok(snaps)
    }

    fn check_layout(&self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return invalid(format!(
                "circuit spans {} qubits but the state has {}",
                circuit.num_qubits(),
                self.num_qubits
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::{Control, GateOp};

    #[test]
    fn layout_bit_positions() {
        let l = QubitLayout::new(3).unwrap();
        assert_eq!(l.num_qubits(), 5);
        assert_eq!(l.data_qubit(), 3);
        assert_eq!(l.mean_qubit(), 4);
        assert_eq!(l.basis(5, true, false), 0b01101);
        assert_eq!(l.basis(2, false, true), 0b10010);
        assert!(QubitLayout::new(0).is_err());
    }

    #[test]
    fn stage_names_round_trip() {
        for s in Stage::ALL {
            assert_eq!(s.to_string().parse::<Stage>().unwrap(), s);
        }
        assert!("psi6".parse::<Stage>().is_err());
    }

    #[test]
    fn push_validates_positions() {
        let mut c = Circuit::new(QubitLayout::new(1).unwrap());
        assert!(c.push(GateOp::h(3)).is_err());
        assert!(c.push(GateOp::h(2)).is_ok());
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let layout = QubitLayout::new(2).unwrap();
        let mut s = StateVector::ground(&layout).unwrap();
        s.apply_gate(&GateOp::ry(0.7, 0)).unwrap();
        let before = s.clone();
        s.apply_circuit(&Circuit::new(layout)).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn double_hadamard_circuit_is_identity() {
        let layout = QubitLayout::new(1).unwrap();
        let mut c = Circuit::new(layout);
        c.push(GateOp::h(0)).unwrap().push(GateOp::h(0)).unwrap();
        let mut s = StateVector::ground(&layout).unwrap();
        s.apply_gate(&GateOp::ry(1.1, 0)).unwrap();
        s.apply_gate(&GateOp::ry(0.4, 1)).unwrap();
        let before = s.clone();
        s.apply_circuit(&c).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn layout_mismatch_is_rejected() {
        let c = Circuit::new(QubitLayout::new(2).unwrap());
        let mut s = StateVector::new(3).unwrap();
        assert!(s.apply_circuit(&c).is_err());
    }

    #[test]
    fn checkpoints_capture_intermediate_states() {
        let layout = QubitLayout::new(1).unwrap();
        let mut c = Circuit::new(layout);
        c.mark(Stage::Psi1);
        c.push(GateOp::x(0)).unwrap();
        c.mark(Stage::Psi2);
        c.push(GateOp::x(1).controlled_by(Control::closed(0)))
            .unwrap();
        c.mark(Stage::Psi3);
        let mut s = StateVector::ground(&layout).unwrap();
        let snaps = s.apply_circuit_with_checkpoints(&c).unwrap();
        let nonzero: Vec<usize> = snaps
            .iter()
            .map(|(_, st)| st.amplitudes().iter().position(|a| a.norm() > 0.5).unwrap())
            .collect();
        assert_eq!(nonzero, vec![0, 1, 3]);
        assert_eq!(
            snaps.iter().map(|(s, _)| *s).collect::<Vec<_>>(),
            vec![Stage::Psi1, Stage::Psi2, Stage::Psi3]
        );
    }

    #[test]
    fn expansion_keeps_markers_aligned() {
        let layout = QubitLayout::new(2).unwrap();
        let mut c = Circuit::new(layout);
        c.push(GateOp::h(0)).unwrap();
        c.mark(Stage::Psi1);
        c.push(MultiplexedRy::new(vec![0, 1], 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap())
            .unwrap();
        c.mark(Stage::Psi2);
        let e = c.expanded();
        assert_eq!(e.len(), 5);
        assert_eq!(e.checkpoints(), &[(1, Stage::Psi1), (5, Stage::Psi2)]);
    }
}
