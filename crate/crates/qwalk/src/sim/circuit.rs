use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::gate::{Control, Gate};
use crate::sim::state::StateVector;

/// Default cap on unitary extraction (2^12 x 2^12).
pub const UNITARY_QUBIT_LIMIT: usize = 12;

/// Ordered gate list over named, disjoint qubit registers.
///
/// JSON form: {num_qubits, registers: {name: [lo, hi]}, gates: [...]}, with
/// inclusive register bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub registers: BTreeMap<String, (usize, usize)>,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            registers: BTreeMap::new(),
            gates: Vec::new(),
        }
    }

    pub fn with_register(mut self, name: &str, lo: usize, hi: usize) -> Self {
        self.registers.insert(name.to_string(), (lo, hi));
        self
    }

    pub fn register(&self, name: &str) -> Option<(usize, usize)> {
        self.registers.get(name).copied()
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    pub fn validate(&self) -> Result<()> {
        for gate in &self.gates {
            gate.validate(self.num_qubits)?;
        }
        let mut covered = vec![false; self.num_qubits];
        for (name, &(lo, hi)) in &self.registers {
            if lo > hi || hi >= self.num_qubits {
                return Err(Error::BadRegister {
                    name: name.clone(),
                    lo,
                    hi,
                    num_qubits: self.num_qubits,
                });
            }
            for q in lo..=hi {
                if covered[q] {
                    return Err(Error::BadRegisterCover(self.num_qubits));
                }
                covered[q] = true;
            }
        }
        if !self.registers.is_empty() && covered.iter().any(|&c| !c) {
            return Err(Error::BadRegisterCover(self.num_qubits));
        }
        Ok(())
    }

    /// Gate-reversed, angle-negated inverse circuit.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Copy of the gate list with one extra control on every gate.
    pub fn gates_controlled_by(&self, control: Control) -> Vec<Gate> {
        self.gates
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.add_control(control);
                g
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Circuit = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }
}

/// Applies every gate in order.
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    let mut s = state.clone();
    apply_circuit_mut(&mut s, circuit)?;
    Ok(s)
}

pub fn apply_circuit_mut(state: &mut StateVector, circuit: &Circuit) -> Result<()> {
    if circuit.num_qubits != state.num_qubits() {
        return Err(Error::RegisterMismatch {
            circuit: circuit.num_qubits,
            state: state.num_qubits(),
        });
    }
    for gate in &circuit.gates {
        state.apply_gate_mut(gate)?;
    }
    Ok(())
}

/// Full unitary matrix; column j is the image of basis state j.
pub fn circuit_unitary(circuit: &Circuit) -> Result<DMatrix<Complex64>> {
    circuit_unitary_with_limit(circuit, UNITARY_QUBIT_LIMIT)
}

pub fn circuit_unitary_with_limit(
    circuit: &Circuit,
    limit: usize,
) -> Result<DMatrix<Complex64>> {
    if circuit.num_qubits > limit {
        return Err(Error::SizeLimit {
            qubits: circuit.num_qubits,
            limit,
        });
    }
    let dim = 1usize << circuit.num_qubits;
    let mut u = DMatrix::<Complex64>::zeros(dim, dim);
    for j in 0..dim {
        let col = apply_circuit(&StateVector::basis(circuit.num_qubits, j), circuit)?;
        for (i, a) in col.amplitudes().iter().enumerate() {
            u[(i, j)] = *a;
        }
    }
    Ok(u)
}
