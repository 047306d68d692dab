use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sim::gate::{Control, Gate, GateKind};

pub const NORM_TOL: f64 = 1e-10;

/// Dense state vector over `num_qubits` qubits. Basis index bit k is qubit
/// k's value; register naming lives in the circuit layer.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::ZERO; 1 << num_qubits];
        amps[index] = Complex64::ONE;
        StateVector { num_qubits, amps }
    }

    /// Builds a state from raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::InvalidConfig(format!(
                "amplitude array length {n} is not a power of two"
            )));
        }
        Ok(StateVector {
            num_qubits: n.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    /// Applies one gate in place.
    pub fn apply_gate_mut(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let dim = self.amps.len();
        match gate.kind {
            GateKind::X => {
                let t = gate.targets[0];
                let bit = 1usize << t;
                for i in 0..dim {
                    if i & bit == 0 && gate.controls_satisfied(i) {
                        self.amps.swap(i, i | bit);
                    }
                }
            }
            GateKind::Z => {
                let t = gate.targets[0];
                let bit = 1usize << t;
                for i in 0..dim {
                    if i & bit != 0 && gate.controls_satisfied(i) {
                        self.amps[i] = -self.amps[i];
                    }
                }
            }
            GateKind::Ry => {
                let t = gate.targets[0];
                let bit = 1usize << t;
                let half = gate.angle.ok_or(Error::MissingAngle)? / 2.0;
                let (s, c) = half.sin_cos();
                for i in 0..dim {
                    if i & bit == 0 && gate.controls_satisfied(i) {
                        let j = i | bit;
                        let a = self.amps[i];
                        let b = self.amps[j];
                        self.amps[i] = c * a - s * b;
                        self.amps[j] = s * a + c * b;
                    }
                }
            }
            GateKind::Swap => {
                let b1 = 1usize << gate.targets[0];
                let b2 = 1usize << gate.targets[1];
                for i in 0..dim {
                    if i & b1 != 0 && i & b2 == 0 && gate.controls_satisfied(i) {
                        self.amps.swap(i, (i & !b1) | b2);
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies an arbitrary single-qubit unitary (2x2, row-major) with
    /// optional controls. Internal aid for phase estimation; builder circuits
    /// stick to the serializable gate vocabulary.
    pub fn apply_1q_unitary_mut(
        &mut self,
        u: &[[Complex64; 2]; 2],
        target: usize,
        controls: &[Control],
    ) -> Result<()> {
        if target >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: target,
                num_qubits: self.num_qubits,
            });
        }
        let bit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & bit == 0 && controls.iter().all(|c| c.satisfied(i)) {
                let j = i | bit;
                let a = self.amps[i];
                let b = self.amps[j];
                self.amps[i] = u[0][0] * a + u[0][1] * b;
                self.amps[j] = u[1][0] * a + u[1][1] * b;
            }
        }
        Ok(())
    }

    /// Marginal probability of each joint outcome of `qubits`; outcome bit j
    /// is the measured value of `qubits[j]`.
    pub fn marginal_probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        if qubits.is_empty() {
            return Err(Error::EmptyQubitList);
        }
        for &q in qubits {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        let mut probs = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut outcome = 0usize;
            for (j, &q) in qubits.iter().enumerate() {
                outcome |= ((i >> q) & 1) << j;
            }
            probs[outcome] += p;
        }
        Ok(probs)
    }
}

/// Functional form of gate application.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut s = state.clone();
    s.apply_gate_mut(gate)?;
    Ok(s)
}

/// Samples `probs` (assumed normalized) once.
pub fn sample_index(probs: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.len() - 1
}

/// Projective measurement of `qubits`: samples one outcome with the seeded
/// generator, collapses and renormalizes. Outcome bit j belongs to qubits[j].
pub fn measure_register(
    state: &StateVector,
    qubits: &[usize],
    seed: u64,
) -> Result<(Vec<bool>, StateVector)> {
    let probs = state.marginal_probabilities(qubits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outcome = sample_index(&probs, &mut rng);
    let mut collapsed = state.clone();
    for (i, a) in collapsed.amplitudes_mut().iter_mut().enumerate() {
        let mut keep = true;
        for (j, &q) in qubits.iter().enumerate() {
            if ((i >> q) & 1) != ((outcome >> j) & 1) {
                keep = false;
                break;
            }
        }
        if !keep {
            *a = Complex64::ZERO;
        }
    }
    collapsed.normalize();
    let bits = (0..qubits.len()).map(|j| (outcome >> j) & 1 == 1).collect();
    Ok((bits, collapsed))
}
