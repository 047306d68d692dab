use serde::{Deserialize, Serialize};

use crate::agent::game::{GameState, Player};
use crate::error::{Error, Result};
use crate::walk::{OracleSpec, Trit};

/// Feed-forward network layout. The output block holds 3 trit logits per
/// (action, mask, walker qubit); hidden layers use tanh, the output is
/// linear.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkShape {
    pub hidden: Vec<usize>,
    pub actions: usize,
    pub masks: usize,
    /// Trits per mask row: one per walker qubit 0..L-1 of the action tree
    /// (L = horizon + 1); the leaf-flag MSB is implicit and the second-MSB
    /// trit is forced to Ignore after decoding.
    pub mask_qubits: usize,
}

pub const INPUT_FEATURES: usize = 3;

impl NetworkShape {
    pub fn for_horizon(horizon: usize, masks: usize, hidden: Vec<usize>) -> Self {
        NetworkShape {
            hidden,
            actions: 2,
            masks,
            mask_qubits: horizon + 1,
        }
    }

    pub fn output_dim(&self) -> usize {
        self.actions * self.masks * self.mask_qubits * 3
    }

    pub fn genome_len(&self) -> usize {
        let mut len = 0;
        let mut prev = INPUT_FEATURES;
        for &h in &self.hidden {
            len += prev * h + h;
            prev = h;
        }
        len + prev * self.output_dim() + self.output_dim()
    }
}

/// Flat weight vector plus its last evaluated fitness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AgentGenome {
    pub weights: Vec<f64>,
    pub fitness: f64,
}

/// Standardized state features: counter and remainder as fractions of the
/// target, and a +/-1 flag for the player to move.
pub fn features(state: &GameState) -> [f64; INPUT_FEATURES] {
    let k = state.target as f64;
    [
        state.counter as f64 / k,
        (state.target - state.counter) as f64 / k,
        if state.to_move == Player::Agent { 1.0 } else { -1.0 },
    ]
}

fn forward_raw(shape: &NetworkShape, weights: &[f64], input: &[f64]) -> Vec<f64> {
    let mut act: Vec<f64> = input.to_vec();
    let mut off = 0;
    let mut prev = INPUT_FEATURES;
    for &h in &shape.hidden {
        let mut next = vec![0.0; h];
        for (j, n) in next.iter_mut().enumerate() {
            let mut s = weights[off + prev * h + j];
            for (i, &x) in act.iter().enumerate() {
                s += weights[off + j * prev + i] * x;
            }
            *n = s.tanh();
        }
        off += prev * h + h;
        prev = h;
        act = next;
    }
    let out_dim = shape.output_dim();
    let mut out = vec![0.0; out_dim];
    for (j, o) in out.iter_mut().enumerate() {
        let mut s = weights[off + prev * out_dim + j];
        for (i, &x) in act.iter().enumerate() {
            s += weights[off + j * prev + i] * x;
        }
        *o = s;
    }
    out
}

/// Decodes one trit from its three logits, laid out as
/// [ignore, on-1, on-0]; Ignore wins ties so zero weights yield the
/// identity oracle.
fn decode_trit(logits: &[f64]) -> Trit {
    let mut best = 0;
    for i in 1..3 {
        if logits[i] > logits[best] {
            best = i;
        }
    }
    match best {
        1 => Trit::On1,
        2 => Trit::On0,
        _ => Trit::Ignore,
    }
}

/// Runs the network and decodes a mask-form oracle per action (indexed by
/// action - 1 for actions +1 and +2).
pub fn forward(
    shape: &NetworkShape,
    weights: &[f64],
    state: &GameState,
) -> Result<Vec<OracleSpec>> {
    if weights.len() != shape.genome_len() {
        return Err(Error::InvalidConfig(format!(
            "genome has {} weights, shape needs {}",
            weights.len(),
            shape.genome_len()
        )));
    }
    let out = forward_raw(shape, weights, &features(state));
    let mut specs = Vec::with_capacity(shape.actions);
    for a in 0..shape.actions {
        let mut rows = Vec::with_capacity(shape.masks);
        for m in 0..shape.masks {
            let mut row = Vec::with_capacity(shape.mask_qubits);
            for q in 0..shape.mask_qubits {
                if q == shape.mask_qubits - 1 {
                    // Structural constraint: never control the second most
                    // significant walker qubit.
                    row.push(Trit::Ignore);
                    continue;
                }
                let base = (((a * shape.masks) + m) * shape.mask_qubits + q) * 3;
                row.push(decode_trit(&out[base..base + 3]));
            }
            rows.push(row);
        }
        specs.push(OracleSpec::Masks(rows));
    }
    Ok(specs)
}
