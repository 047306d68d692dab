use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{Circuit, Control, Gate};
use crate::tree::TreeShape;

/// Per-qubit control choice of one oracle mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trit {
    Ignore,
    On1,
    On0,
}

/// Phase-oracle parametrization: either the exact leaf bitstring, or a list
/// of control masks, each compiling to one multi-controlled Z on the walker.
///
/// Mask rows carry one trit per walker qubit 0..L-1. The walker MSB (the
/// leaf flag, bit L) is implicitly the Z target of every mask and is not
/// listed; the second most significant walker qubit (bit L-1) must stay
/// Ignore, since no reachable leaf label ever sets it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum OracleSpec {
    Exact(Vec<bool>),
    Masks(Vec<Vec<Trit>>),
}

impl OracleSpec {
    pub fn validate(&self, shape: TreeShape) -> Result<()> {
        match self {
            OracleSpec::Exact(leaves) => {
                if leaves.len() != shape.n_leaves() {
                    return Err(Error::LeafCountMismatch {
                        expected: shape.n_leaves(),
                        got: leaves.len(),
                    });
                }
            }
            OracleSpec::Masks(rows) => {
                let expected = shape.levels();
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != expected {
                        return Err(Error::MaskRowLength {
                            row: i,
                            got: row.len(),
                            expected,
                        });
                    }
                    if row[expected - 1] != Trit::Ignore {
                        return Err(Error::MaskOnSecondMsb(i));
                    }
                }
            }
        }
        Ok(())
    }

    /// Leaf values the oracle actually flips: a leaf is 1 iff an odd number
    /// of masks match its label (exact specs are returned as-is).
    pub fn effective_leaves(&self, shape: TreeShape) -> Result<Vec<bool>> {
        self.validate(shape)?;
        match self {
            OracleSpec::Exact(leaves) => Ok(leaves.clone()),
            OracleSpec::Masks(rows) => {
                let n = shape.n_leaves();
                let base = shape.leaf_base();
                Ok((0..n)
                    .map(|i| {
                        let label = base + i;
                        rows.iter()
                            .filter(|row| mask_matches(row, label))
                            .count()
                            % 2
                            == 1
                    })
                    .collect())
            }
        }
    }
}

fn mask_matches(row: &[Trit], label: usize) -> bool {
    row.iter().enumerate().all(|(q, t)| match t {
        Trit::Ignore => true,
        Trit::On1 => (label >> q) & 1 == 1,
        Trit::On0 => (label >> q) & 1 == 0,
    })
}

/// Phase oracle over the walker register (qubits 0..=L): multiplies each
/// value-1 leaf basis state by -1 and leaves everything else alone. The Z
/// target is the walker MSB, so non-leaf labels are untouched.
pub fn build_oracle(spec: &OracleSpec, shape: TreeShape) -> Result<Circuit> {
    spec.validate(shape)?;
    let l = shape.levels();
    let mut circ = Circuit::new(l + 1).with_register("W", 0, l);
    match spec {
        OracleSpec::Exact(leaves) => {
            for (i, &v) in leaves.iter().enumerate() {
                if !v {
                    continue;
                }
                let label = shape.leaf_base() + i;
                let controls = (0..l)
                    .map(|q| Control {
                        qubit: q,
                        on: (label >> q) & 1 == 1,
                    })
                    .collect();
                circ.push(Gate::z(l).with_controls(controls));
            }
        }
        OracleSpec::Masks(rows) => {
            for row in rows {
                let controls = row
                    .iter()
                    .enumerate()
                    .filter_map(|(q, t)| match t {
                        Trit::Ignore => None,
                        Trit::On1 => Some(Control::on1(q)),
                        Trit::On0 => Some(Control::on0(q)),
                    })
                    .collect();
                circ.push(Gate::z(l).with_controls(controls));
            }
        }
    }
    Ok(circ)
}
