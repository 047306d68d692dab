use crate::error::{Error, Result};
use crate::sim::circuit::Circuit;
use crate::sim::gate::{Control, Gate};

/// Decomposes a multi-controlled X into a linear number of gates (Toffoli
/// level) using a chain of borrowable ancillas: c controls need
/// max(c - 2, 0) ancillas, which may hold arbitrary states and are restored.
/// On-0 polarities are realized by X-conjugating those control qubits.
pub fn decompose_mcx(
    controls: &[Control],
    target: usize,
    ancillas: &[usize],
) -> Result<Circuit> {
    let c = controls.len();
    let needed = c.saturating_sub(2);
    if ancillas.len() < needed {
        return Err(Error::InsufficientAncillas {
            needed,
            got: ancillas.len(),
        });
    }
    let anc = &ancillas[..needed];
    let mut all: Vec<usize> = controls.iter().map(|x| x.qubit).collect();
    all.push(target);
    all.extend_from_slice(anc);
    let mut sorted = all.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != all.len() {
        return Err(Error::OverlappingIndices);
    }

    let num_qubits = all.iter().max().copied().unwrap_or(0) + 1;
    let mut circ = Circuit::new(num_qubits).with_register("q", 0, num_qubits - 1);

    let flips: Vec<usize> = controls
        .iter()
        .filter(|ctl| !ctl.on)
        .map(|ctl| ctl.qubit)
        .collect();
    for &q in &flips {
        circ.push(Gate::x(q));
    }

    let ctrl: Vec<usize> = controls.iter().map(|x| x.qubit).collect();
    match c {
        0 => circ.push(Gate::x(target)),
        1 | 2 => circ.push(
            Gate::x(target)
                .with_controls(ctrl.iter().map(|&q| Control::on1(q)).collect()),
        ),
        _ => {
            let m = needed;
            let tof = |a: usize, b: usize, t: usize| {
                Gate::x(t).with_controls(vec![Control::on1(a), Control::on1(b)])
            };
            // Dirty-ancilla V chain, run twice so borrowed ancillas cancel.
            let mut half: Vec<Gate> = Vec::with_capacity(2 * m);
            half.push(tof(ctrl[c - 1], anc[m - 1], target));
            for j in (1..m).rev() {
                half.push(tof(ctrl[j + 1], anc[j - 1], anc[j]));
            }
            half.push(tof(ctrl[0], ctrl[1], anc[0]));
            for j in 1..m {
                half.push(tof(ctrl[j + 1], anc[j - 1], anc[j]));
            }
            circ.extend(half.clone());
            circ.extend(half);
        }
    }

    for &q in &flips {
        circ.push(Gate::x(q));
    }
    Ok(circ)
}
