use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::eval::rule::DecisionRule;
use crate::eval::spectral::initial_state;
use crate::eval::{EvalConfig, EvalReport};
use crate::sim::{sample_index, Circuit, Control, StateVector};
use crate::tree::TreeShape;
use crate::walk::{build_walk_operator, OracleSpec};

/// Cap on the total simulated register (system + phase ancillas).
pub const QPE_QUBIT_LIMIT: usize = 22;

/// Exact outcome distribution of textbook phase estimation of `circuit` on
/// `init`: `t` ancillas above the system register, ancilla k controlling
/// 2^k literal repetitions of the circuit, then the inverse Fourier
/// transform on the ancillas. Outcome m estimates an eigenphase of
/// 2*pi*m / 2^t.
pub fn qpe_distribution(
    circuit: &Circuit,
    init: &StateVector,
    t: usize,
) -> Result<Vec<f64>> {
    if t == 0 {
        return Err(Error::NoPhaseBits);
    }
    let sys = init.num_qubits();
    if circuit.num_qubits != sys {
        return Err(Error::RegisterMismatch {
            circuit: circuit.num_qubits,
            state: sys,
        });
    }
    let total = sys + t;
    if total > QPE_QUBIT_LIMIT {
        return Err(Error::SizeLimit {
            qubits: total,
            limit: QPE_QUBIT_LIMIT,
        });
    }

    // Embed the system state with ancillas in |0..0>.
    let mut amps = vec![Complex64::ZERO; 1 << total];
    amps[..1 << sys].copy_from_slice(init.amplitudes());
    let mut state = StateVector::from_amplitudes(amps)?;

    // Hadamard on every ancilla, within the gate vocabulary: H = RY(pi/2) Z.
    let r = 1.0 / 2.0f64.sqrt();
    let h2 = [
        [Complex64::new(r, 0.0), Complex64::new(r, 0.0)],
        [Complex64::new(r, 0.0), Complex64::new(-r, 0.0)],
    ];
    for k in 0..t {
        state.apply_1q_unitary_mut(&h2, sys + k, &[])?;
    }

    // Controlled powers by literal repetition.
    for k in 0..t {
        let ctrl = Control::on1(sys + k);
        let controlled: Vec<_> = circuit.gates_controlled_by(ctrl);
        for _ in 0..(1usize << k) {
            for g in &controlled {
                state.apply_gate_mut(g)?;
            }
        }
    }

    // Inverse Fourier transform on the ancilla index (ancilla k is bit k of
    // the outcome), applied directly so the bit-order convention is exact:
    // A'[m] = 2^(-t/2) * sum_j exp(-2*pi*i*j*m / 2^t) A[j].
    let dim_anc = 1usize << t;
    let dim_sys = 1usize << sys;
    let scale = 1.0 / (dim_anc as f64).sqrt();
    let root: Vec<Complex64> = (0..dim_anc)
        .map(|r| {
            let ang = -2.0 * PI * (r as f64) / (dim_anc as f64);
            Complex64::from_polar(scale, ang)
        })
        .collect();
    let amps = state.amplitudes_mut();
    let mut col = vec![Complex64::ZERO; dim_anc];
    for s in 0..dim_sys {
        for j in 0..dim_anc {
            col[j] = amps[(j << sys) | s];
        }
        for m in 0..dim_anc {
            let mut acc = Complex64::ZERO;
            for (j, &cj) in col.iter().enumerate() {
                acc += root[(j * m) % dim_anc] * cj;
            }
            amps[(m << sys) | s] = acc;
        }
    }

    // Ancilla marginal.
    let mut probs = vec![0.0f64; dim_anc];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[i >> sys] += a.norm_sqr();
    }
    Ok(probs)
}

/// Phase distance of outcome m from 0 at resolution t.
pub fn outcome_phase_distance(m: usize, t: usize) -> f64 {
    let dim = 1usize << t;
    let d = m.min(dim - m);
    2.0 * PI * (d as f64) / (dim as f64)
}

/// Mass a distribution over QPE outcomes puts within `window` of phase 0.
pub fn outcome_zero_mass(probs: &[f64], t: usize, window: f64) -> f64 {
    probs
        .iter()
        .enumerate()
        .filter(|(m, _)| outcome_phase_distance(*m, t) <= window)
        .map(|(_, p)| p)
        .sum()
}

/// Phase estimation of the walk operator with sampled readout.
pub fn qpe_eval(shape: TreeShape, leaves: &[bool], config: &EvalConfig) -> Result<EvalReport> {
    let circ = build_walk_operator(shape, &OracleSpec::Exact(leaves.to_vec()))?;
    let init = initial_state(shape);
    let probs = qpe_distribution(&circ, &init, config.phase_bits)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let mut zero_hits = 0u64;
    for _ in 0..config.shots {
        let m = sample_index(&probs, &mut rng);
        *histogram.entry(m as u64).or_insert(0) += 1;
        if outcome_phase_distance(m, config.phase_bits) <= config.rule.phase_window {
            zero_hits += 1;
        }
    }
    let zero_phase_mass = zero_hits as f64 / config.shots as f64;
    Ok(EvalReport {
        value: config.rule.decide(zero_phase_mass),
        phase_histogram: histogram,
        shots: config.shots,
        zero_phase_mass,
        spectrum: None,
    })
}

/// Exact (unsampled) zero-phase mass of the QPE outcome distribution under
/// `rule`; used for resolution studies.
pub fn qpe_exact_zero_mass(
    shape: TreeShape,
    leaves: &[bool],
    t: usize,
    rule: &DecisionRule,
) -> Result<f64> {
    let circ = build_walk_operator(shape, &OracleSpec::Exact(leaves.to_vec()))?;
    let init = initial_state(shape);
    let probs = qpe_distribution(&circ, &init, t)?;
    Ok(outcome_zero_mass(&probs, t, rule.phase_window))
}
