//! NAND-formula evaluation by phase estimation on the walk operator, with
//! an exact spectral path and an empirically calibrated decision rule.

pub mod qpe;
pub mod rule;
pub mod spectral;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::tree::TreeShape;

pub use qpe::{
    outcome_phase_distance, outcome_zero_mass, qpe_distribution, qpe_eval, qpe_exact_zero_mass,
    QPE_QUBIT_LIMIT,
};
pub use rule::{calibrate_decision_rule, calibration_for, Calibration, DecisionRule};
pub use spectral::{
    eigenphase_overlaps, initial_state, phase_distance, walk_spectrum, walk_unitary,
    zero_phase_mass, SpectralLine,
};

/// Phase-estimation configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalConfig {
    pub phase_bits: usize,
    pub shots: u64,
    pub seed: u64,
    pub rule: DecisionRule,
}

/// Evaluation result. For sampled runs the histogram holds `shots` counts
/// over t-bit outcomes; for spectral runs it is empty and the spectrum is
/// attached instead.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalReport {
    pub value: u8,
    pub phase_histogram: BTreeMap<u64, u64>,
    pub shots: u64,
    pub zero_phase_mass: f64,
    pub spectrum: Option<Vec<SpectralLine>>,
}

/// Exact spectral evaluation under a decision rule.
pub fn spectral_eval(
    shape: TreeShape,
    leaves: &[bool],
    rule: &DecisionRule,
) -> Result<EvalReport> {
    let lines = walk_spectrum(shape, leaves)?;
    let mass = zero_phase_mass(&lines, rule.phase_window);
    Ok(EvalReport {
        value: rule.decide(mass),
        phase_histogram: BTreeMap::new(),
        shots: 0,
        zero_phase_mass: mass,
        spectrum: Some(lines),
    })
}

/// Evaluation backends for `evaluate_formula`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// Exact eigendecomposition of the walk operator.
    Exact,
    /// Sampled phase estimation.
    Qpe,
}

/// End-to-end formula evaluation; requires a calibrated rule for the shape
/// (auto-calibrated and cached per level count).
pub fn evaluate_formula(
    shape: TreeShape,
    leaves: &[bool],
    config: &EvalConfig,
    mode: EvalMode,
) -> Result<u8> {
    match mode {
        EvalMode::Exact => Ok(spectral_eval(shape, leaves, &config.rule)?.value),
        EvalMode::Qpe => Ok(qpe_eval(shape, leaves, config)?.value),
    }
}
