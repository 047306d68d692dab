use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::spectral::{walk_spectrum, zero_phase_mass, SpectralLine};
use crate::tree::{enumerate_assignments, eval_nand_classical, TailedTree, TreeShape};

/// Candidate phase windows scanned during calibration (all inside
/// (0, pi/2)).
pub const WINDOW_GRID: [f64; 12] = [
    0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.7, 1.0,
];

/// Readout rule mapping zero-phase overlap mass to a formula value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionRule {
    /// Phase window around 0, radians; must lie in (0, pi/2).
    pub phase_window: f64,
    /// Formula value assigned when the mass clears the threshold.
    pub high_mass_value: u8,
    /// Mass threshold in (0, 1).
    pub overlap_threshold: f64,
}

impl DecisionRule {
    pub fn decide(&self, mass: f64) -> u8 {
        if mass >= self.overlap_threshold {
            self.high_mass_value
        } else {
            1 - self.high_mass_value
        }
    }
}

/// A calibrated rule plus the margin it achieved on the exhaustive set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Calibration {
    pub levels: usize,
    pub rule: DecisionRule,
    /// Smallest distance from any calibration mass to the threshold.
    pub margin: f64,
    /// Mass ranges per class at the chosen window: [min0, max0, min1, max1].
    pub mass_ranges: [f64; 4],
}

/// Exhaustive calibration: computes the walk spectrum for every leaf
/// assignment, labels each with the classical NAND value, and picks the
/// (window, direction, threshold) with the widest separating margin.
/// Fails with `NoSeparatingRule` when no grid window separates the classes.
pub fn calibrate_decision_rule(shape: TreeShape) -> Result<Calibration> {
    if shape.n_leaves() > 8 {
        return Err(Error::InvalidConfig(format!(
            "calibration is exhaustive; {} leaves is too many",
            shape.n_leaves()
        )));
    }
    let mut spectra: Vec<(bool, Vec<SpectralLine>)> = Vec::new();
    for leaves in enumerate_assignments(shape)? {
        let tree = TailedTree::new(shape, leaves.clone())?;
        let value = eval_nand_classical(&tree);
        spectra.push((value, walk_spectrum(shape, &leaves)?));
    }

    let mut best: Option<Calibration> = None;
    for &window in WINDOW_GRID.iter() {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for (value, lines) in &spectra {
            let mass = zero_phase_mass(lines, window);
            let cls = *value as usize;
            lo[cls] = lo[cls].min(mass);
            hi[cls] = hi[cls].max(mass);
        }
        let (margin, high_mass_value) = if lo[1] - hi[0] > lo[0] - hi[1] {
            (lo[1] - hi[0], 1u8)
        } else {
            (lo[0] - hi[1], 0u8)
        };
        if margin <= 0.0 {
            continue;
        }
        let threshold = if high_mass_value == 1 {
            (hi[0] + lo[1]) / 2.0
        } else {
            (hi[1] + lo[0]) / 2.0
        };
        let cand = Calibration {
            levels: shape.levels(),
            rule: DecisionRule {
                phase_window: window,
                high_mass_value,
                overlap_threshold: threshold,
            },
            margin: margin / 2.0,
            mass_ranges: [lo[0], hi[0], lo[1], hi[1]],
        };
        if best.as_ref().map_or(true, |b| cand.margin > b.margin) {
            best = Some(cand);
        }
    }
    best.ok_or(Error::NoSeparatingRule {
        levels: shape.levels(),
    })
}

/// Process-wide cache of calibrated rules, keyed by level count.
pub fn calibration_for(shape: TreeShape) -> Result<Calibration> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Calibration>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&shape.levels()) {
        return Ok(c.clone());
    }
    let c = calibrate_decision_rule(shape)?;
    cache
        .lock()
        .unwrap()
        .insert(shape.levels(), c.clone());
    Ok(c)
}
