use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gate vocabulary. Multi-controlled variants are represented by attaching
/// controls to one of these kinds; the simulator applies them as single
/// structured gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    X,
    Z,
    #[serde(rename = "RY")]
    Ry,
    #[serde(rename = "SWAP")]
    Swap,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Ry => "RY",
            GateKind::Swap => "SWAP",
        }
    }

    fn target_count(self) -> usize {
        match self {
            GateKind::Swap => 2,
            _ => 1,
        }
    }
}

/// A control condition: the gate fires only on basis states where `qubit`
/// holds `on` (true = on-1 polarity, false = on-0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, u8)", into = "(usize, u8)")]
pub struct Control {
    pub qubit: usize,
    pub on: bool,
}

impl Control {
    pub fn on1(qubit: usize) -> Self {
        Control { qubit, on: true }
    }

    pub fn on0(qubit: usize) -> Self {
        Control { qubit, on: false }
    }

    pub fn satisfied(&self, basis_index: usize) -> bool {
        ((basis_index >> self.qubit) & 1 == 1) == self.on
    }
}

impl From<(usize, u8)> for Control {
    fn from((qubit, pol): (usize, u8)) -> Self {
        Control {
            qubit,
            on: pol != 0,
        }
    }
}

impl From<Control> for (usize, u8) {
    fn from(c: Control) -> Self {
        (c.qubit, c.on as u8)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub controls: Vec<Control>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

impl Gate {
    pub fn x(target: usize) -> Self {
        Gate {
            kind: GateKind::X,
            targets: vec![target],
            controls: Vec::new(),
            angle: None,
        }
    }

    pub fn z(target: usize) -> Self {
        Gate {
            kind: GateKind::Z,
            targets: vec![target],
            controls: Vec::new(),
            angle: None,
        }
    }

    pub fn ry(target: usize, angle: f64) -> Self {
        Gate {
            kind: GateKind::Ry,
            targets: vec![target],
            controls: Vec::new(),
            angle: Some(angle),
        }
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Gate {
            kind: GateKind::Swap,
            targets: vec![a, b],
            controls: Vec::new(),
            angle: None,
        }
    }

    pub fn with_controls(mut self, controls: Vec<Control>) -> Self {
        self.controls = controls;
        self
    }

    pub fn add_control(&mut self, control: Control) {
        self.controls.push(control);
    }

    /// All control conditions hold on this basis index.
    pub fn controls_satisfied(&self, basis_index: usize) -> bool {
        self.controls.iter().all(|c| c.satisfied(basis_index))
    }

    /// Inverse gate: RY negates its angle, the others are involutions.
    pub fn inverse(&self) -> Gate {
        let mut g = self.clone();
        if let Some(a) = g.angle {
            g.angle = Some(-a);
        }
        g
    }

    /// Same gate acting on relabelled qubits.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Gate {
        Gate {
            kind: self.kind,
            targets: self.targets.iter().map(|&q| map(q)).collect(),
            controls: self
                .controls
                .iter()
                .map(|c| Control {
                    qubit: map(c.qubit),
                    on: c.on,
                })
                .collect(),
            angle: self.angle,
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let expected = self.kind.target_count();
        if self.targets.len() != expected {
            return Err(Error::BadTargetCount {
                kind: self.kind.name(),
                expected,
                got: self.targets.len(),
            });
        }
        match (self.kind, self.angle) {
            (GateKind::Ry, None) => return Err(Error::MissingAngle),
            (GateKind::Ry, Some(_)) => {}
            (k, Some(_)) => return Err(Error::UnexpectedAngle(k.name())),
            (_, None) => {}
        }
        let mut seen = Vec::with_capacity(self.targets.len() + self.controls.len());
        for &q in self.targets.iter().chain(self.controls.iter().map(|c| &c.qubit)) {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
            if seen.contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
            seen.push(q);
        }
        Ok(())
    }
}
