use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sim::{Circuit, Control, Gate};

/// Rotation angle of the tail reflection for an un-tailed leaf count N.
pub fn theta(n_leaves: usize) -> f64 {
    let rn = (n_leaves as f64).sqrt();
    2.0 * (2.0 * PI - ((2.0 - rn) / rn).acos())
}

/// First coin-reflection angle.
pub fn theta1() -> f64 {
    -(1.0f64 / 3.0).acos()
}

/// Second coin-reflection angle.
pub fn theta2() -> f64 {
    (-1.0f64 / 3.0).acos() + PI
}

/// R|u>: reflection about the uniform coin state
/// (|down> + |left> + |right>) / sqrt(3), on a 2-qubit coin register
/// (qubit 0 = c0, qubit 1 = c1). Exact on the 3-dimensional span of the
/// valid coin states; the unreachable |01> component is unconstrained.
///
/// With the RY convention used here, the middle rotations take the
/// magnitudes of theta1/theta2 with the sign that realizes 2|u><u| - I;
/// the sign is absorbed into the rotation convention.
pub fn build_reflection_u() -> Circuit {
    let mut circ = Circuit::new(2).with_register("C", 0, 1);
    circ.push(Gate::x(0));
    circ.push(Gate::ry(1, PI / 2.0).with_controls(vec![Control::on1(0)]));
    circ.push(Gate::ry(0, -theta1()));
    circ.push(Gate::z(1).with_controls(vec![Control::on1(0)]));
    circ.push(Gate::ry(0, theta2()));
    circ.push(Gate::ry(1, -PI / 2.0).with_controls(vec![Control::on1(0)]));
    circ.push(Gate::x(0));
    circ
}

/// R|u'>: reflection about |u'> = N^(-1/4)|down> + sqrt(1 - N^(-1/2))|left>
/// on the coin register, exact on span{down, left}.
pub fn build_reflection_uprime(n_leaves: usize) -> Result<Circuit> {
    if n_leaves < 2 {
        return Err(Error::TooFewLeavesForReflection(n_leaves));
    }
    let mut circ = Circuit::new(2).with_register("C", 0, 1);
    circ.push(Gate::x(0));
    circ.push(Gate::ry(1, theta(n_leaves)).with_controls(vec![Control::on1(0)]));
    circ.push(Gate::x(0));
    circ.push(Gate::z(0).with_controls(vec![Control::on1(1)]));
    circ.push(Gate::z(1));
    circ.push(Gate::z(0));
    Ok(circ)
}
