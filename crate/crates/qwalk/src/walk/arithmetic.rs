use crate::error::{Error, Result};
use crate::sim::{Circuit, Control, Gate};

/// P: modular increment |v> -> |v + 1 mod 2^n>, as a cascade of
/// multi-controlled X gates from the top bit down, finishing with X on
/// bit 0.
pub fn build_increment(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::EmptyIncrement);
    }
    let mut circ = Circuit::new(n).with_register("W", 0, n - 1);
    for k in (1..n).rev() {
        circ.push(
            Gate::x(k).with_controls((0..k).map(Control::on1).collect()),
        );
    }
    circ.push(Gate::x(0));
    Ok(circ)
}

/// P†: modular decrement, the gate-reversed increment.
pub fn build_decrement(n: usize) -> Result<Circuit> {
    Ok(build_increment(n)?.inverse())
}

/// M: cyclic bit rotation toward the MSB, a cascade of adjacent SWAPs.
/// On inputs whose MSB is 0 this doubles the label: |v> -> |2v>.
pub fn build_rotate_left(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::RotationTooSmall(n));
    }
    let mut circ = Circuit::new(n).with_register("W", 0, n - 1);
    for k in (0..n - 1).rev() {
        circ.push(Gate::swap(k, k + 1));
    }
    Ok(circ)
}

/// M†: inverse rotation; halves even labels.
pub fn build_rotate_right(n: usize) -> Result<Circuit> {
    Ok(build_rotate_left(n)?.inverse())
}
