use crate::error::Result;
use crate::sim::{Circuit, Control, Gate};
use crate::tree::TreeShape;
use crate::walk::arithmetic::{build_increment, build_rotate_left};

/// Walk-step circuit over W (qubits 0..=L) and C (c0 = L+1, c1 = L+2).
///
/// Realizes the shift
///   |2k>|down>   <-> |k>|left>
///   |2k+1>|down> <-> |k>|right>
/// as controlled M / P blocks bracketed by the coin updates: with the coin
/// flag c1 selecting the up-moving branch, M doubles the label, P adds the
/// right-child offset, and the X / Toffoli pair retargets the coin between
/// |down> and the child direction read off the label's low bit.
pub fn build_walk_step(shape: TreeShape) -> Result<Circuit> {
    let n = shape.walker_qubits();
    let l = shape.levels();
    let c0 = l + 1;
    let c1 = l + 2;
    let mut circ = Circuit::new(l + 3)
        .with_register("W", 0, l)
        .with_register("C", c0, c1);

    let m = build_rotate_left(n)?;
    let p = build_increment(n)?;
    let coin_pair = vec![Control::on1(c0), Control::on1(c1)];

    circ.extend(m.gates_controlled_by(Control::on1(c1)));
    for g in &p.gates {
        let mut g = g.clone();
        g.controls.extend(coin_pair.iter().copied());
        circ.push(g);
    }
    circ.push(Gate::x(c1));
    circ.push(Gate::x(c0).with_controls(vec![Control::on1(0), Control::on1(c1)]));
    for g in &p.inverse().gates {
        let mut g = g.clone();
        g.controls.extend(coin_pair.iter().copied());
        circ.push(g);
    }
    circ.extend(m.inverse().gates_controlled_by(Control::on1(c1)));
    circ.push(Gate::x(c1));
    circ.push(Gate::x(c0).with_controls(vec![Control::on1(0), Control::on1(c1)]));
    circ.push(Gate::x(c1));
    Ok(circ)
}

/// Classical image of one walk step on a valid basis pair, or None when the
/// pair is outside the shift's domain (a leaf-class label moving down).
pub fn walk_step_image(
    shape: TreeShape,
    vertex: usize,
    coin: crate::walk::CoinSymbol,
) -> Option<(usize, crate::walk::CoinSymbol)> {
    use crate::walk::CoinSymbol::*;
    match coin {
        Down => {
            if vertex % 2 == 0 {
                Some((vertex / 2, Left))
            } else {
                Some((vertex / 2, Right))
            }
        }
        Left => {
            if vertex < shape.leaf_base() {
                Some((2 * vertex, Down))
            } else {
                None
            }
        }
        Right => {
            if vertex < shape.leaf_base() {
                Some((2 * vertex + 1, Down))
            } else {
                None
            }
        }
    }
}
