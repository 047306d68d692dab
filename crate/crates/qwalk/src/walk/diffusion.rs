use std::f64::consts::PI;

use crate::error::Result;
use crate::sim::{Circuit, Control, Gate};
use crate::tree::TreeShape;
use crate::walk::oracle::{build_oracle, OracleSpec};
use crate::walk::reflections::{build_reflection_u, build_reflection_uprime};

/// Diffusion circuit over W and C, block diagonal over walker labels:
///
/// * value-1 leaves: phase flip (the oracle),
/// * internal labels (>= 2, leaf flag clear): the negated coin reflection
///   -R|u>,
/// * label 1: the tail reflection R|u'>,
/// * label 0: identity.
///
/// Built from vertex-class predicates: the oracle first, then the negated
/// R|u> on every label with the leaf flag clear, then exact-pattern
/// corrections that undo it at labels 0 and 1 (substituting R|u'> at 1).
///
/// The sign on the internal-vertex reflection is load-bearing: with +R|u>
/// there the walk spectrum carries no NAND-value information at eigenphase
/// 0 for any initial state, while the negated block separates the two value
/// classes (see the calibration tests). RY(2pi) = -I supplies the sign as a
/// coin-local gate.
pub fn build_diffusion(shape: TreeShape, spec: &OracleSpec) -> Result<Circuit> {
    spec.validate(shape)?;
    let l = shape.levels();
    let c0 = l + 1;
    let c1 = l + 2;
    let mut circ = Circuit::new(l + 3)
        .with_register("W", 0, l)
        .with_register("C", c0, c1);

    circ.extend(build_oracle(spec, shape)?.gates);

    // -R|u> block on the coin, wherever the leaf flag (walker MSB) is 0.
    let coin = |q: usize| if q == 0 { c0 } else { c1 };
    let mut minus_ru = build_reflection_u();
    minus_ru.push(Gate::ry(0, 2.0 * PI));
    let not_leaf = Control::on0(l);
    for g in &minus_ru.gates {
        let mut g = g.remapped(coin);
        g.add_control(not_leaf);
        circ.push(g);
    }

    // Label 0: undo the block, leaving the identity.
    let label0: Vec<Control> = (0..=l).map(Control::on0).collect();
    for g in &minus_ru.inverse().gates {
        let mut g = g.remapped(coin);
        g.controls.extend(label0.iter().copied());
        circ.push(g);
    }

    // Label 1: undo the block, then apply R|u'>.
    let label1: Vec<Control> = (0..=l)
        .map(|q| Control {
            qubit: q,
            on: q == 0,
        })
        .collect();
    for g in minus_ru
        .inverse()
        .gates
        .iter()
        .chain(build_reflection_uprime(shape.n_leaves())?.gates.iter())
    {
        let mut g = g.remapped(coin);
        g.controls.extend(label1.iter().copied());
        circ.push(g);
    }
    Ok(circ)
}

/// Walk operator: diffusion followed by the walk step.
pub fn build_walk_operator(shape: TreeShape, spec: &OracleSpec) -> Result<Circuit> {
    let mut circ = build_diffusion(shape, spec)?;
    let step = crate::walk::step::build_walk_step(shape)?;
    circ.extend(step.gates);
    Ok(circ)
}
