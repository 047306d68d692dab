//! Circuit builders for the coined walk on tailed NAND trees: label
//! arithmetic (P, M), the walk step, coin reflections, phase oracles and
//! the diffusion step.

pub mod arithmetic;
pub mod diffusion;
pub mod oracle;
pub mod reflections;
pub mod registry;
pub mod step;

pub use arithmetic::{build_decrement, build_increment, build_rotate_left, build_rotate_right};
pub use diffusion::{build_diffusion, build_walk_operator};
pub use oracle::{build_oracle, OracleSpec, Trit};
pub use reflections::{build_reflection_u, build_reflection_uprime, theta, theta1, theta2};
pub use registry::{builders, find_builder, BuildParams, CircuitBuilder};
pub use step::{build_walk_step, walk_step_image};

/// Coin directions and their 2-qubit encoding (c1 c0): down = 00,
/// left = 10, right = 11. The 01 pattern is never produced on validly
/// encoded inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoinSymbol {
    Down,
    Left,
    Right,
}

impl CoinSymbol {
    /// (c1, c0) bit pair.
    pub fn bits(self) -> (bool, bool) {
        match self {
            CoinSymbol::Down => (false, false),
            CoinSymbol::Left => (true, false),
            CoinSymbol::Right => (true, true),
        }
    }

    /// Index into a 4-dimensional coin space with c0 as bit 0.
    pub fn index(self) -> usize {
        let (c1, c0) = self.bits();
        ((c1 as usize) << 1) | c0 as usize
    }

    pub const ALL: [CoinSymbol; 3] = [CoinSymbol::Down, CoinSymbol::Left, CoinSymbol::Right];
}

/// Basis index of |vertex>|coin> in a walk register layout with L+1 walker
/// qubits (bits 0..=L) and the coin at bits L+1 (c0), L+2 (c1).
pub fn basis_index(shape: crate::tree::TreeShape, vertex: usize, coin: CoinSymbol) -> usize {
    let l = shape.levels();
    let (c1, c0) = coin.bits();
    vertex | ((c0 as usize) << (l + 1)) | ((c1 as usize) << (l + 2))
}
