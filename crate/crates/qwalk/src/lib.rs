//! Coined quantum-walk circuit synthesis and dense state-vector simulation
//! for NAND-tree evaluation, plus a neuroevolution agent whose network
//! predicts oracle control masks for a counting game.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * Basis-index endianness: qubit k is bit k of the basis index. The
//!   walker register W occupies qubits 0..=L (bit L, its most significant
//!   qubit, is the leaf flag); the coin register C sits above it with
//!   c0 = L+1 and c1 = L+2.
//! * Coin encoding (c1 c0): down = 00, left = 10, right = 11.
//! * RY(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2),
//!   cos(theta/2)]].
//! * Numeric tolerance 1e-10 for exact-circuit identities, 64-bit complex
//!   floats throughout.

pub mod agent;
pub mod error;
pub mod eval;
pub mod sim;
pub mod tree;
pub mod walk;

pub use error::{Error, Result};
