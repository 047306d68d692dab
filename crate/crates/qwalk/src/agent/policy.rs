use std::cell::RefCell;
use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::agent::exact_oracle::exact_leaves;
use crate::agent::game::{perfect_action, GameState, Player};
use crate::agent::network::{forward, NetworkShape};
use crate::error::Result;
use crate::eval::{calibration_for, spectral_eval};
use crate::tree::{eval_nand_classical, TailedTree, TreeShape};
use crate::walk::OracleSpec;

/// How the policy evaluates action trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeEvalMode {
    /// Exact walk-spectrum evaluation with the calibrated rule for the
    /// tree's level count. Feasible for small horizons only.
    Spectral,
    /// Classical NAND fold. Contract-equal to the spectral path (the
    /// evaluator's acceptance contract) and usable at any horizon.
    Classical,
}

/// Action-tree evaluator with a per-(levels, leaves) memo; mask oracles are
/// reduced to their effective leaf bitstring first, so distinct masks with
/// equal phase action share cache entries.
pub struct TreeEvaluator {
    pub mode: TreeEvalMode,
    cache: RefCell<HashMap<(usize, Vec<u64>), bool>>,
}

impl TreeEvaluator {
    pub fn new(mode: TreeEvalMode) -> Self {
        TreeEvaluator {
            mode,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn eval_leaves(&self, shape: TreeShape, leaves: &[bool]) -> Result<bool> {
        let mut packed = vec![0u64; leaves.len().div_ceil(64)];
        for (i, &b) in leaves.iter().enumerate() {
            if b {
                packed[i / 64] |= 1u64 << (i % 64);
            }
        }
        let key = (shape.levels(), packed);
        if let Some(&v) = self.cache.borrow().get(&key) {
            return Ok(v);
        }
        let value = match self.mode {
            TreeEvalMode::Classical => {
                eval_nand_classical(&TailedTree::new(shape, leaves.to_vec())?)
            }
            TreeEvalMode::Spectral => {
                let rule = calibration_for(shape)?.rule;
                spectral_eval(shape, leaves, &rule)?.value == 1
            }
        };
        self.cache.borrow_mut().insert(key, value);
        Ok(value)
    }

    pub fn eval_spec(&self, shape: TreeShape, spec: &OracleSpec) -> Result<bool> {
        self.eval_leaves(shape, &spec.effective_leaves(shape)?)
    }
}

/// Source of per-action oracles for the policy.
pub enum OraclePredictor<'a> {
    Network {
        shape: &'a NetworkShape,
        weights: &'a [f64],
    },
    /// Ground-truth game-subtree oracle (bypasses the network).
    Exact,
}

/// Chooses an action: evaluates each legal action's predicted tree, then
/// picks uniformly among the actions whose formula value is 1, falling back
/// to a uniform choice over all legal actions when none are.
pub fn act(
    predictor: &OraclePredictor,
    state: &GameState,
    horizon: usize,
    evaluator: &TreeEvaluator,
    rng: &mut ChaCha8Rng,
) -> Result<u32> {
    let tree_shape = TreeShape::new(horizon + 1)?;
    let legal = state.legal_actions();
    let specs = match predictor {
        OraclePredictor::Network { shape, weights } => Some(forward(shape, weights, state)?),
        OraclePredictor::Exact => None,
    };
    let mut winning = Vec::new();
    for &a in &legal {
        let value = match &specs {
            Some(sp) => evaluator.eval_spec(tree_shape, &sp[(a - 1) as usize])?,
            None => evaluator.eval_leaves(tree_shape, &exact_leaves(state, a, horizon))?,
        };
        if value {
            winning.push(a);
        }
    }
    let pool = if winning.is_empty() { &legal } else { &winning };
    Ok(pool[rng.gen_range(0..pool.len())])
}

/// Opponent policies, dispatchable by name.
pub trait OpponentPolicy {
    fn name(&self) -> &'static str;
    fn choose(&self, state: &GameState, rng: &mut ChaCha8Rng) -> u32;
}

pub struct RandomOpponent;

impl OpponentPolicy for RandomOpponent {
    fn name(&self) -> &'static str {
        "random"
    }

    fn choose(&self, state: &GameState, rng: &mut ChaCha8Rng) -> u32 {
        let legal = state.legal_actions();
        legal[rng.gen_range(0..legal.len())]
    }
}

pub struct PerfectOpponent;

impl OpponentPolicy for PerfectOpponent {
    fn name(&self) -> &'static str {
        "perfect"
    }

    fn choose(&self, state: &GameState, _rng: &mut ChaCha8Rng) -> u32 {
        perfect_action(state)
    }
}

pub fn opponent_by_name(name: &str) -> Result<Box<dyn OpponentPolicy>> {
    match name {
        "random" => Ok(Box::new(RandomOpponent)),
        "perfect" => Ok(Box::new(PerfectOpponent)),
        other => Err(crate::error::Error::UnknownOpponent(other.to_string())),
    }
}

/// Plays one game and returns the discounted score gamma^T * r, where T is
/// the total move count and r is +1 for an agent win, -1 otherwise.
#[allow(clippy::too_many_arguments)]
pub fn play_match(
    predictor: &OraclePredictor,
    opponent: &dyn OpponentPolicy,
    target: u32,
    horizon: usize,
    gamma: f64,
    evaluator: &TreeEvaluator,
    rng: &mut ChaCha8Rng,
    agent_first: bool,
) -> Result<f64> {
    let first = if agent_first {
        Player::Agent
    } else {
        Player::Opponent
    };
    let mut state = GameState::new(target, first);
    let mut moves = 0u32;
    while !state.is_terminal() {
        let a = match state.to_move {
            Player::Agent => act(predictor, &state, horizon, evaluator, rng)?,
            Player::Opponent => opponent.choose(&state, rng),
        };
        state = state.apply(a);
        moves += 1;
    }
    let r = if state.winner() == Some(Player::Agent) {
        1.0
    } else {
        -1.0
    };
    Ok(gamma.powi(moves as i32) * r)
}
