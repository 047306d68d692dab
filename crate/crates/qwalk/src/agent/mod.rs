//! Neuroevolution agent for the counting game: a feed-forward network
//! predicts per-action oracle control masks, NAND evaluation of the
//! predicted subtree drives the policy, and a genetic algorithm trains the
//! population.

pub mod evolve;
pub mod exact_oracle;
pub mod game;
pub mod network;
pub mod policy;

pub use evolve::{evolve, preset, win_rate, EvolutionConfig, EvolutionOutcome};
pub use exact_oracle::exact_leaves;
pub use game::{perfect_action, GameState, Player};
pub use network::{features, forward, AgentGenome, NetworkShape, INPUT_FEATURES};
pub use policy::{
    act, opponent_by_name, play_match, OpponentPolicy, OraclePredictor, PerfectOpponent,
    RandomOpponent, TreeEvalMode, TreeEvaluator,
};
