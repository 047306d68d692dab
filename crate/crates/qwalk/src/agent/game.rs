use serde::{Deserialize, Serialize};

/// The counting game: players alternately add 1 or 2 to a counter starting
/// at 0; whoever reaches exactly the target K wins. Overshooting moves are
/// illegal, so at counter K-1 only +1 is offered. Under perfect play the
/// mover loses iff (K - counter) is divisible by 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    Agent,
    Opponent,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Agent => Player::Opponent,
            Player::Opponent => Player::Agent,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameState {
    pub counter: u32,
    pub target: u32,
    pub to_move: Player,
}

impl GameState {
    pub fn new(target: u32, first: Player) -> Self {
        GameState {
            counter: 0,
            target,
            to_move: first,
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.counter >= self.target
    }

    /// The player who reached the target, if the game is over.
    pub fn winner(&self) -> Option<Player> {
        if self.is_terminal() {
            Some(self.to_move.other())
        } else {
            None
        }
    }

    pub fn legal_actions(&self) -> Vec<u32> {
        [1u32, 2]
            .into_iter()
            .filter(|a| self.counter + a <= self.target)
            .collect()
    }

    pub fn apply(&self, action: u32) -> GameState {
        GameState {
            counter: self.counter + action,
            target: self.target,
            to_move: self.to_move.other(),
        }
    }

    /// Perfect-play value for the player to move.
    pub fn mover_wins(&self) -> bool {
        (self.target - self.counter) % 3 != 0
    }

    /// Perfect-play value for the agent at any position (terminal or not).
    pub fn agent_wins_perfect(&self) -> bool {
        if let Some(w) = self.winner() {
            return w == Player::Agent;
        }
        (self.to_move == Player::Agent) == self.mover_wins()
    }
}

/// A winning move when one exists, otherwise +1.
pub fn perfect_action(state: &GameState) -> u32 {
    for a in state.legal_actions() {
        let next = state.apply(a);
        if next.is_terminal() || !next.mover_wins() {
            return a;
        }
    }
    1
}
