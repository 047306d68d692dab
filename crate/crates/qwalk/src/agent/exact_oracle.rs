use crate::agent::game::GameState;

/// Leaf values of the depth-`horizon` NAND tree describing one candidate
/// action from `state` (the mover is the agent).
///
/// The action tree has horizon + 1 levels. Its first branching below the
/// root is a duplicated copy of the chosen action (the root NAND of two
/// equal subtrees only toggles parity, which the leaf encoding absorbs);
/// the remaining horizon - 1 branchings are the players' alternating moves,
/// opponent first. Bit b of the leaf index selects the move at each level
/// (0 = +1, 1 = +2, with illegal +2 clamped to +1); positions reached after
/// the game ends are frozen.
///
/// A NAND tree with d alternation layers equals a max-rooted minimax tree
/// over leaves XORed with the parity of d, so leaf value =
/// (agent wins from the leaf position under perfect play) XOR (horizon odd)
/// makes the root compute exactly "this action wins".
pub fn exact_leaves(state: &GameState, action: u32, horizon: usize) -> Vec<bool> {
    let n = 1usize << horizon;
    let flip = horizon % 2 == 1;
    (0..n)
        .map(|i| {
            let mut pos = state.apply(action);
            // Bit horizon-1 is the duplicated action level; the move bits
            // run from horizon-2 down to 0, opponent first.
            for b in (0..horizon.saturating_sub(1)).rev() {
                if pos.is_terminal() {
                    break;
                }
                let mut mv = 1 + ((i >> b) & 1) as u32;
                if pos.counter + mv > pos.target {
                    mv = 1;
                }
                pos = pos.apply(mv);
            }
            pos.agent_wins_perfect() != flip
        })
        .collect()
}
