use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwalk::agent::{
    act, evolve, exact_leaves, features, forward, opponent_by_name, perfect_action, play_match,
    preset, win_rate, AgentGenome, EvolutionConfig, GameState, NetworkShape, OraclePredictor,
    Player, TreeEvalMode, TreeEvaluator,
};
use qwalk::tree::TreeShape;
use qwalk::walk::{OracleSpec, Trit};

fn state(target: u32, counter: u32, to_move: Player) -> GameState {
    GameState {
        counter,
        target,
        to_move,
    }
}

/// Brute-force game solve, independent of the mod-3 formula.
fn mover_wins_brute(target: u32, counter: u32) -> bool {
    if counter >= target {
        return false;
    }
    (1..=2u32)
        .filter(|a| counter + a <= target)
        .any(|a| !mover_wins_brute(target, counter + a))
}

// ---- game ----

#[test]
fn game_basics() {
    let s = GameState::new(10, Player::Agent);
    assert_eq!(s.legal_actions(), vec![1, 2]);
    assert!(!s.is_terminal());
    assert_eq!(s.winner(), None);
    let near = state(10, 9, Player::Agent);
    assert_eq!(near.legal_actions(), vec![1]);
    let done = near.apply(1);
    assert!(done.is_terminal());
    assert_eq!(done.winner(), Some(Player::Agent));
}

#[test]
fn mover_wins_matches_brute_force() {
    for target in 1..=15u32 {
        for counter in 0..target {
            assert_eq!(
                state(target, counter, Player::Agent).mover_wins(),
                mover_wins_brute(target, counter),
                "K={target}, counter={counter}"
            );
        }
    }
}

#[test]
fn perfect_action_wins_whenever_possible() {
    for counter in 0..10u32 {
        let s = state(10, counter, Player::Agent);
        let a = perfect_action(&s);
        assert!(s.legal_actions().contains(&a));
        if s.mover_wins() {
            let next = s.apply(a);
            assert!(next.is_terminal() || !next.mover_wins());
        }
    }
}

// ---- exact oracle ----

fn nand_fold(leaves: &[bool]) -> bool {
    let mut vals = leaves.to_vec();
    while vals.len() > 1 {
        vals = vals.chunks(2).map(|p| !(p[0] & p[1])).collect();
    }
    vals[0]
}

#[test]
fn exact_leaves_spot_checks() {
    // K=10, counter 8, agent to move: +2 reaches the target and wins, +1
    // hands the opponent the win.
    let s = state(10, 8, Player::Agent);
    for horizon in 1..=3usize {
        assert!(nand_fold(&exact_leaves(&s, 2, horizon)));
        assert!(!nand_fold(&exact_leaves(&s, 1, horizon)));
    }
    // Horizon 1 has no move bits: both leaves equal.
    let l = exact_leaves(&s, 1, 1);
    assert_eq!(l.len(), 2);
    assert_eq!(l[0], l[1]);
}

#[test]
fn exact_leaves_root_value_is_action_quality() {
    // NAND-evaluating the predicted tree must say exactly "this action
    // leads to an agent win under perfect play".
    for counter in 0..10u32 {
        let s = state(10, counter, Player::Agent);
        for a in s.legal_actions() {
            let want = s.apply(a).agent_wins_perfect();
            for horizon in 1..=4usize {
                assert_eq!(
                    nand_fold(&exact_leaves(&s, a, horizon)),
                    want,
                    "counter={counter}, action={a}, horizon={horizon}"
                );
            }
        }
    }
}

#[test]
fn exact_leaves_length() {
    let s = state(10, 0, Player::Agent);
    for horizon in 1..=5usize {
        assert_eq!(exact_leaves(&s, 1, horizon).len(), 1 << horizon);
    }
}

// ---- network ----

fn net() -> NetworkShape {
    NetworkShape::for_horizon(2, 4, vec![16])
}

#[test]
fn features_are_standardized() {
    let f = features(&state(10, 4, Player::Agent));
    assert_eq!(f, [0.4, 0.6, 1.0]);
    let f = features(&state(10, 4, Player::Opponent));
    assert_eq!(f[2], -1.0);
}

#[test]
fn zero_weights_decode_to_identity_oracle() {
    let shape = net();
    let weights = vec![0.0; shape.genome_len()];
    let specs = forward(&shape, &weights, &state(10, 3, Player::Agent)).unwrap();
    assert_eq!(specs.len(), 2);
    let tree_shape = TreeShape::new(3).unwrap();
    for spec in &specs {
        let OracleSpec::Masks(rows) = spec else {
            panic!("network oracles are mask-form")
        };
        for row in rows {
            assert!(row.iter().all(|&t| t == Trit::Ignore));
        }
        assert_eq!(
            spec.effective_leaves(tree_shape).unwrap(),
            vec![false; 4]
        );
    }
}

#[test]
fn network_never_controls_the_second_msb() {
    let shape = net();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..20u64 {
        let weights: Vec<f64> = (0..shape.genome_len())
            .map(|i| ((i as f64 + trial as f64 * 0.7).sin()) * 2.0)
            .collect();
        let specs = forward(&shape, &weights, &state(10, trial as u32 % 10, Player::Agent))
            .unwrap();
        for spec in &specs {
            let OracleSpec::Masks(rows) = spec else { unreachable!() };
            for row in rows {
                assert_eq!(row[shape.mask_qubits - 1], Trit::Ignore);
            }
            spec.validate(TreeShape::new(3).unwrap()).unwrap();
        }
        let _ = &mut rng;
    }
}

#[test]
fn forward_rejects_wrong_genome_length() {
    let shape = net();
    let weights = vec![0.0; shape.genome_len() - 1];
    assert!(forward(&shape, &weights, &state(10, 0, Player::Agent)).is_err());
}

#[test]
fn forward_is_deterministic() {
    let shape = net();
    let weights: Vec<f64> = (0..shape.genome_len()).map(|i| (i as f64).cos()).collect();
    let s = state(10, 5, Player::Opponent);
    assert_eq!(
        forward(&shape, &weights, &s).unwrap(),
        forward(&shape, &weights, &s).unwrap()
    );
}

// ---- policy ----

#[test]
fn act_takes_the_unique_winning_action() {
    let evaluator = TreeEvaluator::new(TreeEvalMode::Classical);
    let s = state(10, 8, Player::Agent);
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = act(&OraclePredictor::Exact, &s, 2, &evaluator, &mut rng).unwrap();
        assert_eq!(a, 2);
    }
}

#[test]
fn act_falls_back_to_uniform_when_lost() {
    // Counter 7 of 10: remaining 3, every action loses under perfect play.
    let evaluator = TreeEvaluator::new(TreeEvalMode::Classical);
    let s = state(10, 7, Player::Agent);
    let mut seen = [false; 2];
    for seed in 0..40u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = act(&OraclePredictor::Exact, &s, 2, &evaluator, &mut rng).unwrap();
        seen[(a - 1) as usize] = true;
    }
    assert!(seen[0] && seen[1], "fallback never explored both actions");
}

#[test]
fn spectral_and_classical_evaluators_agree() {
    let spectral = TreeEvaluator::new(TreeEvalMode::Spectral);
    let classical = TreeEvaluator::new(TreeEvalMode::Classical);
    let shape = TreeShape::new(3).unwrap();
    for bits in 0..16u32 {
        let leaves: Vec<bool> = (0..4).map(|i| bits & (1 << i) != 0).collect();
        let a = spectral.eval_leaves(shape, &leaves).unwrap();
        let b = classical.eval_leaves(shape, &leaves).unwrap();
        assert_eq!(a, b, "leaves {leaves:?}");
        // Cached second read agrees.
        assert_eq!(spectral.eval_leaves(shape, &leaves).unwrap(), a);
    }
}

#[test]
fn perfect_play_match_score_is_discounted_parity() {
    let evaluator = TreeEvaluator::new(TreeEvalMode::Classical);
    let opponent = opponent_by_name("perfect").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    // K=10, agent first: first mover wins; perfect play lasts 7 moves.
    let score = play_match(
        &OraclePredictor::Exact,
        opponent.as_ref(),
        10,
        2,
        0.99,
        &evaluator,
        &mut rng,
        true,
    )
    .unwrap();
    assert!((score - 0.99f64.powi(7)).abs() < 1e-12, "score {score}");
    // Agent second: the opponent moves first from the same winning spot.
    let score = play_match(
        &OraclePredictor::Exact,
        opponent.as_ref(),
        10,
        2,
        0.99,
        &evaluator,
        &mut rng,
        false,
    )
    .unwrap();
    assert!(score < 0.0, "score {score}");
}

#[test]
fn unknown_opponent_rejected() {
    assert!(opponent_by_name("psychic").is_err());
}

// ---- evolution ----

fn tiny_config() -> EvolutionConfig {
    EvolutionConfig {
        population: 8,
        k_best: 2,
        mutation_prob: 0.8,
        sigma: 0.05,
        crossover_window: 50,
        generations: 3,
        games_per_eval: 4,
        gamma: 0.99,
        seed: 42,
        target: 10,
        horizon: 2,
        opponent: "random".to_string(),
        net: NetworkShape::for_horizon(2, 2, vec![8]),
        init_sigma: 0.5,
    }
}

#[test]
fn evolution_is_reproducible_byte_for_byte() {
    let cfg = tiny_config();
    let a = evolve(&cfg).unwrap();
    let b = evolve(&cfg).unwrap();
    assert_eq!(a.fitness_log, b.fitness_log);
    assert_eq!(a.best.weights, b.best.weights);
    assert_eq!(a.best.fitness, b.best.fitness);

    let mut other = cfg;
    other.seed = 43;
    let c = evolve(&other).unwrap();
    assert_ne!(a.fitness_log, c.fitness_log);
}

#[test]
fn fitness_log_schema() {
    let out = evolve(&tiny_config()).unwrap();
    let mut lines = out.fitness_log.lines();
    assert_eq!(lines.next(), Some("# schema v1"));
    assert_eq!(lines.next(), Some("generation,best,mean"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for (g, row) in rows.iter().enumerate() {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 3);
        assert_eq!(cols[0].parse::<usize>().unwrap(), g);
        let best: f64 = cols[1].parse().unwrap();
        let mean: f64 = cols[2].parse().unwrap();
        assert!((-1.0..=1.0).contains(&best));
        assert!(mean <= best + 1e-12);
    }
}

#[test]
fn best_fitness_is_bounded_by_gamma() {
    let out = evolve(&tiny_config()).unwrap();
    assert!(out.best.fitness <= 0.99);
    assert!(out.best.fitness >= -1.0);
}

#[test]
fn config_validation() {
    let good = tiny_config();
    good.validate().unwrap();
    good.validate_strict().unwrap();

    let mut c = tiny_config();
    c.k_best = 0;
    assert!(c.validate().is_err());
    c = tiny_config();
    c.k_best = 9;
    assert!(c.validate().is_err());
    c = tiny_config();
    c.sigma = 0.2;
    assert!(c.validate().is_err());
    c = tiny_config();
    c.mutation_prob = 1.5;
    assert!(c.validate().is_err());
    c = tiny_config();
    c.crossover_window = 0;
    assert!(c.validate().is_err());
    c = tiny_config();
    c.crossover_window = c.net.genome_len() + 1;
    assert!(c.validate().is_err());
    c = tiny_config();
    c.games_per_eval = 0;
    assert!(c.validate().is_err());

    // Degenerate-but-legal: the whole population survives. Plain
    // validation allows it, the strict preset range does not.
    c = tiny_config();
    c.k_best = c.population;
    c.validate().unwrap();
    assert!(c.validate_strict().is_err());
}

#[test]
fn degenerate_config_runs_without_variation() {
    let mut c = tiny_config();
    c.k_best = c.population;
    c.sigma = 0.0;
    c.mutation_prob = 0.0;
    let out = evolve(&c).unwrap();
    assert_eq!(out.fitness_log.lines().count(), 5);
}

#[test]
fn effective_window_clamps_to_quarter_genome() {
    let mut c = tiny_config();
    c.crossover_window = 10_000_000;
    assert!(c.validate().is_err());
    c.crossover_window = c.net.genome_len();
    c.validate().unwrap();
    assert_eq!(c.effective_window(), (c.net.genome_len() / 4).max(1));
    c.crossover_window = 3;
    assert_eq!(c.effective_window(), 3);
}

#[test]
fn presets_exist_and_are_strictly_valid() {
    for name in ["table1-row1", "table1-row2", "smoke"] {
        let c = preset(name).unwrap();
        c.validate_strict().unwrap();
        assert_eq!(c.population, 64);
        assert_eq!(c.sigma, 0.1);
    }
    assert_eq!(preset("table1-row1").unwrap().crossover_window, 600);
    assert_eq!(preset("table1-row2").unwrap().crossover_window, 300);
    assert_eq!(preset("smoke").unwrap().generations, 60);
    assert!(preset("nope").is_none());
}

#[test]
fn win_rate_is_deterministic_and_bounded() {
    let cfg = tiny_config();
    let genome = AgentGenome {
        weights: vec![0.0; cfg.net.genome_len()],
        fitness: 0.0,
    };
    let a = win_rate(&genome, &cfg, 50, 5).unwrap();
    let b = win_rate(&genome, &cfg, 50, 5).unwrap();
    assert_eq!(a, b);
    assert!((0.0..=1.0).contains(&a));
}

#[test]
fn exact_predictor_dominates_random_opponent() {
    let cfg = tiny_config();
    let evaluator = TreeEvaluator::new(TreeEvalMode::Classical);
    let opponent = opponent_by_name("random").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut wins = 0;
    for game in 0..200 {
        let score = play_match(
            &OraclePredictor::Exact,
            opponent.as_ref(),
            cfg.target,
            cfg.horizon,
            cfg.gamma,
            &evaluator,
            &mut rng,
            game % 2 == 0,
        )
        .unwrap();
        if score > 0.0 {
            wins += 1;
        }
    }
    // The perfect oracle wins every game it starts (K=10 is a first-mover
    // win) and almost every game the random opponent starts.
    assert!(wins >= 180, "only {wins}/200 wins");
}
