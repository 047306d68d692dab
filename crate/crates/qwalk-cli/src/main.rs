//! Command-line front end: circuit builders, simulation, formula
//! evaluation, spectra, calibration, agent training and playback.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 evaluation or
//! calibration failure.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwalk::agent::{
    act, evolve, opponent_by_name, preset, win_rate, AgentGenome, GameState, OraclePredictor,
    Player, TreeEvalMode, TreeEvaluator,
};
use qwalk::eval::{
    calibrate_decision_rule, calibration_for, qpe_eval, spectral_eval, walk_spectrum,
    EvalConfig,
};
use qwalk::sim::{apply_circuit, sample_index, Circuit, StateVector};
use qwalk::tree::{parse_leaf_string, TreeShape};
use qwalk::walk::{builders, find_builder, BuildParams};
use qwalk::Error;

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Quantum-walk NAND-tree toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format for structured results.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the primary output to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named circuit and emit its JSON gate list.
    Build {
        /// Builder name; see `build list`.
        name: String,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        qubits: Option<usize>,
        #[arg(long)]
        n_leaves: Option<usize>,
        /// Leaf bitstring, for oracle-bearing builders.
        #[arg(long)]
        leaves: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply a circuit JSON file to a basis state and print the result.
    Simulate {
        /// Circuit JSON file, as produced by `build`.
        #[arg(long)]
        circuit: String,
        /// Input basis index.
        #[arg(long, default_value_t = 0)]
        basis: usize,
        /// Sample this many full-register measurements instead of printing
        /// amplitudes.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, env = "QWALK_SEED", default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the NAND formula of a leaf assignment; prints 0 or 1.
    Eval {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        leaves: String,
        /// Use the exact spectral backend instead of sampled phase
        /// estimation.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 6)]
        phase_bits: usize,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
        #[arg(long, env = "QWALK_SEED", default_value_t = 7)]
        seed: u64,
        /// Write the full evaluation report JSON here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Print the walk-operator spectrum seen from the initial state.
    Spectrum {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        leaves: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Calibrate the decision rule for a tree size.
    Calibrate {
        #[arg(long)]
        levels: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evolve an agent population and write genome + fitness log.
    Train {
        /// Configuration preset: table1-row1, table1-row2 or smoke.
        #[arg(long)]
        preset: String,
        #[arg(long, env = "QWALK_SEED")]
        seed: Option<u64>,
        #[arg(long, default_value = "genome.json")]
        genome_out: String,
        #[arg(long, default_value = "fitness.csv")]
        log_out: String,
        /// Post-training evaluation games (0 skips the evaluation).
        #[arg(long, default_value_t = 0)]
        eval_games: usize,
    },
    /// Play counting-game matches and print the move transcript.
    Play {
        #[arg(long, default_value_t = 10)]
        target: u32,
        #[arg(long, default_value_t = 2)]
        horizon: usize,
        #[arg(long, default_value = "random")]
        opponent: String,
        /// Trained genome JSON; without it the exact subtree oracle plays.
        #[arg(long)]
        genome: Option<String>,
        /// Preset naming the network shape a genome file belongs to.
        #[arg(long, default_value = "smoke")]
        preset: String,
        #[arg(long, default_value_t = 1)]
        games: usize,
        #[arg(long, env = "QWALK_SEED", default_value_t = 7)]
        seed: u64,
    },
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), Error> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(Error::from),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Build {
            name,
            levels,
            qubits,
            n_leaves,
            leaves,
            output,
        } => {
            if name == "list" {
                for b in builders() {
                    println!("{:<18} {}", b.name(), b.about());
                }
                return Ok(());
            }
            let builder = find_builder(&name)?;
            let circuit = builder.build(&BuildParams {
                levels,
                qubits,
                n_leaves,
                leaves,
            })?;
            emit(&output, &circuit.to_json()?)
        }
        Command::Simulate {
            circuit,
            basis,
            shots,
            seed,
            output,
        } => {
            let circ = Circuit::from_json(&fs::read_to_string(circuit)?)?;
            let dim = 1usize << circ.num_qubits;
            if basis >= dim {
                return Err(Error::InvalidConfig(format!(
                    "basis index {basis} out of range for {} qubits",
                    circ.num_qubits
                )));
            }
            let state = apply_circuit(&StateVector::basis(circ.num_qubits, basis), &circ)?;
            match shots {
                None => {
                    let amps: Vec<[f64; 2]> =
                        state.amplitudes().iter().map(|a| [a.re, a.im]).collect();
                    match output.format {
                        Format::Json => emit(&output, &serde_json::to_string_pretty(&amps)?),
                        Format::Csv => {
                            let mut text = String::from("# schema v1\nindex,re,im\n");
                            for (i, a) in amps.iter().enumerate() {
                                text.push_str(&format!("{i},{:.17},{:.17}\n", a[0], a[1]));
                            }
                            emit(&output, text.trim_end())
                        }
                    }
                }
                Some(n) => {
                    let probs: Vec<f64> =
                        state.amplitudes().iter().map(|a| a.norm_sqr()).collect();
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut histogram: BTreeMap<usize, u64> = BTreeMap::new();
                    for _ in 0..n {
                        *histogram.entry(sample_index(&probs, &mut rng)).or_insert(0) += 1;
                    }
                    match output.format {
                        Format::Json => emit(&output, &serde_json::to_string_pretty(&histogram)?),
                        Format::Csv => {
                            let mut text = String::from("# schema v1\noutcome,count\n");
                            for (k, v) in &histogram {
                                text.push_str(&format!("{k},{v}\n"));
                            }
                            emit(&output, text.trim_end())
                        }
                    }
                }
            }
        }
        Command::Eval {
            levels,
            leaves,
            exact,
            phase_bits,
            shots,
            seed,
            out,
        } => {
            let shape = TreeShape::new(levels)?;
            let bits = parse_leaf_string(&leaves)?;
            if bits.len() != shape.n_leaves() {
                return Err(Error::LeafCountMismatch {
                    expected: shape.n_leaves(),
                    got: bits.len(),
                });
            }
            let rule = calibration_for(shape)?.rule;
            let report = if exact {
                spectral_eval(shape, &bits, &rule)?
            } else {
                qpe_eval(
                    shape,
                    &bits,
                    &EvalConfig {
                        phase_bits,
                        shots,
                        seed,
                        rule,
                    },
                )?
            };
            if let Some(path) = out {
                fs::write(path, serde_json::to_string_pretty(&report)?)?;
            }
            println!("{}", report.value);
            Ok(())
        }
        Command::Spectrum {
            levels,
            leaves,
            output,
        } => {
            let shape = TreeShape::new(levels)?;
            let bits = parse_leaf_string(&leaves)?;
            if bits.len() != shape.n_leaves() {
                return Err(Error::LeafCountMismatch {
                    expected: shape.n_leaves(),
                    got: bits.len(),
                });
            }
            let mut lines = walk_spectrum(shape, &bits)?;
            lines.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            match output.format {
                Format::Json => emit(&output, &serde_json::to_string_pretty(&lines)?),
                Format::Csv => {
                    let mut text = String::from("# schema v1\nphase,overlap\n");
                    for (p, o) in &lines {
                        text.push_str(&format!("{p:.12},{o:.12}\n"));
                    }
                    emit(&output, text.trim_end())
                }
            }
        }
        Command::Calibrate { levels, output } => {
            let calibration = calibrate_decision_rule(TreeShape::new(levels)?)?;
            emit(&output, &serde_json::to_string_pretty(&calibration)?)
        }
        Command::Train {
            preset: preset_name,
            seed,
            genome_out,
            log_out,
            eval_games,
        } => {
            let mut config = preset(&preset_name)
                .ok_or_else(|| Error::InvalidConfig(format!("unknown preset '{preset_name}'")))?;
            if let Some(s) = seed {
                config.seed = s;
            }
            let outcome = evolve(&config)?;
            fs::write(&genome_out, serde_json::to_string_pretty(&outcome.best)?)?;
            fs::write(&log_out, &outcome.fitness_log)?;
            println!("best fitness {:.9}", outcome.best.fitness);
            if eval_games > 0 {
                let rate = win_rate(&outcome.best, &config, eval_games, config.seed ^ 0x5eed)?;
                println!("win rate {:.4} over {eval_games} games", rate);
            }
            Ok(())
        }
        Command::Play {
            target,
            horizon,
            opponent,
            genome,
            preset: preset_name,
            games,
            seed,
        } => {
            let config = preset(&preset_name)
                .ok_or_else(|| Error::InvalidConfig(format!("unknown preset '{preset_name}'")))?;
            let stored: Option<AgentGenome> = match &genome {
                Some(path) => Some(serde_json::from_str(&fs::read_to_string(path)?)?),
                None => None,
            };
            let predictor = match &stored {
                Some(g) => OraclePredictor::Network {
                    shape: &config.net,
                    weights: &g.weights,
                },
                None => OraclePredictor::Exact,
            };
            let opponent = opponent_by_name(&opponent)?;
            let mode = if horizon <= 3 {
                TreeEvalMode::Spectral
            } else {
                TreeEvalMode::Classical
            };
            let evaluator = TreeEvaluator::new(mode);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut wins = 0usize;
            for game in 0..games {
                let agent_first = game % 2 == 0;
                let first = if agent_first {
                    Player::Agent
                } else {
                    Player::Opponent
                };
                println!(
                    "game {game}: target {target}, {} first",
                    if agent_first { "agent" } else { "opponent" }
                );
                let mut state = GameState::new(target, first);
                while !state.is_terminal() {
                    let mover = state.to_move;
                    let a = match mover {
                        Player::Agent => act(&predictor, &state, horizon, &evaluator, &mut rng)?,
                        Player::Opponent => opponent.choose(&state, &mut rng),
                    };
                    state = state.apply(a);
                    println!(
                        "  {} +{} -> {}",
                        match mover {
                            Player::Agent => "agent   ",
                            Player::Opponent => "opponent",
                        },
                        a,
                        state.counter
                    );
                }
                let won = state.winner() == Some(Player::Agent);
                if won {
                    wins += 1;
                }
                println!("  winner: {}", if won { "agent" } else { "opponent" });
            }
            println!("agent won {wins}/{games}");
            Ok(())
        }
    }
}

/// Usage and malformed-input errors exit 1; evaluation, calibration and
/// size-limit failures exit 2.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BadLeafString
        | Error::LeafCountMismatch { .. }
        | Error::UnknownBuilder(_)
        | Error::MissingBuildParam { .. }
        | Error::UnknownOpponent(_)
        | Error::InvalidConfig(_)
        | Error::TooFewLevels(_)
        | Error::TooManyLevels(..)
        | Error::Io(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit 0.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
