use thiserror::Error;

/// Errors shared across the simulator, circuit builders, evaluators and the agent.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("qubit {0} used more than once in a single gate")]
    DuplicateQubit(usize),
    #[error("{kind} expects {expected} target(s), got {got}")]
    BadTargetCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{0} carries no angle; only RY does")]
    UnexpectedAngle(&'static str),
    #[error("RY gate requires an angle")]
    MissingAngle,
    #[error("register {name} range [{lo}, {hi}] is invalid for {num_qubits} qubits")]
    BadRegister {
        name: String,
        lo: usize,
        hi: usize,
        num_qubits: usize,
    },
    #[error("registers overlap or do not cover all {0} qubits")]
    BadRegisterCover(usize),
    #[error("circuit has {circuit} qubits but state has {state}")]
    RegisterMismatch { circuit: usize, state: usize },
    #[error("{qubits} qubits exceeds the configured limit of {limit}")]
    SizeLimit { qubits: usize, limit: usize },
    #[error("need {needed} ancilla qubit(s), got {got}")]
    InsufficientAncillas { needed: usize, got: usize },
    #[error("control, target and ancilla indices must be pairwise distinct")]
    OverlappingIndices,
    #[error("measurement requires a non-empty qubit list")]
    EmptyQubitList,
    #[error("tree needs at least 2 levels, got {0}")]
    TooFewLevels(usize),
    #[error("tree with {0} levels exceeds the supported maximum of {1}")]
    TooManyLevels(usize, usize),
    #[error("label {label} outside the tailed range 0..{count}")]
    LabelOutOfRange { label: usize, count: usize },
    #[error("label 0 has no parent")]
    ParentOfTailRoot,
    #[error("child {child} of {parent} falls outside the tailed label range")]
    ChildOutOfRange { parent: usize, child: usize },
    #[error("expected {expected} leaf values, got {got}")]
    LeafCountMismatch { expected: usize, got: usize },
    #[error("leaf string may contain only '0' and '1'")]
    BadLeafString,
    #[error("enumeration supports at most {max} leaves, got {got}")]
    TooManyLeaves { got: usize, max: usize },
    #[error("oracle mask row {row} has {got} trits, expected {expected}")]
    MaskRowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("oracle mask row {0} places a control on the second most significant walker qubit")]
    MaskOnSecondMsb(usize),
    #[error("reflection about |u'> needs at least 2 leaves, got {0}")]
    TooFewLeavesForReflection(usize),
    #[error("increment circuit needs at least 1 qubit")]
    EmptyIncrement,
    #[error("rotation circuit needs at least 2 qubits, got {0}")]
    RotationTooSmall(usize),
    #[error("phase estimation requires at least 1 phase bit")]
    NoPhaseBits,
    #[error("calibration found no separating decision rule for {levels} levels")]
    NoSeparatingRule { levels: usize },
    #[error("no calibrated decision rule available for {levels} levels")]
    MissingRule { levels: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown builder '{0}'")]
    UnknownBuilder(String),
    #[error("builder '{builder}' requires parameter --{param}")]
    MissingBuildParam {
        builder: &'static str,
        param: &'static str,
    },
    #[error("unknown opponent '{0}'")]
    UnknownOpponent(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
