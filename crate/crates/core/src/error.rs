use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("deal has a repeated card: {0}")]
    RepeatedCard(String),
    #[error("malformed deal {0:?}: expected three of J, Q, K, A")]
    BadDeal(String),
    #[error("unknown action token {0:?}")]
    BadToken(char),
    #[error("illegal history {0:?}")]
    IllegalHistory(String),
    #[error("action {action} is not legal after {history:?}")]
    IllegalAction { history: String, action: char },
    #[error("history {0:?} is terminal")]
    TerminalHistory(String),
    #[error("history {0:?} is not terminal")]
    NotTerminal(String),
    #[error("history {history:?} is not a decision point for seat {seat}")]
    NotADecisionPoint { seat: u8, history: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: probability {value} outside [0, 1]")]
    OutOfRange { line: usize, value: String },
    #[error("line {line}: duplicate entry for infoset {key}")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: extra entry beyond the 48 infosets")]
    Extra { line: usize },
    #[error("missing entries for {count} infosets, first is {first}")]
    Missing { count: usize, first: String },
    #[error("parameter table: {0}")]
    Table(String),
}

#[derive(Debug, Error)]
pub enum AgentError {
    #[error("agent {name}: invalid parameter {field}: {message}")]
    InvalidParameter {
        name: String,
        field: &'static str,
        message: String,
    },
    #[error("cannot read profile {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("profile {path}: {source}")]
    Profile { path: PathBuf, source: ProfileError },
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error("hand {hand}: seat {seat} returned illegal action {action} after {history:?}")]
    IllegalAction {
        hand: usize,
        seat: u8,
        action: char,
        history: String,
    },
    #[error("card sequence has {got} hands, expected {expected}")]
    CardCount { expected: usize, got: usize },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("match log line {line}: {message}")]
    Log { line: usize, message: String },
    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
}
