//! Three-player Kuhn poker laboratory: an exact rules engine, the two
//! published Nash equilibrium profiles, exact best-response verification, CFR
//! training, a zoo of baseline agents, and a duplicate-match tournament
//! harness.

pub mod equilibrium;
pub mod error;
pub mod game;
pub mod scalar;
pub mod strategy;
pub mod tree;
pub mod agents;
pub mod harness;
