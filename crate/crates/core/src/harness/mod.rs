//! Duplicate-match tournament harness.
//!
//! A grouping of three agents plays `matches_per_permutation` duplicate sets.
//! A duplicate set deals one card sequence and plays it once under each of
//! the six seatings, so every agent holds every seat's cards.

mod config;
mod log;
mod play;
pub mod seeds;
mod tournament;
mod variance;

pub use config::{MatchConfig, TournamentConfig};
pub use log::{format_match_log, parse_match_log, replay, replay_file, write_match_log, MatchLog};
pub use play::{
    deal_sequence, play_match, run_duplicate_set, run_match, DuplicateSet, HandRecord, MatchRecord,
    MatchSummary, PermutationMatch, PERMUTATIONS,
};
pub use tournament::{
    grouping_seed, groupings, match_id, run_pool, run_tournament, run_tournament_with_logs,
    set_seed, AgentSummary, GroupingReport, ReportMetadata, SetReport, TournamentReport,
};
pub use variance::{variance_study, ArmStats, VarianceStudy, MIN_REPLICATIONS};
