use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agents::{AgentSpec, PreparedAgent};
use crate::error::HarnessError;
use crate::game::NUM_SEATS;

use super::config::{MatchConfig, TournamentConfig};
use super::log::write_match_log;
use super::play::{play_duplicate_set, DuplicateSet, MatchSummary};
use super::seeds::derive_seed;

/// All 3-subsets of `0..n` in lexicographic order.
pub fn groupings(n: usize) -> Vec<[usize; NUM_SEATS]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Seed of a grouping, keyed by the agents' names so that adding agents to
/// the pool leaves existing groupings untouched.
pub fn grouping_seed(master_seed: u64, names: &[String; NUM_SEATS]) -> u64 {
    derive_seed(master_seed, &format!("grouping:{}|{}|{}", names[0], names[1], names[2]))
}

pub fn set_seed(grouping_seed: u64, set_index: usize) -> u64 {
    derive_seed(grouping_seed, &format!("set:{set_index}"))
}

pub fn match_id(grouping: usize, set: usize, permutation: usize) -> String {
    format!("g{grouping:03}-set{set:02}-perm{permutation}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentSummary {
    pub name: String,
    pub groupings: usize,
    pub hands: u64,
    pub total_chips: i64,
    pub chips_per_hand: f64,
    pub normalized_total: f64,
    /// Standard error of chips per hand over duplicate-set aggregates;
    /// absent with fewer than two sets.
    pub std_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetReport {
    pub set_index: usize,
    pub seed: u64,
    pub agent_totals: [i64; NUM_SEATS],
    pub matches: Vec<MatchSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupingReport {
    pub index: usize,
    pub agents: [String; NUM_SEATS],
    pub agent_totals: [i64; NUM_SEATS],
    pub sets: Vec<SetReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub master_seed: u64,
    pub hands_per_match: usize,
    pub matches_per_permutation: usize,
    pub normalization_divisor: f64,
    pub pool: Vec<AgentSpec>,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TournamentReport {
    pub metadata: ReportMetadata,
    pub agents: Vec<AgentSummary>,
    pub groupings: Vec<GroupingReport>,
}

impl TournamentReport {
    pub fn agent(&self, name: &str) -> Option<&AgentSummary> {
        self.agents.iter().find(|a| a.name == name)
    }

    pub fn find_match(&self, id: &str) -> Option<&MatchSummary> {
        self.groupings
            .iter()
            .flat_map(|g| &g.sets)
            .flat_map(|s| &s.matches)
            .find(|m| m.id == id)
    }

    pub fn match_count(&self) -> usize {
        self.groupings
            .iter()
            .flat_map(|g| &g.sets)
            .map(|s| s.matches.len())
            .sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("agent,groupings,total_chips,chips_per_hand,normalized_total,std_error\n");
        for a in &self.agents {
            let se = a.std_error.map(|s| format!("{s:.6}")).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{:.6},{},{}",
                a.name, a.groupings, a.total_chips, a.chips_per_hand, a.normalized_total, se
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn std_error(samples: &[f64]) -> Option<f64> {
    let n = samples.len();
    if n < 2 {
        return None;
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Some((var / n as f64).sqrt())
}

/// Every 3-subset of the pool plays `matches_per_permutation` duplicate sets.
/// When `log_dir` is given, each match's hand log is written there as
/// `<match id>.log`.
pub fn run_tournament_with_logs(
    config: &TournamentConfig,
    log_dir: Option<&Path>,
) -> Result<TournamentReport, HarnessError> {
    config.validate()?;
    let mc = config.match_config();
    let pool = &config.agents;
    let prepared = pool
        .iter()
        .map(PreparedAgent::prepare)
        .collect::<Result<Vec<_>, _>>()?;
    let groups = groupings(pool.len());
    let units: Vec<(usize, usize)> = (0..groups.len())
        .flat_map(|g| (0..mc.matches_per_permutation).map(move |s| (g, s)))
        .collect();

    // Units run in parallel; collect keeps their order.
    let sets: Vec<DuplicateSet> = units
        .par_iter()
        .map(|&(g, s)| {
            let members = groups[g];
            let names = members.map(|i| pool[i].name.clone());
            let seed = set_seed(grouping_seed(mc.master_seed, &names), s);
            let mut set = play_duplicate_set(
                members.map(|i| &prepared[i]),
                &names,
                mc.hands_per_match,
                seed,
            )?;
            if let Some(dir) = log_dir {
                for (p, m) in set.matches.iter().enumerate() {
                    let path = dir.join(format!("{}.log", match_id(g, s, p)));
                    write_match_log(&path, &match_id(g, s, p), &m.record)?;
                }
            }
            set.strip_hands();
            Ok(set)
        })
        .collect::<Result<_, HarnessError>>()?;

    Ok(build_report(config, &mc, &groups, &sets))
}

pub fn run_tournament(config: &TournamentConfig) -> Result<TournamentReport, HarnessError> {
    run_tournament_with_logs(config, None)
}

/// Convenience wrapper taking the pool and protocol separately.
pub fn run_pool(pool: &[AgentSpec], config: &MatchConfig) -> Result<TournamentReport, HarnessError> {
    run_tournament(&TournamentConfig::new(config.clone(), pool.to_vec()))
}

fn build_report(
    config: &TournamentConfig,
    mc: &MatchConfig,
    groups: &[[usize; NUM_SEATS]],
    sets: &[DuplicateSet],
) -> TournamentReport {
    let pool = &config.agents;
    let hands_per_set = (mc.hands_per_match * 6) as u64;
    let mut totals = vec![0i64; pool.len()];
    let mut hands = vec![0u64; pool.len()];
    let mut in_groupings = vec![0usize; pool.len()];
    let mut samples: Vec<Vec<f64>> = vec![Vec::new(); pool.len()];
    let mut grouping_reports = Vec::with_capacity(groups.len());

    for (g, members) in groups.iter().enumerate() {
        let group_sets = &sets[g * mc.matches_per_permutation..(g + 1) * mc.matches_per_permutation];
        let mut group_totals = [0i64; NUM_SEATS];
        let mut set_reports = Vec::with_capacity(group_sets.len());
        for (s, set) in group_sets.iter().enumerate() {
            for (k, &agent) in members.iter().enumerate() {
                group_totals[k] += set.agent_totals[k];
                totals[agent] += set.agent_totals[k];
                hands[agent] += hands_per_set;
                samples[agent].push(set.agent_totals[k] as f64 / hands_per_set as f64);
            }
            set_reports.push(SetReport {
                set_index: s,
                seed: set.seed,
                agent_totals: set.agent_totals,
                matches: set
                    .matches
                    .iter()
                    .enumerate()
                    .map(|(p, m)| MatchSummary {
                        id: match_id(g, s, p),
                        seats: m.record.seats.clone(),
                        seat_totals: m.record.seat_totals,
                    })
                    .collect(),
            });
        }
        for &agent in members {
            in_groupings[agent] += 1;
        }
        grouping_reports.push(GroupingReport {
            index: g,
            agents: members.map(|i| pool[i].name.clone()),
            agent_totals: group_totals,
            sets: set_reports,
        });
    }

    let agents = pool
        .iter()
        .enumerate()
        .map(|(i, spec)| AgentSummary {
            name: spec.name.clone(),
            groupings: in_groupings[i],
            hands: hands[i],
            total_chips: totals[i],
            chips_per_hand: if hands[i] > 0 {
                totals[i] as f64 / hands[i] as f64
            } else {
                0.0
            },
            normalized_total: totals[i] as f64 / mc.normalization_divisor,
            std_error: std_error(&samples[i]),
        })
        .collect();

    TournamentReport {
        metadata: ReportMetadata {
            master_seed: mc.master_seed,
            hands_per_match: mc.hands_per_match,
            matches_per_permutation: mc.matches_per_permutation,
            normalization_divisor: mc.normalization_divisor,
            pool: pool.clone(),
            generator: concat!("kuhn3 ", env!("CARGO_PKG_VERSION")).to_string(),
        },
        agents,
        groupings: grouping_reports,
    }
}
