//! Compares the spread of one agent's results under duplicate card
//! sequences against independent cards with the same number of hands.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agents::{AgentSpec, PreparedAgent};
use crate::error::HarnessError;
use crate::game::NUM_SEATS;

use super::config::MatchConfig;
use super::play::{deal_sequence, play_duplicate_set, play_seatings};
use super::seeds::derive_seed;

pub const MIN_REPLICATIONS: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmStats {
    pub mean: f64,
    pub variance: f64,
    /// Chips per hand of the focus agent, one per replication.
    pub samples: Vec<f64>,
}

impl ArmStats {
    fn from_samples(samples: Vec<f64>) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let variance = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        ArmStats {
            mean,
            variance,
            samples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceStudy {
    pub agents: [String; NUM_SEATS],
    /// The agent whose results are measured (first of the triple).
    pub focus: String,
    pub replications: usize,
    /// Hands played per replication in each arm.
    pub hands_per_replication: usize,
    pub duplicate: ArmStats,
    pub independent: ArmStats,
    /// duplicate variance / independent variance; absent when the
    /// independent arm has zero variance.
    pub ratio: Option<f64>,
}

impl VarianceStudy {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("study serializes") + "\n"
    }
}

/// Each replication plays the six seatings twice: once over a single shared
/// card sequence (duplicate arm) and once with a fresh sequence per seating
/// (independent arm). Both arms play `6 * hands_per_match` hands.
pub fn variance_study(
    triple: &[AgentSpec; NUM_SEATS],
    config: &MatchConfig,
    replications: usize,
) -> Result<VarianceStudy, HarnessError> {
    config.validate()?;
    if replications < MIN_REPLICATIONS {
        return Err(HarnessError::Config(format!(
            "replications must be at least {MIN_REPLICATIONS}, got {replications}"
        )));
    }
    let prepared = triple
        .iter()
        .map(PreparedAgent::prepare)
        .collect::<Result<Vec<_>, _>>()?;
    let agents = [&prepared[0], &prepared[1], &prepared[2]];
    let names = triple.clone().map(|a| a.name);
    let hands = config.hands_per_match;
    let per_rep = (6 * hands) as f64;
    let study_seed = derive_seed(
        config.master_seed,
        &format!("variance:{}|{}|{}", names[0], names[1], names[2]),
    );

    let pairs: Vec<(f64, f64)> = (0..replications)
        .into_par_iter()
        .map(|r| {
            let rep_seed = derive_seed(study_seed, &format!("rep:{r}"));
            let dup = play_duplicate_set(agents, &names, hands, derive_seed(rep_seed, "duplicate"))?;
            let indep_seed = derive_seed(rep_seed, "independent");
            let (_, indep_totals) = play_seatings(agents, &names, indep_seed, |p| {
                deal_sequence(derive_seed(indep_seed, &format!("cards:{p}")), hands)
            })?;
            Ok((
                dup.agent_totals[0] as f64 / per_rep,
                indep_totals[0] as f64 / per_rep,
            ))
        })
        .collect::<Result<_, HarnessError>>()?;

    let (dup, indep): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let duplicate = ArmStats::from_samples(dup);
    let independent = ArmStats::from_samples(indep);
    let ratio = (independent.variance > 0.0).then(|| duplicate.variance / independent.variance);
    Ok(VarianceStudy {
        focus: names[0].clone(),
        agents: names,
        replications,
        hands_per_replication: 6 * hands,
        duplicate,
        independent,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agents::AgentKind;

    #[test]
    fn needs_enough_replications() {
        let triple = [
            AgentSpec::new("a", AgentKind::AlwaysPassive),
            AgentSpec::new("b", AgentKind::AlwaysPassive),
            AgentSpec::new("c", AgentKind::AlwaysPassive),
        ];
        assert!(variance_study(&triple, &MatchConfig::default(), 10).is_err());
    }

    #[test]
    fn identical_deterministic_agents_cancel_completely() {
        // Every hand is a three-way check-down. Rotating one agent through
        // all seats on the same cards nets exactly zero, while independent
        // cards still vary.
        let triple = [
            AgentSpec::new("a", AgentKind::AlwaysPassive),
            AgentSpec::new("b", AgentKind::AlwaysPassive),
            AgentSpec::new("c", AgentKind::AlwaysPassive),
        ];
        let config = MatchConfig {
            hands_per_match: 50,
            ..MatchConfig::default()
        };
        let study = variance_study(&triple, &config, 30).unwrap();
        assert_eq!(study.hands_per_replication, 300);
        assert!(study.duplicate.samples.iter().all(|&x| x == 0.0));
        assert!(study.independent.variance > 0.0);
        assert_eq!(study.ratio, Some(0.0));
    }
}
