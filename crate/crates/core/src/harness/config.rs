use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::agents::AgentSpec;
use crate::error::HarnessError;

/// Match protocol parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchConfig {
    pub hands_per_match: usize,
    pub matches_per_permutation: usize,
    pub master_seed: u64,
    pub normalization_divisor: f64,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            hands_per_match: 3000,
            matches_per_permutation: 10,
            master_seed: 0,
            normalization_divisor: 100_000.0,
        }
    }
}

impl MatchConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.hands_per_match < 1 {
            return Err(HarnessError::Config("hands_per_match must be at least 1".into()));
        }
        if self.matches_per_permutation < 1 {
            return Err(HarnessError::Config(
                "matches_per_permutation must be at least 1".into(),
            ));
        }
        if !(self.normalization_divisor > 0.0 && self.normalization_divisor.is_finite()) {
            return Err(HarnessError::Config(
                "normalization_divisor must be a positive number".into(),
            ));
        }
        Ok(())
    }
}

fn default_hands() -> usize {
    MatchConfig::default().hands_per_match
}

fn default_matches() -> usize {
    MatchConfig::default().matches_per_permutation
}

fn default_divisor() -> f64 {
    MatchConfig::default().normalization_divisor
}

/// Tournament configuration file (TOML):
///
/// ```toml
/// hands_per_match = 3000
/// matches_per_permutation = 10
/// master_seed = 42
/// normalization_divisor = 100000
///
/// [[agents]]
/// name = "nash-lb"
/// kind = "NashLB"
///
/// [[agents]]
/// name = "honest"
/// kind = "HonestNoBluff"
/// king_bet = 0.5
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TournamentConfig {
    #[serde(default = "default_hands")]
    pub hands_per_match: usize,
    #[serde(default = "default_matches")]
    pub matches_per_permutation: usize,
    pub master_seed: u64,
    #[serde(default = "default_divisor")]
    pub normalization_divisor: f64,
    pub agents: Vec<AgentSpec>,
}

impl TournamentConfig {
    pub fn new(config: MatchConfig, agents: Vec<AgentSpec>) -> Self {
        TournamentConfig {
            hands_per_match: config.hands_per_match,
            matches_per_permutation: config.matches_per_permutation,
            master_seed: config.master_seed,
            normalization_divisor: config.normalization_divisor,
            agents,
        }
    }

    pub fn match_config(&self) -> MatchConfig {
        MatchConfig {
            hands_per_match: self.hands_per_match,
            matches_per_permutation: self.matches_per_permutation,
            master_seed: self.master_seed,
            normalization_divisor: self.normalization_divisor,
        }
    }

    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let config: TournamentConfig =
            toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        self.match_config().validate()?;
        if self.agents.len() < 3 {
            return Err(HarnessError::Config(format!(
                "agents: need at least 3, found {}",
                self.agents.len()
            )));
        }
        let mut names = HashSet::new();
        for spec in &self.agents {
            if !names.insert(spec.name.as_str()) {
                return Err(HarnessError::Config(format!(
                    "agents: duplicate name {:?}",
                    spec.name
                )));
            }
            spec.validate()?;
        }
        Ok(())
    }
}
