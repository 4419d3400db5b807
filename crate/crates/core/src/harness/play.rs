use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::agents::{Agent, AgentSpec, HandSummary, Observation, PreparedAgent};
use crate::error::HarnessError;
use crate::game::{acting_seat, enumerate_deals, ActionHistory, Deal, PayoffVector, Seat, Turn, NUM_SEATS};

use super::config::MatchConfig;
use super::seeds::{derive_seed, enter_hand, rng_from};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HandRecord {
    pub index: usize,
    pub deal: Deal,
    pub history: ActionHistory,
    pub payoffs: PayoffVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchRecord {
    /// Agent name at each seat.
    pub seats: [String; NUM_SEATS],
    pub seat_totals: [i64; NUM_SEATS],
    pub hands: Vec<HandRecord>,
}

/// `count` deals drawn uniformly and independently from the 24 possible.
pub fn deal_sequence(seed: u64, count: usize) -> Vec<Deal> {
    let deals = enumerate_deals();
    let mut rng = rng_from(seed);
    (0..count).map(|_| deals[rng.gen_range(0..deals.len())]).collect()
}

/// Plays one match. Each seat draws its randomness from its own stream,
/// re-keyed per hand, so a hand's decisions depend only on the match seed,
/// the hand index and the seat.
pub fn play_match(
    agents: [&PreparedAgent; NUM_SEATS],
    names: [String; NUM_SEATS],
    cards: &[Deal],
    seed: u64,
) -> Result<MatchRecord, HarnessError> {
    let mut players: Vec<Box<dyn Agent>> = agents.iter().map(|a| a.instantiate()).collect();
    let mut rngs: Vec<ChaCha8Rng> = Seat::ALL
        .iter()
        .map(|s| rng_from(derive_seed(seed, &format!("seat:{s}"))))
        .collect();
    let mut totals = [0i64; NUM_SEATS];
    let mut hands = Vec::with_capacity(cards.len());
    for (index, deal) in cards.iter().enumerate() {
        for rng in rngs.iter_mut() {
            enter_hand(rng, index);
        }
        let mut history = ActionHistory::new();
        while let Turn::Seat(seat) = acting_seat(&history).expect("history stays legal") {
            let obs = Observation::new(seat, deal.card(seat), history, index);
            let action = players[seat.index()].act(&obs, &mut rngs[seat.index()]);
            history = history.play(action).map_err(|_| HarnessError::IllegalAction {
                hand: index,
                seat: seat.number(),
                action: action.symbol(),
                history: history.to_string(),
            })?;
        }
        let summary = HandSummary::new(index, deal, history);
        for seat in Seat::ALL {
            players[seat.index()].observe_result(seat, &summary);
            totals[seat.index()] += i64::from(summary.payoffs.seat(seat));
        }
        hands.push(HandRecord {
            index,
            deal: *deal,
            history,
            payoffs: summary.payoffs,
        });
    }
    Ok(MatchRecord {
        seats: names,
        seat_totals: totals,
        hands,
    })
}

/// Plays one match between the agents at seats 1, 2, 3.
pub fn run_match(
    agents: &[AgentSpec; NUM_SEATS],
    cards: &[Deal],
    seed: u64,
) -> Result<MatchRecord, HarnessError> {
    let prepared = agents
        .iter()
        .map(PreparedAgent::prepare)
        .collect::<Result<Vec<_>, _>>()?;
    play_match(
        [&prepared[0], &prepared[1], &prepared[2]],
        agents.clone().map(|a| a.name),
        cards,
        seed,
    )
}

/// The six seatings of three agents, as the agent index at each seat, in
/// lexicographic order.
pub const PERMUTATIONS: [[usize; NUM_SEATS]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMatch {
    /// Index into the triple of the agent at each seat.
    pub seating: [usize; NUM_SEATS],
    pub seed: u64,
    pub record: MatchRecord,
}

/// Six matches over one card sequence, one per seating of the triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateSet {
    pub agents: [String; NUM_SEATS],
    pub seed: u64,
    pub cards: Vec<Deal>,
    pub matches: Vec<PermutationMatch>,
    /// Chips won by each agent of the triple, summed over the six matches.
    pub agent_totals: [i64; NUM_SEATS],
}

impl DuplicateSet {
    /// Drops the per-hand logs, keeping totals.
    pub fn strip_hands(&mut self) {
        self.cards = Vec::new();
        for m in &mut self.matches {
            m.record.hands = Vec::new();
        }
    }
}

pub(crate) fn play_duplicate_set(
    prepared: [&PreparedAgent; NUM_SEATS],
    names: &[String; NUM_SEATS],
    hands: usize,
    set_seed: u64,
) -> Result<DuplicateSet, HarnessError> {
    let cards = deal_sequence(derive_seed(set_seed, "cards"), hands);
    play_seatings(prepared, names, set_seed, |_| cards.clone()).map(|(matches, totals)| {
        DuplicateSet {
            agents: names.clone(),
            seed: set_seed,
            cards,
            matches,
            agent_totals: totals,
        }
    })
}

/// Plays all six seatings, each with the cards from `cards_for(permutation)`.
pub(crate) fn play_seatings(
    prepared: [&PreparedAgent; NUM_SEATS],
    names: &[String; NUM_SEATS],
    set_seed: u64,
    cards_for: impl Fn(usize) -> Vec<Deal>,
) -> Result<(Vec<PermutationMatch>, [i64; NUM_SEATS]), HarnessError> {
    let mut matches = Vec::with_capacity(PERMUTATIONS.len());
    let mut totals = [0i64; NUM_SEATS];
    for (p, seating) in PERMUTATIONS.iter().enumerate() {
        let seed = derive_seed(set_seed, &format!("perm:{p}"));
        let cards = cards_for(p);
        let record = play_match(
            seating.map(|i| prepared[i]),
            seating.map(|i| names[i].clone()),
            &cards,
            seed,
        )?;
        for (seat, &agent) in seating.iter().enumerate() {
            totals[agent] += record.seat_totals[seat];
        }
        matches.push(PermutationMatch {
            seating: *seating,
            seed,
            record,
        });
    }
    Ok((matches, totals))
}

pub fn run_duplicate_set(
    triple: &[AgentSpec; NUM_SEATS],
    config: &MatchConfig,
    set_seed: u64,
) -> Result<DuplicateSet, HarnessError> {
    config.validate()?;
    let prepared = triple
        .iter()
        .map(PreparedAgent::prepare)
        .collect::<Result<Vec<_>, _>>()?;
    play_duplicate_set(
        [&prepared[0], &prepared[1], &prepared[2]],
        &triple.clone().map(|a| a.name),
        config.hands_per_match,
        set_seed,
    )
}

/// Serializable per-match totals, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchSummary {
    pub id: String,
    pub seats: [String; NUM_SEATS],
    pub seat_totals: [i64; NUM_SEATS],
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agents::AgentKind;

    fn triple() -> [AgentSpec; 3] {
        [
            AgentSpec::new("lb", AgentKind::NashLb),
            AgentSpec::new("honest", AgentKind::HonestNoBluff { king_bet: 0.5 }),
            AgentSpec::new("model", AgentKind::FrequencyModeler { smoothing: 1.0 }),
        ]
    }

    #[test]
    fn match_is_zero_sum_and_deterministic() {
        let cards = deal_sequence(3, 3000);
        let a = run_match(&triple(), &cards, 17).unwrap();
        assert_eq!(a.hands.len(), 3000);
        assert!(a.hands.iter().all(|h| h.payoffs.sum() == 0));
        assert_eq!(a.seat_totals.iter().sum::<i64>(), 0);
        let b = run_match(&triple(), &cards, 17).unwrap();
        assert_eq!(a, b);
        let c = run_match(&triple(), &cards, 18).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn duplicate_set_shares_cards() {
        let config = MatchConfig {
            hands_per_match: 500,
            ..MatchConfig::default()
        };
        let set = run_duplicate_set(&triple(), &config, 99).unwrap();
        assert_eq!(set.matches.len(), 6);
        let seatings: std::collections::HashSet<_> = set.matches.iter().map(|m| m.seating).collect();
        assert_eq!(seatings.len(), 6);
        for m in &set.matches {
            assert_eq!(m.record.hands[7].deal.card(Seat::ALL[0]), set.cards[7].card(Seat::ALL[0]));
            let dealt: Vec<Deal> = m.record.hands.iter().map(|h| h.deal).collect();
            assert_eq!(dealt, set.cards);
        }
        assert_eq!(set.agent_totals.iter().sum::<i64>(), 0);
    }

    #[test]
    fn deal_sequence_is_uniformish() {
        let cards = deal_sequence(1, 24_000);
        let mut counts = std::collections::HashMap::new();
        for d in cards {
            *counts.entry(d).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 24);
        assert!(counts.values().all(|&c| (800..1200).contains(&c)));
    }
}
