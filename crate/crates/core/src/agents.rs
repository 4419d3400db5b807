//! Decision-making agents: the two published equilibrium players, CFR-trained
//! profiles, and a zoo of simple baselines plus an opponent modeler.

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::equilibrium::best_response_action;
use crate::error::AgentError;
use crate::game::{
    acting_seat, choice_at, infoset_key, situation_of, terminal_payoffs, Action, ActionHistory,
    Card, Deal, InfoSetKey, PayoffVector, Seat, Turn, NUM_CARDS, NUM_SEATS, NUM_SITUATIONS,
};
use crate::scalar::Scalar;
use crate::strategy::{nash_profile, parse_profile, FloatProfile, StrategyProfile, Variant};

/// What the acting seat can see when it decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Observation {
    pub seat: Seat,
    pub private_card: Card,
    pub history: ActionHistory,
    pub hand_index: usize,
}

impl Observation {
    pub fn new(seat: Seat, private_card: Card, history: ActionHistory, hand_index: usize) -> Self {
        debug_assert_eq!(acting_seat(&history), Ok(Turn::Seat(seat)));
        Observation {
            seat,
            private_card,
            history,
            hand_index,
        }
    }
}

/// End-of-hand information available to every seat. Cards are revealed only
/// for players who reach a showdown; folded cards and the card of a bettor
/// whom everyone folded to stay hidden.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandSummary {
    pub hand_index: usize,
    pub history: ActionHistory,
    pub payoffs: PayoffVector,
    pub revealed: [Option<Card>; NUM_SEATS],
}

impl HandSummary {
    pub fn new(hand_index: usize, deal: &Deal, history: ActionHistory) -> HandSummary {
        let payoffs = terminal_payoffs(deal, &history).expect("hand is complete");
        let mut live = [true; NUM_SEATS];
        if let Some(bettor) = history.bettor() {
            let mut responder = bettor;
            for a in history.actions().skip_while(|&a| a != Action::Bet).skip(1) {
                responder = responder.next();
                if a == Action::Fold {
                    live[responder.index()] = false;
                }
            }
        }
        let showdown = live.iter().filter(|&&l| l).count() > 1;
        let mut revealed = [None; NUM_SEATS];
        if showdown {
            for s in Seat::ALL {
                if live[s.index()] {
                    revealed[s.index()] = Some(deal.card(s));
                }
            }
        }
        HandSummary {
            hand_index,
            history,
            payoffs,
            revealed,
        }
    }
}

pub trait Agent: Send {
    /// Chooses a legal action at `obs`.
    fn act(&mut self, obs: &Observation, rng: &mut dyn RngCore) -> Action;

    /// Called once per completed hand, for every seat.
    fn observe_result(&mut self, _seat: Seat, _summary: &HandSummary) {}
}

/// Plays a fixed strategy profile, sampling the aggressive action with the
/// profile's probability.
#[derive(Debug, Clone)]
pub struct ProfileAgent {
    profile: Arc<FloatProfile>,
}

impl ProfileAgent {
    pub fn new(profile: Arc<FloatProfile>) -> Self {
        ProfileAgent { profile }
    }

    pub fn profile(&self) -> &FloatProfile {
        &self.profile
    }
}

impl Agent for ProfileAgent {
    fn act(&mut self, obs: &Observation, rng: &mut dyn RngCore) -> Action {
        let key = infoset_key(obs.seat, obs.private_card, &obs.history).expect("valid observation");
        let p = *self.profile.aggressive_probability(key);
        let choice = key.situation.choice();
        if rng.gen::<f64>() < p {
            choice.aggressive()
        } else {
            choice.passive()
        }
    }
}

/// Counts of one opponent's actions: aggressive count and total.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ActionCounts {
    pub aggressive: u32,
    pub total: u32,
}

impl ActionCounts {
    fn record(&mut self, aggressive: bool) {
        self.aggressive += aggressive as u32;
        self.total += 1;
    }
}

/// Tracks how often each opponent takes the aggressive action in each
/// situation and best-responds to those estimates.
///
/// Two levels of counts are kept per opponent seat and situation: every
/// observed action, and the subset whose card was later shown at showdown.
/// The card-level estimate shrinks towards the smoothed overall frequency:
///
/// ```text
/// overall  = (agg + s) / (total + 2s)
/// per card = (agg_card + s * overall) / (total_card + s)
/// ```
///
/// where `s` is the smoothing constant, so every estimate stays strictly
/// inside (0, 1).
#[derive(Debug, Clone)]
pub struct FrequencyModeler {
    smoothing: f64,
    overall: [[ActionCounts; NUM_SITUATIONS]; NUM_SEATS],
    by_card: [[[ActionCounts; NUM_SITUATIONS]; NUM_CARDS]; NUM_SEATS],
}

impl FrequencyModeler {
    pub fn new(smoothing: f64) -> Self {
        assert!(smoothing > 0.0 && smoothing.is_finite());
        FrequencyModeler {
            smoothing,
            overall: Default::default(),
            by_card: Default::default(),
        }
    }

    pub fn counts(&self, seat: Seat, situation: crate::game::Situation) -> ActionCounts {
        self.overall[seat.index()][situation.index()]
    }

    pub fn card_counts(&self, key: InfoSetKey) -> ActionCounts {
        self.by_card[key.seat.index()][key.card.index() as usize - 1][key.situation.index()]
    }

    /// Estimated probability that `key.seat` takes the aggressive action at
    /// `key`.
    pub fn estimate(&self, key: InfoSetKey) -> f64 {
        let s = self.smoothing;
        let all = self.counts(key.seat, key.situation);
        let overall = (all.aggressive as f64 + s) / (all.total as f64 + 2.0 * s);
        let card = self.card_counts(key);
        (card.aggressive as f64 + s * overall) / (card.total as f64 + s)
    }

    /// The model of the other seats; `own` seat's entries are unused.
    pub fn model(&self, own: Seat) -> FloatProfile {
        StrategyProfile::from_fn(|key| {
            if key.seat == own {
                0.5
            } else {
                self.estimate(key)
            }
        })
    }
}

impl Agent for FrequencyModeler {
    fn act(&mut self, obs: &Observation, _rng: &mut dyn RngCore) -> Action {
        let model = self.model(obs.seat);
        best_response_action(&model, obs.seat, obs.private_card, &obs.history).unwrap_or_else(|| {
            choice_at(&obs.history)
                .expect("decision point")
                .passive()
        })
    }

    fn observe_result(&mut self, seat: Seat, summary: &HandSummary) {
        let mut h = ActionHistory::new();
        for a in summary.history.actions() {
            let Ok(Turn::Seat(actor)) = acting_seat(&h) else {
                unreachable!("summary history is legal")
            };
            if actor != seat {
                let situation = situation_of(actor, &h).unwrap();
                self.overall[actor.index()][situation.index()].record(a.is_aggressive());
                if let Some(card) = summary.revealed[actor.index()] {
                    self.by_card[actor.index()][card.index() as usize - 1][situation.index()]
                        .record(a.is_aggressive());
                }
            }
            h = h.push_unchecked(a);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AgentKind {
    #[serde(rename = "NashLB")]
    NashLb,
    #[serde(rename = "NashUB")]
    NashUb,
    #[serde(rename = "CFRTrained")]
    CfrTrained { profile: PathBuf },
    UniformRandom,
    AlwaysAggressive,
    AlwaysPassive,
    HonestNoBluff {
        #[serde(default = "default_king_bet")]
        king_bet: f64,
    },
    FrequencyModeler {
        #[serde(default = "default_smoothing")]
        smoothing: f64,
    },
}

fn default_king_bet() -> f64 {
    0.5
}

fn default_smoothing() -> f64 {
    1.0
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgentKind::NashLb => write!(f, "NashLB"),
            AgentKind::NashUb => write!(f, "NashUB"),
            AgentKind::CfrTrained { profile } => write!(f, "CFRTrained({})", profile.display()),
            AgentKind::UniformRandom => write!(f, "UniformRandom"),
            AgentKind::AlwaysAggressive => write!(f, "AlwaysAggressive"),
            AgentKind::AlwaysPassive => write!(f, "AlwaysPassive"),
            AgentKind::HonestNoBluff { king_bet } => write!(f, "HonestNoBluff(king_bet={king_bet})"),
            AgentKind::FrequencyModeler { smoothing } => {
                write!(f, "FrequencyModeler(smoothing={smoothing})")
            }
        }
    }
}

/// A named agent configuration, as written in a tournament file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentSpec {
    pub name: String,
    #[serde(flatten)]
    pub kind: AgentKind,
}

impl AgentSpec {
    pub fn new(name: impl Into<String>, kind: AgentKind) -> Self {
        AgentSpec {
            name: name.into(),
            kind,
        }
    }

    pub fn validate(&self) -> Result<(), AgentError> {
        let invalid = |field, message: String| AgentError::InvalidParameter {
            name: self.name.clone(),
            field,
            message,
        };
        if self.name.trim().is_empty() {
            return Err(invalid("name", "must not be empty".into()));
        }
        match self.kind {
            AgentKind::HonestNoBluff { king_bet } if !(0.0..=1.0).contains(&king_bet) => {
                Err(invalid("king_bet", format!("{king_bet} outside [0, 1]")))
            }
            AgentKind::FrequencyModeler { smoothing } if !(smoothing > 0.0 && smoothing.is_finite()) => {
                Err(invalid("smoothing", format!("{smoothing} must be positive")))
            }
            _ => Ok(()),
        }
    }
}

/// Bets the ace, bets the king with probability `king_bet`, never bluffs,
/// and calls only with the ace.
pub fn honest_no_bluff_profile<T: Scalar>(king_bet: T) -> StrategyProfile<T> {
    StrategyProfile::from_fn(|key| match (key.situation.number(), key.card) {
        (1, Card::A) => T::one(),
        (1, Card::K) => king_bet.clone(),
        (1, _) => T::zero(),
        (_, Card::A) => T::one(),
        _ => T::zero(),
    })
}

/// An agent spec resolved into the data it plays from. Building agents from
/// a prepared spec does no I/O.
#[derive(Debug, Clone)]
pub enum PreparedAgent {
    Profile(Arc<FloatProfile>),
    Modeler { smoothing: f64 },
}

impl PreparedAgent {
    pub fn prepare(spec: &AgentSpec) -> Result<PreparedAgent, AgentError> {
        spec.validate()?;
        let profile = match &spec.kind {
            AgentKind::NashLb => nash_profile(Variant::Lb).to_f64(),
            AgentKind::NashUb => nash_profile(Variant::Ub).to_f64(),
            AgentKind::CfrTrained { profile } => {
                let text = std::fs::read_to_string(profile).map_err(|source| AgentError::Io {
                    path: profile.clone(),
                    source,
                })?;
                parse_profile::<f64>(&text).map_err(|source| AgentError::Profile {
                    path: profile.clone(),
                    source,
                })?
            }
            AgentKind::UniformRandom => StrategyProfile::uniform(),
            AgentKind::AlwaysAggressive => StrategyProfile::constant(1.0),
            AgentKind::AlwaysPassive => StrategyProfile::constant(0.0),
            AgentKind::HonestNoBluff { king_bet } => honest_no_bluff_profile(*king_bet),
            AgentKind::FrequencyModeler { smoothing } => {
                return Ok(PreparedAgent::Modeler {
                    smoothing: *smoothing,
                })
            }
        };
        Ok(PreparedAgent::Profile(Arc::new(profile)))
    }

    /// A fresh agent with no accumulated state.
    pub fn instantiate(&self) -> Box<dyn Agent> {
        match self {
            PreparedAgent::Profile(p) => Box::new(ProfileAgent::new(Arc::clone(p))),
            PreparedAgent::Modeler { smoothing } => Box::new(FrequencyModeler::new(*smoothing)),
        }
    }

    /// The fixed profile, for profile-backed agents.
    pub fn profile(&self) -> Option<&FloatProfile> {
        match self {
            PreparedAgent::Profile(p) => Some(p),
            PreparedAgent::Modeler { .. } => None,
        }
    }
}

pub fn make_agent(spec: &AgentSpec) -> Result<Box<dyn Agent>, AgentError> {
    Ok(PreparedAgent::prepare(spec)?.instantiate())
}
