//! Exact expected values, best responses and exploitability, plus CFR
//! self-play training.
//!
//! Everything here is generic over [`Scalar`], so the same code runs in exact
//! rational arithmetic for verification and in `f64` where speed matters.

mod cfr;
mod oracle;

pub use cfr::{cfr_train, cfr_train_with_trace, log_checkpoints, RegretState, TracePoint};
pub use oracle::{pure_strategy_oracle, OracleResult, PURE_STRATEGIES_PER_SEAT};

use std::fmt;

use crate::game::{Action, ActionHistory, Card, InfoSetKey, Seat, NUM_DEALS, NUM_SEATS};
use crate::scalar::Scalar;
use crate::strategy::StrategyProfile;
use crate::tree::{GameTree, NodeKind, ROOT};

/// Expected net chips per hand for each seat.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueVector<T>(pub [T; NUM_SEATS]);

impl<T: Scalar> ValueVector<T> {
    pub fn seat(&self, seat: Seat) -> &T {
        &self.0[seat.index()]
    }

    pub fn sum(&self) -> T {
        self.0.iter().cloned().fold(T::zero(), |a, b| a + b)
    }
}

fn action_prob<T: Scalar>(p: &StrategyProfile<T>, key: InfoSetKey, branch: usize) -> T {
    if branch == 1 {
        p.aggressive_probability(key).clone()
    } else {
        p.passive_probability(key)
    }
}

fn chance<T: Scalar>() -> T {
    T::from_ratio(1, NUM_DEALS as i64)
}

/// Exact expectation over the 24 equally likely deals and every betting path.
pub fn expected_values<T: Scalar>(p: &StrategyProfile<T>) -> ValueVector<T> {
    let tree = GameTree::get();
    fn walk<T: Scalar>(
        tree: &GameTree,
        p: &StrategyProfile<T>,
        node: usize,
        deal: usize,
        reach: T,
        acc: &mut [T; NUM_SEATS],
    ) {
        if reach.is_zero() {
            return;
        }
        match &tree.nodes[node].kind {
            NodeKind::Terminal { payoffs } => {
                for (s, &chips) in payoffs[deal].iter().enumerate() {
                    acc[s] = acc[s].clone() + reach.clone() * T::from_i32(chips).unwrap();
                }
            }
            NodeKind::Decision {
                seat,
                situation,
                children,
                ..
            } => {
                let key = tree.key_at(*seat, *situation, deal);
                for (branch, &child) in children.iter().enumerate() {
                    let q = action_prob(p, key, branch);
                    walk(tree, p, child, deal, reach.clone() * q, acc);
                }
            }
        }
    }
    let mut acc = [T::zero(), T::zero(), T::zero()];
    for deal in 0..tree.deals.len() {
        walk(tree, p, ROOT, deal, chance(), &mut acc);
    }
    ValueVector(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestResponseResult<T> {
    pub seat: Seat,
    /// Expected chips per hand of the responding seat.
    pub value: T,
    /// The input profile with the seat's 16 entries replaced by the pure
    /// best response.
    pub profile: StrategyProfile<T>,
}

impl<T: Scalar> BestResponseResult<T> {
    /// The chosen action at each of the seat's infosets.
    pub fn choices(&self) -> impl Iterator<Item = (InfoSetKey, Action)> + '_ {
        self.profile
            .iter()
            .filter(|(k, _)| k.seat == self.seat)
            .map(|(k, p)| {
                let choice = k.situation.choice();
                let a = if p.is_one() {
                    choice.aggressive()
                } else {
                    choice.passive()
                };
                (k, a)
            })
    }
}

/// Expectimax value of `seat` below `node`, where `weights[i]` is the chance
/// times opponent reach probability of `deals[i]`. Every listed deal gives the
/// seat the same card, so the seat's decision is shared across them. Records
/// the chosen branch per decision node in `chosen`.
fn best_response_walk<T: Scalar>(
    tree: &GameTree,
    p: &StrategyProfile<T>,
    seat: Seat,
    node: usize,
    deals: &[usize],
    weights: &[T],
    chosen: &mut Vec<(usize, usize)>,
) -> T {
    match &tree.nodes[node].kind {
        NodeKind::Terminal { payoffs } => deals
            .iter()
            .zip(weights)
            .fold(T::zero(), |acc, (&d, w)| {
                acc + w.clone() * T::from_i32(payoffs[d][seat.index()]).unwrap()
            }),
        NodeKind::Decision {
            seat: actor,
            situation,
            children,
            ..
        } => {
            if *actor == seat {
                let passive = best_response_walk(tree, p, seat, children[0], deals, weights, chosen);
                let aggressive =
                    best_response_walk(tree, p, seat, children[1], deals, weights, chosen);
                if aggressive > passive {
                    chosen.push((node, 1));
                    aggressive
                } else {
                    chosen.push((node, 0));
                    passive
                }
            } else {
                let mut total = T::zero();
                for (branch, &child) in children.iter().enumerate() {
                    let child_weights: Vec<T> = deals
                        .iter()
                        .zip(weights)
                        .map(|(&d, w)| {
                            w.clone() * action_prob(p, tree.key_at(*actor, *situation, d), branch)
                        })
                        .collect();
                    if child_weights.iter().all(|w| w.is_zero()) {
                        // unreachable for every deal; still visit own nodes so
                        // each infoset gets a (passive) choice
                        best_response_walk(tree, p, seat, child, deals, &child_weights, chosen);
                        continue;
                    }
                    total = total
                        + best_response_walk(tree, p, seat, child, deals, &child_weights, chosen);
                }
                total
            }
        }
    }
}

/// Maximizes `seat`'s expected value with the other two seats held fixed.
/// Exact ties go to the passive action.
pub fn best_response<T: Scalar>(p: &StrategyProfile<T>, seat: Seat) -> BestResponseResult<T> {
    let tree = GameTree::get();
    let mut profile = p.clone();
    let mut value = T::zero();
    for card in Card::ALL {
        let deals: Vec<usize> = tree.deals_with(seat, card).collect();
        let weights = vec![chance::<T>(); deals.len()];
        let mut chosen = Vec::new();
        value = value + best_response_walk(tree, p, seat, ROOT, &deals, &weights, &mut chosen);
        for (node, branch) in chosen {
            let NodeKind::Decision { situation, .. } = tree.nodes[node].kind else {
                unreachable!()
            };
            let key = InfoSetKey::new(seat, card, situation);
            profile.set(key, if branch == 1 { T::one() } else { T::zero() });
        }
    }
    BestResponseResult {
        seat,
        value,
        profile,
    }
}

/// Best action for `seat` holding `card` at `h`, against the model `p` of the
/// other seats: opponent cards are weighted by how likely `p` makes the
/// actions seen so far, and the rest of the hand is played by expectimax.
/// Ties go to the passive action.
pub fn best_response_action<T: Scalar>(
    p: &StrategyProfile<T>,
    seat: Seat,
    card: Card,
    h: &ActionHistory,
) -> Option<Action> {
    let tree = GameTree::get();
    let node = tree.node_of(h)?;
    let NodeKind::Decision {
        seat: actor,
        children,
        actions,
        ..
    } = &tree.nodes[node].kind
    else {
        return None;
    };
    if *actor != seat {
        return None;
    }
    let deals: Vec<usize> = tree.deals_with(seat, card).collect();
    let weights: Vec<T> = deals
        .iter()
        .map(|&d| opponent_reach(tree, p, seat, d, h))
        .collect();
    let mut chosen = Vec::new();
    let passive = best_response_walk(tree, p, seat, children[0], &deals, &weights, &mut chosen);
    let aggressive = best_response_walk(tree, p, seat, children[1], &deals, &weights, &mut chosen);
    Some(if aggressive > passive {
        actions[1]
    } else {
        actions[0]
    })
}

/// Product of the other seats' action probabilities along `h` in `deal`.
fn opponent_reach<T: Scalar>(
    tree: &GameTree,
    p: &StrategyProfile<T>,
    seat: Seat,
    deal: usize,
    h: &ActionHistory,
) -> T {
    let mut reach = T::one();
    let mut node = ROOT;
    for a in h.actions() {
        let NodeKind::Decision {
            seat: actor,
            situation,
            children,
            actions,
        } = &tree.nodes[node].kind
        else {
            unreachable!()
        };
        let branch = actions.iter().position(|&x| x == a).unwrap();
        if *actor != seat {
            reach = reach * action_prob(p, tree.key_at(*actor, *situation, deal), branch);
        }
        node = children[branch];
    }
    reach
}

/// Counterfactual value of each action at each of `seat`'s infosets, indexed
/// by [`InfoSetKey::seat_local_index`]: the seat's expected chips from taking
/// the action, weighted by chance and opponent reach only.
pub fn counterfactual_values<T: Scalar>(p: &StrategyProfile<T>, seat: Seat) -> Vec<[T; 2]> {
    let tree = GameTree::get();
    fn walk<T: Scalar>(
        tree: &GameTree,
        p: &StrategyProfile<T>,
        seat: Seat,
        node: usize,
        deal: usize,
        opp_reach: T,
        out: &mut Vec<[T; 2]>,
    ) -> T {
        match &tree.nodes[node].kind {
            NodeKind::Terminal { payoffs } => T::from_i32(payoffs[deal][seat.index()]).unwrap(),
            NodeKind::Decision {
                seat: actor,
                situation,
                children,
                ..
            } => {
                let key = tree.key_at(*actor, *situation, deal);
                if *actor == seat {
                    let values: Vec<T> = children
                        .iter()
                        .map(|&c| walk(tree, p, seat, c, deal, opp_reach.clone(), out))
                        .collect();
                    let slot = &mut out[key.seat_local_index()];
                    for b in 0..2 {
                        slot[b] = slot[b].clone() + opp_reach.clone() * values[b].clone();
                    }
                    action_prob(p, key, 0) * values[0].clone()
                        + action_prob(p, key, 1) * values[1].clone()
                } else {
                    let mut v = T::zero();
                    for (branch, &c) in children.iter().enumerate() {
                        let q = action_prob(p, key, branch);
                        if q.is_zero() {
                            continue;
                        }
                        v = v + q.clone() * walk(tree, p, seat, c, deal, opp_reach.clone() * q, out);
                    }
                    v
                }
            }
        }
    }
    let mut out = vec![[T::zero(), T::zero()]; 16];
    for deal in 0..tree.deals.len() {
        walk(tree, p, seat, ROOT, deal, chance(), &mut out);
    }
    out
}

/// Counterfactual regret at one infoset: how much more the better action
/// earns than the profile's mix.
#[derive(Debug, Clone, PartialEq)]
pub struct InfosetGap<T> {
    pub key: InfoSetKey,
    pub passive_value: T,
    pub aggressive_value: T,
    pub gap: T,
}

pub fn infoset_gaps<T: Scalar>(p: &StrategyProfile<T>, seat: Seat) -> Vec<InfosetGap<T>> {
    let cfv = counterfactual_values(p, seat);
    InfoSetKey::all()
        .filter(|k| k.seat == seat)
        .map(|key| {
            let [v0, v1] = cfv[key.seat_local_index()].clone();
            let mixed = action_prob(p, key, 0) * v0.clone() + action_prob(p, key, 1) * v1.clone();
            let best = if v1 > v0 { v1.clone() } else { v0.clone() };
            InfosetGap {
                key,
                passive_value: v0,
                aggressive_value: v1,
                gap: best - mixed,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeatGap<T> {
    pub seat: Seat,
    pub ev: T,
    pub br_value: T,
    pub gap: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonReport<T> {
    pub seats: Vec<SeatGap<T>>,
    pub epsilon: T,
}

impl<T: Scalar> EpsilonReport<T> {
    /// The seat with the largest gain from deviating.
    pub fn worst_seat(&self) -> Seat {
        let mut worst = &self.seats[0];
        for s in &self.seats[1..] {
            if s.gap > worst.gap {
                worst = s;
            }
        }
        worst.seat
    }
}

pub fn epsilon_report<T: Scalar>(p: &StrategyProfile<T>) -> EpsilonReport<T> {
    let ev = expected_values(p);
    let seats: Vec<SeatGap<T>> = Seat::ALL
        .iter()
        .map(|&seat| {
            let br = best_response(p, seat);
            let ev = ev.seat(seat).clone();
            SeatGap {
                seat,
                gap: br.value.clone() - ev.clone(),
                ev,
                br_value: br.value,
            }
        })
        .collect();
    let epsilon = seats
        .iter()
        .map(|s| s.gap.clone())
        .fold(T::zero(), |m, g| if g > m { g } else { m });
    EpsilonReport { seats, epsilon }
}

/// Largest gain any one seat can get by deviating alone.
pub fn epsilon<T: Scalar>(p: &StrategyProfile<T>) -> T {
    epsilon_report(p).epsilon
}

impl<T: Scalar + fmt::Display> fmt::Display for EpsilonReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seat ev br_value gap")?;
        for s in &self.seats {
            writeln!(f, "{} {} {} {}", s.seat, s.ev, s.br_value, s.gap)?;
        }
        writeln!(f, "epsilon {}", self.epsilon)
    }
}
