//! Vanilla counterfactual regret minimization with full chance enumeration
//! and simultaneous updates for all three seats.

use crate::game::{InfoSetKey, NUM_DEALS, NUM_INFOSETS, NUM_SEATS};
use crate::strategy::FloatProfile;
use crate::tree::{GameTree, NodeKind, ROOT};

use super::epsilon;

/// Accumulated regrets and strategy weights, per infoset and action
/// (passive first).
#[derive(Debug, Clone, PartialEq)]
pub struct RegretState {
    pub cumulative_regret: Vec<[f64; 2]>,
    pub cumulative_strategy: Vec<[f64; 2]>,
    pub iterations: u64,
}

impl Default for RegretState {
    fn default() -> Self {
        Self::new()
    }
}

impl RegretState {
    pub fn new() -> Self {
        RegretState {
            cumulative_regret: vec![[0.0; 2]; NUM_INFOSETS],
            cumulative_strategy: vec![[0.0; 2]; NUM_INFOSETS],
            iterations: 0,
        }
    }

    /// Regret matching: proportional to positive regret, uniform if none.
    pub fn current_policy(&self, key: InfoSetKey) -> [f64; 2] {
        regret_matching(self.cumulative_regret[key.index()])
    }

    /// Normalized average strategy; uniform where nothing was accumulated.
    pub fn average_profile(&self) -> FloatProfile {
        FloatProfile::from_fn(|key| {
            let [passive, aggressive] = self.cumulative_strategy[key.index()];
            let total = passive + aggressive;
            if total > 0.0 {
                (aggressive / total).clamp(0.0, 1.0)
            } else {
                0.5
            }
        })
    }

    pub fn iterate(&mut self) {
        let tree = GameTree::get();
        let policy: Vec<[f64; 2]> = self.cumulative_regret.iter().map(|&r| regret_matching(r)).collect();
        let mut regret_delta = vec![[0.0; 2]; NUM_INFOSETS];
        let mut strategy_delta = vec![[0.0; 2]; NUM_INFOSETS];
        let chance = 1.0 / NUM_DEALS as f64;
        for deal in 0..NUM_DEALS {
            walk(
                tree,
                &policy,
                ROOT,
                deal,
                [1.0; NUM_SEATS],
                chance,
                &mut regret_delta,
                &mut strategy_delta,
            );
        }
        for i in 0..NUM_INFOSETS {
            for a in 0..2 {
                self.cumulative_regret[i][a] += regret_delta[i][a];
                self.cumulative_strategy[i][a] += strategy_delta[i][a];
            }
        }
        self.iterations += 1;
    }
}

fn regret_matching(regret: [f64; 2]) -> [f64; 2] {
    let pos = [regret[0].max(0.0), regret[1].max(0.0)];
    let total = pos[0] + pos[1];
    if total > 0.0 {
        [pos[0] / total, pos[1] / total]
    } else {
        [0.5, 0.5]
    }
}

/// Returns every seat's expected chips below `node` for one deal.
#[allow(clippy::too_many_arguments)]
fn walk(
    tree: &GameTree,
    policy: &[[f64; 2]],
    node: usize,
    deal: usize,
    reach: [f64; NUM_SEATS],
    chance: f64,
    regret_delta: &mut [[f64; 2]],
    strategy_delta: &mut [[f64; 2]],
) -> [f64; NUM_SEATS] {
    match &tree.nodes[node].kind {
        NodeKind::Terminal { payoffs } => payoffs[deal].map(f64::from),
        NodeKind::Decision {
            seat,
            situation,
            children,
            ..
        } => {
            let key = tree.key_at(*seat, *situation, deal);
            let sigma = policy[key.index()];
            let s = seat.index();
            let mut child_values = [[0.0; NUM_SEATS]; 2];
            let mut value = [0.0; NUM_SEATS];
            for b in 0..2 {
                let mut child_reach = reach;
                child_reach[s] *= sigma[b];
                child_values[b] = walk(
                    tree,
                    policy,
                    children[b],
                    deal,
                    child_reach,
                    chance,
                    regret_delta,
                    strategy_delta,
                );
                for (v, c) in value.iter_mut().zip(child_values[b]) {
                    *v += sigma[b] * c;
                }
            }
            let opponents: f64 = chance
                * (0..NUM_SEATS)
                    .filter(|&o| o != s)
                    .map(|o| reach[o])
                    .product::<f64>();
            for b in 0..2 {
                regret_delta[key.index()][b] += opponents * (child_values[b][s] - value[s]);
                strategy_delta[key.index()][b] += reach[s] * sigma[b];
            }
            value
        }
    }
}

/// Runs `iterations` rounds of vanilla CFR and returns the average profile.
///
/// The algorithm has no random component (every deal is enumerated on every
/// iteration), so `seed` does not affect the result; it is accepted so every
/// training entry point is keyed the same way.
pub fn cfr_train(iterations: u64, seed: u64) -> FloatProfile {
    cfr_train_with_trace(iterations, seed, &[]).0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub iteration: u64,
    pub epsilon: f64,
}

/// Powers of ten up to `iterations`, plus `iterations` itself.
pub fn log_checkpoints(iterations: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = 1;
    while c < iterations {
        out.push(c);
        c *= 10;
    }
    if iterations > 0 {
        out.push(iterations);
    }
    out
}

/// Like [`cfr_train`], also measuring the average profile's epsilon after
/// each iteration count in `checkpoints`.
pub fn cfr_train_with_trace(
    iterations: u64,
    _seed: u64,
    checkpoints: &[u64],
) -> (FloatProfile, Vec<TracePoint>) {
    let mut state = RegretState::new();
    let mut trace = Vec::new();
    for _ in 0..iterations {
        state.iterate();
        if checkpoints.contains(&state.iterations) {
            trace.push(TracePoint {
                iteration: state.iterations,
                epsilon: epsilon(&state.average_profile()),
            });
        }
    }
    (state.average_profile(), trace)
}
