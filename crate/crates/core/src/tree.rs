//! The full betting tree, flattened into an array with per-deal terminal
//! payoffs, for the evaluation loops.

use std::sync::OnceLock;

use crate::game::{
    acting_seat, enumerate_deals, legal_actions, situation_of, terminal_payoffs, Action,
    ActionHistory, Card, Deal, InfoSetKey, Seat, Situation, Turn, NUM_DEALS, NUM_SEATS,
};

#[derive(Debug, Clone)]
pub enum NodeKind {
    Decision {
        seat: Seat,
        situation: Situation,
        /// Child node indices, passive action first.
        children: [usize; 2],
        actions: [Action; 2],
    },
    Terminal {
        /// Net chips per seat, indexed by deal.
        payoffs: Box<[[i32; NUM_SEATS]; NUM_DEALS]>,
    },
}

#[derive(Debug, Clone)]
pub struct Node {
    pub history: ActionHistory,
    pub kind: NodeKind,
}

#[derive(Debug)]
pub struct GameTree {
    pub nodes: Vec<Node>,
    pub deals: Vec<Deal>,
}

pub const ROOT: usize = 0;

impl GameTree {
    pub fn get() -> &'static GameTree {
        static TREE: OnceLock<GameTree> = OnceLock::new();
        TREE.get_or_init(GameTree::build)
    }

    fn build() -> GameTree {
        let deals = enumerate_deals();
        let mut nodes = Vec::new();
        fn add(h: ActionHistory, deals: &[Deal], nodes: &mut Vec<Node>) -> usize {
            let index = nodes.len();
            nodes.push(Node {
                history: h,
                kind: NodeKind::Decision {
                    seat: Seat::ALL[0],
                    situation: Situation::ALL[0],
                    children: [0; 2],
                    actions: [Action::Check; 2],
                },
            });
            let kind = match acting_seat(&h).expect("reachable history") {
                Turn::Terminal => {
                    let mut payoffs = Box::new([[0; NUM_SEATS]; NUM_DEALS]);
                    for (i, d) in deals.iter().enumerate() {
                        payoffs[i] = terminal_payoffs(d, &h).unwrap().0;
                    }
                    NodeKind::Terminal { payoffs }
                }
                Turn::Seat(seat) => {
                    let actions = legal_actions(&h).unwrap();
                    let passive = add(h.push_unchecked(actions[0]), deals, nodes);
                    let aggressive = add(h.push_unchecked(actions[1]), deals, nodes);
                    NodeKind::Decision {
                        seat,
                        situation: situation_of(seat, &h).unwrap(),
                        children: [passive, aggressive],
                        actions,
                    }
                }
            };
            nodes[index].kind = kind;
            index
        }
        add(ActionHistory::new(), &deals, &mut nodes);
        GameTree { nodes, deals }
    }

    pub fn node_of(&self, h: &ActionHistory) -> Option<usize> {
        self.nodes.iter().position(|n| n.history == *h)
    }

    /// Indices of the deals in which `seat` holds `card`.
    pub fn deals_with(&self, seat: Seat, card: Card) -> impl Iterator<Item = usize> + '_ {
        self.deals
            .iter()
            .enumerate()
            .filter(move |(_, d)| d.card(seat) == card)
            .map(|(i, _)| i)
    }

    pub fn deal_index(&self, deal: &Deal) -> usize {
        self.deals.iter().position(|d| d == deal).unwrap()
    }

    pub fn key_at(&self, seat: Seat, situation: Situation, deal: usize) -> InfoSetKey {
        InfoSetKey::new(seat, self.deals[deal].card(seat), situation)
    }
}
