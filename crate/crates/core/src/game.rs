//! Rules engine for three-player Kuhn poker.
//!
//! Every player antes one chip and receives one card from a four-card deck
//! (J < Q < K < A). There is a single betting round with a fixed one-chip bet
//! and no raises. Histories are flat token strings over `K`, `B`, `C`, `F`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GameError;

pub const NUM_SEATS: usize = 3;
pub const NUM_CARDS: usize = 4;
pub const NUM_SITUATIONS: usize = 4;
pub const NUM_INFOSETS: usize = NUM_SEATS * NUM_CARDS * NUM_SITUATIONS;
pub const NUM_DEALS: usize = 24;
pub const ANTE: i32 = 1;
pub const BET_SIZE: i32 = 1;

/// Longest possible history ("KKBFC" and friends).
pub const MAX_HISTORY_LEN: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Card {
    J,
    Q,
    K,
    A,
}

impl Card {
    pub const ALL: [Card; NUM_CARDS] = [Card::J, Card::Q, Card::K, Card::A];

    /// Rank index, J = 1 through A = 4.
    pub fn index(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_index(index: u8) -> Option<Card> {
        match index {
            1..=4 => Some(Card::ALL[index as usize - 1]),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Card::J => 'J',
            Card::Q => 'Q',
            Card::K => 'K',
            Card::A => 'A',
        }
    }

    pub fn from_symbol(c: char) -> Option<Card> {
        match c {
            'J' => Some(Card::J),
            'Q' => Some(Card::Q),
            'K' => Some(Card::K),
            'A' => Some(Card::A),
            _ => None,
        }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A seat at the table, 1 through 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Seat(u8);

impl Seat {
    pub const ALL: [Seat; NUM_SEATS] = [Seat(1), Seat(2), Seat(3)];

    pub fn new(number: u8) -> Option<Seat> {
        (1..=3).contains(&number).then_some(Seat(number))
    }

    /// 1-based seat number.
    pub fn number(self) -> u8 {
        self.0
    }

    /// 0-based position, for indexing per-seat arrays.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(index: usize) -> Seat {
        assert!(index < NUM_SEATS, "seat index {index} out of range");
        Seat(index as u8 + 1)
    }

    /// The seat that acts after this one in table order.
    pub fn next(self) -> Seat {
        Seat(self.0 % 3 + 1)
    }
}

impl TryFrom<u8> for Seat {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Seat::new(value).ok_or_else(|| format!("seat must be 1, 2 or 3, got {value}"))
    }
}

impl From<Seat> for u8 {
    fn from(seat: Seat) -> u8 {
        seat.0
    }
}

impl fmt::Display for Seat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Cards held by seats 1, 2, 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deal([Card; NUM_SEATS]);

impl Deal {
    pub fn new(cards: [Card; NUM_SEATS]) -> Result<Deal, GameError> {
        let [a, b, c] = cards;
        if a == b || a == c || b == c {
            return Err(GameError::RepeatedCard(format_cards(&cards)));
        }
        Ok(Deal(cards))
    }

    pub fn card(&self, seat: Seat) -> Card {
        self.0[seat.index()]
    }

    pub fn cards(&self) -> [Card; NUM_SEATS] {
        self.0
    }

    /// The card left in the deck.
    pub fn undealt(&self) -> Card {
        *Card::ALL.iter().find(|c| !self.0.contains(c)).unwrap()
    }
}

fn format_cards(cards: &[Card]) -> String {
    cards.iter().map(|c| c.symbol()).collect()
}

impl fmt::Display for Deal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cards(&self.0))
    }
}

impl FromStr for Deal {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cards: Vec<Card> = s
            .chars()
            .map(|c| Card::from_symbol(c).ok_or_else(|| GameError::BadDeal(s.to_string())))
            .collect::<Result<_, _>>()?;
        let cards: [Card; NUM_SEATS] =
            cards.try_into().map_err(|_| GameError::BadDeal(s.to_string()))?;
        Deal::new(cards)
    }
}

/// All 24 ordered deals, in lexicographic order of (seat 1, seat 2, seat 3) cards.
pub fn enumerate_deals() -> Vec<Deal> {
    let mut deals = Vec::with_capacity(NUM_DEALS);
    for &a in &Card::ALL {
        for &b in &Card::ALL {
            for &c in &Card::ALL {
                if let Ok(deal) = Deal::new([a, b, c]) {
                    deals.push(deal);
                }
            }
        }
    }
    deals
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Check,
    Bet,
    Call,
    Fold,
}

impl Action {
    pub fn symbol(self) -> char {
        match self {
            Action::Check => 'K',
            Action::Bet => 'B',
            Action::Call => 'C',
            Action::Fold => 'F',
        }
    }

    pub fn from_symbol(c: char) -> Option<Action> {
        match c {
            'K' => Some(Action::Check),
            'B' => Some(Action::Bet),
            'C' => Some(Action::Call),
            'F' => Some(Action::Fold),
            _ => None,
        }
    }

    /// Bet and call put a chip in the pot; check and fold do not.
    pub fn is_aggressive(self) -> bool {
        matches!(self, Action::Bet | Action::Call)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The two choices available at a decision point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    /// No bet outstanding: check or bet.
    Open,
    /// Facing a bet: fold or call.
    FacingBet,
}

impl Choice {
    pub fn passive(self) -> Action {
        match self {
            Choice::Open => Action::Check,
            Choice::FacingBet => Action::Fold,
        }
    }

    pub fn aggressive(self) -> Action {
        match self {
            Choice::Open => Action::Bet,
            Choice::FacingBet => Action::Call,
        }
    }

    pub fn actions(self) -> [Action; 2] {
        [self.passive(), self.aggressive()]
    }
}

/// Whose turn it is after a history.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Seat(Seat),
    Terminal,
}

/// A node of the betting tree, as the sequence of actions taken so far.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ActionHistory {
    len: u8,
    tokens: [Option<Action>; MAX_HISTORY_LEN],
}

impl ActionHistory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn actions(&self) -> impl Iterator<Item = Action> + '_ {
        self.tokens[..self.len()].iter().map(|a| a.unwrap())
    }

    pub fn last(&self) -> Option<Action> {
        self.len.checked_sub(1).map(|i| self.tokens[i as usize].unwrap())
    }

    /// Appends an action without checking legality. Use [`ActionHistory::play`]
    /// for checked play.
    pub fn push_unchecked(&self, action: Action) -> ActionHistory {
        assert!(self.len() < MAX_HISTORY_LEN, "history overflow");
        let mut next = *self;
        next.tokens[self.len()] = Some(action);
        next.len += 1;
        next
    }

    /// Appends `action` if it is legal at this node.
    pub fn play(&self, action: Action) -> Result<ActionHistory, GameError> {
        match self.state()? {
            State::Terminal { .. } => Err(GameError::TerminalHistory(self.to_string())),
            State::Decision { choice, .. } => {
                if choice.actions().contains(&action) {
                    Ok(self.push_unchecked(action))
                } else {
                    Err(GameError::IllegalAction {
                        history: self.to_string(),
                        action: action.symbol(),
                    })
                }
            }
        }
    }

    /// Parses a token string and replays it from the root, rejecting illegal
    /// sequences.
    pub fn parse(s: &str) -> Result<ActionHistory, GameError> {
        let mut h = ActionHistory::new();
        for c in s.chars() {
            let action = Action::from_symbol(c).ok_or(GameError::BadToken(c))?;
            if h.len() == MAX_HISTORY_LEN {
                return Err(GameError::IllegalHistory(s.to_string()));
            }
            h = h.play(action).map_err(|_| GameError::IllegalHistory(s.to_string()))?;
        }
        Ok(h)
    }

    /// Seat that placed the bet, if any.
    pub fn bettor(&self) -> Option<Seat> {
        self.actions()
            .position(|a| a == Action::Bet)
            .map(Seat::from_index)
    }

    pub(crate) fn state(&self) -> Result<State, GameError> {
        let illegal = || GameError::IllegalHistory(self.to_string());
        let tokens: Vec<Action> = self.actions().collect();
        match tokens.iter().position(|&a| a == Action::Bet) {
            None => {
                if tokens.iter().any(|&a| a != Action::Check) {
                    return Err(illegal());
                }
                if tokens.len() == NUM_SEATS {
                    Ok(State::Terminal { bettor: None })
                } else {
                    Ok(State::Decision {
                        seat: Seat::from_index(tokens.len()),
                        choice: Choice::Open,
                    })
                }
            }
            Some(bet_at) => {
                let responses = &tokens[bet_at + 1..];
                if responses
                    .iter()
                    .any(|&a| a != Action::Call && a != Action::Fold)
                {
                    return Err(illegal());
                }
                let bettor = Seat::from_index(bet_at);
                match responses.len() {
                    0 => Ok(State::Decision {
                        seat: bettor.next(),
                        choice: Choice::FacingBet,
                    }),
                    1 => Ok(State::Decision {
                        seat: bettor.next().next(),
                        choice: Choice::FacingBet,
                    }),
                    2 => Ok(State::Terminal {
                        bettor: Some(bettor),
                    }),
                    _ => Err(illegal()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum State {
    Decision { seat: Seat, choice: Choice },
    Terminal { bettor: Option<Seat> },
}

impl fmt::Display for ActionHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.actions() {
            write!(f, "{}", a.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for ActionHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ActionHistory(\"{self}\")")
    }
}

impl FromStr for ActionHistory {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ActionHistory::parse(s)
    }
}

pub fn acting_seat(h: &ActionHistory) -> Result<Turn, GameError> {
    Ok(match h.state()? {
        State::Decision { seat, .. } => Turn::Seat(seat),
        State::Terminal { .. } => Turn::Terminal,
    })
}

pub fn is_terminal(h: &ActionHistory) -> bool {
    matches!(h.state(), Ok(State::Terminal { .. }))
}

/// Decision type at a non-terminal node.
pub fn choice_at(h: &ActionHistory) -> Result<Choice, GameError> {
    match h.state()? {
        State::Decision { choice, .. } => Ok(choice),
        State::Terminal { .. } => Err(GameError::TerminalHistory(h.to_string())),
    }
}

/// `[Check, Bet]` with no bet outstanding, `[Fold, Call]` facing a bet;
/// passive action first.
pub fn legal_actions(h: &ActionHistory) -> Result<[Action; 2], GameError> {
    choice_at(h).map(Choice::actions)
}

/// Per-seat net chips for one hand, relative to the stack before the ante.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PayoffVector(pub [i32; NUM_SEATS]);

impl PayoffVector {
    pub fn seat(&self, seat: Seat) -> i32 {
        self.0[seat.index()]
    }

    pub fn sum(&self) -> i32 {
        self.0.iter().sum()
    }
}

/// Chips each seat put in the pot, antes included.
pub fn contributions(h: &ActionHistory) -> [i32; NUM_SEATS] {
    let mut paid = [ANTE; NUM_SEATS];
    if let Some(bettor) = h.bettor() {
        paid[bettor.index()] += BET_SIZE;
        let mut responder = bettor;
        for a in h.actions().skip_while(|&a| a != Action::Bet).skip(1) {
            responder = responder.next();
            if a == Action::Call {
                paid[responder.index()] += BET_SIZE;
            }
        }
    }
    paid
}

/// Seats still contesting the pot at the end of the hand.
fn live_seats(h: &ActionHistory) -> [bool; NUM_SEATS] {
    let mut live = [true; NUM_SEATS];
    if let Some(bettor) = h.bettor() {
        let mut responder = bettor;
        for a in h.actions().skip_while(|&a| a != Action::Bet).skip(1) {
            responder = responder.next();
            if a == Action::Fold {
                live[responder.index()] = false;
            }
        }
    }
    live
}

pub fn terminal_payoffs(deal: &Deal, h: &ActionHistory) -> Result<PayoffVector, GameError> {
    if !matches!(h.state()?, State::Terminal { .. }) {
        return Err(GameError::NotTerminal(h.to_string()));
    }
    let paid = contributions(h);
    let pot: i32 = paid.iter().sum();
    let live = live_seats(h);
    // The bettor never folds, so at least one seat is always live.
    assert!(live.iter().any(|&l| l), "every seat folded in {h}");
    let winner = Seat::ALL
        .into_iter()
        .filter(|s| live[s.index()])
        .max_by_key(|&s| deal.card(s))
        .unwrap();
    let mut net = [0; NUM_SEATS];
    for s in Seat::ALL {
        net[s.index()] = -paid[s.index()];
    }
    net[winner.index()] += pot;
    Ok(PayoffVector(net))
}

/// Betting situation (1 through 4) of `seat` at `h`.
///
/// | situation | seat 1 | seat 2 | seat 3 |
/// |-----------|--------|--------|--------|
/// | 1         | (root) | K      | KK     |
/// | 2         | KKB    | B      | KB     |
/// | 3         | KBF    | KKBF   | BF     |
/// | 4         | KBC    | KKBC   | BC     |
pub fn situation_of(seat: Seat, h: &ActionHistory) -> Result<Situation, GameError> {
    let text = h.to_string();
    let k = match (seat.number(), text.as_str()) {
        (1, "") | (2, "K") | (3, "KK") => 1,
        (1, "KKB") | (2, "B") | (3, "KB") => 2,
        (1, "KBF") | (2, "KKBF") | (3, "BF") => 3,
        (1, "KBC") | (2, "KKBC") | (3, "BC") => 4,
        _ => {
            return Err(GameError::NotADecisionPoint {
                seat: seat.number(),
                history: text,
            })
        }
    };
    Ok(Situation(k))
}

/// The history at which `seat` faces `situation`; inverse of [`situation_of`].
pub fn history_of(seat: Seat, situation: Situation) -> ActionHistory {
    const TABLE: [[&str; NUM_SITUATIONS]; NUM_SEATS] = [
        ["", "KKB", "KBF", "KBC"],
        ["K", "B", "KKBF", "KKBC"],
        ["KK", "KB", "BF", "BC"],
    ];
    ActionHistory::parse(TABLE[seat.index()][situation.index()]).unwrap()
}

/// Betting situation, 1 through 4. Situation 1 is the check-or-bet decision;
/// situations 2 to 4 all face a bet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Situation(u8);

impl Situation {
    pub const ALL: [Situation; NUM_SITUATIONS] =
        [Situation(1), Situation(2), Situation(3), Situation(4)];

    pub fn new(number: u8) -> Option<Situation> {
        (1..=4).contains(&number).then_some(Situation(number))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn choice(self) -> Choice {
        if self.0 == 1 {
            Choice::Open
        } else {
            Choice::FacingBet
        }
    }
}

impl fmt::Display for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Information set: what the acting seat knows when it decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InfoSetKey {
    pub seat: Seat,
    pub card: Card,
    pub situation: Situation,
}

impl InfoSetKey {
    pub fn new(seat: Seat, card: Card, situation: Situation) -> Self {
        InfoSetKey {
            seat,
            card,
            situation,
        }
    }

    /// Dense index in `0..48`, ordered by (seat, card, situation).
    pub fn index(&self) -> usize {
        self.seat.index() * NUM_CARDS * NUM_SITUATIONS
            + (self.card.index() as usize - 1) * NUM_SITUATIONS
            + self.situation.index()
    }

    pub fn from_index(index: usize) -> InfoSetKey {
        assert!(index < NUM_INFOSETS);
        let seat = Seat::from_index(index / (NUM_CARDS * NUM_SITUATIONS));
        let card = Card::ALL[(index / NUM_SITUATIONS) % NUM_CARDS];
        let situation = Situation::ALL[index % NUM_SITUATIONS];
        InfoSetKey::new(seat, card, situation)
    }

    /// All 48 keys in index order.
    pub fn all() -> impl Iterator<Item = InfoSetKey> {
        (0..NUM_INFOSETS).map(InfoSetKey::from_index)
    }

    /// Position among the seat's own 16 infosets.
    pub fn seat_local_index(&self) -> usize {
        self.index() % (NUM_CARDS * NUM_SITUATIONS)
    }

    pub fn history(&self) -> ActionHistory {
        history_of(self.seat, self.situation)
    }
}

impl fmt::Display for InfoSetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.seat, self.card, self.situation)
    }
}

pub fn infoset_key(seat: Seat, card: Card, h: &ActionHistory) -> Result<InfoSetKey, GameError> {
    match acting_seat(h)? {
        Turn::Seat(s) if s == seat => {}
        _ => {
            return Err(GameError::NotADecisionPoint {
                seat: seat.number(),
                history: h.to_string(),
            })
        }
    }
    Ok(InfoSetKey::new(seat, card, situation_of(seat, h)?))
}

/// Every reachable history, in depth-first order with the passive action
/// explored first.
pub fn all_histories() -> Vec<ActionHistory> {
    fn walk(h: ActionHistory, out: &mut Vec<ActionHistory>) {
        out.push(h);
        if let Ok(actions) = legal_actions(&h) {
            for a in actions {
                walk(h.push_unchecked(a), out);
            }
        }
    }
    let mut out = Vec::new();
    walk(ActionHistory::new(), &mut out);
    out
}

pub fn terminal_histories() -> Vec<ActionHistory> {
    all_histories().into_iter().filter(is_terminal).collect()
}

pub fn decision_histories() -> Vec<ActionHistory> {
    all_histories()
        .into_iter()
        .filter(|h| !is_terminal(h))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> ActionHistory {
        ActionHistory::parse(s).unwrap()
    }

    fn deal(s: &str) -> Deal {
        s.parse().unwrap()
    }

    #[test]
    fn deals() {
        let deals = enumerate_deals();
        assert_eq!(deals.len(), 24);
        assert!(deals.contains(&deal("QKA")));
        for d in &deals {
            let [a, b, c] = d.cards();
            assert!(a != b && a != c && b != c);
        }
        let unique: std::collections::HashSet<_> = deals.iter().collect();
        assert_eq!(unique.len(), 24);
    }

    #[test]
    fn card_order_and_index() {
        assert!(Card::J < Card::Q && Card::Q < Card::K && Card::K < Card::A);
        for c in Card::ALL {
            assert_eq!(Card::from_index(c.index()), Some(c));
        }
        assert_eq!(Card::A.index(), 4);
    }

    #[test]
    fn acting_seat_examples() {
        assert_eq!(acting_seat(&h("")).unwrap(), Turn::Seat(Seat(1)));
        assert_eq!(acting_seat(&h("KB")).unwrap(), Turn::Seat(Seat(3)));
        assert_eq!(acting_seat(&h("KKBFC")).unwrap(), Turn::Terminal);
        assert_eq!(acting_seat(&h("KKB")).unwrap(), Turn::Seat(Seat(1)));
        assert_eq!(acting_seat(&h("KKBF")).unwrap(), Turn::Seat(Seat(2)));
    }

    #[test]
    fn illegal_histories_rejected() {
        for bad in ["C", "KC", "BB", "BK", "KKKK", "BCCC", "KKBFCF", "X"] {
            assert!(ActionHistory::parse(bad).is_err(), "{bad} accepted");
        }
        assert!(h("B").play(Action::Bet).is_err());
        assert!(h("KKK").play(Action::Check).is_err());
    }

    #[test]
    fn legal_action_sets() {
        assert_eq!(legal_actions(&h("")).unwrap(), [Action::Check, Action::Bet]);
        assert_eq!(legal_actions(&h("B")).unwrap(), [Action::Fold, Action::Call]);
        assert!(matches!(
            legal_actions(&h("KKK")),
            Err(GameError::TerminalHistory(_))
        ));
    }

    #[test]
    fn payoff_examples() {
        assert_eq!(
            terminal_payoffs(&deal("QKA"), &h("KKBFC")).unwrap().0,
            [-1, -2, 3]
        );
        for d in enumerate_deals() {
            assert_eq!(terminal_payoffs(&d, &h("BFF")).unwrap().0, [2, -1, -1]);
        }
        assert_eq!(terminal_payoffs(&deal("JAQ"), &h("KKK")).unwrap().0, [-1, 2, -1]);
        assert_eq!(terminal_payoffs(&deal("AKQ"), &h("KBCC")).unwrap().0, [4, -2, -2]);
        assert!(matches!(
            terminal_payoffs(&deal("AKQ"), &h("KB")),
            Err(GameError::NotTerminal(_))
        ));
    }

    #[test]
    fn folded_player_excluded_from_showdown() {
        // Seat 2 holds the ace but folds to seat 1's bet.
        assert_eq!(terminal_payoffs(&deal("JAQ"), &h("BFC")).unwrap().0, [-2, -1, 3]);
    }

    #[test]
    fn tree_shape() {
        let terminals: Vec<String> = terminal_histories().iter().map(|h| h.to_string()).collect();
        let mut expected = vec!["KKK".to_string()];
        for x in ["C", "F"] {
            for y in ["C", "F"] {
                expected.push(format!("KKB{x}{y}"));
                expected.push(format!("KB{x}{y}"));
                expected.push(format!("B{x}{y}"));
            }
        }
        let mut got = terminals.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(decision_histories().len(), 12);
    }

    #[test]
    fn situations() {
        assert_eq!(situation_of(Seat(1), &h("KKB")).unwrap().number(), 2);
        assert_eq!(situation_of(Seat(3), &h("BC")).unwrap().number(), 4);
        assert_eq!(situation_of(Seat(2), &h("K")).unwrap().number(), 1);
        assert!(situation_of(Seat(2), &h("")).is_err());
        // every decision point maps to exactly one (seat, situation)
        let mut seen = std::collections::HashSet::new();
        for d in decision_histories() {
            let Turn::Seat(s) = acting_seat(&d).unwrap() else {
                unreachable!()
            };
            let k = situation_of(s, &d).unwrap();
            assert_eq!(history_of(s, k), d);
            assert_eq!(k.choice(), choice_at(&d).unwrap());
            assert!(seen.insert((s, k)));
        }
        assert_eq!(seen.len(), 12);
    }

    #[test]
    fn infoset_keys() {
        let c41 = infoset_key(Seat(3), Card::A, &h("KK")).unwrap();
        assert_eq!((c41.seat.number(), c41.card.index(), c41.situation.number()), (3, 4, 1));
        let a34 = infoset_key(Seat(1), Card::K, &h("KBC")).unwrap();
        assert_eq!((a34.seat.number(), a34.card.index(), a34.situation.number()), (1, 3, 4));
        assert!(infoset_key(Seat(1), Card::K, &h("K")).is_err());
        let all: Vec<_> = InfoSetKey::all().collect();
        assert_eq!(all.len(), 48);
        for (i, k) in all.iter().enumerate() {
            assert_eq!(k.index(), i);
        }
    }

    #[test]
    fn turn_order() {
        // pre-bet: 1,2,3; post-bet: each non-bettor once, in seat order after the bettor
        for t in terminal_histories() {
            let mut cur = ActionHistory::new();
            let mut seats = Vec::new();
            for a in t.actions() {
                let Turn::Seat(s) = acting_seat(&cur).unwrap() else {
                    panic!()
                };
                seats.push(s.number());
                cur = cur.push_unchecked(a);
            }
            match t.bettor() {
                None => assert_eq!(seats, vec![1, 2, 3]),
                Some(b) => {
                    let pre: Vec<u8> = (1..=b.number()).collect();
                    assert_eq!(&seats[..pre.len()], &pre[..]);
                    let post = &seats[pre.len()..];
                    assert_eq!(post, &[b.next().number(), b.next().next().number()]);
                }
            }
        }
    }

    #[test]
    fn payoffs_bounded_and_conserved() {
        for d in enumerate_deals() {
            for t in terminal_histories() {
                let p = terminal_payoffs(&d, &t).unwrap();
                assert_eq!(p.sum(), 0);
                assert!(p.0.iter().all(|&x| (-2..=4).contains(&x)));
                let paid = contributions(&t);
                let pot = 3 + t.actions().filter(|a| a.is_aggressive()).count() as i32;
                assert_eq!(paid.iter().sum::<i32>(), pot);
            }
        }
    }
}
