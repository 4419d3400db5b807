//! Brute-force best response: score every one of a seat's 2^16 pure
//! strategies and keep the best. Used to cross-check [`super::best_response`].

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{Integer, One, ToPrimitive, Zero};

use crate::game::{
    acting_seat, enumerate_deals, legal_actions, situation_of, terminal_payoffs, ActionHistory,
    Card, InfoSetKey, Seat, Turn,
};
use crate::scalar::{ratio, Rational};
use crate::strategy::ExactProfile;

use super::BestResponseResult;

pub const PURE_STRATEGIES_PER_SEAT: usize = 1 << 16;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub best: BestResponseResult<Rational>,
    pub strategies_evaluated: usize,
}

/// A group of terminal outcomes that a pure strategy either reaches or not.
/// It is reached when the seat's bits for `card` agree with `want` on every
/// situation in `care`.
#[derive(Debug)]
struct Term {
    card: usize,
    care: u16,
    want: u16,
    coefficient: Rational,
}

fn collect_terms(p: &ExactProfile, seat: Seat) -> Vec<Term> {
    let mut merged: BTreeMap<(usize, u16, u16), Rational> = BTreeMap::new();
    let chance = ratio(1, 24);
    for deal in enumerate_deals() {
        let card = deal.card(seat).index() as usize - 1;
        let mut stack = vec![(ActionHistory::new(), chance.clone(), 0u16, 0u16)];
        while let Some((h, reach, care, want)) = stack.pop() {
            match acting_seat(&h).unwrap() {
                Turn::Terminal => {
                    let chips = terminal_payoffs(&deal, &h).unwrap().seat(seat);
                    let entry = merged.entry((card, care, want)).or_insert_with(Rational::zero);
                    *entry += reach * Rational::from_integer(chips.into());
                }
                Turn::Seat(actor) => {
                    let situation = situation_of(actor, &h).unwrap();
                    let [passive, aggressive] = legal_actions(&h).unwrap();
                    if actor == seat {
                        let bit = 1u16 << situation.index();
                        stack.push((h.push_unchecked(passive), reach.clone(), care | bit, want));
                        stack.push((h.push_unchecked(aggressive), reach, care | bit, want | bit));
                    } else {
                        let key = InfoSetKey::new(actor, deal.card(actor), situation);
                        let q = p.aggressive_probability(key).clone();
                        let not_q = Rational::one() - &q;
                        if !not_q.is_zero() {
                            stack.push((h.push_unchecked(passive), &reach * not_q, care, want));
                        }
                        if !q.is_zero() {
                            stack.push((h.push_unchecked(aggressive), reach * q, care, want));
                        }
                    }
                }
            }
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((card, care, want), coefficient)| Term {
            card,
            care,
            want,
            coefficient,
        })
        .collect()
}

fn reached(term: &Term, strategy: u32) -> bool {
    let bits = ((strategy >> (4 * term.card)) & 0xF) as u16;
    bits & term.care == term.want
}

/// Values of all pure strategies as integers over a common denominator.
/// `None` if the numerators overflow `i128`.
fn score_i128(terms: &[Term], denom: &BigInt) -> Option<Vec<i128>> {
    let numerators: Vec<i128> = terms
        .iter()
        .map(|t| (t.coefficient.numer() * (denom / t.coefficient.denom())).to_i128())
        .collect::<Option<_>>()?;
    let mut scores = Vec::with_capacity(PURE_STRATEGIES_PER_SEAT);
    for strategy in 0..PURE_STRATEGIES_PER_SEAT as u32 {
        let mut total: i128 = 0;
        for (t, &n) in terms.iter().zip(&numerators) {
            if reached(t, strategy) {
                total = total.checked_add(n)?;
            }
        }
        scores.push(total);
    }
    Some(scores)
}

fn score_big(terms: &[Term], denom: &BigInt) -> Vec<BigInt> {
    let numerators: Vec<BigInt> = terms
        .iter()
        .map(|t| t.coefficient.numer() * (denom / t.coefficient.denom()))
        .collect();
    (0..PURE_STRATEGIES_PER_SEAT as u32)
        .map(|strategy| {
            terms
                .iter()
                .zip(&numerators)
                .filter(|(t, _)| reached(t, strategy))
                .fold(BigInt::zero(), |acc, (_, n)| acc + n)
        })
        .collect()
}

fn argmax<N: PartialOrd>(scores: &[N]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

/// Exhaustive best response over all 65,536 pure strategies of `seat`.
pub fn pure_strategy_oracle(p: &ExactProfile, seat: Seat) -> OracleResult {
    let terms = collect_terms(p, seat);
    let denom = terms
        .iter()
        .fold(BigInt::one(), |l, t| l.lcm(t.coefficient.denom()));
    let (best, numerator) = match score_i128(&terms, &denom) {
        Some(scores) => {
            let best = argmax(&scores);
            (best, BigInt::from(scores[best]))
        }
        None => {
            let scores = score_big(&terms, &denom);
            let best = argmax(&scores);
            (best, scores[best].clone())
        }
    };
    let mut profile = p.clone();
    for card in Card::ALL {
        for situation in crate::game::Situation::ALL {
            let bit = (best >> (4 * (card.index() as usize - 1) + situation.index())) & 1;
            profile.set(
                InfoSetKey::new(seat, card, situation),
                Rational::from_integer(bit.into()),
            );
        }
    }
    OracleResult {
        best: BestResponseResult {
            seat,
            value: Rational::new(numerator, denom),
            profile,
        },
        strategies_evaluated: PURE_STRATEGIES_PER_SEAT,
    }
}
