//! Strategy profiles over the 48 information sets, the two published
//! equilibrium parameter tables, and the profile text format.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::ProfileError;
use crate::game::{Card, InfoSetKey, Seat, Situation, NUM_INFOSETS};
use crate::scalar::{is_probability, ratio, Rational, Scalar};

/// Probability of the aggressive action (bet, or call when facing a bet) at
/// every information set. The passive probability is the complement.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile<T> {
    aggressive: Vec<T>,
}

pub type ExactProfile = StrategyProfile<Rational>;
pub type FloatProfile = StrategyProfile<f64>;

impl<T: Scalar> StrategyProfile<T> {
    /// Builds a profile from a per-infoset function; panics if any value is
    /// outside `[0, 1]`.
    pub fn from_fn(mut f: impl FnMut(InfoSetKey) -> T) -> Self {
        let aggressive: Vec<T> = InfoSetKey::all().map(&mut f).collect();
        for (i, p) in aggressive.iter().enumerate() {
            assert!(
                is_probability(p),
                "probability {p:?} at {} out of range",
                InfoSetKey::from_index(i)
            );
        }
        StrategyProfile { aggressive }
    }

    pub fn constant(p: T) -> Self {
        Self::from_fn(|_| p.clone())
    }

    /// Every decision made with probability one half.
    pub fn uniform() -> Self {
        Self::constant(T::from_ratio(1, 2))
    }

    pub fn aggressive_probability(&self, key: InfoSetKey) -> &T {
        &self.aggressive[key.index()]
    }

    pub fn passive_probability(&self, key: InfoSetKey) -> T {
        T::one() - self.aggressive[key.index()].clone()
    }

    pub fn set(&mut self, key: InfoSetKey, p: T) {
        assert!(is_probability(&p), "probability {p:?} out of range");
        self.aggressive[key.index()] = p;
    }

    pub fn with(mut self, key: InfoSetKey, p: T) -> Self {
        self.set(key, p);
        self
    }

    /// Replaces all 16 entries of `seat` with those of `other`.
    pub fn with_seat_from(mut self, seat: Seat, other: &StrategyProfile<T>) -> Self {
        for key in InfoSetKey::all().filter(|k| k.seat == seat) {
            self.aggressive[key.index()] = other.aggressive[key.index()].clone();
        }
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (InfoSetKey, &T)> {
        self.aggressive
            .iter()
            .enumerate()
            .map(|(i, p)| (InfoSetKey::from_index(i), p))
    }

    pub fn to_f64(&self) -> FloatProfile {
        StrategyProfile {
            aggressive: self.aggressive.iter().map(Scalar::to_f64).collect(),
        }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.aggressive
    }
}

impl FloatProfile {
    /// Exact rational image of every float entry.
    pub fn to_exact(&self) -> ExactProfile {
        StrategyProfile {
            aggressive: self
                .aggressive
                .iter()
                .map(|&x| crate::scalar::rational_from_f64(x))
                .collect(),
        }
    }
}

/// Which published equilibrium: the lower or upper end of the robust range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Lb,
    Ub,
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "LB" => Ok(Variant::Lb),
            "UB" => Ok(Variant::Ub),
            _ => Err(format!("unknown variant {s:?}, expected LB or UB")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Lb => "LB",
            Variant::Ub => "UB",
        })
    }
}

/// (card index, situation) pairs that carry a tabled parameter, per seat.
const TABLED: [(u8, u8); 9] = [
    (1, 1),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 1),
];

fn is_tabled(key: &InfoSetKey) -> bool {
    TABLED.contains(&(key.card.index(), key.situation.number()))
}

/// The 27 published parameters, keyed by infoset. Seat 1's entries are the
/// `a` parameters, seat 2's `b`, seat 3's `c`; `a_jk` is seat 1's aggressive
/// probability holding card `j` in situation `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterTable {
    entries: BTreeMap<InfoSetKey, Rational>,
}

impl ParameterTable {
    pub fn new(entries: BTreeMap<InfoSetKey, Rational>) -> Result<Self, ProfileError> {
        for (key, p) in &entries {
            if !is_tabled(key) {
                return Err(ProfileError::Table(format!(
                    "{} is not a tabled parameter",
                    parameter_name(key)
                )));
            }
            if !is_probability(p) {
                return Err(ProfileError::Table(format!(
                    "{} = {p} outside [0, 1]",
                    parameter_name(key)
                )));
            }
        }
        let missing: Vec<String> = InfoSetKey::all()
            .filter(|k| is_tabled(k) && !entries.contains_key(k))
            .map(|k| parameter_name(&k))
            .collect();
        if !missing.is_empty() {
            return Err(ProfileError::Table(format!(
                "missing parameters {}",
                missing.join(", ")
            )));
        }
        Ok(ParameterTable { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &InfoSetKey) -> Option<&Rational> {
        self.entries.get(key)
    }

    /// Lookup by parameter name such as `"c41"`.
    pub fn named(&self, name: &str) -> Option<&Rational> {
        self.get(&parse_parameter_name(name)?)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&InfoSetKey, &Rational)> {
        self.entries.iter()
    }
}

pub fn parameter_name(key: &InfoSetKey) -> String {
    let letter = ['a', 'b', 'c'][key.seat.index()];
    format!("{letter}{}{}", key.card.index(), key.situation.number())
}

pub fn parse_parameter_name(name: &str) -> Option<InfoSetKey> {
    let mut chars = name.chars();
    let seat = match chars.next()? {
        'a' => Seat::new(1)?,
        'b' => Seat::new(2)?,
        'c' => Seat::new(3)?,
        _ => return None,
    };
    let card = Card::from_index(chars.next()?.to_digit(10)? as u8)?;
    let situation = Situation::new(chars.next()?.to_digit(10)? as u8)?;
    if chars.next().is_some() {
        return None;
    }
    Some(InfoSetKey::new(seat, card, situation))
}

pub fn load_table(variant: Variant) -> ParameterTable {
    // (name, numerator, denominator); zeros omitted below are filled in.
    let nonzero: &[(&str, i64, i64)] = match variant {
        Variant::Lb => &[("a33", 1, 2), ("b33", 1, 2), ("c21", 1, 2), ("c33", 1, 2), ("c41", 1, 1)],
        Variant::Ub => &[
            ("a33", 1, 2),
            ("b11", 1, 4),
            ("b21", 1, 4),
            ("b32", 1, 1),
            ("b33", 7, 8),
            ("b41", 1, 1),
            ("c21", 1, 2),
            ("c34", 1, 1),
            ("c41", 1, 1),
        ],
    };
    let mut entries: BTreeMap<InfoSetKey, Rational> = InfoSetKey::all()
        .filter(is_tabled)
        .map(|k| (k, ratio(0, 1)))
        .collect();
    for &(name, n, d) in nonzero {
        let key = parse_parameter_name(name).unwrap();
        entries.insert(key, ratio(n, d));
    }
    ParameterTable::new(entries).expect("built-in table is well formed")
}

/// Value forced by strict dominance at an infoset the tables leave out.
///
/// Situations 2 to 4 all face a bet. The jack loses every showdown, so calling
/// only adds a lost chip. The ace wins every showdown. In situation 4 another
/// player has already called, so the queen would have to beat two cards and
/// only the jack is lower.
pub fn dominance_value(key: &InfoSetKey) -> Option<Rational> {
    match (key.card, key.situation.number()) {
        (Card::J, 2..=4) => Some(ratio(0, 1)),
        (Card::A, 2..=4) => Some(ratio(1, 1)),
        (Card::Q, 4) => Some(ratio(0, 1)),
        _ => None,
    }
}

/// Copies the 27 tabled values and fills the other 21 by dominance.
pub fn complete_profile(table: &ParameterTable) -> ExactProfile {
    StrategyProfile::from_fn(|key| match table.get(&key) {
        Some(p) => p.clone(),
        None => dominance_value(&key).expect("every untabled infoset is dominance-determined"),
    })
}

pub fn nash_profile(variant: Variant) -> ExactProfile {
    complete_profile(&load_table(variant))
}

const HEADER: &str = "# seat card situation aggressive-probability";

/// One line per infoset, `seat card situation probability`, sorted by
/// (seat, card, situation).
pub fn serialize_profile<T: Scalar>(p: &StrategyProfile<T>) -> String {
    let mut out = String::with_capacity(NUM_INFOSETS * 12);
    out.push_str(HEADER);
    out.push('\n');
    for (key, prob) in p.iter() {
        out.push_str(&format!("{key} {}\n", prob.format_prob()));
    }
    out
}

pub fn parse_profile<T: Scalar>(text: &str) -> Result<StrategyProfile<T>, ProfileError> {
    let mut slots: Vec<Option<T>> = vec![None; NUM_INFOSETS];
    let mut filled = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let malformed = |message: String| ProfileError::Malformed { line, message };
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [seat, card, situation, prob] = fields[..] else {
            return Err(malformed(format!(
                "expected 4 fields `seat card situation probability`, found {}",
                fields.len()
            )));
        };
        let seat = seat
            .parse::<u8>()
            .ok()
            .and_then(Seat::new)
            .ok_or_else(|| malformed(format!("bad seat {seat:?}")))?;
        let card = card
            .chars()
            .next()
            .filter(|_| card.len() == 1)
            .and_then(Card::from_symbol)
            .ok_or_else(|| malformed(format!("bad card {card:?}")))?;
        let situation = situation
            .parse::<u8>()
            .ok()
            .and_then(Situation::new)
            .ok_or_else(|| malformed(format!("bad situation {situation:?}")))?;
        let value = T::parse_prob(prob).ok_or_else(|| malformed(format!("bad probability {prob:?}")))?;
        if !is_probability(&value) {
            return Err(ProfileError::OutOfRange {
                line,
                value: prob.to_string(),
            });
        }
        let key = InfoSetKey::new(seat, card, situation);
        if filled == NUM_INFOSETS {
            return Err(ProfileError::Extra { line });
        }
        let slot = &mut slots[key.index()];
        if slot.is_some() {
            return Err(ProfileError::Duplicate {
                line,
                key: key.to_string(),
            });
        }
        *slot = Some(value);
        filled += 1;
    }
    if filled < NUM_INFOSETS {
        let first = slots.iter().position(Option::is_none).unwrap();
        return Err(ProfileError::Missing {
            count: NUM_INFOSETS - filled,
            first: InfoSetKey::from_index(first).to_string(),
        });
    }
    Ok(StrategyProfile {
        aggressive: slots.into_iter().map(Option::unwrap).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn key(seat: u8, card: Card, sit: u8) -> InfoSetKey {
        InfoSetKey::new(Seat::new(seat).unwrap(), card, Situation::new(sit).unwrap())
    }

    #[test]
    fn lower_bound_table() {
        let t = load_table(Variant::Lb);
        assert_eq!(t.len(), 27);
        assert_eq!(t.named("c41"), Some(&ratio(1, 1)));
        assert_eq!(t.named("c21"), Some(&ratio(1, 2)));
        assert_eq!(t.named("a33"), Some(&ratio(1, 2)));
        assert_eq!(t.named("b41"), Some(&ratio(0, 1)));
        assert_eq!(t.named("a11"), Some(&ratio(0, 1)));
        assert_eq!(t.named("a12"), None);
    }

    #[test]
    fn upper_bound_table() {
        let t = load_table(Variant::Ub);
        assert_eq!(t.len(), 27);
        assert_eq!(t.named("b11"), Some(&ratio(1, 4)));
        assert_eq!(t.named("b33"), Some(&ratio(7, 8)));
        assert_eq!(t.named("c33"), Some(&ratio(0, 1)));
        assert_eq!(t.named("c34"), Some(&ratio(1, 1)));
    }

    #[test]
    fn malformed_tables_rejected() {
        let mut entries: BTreeMap<_, _> = load_table(Variant::Lb).iter().map(|(k, v)| (*k, v.clone())).collect();
        entries.remove(&key(1, Card::K, 3));
        assert!(ParameterTable::new(entries.clone()).is_err());
        entries.insert(key(1, Card::K, 3), ratio(3, 2));
        assert!(ParameterTable::new(entries.clone()).is_err());
        entries.insert(key(1, Card::K, 3), ratio(1, 2));
        entries.insert(key(1, Card::J, 2), ratio(0, 1));
        assert!(ParameterTable::new(entries).is_err());
    }

    #[test]
    fn completion() {
        for variant in [Variant::Lb, Variant::Ub] {
            let table = load_table(variant);
            let p = complete_profile(&table);
            let mut from_table = 0;
            for (k, v) in p.iter() {
                match table.get(&k) {
                    Some(t) => {
                        from_table += 1;
                        assert_eq!(t, v);
                    }
                    None => assert!(*v == ratio(0, 1) || *v == ratio(1, 1)),
                }
            }
            assert_eq!(from_table, 27);
            assert_eq!(*p.aggressive_probability(key(1, Card::J, 2)), ratio(0, 1));
            assert_eq!(*p.aggressive_probability(key(2, Card::A, 3)), ratio(1, 1));
            assert_eq!(*p.aggressive_probability(key(3, Card::Q, 4)), ratio(0, 1));
        }
        let lb = nash_profile(Variant::Lb);
        assert_eq!(*lb.aggressive_probability(key(3, Card::A, 1)), ratio(1, 1));
        assert_eq!(*lb.aggressive_probability(key(1, Card::J, 3)), ratio(0, 1));
        let ub = nash_profile(Variant::Ub);
        assert_eq!(*ub.aggressive_probability(key(2, Card::K, 2)), ratio(1, 1));
        assert_eq!(ub.passive_probability(key(2, Card::J, 1)), ratio(3, 4));
    }

    #[test]
    fn serialized_lines() {
        let text = serialize_profile(&nash_profile(Variant::Lb));
        assert!(text.lines().any(|l| l == "3 A 1 1"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 48);
        let ub = serialize_profile(&nash_profile(Variant::Ub));
        assert!(ub.lines().any(|l| l == "2 K 3 7/8"));
    }

    #[test]
    fn parse_errors() {
        let good = serialize_profile(&nash_profile(Variant::Lb));
        let bad_range = good.replace("1 Q 2 0", "1 Q 2 1.5");
        match parse_profile::<Rational>(&bad_range) {
            Err(ProfileError::OutOfRange { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }
        let extra = format!("{good}1 J 1 0\n");
        assert!(matches!(
            parse_profile::<Rational>(&extra),
            Err(ProfileError::Extra { line: 50 })
        ));
        let dup = good.replace("1 J 2 0", "1 J 1 0");
        assert!(matches!(
            parse_profile::<f64>(&dup),
            Err(ProfileError::Duplicate { line: 3, .. })
        ));
        let missing: String = good.lines().take(40).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            parse_profile::<f64>(&missing),
            Err(ProfileError::Missing { count: 9, .. })
        ));
        assert!(matches!(
            parse_profile::<f64>("1 J 1\n"),
            Err(ProfileError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_profile::<f64>("# c\n4 J 1 0\n"),
            Err(ProfileError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn decimal_and_fraction_agree() {
        let text = serialize_profile(&nash_profile(Variant::Ub)).replace("7/8", "0.875");
        assert_eq!(parse_profile::<Rational>(&text).unwrap(), nash_profile(Variant::Ub));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (1i64..=12).prop_flat_map(|d| (0..=d).prop_map(move |n| ratio(n, d)))
    }

    proptest! {
        #[test]
        fn exact_round_trip(values in proptest::collection::vec(arb_rational(), 48)) {
            let p = StrategyProfile::from_fn(|k| values[k.index()].clone());
            let text = serialize_profile(&p);
            prop_assert_eq!(parse_profile::<Rational>(&text).unwrap(), p);
        }

        #[test]
        fn float_round_trip(values in proptest::collection::vec(0.0f64..=1.0, 48)) {
            let p = StrategyProfile::from_fn(|k| values[k.index()]);
            let text = serialize_profile(&p);
            let back = parse_profile::<f64>(&text).unwrap();
            prop_assert_eq!(&back, &p);
        }
    }
}
