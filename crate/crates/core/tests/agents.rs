use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kuhn3::agents::{make_agent, AgentKind, AgentSpec, FrequencyModeler, HandSummary, Observation, Agent};
use kuhn3::equilibrium::cfr_train;
use kuhn3::game::{
    decision_histories, enumerate_deals, legal_actions, acting_seat, ActionHistory, Card, Deal,
    InfoSetKey, Seat, Turn,
};
use kuhn3::harness::{deal_sequence, run_match};
use kuhn3::strategy::{nash_profile, serialize_profile, Variant};

fn all_kinds(cfr_path: &std::path::Path) -> Vec<AgentKind> {
    vec![
        AgentKind::NashLb,
        AgentKind::NashUb,
        AgentKind::CfrTrained {
            profile: cfr_path.to_path_buf(),
        },
        AgentKind::UniformRandom,
        AgentKind::AlwaysAggressive,
        AgentKind::AlwaysPassive,
        AgentKind::HonestNoBluff { king_bet: 0.5 },
        AgentKind::FrequencyModeler { smoothing: 1.0 },
    ]
}

#[test]
fn every_agent_kind_acts_legally_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let cfr_path = dir.path().join("cfr.txt");
    std::fs::write(&cfr_path, serialize_profile(&cfr_train(100, 0))).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for kind in all_kinds(&cfr_path) {
        let mut agent = make_agent(&AgentSpec::new("x", kind.clone())).unwrap();
        for h in decision_histories() {
            let Ok(Turn::Seat(seat)) = acting_seat(&h) else { unreachable!() };
            for card in [Card::J, Card::Q, Card::K, Card::A] {
                for _ in 0..20 {
                    let action = agent.act(&Observation::new(seat, card, h, 0), &mut rng);
                    assert!(legal_actions(&h).unwrap().contains(&action), "{kind} played {action:?} at {h}");
                }
            }
        }
    }
}

#[test]
fn matches_between_all_kinds_are_legal_and_zero_sum() {
    let dir = tempfile::tempdir().unwrap();
    let cfr_path = dir.path().join("cfr.txt");
    std::fs::write(&cfr_path, serialize_profile(&cfr_train(100, 0))).unwrap();
    let kinds = all_kinds(&cfr_path);
    let cards = deal_sequence(11, 400);
    for (i, k) in kinds.iter().enumerate() {
        let triple = [
            AgentSpec::new("a", k.clone()),
            AgentSpec::new("b", kinds[(i + 3) % kinds.len()].clone()),
            AgentSpec::new("c", kinds[(i + 6) % kinds.len()].clone()),
        ];
        let record = run_match(&triple, &cards, i as u64).unwrap();
        assert_eq!(record.seat_totals.iter().sum::<i64>(), 0);
    }
}

// Chi-square critical value for one degree of freedom at p = 0.001.
const CHI2_CRITICAL_1DF: f64 = 10.828;

#[test]
fn sampled_frequencies_match_profile_probabilities() {
    let lb = nash_profile(Variant::Lb).to_f64();
    let mut agent = make_agent(&AgentSpec::new("lb", AgentKind::NashLb)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 20_000;
    for key in InfoSetKey::all() {
        let p = *lb.aggressive_probability(key);
        if p == 0.0 || p == 1.0 {
            continue;
        }
        let obs = Observation::new(key.seat, key.card, key.history(), 0);
        let aggressive = (0..n)
            .filter(|_| agent.act(&obs, &mut rng).is_aggressive())
            .count() as f64;
        let expected = [n as f64 * p, n as f64 * (1.0 - p)];
        let observed = [aggressive, n as f64 - aggressive];
        let chi2: f64 = observed
            .iter()
            .zip(expected)
            .map(|(o, e)| (o - e).powi(2) / e)
            .sum();
        assert!(chi2 < CHI2_CRITICAL_1DF, "{key}: chi2 {chi2}");
    }
}

#[test]
fn pure_profiles_never_deviate() {
    let lb = nash_profile(Variant::Lb).to_f64();
    let mut agent = make_agent(&AgentSpec::new("lb", AgentKind::NashLb)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for key in InfoSetKey::all() {
        let p = *lb.aggressive_probability(key);
        if p != 0.0 && p != 1.0 {
            continue;
        }
        let obs = Observation::new(key.seat, key.card, key.history(), 0);
        for _ in 0..200 {
            assert_eq!(agent.act(&obs, &mut rng).is_aggressive(), p == 1.0, "{key}");
        }
    }
}

/// Feeds the same observations to two modelers whose opponents held
/// different hidden cards, and checks they act identically.
#[test]
fn modeler_ignores_hidden_cards() {
    let deals = enumerate_deals();
    let mut a = FrequencyModeler::new(1.0);
    let mut b = FrequencyModeler::new(1.0);
    // Hands that end without a showdown reveal nothing.
    let hidden = ["BFF", "KBFF", "KKBFF"];
    for (i, h) in hidden.iter().enumerate() {
        let h = ActionHistory::parse(h).unwrap();
        let d1: Deal = deals[i];
        let d2: Deal = deals[23 - i];
        let s1 = HandSummary::new(i, &d1, h);
        let s2 = HandSummary::new(i, &d2, h);
        assert_eq!(s1.revealed, [None; 3]);
        for seat in Seat::ALL {
            a.observe_result(seat, &s1);
            b.observe_result(seat, &s2);
        }
    }
    let mut ra = ChaCha8Rng::seed_from_u64(3);
    let mut rb = ChaCha8Rng::seed_from_u64(3);
    for h in decision_histories() {
        let Ok(Turn::Seat(seat)) = acting_seat(&h) else { unreachable!() };
        for card in [Card::J, Card::Q, Card::K, Card::A] {
            let obs = Observation::new(seat, card, h, 5);
            assert_eq!(a.act(&obs, &mut ra), b.act(&obs, &mut rb));
        }
    }
}

/// Replays one seat's view of a match with different opponent cards: the
/// seat's actions agree up to the first point where the public history
/// diverges.
#[test]
fn decisions_depend_only_on_the_observation() {
    let lb = AgentSpec::new("lb", AgentKind::NashLb);
    let triple = [lb.clone(), lb.clone(), lb];
    let cards = deal_sequence(21, 2000);
    // Same seat-1 cards, opponents' cards swapped.
    let swapped: Vec<Deal> = cards
        .iter()
        .map(|d| {
            let [x, y, z] = d.cards();
            Deal::new([x, z, y]).unwrap()
        })
        .collect();
    let r1 = run_match(&triple, &cards, 9).unwrap();
    let r2 = run_match(&triple, &swapped, 9).unwrap();
    for (h1, h2) in r1.hands.iter().zip(&r2.hands) {
        // Seat 1 acts first, so its first action sees the same observation
        // and the same random draw in both runs.
        assert_eq!(h1.history.actions().next(), h2.history.actions().next());
    }
}
