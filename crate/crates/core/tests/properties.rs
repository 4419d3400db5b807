use proptest::prelude::*;

use kuhn3::equilibrium::{best_response, epsilon, expected_values};
use kuhn3::game::{InfoSetKey, Seat, NUM_INFOSETS};
use kuhn3::scalar::{ratio, Rational};
use kuhn3::strategy::{dominance_value, nash_profile, ExactProfile, StrategyProfile, Variant};

fn exact_profile() -> impl Strategy<Value = ExactProfile> {
    prop::collection::vec((0..=10i64, 1..=10i64), NUM_INFOSETS).prop_map(|v| {
        let mut it = v.into_iter();
        StrategyProfile::from_fn(|_| {
            let (n, d) = it.next().unwrap();
            ratio(n.min(d), d)
        })
    })
}

fn infoset() -> impl Strategy<Value = InfoSetKey> {
    (0..NUM_INFOSETS).prop_map(InfoSetKey::from_index)
}

fn dominated_infoset() -> impl Strategy<Value = InfoSetKey> {
    let keys: Vec<InfoSetKey> = InfoSetKey::all().filter(|k| dominance_value(k).is_some()).collect();
    prop::sample::select(keys)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Expected values are affine in any single infoset's probability.
    #[test]
    fn values_are_affine_per_infoset(p in exact_profile(), key in infoset()) {
        let at = |t: Rational| expected_values(&p.clone().with(key, t));
        let (v0, vh, v1) = (at(ratio(0, 1)), at(ratio(1, 2)), at(ratio(1, 1)));
        for s in 0..3 {
            prop_assert_eq!(vh.0[s].clone() * ratio(2, 1), v0.0[s].clone() + v1.0[s].clone());
        }
    }

    #[test]
    fn values_sum_to_zero(p in exact_profile()) {
        prop_assert_eq!(expected_values(&p).sum(), ratio(0, 1));
    }

    // Moving a dominance-filled entry to its forced value never hurts the
    // seat that owns it.
    #[test]
    fn dominance_completion_is_sound(p in exact_profile(), key in dominated_infoset()) {
        let forced = dominance_value(&key).unwrap();
        let seat = key.seat;
        let before = expected_values(&p).seat(seat).clone();
        let after = expected_values(&p.clone().with(key, forced)).seat(seat).clone();
        prop_assert!(after >= before);
    }

    #[test]
    fn perturbing_a_dominated_entry_of_lb_is_not_profitable(key in dominated_infoset(), t in 0..=8i64) {
        let lb = nash_profile(Variant::Lb);
        let seat = key.seat;
        let base = expected_values(&lb).seat(seat).clone();
        let moved = expected_values(&lb.clone().with(key, ratio(t, 8))).seat(seat).clone();
        prop_assert!(moved <= base);
    }

    #[test]
    fn epsilon_is_non_negative(p in exact_profile()) {
        prop_assert!(epsilon(&p) >= ratio(0, 1));
    }
}

#[test]
fn best_response_value_ignores_own_entries() {
    let lb = nash_profile(Variant::Lb);
    for seat in Seat::ALL {
        let scrambled = lb.clone().with_seat_from(seat, &StrategyProfile::uniform());
        assert_eq!(best_response(&lb, seat).value, best_response(&scrambled, seat).value);
    }
}
