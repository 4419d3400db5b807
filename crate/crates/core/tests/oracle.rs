use proptest::prelude::*;

use kuhn3::equilibrium::{best_response, expected_values, pure_strategy_oracle};
use kuhn3::game::{Seat, NUM_INFOSETS};
use kuhn3::scalar::{ratio, Rational};
use kuhn3::strategy::{nash_profile, ExactProfile, StrategyProfile, Variant};

fn exact_profile() -> impl Strategy<Value = ExactProfile> {
    prop::collection::vec((0..=16i64, 1..=16i64), NUM_INFOSETS).prop_map(|v| {
        let mut it = v.into_iter();
        StrategyProfile::from_fn(|_| {
            let (n, d) = it.next().unwrap();
            ratio(n.min(d), d)
        })
    })
}

fn seat() -> impl Strategy<Value = Seat> {
    (0usize..3).prop_map(Seat::from_index)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn best_response_matches_brute_force(p in exact_profile(), seat in seat()) {
        let fast = best_response(&p, seat);
        let oracle = pure_strategy_oracle(&p, seat);
        prop_assert_eq!(&fast.value, &oracle.best.value);
        // each side's pure strategy achieves the shared value
        prop_assert_eq!(expected_values(&fast.profile).seat(seat).clone(), fast.value.clone());
        prop_assert_eq!(expected_values(&oracle.best.profile).seat(seat).clone(), oracle.best.value.clone());
    }

    #[test]
    fn best_response_dominates_current_play(p in exact_profile(), seat in seat()) {
        let br = best_response(&p, seat);
        prop_assert!(&br.value >= expected_values(&p).seat(seat));
    }
}

#[test]
fn oracle_agrees_on_the_tabled_profiles() {
    for variant in [Variant::Lb, Variant::Ub] {
        let p = nash_profile(variant);
        for seat in Seat::ALL {
            assert_eq!(best_response(&p, seat).value, pure_strategy_oracle(&p, seat).best.value);
        }
    }
}

#[test]
fn oracle_on_pure_profiles() {
    let zero: Rational = ratio(0, 1);
    for p in [StrategyProfile::constant(zero), StrategyProfile::constant(ratio(1, 1))] {
        for seat in Seat::ALL {
            assert_eq!(best_response(&p, seat).value, pure_strategy_oracle(&p, seat).best.value);
        }
    }
}
