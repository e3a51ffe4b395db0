//! Property tests for the forecast pipeline and solver invariants.

use num::{One, Signed, Zero};
use proptest::prelude::*;

use coopeq_core::oracle::{
    oracle_coop_equilibrium, oracle_incentive, oracle_risk, oracle_value, Grid, RiskMode,
};
use coopeq_core::solver::diagonal_payoff;
use coopeq_core::{
    best_forecast, coalition_value, cooperative_equilibrium, pure_nash, rat, rat_i,
    CoalitionStructure, EquilibriumAction, Game, GameFamily, MixedStrategy, Profile, Rat,
};

fn p_s() -> CoalitionStructure {
    CoalitionStructure::singletons(2)
}

fn p_c() -> CoalitionStructure {
    CoalitionStructure::grand(2)
}

/// Four strictly decreasing rationals on a small lattice.
fn descending_payoffs() -> impl Strategy<Value = (Rat, Rat, Rat, Rat)> {
    (
        proptest::collection::btree_set(-60i64..=120, 4),
        prop::sample::select(vec![1i64, 2, 3, 4, 5, 8, 10, 20]),
    )
        .prop_map(|(set, denom)| {
            let mut vals: Vec<Rat> = set.into_iter().map(|n| rat(n, denom)).collect();
            vals.reverse();
            let mut it = vals.into_iter();
            (
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            )
        })
}

fn random_pd() -> impl Strategy<Value = Game> {
    descending_payoffs().prop_map(|(t, r, p, s)| {
        GameFamily::Pd { t, r, p, s }.instantiate().expect("ordered payoffs")
    })
}

fn random_chicken() -> impl Strategy<Value = Game> {
    descending_payoffs().prop_map(|(t, r, s, p)| {
        GameFamily::Chicken { t, r, s, p }.instantiate().expect("ordered payoffs")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn tau_lies_in_the_unit_interval(game in prop_oneof![random_pd(), random_chicken()]) {
        for structure in [p_s(), p_c()] {
            let f = coalition_value(&game, &structure).unwrap();
            prop_assert!(f.tau >= Rat::zero() && f.tau <= Rat::one());
        }
    }

    #[test]
    fn value_is_a_sub_convex_combination(game in prop_oneof![random_pd(), random_chicken()]) {
        for structure in [p_s(), p_c()] {
            let f = coalition_value(&game, &structure).unwrap();
            prop_assert!(f.value <= f.e_nobody);
            prop_assert!(f.e_deviated <= f.e_nobody);
        }
    }

    #[test]
    fn selfish_structure_has_zero_incentive(game in prop_oneof![random_pd(), random_chicken()]) {
        let f = coalition_value(&game, &p_s()).unwrap();
        prop_assert!(f.incentive.is_zero());
        prop_assert!(f.tau.is_zero());
        prop_assert_eq!(&f.value, &f.e_nobody);
    }

    #[test]
    fn forecast_covaries_with_positive_affine_maps(
        game in prop_oneof![random_pd(), random_chicken()],
        c_num in 1i64..=40,
        c_den in prop::sample::select(vec![1i64, 2, 4, 10]),
        d_num in -30i64..=30,
    ) {
        let c = rat(c_num, c_den);
        let d = rat(d_num, 3);
        let labels: Vec<String> = game.strategy_labels().to_vec();
        let scaled = Game::from_fn(2, labels, |p| {
            vec![
                game.payoff(p, 0) * &c + &d,
                game.payoff(p, 1) * &c + &d,
            ]
        })
        .unwrap();
        for structure in [p_s(), p_c()] {
            let f0 = coalition_value(&game, &structure).unwrap();
            let f1 = coalition_value(&scaled, &structure).unwrap();
            prop_assert_eq!(&f1.incentive, &(&f0.incentive * &c));
            prop_assert_eq!(&f1.risk, &(&f0.risk * &c));
            prop_assert_eq!(&f1.tau, &f0.tau);
            prop_assert_eq!(&f1.e_nobody, &(&f0.e_nobody * &c + &d));
            prop_assert_eq!(&f1.value, &(&f0.value * &c + &d));
        }
    }

    #[test]
    fn equilibrium_strategy_is_affine_invariant(
        game in prop_oneof![random_pd(), random_chicken()],
        c_num in 1i64..=40,
        d_num in -30i64..=30,
    ) {
        let c = rat(c_num, 4);
        let d = rat_i(d_num);
        let labels: Vec<String> = game.strategy_labels().to_vec();
        let scaled = Game::from_fn(2, labels, |p| {
            vec![
                game.payoff(p, 0) * &c + &d,
                game.payoff(p, 1) * &c + &d,
            ]
        })
        .unwrap();
        let base = cooperative_equilibrium(&game).unwrap();
        let mapped = cooperative_equilibrium(&scaled).unwrap();
        prop_assert_eq!(base.cooperation_weight(), mapped.cooperation_weight());
        prop_assert_eq!(base.coincides_with_nash, mapped.coincides_with_nash);
    }

    #[test]
    fn nash_coincidence_matches_pure_nash(game in prop_oneof![random_pd(), random_chicken()]) {
        let forecasts = best_forecast(&game).unwrap();
        let eq = cooperative_equilibrium(&game).unwrap();
        if forecasts.cooperative.value <= forecasts.selfish.value {
            prop_assert!(eq.coincides_with_nash);
            // a pure symmetric answer must be a pure Nash profile
            if let EquilibriumAction::Mixture { strategy, .. } = &eq.action {
                if let [s] = strategy.support().as_slice() {
                    prop_assert!(pure_nash(&game).contains(&vec![*s, *s]));
                }
            }
        } else {
            prop_assert!(!eq.coincides_with_nash);
        }
    }

    #[test]
    fn floor_guarantee_and_minimality(game in prop_oneof![random_pd(), random_chicken()]) {
        let eq = cooperative_equilibrium(&game).unwrap();
        if eq.coincides_with_nash {
            return Ok(());
        }
        let lambda = eq.cooperation_weight().unwrap();
        let floor = &eq.guaranteed_value;
        prop_assert!(diagonal_payoff(&game, &lambda) >= *floor);
        if lambda > Rat::zero() {
            let below = &lambda - rat(1, 1_000_000);
            // minimality holds wherever the diagonal still climbs at lambda
            let r = game.payoff(&[0, 0], 0);
            let s = game.payoff(&[0, 1], 0);
            let t = game.payoff(&[1, 0], 0);
            let p = game.payoff(&[1, 1], 0);
            let slope = rat_i(2) * (r + p - s - t) * &lambda + (s + t - p - p);
            if slope.is_positive() && below >= Rat::zero() {
                prop_assert!(diagonal_payoff(&game, &below) < *floor);
            }
        }
    }

    #[test]
    fn expected_payoff_is_multilinear(
        game in random_pd(),
        w1 in 0i64..=8,
        w2 in 0i64..=8,
        opp in 0i64..=8,
    ) {
        let opponent = MixedStrategy::binary(rat(opp, 8)).unwrap();
        let at = |w: Rat| {
            let p = Profile::new(vec![
                MixedStrategy::binary(w).unwrap(),
                opponent.clone(),
            ]);
            game.expected_payoff(&p, 0).unwrap()
        };
        let (a, b) = (rat(w1, 8), rat(w2, 8));
        let mid = (&a + &b) / rat_i(2);
        prop_assert_eq!(at(mid), (at(a) + at(b)) / rat_i(2));
    }
}

#[test]
fn grid_oracle_agrees_on_the_named_instances() {
    let instances: Vec<Game> = vec![
        GameFamily::Pd { t: rat(1, 5), r: rat(3, 20), p: rat(1, 20), s: rat_i(0) }
            .instantiate()
            .unwrap(),
        GameFamily::Pd { t: rat_i(10), r: rat_i(7), p: rat_i(3), s: rat_i(0) }
            .instantiate()
            .unwrap(),
        GameFamily::Pd { t: rat_i(400), r: rat_i(300), p: rat_i(0), s: rat_i(-100) }
            .instantiate()
            .unwrap(),
        GameFamily::ParametricPd { k: rat_i(5) }.instantiate().unwrap(),
        GameFamily::Chicken { t: rat_i(300), r: rat_i(200), s: rat_i(100), p: rat_i(0) }
            .instantiate()
            .unwrap(),
        GameFamily::Commons { players: 2, utility: rat_i(1), damage: rat(8, 5) }
            .instantiate()
            .unwrap(),
        GameFamily::PublicGoods { players: 2, endowment: rat_i(1), alpha: rat(4, 5) }
            .instantiate()
            .unwrap(),
    ];
    let grid = Grid::with_denominator(1000).unwrap();
    let bound = rat(5, 1000);
    for game in &instances {
        for structure in [p_s(), p_c()] {
            let f = coalition_value(game, &structure).unwrap();
            let d = oracle_incentive(game, &structure, &grid).unwrap();
            let r = oracle_risk(game, &structure, &grid, RiskMode::BestReply).unwrap();
            let v = oracle_value(game, &structure, &grid).unwrap();
            assert!((f.incentive - d).abs() <= bound);
            assert!((f.risk - r).abs() <= bound);
            assert!((f.value - v).abs() <= bound);
        }
        // equilibrium weight against the oracle scan
        let eq = cooperative_equilibrium(game).unwrap();
        if !eq.coincides_with_nash {
            let w = oracle_coop_equilibrium(game, &eq.guaranteed_value, &grid).unwrap();
            assert!((eq.cooperation_weight().unwrap() - w).abs() <= bound);
        }
    }
}
