//! Closed-form solution paths for the supported game families.

use num::{One, Signed, Zero};

use crate::equilibria::{symmetric_mixed_nash_2x2, CoalitionStructure};
use crate::family::GameFamily;
use crate::forecast::{public_goods_value, Forecast};
use crate::game::MixedStrategy;
use crate::rational::{bisect_feasible_boundary, bisection_tolerance, rat_i, rational_sqrt, Rat};
use crate::solver::{
    cooperative_equilibrium, CoopEquilibrium, EquilibriumAction, ForecastPair, SolverError,
};

/// Solver output: the cooperative equilibrium plus, where the family calls
/// for it (chicken), the symmetric mixed Nash equilibrium for side-by-side
/// display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub family: &'static str,
    pub equilibrium: CoopEquilibrium,
    pub mixed_nash: Option<MixedStrategy>,
}

/// Prisoner's dilemma with explicit payoffs T > R > P > S.
pub fn solve_pd(t: &Rat, r: &Rat, p: &Rat, s: &Rat) -> Result<Solution, SolverError> {
    let family = GameFamily::Pd {
        t: t.clone(),
        r: r.clone(),
        p: p.clone(),
        s: s.clone(),
    };
    let game = family.instantiate()?;
    Ok(Solution {
        family: "pd",
        equilibrium: cooperative_equilibrium(&game)?,
        mixed_nash: None,
    })
}

/// Parametric prisoner's dilemma T=k+2, R=k+1, P=1, S=0. Coincides with the
/// Nash equilibrium for k <= 1 and plays (k-1)/k C + 1/k D beyond.
pub fn solve_parametric_pd(k: &Rat) -> Result<Solution, SolverError> {
    let family = GameFamily::ParametricPd { k: k.clone() };
    let game = family.instantiate()?;
    Ok(Solution {
        family: "parametric-pd",
        equilibrium: cooperative_equilibrium(&game)?,
        mixed_nash: None,
    })
}

/// v(p_c) of the traveler's dilemma by the bonus formula
/// hi*(b+2)/(2b+1) + (hi-2b)*(b-1)/(2b+1).
///
/// The formula prices the worst deviation at the claim hi-b even when that
/// claim falls below lo (b > hi-lo); the game-faithful forecast clamps it,
/// but the published analysis and this solver use the formula for all b.
pub fn traveler_cooperative_value(bonus: &Rat, hi: i64) -> Rat {
    let hi = rat_i(hi);
    let denom = rat_i(2) * bonus + Rat::one();
    (&hi * (bonus + rat_i(2)) + (&hi - rat_i(2) * bonus) * (bonus - Rat::one())) / denom
}

/// Traveler's dilemma: pure claim lo in the Nash-coincidence regime, the
/// exact integer claim when v(p_c) lands on one, otherwise the minimal
/// expected-claim mixture over the two claims bracketing v(p_c).
pub fn solve_traveler(bonus: &Rat, lo: i64, hi: i64) -> Result<Solution, SolverError> {
    let family = GameFamily::Traveler { bonus: bonus.clone(), lo, hi };
    family.validate()?;
    let v_s = rat_i(lo);
    let v_c = traveler_cooperative_value(bonus, hi);
    let tau = (bonus - Rat::one()) / (rat_i(2) * bonus + Rat::one());
    let selfish = Forecast {
        structure: CoalitionStructure::singletons(2),
        incentive: Rat::zero(),
        risk: Rat::zero(),
        tau: Rat::zero(),
        e_nobody: v_s.clone(),
        e_deviated: v_s.clone(),
        value: v_s.clone(),
    };
    let cooperative = Forecast {
        structure: CoalitionStructure::grand(2),
        incentive: bonus - Rat::one(),
        risk: bonus + rat_i(2),
        tau,
        e_nobody: rat_i(hi),
        e_deviated: rat_i(hi) - rat_i(2) * bonus,
        value: v_c.clone(),
    };
    let forecasts = ForecastPair::TwoPlayer { selfish, cooperative };

    let equilibrium = if v_c <= v_s {
        CoopEquilibrium {
            action: EquilibriumAction::Claims { support: vec![(lo, Rat::one())] },
            guaranteed_value: v_s,
            coincides_with_nash: true,
            forecasts,
        }
    } else {
        let m = v_c.floor().numer().clone();
        let m: i64 = i64::try_from(&m).expect("claims fit in i64");
        if v_c.is_integer() {
            CoopEquilibrium {
                action: EquilibriumAction::Claims { support: vec![(m, Rat::one())] },
                guaranteed_value: v_c,
                coincides_with_nash: false,
                forecasts,
            }
        } else {
            debug_assert!(m >= lo && m < hi);
            // On the segment between claims m and m+1 the diagonal payoff is
            // m + w^2, with w the weight on m+1.
            let excess = &v_c - rat_i(m);
            let w = match rational_sqrt(&excess) {
                Some(w) => w,
                None => {
                    let tol = bisection_tolerance();
                    bisect_feasible_boundary(Rat::zero(), Rat::one(), &tol, |w| w * w >= excess)
                }
            };
            CoopEquilibrium {
                action: EquilibriumAction::Claims {
                    support: vec![(m, Rat::one() - &w), (m + 1, w)],
                },
                guaranteed_value: v_c,
                coincides_with_nash: false,
                forecasts,
            }
        }
    };
    Ok(Solution { family: "traveler", equilibrium, mixed_nash: None })
}

/// Public goods: zero contribution when v(p_c) <= v(p_s) = y, otherwise the
/// minimal equal contribution with y + (alpha*N - 1)x >= v(p_c), clamped to
/// [0, y].
pub fn solve_public_goods(
    players: usize,
    endowment: &Rat,
    alpha: &Rat,
) -> Result<Solution, SolverError> {
    let pg = public_goods_value(players, endowment, alpha)?;
    let (amount, coincides, guaranteed) = if pg.value <= pg.selfish_value {
        (Rat::zero(), true, pg.selfish_value.clone())
    } else {
        let n = rat_i(players as i64);
        let slope = alpha * &n - Rat::one();
        let mut x = (&pg.value - endowment) / slope;
        if x.is_negative() {
            x = Rat::zero();
        }
        if &x > endowment {
            x = endowment.clone();
        }
        (x, false, pg.value.clone())
    };
    Ok(Solution {
        family: "public-goods",
        equilibrium: CoopEquilibrium {
            action: EquilibriumAction::Contribution {
                amount,
                endowment: endowment.clone(),
            },
            guaranteed_value: guaranteed,
            coincides_with_nash: coincides,
            forecasts: ForecastPair::PublicGoods(pg),
        },
        mixed_nash: None,
    })
}

/// Tragedy of the commons for two farmers: instantiates the keep/not-keep
/// game and runs the full pipeline; the cooperation weight is the
/// probability of not keeping the sheep.
pub fn solve_commons(players: usize, utility: &Rat, damage: &Rat) -> Result<Solution, SolverError> {
    let family = GameFamily::Commons {
        players,
        utility: utility.clone(),
        damage: damage.clone(),
    };
    family.validate()?;
    if players != 2 {
        return Err(SolverError::CommonsPlayers(players));
    }
    let game = family.instantiate()?;
    Ok(Solution {
        family: "commons",
        equilibrium: cooperative_equilibrium(&game)?,
        mixed_nash: None,
    })
}

/// Chicken (T > R > S > P): full pipeline under the multi-equilibrium
/// conventions, with the symmetric mixed Nash equilibrium attached for
/// side-by-side display.
pub fn solve_chicken(t: &Rat, r: &Rat, s: &Rat, p: &Rat) -> Result<Solution, SolverError> {
    let family = GameFamily::Chicken {
        t: t.clone(),
        r: r.clone(),
        s: s.clone(),
        p: p.clone(),
    };
    let game = family.instantiate()?;
    let equilibrium = cooperative_equilibrium(&game)?;
    let mixed_nash = symmetric_mixed_nash_2x2(&game)?;
    Ok(Solution { family: "chicken", equilibrium, mixed_nash })
}

/// Dispatches a validated family to its solver.
pub fn solve_family(family: &GameFamily) -> Result<Solution, SolverError> {
    match family {
        GameFamily::Pd { t, r, p, s } => solve_pd(t, r, p, s),
        GameFamily::ParametricPd { k } => solve_parametric_pd(k),
        GameFamily::Traveler { bonus, lo, hi } => solve_traveler(bonus, *lo, *hi),
        GameFamily::PublicGoods { players, endowment, alpha } => {
            solve_public_goods(*players, endowment, alpha)
        }
        GameFamily::Commons { players, utility, damage } => {
            solve_commons(*players, utility, damage)
        }
        GameFamily::Chicken { t, r, s, p } => solve_chicken(t, r, s, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn traveler_value_formula_examples() {
        assert_eq!(traveler_cooperative_value(&rat_i(5), 300), rat(3260, 11));
        assert_eq!(traveler_cooperative_value(&rat_i(2), 100), rat(496, 5));
        assert_eq!(traveler_cooperative_value(&rat_i(180), 300), rat(43860, 361));
    }

    #[test]
    fn traveler_large_bonus_coincides_with_nash() {
        let sol = solve_traveler(&rat_i(180), 180, 300).unwrap();
        assert!(sol.equilibrium.coincides_with_nash);
        assert_eq!(
            sol.equilibrium.action,
            EquilibriumAction::Claims { support: vec![(180, rat_i(1))] }
        );
        assert_eq!(sol.equilibrium.guaranteed_value, rat_i(180));
    }

    #[test]
    fn traveler_small_bonus_mixes_296_and_297() {
        let sol = solve_traveler(&rat_i(5), 180, 300).unwrap();
        match &sol.equilibrium.action {
            EquilibriumAction::Claims { support } => {
                let claims: Vec<i64> = support.iter().map(|(c, _)| *c).collect();
                assert_eq!(claims, vec![296, 297]);
                // w solves 296 + w^2 = 3260/11, i.e. w = sqrt(4/11)
                let w = &support[1].1;
                assert!(rat_i(296) + w * w >= rat(3260, 11));
                let below = w - rat(1, 1_000_000);
                assert!(rat_i(296) + &below * &below < rat(3260, 11));
            }
            other => panic!("expected claim mixture, got {other:?}"),
        }
    }

    #[test]
    fn traveler_game_theorist_variant_lands_near_99() {
        let sol = solve_traveler(&rat_i(2), 2, 100).unwrap();
        assert_eq!(sol.equilibrium.guaranteed_value, rat(496, 5));
        let claim = sol.equilibrium.expected_claim().unwrap();
        assert!(claim >= rat_i(99) && claim < rat_i(100));
    }

    #[test]
    fn public_goods_alpha_08_contributes_two_thirds() {
        let sol = solve_public_goods(2, &rat_i(1), &rat(4, 5)).unwrap();
        assert_eq!(sol.equilibrium.cooperation_weight().unwrap(), rat(2, 3));
        assert!(!sol.equilibrium.coincides_with_nash);
    }

    #[test]
    fn public_goods_below_threshold_contributes_nothing() {
        for alpha in [rat(11, 20), rat(3, 5), rat(2, 3)] {
            let sol = solve_public_goods(2, &rat_i(1), &alpha).unwrap();
            assert_eq!(sol.equilibrium.cooperation_weight().unwrap(), rat_i(0));
            assert!(sol.equilibrium.coincides_with_nash);
        }
    }

    #[test]
    fn commons_alpha_08_spares_the_grass_two_thirds_of_the_time() {
        // h=1, k0=1.6 so alpha = k/h = 0.8
        let sol = solve_commons(2, &rat_i(1), &rat(8, 5)).unwrap();
        assert_eq!(sol.equilibrium.cooperation_weight().unwrap(), rat(2, 3));
    }

    #[test]
    fn commons_alpha_06_keeps_the_sheep() {
        let sol = solve_commons(2, &rat_i(1), &rat(6, 5)).unwrap();
        assert_eq!(sol.equilibrium.cooperation_weight().unwrap(), rat_i(0));
        assert!(sol.equilibrium.coincides_with_nash);
    }

    #[test]
    fn commons_boundary_ties_to_nash() {
        let sol = solve_commons(2, &rat_i(1), &rat(4, 3)).unwrap();
        assert_eq!(sol.equilibrium.cooperation_weight().unwrap(), rat_i(0));
        assert!(sol.equilibrium.coincides_with_nash);
    }

    #[test]
    fn chicken_reports_equilibrium_and_mixed_nash() {
        let sol = solve_chicken(&rat_i(300), &rat_i(200), &rat_i(100), &rat_i(0)).unwrap();
        assert!(sol.equilibrium.coincides_with_nash);
        assert_eq!(sol.equilibrium.cooperation_weight().unwrap(), rat(1, 2));
        assert_eq!(*sol.mixed_nash.unwrap().weight(0), rat(1, 2));
    }

    #[test]
    fn chicken_rejects_broken_ordering() {
        assert!(solve_chicken(&rat_i(300), &rat_i(200), &rat_i(200), &rat_i(0)).is_err());
    }

    #[test]
    fn traveler_expected_claim_shrinks_as_the_bonus_grows() {
        let mut previous: Option<crate::rational::Rat> = None;
        for b in 2i64..=60 {
            let sol = solve_traveler(&rat_i(b), 180, 300).unwrap();
            let claim = sol
                .equilibrium
                .expected_claim()
                .expect("claims solution");
            if let Some(prev) = previous {
                assert!(claim <= prev, "claim rose at b={b}");
            }
            previous = Some(claim);
        }
    }

    #[test]
    fn parametric_pd_tracks_k() {
        for (k, expected) in [
            (rat_i(0), rat_i(0)),
            (rat(1, 2), rat_i(0)),
            (rat_i(1), rat_i(0)),
            (rat(3, 2), rat(1, 3)),
            (rat_i(2), rat(1, 2)),
            (rat_i(5), rat(4, 5)),
            (rat_i(10), rat(9, 10)),
        ] {
            let sol = solve_parametric_pd(&k).unwrap();
            assert_eq!(sol.equilibrium.cooperation_weight().unwrap(), expected, "k = {k}");
        }
    }
}
