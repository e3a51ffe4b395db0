//! Induced-game construction and cooperative-equilibrium extraction.

pub mod families;
pub mod registry;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::equilibria::{pure_nash, symmetric_mixed_nash_2x2, EquilibriaError};
use crate::family::FamilyError;
use crate::forecast::{best_forecast, BestForecast, Forecast, ForecastError, PublicGoodsForecast};
use crate::game::{Game, GameError, MixedStrategy, Profile};
use crate::rational::{bisect_feasible_boundary, bisection_tolerance, rational_sqrt, Rat};

pub use families::{
    solve_chicken, solve_commons, solve_parametric_pd, solve_pd, solve_public_goods,
    solve_traveler, Solution,
};
pub use registry::{FamilySolver, SolverRegistry};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("solver requires a symmetric 2x2 game, got {players} players x {strategies} strategies")]
    UnsupportedShape { players: usize, strategies: usize },
    #[error("floor {floor} exceeds the maximal symmetric payoff {max}")]
    FloorAboveSymmetricMax { floor: String, max: String },
    #[error("induced game has an empty feasible region (model inconsistency)")]
    EmptyFeasibleRegion,
    #[error("game has no symmetric equilibrium")]
    NoSymmetricEquilibrium,
    #[error("commons solver supports 2 farmers, got {0}")]
    CommonsPlayers(usize),
    #[error("no solver registered for family `{0}`")]
    UnknownFamily(String),
    #[error("solver `{solver}` cannot handle family `{family}`")]
    FamilyMismatch { solver: &'static str, family: &'static str },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Forecast(#[from] ForecastError),
    #[error(transparent)]
    Equilibria(#[from] EquilibriaError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// The base game restricted to profiles that give every player at least the
/// floor payoff v(p-bar).
#[derive(Debug, Clone)]
pub struct InducedGame<'a> {
    pub game: &'a Game,
    pub floor: Rat,
}

impl<'a> InducedGame<'a> {
    pub fn new(game: &'a Game, floor: Rat) -> Result<Self, SolverError> {
        let max = max_symmetric_payoff(game);
        if floor > max {
            return Err(SolverError::FloorAboveSymmetricMax {
                floor: floor.to_string(),
                max: max.to_string(),
            });
        }
        Ok(InducedGame { game, floor })
    }

    /// A profile is allowed when every player's expected payoff meets the
    /// floor.
    pub fn is_allowed(&self, profile: &Profile) -> Result<bool, SolverError> {
        for player in 0..self.game.num_players() {
            if self.game.expected_payoff(profile, player)? < self.floor {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Builds the induced game; independent of which maximizing structure
/// produced the floor.
pub fn induced_game(game: &Game, floor: Rat) -> Result<InducedGame<'_>, SolverError> {
    InducedGame::new(game, floor)
}

/// Largest payoff attainable on the symmetric diagonal. Exact for 2x2 games
/// (quadratic over the mixing weight); pure-diagonal maximum otherwise.
fn max_symmetric_payoff(game: &Game) -> Rat {
    if game.num_players() == 2 && game.num_strategies() == 2 {
        let (a, b, c) = diagonal_coefficients(game);
        let mut best = c.clone(); // lambda = 0
        let at_one = &a + &b + &c;
        if at_one > best {
            best = at_one;
        }
        if !a.is_zero() {
            let vertex = -&b / (Rat::from_integer(2.into()) * &a);
            if vertex > Rat::zero() && vertex < Rat::one() {
                let val = &a * &vertex * &vertex + &b * &vertex + &c;
                if val > best {
                    best = val;
                }
            }
        }
        best
    } else {
        (0..game.num_strategies())
            .map(|s| {
                game.payoff(&vec![s; game.num_players()], 0).clone()
            })
            .max()
            .expect("non-empty strategy set")
    }
}

/// Coefficients of the diagonal payoff u(l, l) = a*l^2 + b*l + c of a 2x2
/// symmetric game, with l the weight on strategy 0.
fn diagonal_coefficients(game: &Game) -> (Rat, Rat, Rat) {
    let r = game.payoff(&[0, 0], 0);
    let s = game.payoff(&[0, 1], 0);
    let t = game.payoff(&[1, 0], 0);
    let p = game.payoff(&[1, 1], 0);
    let a = r + p - s - t;
    let b = s + t - p - p;
    (a, b, p.clone())
}

/// Diagonal payoff of a symmetric 2x2 game at cooperation weight `l`.
pub fn diagonal_payoff(game: &Game, l: &Rat) -> Rat {
    let (a, b, c) = diagonal_coefficients(game);
    &a * l * l + &b * l + &c
}

/// Smallest cooperation weight `l` in [0,1] whose symmetric diagonal payoff
/// meets the floor. Exact rational root when one exists, bisection to 1e-12
/// otherwise (the returned weight is always feasible).
pub fn solve_2x2_diagonal(game: &Game, floor: &Rat) -> Result<Rat, SolverError> {
    if game.num_players() != 2 || game.num_strategies() != 2 {
        return Err(SolverError::UnsupportedShape {
            players: game.num_players(),
            strategies: game.num_strategies(),
        });
    }
    let (a, b, c) = diagonal_coefficients(game);
    if &c >= floor {
        return Ok(Rat::zero());
    }
    let at_one = &a + &b + &c;
    if &at_one < floor {
        return Err(SolverError::FloorAboveSymmetricMax {
            floor: floor.to_string(),
            max: at_one.to_string(),
        });
    }
    // u(0) < floor <= u(1), so the feasible diagonal set is [l*, 1].
    let shifted_c = &c - floor;
    if a.is_zero() {
        // b > 0 here: u(1) - u(0) = b and u crosses the floor.
        return Ok(-shifted_c / b);
    }
    let two_a = Rat::from_integer(2.into()) * &a;
    let disc = &b * &b - Rat::from_integer(4.into()) * &a * &shifted_c;
    if let Some(root) = rational_sqrt(&disc) {
        let r1 = (-&b - &root) / &two_a;
        let r2 = (-&b + &root) / &two_a;
        let (lo_root, hi_root) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        // concave: feasible between the roots; convex: feasible outside.
        let lambda = if a.is_negative() { lo_root } else { hi_root };
        debug_assert!(lambda >= Rat::zero() && lambda <= Rat::one());
        Ok(lambda)
    } else {
        let tol = bisection_tolerance();
        Ok(bisect_feasible_boundary(Rat::zero(), Rat::one(), &tol, |l| {
            &(&a * l * l + &b * l + &c) >= floor
        }))
    }
}

/// How the cooperative equilibrium plays out for a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquilibriumAction {
    /// Symmetric mixture over the game's strategies (2x2 families).
    Mixture {
        labels: Vec<String>,
        strategy: MixedStrategy,
    },
    /// Mixture over integer claims (traveler's dilemma); weights sum to 1.
    Claims { support: Vec<(i64, Rat)> },
    /// Equal contribution level in [0, endowment] (public goods).
    Contribution { amount: Rat, endowment: Rat },
}

/// The forecast diagnostics attached to a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ForecastPair {
    TwoPlayer { selfish: Forecast, cooperative: Forecast },
    PublicGoods(PublicGoodsForecast),
}

impl ForecastPair {
    pub fn selfish_value(&self) -> &Rat {
        match self {
            ForecastPair::TwoPlayer { selfish, .. } => &selfish.value,
            ForecastPair::PublicGoods(pg) => &pg.selfish_value,
        }
    }

    pub fn cooperative_value(&self) -> &Rat {
        match self {
            ForecastPair::TwoPlayer { cooperative, .. } => &cooperative.value,
            ForecastPair::PublicGoods(pg) => &pg.value,
        }
    }
}

/// A cooperative equilibrium: the symmetric strategy, the payoff it
/// guarantees, whether it coincides with the selfish Nash equilibrium, and
/// the forecast pair that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoopEquilibrium {
    pub action: EquilibriumAction,
    pub guaranteed_value: Rat,
    pub coincides_with_nash: bool,
    pub forecasts: ForecastPair,
}

impl CoopEquilibrium {
    /// Cooperation rate in [0,1]: the weight of the cooperative strategy, or
    /// the contributed fraction of the endowment. `None` for claim mixtures.
    pub fn cooperation_weight(&self) -> Option<Rat> {
        match &self.action {
            EquilibriumAction::Mixture { strategy, .. } => Some(strategy.weight(0).clone()),
            EquilibriumAction::Contribution { amount, endowment } => Some(amount / endowment),
            EquilibriumAction::Claims { .. } => None,
        }
    }

    /// Expected claim for claim-mixture solutions.
    pub fn expected_claim(&self) -> Option<Rat> {
        match &self.action {
            EquilibriumAction::Claims { support } => Some(
                support
                    .iter()
                    .map(|(claim, w)| Rat::from_integer((*claim).into()) * w)
                    .sum(),
            ),
            _ => None,
        }
    }
}

/// Full pipeline on a symmetric 2x2 game: best forecast, induced game, and
/// the symmetric equilibrium. When v(p_c) <= v(p_s) the result is the
/// symmetric Nash equilibrium of the original game (pure if one exists,
/// otherwise the mixed indifference point) with `coincides_with_nash` set;
/// otherwise the minimal-cooperation symmetric feasible profile.
pub fn cooperative_equilibrium(game: &Game) -> Result<CoopEquilibrium, SolverError> {
    if game.num_players() != 2 || game.num_strategies() != 2 {
        return Err(SolverError::UnsupportedShape {
            players: game.num_players(),
            strategies: game.num_strategies(),
        });
    }
    let forecasts = best_forecast(game)?;
    cooperative_equilibrium_from(game, forecasts)
}

fn cooperative_equilibrium_from(
    game: &Game,
    forecasts: BestForecast,
) -> Result<CoopEquilibrium, SolverError> {
    let labels = game.strategy_labels().to_vec();
    if forecasts.cooperative_selected() {
        let floor = forecasts.cooperative.value.clone();
        let lambda = solve_2x2_diagonal(game, &floor)?;
        let strategy = MixedStrategy::binary(lambda).expect("weight in [0,1]");
        return Ok(CoopEquilibrium {
            action: EquilibriumAction::Mixture { labels, strategy },
            guaranteed_value: floor,
            coincides_with_nash: false,
            forecasts: ForecastPair::TwoPlayer {
                selfish: forecasts.selfish,
                cooperative: forecasts.cooperative,
            },
        });
    }
    // Nash-coincidence regime: report the symmetric selfish equilibrium,
    // preferring the pure one closest to full defection.
    let symmetric_pure: Vec<usize> = pure_nash(game)
        .into_iter()
        .filter(|p| p[0] == p[1])
        .map(|p| p[0])
        .collect();
    let strategy = if let Some(&s) = symmetric_pure.iter().max() {
        MixedStrategy::pure(s, 2)
    } else if let Some(mixed) = symmetric_mixed_nash_2x2(game)? {
        mixed
    } else {
        return Err(SolverError::NoSymmetricEquilibrium);
    };
    Ok(CoopEquilibrium {
        action: EquilibriumAction::Mixture { labels, strategy },
        guaranteed_value: forecasts.selfish.value.clone(),
        coincides_with_nash: true,
        forecasts: ForecastPair::TwoPlayer {
            selfish: forecasts.selfish,
            cooperative: forecasts.cooperative,
        },
    })
}
