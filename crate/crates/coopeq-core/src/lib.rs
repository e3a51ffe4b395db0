//! Cooperative-equilibrium solver for symmetric one-shot social dilemmas.
//!
//! The model forecasts how a game would be played under the selfish
//! coalition structure p_s (everyone plays a Nash equilibrium of the base
//! game) and the cooperative structure p_c (the grand coalition maximizes
//! the payoff sum), prices each structure by comparing the incentive to
//! abandon it against the risk of doing so, and restricts the game to
//! profiles paying everyone at least the better forecast. The cooperative
//! equilibrium is the symmetric equilibrium of that restricted game.
//!
//! Modules:
//! - [`game`]: symmetric games, mixed strategies, expected payoffs
//! - [`family`]: the parametric families (PD, parametric PD, traveler's
//!   dilemma, public goods, commons, chicken) and their instantiation
//! - [`equilibria`]: pure Nash sets, coalition optima, best replies
//! - [`forecast`]: incentive, risk, deviation probability, structure values
//! - [`solver`]: induced game, diagonal solver, per-family solution paths
//!   behind a name-keyed registry
//! - [`oracle`]: independent brute-force checks over mixture grids

pub mod equilibria;
pub mod family;
pub mod forecast;
pub mod game;
pub mod oracle;
pub mod rational;
pub mod solver;

pub use equilibria::{
    best_response_value, coalition_optima, pure_nash, symmetric_mixed_nash_2x2, CoalitionGame,
    CoalitionStructure,
};
pub use family::{FamilyError, GameFamily};
pub use forecast::{
    abandon_probability, best_forecast, coalition_value, guaranteed_payoffs, incentive,
    public_goods_value, risk, BestForecast, Forecast, PublicGoodsForecast,
};
pub use game::{Game, GameError, MixedStrategy, Profile, SymmetryViolation};
pub use rational::{fmt_decimal, fmt_exact, fmt_full, parse_money, rat, rat_i, Rat};
pub use solver::{
    cooperative_equilibrium, induced_game, solve_2x2_diagonal, solve_chicken, solve_commons,
    solve_parametric_pd, solve_pd, solve_public_goods, solve_traveler, CoopEquilibrium,
    EquilibriumAction, FamilySolver, ForecastPair, InducedGame, Solution, SolverError,
    SolverRegistry,
};
