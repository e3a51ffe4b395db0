//! The forecast pipeline: incentive to abandon a coalition structure, risk of
//! doing so, the implied deviation probability, guaranteed payoffs, and the
//! structure's value.
//!
//! Conventions for multi-equilibrium coalition games (e.g. Chicken's joint
//! optima): the incentive and risk suprema run over the matched equilibrium
//! profiles of the coalition game, while the guaranteed-payoff infima also
//! admit cross-matched play, where each player independently follows a
//! possibly different equilibrium. The risk counter-set is the best-reply
//! reading: the stayer either replies selfishly to the deviator's equilibrium
//! strategy or anticipates the deviator's greedy move; the unrestricted
//! deviation-set reading lives in the oracle module for comparison.

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::equilibria::{
    coalition_optima, pure_best_replies, CoalitionGame, CoalitionStructure, EquilibriaError,
};
use crate::game::{Game, GameError, MixedStrategy, Profile};
use crate::rational::{rat_i, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForecastError {
    #[error("forecast pipeline requires a 2-player game, got {0} players")]
    TwoPlayersOnly(usize),
    #[error("coalition structure must be p_s or p_c")]
    UnsupportedStructure,
    #[error("game has no selfish pure equilibrium")]
    NoSelfishEquilibrium,
    #[error("abandon probability needs non-negative incentive and risk, got D={d}, R={r}")]
    NegativeInputs { d: String, r: String },
    #[error("public goods parameters out of domain: {0}")]
    PublicGoodsDomain(&'static str),
    #[error(transparent)]
    Equilibria(#[from] EquilibriaError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Per-structure forecast record: incentive D, risk R, deviation probability
/// tau, guaranteed payoffs, and the value v(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forecast {
    pub structure: CoalitionStructure,
    pub incentive: Rat,
    pub risk: Rat,
    pub tau: Rat,
    pub e_nobody: Rat,
    pub e_deviated: Rat,
    pub value: Rat,
}

/// Strategies a player may deviate to without lowering its payoff against
/// the fixed opposing strategy of a base profile.
#[derive(Debug, Clone)]
pub struct DeviationSet<'a> {
    game: &'a Game,
    base: Vec<usize>,
    pub deviator: usize,
}

impl<'a> DeviationSet<'a> {
    pub fn new(game: &'a Game, base: Vec<usize>, deviator: usize) -> Self {
        DeviationSet { game, base, deviator }
    }

    /// Whether a mixed strategy qualifies as a deviation from the base.
    pub fn contains(&self, strategy: &MixedStrategy) -> bool {
        let mut mixed: Vec<MixedStrategy> = self
            .base
            .iter()
            .map(|&s| MixedStrategy::pure(s, self.game.num_strategies()))
            .collect();
        mixed[self.deviator] = strategy.clone();
        let profile = Profile::new(mixed);
        let dev_payoff = self
            .game
            .expected_payoff(&profile, self.deviator)
            .expect("well-formed profile");
        dev_payoff >= *self.game.payoff(&self.base, self.deviator)
    }

    /// Pure strategies in the deviation set. Always contains the deviator's
    /// own base strategy.
    pub fn pure_deviations(&self) -> Vec<usize> {
        let baseline = self.game.payoff(&self.base, self.deviator);
        (0..self.game.num_strategies())
            .filter(|&s| {
                let mut profile = self.base.clone();
                profile[self.deviator] = s;
                self.game.payoff(&profile, self.deviator) >= baseline
            })
            .collect()
    }
}

fn require_two_players(game: &Game) -> Result<(), ForecastError> {
    if game.num_players() != 2 {
        return Err(ForecastError::TwoPlayersOnly(game.num_players()));
    }
    Ok(())
}

fn structure_optima(
    game: &Game,
    structure: &CoalitionStructure,
) -> Result<Vec<Vec<usize>>, ForecastError> {
    if !(structure.is_grand() || structure.is_selfish()) {
        return Err(ForecastError::UnsupportedStructure);
    }
    let cg = CoalitionGame::new(game, structure.clone())?;
    let optima = coalition_optima(&cg)?;
    if optima.is_empty() {
        return Err(ForecastError::NoSelfishEquilibrium);
    }
    Ok(optima)
}

fn profile_of(stayer: usize, stayer_strategy: usize, deviator_strategy: usize) -> [usize; 2] {
    if stayer == 0 {
        [stayer_strategy, deviator_strategy]
    } else {
        [deviator_strategy, stayer_strategy]
    }
}

/// Maximal payoff gain the deviator can realize by unilaterally leaving an
/// equilibrium of the coalition game. Zero for p_s.
pub fn incentive(game: &Game, structure: &CoalitionStructure) -> Result<Rat, ForecastError> {
    require_two_players(game)?;
    incentive_for(game, &structure_optima(game, structure)?, 0)
}

fn incentive_for(game: &Game, optima: &[Vec<usize>], stayer: usize) -> Result<Rat, ForecastError> {
    let deviator = 1 - stayer;
    let mut best: Option<Rat> = None;
    for e in optima {
        let base = game.payoff(e, deviator);
        for reply in 0..game.num_strategies() {
            let gain = game.payoff(&profile_of(stayer, e[stayer], reply), deviator) - base;
            if best.as_ref().is_none_or(|b| gain > *b) {
                best = Some(gain);
            }
        }
    }
    Ok(best.expect("non-empty optima"))
}

/// Maximal loss the deviator can suffer when it leaves the coalition
/// structure for its greedy reply while the stayer counters, either
/// selfishly (best reply to the deviator's equilibrium strategy) or in
/// anticipation (best reply to the deviator's greedy move).
pub fn risk(game: &Game, structure: &CoalitionStructure) -> Result<Rat, ForecastError> {
    require_two_players(game)?;
    risk_for(game, &structure_optima(game, structure)?, 0)
}

fn risk_for(game: &Game, optima: &[Vec<usize>], stayer: usize) -> Result<Rat, ForecastError> {
    let deviator = 1 - stayer;
    let mut best: Option<Rat> = None;
    for e in optima {
        let base = game.payoff(e, deviator);
        for greedy in pure_best_replies(game, deviator, e[stayer]) {
            let mut counters = pure_best_replies(game, stayer, e[deviator]);
            counters.extend(pure_best_replies(game, stayer, greedy));
            counters.sort_unstable();
            counters.dedup();
            for counter in counters {
                let loss = base - game.payoff(&profile_of(stayer, counter, greedy), deviator);
                if best.as_ref().is_none_or(|b| loss > *b) {
                    best = Some(loss);
                }
            }
        }
    }
    Ok(best.expect("non-empty optima"))
}

/// tau = D / (D + R), with the convention tau = 0 when D = 0 (no incentive,
/// no deviation). Negative inputs are rejected.
pub fn abandon_probability(d: &Rat, r: &Rat) -> Result<Rat, ForecastError> {
    if d.is_negative() || r.is_negative() {
        return Err(ForecastError::NegativeInputs {
            d: d.to_string(),
            r: r.to_string(),
        });
    }
    if d.is_zero() {
        return Ok(Rat::zero());
    }
    Ok(d / (d + r))
}

/// (e_nobody, e_deviated): the infimum of the stayer's payoff when everyone
/// follows some (possibly different) equilibrium of the coalition game, and
/// when the deviator instead plays a deviation from such an equilibrium.
pub fn guaranteed_payoffs(
    game: &Game,
    structure: &CoalitionStructure,
) -> Result<(Rat, Rat), ForecastError> {
    require_two_players(game)?;
    guaranteed_for(game, &structure_optima(game, structure)?, 0)
}

fn guaranteed_for(
    game: &Game,
    optima: &[Vec<usize>],
    stayer: usize,
) -> Result<(Rat, Rat), ForecastError> {
    let deviator = 1 - stayer;
    let mut stayer_parts: Vec<usize> = optima.iter().map(|e| e[stayer]).collect();
    stayer_parts.sort_unstable();
    stayer_parts.dedup();
    let mut deviator_parts: Vec<usize> = optima.iter().map(|e| e[deviator]).collect();
    deviator_parts.sort_unstable();
    deviator_parts.dedup();

    let mut e_nobody: Option<Rat> = None;
    for &si in &stayer_parts {
        for &sj in &deviator_parts {
            let u = game.payoff(&profile_of(stayer, si, sj), stayer).clone();
            if e_nobody.as_ref().is_none_or(|b| u < *b) {
                e_nobody = Some(u);
            }
        }
    }

    // Deviations are taken from every cross-matched base of equilibrium
    // parts; the union always contains the deviator's own parts.
    let mut deviations: Vec<usize> = Vec::new();
    for &bi in &stayer_parts {
        for &bj in &deviator_parts {
            let base = profile_of(stayer, bi, bj).to_vec();
            deviations.extend(DeviationSet::new(game, base, deviator).pure_deviations());
        }
    }
    deviations.sort_unstable();
    deviations.dedup();

    let mut e_deviated: Option<Rat> = None;
    for &si in &stayer_parts {
        for &d in &deviations {
            let u = game.payoff(&profile_of(stayer, si, d), stayer).clone();
            if e_deviated.as_ref().is_none_or(|b| u < *b) {
                e_deviated = Some(u);
            }
        }
    }
    Ok((
        e_nobody.expect("non-empty optima"),
        e_deviated.expect("non-empty deviation set"),
    ))
}

/// Assembles the full forecast for a coalition structure. Symmetry makes the
/// record independent of the player it is computed for.
pub fn coalition_value(
    game: &Game,
    structure: &CoalitionStructure,
) -> Result<Forecast, ForecastError> {
    coalition_value_for_player(game, structure, 0)
}

/// Forecast computed from a specific player's standpoint; used to check the
/// player-independence invariant.
pub fn coalition_value_for_player(
    game: &Game,
    structure: &CoalitionStructure,
    stayer: usize,
) -> Result<Forecast, ForecastError> {
    require_two_players(game)?;
    let optima = structure_optima(game, structure)?;
    let incentive = incentive_for(game, &optima, stayer)?;
    let risk = risk_for(game, &optima, stayer)?;
    let tau = abandon_probability(&incentive, &risk)?;
    let (e_nobody, e_deviated) = guaranteed_for(game, &optima, stayer)?;
    let value = &e_nobody * (Rat::one() - &tau) + &e_deviated * &tau;
    Ok(Forecast {
        structure: structure.clone(),
        incentive,
        risk,
        tau,
        e_nobody,
        e_deviated,
        value,
    })
}

/// Forecasts for both canonical structures and the selected one (ties
/// resolve to p_s, the Nash-coincidence regime).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestForecast {
    pub selfish: Forecast,
    pub cooperative: Forecast,
}

impl BestForecast {
    pub fn cooperative_selected(&self) -> bool {
        self.cooperative.value > self.selfish.value
    }

    pub fn selected(&self) -> &Forecast {
        if self.cooperative_selected() {
            &self.cooperative
        } else {
            &self.selfish
        }
    }

    /// The floor v(p-bar) that defines the induced game.
    pub fn floor(&self) -> &Rat {
        &self.selected().value
    }
}

/// Computes v(p_s) and v(p_c) and picks the structure with the larger value.
pub fn best_forecast(game: &Game) -> Result<BestForecast, ForecastError> {
    let selfish = coalition_value(game, &CoalitionStructure::singletons(2))?;
    let cooperative = coalition_value(game, &CoalitionStructure::grand(2))?;
    Ok(BestForecast { selfish, cooperative })
}

/// N-player public goods forecast under opponent-independence: the
/// per-opponent deviation probability comes from the pairwise incentive
/// y(1-alpha) and the generalized risk y(alpha*N - 1) (the loss from
/// all-cooperate down to all-defect, which specializes to the 2-player value
/// y(2*alpha - 1)); the value sums the guarantees over defector counts with
/// binomial weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicGoodsForecast {
    pub players: usize,
    pub endowment: Rat,
    pub alpha: Rat,
    pub pairwise_incentive: Rat,
    pub pairwise_risk: Rat,
    pub per_opponent_tau: Rat,
    /// Guaranteed payoff when exactly m opponents defect: alpha*(N-m)*y.
    pub e_by_defectors: Vec<Rat>,
    /// v(p_c), the binomially weighted sum of the guarantees.
    pub value: Rat,
    /// v(p_s) = y (everyone keeps the endowment at the selfish equilibrium).
    pub selfish_value: Rat,
}

/// The spec's n_player_value: the cooperative value of the N-player public
/// goods game, evaluated by binomial summation.
pub fn public_goods_value(
    players: usize,
    endowment: &Rat,
    alpha: &Rat,
) -> Result<PublicGoodsForecast, ForecastError> {
    if players < 2 {
        return Err(ForecastError::PublicGoodsDomain("N >= 2"));
    }
    if !endowment.is_positive() {
        return Err(ForecastError::PublicGoodsDomain("y > 0"));
    }
    let n = rat_i(players as i64);
    if *alpha <= Rat::one() / &n || *alpha >= Rat::one() {
        return Err(ForecastError::PublicGoodsDomain("alpha in (1/N, 1)"));
    }
    let d = endowment * (Rat::one() - alpha);
    let r = endowment * (alpha * &n - Rat::one());
    let tau = abandon_probability(&d, &r)?;
    let stay = Rat::one() - &tau;
    let opponents = players - 1;
    let e_by_defectors: Vec<Rat> = (0..=opponents)
        .map(|m| alpha * rat_i((players - m) as i64) * endowment)
        .collect();
    let mut value = Rat::zero();
    let mut binom = Rat::one();
    for (m, e) in e_by_defectors.iter().enumerate() {
        // binom = C(opponents, m)
        let weight = &binom
            * num::pow::pow(tau.clone(), m)
            * num::pow::pow(stay.clone(), opponents - m);
        value += e * weight;
        if m < opponents {
            binom = binom * rat_i((opponents - m) as i64) / rat_i((m + 1) as i64);
        }
    }
    Ok(PublicGoodsForecast {
        players,
        endowment: endowment.clone(),
        alpha: alpha.clone(),
        pairwise_incentive: d,
        pairwise_risk: r,
        per_opponent_tau: tau,
        e_by_defectors,
        value,
        selfish_value: endowment.clone(),
    })
}

impl PublicGoodsForecast {
    /// 2-player specialization as a plain Forecast record.
    pub fn to_forecast(&self) -> Option<Forecast> {
        if self.players != 2 {
            return None;
        }
        Some(Forecast {
            structure: CoalitionStructure::grand(2),
            incentive: self.pairwise_incentive.clone(),
            risk: self.pairwise_risk.clone(),
            tau: self.per_opponent_tau.clone(),
            e_nobody: self.e_by_defectors[0].clone(),
            e_deviated: self.e_by_defectors[1].clone(),
            value: self.value.clone(),
        })
    }
}
