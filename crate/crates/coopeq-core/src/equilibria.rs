//! Nash machinery: selfish equilibria of the base game and the optimum set
//! of the coalition game.

use num::Zero;
use thiserror::Error;

use crate::game::{Game, GameError, MixedStrategy};
use crate::rational::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquilibriaError {
    #[error("partition blocks must be disjoint and cover all {0} players")]
    InvalidPartition(usize),
    #[error("operation requires a 2-player game, got {0} players")]
    TwoPlayersOnly(usize),
    #[error("operation requires 2 strategies per player, got {0}")]
    TwoStrategiesOnly(usize),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Partition of the player set into coalitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionStructure {
    blocks: Vec<Vec<usize>>,
    num_players: usize,
}

impl CoalitionStructure {
    pub fn new(blocks: Vec<Vec<usize>>, num_players: usize) -> Result<Self, EquilibriaError> {
        let mut seen = vec![false; num_players];
        for block in &blocks {
            for &p in block {
                if p >= num_players || seen[p] {
                    return Err(EquilibriaError::InvalidPartition(num_players));
                }
                seen[p] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(EquilibriaError::InvalidPartition(num_players));
        }
        Ok(CoalitionStructure { blocks, num_players })
    }

    /// p_s: every player in their own coalition.
    pub fn singletons(num_players: usize) -> Self {
        CoalitionStructure {
            blocks: (0..num_players).map(|p| vec![p]).collect(),
            num_players,
        }
    }

    /// p_c: the grand coalition.
    pub fn grand(num_players: usize) -> Self {
        CoalitionStructure {
            blocks: vec![(0..num_players).collect()],
            num_players,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_players(&self) -> usize {
        self.num_players
    }

    pub fn is_selfish(&self) -> bool {
        self.blocks.len() == self.num_players
    }

    pub fn is_grand(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn name(&self) -> &'static str {
        if self.is_grand() && self.num_players > 1 {
            "p_c"
        } else if self.is_selfish() {
            "p_s"
        } else {
            "p"
        }
    }
}

/// A game paired with a coalition structure; each coalition acts as a single
/// player whose payoff is the sum of its members' payoffs.
#[derive(Debug, Clone)]
pub struct CoalitionGame<'a> {
    pub game: &'a Game,
    pub structure: CoalitionStructure,
}

impl<'a> CoalitionGame<'a> {
    pub fn new(game: &'a Game, structure: CoalitionStructure) -> Result<Self, EquilibriaError> {
        if structure.num_players() != game.num_players() {
            return Err(EquilibriaError::InvalidPartition(game.num_players()));
        }
        Ok(CoalitionGame { game, structure })
    }

    /// Sum of the block members' payoffs at a pure profile.
    pub fn coalition_payoff(&self, block: usize, profile: &[usize]) -> Rat {
        self.structure.blocks()[block]
            .iter()
            .map(|&p| self.game.payoff(profile, p))
            .sum()
    }
}

/// All pure profiles at which no unilateral pure deviation strictly improves
/// the deviating player.
pub fn pure_nash(game: &Game) -> Vec<Vec<usize>> {
    if game.num_players() == 2 {
        return pure_nash_2p(game);
    }
    let n = game.num_strategies();
    game.pure_profiles()
        .filter(|profile| {
            (0..game.num_players()).all(|player| {
                let current = game.payoff(profile, player);
                (0..n).all(|alt| {
                    let mut dev = profile.clone();
                    dev[player] = alt;
                    game.payoff(&dev, player) <= current
                })
            })
        })
        .collect()
}

/// 2-player fast path via best-response value tables.
fn pure_nash_2p(game: &Game) -> Vec<Vec<usize>> {
    let n = game.num_strategies();
    let col_best: Vec<&Rat> = (0..n)
        .map(|b| (0..n).map(|a| game.payoff(&[a, b], 0)).max().unwrap())
        .collect();
    let row_best: Vec<&Rat> = (0..n)
        .map(|a| (0..n).map(|b| game.payoff(&[a, b], 1)).max().unwrap())
        .collect();
    let mut out = Vec::new();
    for (a, row) in row_best.iter().enumerate() {
        for (b, col) in col_best.iter().enumerate() {
            if game.payoff(&[a, b], 0) == *col && game.payoff(&[a, b], 1) == *row {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

/// Pure profiles maximizing the total payoff (the grand coalition's
/// equilibria).
pub fn joint_optima(game: &Game) -> Vec<Vec<usize>> {
    let mut best: Option<Rat> = None;
    let mut arg: Vec<Vec<usize>> = Vec::new();
    for profile in game.pure_profiles() {
        let sum = game.payoff_sum(&profile);
        match &best {
            Some(b) if sum < *b => {}
            Some(b) if sum == *b => arg.push(profile),
            _ => {
                best = Some(sum);
                arg = vec![profile];
            }
        }
    }
    arg
}

/// Equilibrium set of the coalition game over pure profiles: the joint
/// optima for the grand coalition, the selfish pure Nash set for singletons.
pub fn coalition_optima(cg: &CoalitionGame) -> Result<Vec<Vec<usize>>, EquilibriaError> {
    if cg.structure.is_grand() && cg.game.num_players() > 1 {
        Ok(joint_optima(cg.game))
    } else if cg.structure.is_selfish() {
        Ok(pure_nash(cg.game))
    } else {
        Err(EquilibriaError::InvalidPartition(cg.game.num_players()))
    }
}

/// Best payoff `player` can reach against fixed opposing mixtures, with the
/// full set of maximizing pure strategies.
pub fn best_response_value(
    game: &Game,
    player: usize,
    others: &[MixedStrategy],
) -> Result<(Rat, Vec<usize>), EquilibriaError> {
    if player >= game.num_players() {
        return Err(GameError::PlayerOutOfRange {
            player,
            num_players: game.num_players(),
        }
        .into());
    }
    let mut best: Option<Rat> = None;
    let mut arg: Vec<usize> = Vec::new();
    for own in 0..game.num_strategies() {
        let value = game.pure_vs_mixed(player, own, others);
        match &best {
            Some(b) if value < *b => {}
            Some(b) if value == *b => arg.push(own),
            _ => {
                best = Some(value);
                arg = vec![own];
            }
        }
    }
    Ok((best.expect("non-empty strategy set"), arg))
}

/// Pure best replies of `player` to a pure opposing strategy in a 2-player
/// game.
pub fn pure_best_replies(game: &Game, player: usize, opponent_strategy: usize) -> Vec<usize> {
    let n = game.num_strategies();
    let payoff = |own: usize| -> &Rat {
        let profile = if player == 0 {
            [own, opponent_strategy]
        } else {
            [opponent_strategy, own]
        };
        game.payoff(&profile, player)
    };
    let best = (0..n).map(payoff).max().expect("non-empty strategy set");
    (0..n).filter(|&own| payoff(own) == best).collect()
}

/// Symmetric mixed equilibrium of a symmetric 2x2 game: the cooperate-weight
/// `q` making the opponent indifferent between its two pure strategies.
/// `None` when no interior indifference point exists (e.g. a dominant
/// strategy, as in the prisoner's dilemma).
pub fn symmetric_mixed_nash_2x2(game: &Game) -> Result<Option<MixedStrategy>, EquilibriaError> {
    if game.num_players() != 2 {
        return Err(EquilibriaError::TwoPlayersOnly(game.num_players()));
    }
    if game.num_strategies() != 2 {
        return Err(EquilibriaError::TwoStrategiesOnly(game.num_strategies()));
    }
    // g(q) = u(C vs q) - u(D vs q), affine in q; interior root needs a strict
    // sign change between q=0 and q=1.
    let r = game.payoff(&[0, 0], 0);
    let s = game.payoff(&[0, 1], 0);
    let t = game.payoff(&[1, 0], 0);
    let p = game.payoff(&[1, 1], 0);
    let g0 = s - p; // g at q = 0
    let g1 = r - t; // g at q = 1
    if (g0.is_zero() || g1.is_zero()) || (g0 > Rat::zero()) == (g1 > Rat::zero()) {
        return Ok(None);
    }
    let q = &g0 / (&g0 - &g1);
    Ok(Some(MixedStrategy::binary(q).expect("root lies in (0,1)")))
}
