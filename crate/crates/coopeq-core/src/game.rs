//! Symmetric normal-form games, mixed strategies, and expected payoffs.

use itertools::Itertools;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("strategy set must be non-empty")]
    EmptyStrategySet,
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("payoff table has {got} entries, expected {expected}")]
    PayoffTableShape { expected: usize, got: usize },
    #[error("player index {player} out of range for {num_players} players")]
    PlayerOutOfRange { player: usize, num_players: usize },
    #[error("strategy index {strategy} out of range for {num_strategies} strategies")]
    StrategyOutOfRange { strategy: usize, num_strategies: usize },
    #[error("profile has {got} strategies, expected {expected}")]
    ProfileLength { expected: usize, got: usize },
    #[error("mixed strategy has {got} weights, expected {expected}")]
    MixtureLength { expected: usize, got: usize },
    #[error("mixture weight {index} is negative")]
    NegativeWeight { index: usize },
    #[error("mixture weights sum to {sum}, expected 1")]
    WeightSumNotOne { sum: String },
}

/// Probability vector over the pure strategies of a game.
///
/// Weights are exact rationals; the constructor requires them non-negative
/// and summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    weights: Vec<Rat>,
}

impl MixedStrategy {
    pub fn new(weights: Vec<Rat>) -> Result<Self, GameError> {
        for (i, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(GameError::NegativeWeight { index: i });
            }
        }
        let sum: Rat = weights.iter().sum();
        if !sum.is_one() {
            return Err(GameError::WeightSumNotOne { sum: sum.to_string() });
        }
        Ok(MixedStrategy { weights })
    }

    /// Degenerate mixture playing `strategy` with probability 1.
    pub fn pure(strategy: usize, num_strategies: usize) -> Self {
        let mut weights = vec![Rat::zero(); num_strategies];
        weights[strategy] = Rat::one();
        MixedStrategy { weights }
    }

    /// Two-strategy mixture with the given weight on strategy 0.
    pub fn binary(weight_on_first: Rat) -> Result<Self, GameError> {
        let rest = Rat::one() - &weight_on_first;
        MixedStrategy::new(vec![weight_on_first, rest])
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, strategy: usize) -> &Rat {
        &self.weights[strategy]
    }

    pub fn num_strategies(&self) -> usize {
        self.weights.len()
    }

    /// Strategies with non-zero weight.
    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// One mixed strategy per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    strategies: Vec<MixedStrategy>,
}

impl Profile {
    pub fn new(strategies: Vec<MixedStrategy>) -> Self {
        Profile { strategies }
    }

    pub fn pure(indices: &[usize], num_strategies: usize) -> Self {
        Profile {
            strategies: indices
                .iter()
                .map(|&s| MixedStrategy::pure(s, num_strategies))
                .collect(),
        }
    }

    pub fn player(&self, i: usize) -> &MixedStrategy {
        &self.strategies[i]
    }

    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }
}

/// Witness that Eq-style player symmetry fails: a permutation of the players
/// and a pure profile on which the permuted payoff differs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryViolation {
    pub permutation: Vec<usize>,
    pub profile: Vec<usize>,
    pub player: usize,
}

/// A symmetric normal-form game: `num_players` players sharing one ordered
/// strategy set, with a total payoff function stored as a dense table over
/// pure profiles.
#[derive(Debug, Clone)]
pub struct Game {
    num_players: usize,
    strategies: Vec<String>,
    /// Indexed by pure profile (row-major in strategy indices), then player.
    payoffs: Vec<Vec<Rat>>,
}

impl Game {
    /// Builds a game from a payoff function over pure strategy profiles.
    pub fn from_fn<F>(
        num_players: usize,
        strategies: Vec<String>,
        payoff: F,
    ) -> Result<Self, GameError>
    where
        F: Fn(&[usize]) -> Vec<Rat>,
    {
        if num_players == 0 {
            return Err(GameError::NoPlayers);
        }
        if strategies.is_empty() {
            return Err(GameError::EmptyStrategySet);
        }
        let n = strategies.len();
        let mut payoffs = Vec::with_capacity(n.pow(num_players as u32));
        for profile in std::iter::repeat_n(0..n, num_players).multi_cartesian_product() {
            let p = payoff(&profile);
            if p.len() != num_players {
                return Err(GameError::PayoffTableShape {
                    expected: num_players,
                    got: p.len(),
                });
            }
            payoffs.push(p);
        }
        Ok(Game {
            num_players,
            strategies,
            payoffs,
        })
    }

    /// Two-player symmetric game from the row player's payoff matrix:
    /// `u_1(i, j) = matrix[i][j]` and `u_2(i, j) = matrix[j][i]`.
    pub fn symmetric_2p(strategies: Vec<String>, matrix: Vec<Vec<Rat>>) -> Result<Self, GameError> {
        let n = strategies.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(GameError::PayoffTableShape {
                expected: n * n,
                got: matrix.iter().map(|r| r.len()).sum(),
            });
        }
        Game::from_fn(2, strategies, |p| {
            vec![matrix[p[0]][p[1]].clone(), matrix[p[1]][p[0]].clone()]
        })
    }

    pub fn num_players(&self) -> usize {
        self.num_players
    }

    pub fn num_strategies(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategy_labels(&self) -> &[String] {
        &self.strategies
    }

    fn profile_index(&self, profile: &[usize]) -> usize {
        let n = self.strategies.len();
        profile.iter().fold(0, |acc, &s| acc * n + s)
    }

    /// Payoff to `player` at a pure profile.
    pub fn payoff(&self, profile: &[usize], player: usize) -> &Rat {
        &self.payoffs[self.profile_index(profile)][player]
    }

    /// All pure profiles, row-major.
    pub fn pure_profiles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        std::iter::repeat_n(0..self.strategies.len(), self.num_players)
            .multi_cartesian_product()
    }

    /// Sum of all players' payoffs at a pure profile.
    pub fn payoff_sum(&self, profile: &[usize]) -> Rat {
        let row = &self.payoffs[self.profile_index(profile)];
        row.iter().sum()
    }

    /// Multilinear expected payoff for `player` under a mixed profile.
    pub fn expected_payoff(&self, profile: &Profile, player: usize) -> Result<Rat, GameError> {
        if player >= self.num_players {
            return Err(GameError::PlayerOutOfRange {
                player,
                num_players: self.num_players,
            });
        }
        if profile.len() != self.num_players {
            return Err(GameError::ProfileLength {
                expected: self.num_players,
                got: profile.len(),
            });
        }
        for mix in 0..self.num_players {
            if profile.player(mix).num_strategies() != self.strategies.len() {
                return Err(GameError::MixtureLength {
                    expected: self.strategies.len(),
                    got: profile.player(mix).num_strategies(),
                });
            }
        }
        // Iterate over the support product only; mixtures are usually sparse.
        let supports: Vec<Vec<usize>> = (0..self.num_players)
            .map(|i| profile.player(i).support())
            .collect();
        let mut total = Rat::zero();
        for pure in supports.iter().cloned().multi_cartesian_product() {
            let mut prob = Rat::one();
            for (i, &s) in pure.iter().enumerate() {
                prob *= profile.player(i).weight(s);
            }
            total += prob * self.payoff(&pure, player);
        }
        Ok(total)
    }

    /// Expected payoff for `player` when it plays a pure strategy against
    /// fixed mixtures for everyone else (`others[i]` is player i's mixture,
    /// ignored at index `player`).
    pub fn pure_vs_mixed(&self, player: usize, own: usize, others: &[MixedStrategy]) -> Rat {
        let mut profile: Vec<MixedStrategy> = others.to_vec();
        profile[player] = MixedStrategy::pure(own, self.strategies.len());
        self.expected_payoff(&Profile::new(profile), player)
            .expect("internal profile is well-formed")
    }

    /// Checks player symmetry: for every permutation pi of the players and
    /// every pure profile, `u_i(s) == u_{pi(i)}(s o pi^-1)`. Returns the
    /// first violation found.
    pub fn verify_symmetry(&self) -> Result<(), SymmetryViolation> {
        let players: Vec<usize> = (0..self.num_players).collect();
        for perm in players.iter().copied().permutations(self.num_players) {
            for profile in self.pure_profiles() {
                // permuted[j] = strategy of the player that pi maps to slot j
                let mut permuted = vec![0usize; self.num_players];
                for (i, &target) in perm.iter().enumerate() {
                    permuted[target] = profile[i];
                }
                for i in 0..self.num_players {
                    if self.payoff(&profile, i) != self.payoff(&permuted, perm[i]) {
                        return Err(SymmetryViolation {
                            permutation: perm.clone(),
                            profile,
                            player: i,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn pd_informal() -> Game {
        // T=0.20 R=0.15 P=0.05 S=0
        Game::symmetric_2p(
            vec!["C".into(), "D".into()],
            vec![
                vec![rat(3, 20), rat_i(0)],
                vec![rat(1, 5), rat(1, 20)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn payoff_lookup_matches_matrix() {
        let g = pd_informal();
        assert_eq!(*g.payoff(&[0, 0], 0), rat(3, 20));
        assert_eq!(*g.payoff(&[0, 0], 1), rat(3, 20));
        assert_eq!(*g.payoff(&[1, 0], 0), rat(1, 5));
        assert_eq!(*g.payoff(&[1, 0], 1), rat_i(0));
        assert_eq!(*g.payoff(&[0, 1], 0), rat_i(0));
        assert_eq!(*g.payoff(&[0, 1], 1), rat(1, 5));
    }

    #[test]
    fn expected_payoff_half_half_is_a_tenth() {
        let g = pd_informal();
        let half = MixedStrategy::binary(rat(1, 2)).unwrap();
        let profile = Profile::new(vec![half.clone(), half]);
        assert_eq!(g.expected_payoff(&profile, 0).unwrap(), rat(1, 10));
        assert_eq!(g.expected_payoff(&profile, 1).unwrap(), rat(1, 10));
    }

    #[test]
    fn pure_profile_is_degenerate_expectation() {
        let g = pd_informal();
        let profile = Profile::pure(&[1, 0], 2);
        assert_eq!(g.expected_payoff(&profile, 0).unwrap(), rat(1, 5));
        assert_eq!(g.expected_payoff(&profile, 1).unwrap(), rat_i(0));
    }

    #[test]
    fn parametric_pd_diagonal_value_at_the_interior_mixture() {
        // u(l, l) = k at l = (k-1)/k; here k = 3, l = 2/3
        let g = crate::family::GameFamily::ParametricPd { k: rat_i(3) }
            .instantiate()
            .unwrap();
        let mix = MixedStrategy::binary(rat(2, 3)).unwrap();
        let profile = Profile::new(vec![mix.clone(), mix]);
        assert_eq!(g.expected_payoff(&profile, 0).unwrap(), rat_i(3));
    }

    #[test]
    fn expected_payoff_is_affine_in_each_mixture() {
        let g = pd_informal();
        let opponent = MixedStrategy::binary(rat(2, 7)).unwrap();
        let at = |w: Rat| {
            let p = Profile::new(vec![MixedStrategy::binary(w).unwrap(), opponent.clone()]);
            g.expected_payoff(&p, 0).unwrap()
        };
        let (a, b) = (rat(1, 5), rat(4, 5));
        let mid = (&a + &b) / rat_i(2);
        assert_eq!(at(mid), (at(a) + at(b)) / rat_i(2));
    }

    #[test]
    fn symmetry_passes_on_pd() {
        assert!(pd_informal().verify_symmetry().is_ok());
    }

    #[test]
    fn symmetry_witness_on_asymmetric_game() {
        // u(C,D) = (1,0) but u(D,C) = (0,2): transposition fails at (C,D)
        let g = Game::from_fn(2, vec!["C".into(), "D".into()], |p| match (p[0], p[1]) {
            (0, 1) => vec![rat_i(1), rat_i(0)],
            (1, 0) => vec![rat_i(0), rat_i(2)],
            _ => vec![rat_i(0), rat_i(0)],
        })
        .unwrap();
        let violation = g.verify_symmetry().unwrap_err();
        assert_eq!(violation.permutation, vec![1, 0]);
        assert_eq!(violation.profile, vec![0, 1]);
    }

    #[test]
    fn mixture_validation() {
        assert!(MixedStrategy::new(vec![rat(1, 2), rat(1, 2)]).is_ok());
        assert!(matches!(
            MixedStrategy::new(vec![rat(1, 2), rat(1, 3)]),
            Err(GameError::WeightSumNotOne { .. })
        ));
        assert!(matches!(
            MixedStrategy::new(vec![rat(3, 2), rat(-1, 2)]),
            Err(GameError::NegativeWeight { index: 1 })
        ));
    }
}
