//! Parametric game families and their canonical instantiations.

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::game::{Game, GameError};
use crate::rational::{rat_i, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}: invariant violated: {condition}")]
    InvariantViolated {
        family: &'static str,
        condition: &'static str,
    },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Tagged parametric description of the supported game families.
///
/// Conventions: in every two-strategy family, strategy index 0 is the
/// cooperative action and index 1 the defecting one. Traveler strategies are
/// the integer claims `lo..=hi` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameFamily {
    /// Prisoner's dilemma with payoffs T > R > P > S.
    Pd { t: Rat, r: Rat, p: Rat, s: Rat },
    /// Prisoner's dilemma with T = k+2, R = k+1, P = 1, S = 0.
    ParametricPd { k: Rat },
    /// Traveler's dilemma: claims in `lo..=hi`, bonus/penalty `bonus >= 2`.
    Traveler { bonus: Rat, lo: i64, hi: i64 },
    /// Public goods game with constant marginal return `alpha` in (1/N, 1);
    /// instantiated as the binary contribute-all / withhold game.
    PublicGoods { players: usize, endowment: Rat, alpha: Rat },
    /// Tragedy of the commons: per-sheep utility `h`, total damage `k0`,
    /// with h < k0 < h*N and per-farmer damage k = k0/N.
    Commons { players: usize, utility: Rat, damage: Rat },
    /// Chicken with payoffs T > R > S > P.
    Chicken { t: Rat, r: Rat, s: Rat, p: Rat },
}

impl GameFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            GameFamily::Pd { .. } => "pd",
            GameFamily::ParametricPd { .. } => "parametric-pd",
            GameFamily::Traveler { .. } => "traveler",
            GameFamily::PublicGoods { .. } => "public-goods",
            GameFamily::Commons { .. } => "commons",
            GameFamily::Chicken { .. } => "chicken",
        }
    }

    /// Checks the family invariants, naming the violated condition.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let fail = |family, condition| Err(FamilyError::InvariantViolated { family, condition });
        match self {
            GameFamily::Pd { t, r, p, s } => {
                if t <= r {
                    return fail("pd", "T > R");
                }
                if r <= p {
                    return fail("pd", "R > P");
                }
                if p <= s {
                    return fail("pd", "P > S");
                }
                Ok(())
            }
            GameFamily::ParametricPd { k } => {
                if k.is_negative() {
                    return fail("parametric-pd", "k >= 0");
                }
                Ok(())
            }
            GameFamily::Traveler { bonus, lo, hi } => {
                if *bonus < rat_i(2) {
                    return fail("traveler", "b >= 2");
                }
                if lo >= hi {
                    return fail("traveler", "lo < hi");
                }
                if *lo < 0 {
                    return fail("traveler", "lo >= 0");
                }
                Ok(())
            }
            GameFamily::PublicGoods { players, endowment, alpha } => {
                if *players < 2 {
                    return fail("public-goods", "N >= 2");
                }
                if !endowment.is_positive() {
                    return fail("public-goods", "y > 0");
                }
                let inv_n = Rat::new(1.into(), (*players as i64).into());
                if *alpha <= inv_n {
                    return fail("public-goods", "alpha > 1/N");
                }
                if *alpha >= rat_i(1) {
                    return fail("public-goods", "alpha < 1");
                }
                Ok(())
            }
            GameFamily::Commons { players, utility, damage } => {
                if *players < 2 {
                    return fail("commons", "N >= 2");
                }
                if !utility.is_positive() {
                    return fail("commons", "h > 0");
                }
                if damage <= utility {
                    return fail("commons", "h < k0");
                }
                if *damage >= utility * rat_i(*players as i64) {
                    return fail("commons", "k0 < h*N");
                }
                Ok(())
            }
            GameFamily::Chicken { t, r, s, p } => {
                if t <= r {
                    return fail("chicken", "T > R");
                }
                if r <= s {
                    return fail("chicken", "R > S");
                }
                if s <= p {
                    return fail("chicken", "S > P");
                }
                Ok(())
            }
        }
    }

    /// Builds the concrete game for a validated family.
    pub fn instantiate(&self) -> Result<Game, FamilyError> {
        self.validate()?;
        let game = match self {
            GameFamily::Pd { t, r, p, s } | GameFamily::Chicken { t, r, s, p } => {
                symmetric_2x2(t, r, p, s)?
            }
            GameFamily::ParametricPd { k } => {
                let (t, r, p, s) = parametric_pd_payoffs(k);
                symmetric_2x2(&t, &r, &p, &s)?
            }
            GameFamily::Traveler { bonus, lo, hi } => traveler_game(bonus, *lo, *hi)?,
            GameFamily::PublicGoods { players, endowment, alpha } => {
                public_goods_game(*players, endowment, alpha)?
            }
            GameFamily::Commons { players, utility, damage } => {
                commons_game(*players, utility, damage)?
            }
        };
        Ok(game)
    }
}

/// (T, R, P, S) for the parametric prisoner's dilemma.
pub fn parametric_pd_payoffs(k: &Rat) -> (Rat, Rat, Rat, Rat) {
    (k + rat_i(2), k + rat_i(1), rat_i(1), Rat::zero())
}

/// 2x2 symmetric game with u(C,C)=R, u(C,D)=S, u(D,C)=T, u(D,D)=P.
fn symmetric_2x2(t: &Rat, r: &Rat, p: &Rat, s: &Rat) -> Result<Game, GameError> {
    Game::symmetric_2p(
        vec!["C".into(), "D".into()],
        vec![vec![r.clone(), s.clone()], vec![t.clone(), p.clone()]],
    )
}

/// Claims game: the lower claimant `m` is reimbursed `m + bonus`, the higher
/// one `m - bonus`, ties pay the common claim to both.
fn traveler_game(bonus: &Rat, lo: i64, hi: i64) -> Result<Game, GameError> {
    let labels: Vec<String> = (lo..=hi).map(|c| c.to_string()).collect();
    Game::from_fn(2, labels, |profile| {
        let a = lo + profile[0] as i64;
        let b = lo + profile[1] as i64;
        if a == b {
            vec![rat_i(a), rat_i(b)]
        } else if a < b {
            vec![rat_i(a) + bonus, rat_i(a) - bonus]
        } else {
            vec![rat_i(b) - bonus, rat_i(b) + bonus]
        }
    })
}

/// Binary public goods game: each player contributes the full endowment
/// ("contribute", index 0) or nothing ("withhold", index 1);
/// u_i = y - x_i + alpha * sum(x).
fn public_goods_game(players: usize, endowment: &Rat, alpha: &Rat) -> Result<Game, GameError> {
    let labels = vec!["contribute".into(), "withhold".into()];
    Game::from_fn(players, labels, |profile| {
        let contributions: Vec<Rat> = profile
            .iter()
            .map(|&s| if s == 0 { endowment.clone() } else { Rat::zero() })
            .collect();
        let pot: Rat = contributions.iter().sum();
        contributions
            .iter()
            .map(|x| endowment - x + alpha * &pot)
            .collect()
    })
}

/// Binary commons game: keep the sheep ("keep", index 1) or not
/// ("not_keep", index 0); u_i = h*x_i - k * sum(x) with k = k0/N.
fn commons_game(players: usize, utility: &Rat, damage: &Rat) -> Result<Game, GameError> {
    let k = damage / rat_i(players as i64);
    let labels = vec!["not_keep".into(), "keep".into()];
    Game::from_fn(players, labels, |profile| {
        let kept: Vec<Rat> = profile
            .iter()
            .map(|&s| if s == 1 { Rat::one() } else { Rat::zero() })
            .collect();
        let total: Rat = kept.iter().sum();
        kept.iter().map(|x| utility * x - &k * &total).collect()
    })
}

/// Payoffs (T, R, P, S) of the N=2 commons game viewed as a dilemma on
/// (not_keep, keep); the effective cost is alpha = k/h.
pub fn commons_2x2_payoffs(utility: &Rat, damage: &Rat) -> (Rat, Rat, Rat, Rat) {
    let k = damage / rat_i(2);
    (
        utility - &k,                    // T: keep while the other refrains
        Rat::zero(),                     // R: nobody keeps
        utility - rat_i(2) * &k,         // P: both keep
        -k,                              // S: refrain while the other keeps
    )
}
