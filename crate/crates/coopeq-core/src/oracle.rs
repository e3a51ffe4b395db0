//! Brute-force verification of the forecast pipeline on small instances.
//!
//! Everything here re-derives its answers from first principles: equilibria
//! by exhaustive deviation checks, suprema and infima by scanning grid
//! mixtures (two-strategy games) or pure strategies plus two-point supports
//! (larger strategy sets). The loops are deliberately kept separate from the
//! closed-form paths they cross-check.

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::equilibria::CoalitionStructure;
use crate::forecast::abandon_probability;
use crate::game::{Game, MixedStrategy, Profile};
use crate::rational::{rat_i, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("grid step must lie strictly between 0 and 1")]
    BadStep,
    #[error("oracle requires a 2-player game, got {0} players")]
    TwoPlayersOnly(usize),
    #[error("coalition structure must be p_s or p_c")]
    UnsupportedStructure,
    #[error("game has no selfish pure equilibrium")]
    NoSelfishEquilibrium,
    #[error("no grid point on the diagonal reaches the floor")]
    EmptyFeasibleDiagonal,
}

/// Mixture grid: all weights that are multiples of the step, with the pure
/// strategies always included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    step: Rat,
}

impl Grid {
    pub fn new(step: Rat) -> Result<Self, OracleError> {
        if step <= Rat::zero() || step >= Rat::one() {
            return Err(OracleError::BadStep);
        }
        Ok(Grid { step })
    }

    /// Grid with step 1/denominator.
    pub fn with_denominator(denominator: u64) -> Result<Self, OracleError> {
        Self::new(Rat::new(1.into(), denominator.into()))
    }

    pub fn step(&self) -> &Rat {
        &self.step
    }

    /// Weights 0, s, 2s, ... and finally 1.
    pub fn points(&self) -> Vec<Rat> {
        let mut points = Vec::new();
        let mut w = Rat::zero();
        while w < Rat::one() {
            points.push(w.clone());
            w += &self.step;
        }
        points.push(Rat::one());
        points
    }
}

/// Which reading of the risk counter-set the oracle applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiskMode {
    /// The forecast module's reading: the stayer best-replies either to the
    /// deviator's equilibrium strategy or to its greedy move.
    BestReply,
    /// The unrestricted reading: the stayer ranges over its full deviation
    /// sets from both reference profiles. Yields larger risks on the
    /// traveler's dilemma; kept for documenting the gap.
    AllDeviations,
}

fn require_two_players(game: &Game) -> Result<(), OracleError> {
    if game.num_players() != 2 {
        return Err(OracleError::TwoPlayersOnly(game.num_players()));
    }
    Ok(())
}

/// Pure Nash profiles by exhaustive unilateral-deviation checks.
fn scan_pure_nash(game: &Game) -> Vec<[usize; 2]> {
    let n = game.num_strategies();
    let mut found = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let u0 = game.payoff(&[a, b], 0);
            let u1 = game.payoff(&[a, b], 1);
            let stable0 = (0..n).all(|alt| game.payoff(&[alt, b], 0) <= u0);
            let stable1 = (0..n).all(|alt| game.payoff(&[a, alt], 1) <= u1);
            if stable0 && stable1 {
                found.push([a, b]);
            }
        }
    }
    found
}

/// Pure profiles maximizing the payoff sum, by full scan.
fn scan_joint_optima(game: &Game) -> Vec<[usize; 2]> {
    let n = game.num_strategies();
    let mut best: Option<Rat> = None;
    let mut arg = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let sum = game.payoff(&[a, b], 0) + game.payoff(&[a, b], 1);
            match &best {
                Some(v) if sum < *v => {}
                Some(v) if sum == *v => arg.push([a, b]),
                _ => {
                    best = Some(sum);
                    arg = vec![[a, b]];
                }
            }
        }
    }
    arg
}

fn scan_optima(game: &Game, structure: &CoalitionStructure) -> Result<Vec<[usize; 2]>, OracleError> {
    if structure.is_grand() && game.num_players() > 1 {
        Ok(scan_joint_optima(game))
    } else if structure.is_selfish() {
        let nash = scan_pure_nash(game);
        if nash.is_empty() {
            return Err(OracleError::NoSelfishEquilibrium);
        }
        Ok(nash)
    } else {
        Err(OracleError::UnsupportedStructure)
    }
}

/// A deviator-side mixture the oracle considers: pure, or a two-point
/// support with a grid weight.
#[derive(Debug, Clone)]
struct ScanMixture {
    /// (strategy, weight) pairs; weights sum to 1.
    support: Vec<(usize, Rat)>,
}

impl ScanMixture {
    fn pure(s: usize) -> Self {
        ScanMixture { support: vec![(s, Rat::one())] }
    }

    fn pair(s: usize, t: usize, weight_on_t: Rat) -> Self {
        ScanMixture {
            support: vec![(s, Rat::one() - &weight_on_t), (t, weight_on_t)],
        }
    }

    /// Expected payoff to `player` when `mover` plays this mixture and the
    /// other player plays `fixed` pure.
    fn payoff_against(&self, game: &Game, mover: usize, fixed: usize, player: usize) -> Rat {
        self.support
            .iter()
            .map(|(s, w)| {
                let profile = if mover == 0 { [*s, fixed] } else { [fixed, *s] };
                w * game.payoff(&profile, player)
            })
            .sum()
    }
}

/// All mixtures the oracle scans for one player: the grid over two-strategy
/// games, pure strategies plus grid-weighted two-point supports otherwise.
fn scan_mixtures(game: &Game, grid: &Grid) -> Vec<ScanMixture> {
    let n = game.num_strategies();
    let mut out = Vec::new();
    if n == 2 {
        for w in grid.points() {
            out.push(ScanMixture::pair(0, 1, Rat::one() - w));
        }
        return out;
    }
    for s in 0..n {
        out.push(ScanMixture::pure(s));
    }
    for s in 0..n {
        for t in (s + 1)..n {
            for w in grid.points() {
                if w.is_zero() || w.is_one() {
                    continue;
                }
                out.push(ScanMixture::pair(s, t, w));
            }
        }
    }
    out
}

/// Max over grid replies of the deviator's gain from unilaterally leaving an
/// equilibrium of the coalition game.
pub fn oracle_incentive(
    game: &Game,
    structure: &CoalitionStructure,
    grid: &Grid,
) -> Result<Rat, OracleError> {
    require_two_players(game)?;
    let optima = scan_optima(game, structure)?;
    let replies = scan_mixtures(game, grid);
    let mut best: Option<Rat> = None;
    for e in &optima {
        let base = game.payoff(e, 1);
        for reply in &replies {
            let gain = reply.payoff_against(game, 1, e[0], 1) - base;
            if best.as_ref().is_none_or(|b| gain > *b) {
                best = Some(gain);
            }
        }
    }
    Ok(best.expect("non-empty optima"))
}

/// Grid argmax of `player`'s payoff against a fixed pure opposing strategy.
fn grid_best_replies(
    game: &Game,
    grid: &Grid,
    player: usize,
    fixed: usize,
) -> (Rat, Vec<ScanMixture>) {
    let mut best: Option<Rat> = None;
    let mut arg: Vec<ScanMixture> = Vec::new();
    for mix in scan_mixtures(game, grid) {
        let value = mix.payoff_against(game, player, fixed, player);
        match &best {
            Some(b) if value < *b => {}
            Some(b) if value == *b => arg.push(mix),
            _ => {
                best = Some(value);
                arg = vec![mix];
            }
        }
    }
    (best.expect("non-empty scan"), arg)
}

/// Max over equilibria of the deviator's loss, under either risk reading.
pub fn oracle_risk(
    game: &Game,
    structure: &CoalitionStructure,
    grid: &Grid,
    mode: RiskMode,
) -> Result<Rat, OracleError> {
    require_two_players(game)?;
    let optima = scan_optima(game, structure)?;
    let mut best: Option<Rat> = None;
    for e in &optima {
        let base = game.payoff(e, 1).clone();
        // greedy pure moves of the deviator against the stayer's part
        let greedy_value: Rat = (0..game.num_strategies())
            .map(|s| game.payoff(&[e[0], s], 1).clone())
            .max()
            .expect("non-empty strategy set");
        let greedy: Vec<usize> = (0..game.num_strategies())
            .filter(|&s| *game.payoff(&[e[0], s], 1) == greedy_value)
            .collect();
        let selfish_replies = grid_best_replies(game, grid, 0, e[1]).1;
        for &g in &greedy {
            let counters: Vec<ScanMixture> = match mode {
                RiskMode::BestReply => {
                    let mut counters = selfish_replies.clone();
                    let (_, anticipating) = grid_best_replies(game, grid, 0, g);
                    counters.extend(anticipating);
                    counters
                }
                RiskMode::AllDeviations => {
                    // stayer mixtures that are deviations from (e_0, e_1) or
                    // from (e_0, g): the payoff against the respective fixed
                    // column must not drop.
                    let own_vs_e = game.payoff(&[e[0], e[1]], 0).clone();
                    let own_vs_g = game.payoff(&[e[0], g], 0).clone();
                    scan_mixtures(game, grid)
                        .into_iter()
                        .filter(|mix| {
                            mix.payoff_against(game, 0, e[1], 0) >= own_vs_e
                                || mix.payoff_against(game, 0, g, 0) >= own_vs_g
                        })
                        .collect()
                }
            };
            for counter in counters {
                let loss = &base - counter.payoff_against(game, 0, g, 1);
                if best.as_ref().is_none_or(|b| loss > *b) {
                    best = Some(loss);
                }
            }
        }
    }
    Ok(best.expect("non-empty optima"))
}

/// Cross-matched guaranteed payoffs (e_nobody, e_deviated) by scanning the
/// equilibrium parts and grid deviations.
pub fn oracle_guaranteed(
    game: &Game,
    structure: &CoalitionStructure,
    grid: &Grid,
) -> Result<(Rat, Rat), OracleError> {
    require_two_players(game)?;
    let optima = scan_optima(game, structure)?;
    let mut stayer_parts: Vec<usize> = optima.iter().map(|e| e[0]).collect();
    stayer_parts.sort_unstable();
    stayer_parts.dedup();
    let mut deviator_parts: Vec<usize> = optima.iter().map(|e| e[1]).collect();
    deviator_parts.sort_unstable();
    deviator_parts.dedup();

    let mut e_nobody: Option<Rat> = None;
    for &si in &stayer_parts {
        for &sj in &deviator_parts {
            let u = game.payoff(&[si, sj], 0).clone();
            if e_nobody.as_ref().is_none_or(|b| u < *b) {
                e_nobody = Some(u);
            }
        }
    }

    let mut e_deviated: Option<Rat> = None;
    let mixtures = scan_mixtures(game, grid);
    for &bi in &stayer_parts {
        for &bj in &deviator_parts {
            let baseline = game.payoff(&[bi, bj], 1).clone();
            for mix in &mixtures {
                if mix.payoff_against(game, 1, bi, 1) < baseline {
                    continue;
                }
                for &si in &stayer_parts {
                    let u = mix.payoff_against(game, 1, si, 0);
                    if e_deviated.as_ref().is_none_or(|b| u < *b) {
                        e_deviated = Some(u);
                    }
                }
            }
        }
    }
    Ok((
        e_nobody.expect("non-empty optima"),
        e_deviated.expect("deviation set contains the base strategy"),
    ))
}

/// The full set of oracle-derived forecast quantities for one structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleForecast {
    pub incentive: Rat,
    pub risk: Rat,
    pub tau: Rat,
    pub e_nobody: Rat,
    pub e_deviated: Rat,
    pub value: Rat,
}

/// Assembles every oracle quantity with one scan each.
pub fn oracle_forecast(
    game: &Game,
    structure: &CoalitionStructure,
    grid: &Grid,
) -> Result<OracleForecast, OracleError> {
    let incentive = oracle_incentive(game, structure, grid)?;
    let risk = oracle_risk(game, structure, grid, RiskMode::BestReply)?;
    let tau =
        abandon_probability(&incentive, &risk).map_err(|_| OracleError::UnsupportedStructure)?;
    let (e_nobody, e_deviated) = oracle_guaranteed(game, structure, grid)?;
    let value = &e_nobody * (Rat::one() - &tau) + &e_deviated * &tau;
    Ok(OracleForecast { incentive, risk, tau, e_nobody, e_deviated, value })
}

/// Full oracle forecast value v(p) under the best-reply risk reading.
pub fn oracle_value(
    game: &Game,
    structure: &CoalitionStructure,
    grid: &Grid,
) -> Result<Rat, OracleError> {
    Ok(oracle_forecast(game, structure, grid)?.value)
}

/// Smallest grid cooperation weight whose diagonal payoff reaches the floor.
pub fn oracle_coop_equilibrium(game: &Game, floor: &Rat, grid: &Grid) -> Result<Rat, OracleError> {
    require_two_players(game)?;
    if game.num_strategies() != 2 {
        return Err(OracleError::UnsupportedStructure);
    }
    // u(w, w) spelled out from the payoff table, kept free of the solver's
    // quadratic-coefficient form.
    let r = game.payoff(&[0, 0], 0);
    let s = game.payoff(&[0, 1], 0);
    let t = game.payoff(&[1, 0], 0);
    let p = game.payoff(&[1, 1], 0);
    for w in grid.points() {
        let anti = Rat::one() - &w;
        let u = &w * &w * r + &w * &anti * (s + t) + &anti * &anti * p;
        if &u >= floor {
            return Ok(w);
        }
    }
    Err(OracleError::EmptyFeasibleDiagonal)
}

/// Grid weight minimizing the gap between the opponent's two pure payoffs:
/// the symmetric mixed equilibrium of a 2x2 game, found by scan.
pub fn oracle_symmetric_mixed_nash(game: &Game, grid: &Grid) -> Result<Rat, OracleError> {
    require_two_players(game)?;
    let mut best: Option<(Rat, Rat)> = None;
    for w in grid.points() {
        let mix = ScanMixture::pair(0, 1, Rat::one() - &w);
        let vs_c = mix.payoff_against(game, 0, 0, 1);
        let vs_d = mix.payoff_against(game, 0, 1, 1);
        let gap = (vs_c - vs_d).abs();
        if best.as_ref().is_none_or(|(g, _)| gap < *g) {
            best = Some((gap, w));
        }
    }
    Ok(best.expect("non-empty grid").1)
}

/// True when no grid deviation improves any player by more than `tolerance`.
pub fn verify_nash(
    game: &Game,
    profile: &Profile,
    tolerance: &Rat,
    grid: &Grid,
) -> Result<bool, OracleError> {
    require_two_players(game)?;
    for player in 0..2 {
        let current = game
            .expected_payoff(profile, player)
            .expect("well-formed profile");
        for mix in scan_mixtures(game, grid) {
            let weights = {
                let mut w = vec![Rat::zero(); game.num_strategies()];
                for (s, v) in &mix.support {
                    w[*s] += v;
                }
                w
            };
            let mut strategies: Vec<MixedStrategy> = (0..2).map(|i| profile.player(i).clone()).collect();
            strategies[player] = MixedStrategy::new(weights).expect("scan mixture is valid");
            let deviated = Profile::new(strategies);
            let value = game
                .expected_payoff(&deviated, player)
                .expect("well-formed profile");
            if value > &current + tolerance {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// v(p_c) of the N-player public goods game by explicit enumeration of
/// defector subsets; the independent route for the binomial formula.
pub fn public_goods_value_by_subsets(
    players: usize,
    endowment: &Rat,
    alpha: &Rat,
) -> Result<Rat, OracleError> {
    if players < 2 {
        return Err(OracleError::TwoPlayersOnly(players));
    }
    let n = rat_i(players as i64);
    let d = endowment * (Rat::one() - alpha);
    let r = endowment * (alpha * &n - Rat::one());
    let tau = abandon_probability(&d, &r).map_err(|_| OracleError::UnsupportedStructure)?;
    let stay = Rat::one() - &tau;
    let opponents = players - 1;
    let mut value = Rat::zero();
    for mask in 0u32..(1 << opponents) {
        let defectors = mask.count_ones() as usize;
        let mut prob = Rat::one();
        for bit in 0..opponents {
            if mask & (1 << bit) != 0 {
                prob *= &tau;
            } else {
                prob *= &stay;
            }
        }
        let guarantee = alpha * rat_i((players - defectors) as i64) * endowment;
        value += guarantee * prob;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GameFamily;
    use crate::forecast::public_goods_value;
    use crate::rational::rat;

    fn pd_informal() -> Game {
        GameFamily::Pd { t: rat(1, 5), r: rat(3, 20), p: rat(1, 20), s: rat_i(0) }
            .instantiate()
            .unwrap()
    }

    fn truncated_traveler(bonus: i64, lo: i64) -> Game {
        GameFamily::Traveler { bonus: rat_i(bonus), lo, hi: 300 }
            .instantiate()
            .unwrap()
    }

    fn fine() -> Grid {
        Grid::with_denominator(1000).unwrap()
    }

    fn coarse() -> Grid {
        Grid::with_denominator(100).unwrap()
    }

    fn p_s() -> CoalitionStructure {
        CoalitionStructure::singletons(2)
    }

    fn p_c() -> CoalitionStructure {
        CoalitionStructure::grand(2)
    }

    #[test]
    fn grid_includes_the_pure_strategies() {
        let grid = Grid::with_denominator(4).unwrap();
        let points = grid.points();
        assert_eq!(points.first().unwrap(), &rat_i(0));
        assert_eq!(points.last().unwrap(), &rat_i(1));
        assert_eq!(points.len(), 5);
        assert!(Grid::new(rat_i(1)).is_err());
    }

    #[test]
    fn oracle_incentive_reproduces_the_pd_value() {
        let g = pd_informal();
        assert_eq!(oracle_incentive(&g, &p_c(), &fine()).unwrap(), rat(1, 20));
        assert_eq!(oracle_incentive(&g, &p_s(), &fine()).unwrap(), rat_i(0));
    }

    #[test]
    fn oracle_incentive_on_truncated_traveler() {
        let g = truncated_traveler(5, 290);
        assert_eq!(oracle_incentive(&g, &p_c(), &coarse()).unwrap(), rat_i(4));
    }

    #[test]
    fn oracle_risk_modes_agree_on_the_pd() {
        let g = pd_informal();
        for mode in [RiskMode::BestReply, RiskMode::AllDeviations] {
            assert_eq!(oracle_risk(&g, &p_c(), &fine(), mode).unwrap(), rat(1, 10));
        }
    }

    #[test]
    fn oracle_risk_best_reply_on_truncated_traveler_is_b_plus_two() {
        let g = truncated_traveler(5, 290);
        assert_eq!(
            oracle_risk(&g, &p_c(), &coarse(), RiskMode::BestReply).unwrap(),
            rat_i(7)
        );
    }

    #[test]
    fn oracle_risk_all_deviations_exceeds_the_best_reply_reading() {
        // the wider range admits low anticipating claims like 289
        let g = truncated_traveler(5, 289);
        let unrestricted = oracle_risk(&g, &p_c(), &coarse(), RiskMode::AllDeviations).unwrap();
        assert!(unrestricted > rat_i(7), "got {unrestricted}");
    }

    #[test]
    fn oracle_guaranteed_payoffs_on_pd_and_traveler() {
        let g = pd_informal();
        let (e_nobody, e_deviated) = oracle_guaranteed(&g, &p_c(), &fine()).unwrap();
        assert_eq!(e_nobody, rat(3, 20));
        assert_eq!(e_deviated, rat_i(0));
        let t = truncated_traveler(5, 290);
        let (e_nobody, e_deviated) = oracle_guaranteed(&t, &p_c(), &coarse()).unwrap();
        assert_eq!(e_nobody, rat_i(300));
        assert_eq!(e_deviated, rat_i(295) - rat_i(5));
    }

    #[test]
    fn oracle_value_matches_the_worked_pd() {
        let g = pd_informal();
        assert_eq!(oracle_value(&g, &p_c(), &fine()).unwrap(), rat(1, 10));
        assert_eq!(oracle_value(&g, &p_s(), &fine()).unwrap(), rat(1, 20));
    }

    #[test]
    fn oracle_equilibrium_scan_lands_on_one_half() {
        let g = pd_informal();
        let w = oracle_coop_equilibrium(&g, &rat(1, 10), &fine()).unwrap();
        assert_eq!(w, rat(1, 2)); // the exact root is on this grid
    }

    #[test]
    fn oracle_equilibrium_scan_for_the_lab_pd() {
        let g = GameFamily::Pd { t: rat_i(10), r: rat_i(7), p: rat_i(3), s: rat_i(0) }
            .instantiate()
            .unwrap();
        let w = oracle_coop_equilibrium(&g, &rat_i(4), &fine()).unwrap();
        assert_eq!(w, rat(1, 4));
    }

    #[test]
    fn min_floor_needs_no_cooperation() {
        let g = pd_informal();
        assert_eq!(
            oracle_coop_equilibrium(&g, &rat_i(0), &fine()).unwrap(),
            rat_i(0)
        );
    }

    #[test]
    fn verify_nash_checks() {
        let g = pd_informal();
        let tol = Rat::new(1.into(), 1_000_000_000u64.into());
        let dd = Profile::pure(&[1, 1], 2);
        let cc = Profile::pure(&[0, 0], 2);
        assert!(verify_nash(&g, &dd, &tol, &coarse()).unwrap());
        assert!(!verify_nash(&g, &cc, &tol, &coarse()).unwrap());

        let chicken = GameFamily::Chicken { t: rat_i(300), r: rat_i(200), s: rat_i(100), p: rat_i(0) }
            .instantiate()
            .unwrap();
        let ess = MixedStrategy::binary(rat(1, 2)).unwrap();
        let profile = Profile::new(vec![ess.clone(), ess]);
        let tol = Rat::new(1.into(), 1_000_000u64.into());
        assert!(verify_nash(&chicken, &profile, &tol, &coarse()).unwrap());
    }

    #[test]
    fn mixed_nash_scan_finds_the_chicken_indifference_point() {
        let chicken = GameFamily::Chicken { t: rat_i(300), r: rat_i(200), s: rat_i(100), p: rat_i(0) }
            .instantiate()
            .unwrap();
        assert_eq!(
            oracle_symmetric_mixed_nash(&chicken, &fine()).unwrap(),
            rat(1, 2)
        );
    }

    #[test]
    fn subset_enumeration_matches_the_binomial_formula() {
        for (players, alpha) in [(2, rat(4, 5)), (3, rat(1, 2)), (4, rat(2, 5)), (4, rat(9, 10))] {
            let by_subsets = public_goods_value_by_subsets(players, &rat_i(1), &alpha).unwrap();
            let by_formula = public_goods_value(players, &rat_i(1), &alpha).unwrap().value;
            assert_eq!(by_subsets, by_formula);
        }
    }

    #[test]
    fn refinement_stability_on_the_informal_pd() {
        let g = pd_informal();
        let coarse_grid = Grid::with_denominator(100).unwrap();
        let fine_grid = Grid::with_denominator(200).unwrap();
        let floor = rat(1, 10);
        let w_coarse = oracle_coop_equilibrium(&g, &floor, &coarse_grid).unwrap();
        let w_fine = oracle_coop_equilibrium(&g, &floor, &fine_grid).unwrap();
        assert!((w_coarse - w_fine).abs() <= *coarse_grid.step());
        let v_coarse = oracle_value(&g, &p_c(), &coarse_grid).unwrap();
        let v_fine = oracle_value(&g, &p_c(), &fine_grid).unwrap();
        assert!((v_coarse - v_fine).abs() <= *coarse_grid.step());
    }
}
