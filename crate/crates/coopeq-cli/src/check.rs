//! The oracle-check subcommand: closed-form quantities against the
//! brute-force oracle, with one row per compared quantity.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use num::Signed;

use coopeq_core::oracle::{
    oracle_coop_equilibrium, oracle_forecast, oracle_incentive, oracle_risk,
    oracle_symmetric_mixed_nash, public_goods_value_by_subsets, verify_nash, Grid, RiskMode,
};
use coopeq_core::{
    coalition_value, cooperative_equilibrium, fmt_decimal, public_goods_value, rat, rat_i,
    CoalitionStructure, Game, GameFamily, MixedStrategy, Profile, Rat,
};

use crate::spec_doc::GameSpecDocument;

/// Agreement bound for closed-form vs oracle comparisons.
pub fn agreement_bound() -> Rat {
    rat(5, 1000)
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub quantity: String,
    pub closed: String,
    pub oracle: String,
    pub ok: bool,
    /// Informational rows never flip the verdict.
    pub informational: bool,
}

impl CheckRow {
    fn compared(quantity: &str, closed: &Rat, oracle: &Rat, bound: &Rat) -> Self {
        CheckRow {
            quantity: quantity.to_string(),
            closed: fmt_decimal(closed, 6),
            oracle: fmt_decimal(oracle, 6),
            ok: (closed - oracle).abs() <= *bound,
            informational: false,
        }
    }

    fn info(quantity: &str, closed: &str, oracle: &str) -> Self {
        CheckRow {
            quantity: quantity.to_string(),
            closed: closed.to_string(),
            oracle: oracle.to_string(),
            ok: true,
            informational: true,
        }
    }
}

fn check_2x2(game: &Game, grid: &Grid, risk_mode: RiskMode, rows: &mut Vec<CheckRow>) -> Result<()> {
    let bound = agreement_bound();
    let p_s = CoalitionStructure::singletons(2);
    let p_c = CoalitionStructure::grand(2);
    let fs = coalition_value(game, &p_s)?;
    let fc = coalition_value(game, &p_c)?;
    let oracle_c = oracle_forecast(game, &p_c, grid)?;
    let oracle_s = oracle_forecast(game, &p_s, grid)?;
    rows.push(CheckRow::compared("D(p_c)", &fc.incentive, &oracle_c.incentive, &bound));
    rows.push(CheckRow::compared("R(p_c)", &fc.risk, &oracle_c.risk, &bound));
    if risk_mode == RiskMode::AllDeviations {
        let unrestricted = oracle_risk(game, &p_c, grid, RiskMode::AllDeviations)?;
        rows.push(CheckRow::info(
            "R(p_c) all-deviations",
            &fmt_decimal(&fc.risk, 6),
            &fmt_decimal(&unrestricted, 6),
        ));
    }
    rows.push(CheckRow::compared("v(p_c)", &fc.value, &oracle_c.value, &bound));
    rows.push(CheckRow::compared("v(p_s)", &fs.value, &oracle_s.value, &bound));

    let eq = cooperative_equilibrium(game)?;
    let weight = eq.cooperation_weight().expect("2x2 solution");
    if eq.coincides_with_nash {
        if weight == rat_i(0) || weight == rat_i(1) {
            let s = if weight == rat_i(1) { 0 } else { 1 };
            let profile = Profile::pure(&[s, s], 2);
            let tol = Rat::new(1.into(), 1_000_000_000u64.into());
            let verified = verify_nash(game, &profile, &tol, grid)?;
            rows.push(CheckRow {
                quantity: "equilibrium (pure nash)".to_string(),
                closed: fmt_decimal(&weight, 6),
                oracle: if verified { "verified".into() } else { "REFUTED".into() },
                ok: verified,
                informational: false,
            });
        } else {
            let scanned = oracle_symmetric_mixed_nash(game, grid)?;
            rows.push(CheckRow::compared("equilibrium weight", &weight, &scanned, &bound));
            let mix = MixedStrategy::binary(weight.clone()).expect("weight in [0,1]");
            let profile = Profile::new(vec![mix.clone(), mix]);
            let tol = Rat::new(1.into(), 1_000_000u64.into());
            let verified = verify_nash(game, &profile, &tol, grid)?;
            rows.push(CheckRow {
                quantity: "equilibrium (mixed nash)".to_string(),
                closed: fmt_decimal(&weight, 6),
                oracle: if verified { "verified".into() } else { "REFUTED".into() },
                ok: verified,
                informational: false,
            });
        }
    } else {
        let scanned = oracle_coop_equilibrium(game, &oracle_c.value, grid)?;
        rows.push(CheckRow::compared("equilibrium weight", &weight, &scanned, &bound));
    }
    Ok(())
}

fn check_traveler(
    bonus: &Rat,
    lo: i64,
    hi: i64,
    grid: &Grid,
    risk_mode: RiskMode,
    rows: &mut Vec<CheckRow>,
) -> Result<()> {
    let bound = agreement_bound();
    // Truncate the claim range so the scan stays small; the truncation keeps
    // every profile the incentive/risk computations touch.
    let truncated_lo = lo.max(hi - 10);
    let family = GameFamily::Traveler { bonus: bonus.clone(), lo: truncated_lo, hi };
    let game = family.instantiate()?;
    let p_c = CoalitionStructure::grand(2);
    let closed_d = bonus - rat_i(1);
    let closed_r = bonus + rat_i(2);
    rows.push(CheckRow::compared(
        "D(p_c) truncated",
        &closed_d,
        &oracle_incentive(&game, &p_c, grid)?,
        &bound,
    ));
    rows.push(CheckRow::compared(
        "R(p_c) truncated",
        &closed_r,
        &oracle_risk(&game, &p_c, grid, RiskMode::BestReply)?,
        &bound,
    ));
    if risk_mode == RiskMode::AllDeviations {
        let unrestricted = oracle_risk(&game, &p_c, grid, RiskMode::AllDeviations)?;
        rows.push(CheckRow::info(
            "R(p_c) all-deviations",
            &fmt_decimal(&closed_r, 6),
            &fmt_decimal(&unrestricted, 6),
        ));
    }
    Ok(())
}

fn check_public_goods(
    players: usize,
    endowment: &Rat,
    alpha: &Rat,
    grid: &Grid,
    risk_mode: RiskMode,
    rows: &mut Vec<CheckRow>,
) -> Result<()> {
    let bound = agreement_bound();
    let formula = public_goods_value(players, endowment, alpha)?.value;
    let subsets = public_goods_value_by_subsets(players, endowment, alpha)?;
    rows.push(CheckRow::compared("v(p_c) n-player", &formula, &subsets, &bound));
    if players == 2 {
        let game = GameFamily::PublicGoods {
            players,
            endowment: endowment.clone(),
            alpha: alpha.clone(),
        }
        .instantiate()?;
        check_2x2(&game, grid, risk_mode, rows)?;
    }
    Ok(())
}

/// Runs the oracle comparison for a parsed spec document.
pub fn oracle_check(
    doc: &GameSpecDocument,
    step: &Rat,
    risk_mode: RiskMode,
) -> Result<Vec<CheckRow>> {
    let grid = Grid::new(step.clone())?;
    let mut rows = Vec::new();
    match doc {
        GameSpecDocument::Family { family, .. } => match family {
            GameFamily::Traveler { bonus, lo, hi } => {
                check_traveler(bonus, *lo, *hi, &grid, risk_mode, &mut rows)?
            }
            GameFamily::PublicGoods { players, endowment, alpha } => {
                check_public_goods(*players, endowment, alpha, &grid, risk_mode, &mut rows)?
            }
            other => {
                let game = other.instantiate()?;
                check_2x2(&game, &grid, risk_mode, &mut rows)?;
            }
        },
        GameSpecDocument::Matrix { game, .. } => {
            if game.num_strategies() != 2 {
                bail!("oracle-check on matrix games supports 2 strategies, got {}",
                    game.num_strategies());
            }
            check_2x2(game, &grid, risk_mode, &mut rows)?;
        }
    }
    Ok(rows)
}

pub fn all_ok(rows: &[CheckRow]) -> bool {
    rows.iter().all(|r| r.ok)
}

pub fn render_check(label: &str, rows: &[CheckRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "oracle check: {label}");
    for row in rows {
        let verdict = if row.informational {
            "info"
        } else if row.ok {
            "ok"
        } else {
            "DISAGREE"
        };
        let _ = writeln!(
            out,
            "  {:<24} closed={:<16} oracle={:<16} {}",
            row.quantity, row.closed, row.oracle, verdict
        );
    }
    out
}
