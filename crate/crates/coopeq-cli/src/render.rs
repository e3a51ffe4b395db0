//! Text rendering of forecasts and solutions for the solve/forecast
//! subcommands. Output is deterministic: fixed field order, exact rationals
//! with 6-place decimals.

use std::fmt::Write as _;

use coopeq_core::{
    fmt_decimal, fmt_full, EquilibriumAction, Forecast, ForecastPair, PublicGoodsForecast,
    Solution,
};

pub fn forecast_line(f: &Forecast) -> String {
    format!(
        "forecast {}: D={} R={} tau={} e_nobody={} e_deviated={} v={}",
        f.structure.name(),
        fmt_full(&f.incentive),
        fmt_full(&f.risk),
        fmt_full(&f.tau),
        fmt_full(&f.e_nobody),
        fmt_full(&f.e_deviated),
        fmt_full(&f.value),
    )
}

fn public_goods_lines(pg: &PublicGoodsForecast, out: &mut String) {
    let _ = writeln!(
        out,
        "forecast p_s: v={} (selfish equilibrium keeps the endowment)",
        fmt_full(&pg.selfish_value)
    );
    let _ = writeln!(
        out,
        "forecast p_c: pairwise D={} R={} per-opponent tau={} v={}",
        fmt_full(&pg.pairwise_incentive),
        fmt_full(&pg.pairwise_risk),
        fmt_full(&pg.per_opponent_tau),
        fmt_full(&pg.value),
    );
    for (m, e) in pg.e_by_defectors.iter().enumerate() {
        let _ = writeln!(out, "  guarantee with {m} defectors: {}", fmt_full(e));
    }
}

pub fn forecast_text(label: &str, forecasts: &ForecastPair) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "game: {label}");
    match forecasts {
        ForecastPair::TwoPlayer { selfish, cooperative } => {
            let _ = writeln!(out, "{}", forecast_line(selfish));
            let _ = writeln!(out, "{}", forecast_line(cooperative));
        }
        ForecastPair::PublicGoods(pg) => public_goods_lines(pg, &mut out),
    }
    let selected = if forecasts.cooperative_value() > forecasts.selfish_value() {
        "p_c"
    } else {
        "p_s"
    };
    let _ = writeln!(out, "selected structure: {selected}");
    let floor = if selected == "p_c" {
        forecasts.cooperative_value()
    } else {
        forecasts.selfish_value()
    };
    let _ = writeln!(out, "floor v(p_bar): {}", fmt_full(floor));
    out
}

fn action_text(action: &EquilibriumAction) -> String {
    match action {
        EquilibriumAction::Mixture { labels, strategy } => {
            let parts: Vec<String> = labels
                .iter()
                .enumerate()
                .map(|(i, label)| format!("{} {}", fmt_full(strategy.weight(i)), label))
                .collect();
            parts.join(" + ")
        }
        EquilibriumAction::Claims { support } => {
            let parts: Vec<String> = support
                .iter()
                .map(|(claim, w)| format!("{} * claim {}", fmt_full(w), claim))
                .collect();
            parts.join(" + ")
        }
        EquilibriumAction::Contribution { amount, endowment } => format!(
            "contribute {} of endowment {}",
            fmt_full(amount),
            fmt_full(endowment)
        ),
    }
}

pub fn solution_text(label: &str, solution: &Solution) -> String {
    let mut out = forecast_text(label, &solution.equilibrium.forecasts);
    let _ = writeln!(
        out,
        "cooperative equilibrium: {}",
        action_text(&solution.equilibrium.action)
    );
    if let Some(weight) = solution.equilibrium.cooperation_weight() {
        let _ = writeln!(out, "cooperation weight: {}", fmt_full(&weight));
    }
    if let Some(claim) = solution.equilibrium.expected_claim() {
        let _ = writeln!(out, "expected claim: {}", fmt_decimal(&claim, 6));
    }
    let _ = writeln!(
        out,
        "coincides with nash: {}",
        solution.equilibrium.coincides_with_nash
    );
    let _ = writeln!(
        out,
        "guaranteed value: {}",
        fmt_full(&solution.equilibrium.guaranteed_value)
    );
    if let Some(mixed) = &solution.mixed_nash {
        let _ = writeln!(
            out,
            "symmetric mixed nash: {} C + {} D",
            fmt_full(mixed.weight(0)),
            fmt_full(mixed.weight(1)),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use coopeq_core::{rat, rat_i, solve_pd, solve_traveler};

    #[test]
    fn pd_solution_renders_the_worked_numbers() {
        let sol = solve_pd(&rat(1, 5), &rat(3, 20), &rat(1, 20), &rat_i(0)).unwrap();
        let text = solution_text("pd-informal", &sol);
        assert!(text.contains("forecast p_s: D=0 (0.000000)"));
        assert!(text.contains("v=1/10 (0.100000)"));
        assert!(text.contains("selected structure: p_c"));
        assert!(text.contains("cooperative equilibrium: 1/2 (0.500000) C + 1/2 (0.500000) D"));
    }

    #[test]
    fn traveler_solution_renders_claims() {
        let sol = solve_traveler(&rat_i(180), 180, 300).unwrap();
        let text = solution_text("td-b180", &sol);
        assert!(text.contains("1 (1.000000) * claim 180"));
        assert!(text.contains("coincides with nash: true"));
    }
}
