//! `coopeq`: forecast values and cooperative equilibria of symmetric social
//! dilemmas, the reproduction suite, and brute-force oracle checks.
//!
//! Exit codes: 0 on success, 1 when an assertion or oracle comparison fails,
//! 2 on input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use coopeq_cli::render::{forecast_text, solution_text};
use coopeq_cli::{
    all_ok, emit_report, load_game_spec, oracle_check, render_check, run_paper_suite,
    suite_failures, GameSpecDocument, ReportFormat,
};
use coopeq_core::oracle::RiskMode;
use coopeq_core::{
    cooperative_equilibrium, parse_money, symmetric_mixed_nash_2x2, Solution, SolverRegistry,
};

#[derive(Parser)]
#[command(
    name = "coopeq",
    version,
    about = "Cooperative-equilibrium solver for symmetric one-shot social dilemmas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
    Text,
}

impl From<FormatArg> for ReportFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Markdown => ReportFormat::Markdown,
            FormatArg::Text => ReportFormat::Text,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RiskModeArg {
    BestReply,
    AllDeviations,
}

impl From<RiskModeArg> for RiskMode {
    fn from(value: RiskModeArg) -> Self {
        match value {
            RiskModeArg::BestReply => RiskMode::BestReply,
            RiskModeArg::AllDeviations => RiskMode::AllDeviations,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full forecast and cooperative-equilibrium dump for a game spec file.
    Solve { spec: PathBuf },
    /// Forecast quantities (D, R, tau, guarantees, v) only.
    Forecast { spec: PathBuf },
    /// Run the reproduction suite and emit the comparison report.
    PaperSuite {
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare closed-form results against the brute-force oracle.
    OracleCheck {
        spec: PathBuf,
        /// Grid step for the oracle scan (exact decimal or fraction).
        #[arg(long, default_value = "0.001")]
        step: String,
        #[arg(long, value_enum, default_value_t = RiskModeArg::BestReply)]
        risk_mode: RiskModeArg,
    },
}

fn load(path: &Path) -> Result<GameSpecDocument> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read spec file {}", path.display()))?;
    let doc = load_game_spec(&text)
        .with_context(|| format!("cannot load spec file {}", path.display()))?;
    Ok(doc)
}

fn doc_label(doc: &GameSpecDocument, path: &Path) -> String {
    doc.label()
        .map(str::to_string)
        .unwrap_or_else(|| path.display().to_string())
}

/// Solves either a named family (through the registry) or a matrix game.
fn solve_document(doc: &GameSpecDocument) -> Result<Solution> {
    match doc {
        GameSpecDocument::Family { family, .. } => {
            let registry = SolverRegistry::with_builtin();
            Ok(registry.solve(family)?)
        }
        GameSpecDocument::Matrix { game, .. } => {
            let equilibrium = cooperative_equilibrium(game)?;
            let mixed_nash = symmetric_mixed_nash_2x2(game)?;
            Ok(Solution { family: "matrix", equilibrium, mixed_nash })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { spec } => {
            let doc = load(&spec)?;
            let solution = solve_document(&doc)?;
            print!("{}", solution_text(&doc_label(&doc, &spec), &solution));
            Ok(ExitCode::SUCCESS)
        }
        Command::Forecast { spec } => {
            let doc = load(&spec)?;
            // Matrix games forecast through the generic pipeline even when
            // no equilibrium solver applies (more than two strategies).
            let forecasts = match &doc {
                GameSpecDocument::Matrix { game, .. } => {
                    let best = coopeq_core::best_forecast(game)?;
                    coopeq_core::ForecastPair::TwoPlayer {
                        selfish: best.selfish,
                        cooperative: best.cooperative,
                    }
                }
                GameSpecDocument::Family { .. } => {
                    solve_document(&doc)?.equilibrium.forecasts
                }
            };
            print!("{}", forecast_text(&doc_label(&doc, &spec), &forecasts));
            Ok(ExitCode::SUCCESS)
        }
        Command::PaperSuite { format, out } => {
            let rows = run_paper_suite();
            let report = emit_report(&rows, format.into())?;
            match out {
                Some(path) => std::fs::write(&path, &report)
                    .with_context(|| format!("cannot write report to {}", path.display()))?,
                None => print!("{report}"),
            }
            let failures = suite_failures(&rows);
            if failures.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                for label in &failures {
                    eprintln!("assertion failed: {label}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::OracleCheck { spec, step, risk_mode } => {
            let doc = load(&spec)?;
            let step = parse_money(&step).context("cannot parse --step")?;
            let rows = oracle_check(&doc, &step, risk_mode.into())?;
            print!("{}", render_check(&doc_label(&doc, &spec), &rows));
            if all_ok(&rows) {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("oracle disagreement detected");
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
