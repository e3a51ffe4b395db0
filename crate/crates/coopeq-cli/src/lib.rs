//! Harness library behind the `coopeq` binary: spec-document loading, the
//! reproduction suite, report emission, and oracle checks.

pub mod check;
pub mod reference;
pub mod render;
pub mod report;
pub mod spec_doc;
pub mod suite;

pub use check::{all_ok, oracle_check, render_check, CheckRow};
pub use report::{emit_report, ReportError, ReportFormat};
pub use spec_doc::{load_game_spec, GameSpecDocument, SpecError};
pub use suite::{run_paper_suite, suite_failures, MatchClass, SuiteRow};
