//! Name-keyed registry of family solvers. Each game family sits behind the
//! common [`FamilySolver`] trait and is selected at runtime by its tag, which
//! is how the CLI routes a parsed spec document to the right solution path.

use std::collections::BTreeMap;

use crate::family::GameFamily;
use crate::solver::families::{self, Solution};
use crate::solver::SolverError;

/// A closed-form solution path for one game family.
pub trait FamilySolver: Send + Sync {
    /// Registry key; matches `GameFamily::tag`.
    fn tag(&self) -> &'static str;
    /// One-line description for `--help`-style listings.
    fn description(&self) -> &'static str;
    /// Solves the family, rejecting mismatched variants.
    fn solve(&self, family: &GameFamily) -> Result<Solution, SolverError>;
}

macro_rules! family_solver {
    ($name:ident, $tag:literal, $desc:literal, $variant:ident, $solve:expr) => {
        struct $name;

        impl FamilySolver for $name {
            fn tag(&self) -> &'static str {
                $tag
            }

            fn description(&self) -> &'static str {
                $desc
            }

            fn solve(&self, family: &GameFamily) -> Result<Solution, SolverError> {
                match family {
                    GameFamily::$variant { .. } => $solve(family),
                    other => Err(SolverError::FamilyMismatch {
                        solver: $tag,
                        family: other.tag(),
                    }),
                }
            }
        }
    };
}

family_solver!(
    PdSolver,
    "pd",
    "prisoner's dilemma with explicit payoffs T > R > P > S",
    Pd,
    families::solve_family
);
family_solver!(
    ParametricPdSolver,
    "parametric-pd",
    "prisoner's dilemma T=k+2, R=k+1, P=1, S=0",
    ParametricPd,
    families::solve_family
);
family_solver!(
    TravelerSolver,
    "traveler",
    "traveler's dilemma over integer claims with bonus/penalty b >= 2",
    Traveler,
    families::solve_family
);
family_solver!(
    PublicGoodsSolver,
    "public-goods",
    "public goods game with constant marginal return alpha",
    PublicGoods,
    families::solve_family
);
family_solver!(
    CommonsSolver,
    "commons",
    "tragedy of the commons (two farmers, keep / not-keep)",
    Commons,
    families::solve_family
);
family_solver!(
    ChickenSolver,
    "chicken",
    "chicken with payoffs T > R > S > P",
    Chicken,
    families::solve_family
);

/// Runtime registry mapping family tags to their solvers.
pub struct SolverRegistry {
    solvers: BTreeMap<&'static str, Box<dyn FamilySolver>>,
}

impl SolverRegistry {
    pub fn empty() -> Self {
        SolverRegistry { solvers: BTreeMap::new() }
    }

    /// Registry with all built-in family solvers.
    pub fn with_builtin() -> Self {
        let mut registry = SolverRegistry::empty();
        registry.register(Box::new(PdSolver));
        registry.register(Box::new(ParametricPdSolver));
        registry.register(Box::new(TravelerSolver));
        registry.register(Box::new(PublicGoodsSolver));
        registry.register(Box::new(CommonsSolver));
        registry.register(Box::new(ChickenSolver));
        registry
    }

    /// Registers a solver under its tag, replacing any previous entry.
    pub fn register(&mut self, solver: Box<dyn FamilySolver>) {
        self.solvers.insert(solver.tag(), solver);
    }

    pub fn get(&self, tag: &str) -> Option<&dyn FamilySolver> {
        self.solvers.get(tag).map(|s| s.as_ref())
    }

    /// Registered tags in sorted order.
    pub fn tags(&self) -> Vec<&'static str> {
        self.solvers.keys().copied().collect()
    }

    pub fn descriptions(&self) -> Vec<(&'static str, &'static str)> {
        self.solvers
            .values()
            .map(|s| (s.tag(), s.description()))
            .collect()
    }

    /// Looks up the solver for the family's tag and runs it.
    pub fn solve(&self, family: &GameFamily) -> Result<Solution, SolverError> {
        let solver = self
            .get(family.tag())
            .ok_or_else(|| SolverError::UnknownFamily(family.tag().to_string()))?;
        solver.solve(family)
    }
}

impl Default for SolverRegistry {
    fn default() -> Self {
        SolverRegistry::with_builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    #[test]
    fn builtin_registry_lists_all_families() {
        let registry = SolverRegistry::with_builtin();
        assert_eq!(
            registry.tags(),
            vec!["chicken", "commons", "parametric-pd", "pd", "public-goods", "traveler"]
        );
    }

    #[test]
    fn dispatch_routes_by_family_tag() {
        let registry = SolverRegistry::with_builtin();
        let family = GameFamily::Pd {
            t: rat(1, 5),
            r: rat(3, 20),
            p: rat(1, 20),
            s: rat_i(0),
        };
        let sol = registry.solve(&family).unwrap();
        assert_eq!(sol.family, "pd");
        assert_eq!(sol.equilibrium.cooperation_weight().unwrap(), rat(1, 2));
    }

    #[test]
    fn mismatched_family_is_rejected() {
        let registry = SolverRegistry::with_builtin();
        let solver = registry.get("pd").unwrap();
        let family = GameFamily::ParametricPd { k: rat_i(2) };
        assert!(matches!(
            solver.solve(&family),
            Err(SolverError::FamilyMismatch { solver: "pd", family: "parametric-pd" })
        ));
    }

    #[test]
    fn unknown_tag_is_reported() {
        let registry = SolverRegistry::empty();
        let family = GameFamily::ParametricPd { k: rat_i(2) };
        assert!(matches!(
            registry.solve(&family),
            Err(SolverError::UnknownFamily(tag)) if tag == "parametric-pd"
        ));
    }
}
