//! Catalog algebras and the worked scenarios on them.

mod algebras;
mod scenarios;

pub use algebras::{algebra, g1, g2, g3, g4, g5, ALGEBRA_IDS};
pub use scenarios::{
    format_matrix, format_vector, format_vectors, g2_a46_branch, g2_incompatibility_check, list_scenarios,
    run_scenario, run_scenario_with, scenario, weaken_closed, CatalogError, ClosedExpected, Comparison, Expected,
    Scenario, ScenarioReport, ScalarExpected, StructureExpected, Subs, Weakening, SCENARIO_IDS,
};
