//! Fixture generation and the property suites run over it.

mod fixtures;
mod suites;

pub use fixtures::{base_groups, generate_fixtures, idempotent_pair_2groups, FixtureSet, MAX_FIXTURE_BOUND};
pub use suites::{
    run_action_suite, run_bicategory_suite, run_classification_suite, run_flip_suite, run_fractions_suite,
    run_janelidze_suite, run_suite, run_two_cell_suite, run_weakmap_suite, Failure, Fault, SuiteReport, SECTION_CAP,
    SUITES,
};
