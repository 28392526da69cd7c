//! Crossed modules, their morphisms and 2-cells, and strict 2-groups.

mod crossed;
mod morphism;
mod strict;
mod twocell;

pub use crossed::CrossedModule;
pub use morphism::{pullback_crossed_module, WeakEquivalenceInfo, XModMorphism};
pub use strict::Strict2Group;
pub use twocell::{
    candidate_components, components_hom, enumerate_natural_transformations, enumerate_two_cells, naturality_report,
    XModTwoCell,
};
