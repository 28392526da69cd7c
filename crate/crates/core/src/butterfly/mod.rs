//! Butterflies between crossed modules: validation, identities, composition,
//! flips, split butterflies, reduced composition, spans and fractors.

mod compose;
mod core;
mod fractor;
mod morphism;
mod span;
mod split;

pub use self::core::Butterfly;
pub use compose::{compose, compose_detailed, Composite};
pub use fractor::{from_fractor, to_fractor, Fractor};
pub use morphism::{
    all_butterfly_morphisms, isomorphic_butterflies, isomorphic_butterflies_bounded, ButterflyMorphism,
    BUTTERFLY_SEARCH_BOUND,
};
pub use span::{ef3_check, span_of_butterfly, Span};
pub use split::{homomorphic_sections, morphism_from_split, reduced_compose, split_from_morphism, two_cell_image, SplitButterfly};
