//! Finite groups as Cayley tables, with the limit and colimit constructions
//! the rest of the crate is built from.

mod action;
pub mod catalog;
pub mod constructions;
mod group;
mod hom;
pub mod search;
mod subgroup;

pub use action::{conjugation_action, GroupAction};
pub use constructions::{
    direct_product, image_and_normal_closure, pullback, quotient, semidirect_product, Pullback, Quotient,
    SemidirectProduct,
};
pub use group::{Elem, FinGroup};
pub use hom::GroupHom;
pub use search::{
    all_homomorphisms, automorphism_group, automorphism_group_bounded, isomorphism_search, isomorphism_search_bounded,
    AutGroup, Csp, DEFAULT_BOUND,
};
pub use subgroup::Subgroup;
