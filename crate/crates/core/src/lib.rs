//! Exact computation with crossed modules, strict 2-groups and butterflies
//! between them, over finite groups given by Cayley tables.

pub mod error;
pub mod fingroup;
mod report;
pub mod xmod;
pub mod butterfly;
pub mod extension;
pub mod laws;
pub mod serial;
pub mod weakmap;

pub use error::{Error, Result};
pub use report::{Issue, Report};
