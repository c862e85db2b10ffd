//! Morita invariants of pointed fusion categories `Vec_G^ω`.
//!
//! All cochains take values in `Q/Z`, written additively.

pub mod bimodcats;
pub mod bounds;
pub mod cli;
pub mod cochain;
pub mod cohomology;
pub mod crossed;
mod error;
pub mod group;
pub mod gset;
pub mod invariants;
pub mod linalg;
pub mod modcats;
pub mod par;
pub mod qz;
pub mod twisted;

pub use bounds::{bounds, set_bound_override, Bounds};
pub use cochain::{delta, Cochain};
pub use cohomology::{
    cohomology_group, cohomology_group_on, cyclic_3cocycle, solve_coboundary, CohomologyGroup,
};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom, Subgroup};
pub use gset::{GSet, Transversal};
pub use qz::QZ;
