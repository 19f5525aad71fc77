//! Discrete hypergroups from fusion rules: products, cosets, stable
//! kernels, free products, `P/Q` lattice quotients, and the classification
//! of finite-index quantum subgroups of free products of duals of compact
//! Lie groups.

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod error;
pub mod freeprod;
pub mod hypercore;
pub mod lowindex;
pub mod morphism;
pub mod structure;
mod unionfind;

pub use error::{HgError, Result};
pub use hypercore::{FiniteHypergroup, Hypergroup, Scope};
