//! Noncommutative mirror symmetry toolkit: quivers with potential, dimer models,
//! matrix factorisations, group quotients and modular special functions.

pub mod algebra;
pub mod cli;
pub mod dimer;
pub mod error;
pub mod families;
pub mod groups;
pub mod linalg;
pub mod matfact;
pub mod potential;
pub mod qseries;
pub mod quiver;
pub mod reduction;
pub mod report;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
