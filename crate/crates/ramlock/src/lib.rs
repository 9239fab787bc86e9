//! Exact p-adic arithmetic for ramification bounds of torsion crystalline
//! representations: local field towers, truncated Witt vectors, root-difference
//! profiles, and a fixed-point solver for points of torsion phi-modules.

pub mod cli;
pub mod error;
pub mod localfield;
pub mod phimodule;
pub mod ramification;
pub mod rat;
pub mod witt;

pub use error::{Error, Result};
