//! Truncated p-typical Witt vectors, the Frobenius lift Phi and the quotient ring used by the
//! phi-module solver.

pub mod abar;
pub mod context;
pub mod ideal;
pub mod poly;
pub mod ring;
pub mod vector;

pub use abar::AbarRing;
pub use context::{CarryPolys, UniversalPolys, WittContext, MAX_LEN};
pub use ideal::{ideal_divide, witt_inverse, QuotientIn};
pub use poly::MPoly;
pub use ring::{CoeffRing, Integers, Polynomials, Rationals, Truncated};
pub use vector::{integer_entries, WittJson, WittVector};
