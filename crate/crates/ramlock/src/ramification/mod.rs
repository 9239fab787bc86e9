//! Root-difference profiles, upper breaks, differents and the bound u(K, r, n).
//!
//! Breaks use the shifted upper numbering G^(j) = G^(j-1).

pub mod bound;
pub mod breaks;
pub mod pj;
pub mod profile;

pub use bound::{bound_u, bound_value, RamBound};
pub use breaks::{
    break_cyclotomic, break_fn, break_kummer, break_tate, check_discriminant_bound,
    different_valuation, CompositeBreak,
};
pub use pj::{bracket_pj, property_pj_holds, PjBracket, PjOutcome};
pub use profile::{break_from_polynomial, root_difference_profile, BreakDatum, RootProfile};
