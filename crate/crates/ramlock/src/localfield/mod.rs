//! p-adic fields as towers of unramified and Eisenstein steps.

pub mod arith;
pub mod construct;
pub mod element;
pub mod field;
pub mod fp;
pub mod poly;
pub mod towers;

pub use construct::Adjoined;
pub use element::LFElement;
pub use field::{field_from_json, field_from_presentation, make_field, standard_field, LocalField, Presentation, StepKind};
pub use poly::{newton_polygon, roots, NewtonPolygon, Poly};
