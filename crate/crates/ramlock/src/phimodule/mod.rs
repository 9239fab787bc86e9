//! Torsion phi-modules, their points in the quotient rings and the extensions they cut out.

pub mod bundled;
pub mod galois;
pub mod module;
pub mod sigma;
pub mod solver;

pub use bundled::{bundled_module, bundled_names, curated_candidates, unramified_quadratic};
pub use galois::{automorphisms, FieldAutomorphism};
pub use module::{Filtration, ModuleJson, TorsionPhiModule};
pub use sigma::SigmaPoly;
pub use solver::{
    count_points, cut_out_extension, galois_action, orbits, solve_points, CutOut, PointSystem,
    SolutionSet, SolveOptions, Tuple, Verdict,
};
