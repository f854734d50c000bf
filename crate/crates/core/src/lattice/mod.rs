//! Exact lattice and polyhedral machinery.

pub mod intlin;
pub mod polytope;
pub mod prism;

pub use intlin::{primitive, transverse_functional, IntLinError, IntVec};
pub use polytope::{
    enumerate_lattice_points, generic_shift, polytope_nonempty, HPolytope, Halfspace,
    PolytopeError, ShiftVerdict,
};
pub use prism::{prism_first_slab, Prism, PrismError, SplitFrame};
