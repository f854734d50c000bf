//! Exact quantization of toric b^m-symplectic manifolds as virtual torus
//! modules.
//!
//! A manifold is described combinatorially by a [`model::ManifoldSpec`]:
//! compact moment regions grouped into pieces, glued along hypersurfaces
//! `Z` whose collar is governed by the modular weights `a_j = r_j a_hat`.
//! [`quantize::quantize`] turns a spec into a [`virtmod::VirtualTModule`],
//! an integer multiplicity function on the weight lattice stored as a
//! finite part plus rays.

pub mod gen;
pub mod lattice;
pub mod laurent;
pub mod model;
pub mod presets;
pub mod quantize;
pub mod rational;
pub mod specfile;
pub mod virtmod;

pub use model::{ManifoldSpec, Piece, ZComponent};
pub use quantize::quantize;
pub use rational::Rational;
pub use virtmod::VirtualTModule;
