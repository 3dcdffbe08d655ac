//! Centrally symmetric neighborly spheres and balls.
//!
//! Builds the spheres `Δ^d_n`, the balls `B^{d,i}_n` and their relatives on
//! signed vertex sets `{±1, …, ±n}`, and checks their combinatorial
//! properties exhaustively: neighborliness, stackedness, shellings, bistellar
//! flips and isomorphism.

pub mod builders;
pub mod complex;
pub mod error;
pub mod face;
pub mod flips;
pub mod homology;
pub mod io;
pub mod iso;
pub mod props;
pub mod sew3;
pub mod shelling;

pub use complex::{Complex, FHVectors, FacetGraph, LabelSpace};
pub use error::{Error, Result};
pub use face::{Face, Vertex};
