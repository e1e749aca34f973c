//! Exact lattice-point counts, volumes, Ehrhart coefficients, equivariant
//! Todd classes and Grassmannian residue coefficients for complete
//! simplicial multi-fans, all over exact rational and cyclotomic
//! arithmetic with equality-based verification against brute-force
//! oracles.

pub mod cohomology;
pub mod cyclo;
pub mod dh;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod matrix;
pub mod morelli;
pub mod mpoly;
pub mod polytope;
pub mod rat;
pub mod sample;
pub mod series;
pub mod snf;

pub use error::{Error, Result};
pub use fan::{Simplex, SimplicialMultiFan};
pub use polytope::HRepPolytope;
pub use rat::{Int, Rat};
