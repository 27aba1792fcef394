//! Finite State Property Systems, their closure spaces, classical and
//! topological analysis, and a discretized hidden-measurement spin model.

pub mod classical;
pub mod cli;
pub mod closure;
pub mod doc;
pub mod error;
pub mod fixtures;
pub mod iso;
pub mod order;
pub mod report;
pub mod sphere;
pub mod sps;
pub mod stateset;
pub mod topological;

pub use closure::{FiniteClosureSystem, FiniteTopology};
pub use error::{Error, Result};
pub use order::{FiniteLattice, Lattice, OrthoMap};
pub use sps::{FiniteSps, SpsCandidate, TestPair};
pub use stateset::StateSet;
