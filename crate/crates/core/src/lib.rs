//! Exact traces of multiplication maps, sparse resultants and global residues
//! for zero-dimensional polynomial systems.

pub mod error;
pub mod latgeom;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod registry;
pub mod resultants;
pub mod traceform;

pub use error::{Error, Result};
