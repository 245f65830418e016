pub mod bits;
pub mod clisvc;
pub mod error;
pub mod gf2;
pub mod hyptess;
pub mod lattice3;
pub mod mobility;
pub mod opgen;
pub mod paulis;
pub mod ycode;

pub use error::{Error, Result};
