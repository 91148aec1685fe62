pub mod arith;
pub mod classical;
pub mod eisenstein;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod series;

pub use error::{Error, Result};
pub use exec::{Exec, Limits};
