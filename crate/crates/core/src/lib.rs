//! Exact twisted homology of equivariant chain complexes over group rings,
//! with constructive acyclicity certificates for 3-manifold complexes.

pub mod alex;
pub mod chain;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod grp;
pub mod rep;
pub mod suites;
pub mod twist;

pub use error::{Error, Result};
