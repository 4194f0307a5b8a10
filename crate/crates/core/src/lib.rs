//! Exact computation of canonical bases for quantum groups of types A1 and A2,
//! their highest-weight modules and tensor products, and the framed
//! construction relating the two.

pub mod canonical;
pub mod cartan;
pub mod coeff;
pub mod crystal;
pub mod error;
pub mod falg;
pub mod framed;
pub mod hwmodule;
pub mod linalg;
pub mod memo;
pub mod par;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};

/// Library version, recorded in reports and cache files.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
