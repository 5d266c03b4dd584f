pub mod basis;
pub mod certify;
pub mod connection;
pub mod derivation;
pub mod error;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
