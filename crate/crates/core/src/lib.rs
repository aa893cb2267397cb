pub mod arith;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod eta;
pub mod identities;
pub mod partitions;
pub mod report;
pub mod series;

pub use error::{Error, Result};
