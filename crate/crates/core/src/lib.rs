//! Cyclic codes of odd length over Z4: factor tables, duals, hulls, hull
//! types and 2-dimensions, and the average hull 2-dimension.

pub mod analytics;
pub mod arith;
pub mod cli;
pub mod code;
pub mod error;
pub mod factor;
pub mod oracle;
pub mod poly;
pub mod reference;
pub mod verify;

pub use error::{Error, Result};
