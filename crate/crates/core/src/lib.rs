//! Exact symbolic computation with the Lie algebra of differential operators
//! on the circle, its central extension, and several of its modules.

pub mod cli;
mod closure;
pub mod error;
pub mod hwmod;
pub mod json;
pub mod liealg;
pub mod parse;
pub mod scalars;
pub mod suites;
pub mod tensor;
pub mod umod;

pub use error::{Error, Result};
