pub mod arith;
pub mod arrangement;
pub mod cli;
pub mod groups;
pub mod krammer;
pub mod rep;
pub mod spec;
pub mod error;
pub mod form;

pub use error::{Error, Result};
