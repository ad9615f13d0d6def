//! Numerical verification of weak metric f-structures on explicit charts.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod fstructure;
pub mod geometry;
pub mod jets;
pub mod multilinear;
pub mod verify;

pub use error::{Error, Result};
