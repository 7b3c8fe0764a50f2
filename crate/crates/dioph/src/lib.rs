//! Command-line front end for `dioph-core`: every command prints one JSON
//! report whose points have been re-checked against their equations.

pub mod cli;
pub mod json;
pub mod report;

pub use report::{RunReport, Verification};
