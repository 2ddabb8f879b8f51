//! Relative cohomology `H^n(G,𝒮;A)` of a finite group with a family of
//! subgroups, relative extensions, and finite lifting problems.

pub mod catalog;
pub mod cli;
pub mod cochain;
pub mod error;
pub mod extension;
pub mod group;
pub mod input;
pub mod lifting;
pub mod module;
pub mod oracle;
pub mod smith;
pub mod transfer;

pub use error::{Error, Result};
