//! Entanglement detection from coincidence statistics of incomplete quantum 2-designs.

pub mod bipartite;
pub mod bounds;
pub mod correlations;
pub mod designs;
pub mod error;
pub mod io;
pub mod matrix;
pub mod sampling;
pub mod scan;
pub mod settings;
pub mod sources;
pub mod states;
pub mod tables;

pub use error::{Error, Result};
