//! Exact combinatorics of Joyal's cell category Θ: cells and their maps,
//! skeletal factorizations, the shift `J`, truncated pointed cellular sets
//! with the suspension `Σ_J` and loops `Ω`, and combinatorial spectra.

pub mod cellular;
pub mod error;
pub mod gamma;
pub mod shift;
pub mod simplex;
pub mod skeletal;
pub mod spectra;
mod text;

#[cfg(test)]
mod proptests;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
