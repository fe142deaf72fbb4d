//! Kan's suspension of pointed simplicial sets, the stable categories
//! `Δ_st` and `Θ_st`, and finite windows of combinatorial spectra.

mod cellular;
mod simplicial;
mod stable;
mod window;

#[cfg(test)]
mod tests;

pub use cellular::{cellular_suspension_prefix, ThetaStWindow};
pub use simplicial::{sigma_k, sigma_k_representable_oracle, PointedSimplicialSet};
pub use stable::{stable_cell_normalize, stable_compose, stable_theta_compose, StableCell, StableSimplexMap, StableThetaMap};
pub use window::{is_kan_spectrum, suspension_spectrum_prefix, CellStatus, KanReport, KanSpectrumWindow};
