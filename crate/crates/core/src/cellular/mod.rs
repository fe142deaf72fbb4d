//! Truncated presheaves of pointed sets on Θ: representables, boundaries,
//! finite colimits, smash products, the suspension `Σ_J` and loops `Ω`.

mod constructions;
mod presheaf;
mod site;
mod suspension;

pub use constructions::{
    boundary, boundary_by_coequalizer, circle, coequalizer, coproduct, product, pushout, quotient, representable, representable_map, smash,
    smash_map, subobject,
};
pub use presheaf::{presheaf_map_count, presheaf_map_enumerate, PresheafMap, TruncatedPresheaf};
pub use site::Site;
pub use suspension::{
    adjunct_flat, adjunct_sharp, comparison_square, edge_projection, omega, omega_map, piecewise_pair, sigma_j, sigma_j_by_coend,
    sigma_j_map, suspension_comparison, suspension_comparison_piecewise, suspension_nondegenerate_formula,
};

#[cfg(test)]
mod tests;
