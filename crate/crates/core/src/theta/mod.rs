//! Cells and morphisms of Θ.

mod cell;
mod map;

pub use cell::{census, enumerate_cells, Cell, GlobularSum};
pub use map::{assemble_glued_map, assemble_shifted, edge_inclusion, globe_i, globe_s, globe_t, HomTable, ThetaMap};

pub(crate) use cell::parse_cell;
pub(crate) use map::parse_full;
