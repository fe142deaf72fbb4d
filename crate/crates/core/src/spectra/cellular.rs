use crate::cellular::{sigma_j, TruncatedPresheaf};
use crate::error::{Error, Result};

use super::stable::{stable_cell_normalize, StableCell};

/// `X, Σ_J X, …, Σ_J^depth X` with identity structure maps. A cell `T`
/// of level `k` names the object `(-k, T)` of `Θ_st`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaStWindow {
    pub levels: Vec<TruncatedPresheaf>,
}

pub fn cellular_suspension_prefix(x: &TruncatedPresheaf, depth: usize) -> Result<ThetaStWindow> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    let mut levels = vec![x.clone()];
    for _ in 0..depth {
        levels.push(sigma_j(levels.last().expect("nonempty"))?);
    }
    Ok(ThetaStWindow { levels })
}

impl ThetaStWindow {
    /// Stable names of the cells carrying a non-basepoint at `level`.
    pub fn stable_cells(&self, level: usize) -> Vec<StableCell> {
        let x = &self.levels[level];
        let site = x.site();
        let mut out: Vec<StableCell> =
            (0..site.cells().len()).filter(|&c| x.sizes()[c] > 1).map(|c| stable_cell_normalize(-(level as i64), site.cell(c))).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Each cell's stable name reproduces the cell at its own level and
    /// its `J`-shift one level up, where the carrier is the same set.
    pub fn check_round_trips(&self) -> Result<()> {
        for (k, x) in self.levels.iter().enumerate() {
            let site = x.site();
            for (c, cell) in site.cells().iter().enumerate() {
                let name = stable_cell_normalize(-(k as i64), cell);
                if name.at_level(k as i64).as_ref() != Some(cell) {
                    return Err(Error::Invalid(format!("{name} does not return {cell} at level {k}")));
                }
                let Some(up) = self.levels.get(k + 1) else { continue };
                let shifted = name.at_level(k as i64 + 1).expect("defined one level up");
                if shifted != cell.shift() || up.size_at(&shifted)? != x.sizes()[c] {
                    return Err(Error::Invalid(format!("{name} changes between levels {k} and {}", k + 1)));
                }
            }
        }
        Ok(())
    }
}
