use std::fmt;

use crate::error::{Error, Result};
use crate::simplex::SimplexMap;
use crate::theta::{Cell, ThetaMap};

/// A morphism `z -> w` of `Δ_st`, stored at a level `k ≥ 0` as a map
/// `[z+k] -> [w+k]`. Kan's shift `K` appends a top point sent to the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableSimplexMap {
    src: i64,
    tgt: i64,
    level: i64,
    map: SimplexMap,
}

fn kan_shift(phi: &SimplexMap) -> SimplexMap {
    let mut values = phi.values().to_vec();
    values.push(phi.tgt() + 1);
    SimplexMap::new(phi.src() + 1, phi.tgt() + 1, values).expect("extension by the top is monotone")
}

fn kan_unshift(phi: &SimplexMap) -> Option<SimplexMap> {
    let (m, n) = (phi.src(), phi.tgt());
    if m == 0 || n == 0 || phi.apply(m) != n || phi.apply(m - 1) == n {
        return None;
    }
    Some(SimplexMap::new(m - 1, n - 1, phi.values()[..m].to_vec()).expect("restriction"))
}

impl StableSimplexMap {
    /// The class of `map : [z+k] -> [w+k]`, normalized.
    pub fn new(src: i64, tgt: i64, level: i64, map: SimplexMap) -> Result<StableSimplexMap> {
        if level < 0 || src + level < 0 || tgt + level < 0 {
            return Err(Error::Invalid(format!("level {level} too low for degrees {src}, {tgt}")));
        }
        if map.src() as i64 != src + level || map.tgt() as i64 != tgt + level {
            return Err(Error::Mismatch(format!("[{}] -> [{}] is not a map {src} -> {tgt} at level {level}", map.src(), map.tgt())));
        }
        Ok(StableSimplexMap { src, tgt, level, map }.normalize())
    }

    pub fn identity(z: i64) -> StableSimplexMap {
        let level = (-z).max(0);
        StableSimplexMap { src: z, tgt: z, level, map: SimplexMap::identity((z + level) as usize) }
    }

    /// The generator `d^i : z -> z+1`.
    pub fn coface(z: i64, i: usize) -> StableSimplexMap {
        let level = (-z).max(i as i64 - z - 1).max(0);
        let n = (z + 1 + level) as usize;
        StableSimplexMap { src: z, tgt: z + 1, level, map: SimplexMap::coface(n, i).expect("index in range") }.normalize()
    }

    /// The generator `s^j : z+1 -> z`.
    pub fn codegeneracy(z: i64, j: usize) -> StableSimplexMap {
        let level = (-z).max(j as i64 - z).max(0);
        let n = (z + level) as usize;
        StableSimplexMap { src: z + 1, tgt: z, level, map: SimplexMap::codegeneracy(n, j).expect("index in range") }.normalize()
    }

    pub fn src(&self) -> i64 {
        self.src
    }

    pub fn tgt(&self) -> i64 {
        self.tgt
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn map(&self) -> &SimplexMap {
        &self.map
    }

    /// The representative at a level at least the current one.
    pub fn at_level(&self, level: i64) -> Result<SimplexMap> {
        if level < self.level {
            return Err(Error::Invalid(format!("level {level} is below the normal level {}", self.level)));
        }
        Ok((self.level..level).fold(self.map.clone(), |m, _| kan_shift(&m)))
    }

    fn normalize(mut self) -> StableSimplexMap {
        while self.level > 0 {
            match kan_unshift(&self.map) {
                Some(m) => {
                    self.map = m;
                    self.level -= 1;
                }
                None => break,
            }
        }
        self
    }
}

/// `β ∘ α`, computed at the larger of the two levels.
pub fn stable_compose(beta: &StableSimplexMap, alpha: &StableSimplexMap) -> Result<StableSimplexMap> {
    if alpha.tgt != beta.src {
        return Err(Error::Mismatch(format!("{} -> {} then {} -> {}", alpha.src, alpha.tgt, beta.src, beta.tgt)));
    }
    let level = alpha.level.max(beta.level);
    let map = beta.at_level(level)?.compose(&alpha.at_level(level)?)?;
    Ok(StableSimplexMap { src: alpha.src, tgt: beta.tgt, level, map }.normalize())
}

impl fmt::Display for StableSimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} @{} ", self.src, self.tgt, self.level)?;
        let v: Vec<String> = self.map.values().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(" "))
    }
}

/// An object of `Θ_st`: a cell with no leading `J`, placed at `z`.
/// `(z, J T)` and `(z + 1, T)` name the same object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableCell {
    z: i64,
    base: Cell,
}

impl StableCell {
    pub fn z(&self) -> i64 {
        self.z
    }

    pub fn base(&self) -> &Cell {
        &self.base
    }

    /// The representative `J^{k+z} T` at level `k`, if `k + z ≥ 0`.
    pub fn at_level(&self, level: i64) -> Option<Cell> {
        let n = level + self.z;
        (n >= 0).then(|| (0..n).fold(self.base.clone(), |c, _| c.shift()))
    }

    /// The least level at which [`StableCell::at_level`] is defined.
    pub fn min_level(&self) -> i64 {
        (-self.z).max(0)
    }
}

/// Strips every leading `J`, raising `z` once per strip.
pub fn stable_cell_normalize(z: i64, t: &Cell) -> StableCell {
    let mut base = t;
    let mut z = z;
    while let Some(inner) = base.unshift() {
        base = inner;
        z += 1;
    }
    StableCell { z, base: base.clone() }
}

impl fmt::Display for StableCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z, self.base)
    }
}

/// A morphism of `Θ_st`, stored at a level `k ≥ 0` as a Θ-map between the
/// level-`k` representatives of its ends; normal forms strip common `J`s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableThetaMap {
    src: StableCell,
    tgt: StableCell,
    level: i64,
    map: ThetaMap,
}

impl StableThetaMap {
    pub fn new(src: StableCell, tgt: StableCell, level: i64, map: ThetaMap) -> Result<StableThetaMap> {
        let (s, t) = match (src.at_level(level), tgt.at_level(level)) {
            (Some(s), Some(t)) if level >= 0 => (s, t),
            _ => return Err(Error::Invalid(format!("level {level} too low for {src} -> {tgt}"))),
        };
        if *map.src() != s || *map.tgt() != t {
            return Err(Error::Mismatch(format!("{} is not a map {s} -> {t}", map.to_full_string())));
        }
        Ok(StableThetaMap { src, tgt, level, map }.normalize())
    }

    /// The class of a Θ-map `S -> T` placed at level 0.
    pub fn from_theta(map: &ThetaMap) -> StableThetaMap {
        let src = stable_cell_normalize(0, map.src());
        let tgt = stable_cell_normalize(0, map.tgt());
        StableThetaMap { src, tgt, level: 0, map: map.clone() }.normalize()
    }

    pub fn identity(c: &StableCell) -> StableThetaMap {
        let level = c.min_level();
        let cell = c.at_level(level).expect("defined at its least level");
        StableThetaMap { src: c.clone(), tgt: c.clone(), level, map: ThetaMap::identity(&cell) }.normalize()
    }

    pub fn src(&self) -> &StableCell {
        &self.src
    }

    pub fn tgt(&self) -> &StableCell {
        &self.tgt
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn map(&self) -> &ThetaMap {
        &self.map
    }

    pub fn at_level(&self, level: i64) -> Result<ThetaMap> {
        if level < self.level {
            return Err(Error::Invalid(format!("level {level} is below the normal level {}", self.level)));
        }
        Ok((self.level..level).fold(self.map.clone(), |m, _| m.shift()))
    }

    fn normalize(mut self) -> StableThetaMap {
        while self.level > self.src.min_level() && self.level > self.tgt.min_level() {
            match self.map.unshift() {
                Some(m) => {
                    self.map = m.clone();
                    self.level -= 1;
                }
                None => break,
            }
        }
        self
    }
}

/// `β ∘ α` in `Θ_st`.
pub fn stable_theta_compose(beta: &StableThetaMap, alpha: &StableThetaMap) -> Result<StableThetaMap> {
    if alpha.tgt != beta.src {
        return Err(Error::Mismatch(format!("{} then {}", alpha.tgt, beta.src)));
    }
    let level = alpha.level.max(beta.level);
    let map = beta.at_level(level)?.compose(&alpha.at_level(level)?)?;
    Ok(StableThetaMap { src: alpha.src.clone(), tgt: beta.tgt.clone(), level, map }.normalize())
}

impl fmt::Display for StableThetaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} @{} {}", self.src, self.tgt, self.level, self.map)
    }
}
