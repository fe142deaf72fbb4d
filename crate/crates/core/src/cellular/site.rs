use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, Mutex, OnceLock};

use crate::skeletal::is_negative;
use crate::theta::{enumerate_cells, Cell, HomTable, ThetaMap};

/// The full subcategory of Θ on cells of degree at most `bound`, with
/// every morphism numbered.
#[derive(Debug)]
pub struct Site {
    bound: usize,
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
    maps: Vec<ThetaMap>,
    ends: Vec<(usize, usize)>,
    pairs: Vec<Range<usize>>,
    lookup: HashMap<ThetaMap, usize>,
    identities: Vec<usize>,
    degeneracies: Vec<bool>,
}

impl Site {
    /// The site at `bound`, built once per process.
    pub fn get(bound: usize) -> Arc<Site> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Site>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(s) = cache.lock().expect("site cache").get(&bound) {
            return s.clone();
        }
        let site = Arc::new(Site::build(bound));
        cache.lock().expect("site cache").entry(bound).or_insert(site).clone()
    }

    fn build(bound: usize) -> Site {
        let cells = enumerate_cells(bound);
        let index = cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let n = cells.len();
        let mut homs = HomTable::default();
        let mut maps = Vec::new();
        let mut ends = Vec::new();
        let mut pairs = Vec::with_capacity(n * n);
        for (s, sc) in cells.iter().enumerate() {
            for (t, tc) in cells.iter().enumerate() {
                let start = maps.len();
                for m in homs.hom(sc, tc) {
                    maps.push(m.clone());
                    ends.push((s, t));
                }
                pairs.push(start..maps.len());
            }
        }
        let lookup: HashMap<ThetaMap, usize> = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let identities = cells.iter().map(|c| lookup[&ThetaMap::identity(c)]).collect();
        let degeneracies = maps.iter().map(|m| !m.is_identity() && is_negative(m)).collect();
        Site { bound, cells, index, maps, ends, pairs, lookup, identities, degeneracies }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn cell_index(&self, c: &Cell) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn map_count(&self) -> usize {
        self.maps.len()
    }

    pub fn map(&self, id: usize) -> &ThetaMap {
        &self.maps[id]
    }

    /// `(source, target)` cell indices of a morphism.
    pub fn ends(&self, id: usize) -> (usize, usize) {
        self.ends[id]
    }

    pub fn hom_ids(&self, s: usize, t: usize) -> Range<usize> {
        self.pairs[s * self.cells.len() + t].clone()
    }

    pub fn map_id(&self, m: &ThetaMap) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn identity(&self, c: usize) -> usize {
        self.identities[c]
    }

    /// Non-identity maps in `Θ⁻`.
    pub fn is_degeneracy(&self, id: usize) -> bool {
        self.degeneracies[id]
    }

    /// `β ∘ α` by ids.
    pub fn compose(&self, beta: usize, alpha: usize) -> usize {
        let m = self.maps[beta].compose(&self.maps[alpha]).expect("composable ids");
        self.lookup[&m]
    }
}
