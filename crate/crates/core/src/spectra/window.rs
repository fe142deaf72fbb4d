use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::text::Scanner;

use super::simplicial::{sigma_k, PointedSimplicialSet};

/// A finite window of a pointed presheaf on `Δ_st`: degrees
/// `z_min ..= z_max`, face and degeneracy actions with index at most the
/// operator bound (absent entries are unknown), and optional declared
/// vanishing bounds. Element 0 of each degree is the basepoint.
///
/// `faces[(i, z)]` is the action of `d^i : z -> z+1`, a map
/// `X(z+1) -> X(z)`; `degeneracies[(j, z)]` is the action of
/// `s^j : z+1 -> z`, a map `X(z) -> X(z+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanSpectrumWindow {
    pub z_min: i64,
    pub z_max: i64,
    pub opbound: usize,
    pub sizes: Vec<usize>,
    pub faces: BTreeMap<(usize, i64), Vec<usize>>,
    pub degeneracies: BTreeMap<(usize, i64), Vec<usize>>,
    pub vanishing: BTreeMap<(i64, usize), usize>,
}

impl KanSpectrumWindow {
    /// The window whose every degree is the basepoint, with all operators.
    pub fn trivial(z_min: i64, z_max: i64, opbound: usize) -> KanSpectrumWindow {
        let mut w = KanSpectrumWindow {
            z_min,
            z_max,
            opbound,
            sizes: vec![1; (z_max - z_min + 1) as usize],
            faces: BTreeMap::new(),
            degeneracies: BTreeMap::new(),
            vanishing: BTreeMap::new(),
        };
        for z in z_min..z_max {
            for i in 0..=opbound {
                w.faces.insert((i, z), vec![0]);
                w.degeneracies.insert((i, z), vec![0]);
            }
        }
        w
    }

    /// `|X(z)|`, basepoint included.
    pub fn size(&self, z: i64) -> usize {
        self.sizes[(z - self.z_min) as usize]
    }

    /// `d^i x` for `x ∈ X(z+1)`, when known.
    pub fn face(&self, i: usize, z: i64, x: usize) -> Option<usize> {
        self.faces.get(&(i, z)).map(|v| v[x])
    }

    /// `s^j x` for `x ∈ X(z)`, when known.
    pub fn degeneracy(&self, j: usize, z: i64, x: usize) -> Option<usize> {
        self.degeneracies.get(&(j, z)).map(|v| v[x])
    }

    /// Degrees inside the window, operator shapes, basepoints.
    pub fn check_shape(&self) -> Result<()> {
        if self.z_min > self.z_max || self.sizes.len() as i64 != self.z_max - self.z_min + 1 {
            return Err(Error::Invalid("degree range and sizes disagree".into()));
        }
        if self.sizes.contains(&0) {
            return Err(Error::Invalid("every degree needs a basepoint".into()));
        }
        let inside = |z: i64| self.z_min <= z && z < self.z_max;
        for (what, table, from, to) in [("d", &self.faces, 1, 0), ("s", &self.degeneracies, 0, 1)] {
            for (&(i, z), images) in table {
                if i > self.opbound || !inside(z) {
                    return Err(Error::Invalid(format!("{what} {i} {z} lies outside the window")));
                }
                if images.len() != self.size(z + from) || images.iter().any(|&v| v >= self.size(z + to)) {
                    return Err(Error::Invalid(format!("{what} {i} {z} has the wrong shape")));
                }
                if images[0] != 0 {
                    return Err(Error::Invalid(format!("{what} {i} {z} moves the basepoint")));
                }
            }
        }
        for &(z, x) in self.vanishing.keys() {
            if z < self.z_min || z > self.z_max || x == 0 || x >= self.size(z) {
                return Err(Error::Invalid(format!("vanishing bound for a missing cell {x} in degree {z}")));
            }
        }
        Ok(())
    }

    /// The simplicial identities among all known operators.
    pub fn check_identities(&self) -> Result<()> {
        let b = self.opbound;
        let fail = |what: &str, z: i64| Err(Error::Invalid(format!("identity {what} fails at degree {z}")));
        for z in self.z_min..self.z_max - 1 {
            for j in 1..=b {
                for i in 0..j {
                    for x in 0..self.size(z + 2) {
                        let lhs = self.face(j, z + 1, x).and_then(|y| self.face(i, z, y));
                        let rhs = self.face(i, z + 1, x).and_then(|y| self.face(j - 1, z, y));
                        if let (Some(l), Some(r)) = (lhs, rhs) {
                            if l != r {
                                return fail("d_i d_j = d_{j-1} d_i", z);
                            }
                        }
                    }
                }
            }
        }
        for z in self.z_min..self.z_max {
            for j in 0..=b {
                for i in 0..=b {
                    for x in 0..self.size(z) {
                        let Some(lhs) = self.degeneracy(j, z, x).and_then(|y| self.face(i, z, y)) else { continue };
                        let rhs = if i == j || i == j + 1 {
                            Some(x)
                        } else if z == self.z_min {
                            None
                        } else if i < j {
                            self.face(i, z - 1, x).and_then(|y| self.degeneracy(j - 1, z - 1, y))
                        } else {
                            self.face(i - 1, z - 1, x).and_then(|y| self.degeneracy(j, z - 1, y))
                        };
                        if rhs.is_some_and(|r| r != lhs) {
                            return fail("d_i s_j", z);
                        }
                    }
                }
            }
        }
        for z in self.z_min..self.z_max - 1 {
            for j in 0..b {
                for i in 0..=j {
                    for x in 0..self.size(z) {
                        let lhs = self.degeneracy(j, z, x).and_then(|y| self.degeneracy(i, z + 1, y));
                        let rhs = self.degeneracy(i, z, x).and_then(|y| self.degeneracy(j + 1, z + 1, y));
                        if let (Some(l), Some(r)) = (lhs, rhs) {
                            if l != r {
                                return fail("s_i s_j = s_{j+1} s_i", z);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// How a cell fared against the local-finiteness condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    /// The declared bound `m` was checked for every face index `m ..= opbound`.
    Certified(usize),
    /// Faces vanish from the given index as far as the window shows, but
    /// the bound was not declared or not every face past it is known.
    NotRefuted(usize),
    /// Some face at or above the bound is not the basepoint, or no face
    /// in the window vanishes.
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanReport {
    pub opbound: usize,
    pub cells: Vec<(i64, usize, CellStatus)>,
}

impl KanReport {
    pub fn holds(&self) -> bool {
        self.cells.iter().all(|c| c.2 != CellStatus::Violated)
    }

    pub fn violators(&self) -> Vec<(i64, usize)> {
        self.cells.iter().filter(|c| c.2 == CellStatus::Violated).map(|c| (c.0, c.1)).collect()
    }

    pub fn certified(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c.2, CellStatus::Certified(_))).count()
    }

    pub fn not_refuted(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c.2, CellStatus::NotRefuted(_))).count()
    }
}

impl fmt::Display for KanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kan spectrum: {}", if self.holds() { "holds" } else { "fails" })?;
        writeln!(f, "operator bound {}: faces beyond it are not checked", self.opbound)?;
        writeln!(f, "certified {}, not refuted {}, violators {}", self.certified(), self.not_refuted(), self.violators().len())?;
        for (z, x) in self.violators() {
            writeln!(f, "violator: degree {z} cell {x}")?;
        }
        Ok(())
    }
}

/// Checks `d^{m+i} x = •` for every non-basepoint cell and every face in
/// the window. Malformed windows and broken identities are errors, not
/// stability failures.
pub fn is_kan_spectrum(w: &KanSpectrumWindow) -> Result<KanReport> {
    w.check_shape()?;
    w.check_identities()?;
    let b = w.opbound;
    let mut cells = Vec::new();
    for z in w.z_min..=w.z_max {
        for x in 1..w.size(z) {
            let faces: Vec<Option<usize>> = (0..=b).map(|i| if z > w.z_min { w.face(i, z - 1, x) } else { None }).collect();
            let vanishes_from = |m: usize| faces[m.min(b + 1)..].iter().all(|f| f.is_none_or(|v| v == 0));
            let any_known = faces.iter().any(Option::is_some);
            let status = match w.vanishing.get(&(z, x)) {
                Some(&m) if !vanishes_from(m) => CellStatus::Violated,
                Some(&m) if m <= b && faces[m..].iter().all(Option::is_some) => CellStatus::Certified(m),
                Some(&m) => CellStatus::NotRefuted(m),
                None if !any_known => CellStatus::NotRefuted(b + 1),
                None => match (0..=b).find(|&m| vanishes_from(m) && faces[m].is_some()) {
                    Some(m) => CellStatus::NotRefuted(m),
                    None => CellStatus::Violated,
                },
            };
            cells.push((z, x, status));
        }
    }
    Ok(KanReport { opbound: b, cells })
}

/// The spectrum of `Σ_K^depth X` with identity structure maps, seen
/// from level `depth`: `X(z)` is the set of `(z + depth)`-cells, for
/// `-depth ≤ z ≤ dim X`. Faces past the dimension are the basepoint;
/// degeneracies past it live at higher levels and are left unknown.
pub fn suspension_spectrum_prefix(x: &PointedSimplicialSet, depth: usize) -> Result<(KanSpectrumWindow, Vec<PointedSimplicialSet>)> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be at least 1".into()));
    }
    let mut levels = vec![x.clone()];
    for _ in 0..depth {
        levels.push(sigma_k(levels.last().expect("nonempty")));
    }
    let top = levels.last().expect("nonempty");
    let d = depth as i64;
    let (z_min, z_max) = (-d, x.dim() as i64);
    let opbound = (z_max + d + 1) as usize;
    let dim = |z: i64| (z + d) as usize;
    let mut w = KanSpectrumWindow {
        z_min,
        z_max,
        opbound,
        sizes: (z_min..=z_max).map(|z| top.sizes()[dim(z)]).collect(),
        faces: BTreeMap::new(),
        degeneracies: BTreeMap::new(),
        vanishing: BTreeMap::new(),
    };
    for z in z_min..z_max {
        let p = dim(z + 1);
        for i in 0..=opbound {
            let images = (0..top.sizes()[p]).map(|e| if i <= p { top.face(p, i, e) } else { 0 }).collect();
            w.faces.insert((i, z), images);
        }
        for j in 0..=dim(z) {
            w.degeneracies.insert((j, z), (0..top.sizes()[dim(z)]).map(|e| top.degeneracy(dim(z), j, e)).collect());
        }
    }
    for z in z_min..=z_max {
        for e in 1..w.size(z) {
            w.vanishing.insert((z, e), dim(z) + 1);
        }
    }
    Ok((w, levels))
}

impl fmt::Display for KanSpectrumWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "window {}..{} opbound={}", self.z_min, self.z_max, self.opbound)?;
        for z in self.z_min..=self.z_max {
            writeln!(f, "deg {z} : {}", self.size(z))?;
        }
        for (&(i, z), v) in &self.faces {
            writeln!(f, "d {i} {z} : ({})", list(v))?;
        }
        for (&(j, z), v) in &self.degeneracies {
            writeln!(f, "s {j} {z} : ({})", list(v))?;
        }
        for (&(z, x), m) in &self.vanishing {
            writeln!(f, "van {z} {x} : {m}")?;
        }
        Ok(())
    }
}

impl FromStr for KanSpectrumWindow {
    type Err = Error;

    /// Reads the line format written by `Display`; `#` starts a comment.
    /// Degrees not listed have only the basepoint.
    fn from_str(text: &str) -> Result<KanSpectrumWindow> {
        let mut w: Option<KanSpectrumWindow> = None;
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let line = raw.split('#').next().unwrap_or("").trim_end();
            let base = offset;
            offset += raw.len();
            if line.trim().is_empty() {
                continue;
            }
            let mut s = Scanner::new(line);
            let parsed: Result<()> = (|| {
                if s.eat("window") {
                    let z_min = s.int()?;
                    s.expect("..")?;
                    let z_max = s.int()?;
                    s.expect("opbound")?;
                    s.expect("=")?;
                    let opbound = s.nat()?;
                    s.finish()?;
                    if z_max < z_min {
                        return parse_err(s.pos(), "empty degree range");
                    }
                    let mut fresh = KanSpectrumWindow::trivial(z_min, z_max, opbound);
                    fresh.faces.clear();
                    fresh.degeneracies.clear();
                    w = Some(fresh);
                    return Ok(());
                }
                let Some(win) = w.as_mut() else { return parse_err(s.pos(), "expected the window header first") };
                let in_range = |s: &Scanner, z: i64| {
                    if z < win.z_min || z > win.z_max {
                        parse_err(s.pos(), "degree outside the window")
                    } else {
                        Ok(())
                    }
                };
                if s.eat("deg") {
                    let z = s.int()?;
                    in_range(&s, z)?;
                    s.expect(":")?;
                    let k = s.nat()?;
                    s.finish()?;
                    win.sizes[(z - win.z_min) as usize] = k;
                } else if s.eat("van") {
                    let z = s.int()?;
                    in_range(&s, z)?;
                    let x = s.nat()?;
                    s.expect(":")?;
                    let m = s.nat()?;
                    s.finish()?;
                    win.vanishing.insert((z, x), m);
                } else {
                    let face = if s.eat("d") {
                        true
                    } else if s.eat("s") {
                        false
                    } else {
                        return parse_err(s.pos(), "expected window, deg, d, s or van");
                    };
                    let i = s.nat()?;
                    let z = s.int()?;
                    in_range(&s, z)?;
                    s.expect(":")?;
                    s.expect("(")?;
                    let mut images = Vec::new();
                    while !s.eat(")") {
                        images.push(s.nat()?);
                    }
                    s.finish()?;
                    let table = if face { &mut win.faces } else { &mut win.degeneracies };
                    if table.insert((i, z), images).is_some() {
                        return parse_err(s.pos(), "operator given twice");
                    }
                }
                Ok(())
            })();
            parsed.map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: base + pos, msg },
                other => other,
            })?;
        }
        let w = w.ok_or_else(|| Error::Parse { pos: 0, msg: "missing window header".into() })?;
        w.check_shape()?;
        Ok(w)
    }
}
