use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{parse_err, Error, Result};
use crate::text::Scanner;
use crate::theta::{parse_cell, parse_full, Cell};

use super::site::Site;

/// A presheaf of (optionally pointed) finite sets on the cells of degree
/// at most `bound`. When pointed, element `0` of every carrier is the
/// basepoint. `actions[m][x]` is `X(m)(x)` for the morphism numbered `m`
/// in the site.
#[derive(Clone, Debug)]
pub struct TruncatedPresheaf {
    site: Arc<Site>,
    pointed: bool,
    sizes: Arc<Vec<usize>>,
    actions: Arc<Vec<Vec<u32>>>,
    generated_in: Option<usize>,
}

impl PartialEq for TruncatedPresheaf {
    fn eq(&self, other: &Self) -> bool {
        self.bound() == other.bound() && self.pointed == other.pointed && self.sizes == other.sizes && self.actions == other.actions
    }
}

impl Eq for TruncatedPresheaf {}

impl TruncatedPresheaf {
    /// Builds a presheaf from carrier sizes and an action function
    /// `(morphism id, element of the target carrier) -> element of the
    /// source carrier`.
    pub(crate) fn from_fn(
        site: Arc<Site>,
        pointed: bool,
        sizes: Vec<usize>,
        generated_in: Option<usize>,
        mut act: impl FnMut(usize, usize) -> usize,
    ) -> TruncatedPresheaf {
        let actions = (0..site.map_count())
            .map(|m| {
                let (_, t) = site.ends(m);
                (0..sizes[t]).map(|x| act(m, x) as u32).collect()
            })
            .collect();
        TruncatedPresheaf { site, pointed, sizes: Arc::new(sizes), actions: Arc::new(actions), generated_in }
    }

    /// The presheaf whose only elements are basepoints.
    pub fn basepoint(bound: usize) -> TruncatedPresheaf {
        let site = Site::get(bound);
        let n = site.cells().len();
        TruncatedPresheaf::from_fn(site, true, vec![1; n], Some(0), |_, _| 0)
    }

    pub fn site(&self) -> &Arc<Site> {
        &self.site
    }

    pub fn bound(&self) -> usize {
        self.site.bound()
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `|X(T)|`, basepoint included.
    pub fn size_at(&self, t: &Cell) -> Result<usize> {
        let i = self.site.cell_index(t).ok_or_else(|| Error::OutOfBound(format!("{t} at bound {}", self.bound())))?;
        Ok(self.sizes[i])
    }

    pub fn act(&self, map_id: usize, x: usize) -> usize {
        self.actions[map_id][x] as usize
    }

    /// A degree in which the presheaf is known to be generated, if any.
    pub fn generated_in(&self) -> Option<usize> {
        self.generated_in
    }

    /// Generated by its cells of degree at most the bound, so that left
    /// Kan extensions computed from the truncation are exact.
    pub fn skeletal_complete(&self) -> bool {
        self.generated_in.is_some_and(|g| g <= self.bound())
    }

    pub(crate) fn with_generated_in(mut self, g: Option<usize>) -> Self {
        self.generated_in = g;
        self
    }

    /// Identity and composition laws over every composable pair, and
    /// basepoint preservation. Returns the first violation.
    pub fn check_functorial(&self) -> Result<()> {
        let site = &self.site;
        let n = site.cells().len();
        for c in 0..n {
            let id = site.identity(c);
            if self.actions[id].iter().enumerate().any(|(x, &y)| y as usize != x) {
                return Err(Error::Invalid(format!("identity of {} acts non-trivially", site.cell(c))));
            }
        }
        if self.pointed && self.actions.iter().any(|a| a.first().is_some_and(|&b| b != 0)) {
            return Err(Error::Invalid("an action moves the basepoint".into()));
        }
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    for a in site.hom_ids(s, t) {
                        for b in site.hom_ids(t, u) {
                            let ba = site.compose(b, a);
                            for x in 0..self.sizes[u] {
                                if self.act(ba, x) != self.act(a, self.act(b, x)) {
                                    return Err(Error::Invalid(format!(
                                        "composition law fails for {} then {}",
                                        site.map(a).to_full_string(),
                                        site.map(b).to_full_string()
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements of `X(T)` not of the form `π^* y` for a degeneracy `π`.
    pub fn nondegenerate(&self, t: usize) -> Vec<usize> {
        let site = &self.site;
        let mut degenerate = vec![false; self.sizes[t]];
        for u in 0..site.cells().len() {
            for m in site.hom_ids(t, u).filter(|&m| site.is_degeneracy(m)) {
                for y in 0..self.sizes[u] {
                    degenerate[self.act(m, y)] = true;
                }
            }
        }
        (0..self.sizes[t]).filter(|&x| !degenerate[x]).collect()
    }
}

fn images(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Fixture text: a header `presheaf bound=N pointed|unpointed [generated=g]`,
/// one `cell <cell> : k` line per cell, and one
/// `act <map> : (images)` line per non-identity map, listing `X(α)(x)`
/// for the elements `x` of the target carrier in order.
impl fmt::Display for TruncatedPresheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "presheaf bound={} {}", self.bound(), if self.pointed { "pointed" } else { "unpointed" })?;
        match self.generated_in {
            Some(g) => writeln!(f, " generated={g}")?,
            None => writeln!(f)?,
        }
        for (c, cell) in self.site.cells().iter().enumerate() {
            writeln!(f, "cell {cell} : {}", self.sizes[c])?;
        }
        for m in 0..self.site.map_count() {
            if !self.site.map(m).is_identity() {
                writeln!(f, "act {} : ({})", self.site.map(m).to_full_string(), images(&self.actions[m]))?;
            }
        }
        Ok(())
    }
}

impl FromStr for TruncatedPresheaf {
    type Err = Error;

    /// Cells left out have only the basepoint (or nothing, unpointed);
    /// every action on a nonempty carrier must be given. `#` comments.
    fn from_str(text: &str) -> Result<TruncatedPresheaf> {
        let mut head: Option<(Arc<Site>, bool, Option<usize>)> = None;
        let mut sizes: Vec<Option<usize>> = Vec::new();
        let mut actions: Vec<Option<Vec<u32>>> = Vec::new();
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let base = offset;
            offset += raw.len();
            let line = raw.split('#').next().unwrap_or("").trim_end();
            if line.trim().is_empty() {
                continue;
            }
            let mut sc = Scanner::new(line);
            let step: Result<()> = (|| {
                if sc.eat("presheaf") {
                    sc.expect("bound")?;
                    sc.expect("=")?;
                    let bound = sc.nat()?;
                    let pointed = if sc.eat("pointed") {
                        true
                    } else if sc.eat("unpointed") {
                        false
                    } else {
                        return parse_err(sc.pos(), "expected pointed or unpointed");
                    };
                    let generated = if sc.eat("generated") {
                        sc.expect("=")?;
                        Some(sc.nat()?)
                    } else {
                        None
                    };
                    sc.finish()?;
                    let site = Site::get(bound);
                    sizes = vec![None; site.cells().len()];
                    actions = vec![None; site.map_count()];
                    head = Some((site, pointed, generated));
                    return Ok(());
                }
                let Some((site, _, _)) = head.as_ref() else { return parse_err(sc.pos(), "expected the presheaf header first") };
                if sc.eat("cell") {
                    let at = sc.pos();
                    let cell = parse_cell(&mut sc)?;
                    sc.expect(":")?;
                    let k = sc.nat()?;
                    sc.finish()?;
                    let Some(c) = site.cell_index(&cell) else { return parse_err(at, format!("{cell} is above the bound")) };
                    if sizes[c].replace(k).is_some() {
                        return parse_err(at, "cell given twice");
                    }
                } else if sc.eat("act") {
                    let at = sc.pos();
                    let m = parse_full(&mut sc)?;
                    sc.expect(":")?;
                    sc.expect("(")?;
                    let mut v = Vec::new();
                    while !sc.eat(")") {
                        v.push(sc.nat()? as u32);
                    }
                    sc.finish()?;
                    let Some(id) = site.map_id(&m) else { return parse_err(at, "map is above the bound") };
                    if actions[id].replace(v).is_some() {
                        return parse_err(at, "action given twice");
                    }
                } else {
                    return parse_err(sc.pos(), "expected presheaf, cell or act");
                }
                Ok(())
            })();
            step.map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: base + pos, msg },
                other => other,
            })?;
        }
        let Some((site, pointed, generated_in)) = head else { return parse_err(0, "missing presheaf header") };
        let sizes: Vec<usize> = sizes.into_iter().map(|k| k.unwrap_or(usize::from(pointed))).collect();
        let mut table = Vec::with_capacity(actions.len());
        for (m, a) in actions.into_iter().enumerate() {
            let (s, t) = site.ends(m);
            let v = match a {
                Some(v) => v,
                None if site.map(m).is_identity() => (0..sizes[t] as u32).collect(),
                None if sizes[t] <= usize::from(pointed) => vec![0; sizes[t]],
                None => return Err(Error::Invalid(format!("missing action of {}", site.map(m).to_full_string()))),
            };
            if v.len() != sizes[t] || v.iter().any(|&y| y as usize >= sizes[s]) {
                return Err(Error::Invalid(format!("action of {} has the wrong shape", site.map(m).to_full_string())));
            }
            table.push(v);
        }
        let x = TruncatedPresheaf { site, pointed, sizes: Arc::new(sizes), actions: Arc::new(table), generated_in };
        x.check_functorial()?;
        Ok(x)
    }
}

/// A natural map of truncated presheaves, given cellwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMap {
    pub(crate) src: TruncatedPresheaf,
    pub(crate) tgt: TruncatedPresheaf,
    pub(crate) components: Vec<Vec<u32>>,
}

impl PresheafMap {
    /// Validates shapes, basepoints and naturality.
    pub fn new(src: TruncatedPresheaf, tgt: TruncatedPresheaf, components: Vec<Vec<u32>>) -> Result<PresheafMap> {
        let m = PresheafMap { src, tgt, components };
        m.check()?;
        Ok(m)
    }

    pub(crate) fn unchecked(src: TruncatedPresheaf, tgt: TruncatedPresheaf, components: Vec<Vec<u32>>) -> PresheafMap {
        let m = PresheafMap { src, tgt, components };
        debug_assert_eq!(m.check(), Ok(()));
        m
    }

    pub fn identity(x: &TruncatedPresheaf) -> PresheafMap {
        let components = x.sizes().iter().map(|&n| (0..n as u32).collect()).collect();
        PresheafMap { src: x.clone(), tgt: x.clone(), components }
    }

    pub fn src(&self) -> &TruncatedPresheaf {
        &self.src
    }

    pub fn tgt(&self) -> &TruncatedPresheaf {
        &self.tgt
    }

    pub fn apply(&self, cell: usize, x: usize) -> usize {
        self.components[cell][x] as usize
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn check(&self) -> Result<()> {
        let (x, y) = (&self.src, &self.tgt);
        if x.bound() != y.bound() || x.is_pointed() != y.is_pointed() {
            return Err(Error::Mismatch("presheaves over different sites".into()));
        }
        let site = x.site();
        for (c, comp) in self.components.iter().enumerate() {
            if comp.len() != x.sizes()[c] || comp.iter().any(|&v| v as usize >= y.sizes()[c]) {
                return Err(Error::Invalid(format!("component at {} has the wrong shape", site.cell(c))));
            }
            if x.is_pointed() && comp.first().is_some_and(|&b| b != 0) {
                return Err(Error::Invalid(format!("basepoint not preserved at {}", site.cell(c))));
            }
        }
        for m in 0..site.map_count() {
            let (s, t) = site.ends(m);
            for e in 0..x.sizes()[t] {
                if self.apply(s, x.act(m, e)) != y.act(m, self.apply(t, e)) {
                    return Err(Error::Invalid(format!("not natural along {}", site.map(m).to_full_string())));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PresheafMap) -> Result<PresheafMap> {
        if other.tgt != self.src {
            return Err(Error::Mismatch("presheaf maps are not composable".into()));
        }
        let components =
            other.components.iter().enumerate().map(|(c, comp)| comp.iter().map(|&e| self.components[c][e as usize]).collect()).collect();
        Ok(PresheafMap { src: other.src.clone(), tgt: self.tgt.clone(), components })
    }

    /// Cellwise injective.
    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|comp| {
            let mut seen = vec![false; self.tgt.sizes().iter().copied().max().unwrap_or(0)];
            comp.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().enumerate().all(|(c, comp)| {
            let mut seen = vec![false; self.tgt.sizes()[c]];
            comp.iter().for_each(|&v| seen[v as usize] = true);
            seen.into_iter().all(|b| b)
        })
    }
}

/// Every natural, basepoint-preserving map `X -> Y`, by backtracking over
/// cells in order of degree. Candidates for each element depend only on
/// the choices already made at lower cells.
pub fn presheaf_map_enumerate(x: &TruncatedPresheaf, y: &TruncatedPresheaf) -> Result<Vec<PresheafMap>> {
    let mut out = Vec::new();
    enumerate_with(x, y, |comps| out.push(PresheafMap { src: x.clone(), tgt: y.clone(), components: comps.to_vec() }))?;
    Ok(out)
}

/// `|Maps(X, Y)|` without keeping the maps.
pub fn presheaf_map_count(x: &TruncatedPresheaf, y: &TruncatedPresheaf) -> Result<usize> {
    let mut n = 0;
    enumerate_with(x, y, |_| n += 1)?;
    Ok(n)
}

fn enumerate_with(x: &TruncatedPresheaf, y: &TruncatedPresheaf, mut emit: impl FnMut(&[Vec<u32>])) -> Result<()> {
    if x.bound() != y.bound() || x.is_pointed() != y.is_pointed() {
        return Err(Error::Mismatch("presheaves over different sites".into()));
    }
    let n = x.site().cells().len();
    let mut comps: Vec<Vec<u32>> = vec![Vec::new(); n];
    descend(x, y, 0, &mut comps, &mut emit);
    Ok(())
}

fn candidates(x: &TruncatedPresheaf, y: &TruncatedPresheaf, t: usize, comps: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let site = x.site();
    (0..x.sizes()[t])
        .map(|e| {
            if x.is_pointed() && e == 0 {
                return vec![0];
            }
            (0..y.sizes()[t] as u32)
                .filter(|&v| {
                    (0..t).all(|s| {
                        site.hom_ids(s, t).all(|m| comps[s][x.act(m, e)] as usize == y.act(m, v as usize))
                            && site
                                .hom_ids(t, s)
                                .all(|m| (0..x.sizes()[s]).all(|z| x.act(m, z) != e || y.act(m, comps[s][z] as usize) == v as usize))
                    })
                })
                .collect()
        })
        .collect()
}

fn descend(x: &TruncatedPresheaf, y: &TruncatedPresheaf, t: usize, comps: &mut Vec<Vec<u32>>, emit: &mut dyn FnMut(&[Vec<u32>])) {
    if t == comps.len() {
        emit(comps);
        return;
    }
    let cands = candidates(x, y, t, comps);
    if cands.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut pick = vec![0usize; cands.len()];
    loop {
        comps[t] = pick.iter().zip(&cands).map(|(&p, c)| c[p]).collect();
        descend(x, y, t + 1, comps, emit);
        let mut k = 0;
        loop {
            if k == pick.len() {
                comps[t].clear();
                return;
            }
            pick[k] += 1;
            if pick[k] < cands[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}
