//! Morphisms of Θ in wreath form `[f; c]`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::simplex::{parse_values, SimplexMap};
use crate::text::Scanner;

use super::cell::{parse_cell, Cell};

/// A map `S -> T`: a monotone `f : [width S] -> [width T]` and, for each
/// edge `i` of `S` and each `j` with `f(i-1) < j ≤ f(i)`, a component
/// `S_i -> T_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMap {
    src: Cell,
    tgt: Cell,
    simplicial: SimplexMap,
    components: Vec<Vec<ThetaMap>>,
}

impl ThetaMap {
    pub fn new(src: Cell, tgt: Cell, simplicial: SimplexMap, components: Vec<Vec<ThetaMap>>) -> Result<Self> {
        if simplicial.src() != src.width() || simplicial.tgt() != tgt.width() {
            return Err(Error::Invalid(format!("simplicial part {simplicial} does not match widths of {src} and {tgt}")));
        }
        if components.len() != src.width() {
            return Err(Error::Invalid(format!("{} component families for {} edges", components.len(), src.width())));
        }
        for (i0, fam) in components.iter().enumerate() {
            let i = i0 + 1;
            let range = simplicial.gamma_range(i);
            if fam.len() != range.clone().count() {
                return Err(Error::Invalid(format!("edge {i} needs {} components, got {}", range.count(), fam.len())));
            }
            for (c, j) in fam.iter().zip(range) {
                if c.src != *src.child(i) || c.tgt != *tgt.child(j) {
                    return Err(Error::Invalid(format!("component ({i},{j}) has the wrong endpoints")));
                }
            }
        }
        Ok(ThetaMap { src, tgt, simplicial, components })
    }

    pub fn identity(t: &Cell) -> ThetaMap {
        ThetaMap {
            src: t.clone(),
            tgt: t.clone(),
            simplicial: SimplexMap::identity(t.width()),
            components: t.children().iter().map(|c| vec![ThetaMap::identity(c)]).collect(),
        }
    }

    /// The vertex `v ∈ {0..width}` of `T`, as a map `[0] -> T`.
    pub fn vertex(t: &Cell, v: usize) -> Result<ThetaMap> {
        let f = SimplexMap::new(0, t.width(), vec![v])?;
        Ok(ThetaMap { src: Cell::point(), tgt: t.clone(), simplicial: f, components: Vec::new() })
    }

    /// The unique map `S -> [0]`.
    pub fn to_point(s: &Cell) -> ThetaMap {
        ThetaMap {
            src: s.clone(),
            tgt: Cell::point(),
            simplicial: SimplexMap::constant(s.width(), 0, 0).expect("constant"),
            components: vec![Vec::new(); s.width()],
        }
    }

    /// `J(α) = [id_[1]; α]`.
    pub fn shift(&self) -> ThetaMap {
        ThetaMap { src: self.src.shift(), tgt: self.tgt.shift(), simplicial: SimplexMap::identity(1), components: vec![vec![self.clone()]] }
    }

    /// If `self = J(α)`, returns `α`.
    pub fn unshift(&self) -> Option<&ThetaMap> {
        if self.src.width() == 1 && self.tgt.width() == 1 && self.simplicial.is_identity() {
            Some(&self.components[0][0])
        } else {
            None
        }
    }

    pub fn src(&self) -> &Cell {
        &self.src
    }

    pub fn tgt(&self) -> &Cell {
        &self.tgt
    }

    pub fn simplicial(&self) -> &SimplexMap {
        &self.simplicial
    }

    pub fn components(&self) -> &[Vec<ThetaMap>] {
        &self.components
    }

    /// The component `S_i -> T_j`, if `j ∈ F(f)(i)`.
    pub fn component(&self, i: usize, j: usize) -> Option<&ThetaMap> {
        let range = self.simplicial.gamma_range(i);
        if range.contains(&j) {
            Some(&self.components[i - 1][j - range.start()])
        } else {
            None
        }
    }

    /// Iterates `(i, j, component)`.
    pub fn iter_components(&self) -> impl Iterator<Item = (usize, usize, &ThetaMap)> {
        self.components.iter().enumerate().flat_map(move |(i0, fam)| {
            let start = *self.simplicial.gamma_range(i0 + 1).start();
            fam.iter().enumerate().map(move |(k, c)| (i0 + 1, start + k, c))
        })
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.simplicial.is_identity() && self.components.iter().all(|fam| fam[0].is_identity())
    }

    /// `self ∘ alpha`.
    pub fn compose(&self, alpha: &ThetaMap) -> Result<ThetaMap> {
        if alpha.tgt != self.src {
            return Err(Error::Mismatch(format!("cannot compose {} -> {} after {} -> {}", self.src, self.tgt, alpha.src, alpha.tgt)));
        }
        Ok(self.compose_unchecked(alpha))
    }

    fn compose_unchecked(&self, alpha: &ThetaMap) -> ThetaMap {
        let f = &alpha.simplicial;
        let r = &self.simplicial;
        let h = r.compose(f).expect("widths agree");
        let mut components = Vec::with_capacity(f.src());
        for i in 1..=f.src() {
            let mut fam = Vec::new();
            for k in f.gamma_range(i) {
                let g = &alpha.components[i - 1][k - f.apply(i - 1) - 1];
                for q in &self.components[k - 1] {
                    fam.push(q.compose_unchecked(g));
                }
            }
            components.push(fam);
        }
        ThetaMap { src: alpha.src.clone(), tgt: self.tgt.clone(), simplicial: h, components }
    }

    /// Every map `S -> T`, ordered by simplicial part and then
    /// lexicographically by components.
    pub fn hom(s: &Cell, t: &Cell) -> Vec<ThetaMap> {
        HomTable::default().hom(s, t).to_vec()
    }

    /// `|Hom(S, T)|` without materializing the maps.
    pub fn hom_count(s: &Cell, t: &Cell) -> usize {
        fn go(s: &Cell, t: &Cell, memo: &mut HashMap<(Cell, Cell), usize>) -> usize {
            if let Some(&n) = memo.get(&(s.clone(), t.clone())) {
                return n;
            }
            let mut total = 0;
            for f in SimplexMap::hom(s.width(), t.width()) {
                let mut prod = 1;
                for i in 1..=s.width() {
                    for j in f.gamma_range(i) {
                        prod *= go(s.child(i), t.child(j), memo);
                    }
                }
                total += prod;
            }
            memo.insert((s.clone(), t.clone()), total);
            total
        }
        go(s, t, &mut HashMap::new())
    }
}

/// A memo of hom-sets keyed by `(source, target)`.
#[derive(Default)]
pub struct HomTable {
    memo: HashMap<(Cell, Cell), Vec<ThetaMap>>,
}

impl HomTable {
    pub fn hom(&mut self, s: &Cell, t: &Cell) -> &[ThetaMap] {
        let key = (s.clone(), t.clone());
        if !self.memo.contains_key(&key) {
            let v = self.compute(s, t);
            self.memo.insert(key.clone(), v);
        }
        &self.memo[&key]
    }

    fn compute(&mut self, s: &Cell, t: &Cell) -> Vec<ThetaMap> {
        let mut out = Vec::new();
        for f in SimplexMap::hom(s.width(), t.width()) {
            let slots: Vec<(usize, usize)> = (1..=s.width()).flat_map(|i| f.gamma_range(i).map(move |j| (i, j))).collect();
            let choices: Vec<Vec<ThetaMap>> = slots.iter().map(|&(i, j)| self.hom(s.child(i), t.child(j)).to_vec()).collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            let total: usize = choices.iter().map(|c| c.len()).product();
            for mut code in 0..total {
                let mut picks = vec![0usize; slots.len()];
                for n in (0..slots.len()).rev() {
                    picks[n] = code % choices[n].len();
                    code /= choices[n].len();
                }
                let mut components: Vec<Vec<ThetaMap>> = vec![Vec::new(); s.width()];
                for (n, &(i, _)) in slots.iter().enumerate() {
                    components[i - 1].push(choices[n][picks[n]].clone());
                }
                out.push(ThetaMap { src: s.clone(), tgt: t.clone(), simplicial: f.clone(), components });
            }
        }
        out
    }
}

/// `s : n̄ -> (n+1)‾`, the source inclusion `[id; [id; ⋯ [d¹]]]`.
pub fn globe_s(n: usize) -> ThetaMap {
    globe_end(n, 0)
}

/// `t : n̄ -> (n+1)‾`, the target inclusion `[id; [id; ⋯ [d⁰]]]`.
pub fn globe_t(n: usize) -> ThetaMap {
    globe_end(n, 1)
}

fn globe_end(n: usize, v: usize) -> ThetaMap {
    let base = ThetaMap::vertex(&Cell::globe(1), v).expect("vertex of 1̄");
    (0..n).fold(base, |m, _| m.shift())
}

/// `i : (n+1)‾ -> n̄`, the degeneracy `[id; [id; ⋯ [s⁰]]]`.
pub fn globe_i(n: usize) -> ThetaMap {
    let base = ThetaMap::to_point(&Cell::globe(1));
    (0..n).fold(base, |m, _| m.shift())
}

/// The inclusion `[[1]; T_i] -> T` of the `i`-th edge (1-based).
pub fn edge_inclusion(t: &Cell, i: usize) -> Result<ThetaMap> {
    if i == 0 || i > t.width() {
        return Err(Error::Invalid(format!("{t} has no edge {i}")));
    }
    let f = SimplexMap::new(1, t.width(), vec![i - 1, i])?;
    ThetaMap::new(t.child(i).shift(), t.clone(), f, vec![vec![ThetaMap::identity(t.child(i))]])
}

fn shift_n(c: &Cell, d: usize) -> Cell {
    (0..d).fold(c.clone(), |c, _| c.shift())
}

fn shift_map_n(m: &ThetaMap, d: usize) -> ThetaMap {
    (0..d).fold(m.clone(), |m, _| m.shift())
}

/// Glues `pieces[i] : [[1]; T_i] -> S` into the map `T -> S`.
pub fn assemble_glued_map(t: &Cell, pieces: &[ThetaMap]) -> Result<ThetaMap> {
    assemble_shifted(0, t, pieces)
}

/// Glues `pieces[i] : J^d([[1]; T_i]) -> S` into `J^d(T) -> S`, the
/// colimit of the pieces along `J^d` of the shared vertices.
pub fn assemble_shifted(depth: usize, t: &Cell, pieces: &[ThetaMap]) -> Result<ThetaMap> {
    let k = t.width();
    if k == 0 {
        return Err(Error::Invalid("the point has no edge pieces".into()));
    }
    if pieces.len() != k {
        return Err(Error::Incompatible(format!("{} pieces for width {k}", pieces.len())));
    }
    let target = pieces[0].tgt().clone();
    for (i, p) in pieces.iter().enumerate() {
        if *p.src() != shift_n(&t.child(i + 1).shift(), depth) {
            return Err(Error::Incompatible(format!("piece {} has source {}", i + 1, p.src())));
        }
        if *p.tgt() != target {
            return Err(Error::Incompatible(format!("piece {} has target {}", i + 1, p.tgt())));
        }
    }
    for i in 1..k {
        let last = shift_map_n(&ThetaMap::vertex(&t.child(i).shift(), 1)?, depth);
        let first = shift_map_n(&ThetaMap::vertex(&t.child(i + 1).shift(), 0)?, depth);
        if pieces[i - 1].compose(&last)? != pieces[i].compose(&first)? {
            return Err(Error::Incompatible(format!("pieces {i} and {} disagree on their shared vertex", i + 1)));
        }
    }
    let out = build_glued(depth, t, pieces)?;
    for (i, p) in pieces.iter().enumerate() {
        let inc = shift_map_n(&edge_inclusion(t, i + 1)?, depth);
        debug_assert_eq!(&out.compose(&inc)?, p);
    }
    Ok(out)
}

fn build_glued(depth: usize, t: &Cell, pieces: &[ThetaMap]) -> Result<ThetaMap> {
    let target = pieces[0].tgt().clone();
    if depth == 0 {
        let mut values = vec![pieces[0].simplicial().apply(0)];
        values.extend(pieces.iter().map(|p| p.simplicial().apply(1)));
        let f = SimplexMap::new(t.width(), target.width(), values)?;
        let components = pieces.iter().map(|p| p.components()[0].clone()).collect();
        return ThetaMap::new(t.clone(), target, f, components);
    }
    let v = pieces[0].simplicial().clone();
    if pieces.iter().any(|p| *p.simplicial() != v) {
        return Err(Error::Incompatible("pieces differ on the shared edge".into()));
    }
    let mut fam = Vec::new();
    for slot in 0..pieces[0].components()[0].len() {
        let sub: Vec<ThetaMap> = pieces.iter().map(|p| p.components()[0][slot].clone()).collect();
        fam.push(build_glued(depth - 1, t, &sub)?);
    }
    ThetaMap::new(shift_n(t, depth), target, v, vec![fam])
}

impl fmt::Display for ThetaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{f=(")?;
        for (i, v) in self.simplicial.values().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "); c=[")?;
        for (i, fam) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "[")?;
            for (k, c) in fam.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]}}")
    }
}

impl ThetaMap {
    /// The self-describing form `S -> T : {…}`.
    pub fn to_full_string(&self) -> String {
        format!("{} -> {} : {}", self.src, self.tgt, self)
    }

    /// Parses the body grammar `{f=(…); c=[…]}` for a map `src -> tgt`.
    pub fn parse_body(text: &str, src: &Cell, tgt: &Cell) -> Result<ThetaMap> {
        let mut sc = Scanner::new(text);
        let m = parse_body(&mut sc, src, tgt)?;
        sc.finish()?;
        Ok(m)
    }

    /// Parses `S -> T : {…}`.
    pub fn parse_full(text: &str) -> Result<ThetaMap> {
        let mut sc = Scanner::new(text);
        let m = parse_full(&mut sc)?;
        sc.finish()?;
        Ok(m)
    }
}

pub(crate) fn parse_full(sc: &mut Scanner<'_>) -> Result<ThetaMap> {
    let src = parse_cell(sc)?;
    sc.expect("->")?;
    let tgt = parse_cell(sc)?;
    sc.expect(":")?;
    parse_body(sc, &src, &tgt)
}

pub(crate) fn parse_body(sc: &mut Scanner<'_>, src: &Cell, tgt: &Cell) -> Result<ThetaMap> {
    let at = sc.pos();
    sc.expect("{")?;
    sc.expect("f")?;
    sc.expect("=")?;
    let values = parse_values(sc)?;
    let f = SimplexMap::new(src.width(), tgt.width(), values).or_else(|e| parse_err(at, e.to_string()))?;
    sc.expect(";")?;
    sc.expect("c")?;
    sc.expect("=")?;
    sc.expect("[")?;
    let mut components = Vec::new();
    for i in 1..=src.width() {
        sc.expect("[")?;
        let mut fam = Vec::new();
        for j in f.gamma_range(i) {
            fam.push(parse_body(sc, src.child(i), tgt.child(j))?);
        }
        sc.expect("]")?;
        components.push(fam);
    }
    sc.expect("]")?;
    sc.expect("}")?;
    ThetaMap::new(src.clone(), tgt.clone(), f, components).or_else(|e| parse_err(at, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::cell::enumerate_cells;

    fn cell(s: &str) -> Cell {
        s.parse().unwrap()
    }

    #[test]
    fn globe_relations() {
        for n in 0..4 {
            let id = ThetaMap::identity(&Cell::globe(n));
            assert_eq!(globe_i(n).compose(&globe_s(n)).unwrap(), id);
            assert_eq!(globe_i(n).compose(&globe_t(n)).unwrap(), id);
        }
        let e = globe_s(1).compose(&globe_i(1)).unwrap();
        assert_eq!(e.compose(&e).unwrap(), e);
        assert!(!e.is_identity());
    }

    #[test]
    fn hom_counts() {
        assert_eq!(ThetaMap::hom(&Cell::point(), &Cell::point()).len(), 1);
        for t in enumerate_cells(4) {
            assert_eq!(ThetaMap::hom(&Cell::point(), &t).len(), t.width() + 1);
            assert_eq!(ThetaMap::hom(&t, &Cell::point()).len(), 1);
        }
        // Δ∫Δ and the reflexive-globe count agree: |Hom(1̄, 2̄)|
        assert_eq!(ThetaMap::hom(&Cell::globe(1), &Cell::globe(2)).len(), 4);
    }

    #[test]
    fn hom_count_matches_enumeration() {
        let cells = enumerate_cells(3);
        for s in &cells {
            for t in &cells {
                let h = ThetaMap::hom(s, t);
                assert_eq!(h.len(), ThetaMap::hom_count(s, t));
                let mut sorted = h.clone();
                sorted.dedup();
                assert_eq!(sorted.len(), h.len());
            }
        }
    }

    #[test]
    fn map_text_round_trip() {
        let cells = enumerate_cells(3);
        for s in &cells {
            for t in &cells {
                for m in ThetaMap::hom(s, t) {
                    assert_eq!(ThetaMap::parse_body(&m.to_string(), s, t).unwrap(), m);
                    assert_eq!(ThetaMap::parse_full(&m.to_full_string()).unwrap(), m);
                }
            }
        }
        assert_eq!(globe_s(1).to_string(), "{f=(0 1); c=[[{f=(0); c=[]}]]}");
        assert!(ThetaMap::parse_body("{f=(1 0); c=[[]]}", &Cell::globe(1), &Cell::globe(1)).is_err());
    }

    #[test]
    fn assemble_examples() {
        let t = cell("[0 0]");
        // k = 1: the piece itself
        let one = Cell::globe(1);
        let p = globe_s(0).compose(&ThetaMap::to_point(&one)).unwrap();
        assert_eq!(assemble_glued_map(&one, std::slice::from_ref(&p)).unwrap(), p);
        // constant pieces glue to a constant map
        let c = ThetaMap::vertex(&t, 1).unwrap().compose(&ThetaMap::to_point(&one)).unwrap();
        let out = assemble_glued_map(&t, &[c.clone(), c]).unwrap();
        assert_eq!(out, ThetaMap::vertex(&t, 1).unwrap().compose(&ThetaMap::to_point(&t)).unwrap());
        // edge inclusions glue back to the identity
        let incs: Vec<_> = (1..=2).map(|i| edge_inclusion(&t, i).unwrap()).collect();
        assert_eq!(assemble_glued_map(&t, &incs).unwrap(), ThetaMap::identity(&t));
        let bad = [incs[1].clone(), incs[0].clone()];
        assert!(matches!(assemble_glued_map(&t, &bad), Err(Error::Incompatible(_))));
    }
}
