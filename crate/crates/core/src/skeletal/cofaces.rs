use std::fmt;

use crate::error::{Error, Result};
use crate::simplex::SimplexMap;
use crate::theta::{enumerate_cells, Cell, HomTable, ThetaMap};

use super::{classify, factor_through_family, require_positive, MapClass};

/// The four shapes a coface into `[[n]; T_1 … T_n]` can take.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CofaceKind {
    /// `d^0`, dropping a leading edge whose child is the point.
    OuterFirst,
    /// `d^n`, dropping a trailing edge whose child is the point.
    OuterLast,
    /// `d^p`, `0 < p < n`, merging edges `p` and `p+1` along a shuffle of
    /// their children (`true` marks a child taken from edge `p`).
    Merge(usize, Vec<bool>),
    /// Identity on `[n]` and a coface into child `j`.
    Inner(usize, Box<CofaceKind>),
}

impl fmt::Display for CofaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CofaceKind::OuterFirst => write!(f, "outer-first"),
            CofaceKind::OuterLast => write!(f, "outer-last"),
            CofaceKind::Merge(p, sh) => {
                let word: String = sh.iter().map(|&l| if l { 'L' } else { 'R' }).collect();
                write!(f, "merge({p}, {word})")
            }
            CofaceKind::Inner(j, k) => write!(f, "inner({j}, {k})"),
        }
    }
}

fn with_children(t: &Cell, range: std::ops::Range<usize>) -> Vec<Cell> {
    t.children()[range].to_vec()
}

fn identities(cells: &[Cell]) -> Vec<Vec<ThetaMap>> {
    cells.iter().map(|c| vec![ThetaMap::identity(c)]).collect()
}

/// All interleavings of `a` lefts and `b` rights.
fn shuffles(a: usize, b: usize) -> Vec<Vec<bool>> {
    if a == 0 || b == 0 {
        return vec![std::iter::repeat_n(a > 0, a + b).collect()];
    }
    let mut out = Vec::new();
    for (first, rest) in [(true, shuffles(a - 1, b)), (false, shuffles(a, b - 1))] {
        out.extend(rest.into_iter().map(|mut r| {
            r.insert(0, first);
            r
        }));
    }
    out
}

/// The cell whose edges interleave those of `P` and `Q` along `shuffle`,
/// with its two projections: onto `P` crushing the edges from `Q`, and
/// onto `Q` crushing those from `P`.
fn merge_maps(p: &Cell, q: &Cell, shuffle: &[bool]) -> (Cell, ThetaMap, ThetaMap) {
    let mut children = Vec::new();
    let (mut a, mut b) = (0, 0);
    let (mut lv, mut rv) = (vec![0], vec![0]);
    let (mut lc, mut rc) = (Vec::new(), Vec::new());
    for &left in shuffle {
        if left {
            a += 1;
            children.push(p.child(a).clone());
            lc.push(vec![ThetaMap::identity(p.child(a))]);
            rc.push(Vec::new());
        } else {
            b += 1;
            children.push(q.child(b).clone());
            lc.push(Vec::new());
            rc.push(vec![ThetaMap::identity(q.child(b))]);
        }
        lv.push(a);
        rv.push(b);
    }
    let merged = Cell::node(children);
    let w = shuffle.len();
    let left = ThetaMap::new(merged.clone(), p.clone(), SimplexMap::new(w, a, lv).expect("monotone"), lc).expect("projection onto P");
    let right = ThetaMap::new(merged.clone(), q.clone(), SimplexMap::new(w, b, rv).expect("monotone"), rc).expect("projection onto Q");
    (merged, left, right)
}

/// All cofaces into `t`, built from the shape of `t`.
pub fn coface_typology(t: &Cell) -> Vec<(CofaceKind, ThetaMap)> {
    let n = t.width();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if t.child(1).is_point() {
        let kids = with_children(t, 1..n);
        let src = Cell::node(kids.clone());
        let m = ThetaMap::new(src, t.clone(), SimplexMap::coface(n, 0).expect("d^0"), identities(&kids)).expect("outer coface");
        out.push((CofaceKind::OuterFirst, m));
    }
    if t.child(n).is_point() {
        let kids = with_children(t, 0..n - 1);
        let src = Cell::node(kids.clone());
        let m = ThetaMap::new(src, t.clone(), SimplexMap::coface(n, n).expect("d^n"), identities(&kids)).expect("outer coface");
        out.push((CofaceKind::OuterLast, m));
    }
    for p in 1..n {
        for sh in shuffles(t.child(p).width(), t.child(p + 1).width()) {
            let (merged, left, right) = merge_maps(t.child(p), t.child(p + 1), &sh);
            let mut kids = with_children(t, 0..p - 1);
            kids.push(merged);
            kids.extend(with_children(t, p + 1..n));
            let mut comps = identities(&kids[..p - 1]);
            comps.push(vec![left, right]);
            comps.extend(identities(&kids[p..]));
            let m = ThetaMap::new(Cell::node(kids), t.clone(), SimplexMap::coface(n, p).expect("d^p"), comps).expect("merge coface");
            out.push((CofaceKind::Merge(p, sh), m));
        }
    }
    for j in 1..=n {
        for (kind, gamma) in coface_typology(t.child(j)) {
            let mut kids = t.children().to_vec();
            kids[j - 1] = gamma.src().clone();
            let mut comps = identities(&kids);
            comps[j - 1] = vec![gamma];
            let m = ThetaMap::new(Cell::node(kids), t.clone(), SimplexMap::identity(n), comps).expect("inner coface");
            out.push((CofaceKind::Inner(j, Box::new(kind)), m));
        }
    }
    out
}

/// Every positive map of degree one into `t`, by enumeration.
pub fn boundary_cofaces(t: &Cell, homs: &mut HomTable) -> Vec<ThetaMap> {
    let d = t.degree();
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in enumerate_cells(d - 1).into_iter().filter(|s| s.degree() == d - 1) {
        out.extend(homs.hom(&s, t).iter().filter(|m| classify(m) == MapClass::Positive).cloned());
    }
    out
}

/// Writes a positive `δ : S -> T` as a chain of `λ(T) − λ(S)` cofaces.
/// The result is in order of application: `δ = c_d ∘ ⋯ ∘ c_1`.
pub fn coface_factor(delta: &ThetaMap) -> Result<Vec<ThetaMap>> {
    require_positive(delta)?;
    let mut chain = Vec::new();
    let mut cur = delta.clone();
    while !cur.is_identity() {
        let step = coface_typology(cur.tgt()).into_iter().find_map(|(_, c)| factor_through_family(c.src(), &[&c], &[&cur]).map(|e| (c, e)));
        match step {
            Some((c, e)) => {
                chain.push(c);
                cur = e;
            }
            None => return Err(Error::Invalid(format!("{} does not factor through a coface", cur.to_full_string()))),
        }
    }
    chain.reverse();
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(s: &str) -> Cell {
        s.parse().unwrap()
    }

    #[test]
    fn boundary_counts() {
        let mut homs = HomTable::default();
        assert_eq!(boundary_cofaces(&Cell::globe(1), &mut homs).len(), 2);
        assert!(boundary_cofaces(&Cell::point(), &mut homs).is_empty());
        assert_eq!(boundary_cofaces(&Cell::globe(2), &mut homs).len(), 2);
        assert_eq!(boundary_cofaces(&cell("[0 0]"), &mut homs).len(), 3);
        assert_eq!(boundary_cofaces(&cell("[[0] 0]"), &mut homs).len(), 4);
        // two shuffles of the merged edges, plus two inner cofaces per child
        assert_eq!(boundary_cofaces(&cell("[[0] [0]]"), &mut homs).len(), 6);
    }

    #[test]
    fn typology_matches_enumeration() {
        let mut homs = HomTable::default();
        for t in enumerate_cells(4) {
            let mut a: Vec<ThetaMap> = coface_typology(&t).into_iter().map(|(_, m)| m).collect();
            let mut b = boundary_cofaces(&t, &mut homs);
            a.sort();
            b.sort();
            assert_eq!(a, b, "{t}");
        }
    }

    #[test]
    fn chains() {
        let d = SimplexMap::new(0, 2, vec![1]).unwrap();
        let v = ThetaMap::new(Cell::point(), cell("[0 0]"), d, vec![]).unwrap();
        let chain = coface_factor(&v).unwrap();
        assert_eq!(chain.len(), 2);
        let back = chain.iter().skip(1).fold(chain[0].clone(), |acc, c| c.compose(&acc).unwrap());
        assert_eq!(back, v);
        let not_pos = crate::theta::globe_i(0);
        assert_eq!(coface_factor(&not_pos), Err(Error::NotPositive));
    }
}
