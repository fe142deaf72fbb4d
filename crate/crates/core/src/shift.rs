//! The shift `J`, the collapses `K_p` with their maps `C`, `D_p`, `F_p`,
//! and the Eckmann–Hilton degeneracies `E_T : J(T) -> T`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::simplex::SimplexMap;
use crate::theta::{assemble_shifted, Cell, GlobularSum, ThetaMap};

pub fn shift_cell(t: &Cell) -> Cell {
    t.shift()
}

pub fn shift_map(alpha: &ThetaMap) -> ThetaMap {
    alpha.shift()
}

/// `K_p(T)`: the globular sum of `T` clamped at height `p`.
pub fn collapse(p: usize, t: &Cell) -> Result<Cell> {
    if p == 0 {
        return Err(Error::Invalid("K_0 is handled by the vertex maps".into()));
    }
    Ok(GlobularSum::clamp(&t.globular_sum(), p).to_cell())
}

/// `K_p([[k]; T_j]) = [[k]; K_{p-1}(T_j)]`, `K_0 = [0]`.
pub fn collapse_recursive(p: usize, t: &Cell) -> Cell {
    if p == 0 {
        return Cell::point();
    }
    Cell::node(t.children().iter().map(|c| collapse_recursive(p - 1, c)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseData {
    pub p: usize,
    pub cell: Cell,
    /// `C : T -> K_p(T)`.
    pub c_map: ThetaMap,
    /// `D_p : K_p(T) -> T`, through the initial vertices.
    pub d_map: ThetaMap,
    /// `F_p : K_p(T) -> T`, through the final vertices.
    pub f_map: ThetaMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    /// The first vertex, `in₋`.
    Minus,
    /// The last vertex, `in₊`.
    Plus,
}

fn c_rec(p: usize, t: &Cell) -> ThetaMap {
    if p == 0 {
        return ThetaMap::to_point(t);
    }
    let k = collapse_recursive(p, t);
    let comps = t.children().iter().map(|c| vec![c_rec(p - 1, c)]).collect();
    ThetaMap::new(t.clone(), k, SimplexMap::identity(t.width()), comps).expect("collapse map")
}

fn section_rec(p: usize, t: &Cell, end: End) -> ThetaMap {
    if p == 0 {
        return vertex(t, end);
    }
    let k = collapse_recursive(p, t);
    let comps = t.children().iter().map(|c| vec![section_rec(p - 1, c, end)]).collect();
    ThetaMap::new(k, t.clone(), SimplexMap::identity(t.width()), comps).expect("section map")
}

pub fn collapse_maps(p: usize, t: &Cell) -> Result<CollapseData> {
    let cell = collapse(p, t)?;
    debug_assert_eq!(cell, collapse_recursive(p, t));
    Ok(CollapseData { p, cell, c_map: c_rec(p, t), d_map: section_rec(p, t, End::Minus), f_map: section_rec(p, t, End::Plus) })
}

fn vertex(t: &Cell, end: End) -> ThetaMap {
    let v = match end {
        End::Minus => 0,
        End::Plus => t.width(),
    };
    ThetaMap::vertex(t, v).expect("vertex in range")
}

pub fn vertex_in_minus(t: &Cell) -> ThetaMap {
    vertex(t, End::Minus)
}

pub fn vertex_in_plus(t: &Cell) -> ThetaMap {
    vertex(t, End::Plus)
}

/// `S -> [0] -> T`, landing on the chosen end vertex of `T`.
pub fn constant_to(s: &Cell, t: &Cell, which: End) -> ThetaMap {
    vertex(t, which).compose(&ThetaMap::to_point(s)).expect("composable")
}

fn eh_aux(s: &Cell, t: &Cell, end: End) -> ThetaMap {
    let js = s.shift();
    let w = t.width();
    if w == 0 {
        return ThetaMap::to_point(&js);
    }
    let collapse_src = c_rec(1, &js);
    let k1 = collapse_recursive(1, t);
    let long = SimplexMap::new(1, w, vec![0, w]).expect("long edge");
    let points = vec![(1..=w).map(|_| ThetaMap::identity(&Cell::point())).collect()];
    let long_edge = ThetaMap::new(Cell::globe(1), k1, long, points).expect("long edge");
    let back = section_rec(1, t, end);
    back.compose(&long_edge).and_then(|m| m.compose(&collapse_src)).expect("composable")
}

/// `F_{1,S,T} : S+1 -> T`: collapse to `1̄`, run along the long edge of
/// `K_1(T)`, then include through the final vertices.
pub fn eh_aux_f(s: &Cell, t: &Cell) -> ThetaMap {
    eh_aux(s, t, End::Plus)
}

/// `D_{1,S,T}`, as [`eh_aux_f`] through the initial vertices.
pub fn eh_aux_d(s: &Cell, t: &Cell) -> ThetaMap {
    eh_aux(s, t, End::Minus)
}

/// How the components of the cocone piece `φ_i` off the diagonal are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EhConvention {
    /// Before position `i` the constant at the final vertex of `T_j`,
    /// after it the constant at the initial vertex. These pieces glue.
    Endpoints,
    /// `F_{1,T_i,T_j}` before position `i` and `D_{1,T_i,T_j}` after it,
    /// as the recursion is usually displayed.
    Displayed,
}

/// `E_T : J(T) -> T` with the gluing convention [`EhConvention::Endpoints`].
pub fn eckmann_hilton(t: &Cell) -> ThetaMap {
    eckmann_hilton_with(t, EhConvention::Endpoints).expect("endpoint pieces always glue")
}

/// `E_T` built from the cocone `φ_i = [long edge; (…, E_{T_i}, …)]`.
/// With [`EhConvention::Displayed`] the pieces may fail to glue, and
/// that failure is returned.
pub fn eckmann_hilton_with(t: &Cell, convention: EhConvention) -> Result<ThetaMap> {
    let mut memo = HashMap::new();
    eh_rec(t, convention, &mut memo)
}

fn eh_rec(t: &Cell, conv: EhConvention, memo: &mut HashMap<Cell, ThetaMap>) -> Result<ThetaMap> {
    if let Some(m) = memo.get(t) {
        return Ok(m.clone());
    }
    let k = t.width();
    if k == 0 {
        return Ok(ThetaMap::to_point(&Cell::globe(1)));
    }
    let long = SimplexMap::new(1, k, vec![0, k])?;
    let mut pieces = Vec::with_capacity(k);
    for i in 1..=k {
        let ai = t.child(i);
        let src = ai.shift();
        let mut comps = Vec::with_capacity(k);
        for j in 1..=k {
            let aj = t.child(j);
            let c = match (j.cmp(&i), conv) {
                (std::cmp::Ordering::Equal, _) => eh_rec(ai, conv, memo)?,
                (std::cmp::Ordering::Less, EhConvention::Endpoints) => constant_to(&src, aj, End::Plus),
                (std::cmp::Ordering::Greater, EhConvention::Endpoints) => constant_to(&src, aj, End::Minus),
                (std::cmp::Ordering::Less, EhConvention::Displayed) => eh_aux_f(ai, aj),
                (std::cmp::Ordering::Greater, EhConvention::Displayed) => eh_aux_d(ai, aj),
            };
            comps.push(c);
        }
        pieces.push(ThetaMap::new(src.shift(), t.clone(), long.clone(), vec![comps])?);
    }
    let e = assemble_shifted(1, t, &pieces)?;
    memo.insert(t.clone(), e.clone());
    Ok(e)
}

/// Both sides of the naturality square of `E` along `α : S -> T`:
/// `α ∘ E_S` and `E_T ∘ J α`.
pub fn eckmann_hilton_square(alpha: &ThetaMap) -> (ThetaMap, ThetaMap) {
    let left = alpha.compose(&eckmann_hilton(alpha.src())).expect("composable");
    let right = eckmann_hilton(alpha.tgt()).compose(&shift_map(alpha)).expect("composable");
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeletal::{classify, MapClass};
    use crate::theta::{enumerate_cells, globe_i, globe_s, globe_t};

    fn cell(s: &str) -> Cell {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_cell(&Cell::point()), Cell::globe(1));
        assert_eq!(shift_cell(&Cell::globe(3)), Cell::globe(4));
        assert_eq!(shift_cell(&cell("A(1,0,1)")), cell("A(2,1,2)"));
        for t in enumerate_cells(5) {
            let shifted: Vec<usize> = t.globular_sum().seq().iter().map(|v| v + 1).collect();
            assert_eq!(t.shift().globular_sum().seq(), &shifted[..]);
        }
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(collapse(3, &cell("[[0] 0]")).unwrap(), cell("[[0] 0]"));
        assert_eq!(collapse(1, &cell("[[0 [0]]]")).unwrap(), Cell::globe(1));
        assert_eq!(collapse(1, &cell("A(2,1,2)")).unwrap(), Cell::globe(1));
        assert!(collapse(0, &Cell::point()).is_err());
        for t in enumerate_cells(5) {
            for p in 1..=5 {
                assert_eq!(collapse(p, &t).unwrap(), collapse_recursive(p, &t));
            }
        }
    }

    #[test]
    fn collapse_maps_on_globes() {
        let cd = collapse_maps(1, &Cell::globe(2)).unwrap();
        assert_eq!((cd.c_map, cd.d_map, cd.f_map), (globe_i(1), globe_s(1), globe_t(1)));
        let t = cell("[[0] 0]");
        let cd = collapse_maps(4, &t).unwrap();
        let id = ThetaMap::identity(&t);
        assert_eq!((cd.c_map, cd.d_map, cd.f_map), (id.clone(), id.clone(), id));
    }

    #[test]
    fn vertices() {
        let one = Cell::globe(1);
        assert_eq!(vertex_in_minus(&one), globe_s(0));
        assert_eq!(vertex_in_plus(&one), globe_t(0));
        assert_eq!(vertex_in_minus(&Cell::point()), vertex_in_plus(&Cell::point()));
    }

    #[test]
    fn eh_aux_examples() {
        let one = Cell::globe(1);
        for s in enumerate_cells(3) {
            let c1 = collapse_maps(1, &s.shift()).unwrap().c_map;
            assert_eq!(eh_aux_f(&s, &one), c1);
            assert_eq!(eh_aux_d(&s, &one), c1);
            let js = s.shift();
            for t in enumerate_cells(3) {
                let f = eh_aux_f(&s, &t);
                let d = eh_aux_d(&s, &t);
                assert_eq!(f.compose(&vertex_in_plus(&js)).unwrap(), vertex_in_plus(&t));
                assert_eq!(d.compose(&vertex_in_minus(&js)).unwrap(), vertex_in_minus(&t));
            }
        }
        assert_eq!(eh_aux_f(&one, &Cell::point()), ThetaMap::to_point(&Cell::globe(2)));
    }

    #[test]
    fn eckmann_hilton_examples() {
        assert_eq!(eckmann_hilton(&Cell::point()), ThetaMap::to_point(&Cell::globe(1)));
        assert_eq!(eckmann_hilton(&Cell::globe(1)), globe_i(1));
        let e = eckmann_hilton(&cell("[0 0]"));
        assert_eq!(e.simplicial().values(), &[0, 2]);
        assert_eq!(classify(&e), MapClass::Mixed);
        for t in enumerate_cells(4) {
            let e = eckmann_hilton(&t);
            assert_eq!(e.compose(&vertex_in_minus(&t.shift())).unwrap(), vertex_in_minus(&t));
            assert_eq!(e.compose(&vertex_in_plus(&t.shift())).unwrap(), vertex_in_plus(&t));
        }
    }

    #[test]
    fn displayed_convention_fails_to_glue() {
        let t = cell("[[0 0] 0]");
        assert!(matches!(eckmann_hilton_with(&t, EhConvention::Displayed), Err(Error::Incompatible(_))));
    }

    #[test]
    fn eckmann_hilton_naturality() {
        let cells = enumerate_cells(3);
        let mut failures = 0;
        for s in &cells {
            for t in &cells {
                for a in ThetaMap::hom(s, t) {
                    let (l, r) = eckmann_hilton_square(&a);
                    if matches!(classify(&a), MapClass::Identity | MapClass::Negative) {
                        assert_eq!(l, r, "{}", a.to_full_string());
                    }
                    failures += usize::from(l != r);
                }
            }
        }
        assert!(failures > 0);
        let (l, r) = eckmann_hilton_square(&ThetaMap::vertex(&Cell::globe(1), 0).unwrap());
        assert_ne!(l, r);
    }
}
