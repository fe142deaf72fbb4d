//! Finite limits of representables, computed level by level through the
//! wreath structure: the vertices of a limit are the compatible vertex
//! tuples, and over each step between consecutive vertices sits the limit
//! of the diagram of the components involved.

use std::fmt;

use crate::error::{Error, Result};
use crate::gamma::{gamma_pullback, subset_elements, GammaMorphism};
use crate::simplex::SimplexMap;
use crate::theta::{Cell, ThetaMap};

use super::{classify, degree_change, MapClass};

/// A finite diagram of cells; arrows are `(from, to, map)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub objects: Vec<Cell>,
    pub arrows: Vec<(usize, usize, ThetaMap)>,
}

/// The shape of a limit presheaf. `Tree` with only `Tree` children all
/// the way down is a cell; an `Empty` child means no cell spans that step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WCell {
    Empty,
    Tree(Vec<WCell>),
    /// The vertex tuples do not form a chain; kept as the raw diagram.
    Irregular(Box<Diagram>),
}

impl WCell {
    pub fn to_cell(&self) -> Option<Cell> {
        match self {
            WCell::Tree(ch) => ch.iter().map(WCell::to_cell).collect::<Option<Vec<_>>>().map(Cell::node),
            _ => None,
        }
    }

    pub fn from_cell(c: &Cell) -> WCell {
        WCell::Tree(c.children().iter().map(WCell::from_cell).collect())
    }

    /// `J` on shapes.
    pub fn shift(&self) -> WCell {
        WCell::Tree(vec![self.clone()])
    }

    /// The number of elements of the limit presheaf at the probe `p`.
    pub fn count_at(&self, p: &Cell) -> usize {
        match self {
            WCell::Empty => 0,
            WCell::Irregular(d) => diagram_count(d, p),
            WCell::Tree(ch) => SimplexMap::hom(p.width(), ch.len())
                .iter()
                .map(|u| {
                    (1..=p.width()).map(|i| u.gamma_range(i).map(|c| ch[c - 1].count_at(p.child(i))).product::<usize>()).product::<usize>()
                })
                .sum(),
        }
    }
}

impl fmt::Display for WCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WCell::Empty => write!(f, "empty"),
            WCell::Irregular(d) => write!(f, "irregular({} objects)", d.objects.len()),
            WCell::Tree(ch) if ch.is_empty() => write!(f, "0"),
            WCell::Tree(ch) => {
                write!(f, "[")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// A computed limit; `legs` is present exactly when the shape is a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub shape: WCell,
    pub legs: Option<Vec<ThetaMap>>,
}

fn vertex_tuples(d: &Diagram) -> Vec<Vec<usize>> {
    fn go(d: &Diagram, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = cur.len();
        if v == d.objects.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..=d.objects[v].width() {
            cur.push(x);
            let ok = d.arrows.iter().all(|(a, b, m)| *a.max(b) != v || m.simplicial().apply(cur[*a]) == cur[*b]);
            if ok {
                go(d, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut out);
    out
}

fn leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The diagram over the step from vertex tuple `lo` to `hi`, and the
/// `(object, j)` labels of its objects.
fn step_diagram(d: &Diagram, lo: &[usize], hi: &[usize]) -> (Diagram, Vec<(usize, usize)>) {
    let mut labels = Vec::new();
    for v in 0..d.objects.len() {
        for j in lo[v] + 1..=hi[v] {
            labels.push((v, j));
        }
    }
    let index = |v: usize, j: usize| labels.iter().position(|&l| l == (v, j)).expect("label in step");
    let objects = labels.iter().map(|&(v, j)| d.objects[v].child(j).clone()).collect();
    let mut arrows = Vec::new();
    for (a, b, m) in &d.arrows {
        for j in lo[*a] + 1..=hi[*a] {
            for jj in m.simplicial().gamma_range(j) {
                arrows.push((index(*a, j), index(*b, jj), m.component(j, jj).expect("in range").clone()));
            }
        }
    }
    (Diagram { objects, arrows }, labels)
}

pub fn limit(d: &Diagram) -> Limit {
    let mut points = vertex_tuples(d);
    if points.is_empty() {
        return Limit { shape: WCell::Empty, legs: None };
    }
    points.sort();
    if !points.windows(2).all(|w| leq(&w[0], &w[1])) {
        return Limit { shape: WCell::Irregular(Box::new(d.clone())), legs: None };
    }
    let k = points.len() - 1;
    let mut shapes = Vec::with_capacity(k);
    let mut steps = Vec::with_capacity(k);
    for c in 1..=k {
        let (sd, labels) = step_diagram(d, &points[c - 1], &points[c]);
        let lim = limit(&sd);
        shapes.push(lim.shape.clone());
        steps.push((labels, lim));
    }
    let shape = WCell::Tree(shapes);
    let Some(apex) = shape.to_cell() else {
        return Limit { shape, legs: None };
    };
    let legs = (0..d.objects.len())
        .map(|v| {
            let values = points.iter().map(|p| p[v]).collect();
            let f = SimplexMap::new(k, d.objects[v].width(), values).expect("monotone tuples");
            let comps = steps
                .iter()
                .map(|(labels, lim)| {
                    let legs = lim.legs.as_ref().expect("representable step");
                    labels.iter().zip(legs).filter(|((w, _), _)| *w == v).map(|(_, l)| l.clone()).collect()
                })
                .collect();
            ThetaMap::new(apex.clone(), d.objects[v].clone(), f, comps).expect("limit leg")
        })
        .collect();
    Limit { shape, legs: Some(legs) }
}

/// Elements of the limit presheaf at `p`, counted through the wreath
/// recursion without assuming the vertex tuples form a chain.
pub fn diagram_count(d: &Diagram, p: &Cell) -> usize {
    let mut points = vertex_tuples(d);
    points.sort();
    // monotone paths of length width(p) in the poset of vertex tuples
    fn paths(points: &[Vec<usize>], d: &Diagram, p: &Cell, i: usize, last: usize) -> usize {
        if i > p.width() {
            return 1;
        }
        let mut total = 0;
        for (n, q) in points.iter().enumerate() {
            if leq(&points[last], q) {
                let (sd, _) = step_diagram(d, &points[last], q);
                let here = diagram_count(&sd, p.child(i));
                if here > 0 {
                    total += here * paths(points, d, p, i + 1, n);
                }
            }
        }
        total
    }
    (0..points.len()).map(|start| paths(&points, d, p, 1, start)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofacePullback {
    Cell {
        cell: Cell,
        proj_left: ThetaMap,
        proj_right: ThetaMap,
    },
    /// No vertex of the two sources meets: the limit in presheaves is empty.
    Empty,
    /// The limit is not representable; its shape as a presheaf.
    Presheaf(WCell),
}

impl CofacePullback {
    pub fn shape(&self) -> WCell {
        match self {
            CofacePullback::Cell { cell, .. } => WCell::from_cell(cell),
            CofacePullback::Empty => WCell::Empty,
            CofacePullback::Presheaf(w) => w.clone(),
        }
    }
}

fn is_coface(m: &ThetaMap) -> bool {
    classify(m) == MapClass::Positive && degree_change(m) == 1
}

/// The fiber product of two cofaces `f : B -> A`, `g : C -> A`. The
/// vertices are the simplicial pullback; over the `z`-th step sits the
/// limit of the components indexed by the `z`-th element of the Γ
/// pullback of `F(f)` and `F(g)`.
pub fn coface_pullback(f: &ThetaMap, g: &ThetaMap) -> Result<CofacePullback> {
    if f.tgt() != g.tgt() {
        return Err(Error::Mismatch(format!("cofaces into {} and {}", f.tgt(), g.tgt())));
    }
    if !is_coface(f) || !is_coface(g) {
        return Err(Error::Invalid("both maps must be cofaces".into()));
    }
    let (fs, gs) = (f.simplicial(), g.simplicial());
    let points: Vec<(usize, usize)> =
        (0..=fs.src()).flat_map(|x| (0..=gs.src()).filter(move |&y| fs.apply(x) == gs.apply(y)).map(move |y| (x, y))).collect();
    if points.is_empty() {
        return Ok(CofacePullback::Empty);
    }
    let gp = gamma_pullback(&GammaMorphism::from_simplex(fs), &GammaMorphism::from_simplex(gs))?;
    if gp.apex() + 1 != points.len() {
        return Err(Error::Invalid("simplicial and Γ pullbacks disagree".into()));
    }
    let (b, c, a) = (f.src(), g.src(), f.tgt());
    let mut shapes = Vec::new();
    let mut steps = Vec::new();
    for (z, &(ii, jj)) in gp.elements.iter().enumerate() {
        let (lo, hi) = (points[z], points[z + 1]);
        let is: Vec<usize> = subset_elements(ii).collect();
        let js: Vec<usize> = subset_elements(jj).collect();
        if is != (lo.0 + 1..=hi.0).collect::<Vec<_>>() || js != (lo.1 + 1..=hi.1).collect::<Vec<_>>() {
            return Err(Error::Invalid("Γ element does not match the simplicial step".into()));
        }
        let ys: Vec<usize> = subset_elements(GammaMorphism::from_simplex(fs).image_of(ii)).collect();
        let mut objects: Vec<Cell> = is.iter().map(|&i| b.child(i).clone()).collect();
        objects.extend(js.iter().map(|&j| c.child(j).clone()));
        objects.extend(ys.iter().map(|&y| a.child(y).clone()));
        let y_at = |y: usize| is.len() + js.len() + ys.iter().position(|&t| t == y).expect("y in Y_z");
        let mut arrows = Vec::new();
        for (n, &i) in is.iter().enumerate() {
            for y in fs.gamma_range(i) {
                arrows.push((n, y_at(y), f.component(i, y).expect("in range").clone()));
            }
        }
        for (n, &j) in js.iter().enumerate() {
            for y in gs.gamma_range(j) {
                arrows.push((is.len() + n, y_at(y), g.component(j, y).expect("in range").clone()));
            }
        }
        let lim = limit(&Diagram { objects, arrows });
        shapes.push(lim.shape.clone());
        steps.push((is, js, lim));
    }
    let shape = WCell::Tree(shapes);
    let Some(cell) = shape.to_cell() else {
        return Ok(CofacePullback::Presheaf(shape));
    };
    let k = points.len() - 1;
    let mut left_c = Vec::new();
    let mut right_c = Vec::new();
    for (is, js, lim) in &steps {
        let legs = lim.legs.as_ref().expect("representable step");
        left_c.push(legs[..is.len()].to_vec());
        right_c.push(legs[is.len()..is.len() + js.len()].to_vec());
    }
    let lf = SimplexMap::new(k, b.width(), points.iter().map(|p| p.0).collect())?;
    let rf = SimplexMap::new(k, c.width(), points.iter().map(|p| p.1).collect())?;
    let proj_left = ThetaMap::new(cell.clone(), b.clone(), lf, left_c)?;
    let proj_right = ThetaMap::new(cell.clone(), c.clone(), rf, right_c)?;
    Ok(CofacePullback::Cell { cell, proj_left, proj_right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeletal::coface_typology;
    use crate::theta::{globe_s, globe_t};

    #[test]
    fn examples() {
        let s = globe_s(0);
        let t = globe_t(0);
        assert_eq!(coface_pullback(&s, &t).unwrap(), CofacePullback::Empty);
        match coface_pullback(&s, &s).unwrap() {
            CofacePullback::Cell { cell, proj_left, proj_right } => {
                assert_eq!(cell, Cell::point());
                assert!(proj_left.is_identity() && proj_right.is_identity());
            }
            other => panic!("{other:?}"),
        }
        // J(s), J(t): 1̄ ⇉ 2̄ meet in the two vertices only
        let p = coface_pullback(&s.shift(), &t.shift()).unwrap();
        assert_eq!(p, CofacePullback::Presheaf(WCell::Tree(vec![WCell::Empty])));
        assert_eq!(p.shape().count_at(&Cell::point()), 2);
        assert_eq!(p.shape().count_at(&Cell::globe(1)), 2);
    }

    #[test]
    fn same_coface_gives_its_source() {
        for t in crate::theta::enumerate_cells(4) {
            for (_, c) in coface_typology(&t) {
                match coface_pullback(&c, &c).unwrap() {
                    CofacePullback::Cell { cell, proj_left, proj_right } => {
                        assert_eq!(&cell, c.src());
                        assert!(proj_left.is_identity() && proj_right.is_identity());
                    }
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn agrees_with_generic_limit() {
        for t in crate::theta::enumerate_cells(4) {
            let cof = coface_typology(&t);
            for (_, f) in &cof {
                for (_, g) in &cof {
                    let d = Diagram {
                        objects: vec![f.src().clone(), g.src().clone(), t.clone()],
                        arrows: vec![(0, 2, f.clone()), (1, 2, g.clone())],
                    };
                    let lim = limit(&d);
                    let p = coface_pullback(f, g).unwrap();
                    assert_eq!(p.shape(), lim.shape);
                    if let CofacePullback::Cell { proj_left, proj_right, .. } = p {
                        let legs = lim.legs.unwrap();
                        assert_eq!((proj_left, proj_right), (legs[0].clone(), legs[1].clone()));
                    }
                }
            }
        }
    }
}
