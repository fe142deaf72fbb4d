//! Cells of Θ as planar rooted trees, and their globular-sum form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::text::Scanner;

/// A cell `[[n]; T_1 … T_n]`; the point `[0]` has no children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cell {
    children: Vec<Cell>,
}

impl Cell {
    pub fn point() -> Cell {
        Cell { children: Vec::new() }
    }

    pub fn node(children: Vec<Cell>) -> Cell {
        Cell { children }
    }

    /// The globe `n̄`.
    pub fn globe(n: usize) -> Cell {
        (0..n).fold(Cell::point(), |c, _| c.shift())
    }

    /// `J(T) = [[1]; T]`.
    pub fn shift(&self) -> Cell {
        Cell { children: vec![self.clone()] }
    }

    pub fn children(&self) -> &[Cell] {
        &self.children
    }

    /// The `i`-th child, 1-based like the edges of `[n]`.
    pub fn child(&self, i: usize) -> &Cell {
        &self.children[i - 1]
    }

    pub fn width(&self) -> usize {
        self.children.len()
    }

    pub fn is_point(&self) -> bool {
        self.children.is_empty()
    }

    /// `λ(T) = n + Σ λ(T_i)`, the number of edges of the tree.
    pub fn degree(&self) -> usize {
        self.children.iter().map(|c| 1 + c.degree()).sum()
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| 1 + c.height()).max().unwrap_or(0)
    }

    /// If `self = J(T)`, returns `T`.
    pub fn unshift(&self) -> Option<&Cell> {
        match self.children.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }

    pub fn globular_sum(&self) -> GlobularSum {
        GlobularSum { seq: sum_of(self) }
    }
}

fn sum_of(t: &Cell) -> Vec<usize> {
    if t.is_point() {
        return vec![0];
    }
    let mut seq = Vec::new();
    for (i, c) in t.children.iter().enumerate() {
        if i > 0 {
            seq.push(0);
        }
        seq.extend(sum_of(c).into_iter().map(|v| v + 1));
    }
    seq
}

/// All cells with `λ ≤ max_degree`, ordered by degree and then by their
/// printed form.
pub fn enumerate_cells(max_degree: usize) -> Vec<Cell> {
    let mut by_degree: Vec<Vec<Cell>> = vec![vec![Cell::point()]];
    for d in 1..=max_degree {
        let mut out = Vec::new();
        for width in 1..=d {
            forests(&by_degree, width, d - width, &mut Vec::new(), &mut out);
        }
        by_degree.push(out);
    }
    let mut all: Vec<(usize, String, Cell)> =
        by_degree.into_iter().enumerate().flat_map(|(d, cs)| cs.into_iter().map(move |c| (d, c.to_string(), c))).collect();
    all.sort();
    all.into_iter().map(|(_, _, c)| c).collect()
}

fn forests(by_degree: &[Vec<Cell>], slots: usize, budget: usize, cur: &mut Vec<Cell>, out: &mut Vec<Cell>) {
    if slots == 0 {
        if budget == 0 {
            out.push(Cell::node(cur.clone()));
        }
        return;
    }
    for d in 0..=budget {
        for c in &by_degree[d] {
            cur.push(c.clone());
            forests(by_degree, slots - 1, budget - d, cur, out);
            cur.pop();
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "0");
        }
        write!(f, "[")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn parse_cell(sc: &mut Scanner<'_>) -> Result<Cell> {
    let at = sc.pos();
    match sc.peek() {
        Some('0') => {
            sc.expect("0")?;
            Ok(Cell::point())
        }
        Some('[') => {
            sc.expect("[")?;
            let mut children = Vec::new();
            while !sc.eat("]") {
                if sc.peek().is_none() {
                    return parse_err(sc.pos(), "unterminated cell");
                }
                children.push(parse_cell(sc)?);
            }
            Ok(Cell::node(children))
        }
        Some('g') => {
            sc.expect("g")?;
            Ok(Cell::globe(sc.nat()?))
        }
        Some('A') => {
            sc.expect("A")?;
            sc.expect("(")?;
            let mut seq = vec![sc.nat()?];
            while !sc.eat(")") {
                sc.expect(",")?;
                seq.push(sc.nat()?);
            }
            let g = GlobularSum::new(seq).or_else(|e| parse_err(at, e.to_string()))?;
            Ok(g.to_cell())
        }
        _ => parse_err(at, "expected a cell: `0`, `[...]`, `g<k>` or `A(...)`"),
    }
}

impl FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sc = Scanner::new(s);
        let c = parse_cell(&mut sc)?;
        sc.finish()?;
        Ok(c)
    }
}

/// An alternating sequence `(n_0, m_1, n_1, …, m_ℓ, n_ℓ)` with every
/// `m_i ≤ n_{i-1}, n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobularSum {
    seq: Vec<usize>,
}

impl GlobularSum {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        if seq.len().is_multiple_of(2) {
            return Err(Error::Invalid("a globular sum has odd length".into()));
        }
        for i in (1..seq.len()).step_by(2) {
            if seq[i] > seq[i - 1] || seq[i] > seq[i + 1] {
                return Err(Error::Invalid(format!("m_{} = {} exceeds a neighbour", i / 2 + 1, seq[i])));
            }
        }
        Ok(GlobularSum { seq })
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Every `m_i` strictly below both neighbours; the form produced by
    /// [`Cell::globular_sum`].
    pub fn is_strict(&self) -> bool {
        (1..self.seq.len()).step_by(2).all(|i| self.seq[i] < self.seq[i - 1] && self.seq[i] < self.seq[i + 1])
    }

    /// Drops redundant pairs: a glue `m_i` equal to a neighbouring `n`
    /// means that globe is contained in the other.
    pub fn normalize(&self) -> GlobularSum {
        let mut seq = self.seq.clone();
        'outer: loop {
            for i in (1..seq.len()).step_by(2) {
                if seq[i] == seq[i - 1] {
                    seq.drain(i - 1..=i);
                    continue 'outer;
                }
                if seq[i] == seq[i + 1] {
                    seq.drain(i..=i + 1);
                    continue 'outer;
                }
            }
            return GlobularSum { seq };
        }
    }

    /// `Σ n_i − Σ m_i`.
    pub fn degree(&self) -> usize {
        let (n, m): (Vec<_>, Vec<_>) = self.seq.iter().enumerate().partition(|(i, _)| i % 2 == 0);
        n.iter().map(|x| *x.1).sum::<usize>() - m.iter().map(|x| *x.1).sum::<usize>()
    }

    /// Entry-wise `min(·, p)`; the result may need normalizing.
    pub fn clamp(&self, p: usize) -> GlobularSum {
        GlobularSum { seq: self.seq.iter().map(|&v| v.min(p)).collect() }
    }

    pub fn shift(&self) -> GlobularSum {
        GlobularSum { seq: self.seq.iter().map(|&v| v + 1).collect() }
    }

    /// The cell `A(n_0, m_1, …, n_ℓ)`.
    pub fn to_cell(&self) -> Cell {
        let g = self.normalize();
        build(&g.seq)
    }
}

fn build(seq: &[usize]) -> Cell {
    if seq.len() == 1 {
        return Cell::globe(seq[0]);
    }
    let children = seq.split(|&v| v == 0).map(|seg| build(&seg.iter().map(|v| v - 1).collect::<Vec<_>>())).collect();
    Cell::node(children)
}

impl fmt::Display for GlobularSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A(")?;
        for (i, v) in self.seq.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Count of cells per degree, `Catalan(d)` for planar trees with `d` edges.
pub fn census(max_degree: usize) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for c in enumerate_cells(max_degree) {
        *m.entry(c.degree()).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(s: &str) -> Cell {
        s.parse().unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Cell::point().degree(), 0);
        assert_eq!(Cell::globe(4).degree(), 4);
        assert_eq!(cell("[[0] 0]").degree(), 3);
    }

    #[test]
    fn globes() {
        assert_eq!(Cell::globe(0), Cell::point());
        assert_eq!(Cell::globe(2), cell("[[0]]"));
        assert_eq!(cell("g3"), cell("[[[0]]]"));
    }

    #[test]
    fn enumeration_small() {
        let show = |d| enumerate_cells(d).iter().map(|c| c.to_string()).collect::<Vec<_>>();
        assert_eq!(show(0), ["0"]);
        assert_eq!(show(1), ["0", "[0]"]);
        assert_eq!(show(2), ["0", "[0]", "[0 0]", "[[0]]"]);
        let counts: Vec<usize> = census(6).values().copied().collect();
        assert_eq!(counts, [1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn globular_sum_examples() {
        assert_eq!(GlobularSum::new(vec![3]).unwrap().to_cell(), Cell::globe(3));
        assert_eq!(GlobularSum::new(vec![1, 0, 1]).unwrap().to_cell(), cell("[0 0]"));
        assert_eq!(GlobularSum::new(vec![2, 1, 2]).unwrap().to_cell(), cell("[[0 0]]"));
        assert_eq!(cell("[0 0]").globular_sum().seq(), &[1, 0, 1]);
        assert_eq!(Cell::point().globular_sum().seq(), &[0]);
        assert_eq!(GlobularSum::new(vec![1, 1, 1]).unwrap().to_cell(), Cell::globe(1));
        assert!(GlobularSum::new(vec![1, 2, 3]).is_err());
        assert!(GlobularSum::new(vec![1, 0]).is_err());
        assert_eq!(cell("A(2,0,1,0,3)").to_string(), "[[0] 0 [[0]]]");
    }

    #[test]
    fn text_round_trip() {
        for c in enumerate_cells(5) {
            assert_eq!(cell(&c.to_string()), c);
        }
        assert!("[0".parse::<Cell>().is_err());
        assert!("[0]]".parse::<Cell>().is_err());
        assert!("x".parse::<Cell>().is_err());
    }
}
