use crate::error::{Error, Result};
use crate::simplex::SimplexMap;

/// A pointed simplicial set truncated at dimension `dim`. Element 0 of
/// every carrier is the basepoint; `faces[p][i]` is `d_i : X_p -> X_{p-1}`
/// and `degeneracies[p][j]` is `s_j : X_p -> X_{p+1}` for `p < dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedSimplicialSet {
    dim: usize,
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<u32>>>,
    degeneracies: Vec<Vec<Vec<u32>>>,
}

impl PointedSimplicialSet {
    /// Builds a truncated set from sizes and operator functions
    /// `face(p, i, x)`, `degeneracy(p, j, x)`.
    pub fn from_fn(
        sizes: Vec<usize>,
        mut face: impl FnMut(usize, usize, usize) -> usize,
        mut degeneracy: impl FnMut(usize, usize, usize) -> usize,
    ) -> PointedSimplicialSet {
        let dim = sizes.len() - 1;
        let faces = (0..=dim)
            .map(|p| if p == 0 { Vec::new() } else { (0..=p).map(|i| (0..sizes[p]).map(|x| face(p, i, x) as u32).collect()).collect() })
            .collect();
        let degeneracies =
            (0..=dim)
                .map(|p| {
                    if p == dim {
                        Vec::new()
                    } else {
                        (0..=p).map(|j| (0..sizes[p]).map(|x| degeneracy(p, j, x) as u32).collect()).collect()
                    }
                })
                .collect();
        PointedSimplicialSet { dim, sizes, faces, degeneracies }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `d_i x` for `x ∈ X_p`, `p ≥ 1`, `i ≤ p`.
    pub fn face(&self, p: usize, i: usize, x: usize) -> usize {
        self.faces[p][i][x] as usize
    }

    /// `s_j x` for `x ∈ X_p`, `p < dim`, `j ≤ p`.
    pub fn degeneracy(&self, p: usize, j: usize, x: usize) -> usize {
        self.degeneracies[p][j][x] as usize
    }

    /// `Δ^n₊` truncated at `dim`: maps `[p] -> [n]` after a basepoint.
    pub fn representable(n: usize, dim: usize) -> PointedSimplicialSet {
        let homs: Vec<Vec<SimplexMap>> = (0..=dim).map(|p| SimplexMap::hom(p, n)).collect();
        let find = |p: usize, m: &SimplexMap| 1 + homs[p].iter().position(|u| u == m).expect("hom is complete");
        let sizes = homs.iter().map(|h| h.len() + 1).collect();
        PointedSimplicialSet::from_fn(
            sizes,
            |p, i, x| {
                if x == 0 {
                    0
                } else {
                    find(p - 1, &homs[p][x - 1].compose(&SimplexMap::coface(p, i).expect("face")).expect("composable"))
                }
            },
            |p, j, x| {
                if x == 0 {
                    0
                } else {
                    find(p + 1, &homs[p][x - 1].compose(&SimplexMap::codegeneracy(p, j).expect("degeneracy")).expect("composable"))
                }
            },
        )
    }

    /// The basepoint-only set.
    pub fn basepoint(dim: usize) -> PointedSimplicialSet {
        PointedSimplicialSet::from_fn(vec![1; dim + 1], |_, _, _| 0, |_, _, _| 0)
    }

    /// `X / A` for the subobject marked by `collapse` (closed under faces
    /// and degeneracies; the basepoint is implied).
    pub fn quotient(&self, collapse: &[Vec<bool>]) -> Result<PointedSimplicialSet> {
        let keep = |p: usize, x: usize| x != 0 && !collapse[p][x];
        for p in 0..=self.dim {
            for x in (1..self.sizes[p]).filter(|&x| collapse[p][x]) {
                let closed_faces = p == 0 || (0..=p).all(|i| !keep(p - 1, self.face(p, i, x)));
                let closed_degs = p == self.dim || (0..=p).all(|j| !keep(p + 1, self.degeneracy(p, j, x)));
                if !closed_faces || !closed_degs {
                    return Err(Error::NotSubobject(format!("cell {x} of dimension {p} leaves the collapsed part")));
                }
            }
        }
        let index: Vec<Vec<usize>> = (0..=self.dim)
            .map(|p| {
                let mut next = 0;
                (0..self.sizes[p])
                    .map(|x| {
                        if keep(p, x) {
                            next += 1;
                            next
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let back: Vec<Vec<usize>> =
            (0..=self.dim).map(|p| std::iter::once(0).chain((1..self.sizes[p]).filter(|&x| keep(p, x))).collect()).collect();
        let sizes = back.iter().map(Vec::len).collect();
        Ok(PointedSimplicialSet::from_fn(
            sizes,
            |p, i, x| index[p - 1][self.face(p, i, back[p][x])],
            |p, j, x| index[p + 1][self.degeneracy(p, j, back[p][x])],
        ))
    }

    /// `Δ^n / ∂Δ^n`: only the surjections `[p] -> [n]` survive.
    pub fn sphere(n: usize, dim: usize) -> PointedSimplicialSet {
        let rep = PointedSimplicialSet::representable(n, dim);
        let collapse: Vec<Vec<bool>> =
            (0..=dim).map(|p| std::iter::once(false).chain(SimplexMap::hom(p, n).iter().map(|u| !u.is_surjective())).collect()).collect();
        rep.quotient(&collapse).expect("the boundary is a subobject")
    }

    /// The simplicial identities, with the first failure reported.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: &str, p: usize| Err(Error::Invalid(format!("{what} fails in dimension {p}")));
        for p in 2..=self.dim {
            for j in 1..=p {
                for i in 0..j {
                    if (0..self.sizes[p]).any(|x| self.face(p - 1, i, self.face(p, j, x)) != self.face(p - 1, j - 1, self.face(p, i, x))) {
                        return fail("d_i d_j = d_{j-1} d_i", p);
                    }
                }
            }
        }
        for p in 0..self.dim {
            for j in 0..=p {
                for i in 0..=p + 1 {
                    for x in 0..self.sizes[p] {
                        let lhs = self.face(p + 1, i, self.degeneracy(p, j, x));
                        let rhs = if i < j {
                            self.degeneracy(p - 1, j - 1, self.face(p, i, x))
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            self.degeneracy(p - 1, j, self.face(p, i - 1, x))
                        };
                        if lhs != rhs {
                            return fail("d_i s_j", p);
                        }
                    }
                }
                if p + 1 < self.dim {
                    for i in 0..=j {
                        if (0..self.sizes[p]).any(|x| {
                            self.degeneracy(p + 1, i, self.degeneracy(p, j, x)) != self.degeneracy(p + 1, j + 1, self.degeneracy(p, i, x))
                        }) {
                            return fail("s_i s_j = s_{j+1} s_i", p);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Non-degenerate cells of dimension `p`, basepoint excluded.
    pub fn nondegenerate(&self, p: usize) -> Vec<usize> {
        let mut hit = vec![false; self.sizes[p]];
        if p > 0 {
            for j in 0..p {
                for y in 0..self.sizes[p - 1] {
                    hit[self.degeneracy(p - 1, j, y)] = true;
                }
            }
        }
        (1..self.sizes[p]).filter(|&x| !hit[x]).collect()
    }
}

/// Cells of `Σ_K X` in dimension `p`: the basepoint, then `(q, y)` for
/// `q < p` and `y` a non-basepoint `q`-cell, ordered by `q`.
struct ConeLayout {
    offsets: Vec<Vec<usize>>,
}

impl ConeLayout {
    fn new(x: &PointedSimplicialSet) -> ConeLayout {
        let offsets = (0..=x.dim() + 1)
            .map(|p| {
                let mut acc = 1;
                (0..=p)
                    .map(|q| {
                        let o = acc;
                        if q < p {
                            acc += x.sizes()[q] - 1;
                        }
                        o
                    })
                    .collect()
            })
            .collect();
        ConeLayout { offsets }
    }

    fn size(&self, p: usize) -> usize {
        self.offsets[p][p]
    }

    fn encode(&self, p: usize, q: usize, y: usize) -> usize {
        if y == 0 {
            0
        } else {
            self.offsets[p][q] + y - 1
        }
    }

    fn decode(&self, p: usize, e: usize) -> Option<(usize, usize)> {
        if e == 0 {
            return None;
        }
        let q = self.offsets[p][..p].partition_point(|&o| o <= e) - 1;
        Some((q, e - self.offsets[p][q] + 1))
    }
}

/// Kan's suspension, one dimension above `X`. Faces `d_i` with `i ≤ q`
/// act on `y` (the vertex `q = 0` falls to the basepoint); faces with
/// `i > q` drop a cone coordinate, and give the basepoint when none is
/// left. Degeneracies act on `y` for `j ≤ q` and on the cone otherwise.
pub fn sigma_k(x: &PointedSimplicialSet) -> PointedSimplicialSet {
    let lay = ConeLayout::new(x);
    let sizes = (0..=x.dim() + 1).map(|p| lay.size(p)).collect();
    PointedSimplicialSet::from_fn(
        sizes,
        |p, i, e| match lay.decode(p, e) {
            None => 0,
            Some((q, y)) if i <= q => {
                if q == 0 {
                    0
                } else {
                    lay.encode(p - 1, q - 1, x.face(q, i, y))
                }
            }
            Some((q, y)) => {
                if p == q + 1 {
                    0
                } else {
                    lay.encode(p - 1, q, y)
                }
            }
        },
        |p, j, e| match lay.decode(p, e) {
            None => 0,
            Some((q, y)) if j <= q => lay.encode(p + 1, q + 1, x.degeneracy(q, j, y)),
            Some((q, y)) => lay.encode(p + 1, q, y),
        },
    )
}

/// `Σ_K Δ^n₊` rebuilt as `Δ^{n+1}₊` with the face `{0 … n}` and the
/// vertex `{n+1}` collapsed, with the matching of its cells to those of
/// [`sigma_k`] of `Δ^n₊`: `(q, y) ↦ y` followed by `n+1` repeated.
pub fn sigma_k_representable_oracle(n: usize, dim: usize) -> Result<(PointedSimplicialSet, Vec<Vec<usize>>)> {
    let top = n + 1;
    let rep = PointedSimplicialSet::representable(top, dim + 1);
    let homs: Vec<Vec<SimplexMap>> = (0..=dim + 1).map(|p| SimplexMap::hom(p, top)).collect();
    let collapse: Vec<Vec<bool>> = homs
        .iter()
        .map(|h| {
            std::iter::once(false)
                .chain(h.iter().map(|u| u.values().iter().all(|&v| v <= n) || u.values().iter().all(|&v| v == top)))
                .collect()
        })
        .collect();
    let q = rep.quotient(&collapse)?;
    let x = PointedSimplicialSet::representable(n, dim);
    let lay = ConeLayout::new(&x);
    let small: Vec<Vec<SimplexMap>> = (0..=dim).map(|p| SimplexMap::hom(p, n)).collect();
    let mut matching = Vec::new();
    for p in 0..=dim + 1 {
        let survivors: Vec<usize> = (1..rep.sizes()[p]).filter(|&e| !collapse[p][e]).collect();
        let mut row = vec![0; lay.size(p)];
        for (e, slot) in row.iter_mut().enumerate().skip(1) {
            let (qq, y) = lay.decode(p, e).expect("not the basepoint");
            let mut values = small[qq][y - 1].values().to_vec();
            values.resize(p + 1, top);
            let u = SimplexMap::new(p, top, values)?;
            let idx = 1 + homs[p].iter().position(|h| *h == u).expect("complete");
            *slot = 1 + survivors.iter().position(|&s| s == idx).ok_or_else(|| Error::Invalid("cone cell collapsed".into()))?;
        }
        matching.push(row);
    }
    Ok((q, matching))
}
