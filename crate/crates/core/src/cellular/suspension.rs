use std::sync::Arc;

use crate::error::{Error, Result};
use crate::shift::{collapse_maps, constant_to, eckmann_hilton, End};
use crate::simplex::SimplexMap;
use crate::skeletal::is_positive;
use crate::theta::{edge_inclusion, Cell, HomTable, ThetaMap};

use super::constructions::{
    boundary, quotient, quotient_by_pairs, representable, representable_map, smash_map, smash_with_projection, Yoneda,
};
use super::presheaf::{PresheafMap, TruncatedPresheaf};
use super::site::Site;

/// Numbering of `Σ_J X(S) = {•} ⊔ ⊔_i (X(S_i) ∖ •)` over the site one
/// above that of `X`.
struct SigmaLayout {
    inner: Arc<Site>,
    outer: Arc<Site>,
    children: Vec<Vec<usize>>,
    offsets: Vec<Vec<usize>>,
    sizes: Vec<usize>,
}

impl SigmaLayout {
    fn new(x: &TruncatedPresheaf) -> SigmaLayout {
        let inner = x.site().clone();
        let outer = Site::get(inner.bound() + 1);
        let mut children = Vec::new();
        let mut offsets = Vec::new();
        let mut sizes = Vec::new();
        for s in outer.cells() {
            let kids: Vec<usize> = s.children().iter().map(|c| inner.cell_index(c).expect("child within bound")).collect();
            let mut acc = 1;
            let offs = kids
                .iter()
                .map(|&c| {
                    let o = acc;
                    acc += x.sizes()[c] - 1;
                    o
                })
                .collect();
            children.push(kids);
            offsets.push(offs);
            sizes.push(acc);
        }
        SigmaLayout { inner, outer, children, offsets, sizes }
    }

    /// `(i, x)` with `i` 1-based and `x` a non-basepoint of `X(S_i)`.
    fn encode(&self, s: usize, i: usize, x: usize) -> usize {
        if x == 0 {
            0
        } else {
            self.offsets[s][i - 1] + x - 1
        }
    }

    fn decode(&self, s: usize, e: usize) -> Option<(usize, usize)> {
        if e == 0 {
            return None;
        }
        let offs = &self.offsets[s];
        let i = offs.partition_point(|&o| o <= e);
        Some((i, e - offs[i - 1] + 1))
    }
}

/// The edge `k` of the source of `α` whose image contains edge `i` of
/// the target, with the component between them.
fn edge_over(alpha: &ThetaMap, i: usize) -> Option<(usize, &ThetaMap)> {
    let v = alpha.simplicial();
    (1..=alpha.src().width()).find(|&k| v.gamma_range(k).contains(&i)).map(|k| (k, alpha.component(k, i).expect("in range")))
}

fn require_suspendable(x: &TruncatedPresheaf) -> Result<()> {
    if !x.is_pointed() {
        return Err(Error::Invalid("Σ_J needs a pointed presheaf".into()));
    }
    if !x.skeletal_complete() {
        return Err(Error::NotSkeletalComplete);
    }
    Ok(())
}

/// `Σ_J X`, exact up to one degree above the bound of `X`. An `S`-cell
/// is the basepoint or a pair `(i, x)` with `x` a non-basepoint cell of
/// `X` at the `i`-th child of `S`; `α = [v; α_{k,j}]` sends `(i, x)` to
/// `(k, α_{k,i}^* x)` when `i` lies over edge `k`, and to `•` otherwise.
pub fn sigma_j(x: &TruncatedPresheaf) -> Result<TruncatedPresheaf> {
    require_suspendable(x)?;
    let lay = SigmaLayout::new(x);
    let outer = lay.outer.clone();
    Ok(TruncatedPresheaf::from_fn(outer.clone(), true, lay.sizes.clone(), x.generated_in().map(|g| g + 1), |m, e| {
        let (s, t) = outer.ends(m);
        let Some((i, el)) = lay.decode(t, e) else { return 0 };
        let alpha = outer.map(m);
        match edge_over(alpha, i) {
            None => 0,
            Some((k, comp)) => {
                let id = lay.inner.map_id(comp).expect("component within bound");
                lay.encode(s, k, x.act(id, el))
            }
        }
    }))
}

/// `Σ_J φ : (i, x) ↦ (i, φ(x))`.
pub fn sigma_j_map(phi: &PresheafMap) -> Result<PresheafMap> {
    let src = sigma_j(phi.src())?;
    let tgt = sigma_j(phi.tgt())?;
    let (ls, lt) = (SigmaLayout::new(phi.src()), SigmaLayout::new(phi.tgt()));
    let components = (0..ls.sizes.len())
        .map(|s| {
            (0..ls.sizes[s])
                .map(|e| match ls.decode(s, e) {
                    None => 0,
                    Some((i, x)) => lt.encode(s, i, phi.apply(ls.children[s][i - 1], x)) as u32,
                })
                .collect()
        })
        .collect();
    Ok(PresheafMap::unchecked(src, tgt, components))
}

/// `Σ_J X` as the coend over the elements of `X` of the suspended
/// representables `Θ₊^{T+1} / (endpoints)`, computed by union-find, with
/// the comparison map from [`sigma_j`] (`(i, x) ↦ [S_i, x, (i, id)]`).
pub fn sigma_j_by_coend(x: &TruncatedPresheaf) -> Result<PresheafMap> {
    require_suspendable(x)?;
    let lay = SigmaLayout::new(x);
    let (inner, outer) = (lay.inner.clone(), lay.outer.clone());
    let nin = inner.cells().len();
    // generators at S: (T, x, i, φ : S_i -> T), packed after the basepoint
    let mut offsets: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut sizes = Vec::new();
    for s in 0..outer.cells().len() {
        let mut acc = 1;
        let mut per_t = vec![vec![0; lay.children[s].len()]; nin];
        for (t, row) in per_t.iter_mut().enumerate() {
            for (i0, &c) in lay.children[s].iter().enumerate() {
                row[i0] = acc;
                acc += (x.sizes()[t] - 1) * inner.hom_ids(c, t).len();
            }
        }
        offsets.push(per_t);
        sizes.push(acc);
    }
    let gen = |s: usize, t: usize, el: usize, i: usize, phi: usize| -> usize {
        let c = lay.children[s][i - 1];
        let r = inner.hom_ids(c, t);
        offsets[s][t][i - 1] + (el - 1) * r.len() + (phi - r.start)
    };
    let decode = |s: usize, e: usize| -> (usize, usize, usize, usize) {
        for t in (0..nin).rev() {
            for i0 in (0..lay.children[s].len()).rev() {
                let o = offsets[s][t][i0];
                let r = inner.hom_ids(lay.children[s][i0], t);
                if e >= o && e < o + (x.sizes()[t] - 1) * r.len() {
                    let k = e - o;
                    return (t, 1 + k / r.len(), i0 + 1, r.start + k % r.len());
                }
            }
        }
        unreachable!("generator index out of range")
    };
    let free = TruncatedPresheaf::from_fn(outer.clone(), true, sizes.clone(), None, |m, e| {
        if e == 0 {
            return 0;
        }
        let (s, u) = outer.ends(m);
        let (t, el, i, phi) = decode(u, e);
        match edge_over(outer.map(m), i) {
            None => 0,
            Some((k, comp)) => {
                let c = inner.map_id(comp).expect("component within bound");
                gen(s, t, el, k, inner.compose(phi, c))
            }
        }
    });
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); outer.cells().len()];
    for (s, rel) in pairs.iter_mut().enumerate() {
        for a in 0..inner.map_count() {
            let (t1, t) = inner.ends(a);
            for el in 1..x.sizes()[t] {
                let el1 = x.act(a, el);
                for (i0, &c) in lay.children[s].iter().enumerate() {
                    for phi in inner.hom_ids(c, t1) {
                        let lhs = gen(s, t, el, i0 + 1, inner.compose(a, phi));
                        let rhs = if el1 == 0 { 0 } else { gen(s, t1, el1, i0 + 1, phi) };
                        rel.push((lhs, rhs));
                    }
                }
            }
        }
    }
    let (coend, proj) = quotient_by_pairs(&free, &pairs, x.generated_in().map(|g| g + 1))?;
    let closed = sigma_j(x)?;
    let components = (0..outer.cells().len())
        .map(|s| {
            (0..lay.sizes[s])
                .map(|e| match lay.decode(s, e) {
                    None => 0,
                    Some((i, el)) => {
                        let c = lay.children[s][i - 1];
                        proj.apply(s, gen(s, c, el, i, inner.identity(c))) as u32
                    }
                })
                .collect()
        })
        .collect();
    PresheafMap::new(closed, coend, components)
}

/// `ΩY(T) = {y ∈ Y(T+1) | in₋^* y = in₊^* y = •}`, one degree below `Y`,
/// with each carrier's embedding into `Y(T+1)`.
struct OmegaLayout {
    outer: Arc<Site>,
    inner: Arc<Site>,
    shifted: Vec<usize>,
    members: Vec<Vec<usize>>,
    position: Vec<Vec<Option<usize>>>,
}

impl OmegaLayout {
    fn new(y: &TruncatedPresheaf) -> Result<OmegaLayout> {
        if !y.is_pointed() || y.bound() == 0 {
            return Err(Error::Invalid("Ω needs a pointed presheaf of bound at least 1".into()));
        }
        let outer = y.site().clone();
        let inner = Site::get(outer.bound() - 1);
        let mut shifted = Vec::new();
        let mut members = Vec::new();
        let mut position = Vec::new();
        let point = outer.cell_index(&Cell::point()).expect("point");
        for t in inner.cells() {
            let jt = t.shift();
            let j = outer.cell_index(&jt).expect("shift within bound");
            let ends: Vec<usize> =
                [0, 1].iter().map(|&v| outer.map_id(&ThetaMap::vertex(&jt, v).expect("vertex")).expect("vertex within bound")).collect();
            debug_assert!(ends.iter().all(|&m| outer.ends(m).0 == point));
            let mem: Vec<usize> = (0..y.sizes()[j]).filter(|&e| ends.iter().all(|&m| y.act(m, e) == 0)).collect();
            let mut pos = vec![None; y.sizes()[j]];
            for (k, &e) in mem.iter().enumerate() {
                pos[e] = Some(k);
            }
            shifted.push(j);
            members.push(mem);
            position.push(pos);
        }
        Ok(OmegaLayout { outer, inner, shifted, members, position })
    }
}

pub fn omega(y: &TruncatedPresheaf) -> Result<TruncatedPresheaf> {
    let lay = OmegaLayout::new(y)?;
    Ok(omega_from(y, &lay))
}

fn omega_from(y: &TruncatedPresheaf, lay: &OmegaLayout) -> TruncatedPresheaf {
    let inner = lay.inner.clone();
    let sizes = lay.members.iter().map(Vec::len).collect();
    TruncatedPresheaf::from_fn(inner.clone(), true, sizes, None, |m, k| {
        let (s, t) = inner.ends(m);
        let jm = lay.outer.map_id(&inner.map(m).shift()).expect("shift within bound");
        lay.position[s][y.act(jm, lay.members[t][k])].expect("endpoint condition is natural")
    })
}

/// `Ω h`, the restriction of `h` to endpoint-trivial cells.
pub fn omega_map(h: &PresheafMap) -> Result<PresheafMap> {
    let (ls, lt) = (OmegaLayout::new(h.src())?, OmegaLayout::new(h.tgt())?);
    let components = (0..ls.members.len())
        .map(|t| {
            ls.members[t]
                .iter()
                .map(|&e| lt.position[t][h.apply(ls.shifted[t], e)].expect("natural maps keep endpoints trivial") as u32)
                .collect()
        })
        .collect();
    Ok(PresheafMap::unchecked(omega_from(h.src(), &ls), omega_from(h.tgt(), &lt), components))
}

/// `f ↦ f♭`, `f♭(x) = f((1, x))` at `T + 1`.
pub fn adjunct_flat(x: &TruncatedPresheaf, f: &PresheafMap) -> Result<PresheafMap> {
    let sig = SigmaLayout::new(x);
    let om = OmegaLayout::new(f.tgt())?;
    if f.src() != &sigma_j(x)? {
        return Err(Error::Mismatch("f must start at Σ_J X".into()));
    }
    let mut components = Vec::with_capacity(x.sizes().len());
    for t in 0..x.sizes().len() {
        let j = om.shifted[t];
        let comp = (0..x.sizes()[t])
            .map(|e| {
                let y = f.apply(j, sig.encode(j, 1, e));
                om.position[t][y].map(|k| k as u32).ok_or_else(|| Error::Descent("image violates the endpoint condition".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        components.push(comp);
    }
    PresheafMap::new(x.clone(), omega_from(f.tgt(), &om), components)
}

/// The map `π_i : S -> S_i + 1` crushing every edge but the `i`-th.
pub fn edge_projection(s: &Cell, i: usize) -> Result<ThetaMap> {
    if i == 0 || i > s.width() {
        return Err(Error::Invalid(format!("{s} has no edge {i}")));
    }
    let values = (0..=s.width()).map(|v| usize::from(v >= i)).collect();
    let f = SimplexMap::new(s.width(), 1, values)?;
    let comps = (1..=s.width()).map(|k| if k == i { vec![ThetaMap::identity(s.child(i))] } else { Vec::new() }).collect();
    ThetaMap::new(s.clone(), s.child(i).shift(), f, comps)
}

/// `g ↦ g♯`, `g♯(i, x) = π_i^* g(x)`.
pub fn adjunct_sharp(y: &TruncatedPresheaf, g: &PresheafMap) -> Result<PresheafMap> {
    let x = g.src();
    let sig = SigmaLayout::new(x);
    let om = OmegaLayout::new(y)?;
    if g.tgt() != &omega_from(y, &om) {
        return Err(Error::Mismatch("g must land in ΩY".into()));
    }
    let outer = sig.outer.clone();
    let components = (0..sig.sizes.len())
        .map(|s| {
            (0..sig.sizes[s])
                .map(|e| match sig.decode(s, e) {
                    None => Ok(0),
                    Some((i, el)) => {
                        let c = sig.children[s][i - 1];
                        let pi = outer.map_id(&edge_projection(outer.cell(s), i)?).expect("within bound");
                        Ok(y.act(pi, om.members[c][g.apply(c, el)]) as u32)
                    }
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(sigma_j(x)?, y.clone(), components)
}

/// The count the non-degenerate `S`-cells of `Σ_J Θ₊^T` should have:
/// one at the point, `|Hom_{Θ⁺}(S', T)|` at `S = S' + 1`, none otherwise.
pub fn suspension_nondegenerate_formula(t: &Cell, s: &Cell, homs: &mut HomTable) -> usize {
    if s.is_point() {
        1
    } else if let Some(s1) = s.unshift() {
        homs.hom(s1, t).iter().filter(|m| is_positive(m)).count()
    } else {
        0
    }
}

/// The map `S -> T + 1` behind the cell `(i, φ)` of `Σ_J Θ₊^T`.
fn suspended_cell(s: &Cell, t: &Cell, i: usize, phi: &ThetaMap) -> ThetaMap {
    let values = (0..=s.width()).map(|v| usize::from(v >= i)).collect();
    let f = SimplexMap::new(s.width(), 1, values).expect("monotone");
    let comps = (1..=s.width()).map(|k| if k == i { vec![phi.clone()] } else { Vec::new() }).collect();
    ThetaMap::new(s.clone(), t.shift(), f, comps).expect("suspended cell")
}

fn comparison_from_pair(t: &Cell, bound: usize, a: &ThetaMap, b: &ThetaMap) -> Result<PresheafMap> {
    if bound < t.degree() + 1 {
        return Err(Error::OutOfBound(format!("{t} needs bound at least {}", t.degree() + 1)));
    }
    let x = representable(t, bound - 1, true);
    let src = sigma_j(&x)?;
    let site = src.site().clone();
    let inner = x.site().clone();
    let yt_inner = Yoneda::new(&inner, t, true);
    let yt = Yoneda::new(&site, t, true);
    let y1 = Yoneda::new(&site, &Cell::globe(1), true);
    let rep_t = representable(t, bound, true);
    let (_, circle_proj) = circle_with_projection(bound);
    let circle = circle_proj.tgt().clone();
    let (smash, smash_proj) = smash_with_projection(&rep_t, &circle)?;
    let lay = SigmaLayout::new(&x);
    let image = |s: usize, m: &ThetaMap| -> Result<usize> {
        let ea = yt.element(s, &a.compose(m)?);
        let eb = circle_proj.apply(s, y1.element(s, &b.compose(m)?));
        Ok(smash_proj.apply(s, ea * circle.sizes()[s] + eb))
    };
    let mut components = Vec::with_capacity(site.cells().len());
    for (s, sc) in site.cells().iter().enumerate() {
        for v in [0, 1] {
            let constant = constant_to(sc, &t.shift(), if v == 0 { End::Minus } else { End::Plus });
            if image(s, &constant)? != 0 {
                return Err(Error::Descent(format!("the endpoint {v} of {} survives at {sc}", t.shift())));
            }
        }
        let comp = (0..lay.sizes[s])
            .map(|e| match lay.decode(s, e) {
                None => Ok(0),
                Some((i, el)) => {
                    let phi = yt_inner.map(lay.children[s][i - 1], el).expect("not the basepoint");
                    image(s, &suspended_cell(sc, t, i, phi)).map(|v| v as u32)
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        components.push(comp);
    }
    PresheafMap::new(src, smash, components)
}

pub(crate) fn circle_with_projection(bound: usize) -> (TruncatedPresheaf, PresheafMap) {
    let (_, inc) = boundary(&Cell::globe(1), bound, true);
    let (q, proj) = quotient(&inc).expect("boundary is a subobject");
    let q = q.with_generated_in(Some(1));
    let proj = PresheafMap::unchecked(proj.src().clone(), q.clone(), proj.components().to_vec());
    (q, proj)
}

/// `Σ_J Θ₊^T -> Θ₊^T ∧ S¹` induced by the universal element
/// `(E_T, C_{1,T+1})`. Fails with [`Error::Descent`] if an endpoint of
/// `T + 1` does not reach the basepoint.
pub fn suspension_comparison(t: &Cell, bound: usize) -> Result<PresheafMap> {
    let c = collapse_maps(1, &t.shift())?.c_map;
    comparison_from_pair(t, bound, &eckmann_hilton(t), &c)
}

/// The same comparison assembled from piece maps `A_i + 2 -> X_i` into the
/// shuffle cells `X_i = [[ℓ+1]; A_1 … A_i, [0], A_{i+1} … A_ℓ]` of
/// `Θ^T × Θ^{1̄}`, glued by brute force over `Hom(T+1, T) × Hom(T+1, 1̄)`.
pub fn suspension_comparison_piecewise(t: &Cell, bound: usize) -> Result<PresheafMap> {
    let (a, b) = piecewise_pair(t)?;
    comparison_from_pair(t, bound, &a, &b)
}

/// The glued pair `(T+1 -> T, T+1 -> 1̄)` of the piecewise construction.
pub fn piecewise_pair(t: &Cell) -> Result<(ThetaMap, ThetaMap)> {
    let l = t.width();
    let jt = t.shift();
    let one = Cell::globe(1);
    let shuffle_cell = |i: usize| {
        let mut kids = t.children().to_vec();
        kids.insert(i, Cell::point());
        Cell::node(kids)
    };
    let projections = |i: usize| -> Result<(ThetaMap, ThetaMap)> {
        let x = shuffle_cell(i);
        let to_t = SimplexMap::new(l + 1, l, (0..=l + 1).map(|v| if v <= i { v } else { v - 1 }).collect())?;
        let comps_t = (1..=l + 1)
            .map(|e| match e.cmp(&(i + 1)) {
                std::cmp::Ordering::Less => vec![ThetaMap::identity(t.child(e))],
                std::cmp::Ordering::Equal => Vec::new(),
                std::cmp::Ordering::Greater => vec![ThetaMap::identity(t.child(e - 1))],
            })
            .collect();
        let to_1 = SimplexMap::new(l + 1, 1, (0..=l + 1).map(|v| usize::from(v > i)).collect())?;
        let comps_1 = (1..=l + 1).map(|e| if e == i + 1 { vec![ThetaMap::identity(&Cell::point())] } else { Vec::new() }).collect();
        Ok((ThetaMap::new(x.clone(), t.clone(), to_t, comps_t)?, ThetaMap::new(x, one.clone(), to_1, comps_1)?))
    };
    if l == 0 {
        let (pt, p1) = projections(0)?;
        let id = ThetaMap::identity(&jt);
        return Ok((pt.compose(&id)?, p1.compose(&id)?));
    }
    let mut constraints = Vec::with_capacity(l);
    for i in 1..=l {
        let ai = t.child(i);
        let src = ai.shift();
        let x = shuffle_cell(i);
        let mut comps = Vec::with_capacity(l + 1);
        for j in 1..=l + 1 {
            comps.push(match j.cmp(&i) {
                std::cmp::Ordering::Less => constant_to(&src, t.child(j), End::Plus),
                std::cmp::Ordering::Equal => eckmann_hilton(ai),
                std::cmp::Ordering::Greater if j == i + 1 => ThetaMap::to_point(&src),
                std::cmp::Ordering::Greater => constant_to(&src, t.child(j - 1), End::Minus),
            });
        }
        let long = SimplexMap::new(1, l + 1, vec![0, l + 1])?;
        let piece = ThetaMap::new(src.shift(), x, long, vec![comps])?;
        let (pt, p1) = projections(i)?;
        let restrict = edge_inclusion(t, i)?.shift();
        constraints.push((restrict, pt.compose(&piece)?, p1.compose(&piece)?));
    }
    let mut homs = HomTable::default();
    let glue = |target: &Cell, pick: fn(&(ThetaMap, ThetaMap, ThetaMap)) -> &ThetaMap, homs: &mut HomTable| -> Result<ThetaMap> {
        let found: Vec<ThetaMap> =
            homs.hom(&jt, target).iter().filter(|m| constraints.iter().all(|c| m.compose(&c.0).as_ref() == Ok(pick(c)))).cloned().collect();
        match found.len() {
            1 => Ok(found.into_iter().next().expect("one")),
            n => Err(Error::Incompatible(format!("{n} maps out of {jt} restrict to the pieces"))),
        }
    };
    let a = glue(t, |c| &c.1, &mut homs)?;
    let b = glue(&one, |c| &c.2, &mut homs)?;
    Ok((a, b))
}

/// Both ways around the naturality square of the comparison along
/// `α : S -> T`: `c_T ∘ Σ_J Θ₊^α` and `(Θ₊^α ∧ S¹) ∘ c_S`.
pub fn comparison_square(alpha: &ThetaMap, bound: usize) -> Result<(PresheafMap, PresheafMap)> {
    let c_s = suspension_comparison(alpha.src(), bound)?;
    let c_t = suspension_comparison(alpha.tgt(), bound)?;
    let left = c_t.compose(&sigma_j_map(&representable_map(alpha, bound - 1, true))?)?;
    let (_, s1) = circle_with_projection(bound);
    let right = smash_map(&representable_map(alpha, bound, true), &PresheafMap::identity(s1.tgt()))?.compose(&c_s)?;
    Ok((left, right))
}
