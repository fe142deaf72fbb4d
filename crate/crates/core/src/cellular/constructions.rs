use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::skeletal::{coface_pullback, coface_typology, CofacePullback};
use crate::theta::{Cell, HomTable, ThetaMap};

use super::presheaf::{PresheafMap, TruncatedPresheaf};
use super::site::Site;

/// The elements of `Θ^T` at each cell of a site, with their indices.
pub(crate) struct Yoneda {
    pub(crate) pointed: bool,
    pub(crate) elements: Vec<Vec<ThetaMap>>,
    index: Vec<HashMap<ThetaMap, usize>>,
}

impl Yoneda {
    pub(crate) fn new(site: &Site, t: &Cell, pointed: bool) -> Yoneda {
        let mut homs = HomTable::default();
        let elements: Vec<Vec<ThetaMap>> = site.cells().iter().map(|s| homs.hom(s, t).to_vec()).collect();
        let index = elements.iter().map(|v| v.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()).collect();
        Yoneda { pointed, elements, index }
    }

    /// Carrier index of `m : S -> T`.
    pub(crate) fn element(&self, s: usize, m: &ThetaMap) -> usize {
        self.index[s][m] + usize::from(self.pointed)
    }

    /// The map behind a carrier index, `None` for the basepoint.
    pub(crate) fn map(&self, s: usize, x: usize) -> Option<&ThetaMap> {
        match (self.pointed, x) {
            (true, 0) => None,
            (true, x) => Some(&self.elements[s][x - 1]),
            (false, x) => Some(&self.elements[s][x]),
        }
    }

    pub(crate) fn presheaf(&self, site: &Arc<Site>, generated_in: Option<usize>) -> TruncatedPresheaf {
        let p = usize::from(self.pointed);
        let sizes = self.elements.iter().map(|v| v.len() + p).collect();
        TruncatedPresheaf::from_fn(site.clone(), self.pointed, sizes, generated_in, |m, x| {
            let (s, t) = site.ends(m);
            match self.map(t, x) {
                None => 0,
                Some(y) => self.element(s, &y.compose(site.map(m)).expect("composable")),
            }
        })
    }
}

/// The representable `Θ^T` (or `Θ₊^T`, with a disjoint basepoint),
/// truncated at `bound`. `T` may lie above the bound.
pub fn representable(t: &Cell, bound: usize, pointed: bool) -> TruncatedPresheaf {
    let site = Site::get(bound);
    Yoneda::new(&site, t, pointed).presheaf(&site, Some(t.degree()))
}

/// The subpresheaf on the marked elements, with its inclusion.
pub fn subobject(x: &TruncatedPresheaf, keep: &[Vec<bool>]) -> Result<(TruncatedPresheaf, PresheafMap)> {
    let site = x.site();
    let n = site.cells().len();
    if keep.len() != n || keep.iter().zip(x.sizes()).any(|(k, &s)| k.len() != s) {
        return Err(Error::Mismatch("marking does not match the carriers".into()));
    }
    if x.is_pointed() && keep.iter().any(|k| !k[0]) {
        return Err(Error::NotSubobject("the basepoint must be kept".into()));
    }
    for m in 0..site.map_count() {
        let (s, t) = site.ends(m);
        if let Some(e) = (0..x.sizes()[t]).find(|&e| keep[t][e] && !keep[s][x.act(m, e)]) {
            return Err(Error::NotSubobject(format!(
                "element {e} of {} leaves the marking along {}",
                site.cell(t),
                site.map(m).to_full_string()
            )));
        }
    }
    let old: Vec<Vec<u32>> = keep.iter().map(|k| (0..k.len() as u32).filter(|&e| k[e as usize]).collect()).collect();
    let mut new_index = vec![Vec::new(); n];
    for c in 0..n {
        new_index[c] = vec![u32::MAX; x.sizes()[c]];
        for (i, &e) in old[c].iter().enumerate() {
            new_index[c][e as usize] = i as u32;
        }
    }
    let sizes = old.iter().map(Vec::len).collect();
    let sub = TruncatedPresheaf::from_fn(site.clone(), x.is_pointed(), sizes, None, |m, e| {
        let (s, t) = site.ends(m);
        new_index[s][x.act(m, old[t][e] as usize)] as usize
    });
    let inc = PresheafMap::unchecked(sub.clone(), x.clone(), old);
    Ok((sub, inc))
}

/// The subpresheaf of `Θ^T` on maps that factor through a coface: the
/// boundary `∂Θ^T`, with its inclusion.
pub fn boundary(t: &Cell, bound: usize, pointed: bool) -> (TruncatedPresheaf, PresheafMap) {
    let site = Site::get(bound);
    let y = Yoneda::new(&site, t, pointed);
    let rep = y.presheaf(&site, Some(t.degree()));
    let mut keep: Vec<Vec<bool>> = rep.sizes().iter().map(|&n| vec![false; n]).collect();
    if pointed {
        keep.iter_mut().for_each(|k| k[0] = true);
    }
    let mut homs = HomTable::default();
    for (_, c) in coface_typology(t) {
        for (s, cell) in site.cells().iter().enumerate() {
            for m in homs.hom(cell, c.src()) {
                keep[s][y.element(s, &c.compose(m).expect("composable"))] = true;
            }
        }
    }
    let (sub, inc) = subobject(&rep, &keep).expect("images of cofaces are closed");
    let sub = sub.with_generated_in(Some(t.degree().saturating_sub(1)));
    let inc = PresheafMap { src: sub.clone(), tgt: inc.tgt, components: inc.components };
    (sub, inc)
}

/// Union-find with minimal representatives.
pub(crate) struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    pub(crate) fn new(n: usize) -> Self {
        Classes { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
        }
    }

    /// Class number of every element, numbering classes by least member.
    pub(crate) fn labels(&mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut label = vec![u32::MAX; n];
        let mut next = 0u32;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == u32::MAX {
                label[r] = next;
                next += 1;
            }
            label[x] = label[r];
        }
        (label, next as usize)
    }
}

/// The cellwise quotient of `x` by the equivalence relation generated by
/// `pairs[c]` at each cell `c`. The relation must be a congruence (it is
/// whenever it comes from a pair of natural maps); this is checked.
pub(crate) fn quotient_by_pairs(
    x: &TruncatedPresheaf,
    pairs: &[Vec<(usize, usize)>],
    generated_in: Option<usize>,
) -> Result<(TruncatedPresheaf, PresheafMap)> {
    let site = x.site();
    let n = site.cells().len();
    let mut labels = Vec::with_capacity(n);
    let mut reps = Vec::with_capacity(n);
    let mut sizes = Vec::with_capacity(n);
    for c in 0..n {
        let mut uf = Classes::new(x.sizes()[c]);
        for &(a, b) in &pairs[c] {
            uf.union(a, b);
        }
        let (label, k) = uf.labels();
        let mut rep = vec![usize::MAX; k];
        for (e, &l) in label.iter().enumerate() {
            if rep[l as usize] == usize::MAX {
                rep[l as usize] = e;
            }
        }
        labels.push(label);
        reps.push(rep);
        sizes.push(k);
    }
    for m in 0..site.map_count() {
        let (s, t) = site.ends(m);
        for e in 0..x.sizes()[t] {
            if labels[s][x.act(m, e)] != labels[s][x.act(m, reps[t][labels[t][e] as usize])] {
                return Err(Error::Invalid(format!("relation is not a congruence along {}", site.map(m).to_full_string())));
            }
        }
    }
    let q = TruncatedPresheaf::from_fn(site.clone(), x.is_pointed(), sizes, generated_in, |m, k| {
        let (s, t) = site.ends(m);
        labels[s][x.act(m, reps[t][k])] as usize
    });
    let proj = PresheafMap::unchecked(x.clone(), q.clone(), labels);
    Ok((q, proj))
}

fn same_site(xs: &[&TruncatedPresheaf]) -> Result<()> {
    match xs.split_first() {
        Some((first, rest)) if rest.iter().any(|x| x.bound() != first.bound() || x.is_pointed() != first.is_pointed()) => {
            Err(Error::Mismatch("presheaves must share bound and pointedness".into()))
        }
        _ => Ok(()),
    }
}

fn max_generated(xs: &[&TruncatedPresheaf]) -> Option<usize> {
    xs.iter().try_fold(0, |acc, x| x.generated_in().map(|g| acc.max(g)))
}

/// Disjoint union, or the wedge when pointed, with the injections.
pub fn coproduct(xs: &[&TruncatedPresheaf]) -> Result<(TruncatedPresheaf, Vec<PresheafMap>)> {
    same_site(xs)?;
    let first = xs.first().ok_or_else(|| Error::Invalid("empty coproduct".into()))?;
    let site = first.site().clone();
    let pointed = first.is_pointed();
    let p = usize::from(pointed);
    let n = site.cells().len();
    let offsets: Vec<Vec<usize>> = (0..n)
        .map(|c| {
            let mut acc = p;
            xs.iter()
                .map(|x| {
                    let o = acc;
                    acc += x.sizes()[c] - p;
                    o
                })
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = (0..n).map(|c| p + xs.iter().map(|x| x.sizes()[c] - p).sum::<usize>()).collect();
    let inj = |k: usize, c: usize, e: usize| if pointed && e == 0 { 0 } else { offsets[c][k] + e - p };
    let mut owner: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for c in 0..n {
        owner[c] = vec![(usize::MAX, 0); sizes[c]];
        for (k, x) in xs.iter().enumerate() {
            for e in p..x.sizes()[c] {
                owner[c][inj(k, c, e)] = (k, e);
            }
        }
    }
    let sum = TruncatedPresheaf::from_fn(site.clone(), pointed, sizes, max_generated(xs), |m, e| {
        let (s, t) = site.ends(m);
        let (k, inner) = owner[t][e];
        if k == usize::MAX {
            0
        } else {
            inj(k, s, xs[k].act(m, inner))
        }
    });
    let injections = xs
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let comps = (0..n).map(|c| (0..x.sizes()[c]).map(|e| inj(k, c, e) as u32).collect()).collect();
            PresheafMap::unchecked((*x).clone(), sum.clone(), comps)
        })
        .collect();
    Ok((sum, injections))
}

/// The coequalizer of `f, g : A -> X`, with the projection from `X`.
pub fn coequalizer(f: &PresheafMap, g: &PresheafMap) -> Result<(TruncatedPresheaf, PresheafMap)> {
    if f.src() != g.src() || f.tgt() != g.tgt() {
        return Err(Error::Mismatch("parallel maps required".into()));
    }
    let a = f.src();
    let pairs: Vec<Vec<(usize, usize)>> =
        (0..a.sizes().len()).map(|c| (0..a.sizes()[c]).map(|e| (f.apply(c, e), g.apply(c, e))).collect()).collect();
    quotient_by_pairs(f.tgt(), &pairs, f.tgt().generated_in())
}

/// The pushout of `f : A -> B` and `g : A -> C`, with both legs.
pub fn pushout(f: &PresheafMap, g: &PresheafMap) -> Result<(TruncatedPresheaf, PresheafMap, PresheafMap)> {
    if f.src() != g.src() {
        return Err(Error::Mismatch("maps must share a source".into()));
    }
    let (sum, inj) = coproduct(&[f.tgt(), g.tgt()])?;
    let f2 = inj[0].compose(f)?;
    let g2 = inj[1].compose(g)?;
    let (p, proj) = coequalizer(&f2, &g2)?;
    let gen = max_generated(&[f.tgt(), g.tgt()]);
    let p = p.with_generated_in(gen);
    let proj = PresheafMap::unchecked(sum, p.clone(), proj.components);
    Ok((p.clone(), proj.compose(&inj[0])?, proj.compose(&inj[1])?))
}

/// `X/A`: collapse the image of a mono `A -> X` to the basepoint.
pub fn quotient(inclusion: &PresheafMap) -> Result<(TruncatedPresheaf, PresheafMap)> {
    let x = inclusion.tgt();
    if !x.is_pointed() {
        return Err(Error::Invalid("quotients by subobjects need pointed presheaves".into()));
    }
    if !inclusion.is_mono() {
        return Err(Error::NotSubobject("the map into X is not injective".into()));
    }
    let a = inclusion.src();
    let pairs: Vec<Vec<(usize, usize)>> =
        (0..a.sizes().len()).map(|c| (0..a.sizes()[c]).map(|e| (inclusion.apply(c, e), 0)).collect()).collect();
    quotient_by_pairs(x, &pairs, x.generated_in())
}

/// The cellwise product; elements are numbered `x * |Y(T)| + y`, so the
/// pointed basepoint `(•, •)` is element 0.
pub fn product(x: &TruncatedPresheaf, y: &TruncatedPresheaf) -> Result<TruncatedPresheaf> {
    same_site(&[x, y])?;
    let site = x.site().clone();
    let sizes: Vec<usize> = x.sizes().iter().zip(y.sizes()).map(|(a, b)| a * b).collect();
    let gen = x.generated_in().zip(y.generated_in()).map(|(a, b)| a + b);
    Ok(TruncatedPresheaf::from_fn(site.clone(), x.is_pointed(), sizes, gen, |m, e| {
        let (s, t) = site.ends(m);
        let (a, b) = (e / y.sizes()[t], e % y.sizes()[t]);
        x.act(m, a) * y.sizes()[s] + y.act(m, b)
    }))
}

/// `X ∧ Y` with the quotient map from the product.
pub(crate) fn smash_with_projection(x: &TruncatedPresheaf, y: &TruncatedPresheaf) -> Result<(TruncatedPresheaf, PresheafMap)> {
    if !x.is_pointed() || !y.is_pointed() {
        return Err(Error::Invalid("smash products need pointed presheaves".into()));
    }
    let prod = product(x, y)?;
    let keep: Vec<Vec<bool>> =
        (0..prod.sizes().len()).map(|c| (0..prod.sizes()[c]).map(|e| e / y.sizes()[c] == 0 || e % y.sizes()[c] == 0).collect()).collect();
    let (_, wedge) = subobject(&prod, &keep)?;
    quotient(&wedge)
}

pub fn smash(x: &TruncatedPresheaf, y: &TruncatedPresheaf) -> Result<TruncatedPresheaf> {
    Ok(smash_with_projection(x, y)?.0)
}

/// `S¹ = Θ₊^{1̄} / ∂Θ₊^{1̄}`.
pub fn circle(bound: usize) -> TruncatedPresheaf {
    let (_, inc) = boundary(&Cell::globe(1), bound, true);
    quotient(&inc).expect("boundary is a subobject").0.with_generated_in(Some(1))
}

/// `∂Θ^T` rebuilt as the coequalizer of `⊔ Θ^{B} ×_{Θ^T} Θ^{C} ⇉ ⊔ Θ^{B}`
/// over coface pairs, with the comparison map into `Θ^T`. Representable
/// fiber products contribute their two legs; the others their pointwise
/// pairs.
pub fn boundary_by_coequalizer(t: &Cell, bound: usize) -> Result<(TruncatedPresheaf, PresheafMap)> {
    let site = Site::get(bound);
    let cofaces: Vec<ThetaMap> = coface_typology(t).into_iter().map(|(_, c)| c).collect();
    let reps: Vec<TruncatedPresheaf> = cofaces.iter().map(|c| representable(c.src(), bound, false)).collect();
    let rep_refs: Vec<&TruncatedPresheaf> = reps.iter().collect();
    let target = Yoneda::new(&site, t, false);
    if cofaces.is_empty() {
        let empty = TruncatedPresheaf::from_fn(site.clone(), false, vec![0; site.cells().len()], Some(0), |_, _| 0);
        let into = PresheafMap::unchecked(empty.clone(), target.presheaf(&site, Some(t.degree())), vec![Vec::new(); site.cells().len()]);
        return Ok((empty, into));
    }
    let (sum, inj) = coproduct(&rep_refs)?;
    let ys: Vec<Yoneda> = cofaces.iter().map(|c| Yoneda::new(&site, c.src(), false)).collect();
    let mut homs = HomTable::default();
    let n = site.cells().len();
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (a, ca) in cofaces.iter().enumerate() {
        for (b, cb) in cofaces.iter().enumerate().skip(a + 1) {
            match coface_pullback(ca, cb)? {
                CofacePullback::Empty => {}
                CofacePullback::Cell { cell, proj_left, proj_right } => {
                    for (s, sc) in site.cells().iter().enumerate() {
                        for w in homs.hom(sc, &cell) {
                            let l = ys[a].element(s, &proj_left.compose(w)?);
                            let r = ys[b].element(s, &proj_right.compose(w)?);
                            pairs[s].push((inj[a].apply(s, l), inj[b].apply(s, r)));
                        }
                    }
                }
                CofacePullback::Presheaf(_) => {
                    for s in 0..n {
                        for (l, y) in ys[a].elements[s].iter().enumerate() {
                            let fy = ca.compose(y)?;
                            for (r, z) in ys[b].elements[s].iter().enumerate() {
                                if cb.compose(z)? == fy {
                                    pairs[s].push((inj[a].apply(s, l), inj[b].apply(s, r)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let gen = Some(t.degree().saturating_sub(1));
    let (q, proj) = quotient_by_pairs(&sum, &pairs, gen)?;
    let owner: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|s| {
            let mut v = vec![(0, 0); sum.sizes()[s]];
            for (k, i) in inj.iter().enumerate() {
                for e in 0..reps[k].sizes()[s] {
                    v[i.apply(s, e)] = (k, e);
                }
            }
            v
        })
        .collect();
    let rep_t = target.presheaf(&site, Some(t.degree()));
    let mut comps: Vec<Vec<u32>> = q.sizes().iter().map(|&k| vec![u32::MAX; k]).collect();
    for s in 0..n {
        for e in 0..sum.sizes()[s] {
            let (k, inner) = owner[s][e];
            let img = target.element(s, &cofaces[k].compose(&ys[k].elements[s][inner])?) as u32;
            let slot = &mut comps[s][proj.apply(s, e)];
            if *slot != u32::MAX && *slot != img {
                return Err(Error::Invalid("coequalizer does not map to the representable".into()));
            }
            *slot = img;
        }
    }
    let into = PresheafMap::new(q.clone(), rep_t, comps)?;
    Ok((q, into))
}

/// `Θ^α : Θ^S -> Θ^T`, postcomposition with `α`.
pub fn representable_map(alpha: &ThetaMap, bound: usize, pointed: bool) -> PresheafMap {
    let site = Site::get(bound);
    let ys = Yoneda::new(&site, alpha.src(), pointed);
    let yt = Yoneda::new(&site, alpha.tgt(), pointed);
    let components = (0..site.cells().len())
        .map(|s| {
            let n = ys.elements[s].len() + usize::from(pointed);
            (0..n)
                .map(|e| match ys.map(s, e) {
                    None => 0,
                    Some(m) => yt.element(s, &alpha.compose(m).expect("composable")) as u32,
                })
                .collect()
        })
        .collect();
    let src = ys.presheaf(&site, Some(alpha.src().degree()));
    let tgt = yt.presheaf(&site, Some(alpha.tgt().degree()));
    PresheafMap::unchecked(src, tgt, components)
}

/// `f ∧ g`.
pub fn smash_map(f: &PresheafMap, g: &PresheafMap) -> Result<PresheafMap> {
    let (src, ps) = smash_with_projection(f.src(), g.src())?;
    let (tgt, pt) = smash_with_projection(f.tgt(), g.tgt())?;
    let n = src.sizes().len();
    let mut components: Vec<Vec<u32>> = src.sizes().iter().map(|&k| vec![u32::MAX; k]).collect();
    for c in 0..n {
        let (ys, yt) = (g.src().sizes()[c], g.tgt().sizes()[c]);
        for e in 0..ps.src().sizes()[c] {
            let (a, b) = (e / ys, e % ys);
            let img = pt.apply(c, f.apply(c, a) * yt + g.apply(c, b)) as u32;
            let slot = &mut components[c][ps.apply(c, e)];
            if *slot != u32::MAX && *slot != img {
                return Err(Error::Descent("f ∧ g is not well defined".into()));
            }
            *slot = img;
        }
    }
    PresheafMap::new(src, tgt, components)
}
