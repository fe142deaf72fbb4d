//! The skeletal structure of Θ: signs of maps, the `Θ⁻`/`Θ⁺`
//! factorization, cofaces and their fiber products.

mod cofaces;
mod limits;

use std::fmt;

use crate::error::{Error, Result};
use crate::simplex::SimplexMap;
use crate::theta::{enumerate_cells, Cell, HomTable, ThetaMap};

pub use cofaces::{boundary_cofaces, coface_factor, coface_typology, CofaceKind};
pub use limits::{coface_pullback, limit, CofacePullback, Diagram, Limit, WCell};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapClass {
    Identity,
    Positive,
    Negative,
    Mixed,
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapClass::Identity => "identity",
            MapClass::Positive => "positive",
            MapClass::Negative => "negative",
            MapClass::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

pub fn classify(alpha: &ThetaMap) -> MapClass {
    if alpha.is_identity() {
        MapClass::Identity
    } else if is_negative(alpha) {
        MapClass::Negative
    } else if jointly_mono(alpha.src(), &[alpha]) {
        MapClass::Positive
    } else {
        MapClass::Mixed
    }
}

/// Surjective simplicial part and negative components, recursively.
pub fn is_negative(alpha: &ThetaMap) -> bool {
    alpha.simplicial().is_surjective() && alpha.iter_components().all(|(_, _, c)| is_negative(c))
}

pub fn is_positive(alpha: &ThetaMap) -> bool {
    jointly_mono(alpha.src(), &[alpha])
}

/// Whether a family of maps out of `src` is jointly monic: the vertex
/// tuples are distinct and, over each edge, the combined component family
/// is again jointly monic.
pub fn jointly_mono(src: &Cell, family: &[&ThetaMap]) -> bool {
    let m = src.width();
    if family.is_empty() {
        return m == 0;
    }
    for x in 1..=m {
        if family.iter().all(|a| a.simplicial().apply(x - 1) == a.simplicial().apply(x)) {
            return false;
        }
    }
    (1..=m).all(|i| {
        let sub: Vec<&ThetaMap> =
            family.iter().flat_map(|a| a.simplicial().gamma_range(i).map(move |j| a.component(i, j).expect("in range"))).collect();
        jointly_mono(src.child(i), &sub)
    })
}

/// `λ(tgt) − λ(src)`.
pub fn degree_change(alpha: &ThetaMap) -> isize {
    alpha.tgt().degree() as isize - alpha.src().degree() as isize
}

/// Factors a family `α_s : S -> T_s` as `δ_s ∘ π` with `π` negative and
/// the `δ_s` jointly monic. Returns `π` and the `δ_s`.
pub fn factor_family(src: &Cell, family: &[&ThetaMap]) -> (ThetaMap, Vec<ThetaMap>) {
    let m = src.width();
    let tuple = |x: usize| family.iter().map(|a| a.simplicial().apply(x)).collect::<Vec<_>>();
    let mut e = vec![0usize];
    let mut changes = Vec::new();
    for x in 1..=m {
        if tuple(x) == tuple(x - 1) {
            e.push(*e.last().unwrap());
        } else {
            e.push(e.last().unwrap() + 1);
            changes.push(x);
        }
    }
    let k = changes.len();
    let e_map = SimplexMap::new(m, k, e).expect("monotone");
    let mut mid_children = Vec::with_capacity(k);
    let mut pi_components: Vec<Vec<ThetaMap>> = vec![Vec::new(); m];
    let mut delta_parts: Vec<Vec<Vec<ThetaMap>>> = vec![Vec::with_capacity(k); family.len()];
    for &i in &changes {
        let sub: Vec<&ThetaMap> =
            family.iter().flat_map(|a| a.simplicial().gamma_range(i).map(move |j| a.component(i, j).expect("in range"))).collect();
        let (pi_i, deltas) = factor_family(src.child(i), &sub);
        mid_children.push(pi_i.tgt().clone());
        pi_components[i - 1].push(pi_i);
        let mut it = deltas.into_iter();
        for (s, a) in family.iter().enumerate() {
            let n = a.simplicial().gamma_range(i).count();
            delta_parts[s].push(it.by_ref().take(n).collect());
        }
    }
    let mid = Cell::node(mid_children);
    let pi = ThetaMap::new(src.clone(), mid.clone(), e_map, pi_components).expect("valid negative part");
    let mut points = vec![0usize];
    points.extend(changes.iter().copied());
    let deltas = family
        .iter()
        .zip(delta_parts)
        .map(|(a, comps)| {
            let values = points.iter().map(|&x| a.simplicial().apply(x)).collect();
            let f = SimplexMap::new(k, a.tgt().width(), values).expect("monotone");
            ThetaMap::new(mid.clone(), a.tgt().clone(), f, comps).expect("valid positive part")
        })
        .collect();
    (pi, deltas)
}

/// The unique factorization `α = δ ∘ π` with `π ∈ Θ⁻` and `δ ∈ Θ⁺`.
pub fn skeletal_factorize(alpha: &ThetaMap) -> (ThetaMap, ThetaMap) {
    let (pi, mut deltas) = factor_family(alpha.src(), &[alpha]);
    (pi, deltas.pop().expect("one map"))
}

/// Factorization by exhaustive search over middle cells of degree at most
/// `min(λ(src), λ(tgt))`. Returns every factorization found; `Θ` being
/// rigid, a correct structure yields exactly one.
pub fn skeletal_factorize_search(alpha: &ThetaMap, homs: &mut HomTable) -> Vec<(ThetaMap, ThetaMap)> {
    let bound = alpha.src().degree().min(alpha.tgt().degree());
    let mut out = Vec::new();
    for mid in enumerate_cells(bound) {
        let pis: Vec<ThetaMap> = homs.hom(alpha.src(), &mid).iter().filter(|p| is_negative(p)).cloned().collect();
        if pis.is_empty() {
            continue;
        }
        let deltas: Vec<ThetaMap> = homs.hom(&mid, alpha.tgt()).iter().filter(|d| is_positive(d)).cloned().collect();
        for p in &pis {
            for d in &deltas {
                if d.compose(p).as_ref() == Ok(alpha) {
                    out.push((p.clone(), d.clone()));
                }
            }
        }
    }
    out
}

/// Finds `e : X -> B` with `c_t ∘ e = g_t` for a jointly monic family
/// `c_t : B -> A_t`.
pub fn factor_through_family(b: &Cell, monos: &[&ThetaMap], targets: &[&ThetaMap]) -> Option<ThetaMap> {
    let x = targets.first().map(|g| g.src().clone())?;
    factor_rec(b, &x, monos, targets)
}

fn factor_rec(b: &Cell, x: &Cell, monos: &[&ThetaMap], targets: &[&ThetaMap]) -> Option<ThetaMap> {
    if monos.is_empty() {
        return if b.is_point() { Some(ThetaMap::to_point(x)) } else { None };
    }
    let wb = b.width();
    let mut values = Vec::with_capacity(x.width() + 1);
    for p in 0..=x.width() {
        let want: Vec<usize> = targets.iter().map(|g| g.simplicial().apply(p)).collect();
        let hit = (0..=wb).find(|&q| monos.iter().map(|c| c.simplicial().apply(q)).eq(want.iter().copied()))?;
        values.push(hit);
    }
    let e = SimplexMap::new(x.width(), wb, values).ok()?;
    let mut components = Vec::with_capacity(x.width());
    for i in 1..=x.width() {
        let mut fam = Vec::new();
        for k in e.gamma_range(i) {
            let mut sub_monos = Vec::new();
            let mut sub_targets = Vec::new();
            for (c, g) in monos.iter().zip(targets) {
                for j in c.simplicial().gamma_range(k) {
                    sub_monos.push(c.component(k, j).expect("in range"));
                    sub_targets.push(g.component(i, j)?);
                }
            }
            fam.push(factor_rec(b.child(k), x.child(i), &sub_monos, &sub_targets)?);
        }
        components.push(fam);
    }
    let out = ThetaMap::new(x.clone(), b.clone(), e, components).ok()?;
    monos.iter().zip(targets).all(|(c, g)| c.compose(&out).as_ref() == Ok(*g)).then_some(out)
}

/// All `σ` with `π ∘ σ = id`.
pub fn sections(pi: &ThetaMap, homs: &mut HomTable) -> Vec<ThetaMap> {
    let id = ThetaMap::identity(pi.tgt());
    homs.hom(pi.tgt(), pi.src()).iter().filter(|s| pi.compose(s).as_ref() == Ok(&id)).cloned().collect()
}

/// Probe oracle: `α ∘ −` injective on `Hom(P, src)` for every probe `P`
/// of degree at most `max_probe`.
pub fn is_mono_by_probes(alpha: &ThetaMap, max_probe: usize, homs: &mut HomTable) -> bool {
    enumerate_cells(max_probe).iter().all(|p| {
        let maps = homs.hom(p, alpha.src()).to_vec();
        let mut images: Vec<ThetaMap> = maps.iter().map(|m| alpha.compose(m).expect("composable")).collect();
        images.sort();
        images.dedup();
        images.len() == maps.len()
    })
}

pub(crate) fn require_positive(delta: &ThetaMap) -> Result<()> {
    match classify(delta) {
        MapClass::Positive | MapClass::Identity => Ok(()),
        _ => Err(Error::NotPositive),
    }
}
