//! Named invariant suites. Every check walks its cases from small to
//! large and stops at the first failure, so the reported counterexample
//! is a smallest one in that order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::cellular::{
    adjunct_flat, adjunct_sharp, boundary, boundary_by_coequalizer, circle, comparison_square, omega, presheaf_map_enumerate, pushout,
    representable, sigma_j, sigma_j_map, suspension_comparison, suspension_comparison_piecewise, suspension_nondegenerate_formula,
    PresheafMap, TruncatedPresheaf,
};
use crate::gamma::{gamma_pullback, GammaMorphism};
use crate::shift::{collapse_maps, collapse_recursive, eckmann_hilton_square};
use crate::simplex::SimplexMap;
use crate::skeletal::{
    classify, coface_factor, coface_pullback, coface_typology, is_negative, is_positive, skeletal_factorize, CofacePullback, MapClass,
};
use crate::spectra::{is_kan_spectrum, sigma_k, stable_compose, suspension_spectrum_prefix, PointedSimplicialSet, StableSimplexMap};
use crate::theta::{enumerate_cells, Cell, HomTable, ThetaMap};

/// The outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} cases)", self.name, self.cases),
            Some(c) => write!(f, "FAIL {} after {} cases: {c}", self.name, self.cases),
        }
    }
}

/// Counts cases and keeps the first failure.
struct Tally {
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Tally {
        Tally { name: name.into(), cases: 0, failure: None }
    }

    /// Records a case; returns `false` once a failure is held.
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.cases += 1;
        if !ok {
            self.failure = Some(what());
        }
        ok
    }

    fn done(self) -> Check {
        Check { name: self.name, cases: self.cases, failure: self.failure }
    }
}

pub const SUITES: [&str; 7] = ["gamma", "theta", "skeletal", "shift", "cellular", "spectra", "all"];

/// Runs a named suite at its default scope.
pub fn run_suite(name: &str) -> Option<Vec<Check>> {
    let checks = match name {
        "gamma" => vec![gamma_laws(3), gamma_pullback_universal(3, 3)],
        "theta" => vec![theta_laws(3), globular_round_trip(6)],
        "skeletal" => vec![skeletal_factorization(4), coface_pullbacks(4, 3)],
        "shift" => vec![collapse_splittings(4, 4), collapse_adjunction(4, 4), eckmann_hilton_naturality(3)],
        "cellular" => vec![
            boundary_coequalizer(4),
            suspension_census(3, 4),
            suspension_monos(3),
            suspension_adjunction(),
            comparison_descends(2),
            comparison_naturality(2),
            comparison_agreement(),
        ],
        "spectra" => vec![sigma_k_face_pattern(4), stable_congruence(2, 3), stable_associativity(2, 2), sphere_spectrum(3)],
        "all" => SUITES[..6].iter().flat_map(|s| run_suite(s).expect("known suite")).collect(),
        _ => return None,
    };
    Some(checks)
}

/// Identity and associativity over all `Γ` objects up to `⟨n⟩`.
pub fn gamma_laws(n: usize) -> Check {
    let mut t = Tally::new(format!("gamma composition laws, objects <0>..<{n}>"));
    let homs: HashMap<(usize, usize), Vec<GammaMorphism>> =
        (0..=n).flat_map(|a| (0..=n).map(move |b| (a, b))).map(|(a, b)| ((a, b), GammaMorphism::hom(a, b))).collect();
    for a in 0..=n {
        for b in 0..=n {
            for f in &homs[&(a, b)] {
                let ok =
                    GammaMorphism::identity(b).compose(f).as_ref() == Ok(f) && f.compose(&GammaMorphism::identity(a)).as_ref() == Ok(f);
                if !t.case(ok, || format!("identity law fails for {f}")) {
                    return t.done();
                }
                for c in 0..=n {
                    for g in &homs[&(b, c)] {
                        let gf = g.compose(f).expect("composable");
                        for d in 0..=n {
                            for h in &homs[&(c, d)] {
                                let ok = h.compose(&gf) == h.compose(g).and_then(|hg| hg.compose(f));
                                if !t.case(ok, || format!("associativity fails for {h}, {g}, {f}")) {
                                    return t.done();
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    t.done()
}

/// For every cospan `⟨n⟩ -> ⟨l⟩ <- ⟨m⟩` and test object `⟨k⟩`, the maps
/// into the pullback biject with the commuting pairs.
pub fn gamma_pullback_universal(n: usize, k_max: usize) -> Check {
    let mut t = Tally::new(format!("gamma pullback universal property, objects <0>..<{n}>, tests <0>..<{k_max}>"));
    for l in 0..=n {
        for a in 0..=n {
            for b in 0..=n {
                for f in GammaMorphism::hom(a, l) {
                    for g in GammaMorphism::hom(b, l) {
                        let p = gamma_pullback(&f, &g).expect("cospan");
                        let square = f.compose(&p.proj_left) == g.compose(&p.proj_right);
                        if !t.case(square, || format!("projections of {f}, {g} do not commute")) {
                            return t.done();
                        }
                        for k in 0..=k_max {
                            let mut by_left: HashMap<GammaMorphism, usize> = HashMap::new();
                            for u in GammaMorphism::hom(k, a) {
                                *by_left.entry(f.compose(&u).expect("composable")).or_default() += 1;
                            }
                            let mut pairs = 0;
                            for v in GammaMorphism::hom(k, b) {
                                pairs += by_left.get(&g.compose(&v).expect("composable")).copied().unwrap_or(0);
                            }
                            let mut seen = BTreeSet::new();
                            let mut cone = true;
                            for h in GammaMorphism::hom(k, p.apex()) {
                                let (u, v) = (p.proj_left.compose(&h).expect("c"), p.proj_right.compose(&h).expect("c"));
                                cone &= f.compose(&u) == g.compose(&v);
                                seen.insert((u, v));
                            }
                            let ok = cone && seen.len() == GammaMorphism::hom(k, p.apex()).len() && seen.len() == pairs;
                            if !t.case(ok, || format!("pullback of {f}, {g} is not universal against <{k}>")) {
                                return t.done();
                            }
                        }
                    }
                }
            }
        }
    }
    t.done()
}

/// Unit and associativity laws, and closure of enumerated hom sets under
/// composition, for cells of degree at most `d`.
pub fn theta_laws(d: usize) -> Check {
    let mut t = Tally::new(format!("theta composition laws and hom closure, degree <= {d}"));
    let cells = enumerate_cells(d);
    let mut homs = HomTable::default();
    for s in &cells {
        for u in &cells {
            let n = homs.hom(s, u).len();
            if !t.case(n == ThetaMap::hom_count(s, u), || format!("|Hom({s}, {u})| disagrees with the count")) {
                return t.done();
            }
        }
    }
    for s in &cells {
        for u in &cells {
            let fs = homs.hom(s, u).to_vec();
            for f in &fs {
                let ok = ThetaMap::identity(u).compose(f).as_ref() == Ok(f) && f.compose(&ThetaMap::identity(s)).as_ref() == Ok(f);
                if !t.case(ok, || format!("unit law fails for {}", f.to_full_string())) {
                    return t.done();
                }
            }
            for v in &cells {
                let gs = homs.hom(u, v).to_vec();
                let target: BTreeSet<ThetaMap> = homs.hom(s, v).iter().cloned().collect();
                let composites: Vec<Vec<ThetaMap>> =
                    gs.iter().map(|g| fs.iter().map(|f| g.compose(f).expect("composable")).collect()).collect();
                for (g, row) in gs.iter().zip(&composites) {
                    for (f, gf) in fs.iter().zip(row) {
                        if !t.case(target.contains(gf), || format!("{} ∘ {} is not enumerated", g.to_full_string(), f.to_full_string())) {
                            return t.done();
                        }
                    }
                }
                for w in &cells {
                    for h in homs.hom(v, w).to_vec() {
                        let hg: Vec<ThetaMap> = gs.iter().map(|g| h.compose(g).expect("composable")).collect();
                        for (gi, row) in composites.iter().enumerate() {
                            for (fi, gf) in row.iter().enumerate() {
                                let ok = h.compose(gf) == hg[gi].compose(&fs[fi]);
                                if !t.case(ok, || format!("associativity fails at {}", h.to_full_string())) {
                                    return t.done();
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    t.done()
}

/// Every cell of degree at most `d` is recovered from its globular sum,
/// which is strict, and distinct cells have distinct sums.
pub fn globular_round_trip(d: usize) -> Check {
    let mut t = Tally::new(format!("globular sum round trip, degree <= {d}"));
    let mut seen = BTreeSet::new();
    for c in enumerate_cells(d) {
        let g = c.globular_sum();
        let ok = g.is_strict() && g.to_cell() == c && g.degree() == c.degree() && seen.insert(g.seq().to_vec());
        if !t.case(ok, || format!("{c} does not round-trip through {:?}", g.seq())) {
            break;
        }
    }
    t.done()
}

/// Existence and uniqueness of the (negative, positive) factorization,
/// and coface chains of length `λ(T) − λ(M)` for the positive part.
pub fn skeletal_factorization(d: usize) -> Check {
    let mut t = Tally::new(format!("skeletal factorization and coface chains, degree <= {d}"));
    let cells = enumerate_cells(d);
    let mut homs = HomTable::default();
    for s in &cells {
        for u in &cells {
            let mut found: HashMap<ThetaMap, usize> = HashMap::new();
            for m in cells.iter().filter(|m| m.degree() <= s.degree().min(u.degree())) {
                let pis: Vec<ThetaMap> = homs.hom(s, m).iter().filter(|p| is_negative(p)).cloned().collect();
                if pis.is_empty() {
                    continue;
                }
                let deltas: Vec<ThetaMap> = homs.hom(m, u).iter().filter(|x| is_positive(x)).cloned().collect();
                for p in &pis {
                    for x in &deltas {
                        *found.entry(x.compose(p).expect("composable")).or_default() += 1;
                    }
                }
            }
            for a in homs.hom(s, u).to_vec() {
                let (p, x) = skeletal_factorize(&a);
                let unique = found.get(&a) == Some(&1);
                let direct = is_negative(&p) && is_positive(&x) && x.compose(&p).as_ref() == Ok(&a);
                if !t
                    .case(unique && direct, || format!("{} has {} factorizations", a.to_full_string(), found.get(&a).copied().unwrap_or(0)))
                {
                    return t.done();
                }
                let chain = coface_factor(&x);
                let ok = chain.as_ref().is_ok_and(|ch| {
                    ch.len() == x.tgt().degree() - x.src().degree()
                        && ch.iter().all(|c| classify(c) == MapClass::Positive && c.tgt().degree() == c.src().degree() + 1)
                        && ch.iter().fold(ThetaMap::identity(x.src()), |acc, c| c.compose(&acc).expect("chain")) == x
                });
                if !t.case(ok, || format!("no coface chain for {}", x.to_full_string())) {
                    return t.done();
                }
            }
        }
    }
    t.done()
}

/// The coface fiber product against the pullback of representable
/// presheaves, counted at every probe of degree at most `probe`.
pub fn coface_pullbacks(d: usize, probe: usize) -> Check {
    let mut t = Tally::new(format!("coface pullbacks against presheaf pullbacks, targets of degree <= {d}, probes <= {probe}"));
    let probes = enumerate_cells(probe);
    let mut homs = HomTable::default();
    let mut empties = 0;
    for a in enumerate_cells(d) {
        let cof: Vec<ThetaMap> = coface_typology(&a).into_iter().map(|(_, c)| c).collect();
        for f in &cof {
            for g in &cof {
                let pb = match coface_pullback(f, g) {
                    Ok(pb) => pb,
                    Err(e) => {
                        t.case(false, || format!("{} and {}: {e}", f.to_full_string(), g.to_full_string()));
                        return t.done();
                    }
                };
                empties += usize::from(pb == CofacePullback::Empty);
                let shape = pb.shape();
                for p in &probes {
                    let left: Vec<ThetaMap> = homs.hom(p, f.src()).iter().map(|u| f.compose(u).expect("c")).collect();
                    let mut counts: HashMap<ThetaMap, usize> = HashMap::new();
                    for x in left {
                        *counts.entry(x).or_default() += 1;
                    }
                    let pairs: usize =
                        homs.hom(p, g.src()).iter().map(|v| counts.get(&g.compose(v).expect("c")).copied().unwrap_or(0)).sum();
                    let ok = pairs == shape.count_at(p);
                    if !t.case(ok, || format!("{} and {} at {p}: {} vs {pairs}", f.to_full_string(), g.to_full_string(), shape.count_at(p)))
                    {
                        return t.done();
                    }
                }
                if let CofacePullback::Cell { proj_left, proj_right, .. } = &pb {
                    let ok = f.compose(proj_left) == g.compose(proj_right);
                    if !t.case(ok, || format!("projections do not commute for {} and {}", f.to_full_string(), g.to_full_string())) {
                        return t.done();
                    }
                }
            }
        }
    }
    t.case(empties > 0, || "no empty fiber product was met".into());
    t.done()
}

/// `C ∘ D = C ∘ F = id` on `K_p(T)`, with `K_p` computed two ways.
pub fn collapse_splittings(d: usize, p_max: usize) -> Check {
    let mut t = Tally::new(format!("K_p splittings, degree <= {d}, 1 <= p <= {p_max}"));
    for c in enumerate_cells(d) {
        for p in 1..=p_max {
            let cd = collapse_maps(p, &c).expect("collapse");
            let id = ThetaMap::identity(&cd.cell);
            let ok = cd.cell == collapse_recursive(p, &c)
                && cd.c_map.compose(&cd.d_map).as_ref() == Ok(&id)
                && cd.c_map.compose(&cd.f_map).as_ref() == Ok(&id);
            if !t.case(ok, || format!("splitting fails for K_{p}({c})")) {
                return t.done();
            }
        }
    }
    t.done()
}

/// `− ∘ C : Hom(K_p T, U) -> Hom(T, U)` is a bijection for every `U` of
/// height at most `p`.
pub fn collapse_adjunction(d: usize, p_max: usize) -> Check {
    let mut t = Tally::new(format!("K_p left adjoint to the inclusion, degree <= {d}, 1 <= p <= {p_max}"));
    let cells = enumerate_cells(d);
    let mut homs = HomTable::default();
    for c in &cells {
        for p in 1..=p_max {
            let cd = collapse_maps(p, c).expect("collapse");
            for u in cells.iter().filter(|u| u.height() <= p) {
                let from_k = homs.hom(&cd.cell, u).to_vec();
                let images: BTreeSet<ThetaMap> = from_k.iter().map(|b| b.compose(&cd.c_map).expect("c")).collect();
                let ok = images.len() == from_k.len() && images.len() == homs.hom(c, u).len();
                if !t.case(ok, || format!("precomposition with C is not bijective for K_{p}({c}) -> {u}")) {
                    return t.done();
                }
            }
        }
    }
    t.done()
}

/// `α ∘ E_S = E_T ∘ J α` for every map between cells of degree at most `d`.
pub fn eckmann_hilton_naturality(d: usize) -> Check {
    let mut t = Tally::new(format!("E natural in all maps, degree <= {d}"));
    let cells = enumerate_cells(d);
    let mut homs = HomTable::default();
    for s in &cells {
        for u in &cells {
            for a in homs.hom(s, u).to_vec() {
                let (l, r) = eckmann_hilton_square(&a);
                if !t.case(l == r, || format!("not natural along {}: {} vs {}", a.to_full_string(), l, r)) {
                    return t.done();
                }
            }
        }
    }
    t.done()
}

/// `∂Θ^T` as the union of coface images and as the coequalizer of the
/// coface pullback legs give the same subobject.
pub fn boundary_coequalizer(d: usize) -> Check {
    let mut t = Tally::new(format!("boundary coequalizer equals union of coface images, degree <= {d}"));
    for c in enumerate_cells(d) {
        let (b, inc) = boundary(&c, d, false);
        let ok = match boundary_by_coequalizer(&c, d) {
            Ok((q, into)) => {
                let sorted = |m: &PresheafMap| -> Vec<Vec<u32>> {
                    m.components()
                        .iter()
                        .map(|v| {
                            let mut v = v.clone();
                            v.sort();
                            v
                        })
                        .collect()
                };
                into.is_mono() && q.sizes() == b.sizes() && sorted(&into) == sorted(&inc)
            }
            Err(_) => false,
        };
        if !t.case(ok, || format!("boundary of {c} differs")) {
            break;
        }
    }
    t.done()
}

/// Non-degenerate cells of `Σ_J Θ₊^T` against the closed formula.
pub fn suspension_census(d: usize, probe: usize) -> Check {
    let mut t = Tally::new(format!("Σ_J non-degenerate census, T of degree <= {d}, probes <= {probe}"));
    let mut homs = HomTable::default();
    for c in enumerate_cells(d) {
        let s = sigma_j(&representable(&c, probe - 1, true)).expect("representables are complete");
        for (i, sc) in s.site().cells().iter().enumerate() {
            let (have, want) = (s.nondegenerate(i).len(), suspension_nondegenerate_formula(&c, sc, &mut homs));
            if !t.case(have == want, || format!("Σ_J Θ^{c} at {sc}: {have} vs formula {want}")) {
                return t.done();
            }
        }
    }
    t.done()
}

/// `Σ_J` of boundary inclusions and of the legs of `Θ^T ∪_∂ Θ^T` is
/// cellwise injective.
pub fn suspension_monos(d: usize) -> Check {
    let mut t = Tally::new(format!("Σ_J preserves monomorphisms, degree <= {d}"));
    for c in enumerate_cells(d) {
        let (_, inc) = boundary(&c, d, true);
        let ok = sigma_j_map(&inc).is_ok_and(|m| m.is_mono());
        if !t.case(ok, || format!("Σ_J of ∂Θ^{c} -> Θ^{c} is not mono")) {
            return t.done();
        }
        let (_, l, r) = pushout(&inc, &inc).expect("pushout");
        for leg in [l, r] {
            let ok = leg.is_mono() && sigma_j_map(&leg).is_ok_and(|m| m.is_mono());
            if !t.case(ok, || format!("Σ_J of a leg of Θ^{c} ∪ Θ^{c} is not mono")) {
                return t.done();
            }
        }
    }
    t.done()
}

/// The fixed family of `(X, Y)` pairs for the adjunction check.
pub fn adjunction_family() -> Vec<(String, TruncatedPresheaf, String, TruncatedPresheaf)> {
    let xs = vec![
        ("*".to_string(), TruncatedPresheaf::basepoint(1)),
        ("Θ^0".to_string(), representable(&Cell::point(), 1, true)),
        ("Θ^1".to_string(), representable(&Cell::globe(1), 1, true)),
        ("∂Θ^1".to_string(), boundary(&Cell::globe(1), 1, true).0),
        ("S¹".to_string(), circle(1)),
    ];
    let ys = vec![
        ("S¹".to_string(), circle(2)),
        ("Θ^1".to_string(), representable(&Cell::globe(1), 2, true)),
        ("Θ^2".to_string(), representable(&Cell::globe(2), 2, true)),
        ("∂Θ^2".to_string(), boundary(&Cell::globe(2), 2, true).0),
    ];
    let mut out = Vec::new();
    for (xn, x) in &xs {
        for (yn, y) in &ys {
            out.push((xn.clone(), x.clone(), yn.clone(), y.clone()));
        }
    }
    out
}

/// `♭` and `♯` are inverse bijections `Maps(Σ_J X, Y) ≅ Maps(X, ΩY)`.
pub fn suspension_adjunction() -> Check {
    let mut t = Tally::new("Σ_J ⊣ Ω on a family of small pairs");
    for (xn, x, yn, y) in adjunction_family() {
        let sx = sigma_j(&x).expect("complete");
        let oy = omega(&y).expect("loops");
        let left = presheaf_map_enumerate(&sx, &y).expect("same site");
        let right = presheaf_map_enumerate(&x, &oy).expect("same site");
        let mut ok = left.len() == right.len();
        for f in &left {
            ok &= adjunct_flat(&x, f).is_ok_and(|g| right.contains(&g) && adjunct_sharp(&y, &g).as_ref() == Ok(f));
        }
        for g in &right {
            ok &= adjunct_sharp(&y, g).is_ok_and(|f| adjunct_flat(&x, &f).as_ref() == Ok(g));
        }
        if !t.case(ok, || format!("X = {xn}, Y = {yn}: {} vs {} maps", left.len(), right.len())) {
            break;
        }
    }
    t.done()
}

/// The comparison map is well defined on the quotient for every `T`.
pub fn comparison_descends(d: usize) -> Check {
    let mut t = Tally::new(format!("comparison descends from the quotient, degree <= {d}"));
    for c in enumerate_cells(d) {
        let r = suspension_comparison(&c, d + 1);
        if !t.case(r.is_ok(), || format!("{c}: {}", r.as_ref().expect_err("failed"))) {
            break;
        }
    }
    t.done()
}

/// The comparison square commutes for every map of degree at most `d`.
pub fn comparison_naturality(d: usize) -> Check {
    let mut t = Tally::new(format!("comparison natural in cell maps, degree <= {d}"));
    let cells = enumerate_cells(d);
    for s in &cells {
        for u in &cells {
            for a in ThetaMap::hom(s, u) {
                let ok = comparison_square(&a, d + 1).is_ok_and(|(l, r)| l == r);
                if !t.case(ok, || format!("not natural along {}", a.to_full_string())) {
                    return t.done();
                }
            }
        }
    }
    t.done()
}

/// Universal and piecewise comparisons agree for `T = [0 0]` on every
/// cell of degree at most 3.
pub fn comparison_agreement() -> Check {
    let mut t = Tally::new("comparison agrees with the piecewise construction at [0 0]");
    let c: Cell = "[0 0]".parse().expect("cell");
    let (u, p) = (suspension_comparison(&c, 3), suspension_comparison_piecewise(&c, 3));
    match (u, p) {
        (Ok(u), Ok(p)) => {
            for (cell, (a, b)) in u.src().site().cells().iter().zip(u.components().iter().zip(p.components())) {
                if !t.case(a == b, || format!("the two maps differ at {cell}")) {
                    break;
                }
            }
        }
        (u, p) => {
            t.case(false, || format!("construction failed: {:?} / {:?}", u.err(), p.err()));
        }
    }
    t.done()
}

/// Indices `i` with `d_i` of the top cell of `Σ_K Δ^n₊` not the basepoint.
pub fn sigma_k_nontrivial_faces(n: usize) -> Vec<usize> {
    let s = sigma_k(&PointedSimplicialSet::representable(n, n));
    let top = *s.nondegenerate(n + 1).first().expect("a top cell");
    (0..=n + 1).filter(|&i| s.face(n + 1, i, top) != 0).collect()
}

/// `Σ_K Δ^n₊` has exactly `d_0 … d_n` as non-trivial faces. Every `n`
/// is run; the report names each mismatch.
pub fn sigma_k_face_pattern(n_max: usize) -> Check {
    let mut t = Tally::new(format!("Σ_K face pattern, n <= {n_max}"));
    let misses: Vec<String> = (0..=n_max)
        .filter_map(|n| {
            let faces = sigma_k_nontrivial_faces(n);
            (faces != (0..=n).collect::<Vec<_>>()).then(|| format!("n = {n}: non-trivial faces {faces:?}"))
        })
        .collect();
    t.cases = n_max + 1;
    if !misses.is_empty() {
        t.failure = Some(format!("{} ({} of {} match)", misses.join("; "), n_max + 1 - misses.len(), n_max + 1));
    }
    t.done()
}

/// Representatives `(k, [z+k] -> [w+k])` for every level `k ≤ levels`.
fn stable_reps(z: i64, w: i64, levels: i64) -> Vec<(i64, SimplexMap)> {
    (0..=levels)
        .filter(|k| z + k >= 0 && w + k >= 0)
        .flat_map(|k| SimplexMap::hom((z + k) as usize, (w + k) as usize).into_iter().map(move |m| (k, m)))
        .collect()
}

/// Normal forms in `Δ_st` are stable, unital, and composition does not
/// depend on the chosen representatives, for degrees `|z| ≤ z_max` and
/// representatives up to level `levels`.
pub fn stable_congruence(z_max: i64, levels: i64) -> Check {
    let mut t = Tally::new(format!("Δ_st normal-form congruence, |z| <= {z_max}, levels <= {levels}"));
    let degrees: Vec<i64> = (-z_max..=z_max).collect();
    for &z in &degrees {
        for &w in &degrees {
            for (k, m) in stable_reps(z, w, levels) {
                let s = StableSimplexMap::new(z, w, k, m).expect("valid");
                let again = StableSimplexMap::new(z, w, s.level(), s.map().clone()).expect("valid");
                let lifted = s.at_level(s.level() + 1).and_then(|m| StableSimplexMap::new(z, w, s.level() + 1, m));
                let ok = again == s && lifted.as_ref() == Ok(&s);
                if !t.case(ok, || format!("normal form of {s} is unstable")) {
                    return t.done();
                }
                let unit = stable_compose(&StableSimplexMap::identity(w), &s).as_ref() == Ok(&s)
                    && stable_compose(&s, &StableSimplexMap::identity(z)).as_ref() == Ok(&s);
                if !t.case(unit, || format!("unit law fails for {s}")) {
                    return t.done();
                }
            }
        }
    }
    for &z in &degrees {
        for &w in &degrees {
            for &v in &degrees {
                for (ka, a) in stable_reps(z, w, levels) {
                    for (kb, b) in stable_reps(w, v, levels) {
                        let level = ka.max(kb);
                        let lift = |k: i64, m: &SimplexMap| {
                            (k..level).fold(m.clone(), |m, _| {
                                let mut vals = m.values().to_vec();
                                vals.push(m.tgt() + 1);
                                SimplexMap::new(m.src() + 1, m.tgt() + 1, vals).expect("shift")
                            })
                        };
                        let raw = lift(kb, &b).compose(&lift(ka, &a)).expect("composable");
                        let direct = StableSimplexMap::new(z, v, level, raw).expect("valid");
                        let classwise = stable_compose(
                            &StableSimplexMap::new(w, v, kb, b.clone()).expect("valid"),
                            &StableSimplexMap::new(z, w, ka, a.clone()).expect("valid"),
                        );
                        if !t.case(classwise.as_ref() == Ok(&direct), || {
                            format!("composition depends on representatives at {z} -> {w} -> {v}")
                        }) {
                            return t.done();
                        }
                    }
                }
            }
        }
    }
    t.done()
}

/// Associativity of `Δ_st` on the classes met up to level `levels`.
pub fn stable_associativity(z_max: i64, levels: i64) -> Check {
    let mut t = Tally::new(format!("Δ_st associativity, |z| <= {z_max}, levels <= {levels}"));
    let degrees: Vec<i64> = (-z_max..=z_max).collect();
    let mut classes: HashMap<(i64, i64), Vec<StableSimplexMap>> = HashMap::new();
    for &z in &degrees {
        for &w in &degrees {
            let set: BTreeSet<(i64, SimplexMap)> = stable_reps(z, w, levels)
                .into_iter()
                .map(|(k, m)| StableSimplexMap::new(z, w, k, m).expect("valid"))
                .map(|s| (s.level(), s.map().clone()))
                .collect();
            classes.insert((z, w), set.into_iter().map(|(k, m)| StableSimplexMap::new(z, w, k, m).expect("valid")).collect());
        }
    }
    for &z in &degrees {
        for &w in &degrees {
            for &v in &degrees {
                for &u in &degrees {
                    for a in &classes[&(z, w)] {
                        for b in &classes[&(w, v)] {
                            let ba = stable_compose(b, a).expect("c");
                            for c in &classes[&(v, u)] {
                                let ok = stable_compose(c, &ba) == stable_compose(c, b).and_then(|cb| stable_compose(&cb, a));
                                if !t.case(ok, || format!("associativity fails for {c}, {b}, {a}")) {
                                    return t.done();
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    t.done()
}

/// The suspension spectrum of `S⁰` to the given depth is a Kan spectrum,
/// and its levels have the sizes of `Δ^k/∂Δ^k`.
pub fn sphere_spectrum(depth: usize) -> Check {
    let mut t = Tally::new(format!("sphere spectrum prefix, depth {depth}"));
    let s0 = PointedSimplicialSet::representable(0, 2);
    let (w, levels) = suspension_spectrum_prefix(&s0, depth).expect("depth >= 1");
    for (k, lv) in levels.iter().enumerate() {
        let sphere = PointedSimplicialSet::sphere(k, lv.dim());
        if !t.case(lv.sizes() == sphere.sizes() && lv.check_identities().is_ok(), || format!("level {k} is not Δ^{k}/∂Δ^{k}")) {
            return t.done();
        }
    }
    match is_kan_spectrum(&w) {
        Ok(r) => {
            t.case(r.holds() && r.not_refuted() == 0, || r.to_string());
        }
        Err(e) => {
            t.case(false, || e.to_string());
        }
    }
    t.done()
}
