use super::*;
use crate::simplex::SimplexMap;
use crate::theta::{enumerate_cells, Cell, ThetaMap};

#[test]
fn simplicial_basics() {
    for n in 0..=3 {
        let d = PointedSimplicialSet::representable(n, 4);
        d.check_identities().unwrap();
        assert_eq!(d.nondegenerate(n).len(), 1);
        assert!(d.nondegenerate(n + 1).is_empty());
        PointedSimplicialSet::sphere(n, 4).check_identities().unwrap();
    }
    let s2 = PointedSimplicialSet::sphere(2, 3);
    assert_eq!(s2.sizes()[0], 1);
    assert_eq!(s2.sizes()[2], 2);
}

#[test]
fn sigma_k_examples() {
    let pt = PointedSimplicialSet::basepoint(3);
    assert_eq!(sigma_k(&pt), PointedSimplicialSet::basepoint(4));
    // Σ_K Δ⁰₊: one vertex, one non-degenerate edge with both ends at the basepoint
    let c = sigma_k(&PointedSimplicialSet::representable(0, 3));
    assert_eq!(c.sizes()[0], 1);
    assert_eq!(c.nondegenerate(1), vec![1]);
    assert_eq!((c.face(1, 0, 1), c.face(1, 1, 1)), (0, 0));
    for n in 0..=3 {
        let x = PointedSimplicialSet::representable(n, 3);
        let s = sigma_k(&x);
        s.check_identities().unwrap();
        let (q, matching) = sigma_k_representable_oracle(n, 3).unwrap();
        assert_eq!(q.sizes(), s.sizes(), "n = {n}");
        for p in 0..=4 {
            for e in 0..s.sizes()[p] {
                if p > 0 {
                    for i in 0..=p {
                        assert_eq!(matching[p - 1][s.face(p, i, e)], q.face(p, i, matching[p][e]));
                    }
                }
                if p < 4 {
                    for j in 0..=p {
                        assert_eq!(matching[p + 1][s.degeneracy(p, j, e)], q.degeneracy(p, j, matching[p][e]));
                    }
                }
            }
        }
    }
}

/// Indices `i` with `d_i` of the top cell of `Σ_K Δ^n₊` not the basepoint.
fn nontrivial_faces(n: usize) -> Vec<usize> {
    let s = sigma_k(&PointedSimplicialSet::representable(n, n));
    let top = *s.nondegenerate(n + 1).first().expect("a top cell");
    (0..=n + 1).filter(|&i| s.face(n + 1, i, top) != 0).collect()
}

#[test]
fn face_pattern() {
    for n in 1..=4 {
        assert_eq!(nontrivial_faces(n), (0..=n).collect::<Vec<_>>());
    }
    // the single vertex of Δ⁰ suspends to a loop at the basepoint
    assert!(nontrivial_faces(0).is_empty());
}

fn stable_maps(z: i64, w: i64, max_level: i64) -> Vec<StableSimplexMap> {
    let mut out: Vec<StableSimplexMap> = Vec::new();
    for k in 0..=max_level {
        if z + k < 0 || w + k < 0 {
            continue;
        }
        for m in SimplexMap::hom((z + k) as usize, (w + k) as usize) {
            let s = StableSimplexMap::new(z, w, k, m).unwrap();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

#[test]
fn stable_simplex_category() {
    let d = StableSimplexMap::coface(0, 3);
    assert_eq!(d.level(), 2);
    for z in -2..=2 {
        for i in 0..4 {
            let a = StableSimplexMap::coface(z, i);
            let lifted = StableSimplexMap::new(z, z + 1, a.level() + 1, a.at_level(a.level() + 1).unwrap()).unwrap();
            assert_eq!(lifted, a);
            assert_eq!(stable_compose(&StableSimplexMap::identity(z + 1), &a).unwrap(), a);
            assert_eq!(stable_compose(&a, &StableSimplexMap::identity(z)).unwrap(), a);
            for j in i + 1..5 {
                let lhs = stable_compose(&StableSimplexMap::coface(z + 1, j), &a).unwrap();
                let rhs = stable_compose(&StableSimplexMap::coface(z + 1, i), &StableSimplexMap::coface(z, j - 1)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
    assert!(stable_compose(&StableSimplexMap::coface(0, 0), &StableSimplexMap::coface(0, 0)).is_err());
}

#[test]
fn stable_congruence() {
    for z in -2..=2i64 {
        for w in -2..=2i64 {
            for v in -2..=2i64 {
                let ab = stable_maps(z, w, 2);
                let bc = stable_maps(w, v, 2);
                for a in &ab {
                    for b in &bc {
                        let c = stable_compose(b, a).unwrap();
                        for extra in 0..=1 {
                            let la = a.level() + extra;
                            let lb = b.level() + 1 - extra;
                            let level = la.max(lb);
                            let raw = b.at_level(level).unwrap().compose(&a.at_level(level).unwrap()).unwrap();
                            assert_eq!(StableSimplexMap::new(z, v, level, raw).unwrap(), c);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn stable_cells() {
    assert_eq!(stable_cell_normalize(0, &Cell::point()).z(), 0);
    let g = stable_cell_normalize(0, &Cell::globe(2));
    assert_eq!((g.z(), g.base().clone()), (2, Cell::point()));
    let w: Cell = "[[0] [0]]".parse().unwrap();
    assert_eq!(stable_cell_normalize(5, &w).base(), &w);
    for t in enumerate_cells(4) {
        for z in -2..=2 {
            let n = stable_cell_normalize(z, &t);
            assert_eq!(stable_cell_normalize(n.z(), n.base()), n);
            assert_eq!(stable_cell_normalize(z - 1, &t.shift()), n);
            assert!(n.base().width() != 1);
        }
    }
}

#[test]
fn stable_theta_maps() {
    let cells = enumerate_cells(2);
    for s in &cells {
        for t in &cells {
            for m in ThetaMap::hom(s, t) {
                let a = StableThetaMap::from_theta(&m);
                assert_eq!(StableThetaMap::new(a.src().clone(), a.tgt().clone(), 1, m.shift()).unwrap(), a);
                let id = StableThetaMap::identity(a.tgt());
                assert_eq!(stable_theta_compose(&id, &a).unwrap(), a);
                for n in ThetaMap::hom(t, s) {
                    let b = StableThetaMap::from_theta(&n);
                    let lhs = stable_theta_compose(&b, &a).unwrap();
                    assert_eq!(lhs, StableThetaMap::from_theta(&n.compose(&m).unwrap()));
                    let lifted = StableThetaMap::new(b.src().clone(), b.tgt().clone(), 1, n.shift()).unwrap();
                    assert_eq!(stable_theta_compose(&lifted, &a).unwrap(), lhs);
                }
            }
        }
    }
}

#[test]
fn kan_windows() {
    let trivial = KanSpectrumWindow::trivial(-2, 2, 4);
    let r = is_kan_spectrum(&trivial).unwrap();
    assert!(r.holds() && r.cells.is_empty());

    let s0 = PointedSimplicialSet::representable(0, 2);
    let (w, levels) = suspension_spectrum_prefix(&s0, 3).unwrap();
    let r = is_kan_spectrum(&w).unwrap();
    assert!(r.holds(), "{r}");
    assert_eq!(r.not_refuted(), 0);
    for k in 0..=3 {
        assert_eq!(levels[k].sizes(), PointedSimplicialSet::sphere(k, 2 + k).sizes());
    }
    assert_eq!(w.to_string().parse::<KanSpectrumWindow>().unwrap(), w);

    let (b, _) = suspension_spectrum_prefix(&PointedSimplicialSet::basepoint(2), 2).unwrap();
    assert!(b.sizes.iter().all(|&n| n == 1));

    let mut bad = KanSpectrumWindow::trivial(0, 1, 3);
    bad.sizes = vec![2, 2];
    for i in 0..=3 {
        bad.faces.insert((i, 0), vec![0, 1]);
    }
    bad.degeneracies.clear();
    let r = is_kan_spectrum(&bad).unwrap();
    assert!(!r.holds());
    assert_eq!(r.violators(), vec![(1, 1)]);

    let mut broken = bad.clone();
    broken.faces.insert((0, 0), vec![1, 1]);
    assert!(is_kan_spectrum(&broken).is_err());
    assert!(matches!("deg 0 : 1".parse::<KanSpectrumWindow>(), Err(crate::Error::Parse { .. })));
}

#[test]
fn cellular_prefix() {
    let s0 = crate::cellular::representable(&Cell::point(), 0, true);
    let w = cellular_suspension_prefix(&s0, 3).unwrap();
    w.check_round_trips().unwrap();
    for k in 0..=3 {
        assert!(w.stable_cells(k).iter().all(|c| c.base().width() != 1 && c.z() >= -(k as i64)));
    }
    assert!(cellular_suspension_prefix(&s0, 0).is_err());
}
