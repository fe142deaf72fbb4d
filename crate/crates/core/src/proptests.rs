//! Randomized laws and text round-trips beyond the exhaustive ranges.

use proptest::prelude::*;

use crate::gamma::{gamma_pullback, GammaMorphism};
use crate::simplex::SimplexMap;
use crate::skeletal::{is_negative, is_positive, skeletal_factorize};
use crate::theta::{Cell, ThetaMap};

/// A `Γ` morphism `<n> -> <m>`: each target point picks a source slot or none.
fn gamma(n: usize, m: usize) -> impl Strategy<Value = GammaMorphism> {
    prop::collection::vec(0..=n, m).prop_map(move |choice| {
        let mut assignment = vec![0; n];
        for (j, c) in choice.into_iter().enumerate() {
            if c > 0 {
                assignment[c - 1] |= 1 << j;
            }
        }
        GammaMorphism::new(n, m, assignment).unwrap()
    })
}

fn simplex(m: usize, n: usize) -> impl Strategy<Value = SimplexMap> {
    prop::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
        v.sort();
        SimplexMap::new(m, n, v).unwrap()
    })
}

fn cell() -> impl Strategy<Value = Cell> {
    let leaf = Just(Cell::point());
    leaf.prop_recursive(3, 8, 3, |inner| prop::collection::vec(inner, 0..=3).prop_map(Cell::node))
}

fn small_cell() -> impl Strategy<Value = Cell> {
    cell().prop_filter("degree at most 4", |c| c.degree() <= 4)
}

/// A map `S -> T` picked from the enumerated hom set.
fn theta_map(s: Cell, t: Cell) -> impl Strategy<Value = ThetaMap> {
    let hom = ThetaMap::hom(&s, &t);
    (0..hom.len()).prop_map(move |i| hom[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gamma_associative((f, g, h) in (1usize..6, 1usize..6, 1usize..6, 1usize..6)
        .prop_flat_map(|(a, b, c, d)| (gamma(a, b), gamma(b, c), gamma(c, d)))) {
        prop_assert_eq!(h.compose(&g.compose(&f).unwrap()), h.compose(&g).unwrap().compose(&f));
        let id = GammaMorphism::identity(f.src());
        prop_assert_eq!(f.compose(&id).unwrap(), f.clone());
    }

    #[test]
    fn gamma_text_round_trip(f in (0usize..7, 0usize..7).prop_flat_map(|(n, m)| gamma(n, m))) {
        prop_assert_eq!(f.to_string().parse::<GammaMorphism>().unwrap(), f);
    }

    #[test]
    fn gamma_pullback_squares((f, g) in (0usize..5, 0usize..5, 0usize..5)
        .prop_flat_map(|(a, b, l)| (gamma(a, l), gamma(b, l)))) {
        let p = gamma_pullback(&f, &g).unwrap();
        prop_assert_eq!(f.compose(&p.proj_left), g.compose(&p.proj_right));
    }

    #[test]
    fn simplex_text_and_words(f in (0usize..6, 0usize..6).prop_flat_map(|(m, n)| simplex(m, n))) {
        prop_assert_eq!(f.to_string().parse::<SimplexMap>().unwrap(), f.clone());
        let (faces, degens) = f.generator_word();
        prop_assert_eq!(SimplexMap::from_generator_word(f.src(), &faces, &degens).unwrap(), f);
    }

    #[test]
    fn cell_text_and_globular_sum(c in cell()) {
        prop_assert_eq!(c.to_string().parse::<Cell>().unwrap(), c.clone());
        let g = c.globular_sum();
        prop_assert_eq!(g.to_string().parse::<Cell>().unwrap(), c.clone());
        prop_assert_eq!(c.shift().unshift().cloned(), Some(c));
    }

    #[test]
    fn theta_associative_and_factorizes((f, g, h) in (small_cell(), small_cell(), small_cell(), small_cell())
        .prop_filter("nonempty homs", |(a, b, c, d)| {
            ThetaMap::hom_count(a, b) > 0 && ThetaMap::hom_count(b, c) > 0 && ThetaMap::hom_count(c, d) > 0
        })
        .prop_filter("small homs", |(a, b, c, d)| {
            ThetaMap::hom_count(a, b) < 2000 && ThetaMap::hom_count(b, c) < 2000 && ThetaMap::hom_count(c, d) < 2000
        })
        .prop_flat_map(|(a, b, c, d)| (theta_map(a, b.clone()), theta_map(b, c.clone()), theta_map(c, d)))) {
        prop_assert_eq!(h.compose(&g.compose(&f).unwrap()), h.compose(&g).unwrap().compose(&f));
        prop_assert_eq!(ThetaMap::identity(f.tgt()).compose(&f).unwrap(), f.clone());
        let full = f.to_full_string();
        prop_assert_eq!(ThetaMap::parse_full(&full).unwrap(), f.clone());
        prop_assert_eq!(ThetaMap::parse_body(&f.to_string(), f.src(), f.tgt()).unwrap(), f.clone());
        let (p, d) = skeletal_factorize(&f);
        prop_assert!(is_negative(&p) && is_positive(&d));
        prop_assert_eq!(d.compose(&p).unwrap(), f.clone());
        prop_assert_eq!(f.shift().unshift().cloned(), Some(f));
    }
}
