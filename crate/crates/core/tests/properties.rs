mod common;

use proptest::prelude::*;

use ade_chambers::arrangement::{count_regions, region_count, sign_vectors, RestrictedArrangement};
use ade_chambers::chambers::{enumerate_chambers_with, EnumerateOptions};
use ade_chambers::{
    enumerate_chambers, knit, positive_roots, Configuration, DynkinDiagram, DynkinType, Family, RootVector,
};
use common::*;

/// Positive roots by brute force: `0 ≤ c ≤ δ`, `cᵀ C c = 2`.
fn brute_force_roots(ty: DynkinType) -> Vec<RootVector> {
    let d = DynkinDiagram::build(ty);
    let cartan = d.cartan_matrix();
    let n = d.rank();
    let bounds: Vec<u32> = (1..=n).map(|v| d.delta(v)).collect();
    let mut out = Vec::new();
    let mut c = vec![0u32; n];
    loop {
        let norm: i64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| c[i] as i64 * cartan[i][j] * c[j] as i64)
            .sum();
        if norm == 2 {
            out.push(RootVector(c.clone()));
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            if c[k] < bounds[k] {
                c[k] += 1;
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn root_systems_match_brute_force() {
    for ty in DynkinType::all_up_to(8) {
        let mut expect = brute_force_roots(ty);
        expect.sort_by_key(|r| (r.height(), r.0.clone()));
        assert_eq!(positive_roots(ty), expect, "{ty}");
    }
}

#[test]
fn type_a_full_retention_gives_factorials() {
    let mut factorial = 1;
    for t in 1..=4usize {
        factorial *= t + 1;
        let c = Configuration::of_type(DynkinType::new(Family::A, t).unwrap(), (1..=t).collect()).unwrap();
        assert_eq!(enumerate_chambers(&c).unwrap().chambers.len(), factorial, "A{t}");
    }
}

#[test]
fn full_configurations_never_change() {
    for ty in DynkinType::all_up_to(8) {
        let c = Configuration::of_type(ty, (1..=ty.rank()).collect()).unwrap();
        for slot in 0..c.len() {
            let x = knit(&c, slot).unwrap();
            assert_eq!(x.new_vertex, x.pivot_vertex, "{ty} slot {}", slot + 1);
        }
    }
}

#[test]
fn single_type_a_curve() {
    let c = Configuration::of_type("A3".parse().unwrap(), vec![2]).unwrap();
    let s = enumerate_chambers(&c).unwrap();
    assert_eq!((s.bounds.lower, s.bounds.upper), (1, 2));
    assert_eq!(s.skeleton.len(), 1);
}

#[test]
fn c_plus_is_first_and_contains_the_diagonal() {
    for i in (0..sweep().len()).step_by(37) {
        let s = structure(i);
        let c = &s.chambers[0];
        assert!(c.word.is_empty());
        assert!(c.contains(&vec![rat(1); s.dim()]), "{:?}", s.config);
        assert!(s.config.slots() == c.slots.as_slice());
    }
}

#[test]
fn rational_points_are_located() {
    let s = structure(sweep().iter().position(|c| c.len() == 3 && c.diagram().ty().to_string() == "E6").unwrap());
    let p = rational_point(&[(1, 3), (-2, 7), (5, 11)]);
    let i = s.locate(&p).unwrap();
    assert!(s.chambers[i].contains(&p));
    assert_eq!(s.chambers.iter().filter(|c| c.contains(&p)).count(), 1);
    assert!(s.locate(&rational_point(&[(1, 1), (0, 1), (0, 1)])).is_none());
}

fn arrangement() -> impl Strategy<Value = RestrictedArrangement> {
    (1usize..=4).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..9).prop_filter_map("zero covector", move |raw| {
            if raw.iter().any(|c| c.iter().all(|&x| x == 0)) {
                None
            } else {
                RestrictedArrangement::new(dim, &raw).ok()
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn region_counters_agree(a in arrangement()) {
        prop_assert_eq!(count_regions(&a).unwrap(), sign_vectors(&a).unwrap().len() as u64);
    }

    #[test]
    fn deleting_a_hyperplane_never_adds_regions(a in arrangement(), k in any::<prop::sample::Index>()) {
        prop_assume!(!a.is_empty());
        let i = k.index(a.len());
        prop_assert!(region_count(&a).unwrap() >= region_count(&a.without(i)).unwrap());
    }

    #[test]
    fn mutating_back_recovers_the_exchange(i in 0..sweep().len(), seed in any::<u64>(), slot in 0..4usize) {
        let c = shuffled(i, seed);
        let slot = slot % c.len();
        let x = knit(&c, slot).unwrap();
        let mutated = c.with_vertex(slot, x.new_vertex).unwrap();
        let back = knit(&mutated, slot).unwrap();
        prop_assert_eq!(back.new_vertex, x.pivot_vertex);
        prop_assert_eq!(back.slot_coefficients(&mutated), x.slot_coefficients(&c));
        prop_assert_eq!(back.coefficient(0), x.coefficient(0));
    }

    #[test]
    fn identities_hold_in_any_slot_order(i in 0..sweep().len(), seed in any::<u64>(), slot in 0..4usize,
                                         theta in prop::collection::vec(-40i64..40, 4),
                                         beta in prop::collection::vec(0i64..8, 5)) {
        let c = shuffled(i, seed);
        prop_assert!(lemma_identities(&c, slot, &theta, &beta).is_ok(), "{:?}", lemma_identities(&c, slot, &theta, &beta));
        prop_assert!(delta_balance(&c, slot).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn diagram_symmetries_preserve_counts(i in 0..sweep().len()) {
        let s = structure(i);
        let d = s.config.diagram();
        for auto in d.automorphisms() {
            let image: Vec<usize> = s.config.slots().iter().map(|&v| auto[v]).collect();
            let c = Configuration::new(s.config.diagram_arc().clone(), image).unwrap();
            let t = enumerate_chambers_with(&c, EnumerateOptions { oracle: false }).unwrap();
            prop_assert_eq!(t.chambers.len(), s.chambers.len());
            prop_assert_eq!(&t.walls, &s.walls);
            prop_assert_eq!(t.config_classes.len(), s.config_classes.len());
        }
    }

    #[test]
    fn slot_order_only_permutes_coordinates(i in 0..sweep().len(), seed in any::<u64>()) {
        let s = structure(i);
        let c = shuffled(i, seed);
        let t = enumerate_chambers(&c).unwrap();
        prop_assert_eq!(t.chambers.len(), s.chambers.len());
        prop_assert_eq!(t.bounds, s.bounds);
    }
}
