//! Property tests for the library invariants: region semantics, antichain
//! bookkeeping, hitting-set minimality, the subset/equality guarantees of the
//! pipeline, and cross-validation of the class generators.

mod common;

use std::collections::BTreeSet;

use proptest::collection::btree_set;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bisc_core::{
    avoiders_sequential, avoiders_with_cap, bisc, factorial, maximal_shading, mesh_contains,
    mesh_implies, mine, mine_sequential, minimal_forbidden, nth_of_length, prune, region_points,
    select_up_to, stack_sort, verify_equality, verify_subset, Basis, Cell, MeshPattern,
    Permutation, Shading, ShadingAntichain,
};

use common::{brute_minimal_forbidden, brute_region_points, everything_up_to, mp, shading_from_mask};

fn arb_perm(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len).prop_flat_map(|n| {
        let values: Vec<u8> = (1..=n as u8).collect();
        Just(values)
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

fn arb_perm_of_len(lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Permutation> {
    lens.prop_flat_map(|n| {
        let values: Vec<u8> = (1..=n as u8).collect();
        Just(values)
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    factorial(n) / factorial(k) / factorial(n - k)
}

fn grid_mask(pattern_len: usize) -> u64 {
    let cells = (pattern_len + 1) * (pattern_len + 1);
    if cells == 64 {
        u64::MAX
    } else {
        (1u64 << cells) - 1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flatten_is_idempotent_on_permutations(q in arb_perm(8)) {
        prop_assert_eq!(Permutation::flatten(q.values()).unwrap(), q);
    }

    #[test]
    fn subword_counts_are_binomial(host in arb_perm(7)) {
        let subwords = host.subwords_up_to(3);
        for j in 0..=3usize {
            let count = subwords.iter().filter(|(occ, _)| occ.len() == j).count();
            prop_assert_eq!(count as u64, binomial(host.len(), j));
        }
    }

    #[test]
    fn maximal_shadings_are_tight(host in arb_perm(6)) {
        for (occ, word) in host.subwords_up_to(3) {
            let pattern = Permutation::flatten(&word).unwrap();
            let shading = maximal_shading(&host, &occ);
            let witnessed = MeshPattern::new(pattern, shading).unwrap();
            prop_assert!(mesh_contains(&host, &witnessed));
            for col in 0..=occ.len() as u8 {
                for row in 0..=occ.len() as u8 {
                    let cell = Cell::new(col, row);
                    let count = region_points(&host, &occ, cell).unwrap();
                    prop_assert_eq!(count, brute_region_points(&host, &occ, cell));
                    prop_assert_eq!(count == 0, shading.contains(cell));
                }
            }
        }
    }

    #[test]
    fn containment_is_monotone_in_the_shading(
        host in arb_perm(6),
        pattern in arb_perm_of_len(1..=3),
        mask in any::<u64>(),
        submask in any::<u64>(),
    ) {
        let k = pattern.len();
        let larger = shading_from_mask(k, mask & grid_mask(k));
        let smaller = shading_from_mask(k, mask & submask & grid_mask(k));
        let with_larger = MeshPattern::new(pattern.clone(), larger).unwrap();
        let with_smaller = MeshPattern::new(pattern.clone(), smaller).unwrap();
        if mesh_contains(&host, &with_larger) {
            prop_assert!(mesh_contains(&host, &with_smaller));
        }
        let classical = MeshPattern::classical(pattern.clone()).unwrap();
        prop_assert_eq!(
            mesh_contains(&host, &classical),
            !host.occurrences(&pattern).is_empty()
        );
    }

    #[test]
    fn mined_table_dominates_every_witnessed_shading(
        input in btree_set(arb_perm(5), 0..12)
    ) {
        let table = mine(&input, 3).unwrap();
        for host in &input {
            for (occ, word) in host.subwords_up_to(3) {
                let pattern = Permutation::flatten(&word).unwrap();
                let shading = maximal_shading(&host, &occ);
                prop_assert!(table.allowed(&pattern).unwrap().contains_superset_of(&shading));
            }
        }
    }

    #[test]
    fn mining_is_schedule_independent(input in btree_set(arb_perm(5), 0..12)) {
        prop_assert_eq!(mine(&input, 3).unwrap(), mine_sequential(&input, 3).unwrap());
    }

    #[test]
    fn antichain_members_stay_incomparable(masks in proptest::collection::vec(0u64..512, 0..12)) {
        let mut antichain = ShadingAntichain::new();
        for mask in masks {
            antichain.insert(shading_from_mask(2, mask));
            for a in antichain.members() {
                for b in antichain.members() {
                    if a != b {
                        prop_assert!(!a.is_subset_of(b));
                    }
                }
            }
        }
    }

    #[test]
    fn forbidden_shadings_are_minimal_and_not_allowed(
        input in btree_set(arb_perm(5), 1..10)
    ) {
        let table = mine(&input, 3).unwrap();
        for (pattern, allowed) in table.entries() {
            for shading in minimal_forbidden(pattern.len(), allowed) {
                prop_assert!(allowed.iter().all(|t| !shading.is_subset_of(t)));
                for cell in shading.cells() {
                    let smaller_cells: Vec<(u8, u8)> = shading
                        .cells()
                        .iter()
                        .filter(|c| **c != cell)
                        .map(|c| (c.col, c.row))
                        .collect();
                    let smaller = Shading::from_cells(pattern.len(), &smaller_cells).unwrap();
                    prop_assert!(allowed.iter().any(|t| smaller.is_subset_of(t)));
                }
            }
        }
    }

    #[test]
    fn hitting_sets_match_the_exhaustive_oracle(masks in proptest::collection::vec(0u64..512, 1..6)) {
        let mut antichain = ShadingAntichain::new();
        for mask in masks {
            antichain.insert(shading_from_mask(2, mask));
        }
        prop_assert_eq!(
            minimal_forbidden(2, &antichain),
            brute_minimal_forbidden(2, antichain.members())
        );
    }

    #[test]
    fn conjectured_basis_never_excludes_its_input(
        input in btree_set(arb_perm(6), 0..20),
        m in 2usize..=4,
    ) {
        let basis = bisc(&input, m).unwrap();
        let n = input.iter().map(|q| q.len()).max().unwrap_or(0);
        prop_assert!(verify_subset(&input, &basis, n));
    }

    #[test]
    fn classical_inputs_come_back_classical(
        family in proptest::collection::vec(arb_perm_of_len(2..=4), 1..=3)
    ) {
        let input = select_up_to(5, |q| family.iter().all(|p| !q.contains(p)));
        let table = mine(&input, 4).unwrap();
        for (pattern, antichain) in table.entries() {
            if !antichain.is_empty() {
                prop_assert_eq!(antichain.members(), &[Shading::full(pattern.len())]);
                prop_assert!(family.iter().all(|p| !pattern.contains(p)));
            }
        }

        let basis = bisc(&input, 4).unwrap();
        prop_assert!(basis.patterns().iter().all(|q| q.is_classical()));
        let beyond = select_up_to(6, |q| family.iter().all(|p| !q.contains(p)));
        prop_assert!(verify_equality(&beyond, &basis, 6).is_equal());
    }

    #[test]
    fn pruning_preserves_equality(
        family in proptest::collection::vec(arb_perm_of_len(2..=4), 1..=2)
    ) {
        let input = select_up_to(5, |q| family.iter().all(|p| !q.contains(p)));
        let basis = bisc(&input, 4).unwrap();
        let pruned = prune(&basis, &input, 5).unwrap();
        prop_assert!(pruned.len() <= basis.len());
        prop_assert!(verify_equality(&input, &pruned, 5).is_equal());
    }

    #[test]
    fn avoider_listing_is_schedule_independent(
        patterns in proptest::collection::vec(
            (arb_perm_of_len(1..=3), any::<u64>()),
            0..3
        )
    ) {
        let patterns: Vec<MeshPattern> = patterns
            .into_iter()
            .map(|(p, mask)| {
                let k = p.len();
                MeshPattern::new(p, shading_from_mask(k, mask & grid_mask(k))).unwrap()
            })
            .collect();
        let basis = Basis::from_patterns(patterns);
        prop_assert_eq!(
            avoiders_with_cap(&basis, 5, 10).unwrap(),
            avoiders_sequential(&basis, 5, 10).unwrap()
        );
    }

    #[test]
    fn basis_serialization_round_trips(
        family in proptest::collection::vec(arb_perm_of_len(2..=3), 1..=2)
    ) {
        let input = select_up_to(4, |q| family.iter().all(|p| !q.contains(p)));
        let basis = bisc(&input, 3).unwrap();
        prop_assert_eq!(&Basis::from_json(&basis.to_json()).unwrap(), &basis);
        let reparsed = Basis::from_text(&basis.to_text()).unwrap();
        prop_assert_eq!(reparsed.patterns(), basis.patterns());
    }
}

/// Every implication the sufficient test asserts is sound over every host up
/// to length 7.
#[test]
fn implication_test_is_sound_up_to_length_seven() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea);
    let hosts = everything_up_to(7);
    let mut found = 0;
    let mut attempts = 0;
    while found < 20 && attempts < 100_000 {
        attempts += 1;
        let inner_len = rng.gen_range(2..=3usize);
        let outer_len = rng.gen_range(inner_len..=4usize);
        let inner_perm = nth_of_length(inner_len, rng.gen_range(0..factorial(inner_len)));
        let outer_perm = nth_of_length(outer_len, rng.gen_range(0..factorial(outer_len)));
        let inner_mask =
            rng.gen_range(0..=grid_mask(inner_len)) & rng.gen_range(0..=grid_mask(inner_len));
        let outer_mask =
            rng.gen_range(0..=grid_mask(outer_len)) | rng.gen_range(0..=grid_mask(outer_len));
        let inner =
            MeshPattern::new(inner_perm, shading_from_mask(inner_len, inner_mask)).unwrap();
        let outer =
            MeshPattern::new(outer_perm, shading_from_mask(outer_len, outer_mask)).unwrap();
        if !mesh_implies(&inner, &outer) {
            continue;
        }
        found += 1;
        for host in &hosts {
            assert!(
                !mesh_contains(host, &outer) || mesh_contains(host, &inner),
                "{inner} claimed to follow from {outer}, refuted by {host}"
            );
        }
    }
    assert_eq!(found, 20, "not enough implication pairs sampled");
}

/// The two-pass sorting machine agrees with its two-pattern description on
/// every length up to 7.
#[test]
fn west2_matches_its_basis_up_to_length_seven() {
    let classical = mp("2341");
    let shaded = mp("(3241, {(1,4)})");
    for host in everything_up_to(7) {
        let sortable = stack_sort(&stack_sort(&host)).is_identity();
        let avoids = !host.contains(classical.pattern()) && !mesh_contains(&host, &shaded);
        assert_eq!(sortable, avoids, "{host}");
    }
}

/// Mining one permutation twice (as a set) equals mining it once, and the
/// table merge is insensitive to partitioning.
#[test]
fn mining_is_insensitive_to_duplication_and_partitioning() {
    let input: BTreeSet<Permutation> = ["35241", "2341", "321", "1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let whole = mine(&input, 3).unwrap();
    for split in 0..input.len() {
        let left: BTreeSet<Permutation> = input.iter().take(split).cloned().collect();
        let right: BTreeSet<Permutation> = input.iter().skip(split).cloned().collect();
        let left_table = mine(&left, 3).unwrap();
        let right_table = mine(&right, 3).unwrap();
        // merge by re-inserting every shading
        let mut merged: Vec<(Permutation, Vec<Shading>)> = Vec::new();
        for (p, antichain) in left_table.entries() {
            let mut shadings: Vec<Shading> = antichain.members().to_vec();
            if let Some(other) = right_table.allowed(p) {
                shadings.extend(other.members().iter().copied());
            }
            merged.push((p.clone(), shadings));
        }
        let merged =
            bisc_core::MinedTable::from_allowed(3, whole.source_max_len(), merged).unwrap();
        assert_eq!(merged, whole, "split {split}");
    }
}
