//! Cross-module invariants, checked against brute force written here
//! independently of the library's own oracles.

use kmm_core::{
    apply_permutations, build_a_double_prime, chains_element_incidence, is_cover, is_selection, max_selection,
    min_cover, oracle_dilworth, oracle_menger, permute_cover, permute_selection, sum_entries, union_property,
    BoolMatrix, OracleBudget, PermutationMatrix, Poset, SetSystem,
};
use proptest::prelude::*;

/// Maximum number of 1s with no two on a line, by DP over used-column masks.
fn brute_max_selection(a: &BoolMatrix) -> usize {
    let (r, c) = (a.rows(), a.cols());
    let mut best = vec![None::<usize>; 1 << c];
    best[0] = Some(0);
    for i in 0..r {
        let mut next = best.clone();
        for (mask, v) in best.iter().enumerate() {
            let Some(v) = *v else { continue };
            for j in (0..c).filter(|&j| a.get(i, j) && mask & (1 << j) == 0) {
                let m = mask | (1 << j);
                next[m] = next[m].max(Some(v + 1));
            }
        }
        best = next;
    }
    best.into_iter().flatten().max().unwrap_or(0)
}

/// Fewest lines touching every 1: each row subset forces the remaining columns.
fn brute_min_cover(a: &BoolMatrix) -> usize {
    let (r, c) = (a.rows(), a.cols());
    (0u32..1 << r)
        .map(|rows| {
            let cols = (0..c).filter(|&j| (0..r).any(|i| rows & (1 << i) == 0 && a.get(i, j))).count();
            rows.count_ones() as usize + cols
        })
        .min()
        .unwrap_or(0)
}

/// Largest set of pairwise incomparable elements.
fn brute_width(p: &Poset) -> usize {
    let n = p.n();
    (0u32..1 << n)
        .filter(|s| {
            let e: Vec<usize> = (0..n).filter(|i| s & (1 << i) != 0).collect();
            e.iter().all(|&i| e.iter().all(|&j| i == j || !p.comparable(i, j)))
        })
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

fn matrix(max_n: usize) -> impl Strategy<Value = BoolMatrix> {
    (0..=max_n, 0.0f64..=1.0).prop_flat_map(|(n, density)| {
        proptest::collection::vec(proptest::bool::weighted(density.clamp(0.05, 0.95)), n * n)
            .prop_map(move |bits| BoolMatrix::from_fn(n, n, |i, j| bits[i * n + j]))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = PermutationMatrix> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|m| PermutationMatrix::from_mapping(m).unwrap())
}

fn matrix_with_permutations() -> impl Strategy<Value = (BoolMatrix, PermutationMatrix, PermutationMatrix)> {
    matrix(8).prop_flat_map(|a| {
        let n = a.rows();
        (Just(a), permutation(n), permutation(n))
    })
}

fn poset() -> impl Strategy<Value = Poset> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            // Relations only go from lower to higher index, so the closure is acyclic.
            let pairs: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .collect();
            Poset::from_relations(n, pairs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn solver_matches_brute_force(a in matrix(8)) {
        let cover = min_cover(&a).unwrap();
        let selection = max_selection(&a).unwrap();
        prop_assert!(is_cover(&a, &cover).unwrap());
        prop_assert!(is_selection(&a, &selection).unwrap());
        prop_assert_eq!(cover.size(), brute_min_cover(&a));
        prop_assert_eq!(selection.size(), brute_max_selection(&a));
    }

    #[test]
    fn sizes_invariant_under_permutation((a, p, q) in matrix_with_permutations()) {
        let b = apply_permutations(&a, &p, &q).unwrap();
        prop_assert_eq!(sum_entries(&a), sum_entries(&b));
        let (cover, selection) = (min_cover(&a).unwrap(), max_selection(&a).unwrap());
        prop_assert_eq!(min_cover(&b).unwrap().size(), cover.size());
        prop_assert_eq!(max_selection(&b).unwrap().size(), selection.size());
        prop_assert!(is_cover(&b, &permute_cover(&cover, &p, &q).unwrap()).unwrap());
        prop_assert!(is_selection(&b, &permute_selection(&selection, &p, &q).unwrap()).unwrap());
    }

    #[test]
    fn transpose_keeps_sizes(a in matrix(8)) {
        let t = a.transpose();
        prop_assert_eq!(max_selection(&t).unwrap().size(), max_selection(&a).unwrap().size());
        prop_assert_eq!(min_cover(&t).unwrap().size(), min_cover(&a).unwrap().size());
    }

    #[test]
    fn disjoint_paths_count_selections(a in matrix(3)) {
        let g = build_a_double_prime(&a).unwrap();
        let m = oracle_menger(&g, &OracleBudget::default()).unwrap();
        prop_assert_eq!(m.lambda, brute_max_selection(&a));
        prop_assert!(m.kappa >= m.lambda);
    }

    #[test]
    fn union_property_iff_full_selection(a in matrix(6)) {
        let s = SetSystem::new(a.clone()).unwrap();
        let up = union_property(&s, &OracleBudget::default()).unwrap();
        prop_assert_eq!(up, brute_max_selection(&a) == a.rows());
    }

    #[test]
    fn chain_count_equals_width(p in poset()) {
        let d = oracle_dilworth(&p, &OracleBudget::default()).unwrap();
        let width = brute_width(&p);
        prop_assert_eq!(d.lambda, width);
        prop_assert_eq!(d.kappa, width);
        prop_assert_eq!(d.chains.len(), width);
        let inc = chains_element_incidence(&p, &d.chains).unwrap();
        prop_assert_eq!(brute_max_selection(&inc), width);
    }
}
