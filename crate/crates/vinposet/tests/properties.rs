//! Property and small-exhaustive suites: the production search paths are
//! replayed against brute enumeration oracles, and the structural facts the
//! closed form leans on are checked wholesale at small lengths.

mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;

use support::{check_dot, oracle_content_sets, oracle_occurrences};
use vinposet::mobius::{mobius_bruteforce, Direction};
use vinposet::{
    contains, covered_by, occurrences, standardize, AdjacencyVector, CoverCache,
    DashedPermutation, Permutation, VincularScheme,
};

fn perm(values: Vec<u8>) -> Permutation {
    Permutation::new(values).unwrap()
}

fn permutation_strategy(max_len: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_len).prop_flat_map(|n| {
        let identity: Vec<u8> = (1..=n as u8).collect();
        Just(identity).prop_shuffle().prop_map(perm)
    })
}

fn scheme_strategy(max_len: usize) -> impl Strategy<Value = VincularScheme> {
    let presets = prop_oneof![
        Just(VincularScheme::Classical),
        Just(VincularScheme::Consecutive),
        Just(VincularScheme::QuasiConsecutive),
    ];
    let columns = proptest::collection::vec(any::<bool>(), 0..max_len)
        .prop_map(VincularScheme::ConstantColumns);
    let rows = proptest::collection::vec(any::<bool>(), max_len * (max_len - 1) / 2)
        .prop_flat_map(move |bits| {
            let mut rows = Vec::new();
            let mut taken = 0;
            for k in 1..max_len {
                rows.push(AdjacencyVector::from_bits(bits[taken..taken + k].to_vec()));
                taken += k;
            }
            (any::<bool>(),).prop_map(move |(fill,)| {
                VincularScheme::explicit_rows(rows.clone(), fill).unwrap()
            })
        });
    prop_oneof![presets, columns, rows]
}

proptest! {
    #[test]
    fn standardize_is_idempotent(entries in proptest::collection::btree_set(-1000i64..1000, 1..12)) {
        let seq: Vec<i64> = entries.into_iter().collect();
        let once = standardize(&seq).unwrap();
        let again = standardize(&once.values().iter().map(|&v| v as i64).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(once, again);
    }

    #[test]
    fn monotone_iff_sorted_form(p in permutation_strategy(8)) {
        let as_i64: Vec<i64> = p.values().iter().map(|&v| v as i64).collect();
        let mut ascending = as_i64.clone();
        ascending.sort_unstable();
        let descending: Vec<i64> = ascending.iter().rev().copied().collect();
        let expected = p == standardize(&ascending).unwrap() || p == standardize(&descending).unwrap();
        prop_assert_eq!(p.is_monotone(), expected);
    }

    #[test]
    fn direct_sum_is_associative(
        p in permutation_strategy(6),
        q in permutation_strategy(6),
        r in permutation_strategy(6),
    ) {
        let left = p.direct_sum(&q).unwrap().direct_sum(&r).unwrap();
        let right = p.direct_sum(&q.direct_sum(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    // The backtracking matcher against plain subset enumeration, any scheme.
    #[test]
    fn occurrences_match_the_oracle(
        pattern in permutation_strategy(5),
        text in permutation_strategy(7),
        scheme in scheme_strategy(7),
    ) {
        prop_assume!(pattern.len() <= text.len());
        let bits = scheme.type_vector(pattern.len());
        let expected = oracle_occurrences(pattern.values(), text.values(), bits.bits());
        let actual: Vec<Vec<usize>> = occurrences(&pattern, &text, &scheme)
            .unwrap()
            .iter()
            .map(|o| o.positions().to_vec())
            .collect();
        prop_assert_eq!(actual, expected); // equality includes lexicographic order
    }

    // Consecutive occurrences are contiguous; classical ones are exactly the
    // order-isomorphic subsequences.
    #[test]
    fn extreme_schemes(
        pattern in permutation_strategy(4),
        text in permutation_strategy(7),
    ) {
        prop_assume!(pattern.len() <= text.len());
        for occ in occurrences(&pattern, &text, &VincularScheme::Consecutive).unwrap() {
            prop_assert!(occ.is_consecutive());
        }
        let all_subsequences = oracle_occurrences(
            pattern.values(),
            text.values(),
            &vec![true; pattern.len() - 1],
        );
        let classical: Vec<Vec<usize>> = occurrences(&pattern, &text, &VincularScheme::Classical)
            .unwrap()
            .iter()
            .map(|o| o.positions().to_vec())
            .collect();
        prop_assert_eq!(classical, all_subsequences);
    }

    // Loosening any adjacency bit never removes occurrences.
    #[test]
    fn looser_bits_keep_occurrences(
        pattern in permutation_strategy(5),
        text in permutation_strategy(7),
        scheme in scheme_strategy(7),
        flip_seed in any::<u32>(),
    ) {
        prop_assume!(pattern.len() >= 2 && pattern.len() <= text.len());
        let bits = scheme.type_vector(pattern.len()).bits().to_vec();
        let zero_positions: Vec<usize> =
            (0..bits.len()).filter(|&i| !bits[i]).collect();
        prop_assume!(!zero_positions.is_empty());
        let flip = zero_positions[flip_seed as usize % zero_positions.len()];
        let mut loosened = bits.clone();
        loosened[flip] = true;

        let strict = DashedPermutation::new(pattern.clone(), AdjacencyVector::from_bits(bits))
            .unwrap()
            .occurrences_in(&text)
            .unwrap();
        let loose: BTreeSet<_> =
            DashedPermutation::new(pattern.clone(), AdjacencyVector::from_bits(loosened))
                .unwrap()
                .occurrences_in(&text)
                .unwrap()
                .into_iter()
                .collect();
        for occ in strict {
            prop_assert!(loose.contains(&occ));
        }
    }

    // covered_by agrees with the definition "length n-1 patterns contained
    // in the text", for arbitrary schemes.
    #[test]
    fn covers_match_content(
        text in permutation_strategy(8),
        scheme in scheme_strategy(8),
    ) {
        prop_assume!(text.len() >= 2);
        let covers: BTreeSet<Permutation> = covered_by(&text, &scheme).into_iter().collect();
        let expected = &oracle_content_sets(&text, &scheme)[text.len() - 2];
        prop_assert_eq!(&covers, expected);
    }

    // Gradedness: inside an interval every non-top element has an up-edge,
    // every non-bottom element a down-edge, and edges connect adjacent
    // levels; hence every maximal chain has length exactly rank.
    #[test]
    fn intervals_are_graded(
        top in permutation_strategy(7),
        pick in any::<u32>(),
    ) {
        let mut cache = CoverCache::new(VincularScheme::QuasiConsecutive);
        let below: Vec<Permutation> = cache.down_set(&top).iter().cloned().collect();
        let bottom = below[pick as usize % below.len()].clone();
        let iv = cache.interval(&bottom, &top).unwrap();

        let mut has_up = vec![false; iv.len()];
        let mut has_down = vec![false; iv.len()];
        let level_of = |idx: u32| iv.elements()[idx as usize].len() - iv.bottom().len();
        for &(lo, up) in iv.edge_indices() {
            prop_assert_eq!(level_of(lo) + 1, level_of(up));
            has_up[lo as usize] = true;
            has_down[up as usize] = true;
        }
        for (idx, element) in iv.elements().iter().enumerate() {
            if element != iv.top() {
                prop_assert!(has_up[idx], "dead end below the top: {element}");
            }
            if element != iv.bottom() {
                prop_assert!(has_down[idx], "orphan above the bottom: {element}");
            }
        }
    }

    // DOT output parses under the grammar checker.
    #[test]
    fn dot_export_parses(
        top in permutation_strategy(7),
        pick in any::<u32>(),
    ) {
        let mut cache = CoverCache::new(VincularScheme::QuasiConsecutive);
        let below: Vec<Permutation> = cache.down_set(&top).iter().cloned().collect();
        let bottom = below[pick as usize % below.len()].clone();
        let iv = cache.interval(&bottom, &top).unwrap();
        prop_assert_eq!(check_dot(&iv.to_dot()), Ok(()));
    }

    // Constant columns: containment implies order.
    #[test]
    fn constant_columns_contains_implies_leq(
        prefix in proptest::collection::vec(any::<bool>(), 0..6),
        text in permutation_strategy(7),
        positions in proptest::collection::btree_set(0usize..7, 1..=7),
    ) {
        let picked: Vec<i64> = positions
            .iter()
            .filter(|&&i| i < text.len())
            .map(|&i| text.values()[i] as i64)
            .collect();
        prop_assume!(!picked.is_empty());
        let sigma = standardize(&picked).unwrap();
        let scheme = VincularScheme::ConstantColumns(prefix);
        if contains(&sigma, &text, &scheme) {
            prop_assert!(vinposet::leq(&sigma, &text, &scheme));
        }
    }

    // Möbius recursion from the bottom and from the top agree.
    #[test]
    fn mobius_directions_agree(
        top in permutation_strategy(7),
        pick in any::<u32>(),
    ) {
        let mut cache = CoverCache::new(VincularScheme::QuasiConsecutive);
        let below: Vec<Permutation> = cache.down_set(&top).iter().cloned().collect();
        let bottom = below[pick as usize % below.len()].clone();
        let iv = cache.interval(&bottom, &top).unwrap();
        prop_assert_eq!(
            mobius_bruteforce(&iv, Direction::BottomUp),
            mobius_bruteforce(&iv, Direction::TopDown)
        );
    }
}

#[test]
fn remove_entry_always_yields_valid_shorter_permutation() {
    for n in 2..=8 {
        for p in Permutation::all_of_length(n) {
            for pos in 1..=n {
                let shorter = p.remove_entry(pos).unwrap();
                assert_eq!(shorter.len(), n - 1);
                assert!(Permutation::new(shorter.values().to_vec()).is_ok());
            }
        }
    }
}

// Quasi-consecutive covering is exactly the deduplicated first/second/last
// removal set, hence has cardinality 1, 2, or 3.
#[test]
fn quasi_covers_are_the_three_removals() {
    let quasi = VincularScheme::QuasiConsecutive;
    for n in 2..=8 {
        for tau in Permutation::all_of_length(n) {
            let covers: BTreeSet<Permutation> = covered_by(&tau, &quasi).into_iter().collect();
            let removals: BTreeSet<Permutation> = [1, 2, n]
                .iter()
                .map(|&pos| tau.remove_entry(pos).unwrap())
                .collect();
            assert_eq!(covers, removals, "tau = {tau}");
            assert!((1..=3).contains(&covers.len()));
        }
    }
}

// Membership in a materialized interval agrees with the order predicate.
#[test]
fn interval_membership_matches_leq() {
    let quasi = VincularScheme::QuasiConsecutive;
    let mut cache = CoverCache::new(quasi.clone());
    for n in 2..=6 {
        for tau in Permutation::all_of_length(n) {
            let below: Vec<Permutation> = cache.down_set(&tau).iter().cloned().collect();
            for sigma in &below {
                let iv = cache.interval(sigma, &tau).unwrap();
                for rho in &below {
                    if rho.len() < sigma.len() {
                        continue;
                    }
                    let in_interval = iv.contains_element(rho);
                    let expected = cache.leq(sigma, rho) && cache.leq(rho, &tau);
                    assert_eq!(in_interval, expected, "sigma={sigma} rho={rho} tau={tau}");
                }
            }
        }
    }
}

// Prefix-ones column vectors: containment and order coincide. The content
// sets come from the subset-enumeration oracle, the down-sets from the
// covering closure; their equality is the two-way implication for every
// sigma at once.
#[test]
fn prefix_ones_contains_iff_leq() {
    for k in 1..=3usize {
        let scheme = VincularScheme::ConstantColumns(vec![true; k]);
        let mut cache = CoverCache::new(scheme.clone());
        for n in 1..=7 {
            for tau in Permutation::all_of_length(n) {
                let mut by_length = vec![BTreeSet::new(); n];
                for rho in cache.down_set(&tau).iter() {
                    by_length[rho.len() - 1].insert(rho.clone());
                }
                let content = oracle_content_sets(&tau, &scheme);
                assert_eq!(by_length, content, "k={k} tau={tau}");
                // The production matcher agrees on every comparable pair.
                for rho in by_length.iter().flatten() {
                    assert!(contains(rho, &tau, &scheme), "k={k} rho={rho} tau={tau}");
                }
            }
        }
    }
}

// Single-occurrence structure at small lengths: involving two of the three
// critical entries forces a chain (mu = -1 only at rank 1); an inner
// non-consecutive occurrence forces mu = 0; one-cover tops give chains.
#[test]
fn single_occurrence_structure() {
    let quasi = VincularScheme::QuasiConsecutive;
    let mut cache = CoverCache::new(quasi.clone());
    for n in 2..=6 {
        for tau in Permutation::all_of_length(n) {
            let one_cover = covered_by(&tau, &quasi).len() == 1;
            let below: Vec<Permutation> = cache.down_set(&tau).iter().cloned().collect();
            for sigma in below {
                if sigma == tau {
                    continue;
                }
                let iv = cache.interval(&sigma, &tau).unwrap();
                if one_cover {
                    assert!(iv.is_chain(), "one-cover tau {tau} has non-chain [{sigma}, {tau}]");
                }
                let occs = occurrences(&sigma, &tau, &quasi).unwrap();
                if occs.len() != 1 {
                    continue;
                }
                let occ = &occs[0];
                let mu = mobius_bruteforce(&iv, Direction::BottomUp);
                let critical = [1, 2, n]
                    .iter()
                    .filter(|&&pos| occ.involves(pos))
                    .count();
                if critical == 2 {
                    assert!(iv.is_chain(), "two-of-three not a chain: [{sigma}, {tau}]");
                    assert_eq!(mu, if iv.rank() == 1 { -1 } else { 0 });
                }
                if critical == 0 && !occ.is_consecutive() {
                    assert_eq!(mu, 0, "inner non-consecutive occurrence: [{sigma}, {tau}]");
                }
            }
        }
    }
}

#[test]
fn dot_checker_rejects_garbage() {
    assert!(check_dot("graph { a -- b; }").is_ok());
    assert!(check_dot("digraph g { \"x\" -> \"y\" [weight=2]; }").is_ok());
    assert!(check_dot("digraph { a -> ; }").is_err());
    assert!(check_dot("digraph { a -> b").is_err());
    assert!(check_dot("nonsense { }").is_err());
    assert!(check_dot("digraph { } trailing").is_err());
}
