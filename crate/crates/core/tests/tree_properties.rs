use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use wit_core::exact::{
    brute_force_with, count_binary_upto, count_kary_upto, for_each_tree, BruteForceConfig,
};
use wit_core::sampler::SamplerContext;
use wit_core::trees::{complete, decode, validate, CompletedTree};

/// Random evolution process: each step picks a nonempty subset by bitmask.
fn grow(arity: usize, masks: &[u64]) -> CompletedTree {
    let mut t = CompletedTree::root_tree(arity);
    for &mask in masks {
        let leaves = t.size();
        let picks: Vec<usize> = (0..leaves.min(64)).filter(|i| mask >> i & 1 == 1).collect();
        let picks = if picks.is_empty() {
            vec![leaves - 1]
        } else {
            picks
        };
        t = t.evolve_indexed(&picks, t.max_label() + 1).unwrap();
    }
    t
}

proptest! {
    #[test]
    fn evolution_step_bookkeeping(arity in 2usize..5, masks in prop::collection::vec(any::<u64>(), 0..5)) {
        let mut t = CompletedTree::root_tree(arity);
        for &mask in &masks {
            let leaves = t.size();
            let picks: Vec<usize> = (0..leaves.min(64)).filter(|i| mask >> i & 1 == 1).collect();
            let picks = if picks.is_empty() { vec![0] } else { picks };
            let next = t.evolve_indexed(&picks, t.max_label() + 1).unwrap();
            prop_assert_eq!(next.size(), t.size() + picks.len() * (arity - 1));
            prop_assert_eq!(next.node_count(), t.node_count() + picks.len());
            prop_assert_eq!(next.max_label(), t.max_label() + 1);
            prop_assert_eq!(next.size(), (arity - 1) * next.node_count() + 1);
            prop_assert!(validate(&next.to_labeled(), arity).is_ok());
            t = next;
        }
    }

    #[test]
    fn paths_and_indices_agree(arity in 2usize..4, masks in prop::collection::vec(any::<u64>(), 0..4), pick in any::<u64>()) {
        let t = grow(arity, &masks);
        let leaves = t.leaf_paths();
        let idx: Vec<usize> = (0..leaves.len().min(64)).filter(|i| pick >> i & 1 == 1).collect();
        prop_assume!(!idx.is_empty());
        let chosen: Vec<_> = idx.iter().map(|&i| leaves[i].clone()).collect();
        let a = t.evolve_indexed(&idx, t.max_label() + 1).unwrap();
        let b = t.evolution_step(&chosen, t.max_label() + 1).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn encoding_round_trips(arity in 2usize..5, masks in prop::collection::vec(any::<u64>(), 0..5)) {
        let t = grow(arity, &masks);
        let back = decode(&t.canonical_encoding()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(complete(&t.to_labeled(), arity).unwrap(), t);
    }

    #[test]
    fn wrong_label_rejected(arity in 2usize..4, masks in prop::collection::vec(any::<u64>(), 0..3), skip in 2u32..5) {
        let t = grow(arity, &masks);
        prop_assert!(t.evolve_indexed(&[0], t.max_label() + skip).is_err());
        prop_assert!(t.evolve_indexed(&[], t.max_label() + 1).is_err());
    }

    #[test]
    fn samples_are_valid(seed in any::<u64>(), n in 2usize..30) {
        let table = count_binary_upto(30);
        let mut ctx = SamplerContext::new(&table, seed);
        let t = ctx.sample_uniform(n).unwrap();
        prop_assert_eq!(t.size(), n);
        prop_assert!(validate(&t.to_labeled(), 2).is_ok());
    }
}

#[test]
fn encodings_injective_through_size_nine() {
    for (arity, top) in [(2usize, 9usize), (3, 9), (4, 7)] {
        for n in arity..=top {
            let mut seen = HashSet::new();
            let visited = for_each_tree(arity, n, 2_000_000, |t| {
                assert!(seen.insert(t.canonical_encoding()), "k={arity} n={n}");
            })
            .unwrap();
            assert_eq!(visited as usize, seen.len());
        }
    }
}

#[test]
fn each_tree_has_one_process_through_size_nine() {
    let cfg = BruteForceConfig::default();
    for arity in [2usize, 3] {
        for n in arity..=9 {
            let r = brute_force_with(arity, n, &cfg).unwrap();
            assert_eq!(Some(r.raw), r.distinct, "k={arity} n={n}");
        }
    }
}

#[test]
fn counts_dominate_factorial() {
    // one tree per permutation of the labels in a caterpillar
    let b = count_binary_upto(300);
    let mut fact = BigUint::from(1u32);
    for n in 2..=300usize {
        fact *= (n - 1).max(1);
        assert!(b.entries()[n] >= fact, "n={n}");
    }
}

#[test]
fn arity_two_h_table_is_binary() {
    let b = count_binary_upto(200);
    let h = count_kary_upto(2, 199).unwrap();
    for n in 0..=200usize {
        assert_eq!(h.g(n).unwrap(), b.entries()[n], "n={n}");
    }
}
