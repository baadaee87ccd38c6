//! Exhaustive lists and exact uniform sampling.
//!
//! A tree of size `n` arises from a unique tree of size `p = n - l(k-1)` by
//! expanding `l` of its `p` leaves, so `G_n = sum_l C(p, l) G_p`. Sampling
//! reads this sum backwards: draw `l` with probability `C(p, l) G_p / G_n`,
//! recurse on size `p`, then expand a uniform `l`-subset of the leaves.
//!
//! Randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`, 20 rounds)
//! seeded through `SeedableRng::seed_from_u64`. Only `next_u32` is used:
//!
//! * a uniform integer in `[0, B)` takes `w = ceil(bits(B) / 32)` words,
//!   least significant first, masks the top word down to `bits(B)` bits and
//!   retries whenever the result is `>= B`;
//! * for a size `n`, every size-reduction choice along the chain down to the
//!   root tree is drawn first (largest size first), then the leaf subsets
//!   are drawn from the root tree upward;
//! * an `l`-subset of `p` leaves is the first `l` entries of a Fisher-Yates
//!   pass over `0..p` (position `i` swapped with a uniform `j` in `[i, p)`),
//!   sorted before expansion.
//!
//! Any implementation following these rules reproduces the same trees from
//! the same seed.

use num_bigint::BigUint;
use num_traits::Zero;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::exact::{binom, for_each_tree, BruteForceConfig, CountTable, ExactError};
use crate::trees::CompletedTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("there are no trees of size {size} for arity {arity}")]
    ZeroCount { arity: usize, size: usize },
    #[error("size {size} is beyond the count table (max size {max})")]
    OutOfTable { size: usize, max: usize },
}

/// Every tree of size `n`, each exactly once, in canonical expansion order.
pub fn enumerate_all(arity: usize, n: usize) -> Result<Vec<CompletedTree>, ExactError> {
    let mut out = Vec::new();
    for_each_tree(arity, n, BruteForceConfig::default().max_trees, |t| {
        out.push(t.clone())
    })?;
    Ok(out)
}

/// Uniform sampler over trees of a fixed arity. Holds the random state, so
/// one context serves one consumer; contexts can share a table.
#[derive(Debug, Clone)]
pub struct SamplerContext<'a> {
    arity: usize,
    table: &'a CountTable,
    rng: ChaCha20Rng,
}

impl<'a> SamplerContext<'a> {
    pub fn new(table: &'a CountTable, seed: u64) -> Self {
        SamplerContext {
            arity: table.arity(),
            table,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn count(&self, size: usize) -> Result<BigUint, SampleError> {
        self.table.g(size).ok_or(SampleError::OutOfTable {
            size,
            max: self.table.max_size(),
        })
    }

    /// A tree drawn uniformly among all trees of size `n`.
    pub fn sample_uniform(&mut self, n: usize) -> Result<CompletedTree, SampleError> {
        let total = self.count(n)?;
        if total.is_zero() {
            return Err(SampleError::ZeroCount {
                arity: self.arity,
                size: n,
            });
        }
        let step = self.arity - 1;
        // (predecessor size, leaves expanded), largest size first
        let mut chain = Vec::new();
        let (mut size, mut count) = (n, total);
        while size > self.arity {
            let r = uniform_below(&mut self.rng, &count);
            let mut acc = BigUint::zero();
            let mut pick = None;
            for l in 1..=(size - 1) / step {
                let p = size - l * step;
                let g = self.count(p)?;
                if g.is_zero() {
                    continue;
                }
                acc += binom(p as u64, l as i64) * &g;
                if r < acc {
                    pick = Some((p, l, g));
                    break;
                }
            }
            let (p, l, g) = pick.expect("weights sum to the count");
            chain.push((p, l));
            size = p;
            count = g;
        }
        let mut tree = CompletedTree::root_tree(self.arity);
        for &(p, l) in chain.iter().rev() {
            let subset = leaf_subset(&mut self.rng, p, l);
            tree = tree
                .evolve_indexed(&subset, tree.max_label() + 1)
                .expect("subset addresses leaves");
        }
        Ok(tree)
    }
}

/// Uniform integer in `[0, bound)` by masked rejection; `bound > 0`.
pub fn uniform_below(rng: &mut impl RngCore, bound: &BigUint) -> BigUint {
    let bits = bound.bits();
    assert!(bits > 0, "empty range");
    let words = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (words as u64 - 1);
    let mask = if top_bits == 32 {
        u32::MAX
    } else {
        (1u32 << top_bits) - 1
    };
    let mut buf = vec![0u32; words];
    loop {
        for w in buf.iter_mut() {
            *w = rng.next_u32();
        }
        buf[words - 1] &= mask;
        let x = BigUint::from_slice(&buf);
        if &x < bound {
            return x;
        }
    }
}

fn uniform_usize(rng: &mut impl RngCore, bound: usize) -> usize {
    let x = uniform_below(rng, &BigUint::from(bound));
    x.to_u64_digits().first().copied().unwrap_or(0) as usize
}

/// Sorted uniform `l`-subset of `0..p`.
fn leaf_subset(rng: &mut impl RngCore, p: usize, l: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..p).collect();
    for i in 0..l {
        let j = i + uniform_usize(rng, p - i);
        idx.swap(i, j);
    }
    idx.truncate(l);
    idx.sort_unstable();
    idx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStatistics {
    pub size: usize,
    pub nodes: usize,
    pub max_label: u32,
    pub depth: usize,
}

pub fn tree_statistics(t: &CompletedTree) -> TreeStatistics {
    TreeStatistics {
        size: t.size(),
        nodes: t.node_count(),
        max_label: t.max_label(),
        depth: t.depth(),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use statrs::distribution::{ChiSquared, ContinuousCDF};

    use super::*;
    use crate::exact::{count_binary_upto, count_kary_upto};
    use crate::trees::{complete, tests::example_tree};

    fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
        let stat: f64 = observed
            .iter()
            .zip(expected)
            .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
            .sum();
        ChiSquared::new((observed.len() - 1) as f64)
            .unwrap()
            .sf(stat)
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(
            enumerate_all(2, 2).unwrap(),
            vec![CompletedTree::root_tree(2)]
        );
        assert_eq!(enumerate_all(2, 5).unwrap().len(), 34);
        assert_eq!(enumerate_all(3, 7).unwrap().len(), 18);
    }

    #[test]
    fn size_two_is_root() {
        let t = count_binary_upto(10);
        for seed in 0..5 {
            let mut ctx = SamplerContext::new(&t, seed);
            assert_eq!(ctx.sample_uniform(2).unwrap(), CompletedTree::root_tree(2));
        }
    }

    #[test]
    fn off_lattice_is_an_error() {
        let t = count_kary_upto(3, 10).unwrap();
        let mut ctx = SamplerContext::new(&t, 1);
        assert_eq!(
            ctx.sample_uniform(4),
            Err(SampleError::ZeroCount { arity: 3, size: 4 })
        );
        assert!(matches!(
            ctx.sample_uniform(99),
            Err(SampleError::OutOfTable { .. })
        ));
        assert_eq!(ctx.sample_uniform(9).unwrap().size(), 9);
    }

    #[test]
    fn same_seed_same_tree() {
        let t = count_binary_upto(40);
        let a = SamplerContext::new(&t, 42).sample_uniform(40).unwrap();
        let b = SamplerContext::new(&t, 42).sample_uniform(40).unwrap();
        assert_eq!(a.canonical_encoding(), b.canonical_encoding());
        let c = SamplerContext::new(&t, 43).sample_uniform(40).unwrap();
        assert_ne!(a.canonical_encoding(), c.canonical_encoding());
    }

    #[test]
    fn uniform_on_size_four() {
        let t = count_binary_upto(4);
        let all = enumerate_all(2, 4).unwrap();
        let index: HashMap<Vec<u8>, usize> = all
            .iter()
            .enumerate()
            .map(|(i, t)| (t.canonical_encoding(), i))
            .collect();
        let draws = 70_000;
        let mut counts = vec![0u64; all.len()];
        let mut ctx = SamplerContext::new(&t, 2024);
        for _ in 0..draws {
            counts[index[&ctx.sample_uniform(4).unwrap().canonical_encoding()]] += 1;
        }
        let expected = vec![draws as f64 / 7.0; 7];
        assert!(chi_square_p(&counts, &expected) > 1e-3, "{counts:?}");
    }

    #[test]
    fn uniform_ternary_size_seven() {
        let t = count_kary_upto(3, 3).unwrap();
        let all = enumerate_all(3, 7).unwrap();
        let index: HashMap<Vec<u8>, usize> = all
            .iter()
            .enumerate()
            .map(|(i, t)| (t.canonical_encoding(), i))
            .collect();
        let draws = 36_000;
        let mut counts = vec![0u64; all.len()];
        let mut ctx = SamplerContext::new(&t, 5);
        for _ in 0..draws {
            counts[index[&ctx.sample_uniform(7).unwrap().canonical_encoding()]] += 1;
        }
        let expected = vec![draws as f64 / 18.0; 18];
        assert!(chi_square_p(&counts, &expected) > 1e-3, "{counts:?}");
    }

    #[test]
    fn uniform_below_stays_in_range() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        for b in [1u64, 2, 3, 7, 1 << 32, (1 << 32) + 1, u64::MAX] {
            let bound = BigUint::from(b);
            for _ in 0..200 {
                assert!(uniform_below(&mut rng, &bound) < bound);
            }
        }
        let big = BigUint::from(10u32).pow(40);
        assert!(uniform_below(&mut rng, &big) < big);
    }

    #[test]
    fn subsets_are_sorted_and_distinct() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..100 {
            let s = leaf_subset(&mut rng, 9, 4);
            assert_eq!(s.len(), 4);
            assert!(s.windows(2).all(|w| w[0] < w[1]) && s[3] < 9);
        }
    }

    #[test]
    fn statistics() {
        let fig = complete(&example_tree(), 2).unwrap();
        let s = tree_statistics(&fig);
        assert_eq!((s.size, s.nodes, s.max_label), (8, 7, 4));
        let r = tree_statistics(&CompletedTree::root_tree(2));
        assert_eq!(
            r,
            TreeStatistics {
                size: 2,
                nodes: 1,
                max_label: 1,
                depth: 1
            }
        );
        let t = count_binary_upto(20);
        let mut ctx = SamplerContext::new(&t, 9);
        for _ in 0..10 {
            let s = tree_statistics(&ctx.sample_uniform(20).unwrap());
            assert_eq!(s.size, 20);
            assert_eq!(s.size, s.nodes + 1);
        }
    }
}
