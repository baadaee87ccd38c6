//! Exhaustive generation by running every evolution process.
//!
//! From a tree of size `s < n`, every nonempty leaf subset whose expansion
//! keeps the size at most `n` is tried. Subsets are visited as bitmasks over
//! the canonical leaf order (leaf 0 is the least significant bit) in
//! increasing numeric order, depth first, so the output order is fixed.

use std::collections::HashSet;

use num_bigint::BigUint;

use super::ExactError;
use crate::trees::CompletedTree;

// subsets of more leaves than this are not enumerated
const MAX_LEAVES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceConfig {
    /// Abort once more than this many trees of the target size are produced.
    pub max_trees: u64,
    /// Also count distinct canonical encodings.
    pub check_unique: bool,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        BruteForceConfig {
            max_trees: 2_000_000,
            check_unique: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceReport {
    pub arity: usize,
    pub size: usize,
    /// Number of evolution processes reaching the target size.
    pub raw: u64,
    /// Number of distinct trees among them, when requested.
    pub distinct: Option<u64>,
}

/// Call `visit` on the result of every evolution process reaching size `n`,
/// in canonical order. Returns the number of trees visited.
pub fn for_each_tree(
    arity: usize,
    n: usize,
    max_trees: u64,
    mut visit: impl FnMut(&CompletedTree),
) -> Result<u64, ExactError> {
    if arity < 2 {
        return Err(ExactError::InvalidArity(arity));
    }
    if n < arity || !(n - 1).is_multiple_of(arity - 1) {
        return Ok(0);
    }
    let mut produced = 0u64;
    dfs(
        &CompletedTree::root_tree(arity),
        n,
        max_trees,
        &mut produced,
        &mut visit,
    )?;
    Ok(produced)
}

fn dfs(
    t: &CompletedTree,
    n: usize,
    max_trees: u64,
    produced: &mut u64,
    visit: &mut impl FnMut(&CompletedTree),
) -> Result<(), ExactError> {
    let s = t.size();
    if s == n {
        *produced += 1;
        if *produced > max_trees {
            return Err(ExactError::GuardExceeded {
                limit: max_trees,
                size: n,
            });
        }
        visit(t);
        return Ok(());
    }
    if s > MAX_LEAVES {
        return Err(ExactError::TooManyLeaves { size: n, count: s });
    }
    let max_pick = (n - s) / (t.arity() - 1);
    let label = t.max_label() + 1;
    let mut idx = Vec::with_capacity(max_pick);
    for mask in 1u32..(1u32 << s) {
        if mask.count_ones() as usize > max_pick {
            continue;
        }
        idx.clear();
        idx.extend((0..s).filter(|i| mask >> i & 1 == 1));
        let next = t.evolve_indexed(&idx, label).expect("valid expansion");
        dfs(&next, n, max_trees, produced, visit)?;
    }
    Ok(())
}

/// Run the exhaustive generation and report raw and distinct counts.
///
/// With `check_unique`, a raw count larger than the distinct count is an
/// error: each tree must come from exactly one process.
pub fn brute_force_with(
    arity: usize,
    n: usize,
    cfg: &BruteForceConfig,
) -> Result<BruteForceReport, ExactError> {
    let mut seen = HashSet::new();
    let raw = for_each_tree(arity, n, cfg.max_trees, |t| {
        if cfg.check_unique {
            seen.insert(t.canonical_encoding());
        }
    })?;
    let distinct = cfg.check_unique.then_some(seen.len() as u64);
    if let Some(d) = distinct {
        if d != raw {
            return Err(ExactError::DuplicateTrees { raw, distinct: d });
        }
    }
    Ok(BruteForceReport {
        arity,
        size: n,
        raw,
        distinct,
    })
}

/// Number of trees of size `n`, by exhaustive generation with the default
/// guard.
pub fn brute_force_count(arity: usize, n: usize) -> Result<BigUint, ExactError> {
    brute_force_with(arity, n, &BruteForceConfig::default()).map(|r| BigUint::from(r.raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{count_binary_upto, count_kary_upto};

    #[test]
    fn small_binary() {
        assert_eq!(brute_force_count(2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(brute_force_count(2, 1).unwrap(), BigUint::from(0u32));
        assert_eq!(brute_force_count(2, 7).unwrap(), BigUint::from(1652u32));
    }

    #[test]
    fn small_ternary() {
        assert_eq!(brute_force_count(3, 5).unwrap(), BigUint::from(3u32));
        assert_eq!(brute_force_count(3, 4).unwrap(), BigUint::from(0u32));
        assert_eq!(brute_force_count(3, 2).unwrap(), BigUint::from(0u32));
    }

    #[test]
    fn agrees_with_recurrence() {
        let b = count_binary_upto(8);
        for n in 0..=8 {
            assert_eq!(&brute_force_count(2, n).unwrap(), b.get(n).unwrap());
        }
        let h = count_kary_upto(4, 3).unwrap();
        for n in 0..=10 {
            assert_eq!(brute_force_count(4, n).unwrap(), h.g(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn guard_trips() {
        let cfg = BruteForceConfig {
            max_trees: 100,
            check_unique: false,
        };
        assert_eq!(
            brute_force_with(2, 6, &cfg),
            Err(ExactError::GuardExceeded {
                limit: 100,
                size: 6
            })
        );
    }

    #[test]
    fn order_is_canonical() {
        let mut seen = Vec::new();
        for_each_tree(2, 3, 10, |t| seen.push(t.render_graph())).unwrap();
        assert_eq!(seen, ["- - 1\n/ 0 2\n", "- - 1\n/ 1 2\n"]);
    }

    #[test]
    fn visited_trees_are_valid() {
        for_each_tree(3, 7, 1000, |t| {
            assert_eq!(t.size(), 7);
            crate::trees::validate(&t.to_labeled(), 3).unwrap();
        })
        .unwrap();
    }
}
