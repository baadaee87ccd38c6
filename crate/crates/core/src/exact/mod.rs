//! Exact counts of weakly increasing trees.
//!
//! Three independent routes produce the same numbers:
//!
//! * [`count_binary_upto`] / [`count_kary_upto`]: the coefficient recurrence,
//!   evaluated in push form one Pascal row at a time;
//! * [`count_binary_funceq`] / [`count_kary_funceq`]: fixed-point iteration of
//!   the functional equation on truncated power series;
//! * [`brute_force_count`]: exhaustive expansion of every evolution process.
//!
//! [`count_by_max_label`] refines the binary counts by maximal label.

mod brute;
mod funceq;
mod recurrence;
mod stratified;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

pub use brute::{
    brute_force_count, brute_force_with, for_each_tree, BruteForceConfig, BruteForceReport,
};
pub use funceq::{count_binary_funceq, count_kary_funceq};
pub use recurrence::{count_binary_upto, count_kary_upto};
pub use stratified::{count_by_max_label, LabelStratifiedTable, PascalRows};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("arity {0} is not supported (need k >= 2)")]
    InvalidArity(usize),
    #[error("functional-equation iteration did not stabilize within {0} rounds")]
    IterationBudget(usize),
    #[error("exhaustive generation exceeded the guard of {limit} trees at size {size}")]
    GuardExceeded { limit: u64, size: usize },
    #[error("{count} trees of size {size} are too many leaves to enumerate subsets of")]
    TooManyLeaves { size: usize, count: usize },
    #[error("exhaustive generation produced {raw} processes but only {distinct} distinct trees")]
    DuplicateTrees { raw: u64, distinct: u64 },
}

/// Binomial coefficient; zero when `q < 0` or `q > p`.
pub fn binom(p: u64, q: i64) -> BigUint {
    if q < 0 || q as u64 > p {
        return BigUint::zero();
    }
    let q = (q as u64).min(p - q as u64);
    let mut c = BigUint::one();
    for i in 1..=q {
        c *= p - q + i;
        c /= i;
    }
    c
}

/// How a table is indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// Binary counts `B_n` indexed by size.
    B,
    /// k-ary counts `H_m = G_{1 + (k-1) m}` indexed by `m`.
    H,
}

impl TableKind {
    pub fn tag(self) -> &'static str {
        match self {
            TableKind::B => "B",
            TableKind::H => "H",
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Recurrence,
    FunctionalEquation,
    BruteForce,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Recurrence => "recurrence",
            Route::FunctionalEquation => "funceq",
            Route::BruteForce => "brute",
        })
    }
}

/// Exact counts `entries[0..=max_index]`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    arity: usize,
    kind: TableKind,
    route: Route,
    entries: Vec<BigUint>,
}

impl CountTable {
    pub fn new(arity: usize, kind: TableKind, route: Route, entries: Vec<BigUint>) -> Self {
        CountTable {
            arity,
            kind,
            route,
            entries,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> Option<&BigUint> {
        self.entries.get(index)
    }

    pub fn max_index(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    /// Tree size corresponding to a table index.
    pub fn size_of_index(&self, index: usize) -> usize {
        match self.kind {
            TableKind::B => index,
            TableKind::H => 1 + (self.arity - 1) * index,
        }
    }

    /// Table index holding the count for trees of size `n`, if any.
    pub fn index_of_size(&self, n: usize) -> Option<usize> {
        match self.kind {
            TableKind::B => Some(n),
            TableKind::H => {
                let step = self.arity - 1;
                (n >= 1 && (n - 1).is_multiple_of(step)).then(|| (n - 1) / step)
            }
        }
    }

    /// Number of trees of size `n`: zero off the lattice `n = 1 (mod k-1)`,
    /// `None` beyond the table.
    pub fn g(&self, n: usize) -> Option<BigUint> {
        match self.index_of_size(n) {
            Some(i) => self.entries.get(i).cloned(),
            None if self.size_of_index(self.max_index()) >= n => Some(BigUint::zero()),
            None => None,
        }
    }

    /// Largest tree size covered.
    pub fn max_size(&self) -> usize {
        self.size_of_index(self.max_index())
    }
}
