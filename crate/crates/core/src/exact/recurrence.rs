use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{CountTable, ExactError, Route, TableKind};

// rows shorter than this are updated sequentially
const PAR_ROW: usize = 48;

/// `B_0..=B_max_size` from `B_n = sum_{l=1}^{n/2} C(n-l, l) B_{n-l}`, `B_2 = 1`.
pub fn count_binary_upto(max_size: usize) -> CountTable {
    let entries = push_table(max_size, 2, |p| p as u64);
    CountTable::new(2, TableKind::B, Route::Recurrence, entries)
}

/// `H_0..=H_max_index` from
/// `H_n = sum_s C(1 + (n-s)(k-1), s) H_{n-s}`, `H_1 = 1`.
pub fn count_kary_upto(arity: usize, max_index: usize) -> Result<CountTable, ExactError> {
    if arity < 2 {
        return Err(ExactError::InvalidArity(arity));
    }
    let step = (arity - 1) as u64;
    let entries = push_table(max_index, 1, |p| 1 + p as u64 * step);
    Ok(CountTable::new(
        arity,
        TableKind::H,
        Route::Recurrence,
        entries,
    ))
}

/// Evaluate `T_n = sum_{j >= 1} C(row(n-j), j) T_{n-j}` for `n > seed`, with
/// `T_seed = 1` and zeros below.
///
/// Push form: once `T_p` is final, row `row(p)` of Pascal's triangle is
/// built once and `C(row(p), j) T_p` is added to every later accumulator
/// `T_{p+j}`.
fn push_table(max: usize, seed: usize, row: impl Fn(usize) -> u64) -> Vec<BigUint> {
    let mut t = vec![BigUint::zero(); max + 1];
    if seed > max {
        return t;
    }
    t[seed] = BigUint::one();
    let mut binoms: Vec<BigUint> = Vec::new();
    for p in seed..max {
        if t[p].is_zero() {
            continue;
        }
        let r = row(p);
        let reach = (max - p).min(r as usize);
        binoms.clear();
        let mut c = BigUint::one();
        for j in 1..=reach as u64 {
            c *= r - j + 1;
            c /= j;
            binoms.push(c.clone());
        }
        let (head, tail) = t.split_at_mut(p + 1);
        let v = &head[p];
        let targets = &mut tail[..reach];
        if reach >= PAR_ROW {
            targets
                .par_iter_mut()
                .zip(binoms.par_iter())
                .for_each(|(acc, c)| *acc += c * v);
        } else {
            for (acc, c) in targets.iter_mut().zip(&binoms) {
                *acc += c * v;
            }
        }
    }
    t
}
