//! Counts read off the functional equation `G(z) = (z^k + G(z + z^k)) / 2`.
//!
//! The equation is iterated in the equivalent form
//! `G <- z^k + G(z + z^k) - G(z)` on series truncated at the target degree,
//! starting from zero. The difference `G(z + z^k) - G(z)` only feeds
//! coefficient `p` into degrees `> p`, so every round fixes at least one
//! more coefficient and the iteration reaches its fixed point exactly.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{CountTable, ExactError, Route, TableKind};

/// `B_0..=B_max_size` by fixed-point iteration.
pub fn count_binary_funceq(max_size: usize) -> Result<CountTable, ExactError> {
    let series = fixed_point(2, max_size)?;
    Ok(CountTable::new(
        2,
        TableKind::B,
        Route::FunctionalEquation,
        series,
    ))
}

/// `H_0..=H_max_index` by fixed-point iteration on series truncated at
/// degree `1 + (k-1) max_index`.
pub fn count_kary_funceq(arity: usize, max_index: usize) -> Result<CountTable, ExactError> {
    if arity < 2 {
        return Err(ExactError::InvalidArity(arity));
    }
    let step = arity - 1;
    let series = fixed_point(arity, 1 + step * max_index)?;
    debug_assert!(series
        .iter()
        .enumerate()
        .all(|(n, c)| c.is_zero() || (n >= 1 && (n - 1) % step == 0)));
    let entries = (0..=max_index)
        .map(|m| series[1 + step * m].clone())
        .collect();
    Ok(CountTable::new(
        arity,
        TableKind::H,
        Route::FunctionalEquation,
        entries,
    ))
}

fn fixed_point(arity: usize, degree: usize) -> Result<Vec<BigUint>, ExactError> {
    let step = arity - 1;
    let budget = degree + 2;
    let mut current = vec![BigUint::zero(); degree + 1];
    for _ in 0..budget {
        let mut next = vec![BigUint::zero(); degree + 1];
        if arity <= degree {
            next[arity] = BigUint::one();
        }
        // (z + z^k)^p - z^p = sum_{j >= 1} C(p, j) z^{p + j(k-1)}
        for (p, coeff) in current.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut c = BigUint::one();
            for j in 1..=p {
                let deg = p + j * step;
                if deg > degree {
                    break;
                }
                c *= (p - j + 1) as u64;
                c /= j as u64;
                next[deg] += &c * coeff;
            }
        }
        if next == current {
            return Ok(current);
        }
        current = next;
    }
    Err(ExactError::IterationBudget(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{count_binary_upto, count_kary_upto};

    #[test]
    fn degree_two_seed() {
        let t = count_binary_funceq(2).unwrap();
        assert_eq!(
            t.entries(),
            &[BigUint::zero(), BigUint::zero(), BigUint::one()]
        );
    }

    #[test]
    fn matches_recurrence_to_thirteen() {
        assert_eq!(
            count_binary_funceq(13).unwrap().entries(),
            count_binary_upto(13).entries()
        );
    }

    #[test]
    fn matches_recurrence_to_three_hundred() {
        assert_eq!(
            count_binary_funceq(300).unwrap().entries(),
            count_binary_upto(300).entries()
        );
    }

    #[test]
    fn kary_matches_recurrence() {
        for k in [3, 4, 7] {
            let f = count_kary_funceq(k, 25).unwrap();
            let r = count_kary_upto(k, 25).unwrap();
            assert_eq!(f.entries(), r.entries(), "k = {k}");
        }
    }
}
