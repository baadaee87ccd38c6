//! The coefficient families of the scaled recurrences.
//!
//! `γ_{n,l} = (n-l)(n-l-1)...(n-2l+1) / ((n-1)(n-2)...(n-l))` and
//! `δ_{n,s} = M(M-1)...(M-s+1) / (n(n-1)...(n-s+1))` with
//! `M = 1 + (n-s)(k-1)`, both as products of `l` (resp. `s`) ratios.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::real::{Precision, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("gamma_{{{n},{l}}} is defined for n >= 2 and 1 <= l <= n/2")]
    GammaRange { n: u64, l: u64 },
    #[error("delta_{{{n},{s}}} for k = {k} is defined for k >= 2 and 1 <= s <= {max}")]
    DeltaRange { k: u64, n: u64, s: u64, max: u64 },
}

fn check_gamma(n: u64, l: u64) -> Result<(), CoeffError> {
    if n < 2 || l < 1 || l > n / 2 {
        return Err(CoeffError::GammaRange { n, l });
    }
    Ok(())
}

/// Largest admissible `s` in `δ_{n,s}`: `floor(n - (n-1)/k)`.
pub fn delta_max_s(k: u64, n: u64) -> u64 {
    (1 + n * (k - 1)) / k
}

fn check_delta(k: u64, n: u64, s: u64) -> Result<(), CoeffError> {
    let max = if k >= 2 && n >= 1 {
        delta_max_s(k, n)
    } else {
        0
    };
    if k < 2 || s < 1 || s > max {
        return Err(CoeffError::DeltaRange { k, n, s, max });
    }
    Ok(())
}

/// Factor pairs `(numerator, denominator)` of `γ_{n,l}`.
fn gamma_factors(n: u64, l: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..l).map(move |i| (n - l - i, n - 1 - i))
}

fn delta_factors(k: u64, n: u64, s: u64) -> impl Iterator<Item = (u64, u64)> {
    let m = 1 + (n - s) * (k - 1);
    (0..s).map(move |i| (m - i, n - i))
}

pub fn gamma_coeff(n: u64, l: u64, p: Precision) -> Result<Real, CoeffError> {
    check_gamma(n, l)?;
    Ok(product(gamma_factors(n, l), p))
}

pub fn gamma_coeff_exact(n: u64, l: u64) -> Result<BigRational, CoeffError> {
    check_gamma(n, l)?;
    Ok(product_exact(gamma_factors(n, l)))
}

pub fn delta_coeff(k: u64, n: u64, s: u64, p: Precision) -> Result<Real, CoeffError> {
    check_delta(k, n, s)?;
    Ok(product(delta_factors(k, n, s), p))
}

pub fn delta_coeff_exact(k: u64, n: u64, s: u64) -> Result<BigRational, CoeffError> {
    check_delta(k, n, s)?;
    Ok(product_exact(delta_factors(k, n, s)))
}

fn product(factors: impl Iterator<Item = (u64, u64)>, p: Precision) -> Real {
    // accumulate numerator and denominator in u128 while they fit
    let mut acc = Real::one(p);
    let (mut num, mut den) = (1u128, 1u128);
    for (a, b) in factors {
        match (num.checked_mul(a as u128), den.checked_mul(b as u128)) {
            (Some(x), Some(y)) if x < 1 << 100 && y < 1 << 100 => {
                num = x;
                den = y;
            }
            _ => {
                acc = acc * ratio(num, den, p);
                num = a as u128;
                den = b as u128;
            }
        }
    }
    acc * ratio(num, den, p)
}

fn ratio(num: u128, den: u128, p: Precision) -> Real {
    let to = |x: u128| Real::from_biguint(&x.into(), p);
    to(num) / to(den)
}

fn product_exact(factors: impl Iterator<Item = (u64, u64)>) -> BigRational {
    let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
    for (a, b) in factors {
        num *= a;
        den *= b;
    }
    BigRational::new(num, den)
}

/// `1 - l(l-1)/n - l(l-1)^2/n^2`, the stated lower bound for `γ_{n,l}`.
///
/// It does not hold at `l = 2`: there `γ_{n,2} = 1 - 2/(n-1)`, which is
/// below `1 - 2/n - 2/n^2` for every `n >= 4`. See [`gamma_lower_bound_shifted`].
pub fn gamma_lower_bound(n: u64, l: u64) -> BigRational {
    lower_form(BigInt::from(n), l)
}

/// The same form with `n - 1` in place of `n`, which does hold for
/// `1 <= l <= n/2`: `γ_{n,l} >= 1 - l ln((n-1)/(n-l))` and
/// `ln(1/(1-x)) <= x + x^2` with `x = (l-1)/(n-1) <= 1/2`.
pub fn gamma_lower_bound_shifted(n: u64, l: u64) -> BigRational {
    lower_form(BigInt::from(n) - 1, l)
}

fn lower_form(n: BigInt, l: u64) -> BigRational {
    let l = BigInt::from(l);
    let one = BigRational::from_integer(1.into());
    let lm = &l - 1;
    one - BigRational::new(&l * &lm, n.clone()) - BigRational::new(&l * &lm * &lm, &n * &n)
}

/// `1 - l(l-1)/n + l(l-1)^3/(2n^2)`, the upper bound for `γ_{n,l}`.
pub fn gamma_upper_bound(n: u64, l: u64) -> BigRational {
    let (n, l) = (BigInt::from(n), BigInt::from(l));
    let one = BigRational::from_integer(1.into());
    let lm = &l - 1;
    one - BigRational::new(&l * &lm, n.clone())
        + BigRational::new(&l * &lm * &lm * &lm, 2 * &n * &n)
}

/// `(k-1)(1 - 1/n + 1/(n(k-1)))`, the closed form of `δ_{n,1}`.
pub fn delta_one_closed_form(k: u64, n: u64) -> BigRational {
    let n = BigInt::from(n);
    let km = BigInt::from(k - 1);
    let one = BigRational::from_integer(1.into());
    BigRational::from_integer(km.clone())
        * (one - BigRational::new(1.into(), n.clone()) + BigRational::new(1.into(), &n * &km))
}

/// `(k-1)^s (1 - s/n)`, the upper bound for `δ_{n,s}` when `s > 1`.
pub fn delta_upper_bound(k: u64, n: u64, s: u64) -> BigRational {
    let km = BigInt::from(k - 1).pow(s as u32);
    BigRational::from_integer(km) * BigRational::new(BigInt::from(n) - s, BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_coeff_exact(10, 2).unwrap(), q(7, 9));
        assert_eq!(gamma_coeff_exact(4, 2).unwrap(), q(1, 3));
        for n in 2..40 {
            assert_eq!(gamma_coeff_exact(n, 1).unwrap(), q(1, 1));
        }
        let p = Precision::default();
        assert!((gamma_coeff(10, 2, p).unwrap().to_f64() - 7.0 / 9.0).abs() < 1e-16);
    }

    #[test]
    fn gamma_range() {
        assert!(gamma_coeff_exact(1, 1).is_err());
        assert!(gamma_coeff_exact(9, 5).is_err());
        assert!(gamma_coeff_exact(9, 0).is_err());
        assert!(gamma_coeff_exact(9, 4).is_ok());
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_coeff_exact(3, 2, 1).unwrap(), q(3, 2));
        assert_eq!(delta_coeff_exact(3, 4, 1).unwrap(), q(7, 4));
        assert_eq!(delta_one_closed_form(3, 2), q(3, 2));
        assert_eq!(delta_one_closed_form(3, 4), q(7, 4));
        assert_eq!(delta_max_s(3, 4), 3);
        assert!(delta_coeff_exact(3, 4, 4).is_err());
        assert!(delta_coeff_exact(3, 4, 0).is_err());
        assert!(delta_coeff_exact(1, 4, 1).is_err());
    }

    #[test]
    fn long_products_match_exact() {
        let p = Precision::default();
        for (n, l) in [(1000u64, 400u64), (501, 250)] {
            let e = gamma_coeff_exact(n, l).unwrap();
            let r = gamma_coeff(n, l, p).unwrap();
            let num = Real::from_biguint(e.numer().magnitude(), p);
            let den = Real::from_biguint(e.denom().magnitude(), p);
            let d = super::super::real::rel_diff(&r, &(num / den));
            assert!(d < 1e-27, "{d}");
        }
        let r = delta_coeff(13, 300, 200, p).unwrap();
        assert!(r.is_finite() && !r.is_negative());
    }

    #[test]
    fn stated_lower_bound_fails_at_two() {
        for n in 4..60u64 {
            let g = gamma_coeff_exact(n, 2).unwrap();
            assert_eq!(g, q(n as i64 - 3, n as i64 - 1));
            assert!(g < gamma_lower_bound(n, 2), "n={n}");
            assert!(g >= gamma_lower_bound_shifted(n, 2), "n={n}");
        }
        assert!(gamma_coeff_exact(40, 5).unwrap() >= gamma_lower_bound(40, 5));
    }

    #[test]
    fn delta_asymptotics_at_ten_thousand() {
        let p = Precision::default();
        let n = 10_000u64;
        for k in [3u64, 13] {
            for s in 1..=10u64 {
                let d = delta_coeff(k, n, s, p).unwrap().to_f64() / ((k - 1) as f64).powi(s as i32);
                let approx =
                    1.0 - (s * ((s + 1) * k - 4)) as f64 / (2.0 * n as f64 * (k - 1) as f64);
                let err = (d - approx).abs();
                let scale = (s as f64).powi(4) / (n as f64).powi(2);
                assert!(err <= 1.0 * scale, "k={k} s={s} err={err:e}");
            }
        }
    }
}
