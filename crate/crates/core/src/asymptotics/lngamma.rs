//! `ln Γ` by the Stirling series.
//!
//! For `x >= S`, with `S = max(30, D)` for `D` working digits,
//!
//! `ln Γ(x) = (x - 1/2) ln x - x + ln(2π)/2 + sum_{j=1}^{40} B_{2j} / (2j (2j-1) x^{2j-1})`
//!
//! with the Bernoulli numbers `B_2..B_80` computed exactly. The first
//! omitted term is below `1e-65` at `x = 30` and shrinks like `x^-81`, so
//! raising the threshold with `D` keeps the truncation below the working
//! precision. Smaller arguments are shifted up first using
//! `ln Γ(x) = ln Γ(x + m) - ln(x (x+1) ... (x+m-1))`.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::real::{Precision, Real};

/// Number of Stirling correction terms.
pub const STIRLING_TERMS: usize = 40;

/// `B_0, B_1, ..., B_{2 STIRLING_TERMS}` with `B_1 = -1/2`.
pub fn bernoulli_numbers() -> &'static [BigRational] {
    static CELL: OnceLock<Vec<BigRational>> = OnceLock::new();
    CELL.get_or_init(|| {
        let top = 2 * STIRLING_TERMS;
        let mut b: Vec<BigRational> = Vec::with_capacity(top + 1);
        b.push(BigRational::one());
        for m in 1..=top {
            // sum_{k=0}^{m} C(m+1, k) B_k = 0
            let mut s = BigRational::zero();
            let mut c = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                s += bk * &c;
                c = c * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-s / c);
        }
        b
    })
}

fn rational_to_real(q: &BigRational, p: Precision) -> Real {
    let num = Real::from_biguint(q.numer().magnitude(), p);
    let den = Real::from_biguint(q.denom().magnitude(), p);
    let r = num / den;
    if q.numer().sign() == Sign::Minus {
        -r
    } else {
        r
    }
}

fn stirling_threshold(p: Precision) -> u64 {
    30.max(p.digits() as u64)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: &Real, p: Precision) -> Real {
    assert!(
        !x.is_negative() && !x.is_zero(),
        "ln_gamma needs a positive argument"
    );
    let s = Real::from_u64(stirling_threshold(p), p);
    let mut shifted = x.clone();
    let mut prod = Real::one(p);
    let one = Real::one(p);
    while shifted < s {
        prod = prod * &shifted;
        shifted = shifted + &one;
    }
    let base = stirling(&shifted, p);
    if prod == one {
        base
    } else {
        base - prod.ln()
    }
}

/// `ln((n-1)!)` for an integer `n >= 1`.
pub fn ln_gamma_int(n: u64, p: Precision) -> Real {
    assert!(n >= 1);
    if n <= stirling_threshold(p) {
        let mut f = Real::one(p);
        for i in 2..n {
            f = f * Real::from_u64(i, p);
        }
        return f.ln();
    }
    stirling(&Real::from_u64(n, p), p)
}

fn stirling(x: &Real, p: Precision) -> Real {
    let half = Real::parse("0.5", p).expect("literal");
    let two_pi = Real::pi(p) * Real::from_u64(2, p);
    let mut s = (x - &half) * x.ln() - x + two_pi.ln() * &half;
    let inv = x.recip();
    let inv2 = &inv * &inv;
    let mut pow = inv;
    let b = bernoulli_numbers();
    for j in 1..=STIRLING_TERMS {
        let c = &b[2 * j] / BigRational::from_integer(BigInt::from(2 * j * (2 * j - 1)));
        s = s + rational_to_real(&c, p) * &pow;
        pow = pow * &inv2;
    }
    s
}
