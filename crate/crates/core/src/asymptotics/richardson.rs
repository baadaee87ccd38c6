use super::real::{Precision, Real};

/// Richardson table for estimates `x[i]` taken at `n / 2^i` (finest first),
/// assuming an error expansion in powers `n^{-orders[0]}, n^{-orders[1]}, ...`.
///
/// Returns the most accelerated value and the spread between it and the
/// best value of the previous column.
pub fn richardson(x: &[Real], orders: &[u32], p: Precision) -> (Real, f64) {
    assert!(!x.is_empty(), "no estimates");
    let depth = orders.len().min(x.len() - 1);
    let mut col: Vec<Real> = x.to_vec();
    let mut prev_best = col[0].clone();
    for &q in &orders[..depth] {
        let f = (1u64 << q) as f64;
        let fr = Real::from_f64(f, p);
        let denom = Real::from_f64(f - 1.0, p);
        prev_best = col[0].clone();
        col = col
            .windows(2)
            .map(|w| (&fr * &w[0] - &w[1]) / &denom)
            .collect();
    }
    let best = col[0].clone();
    let spread = (&best - &prev_best).abs().to_f64();
    (best, spread)
}
