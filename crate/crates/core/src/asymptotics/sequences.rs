//! Builders for `b_n`, `h_n` and the correction sequence `a_n`.
//!
//! The recurrences weight `b_{n-l}` by `w_l = (ln 2)^l / l!`. Every
//! coefficient multiplying `w_l` is at most `1` in absolute value (at most
//! `l^2` in the correction sums), so terms with `w_l < 2^-(bits + 32)` are
//! dropped; at 30 digits that keeps about 40 terms.

use num_traits::Zero;

use super::coeffs::delta_coeff;
use super::lngamma::ln_gamma_int;
use super::real::{Precision, Real};
use super::{AsymptoticsError, ScaledSequence, SeqKind};
use crate::exact::{CountTable, TableKind};

/// `base^l / l!` for `l = 0, 1, ...` while above `2^-(bits + 32)`.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn weights(base: &Real, p: Precision) -> Vec<Real> {
    let cutoff = 2f64.powi(-(p.bits() as i32 + 32));
    let mut w = vec![Real::one(p)];
    loop {
        let l = w.len() as u64;
        let next = w.last().unwrap() * base / Real::from_u64(l, p);
        if !(next.to_f64() >= cutoff) {
            return w;
        }
        w.push(next);
    }
}

/// `num / den` as a real.
fn frac(num: u128, den: u128, p: Precision) -> Real {
    Real::from_biguint(&num.into(), p) / Real::from_biguint(&den.into(), p)
}

/// `b_0..=b_N` from `b_n = sum_l (α^{-l}/l!) γ_{n,l} b_{n-l}`, `b_2 = (ln 2)^2`.
pub fn scaled_b_recurrence(max: usize, p: Precision) -> ScaledSequence {
    let ln2 = Real::ln2(p);
    let w = weights(&ln2, p);
    let mut b = vec![Real::zero(p); max + 1];
    if max >= 2 {
        b[2] = &ln2 * &ln2;
    }
    for n in 3..=max {
        let top = (n / 2).min(w.len() - 1);
        let mut gamma = Real::one(p);
        let mut s = Real::zero(p);
        for l in 1..=top {
            s = s + &w[l] * &gamma * &b[n - l];
            if l < top {
                let (n, l) = (n as u128, l as u128);
                gamma = gamma * frac((n - 2 * l) * (n - 2 * l - 1), (n - l) * (n - l - 1), p);
            }
        }
        b[n] = s;
    }
    ScaledSequence::new(SeqKind::B, 2, p, b)
}

/// `h_0..=h_N` from `h_n = sum_s ((ln 2/(k-1))^s / s!) δ_{n,s} h_{n-s}`,
/// `h_1 = ln 2/(k-1)`.
pub fn scaled_h_recurrence(
    arity: usize,
    max: usize,
    p: Precision,
) -> Result<ScaledSequence, AsymptoticsError> {
    let k = arity as u64;
    let base = Real::ln2(p) / Real::from_u64(k - 1, p);
    let w = weights(&base, p);
    let mut h = vec![Real::zero(p); max + 1];
    if max >= 1 {
        h[1] = base.clone();
    }
    for n in 2..=max {
        let top = (super::coeffs::delta_max_s(k, n as u64) as usize).min(w.len() - 1);
        let mut s = Real::zero(p);
        for j in 1..=top {
            if h[n - j].is_zero() {
                continue;
            }
            let d = delta_coeff(k, n as u64, j as u64, p)?;
            s = s + &w[j] * d * &h[n - j];
        }
        h[n] = s;
    }
    Ok(ScaledSequence::new(SeqKind::H, arity, p, h))
}

/// Rescale an exact table in the log domain:
/// `ln b_n = ln B_n + n ln ln 2 - ln Γ(n)` for a binary table,
/// `ln h_n = ln H_n + n ln ln 2 - n ln(k-1) - ln Γ(n+1)` for an H-table.
pub fn scaled_from_exact(
    table: &CountTable,
    p: Precision,
) -> Result<ScaledSequence, AsymptoticsError> {
    if table.entries().is_empty() {
        return Err(AsymptoticsError::EmptyTable);
    }
    let lnln2 = Real::ln2(p).ln();
    let k = table.arity() as u64;
    let ln_km = Real::from_u64(k - 1, p).ln();
    let entries = table
        .entries()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            if c.is_zero() {
                return Real::zero(p);
            }
            let nn = Real::from_u64(n as u64, p);
            let ln_c = Real::from_biguint(c, p).ln();
            let lv = match table.kind() {
                TableKind::B => ln_c + &nn * &lnln2 - ln_gamma_int(n as u64, p),
                TableKind::H => ln_c + &nn * (&lnln2 - &ln_km) - ln_gamma_int(n as u64 + 1, p),
            };
            lv.exp()
        })
        .collect();
    let kind = match table.kind() {
        TableKind::B => SeqKind::B,
        TableKind::H => SeqKind::H,
    };
    Ok(ScaledSequence::new(kind, table.arity(), p, entries))
}

fn need_b(b: &ScaledSequence, max: usize) -> Result<(), AsymptoticsError> {
    if b.kind() != SeqKind::B {
        return Err(AsymptoticsError::WrongTable {
            expected: "b",
            got: b.kind().tag().into(),
        });
    }
    if b.max_index() < max {
        return Err(AsymptoticsError::InsufficientRange {
            need: max + 1,
            have: b.entries().len(),
        });
    }
    Ok(())
}

/// `(1 - l(l-1)/n)` as a real.
fn smooth_factor(n: usize, l: usize, p: Precision) -> Real {
    let (n, l) = (n as i64, l as i64);
    Real::from_i64(n - l * (l - 1), p) / Real::from_i64(n, p)
}

/// The correction `a_n` as the literal two-sum
/// `sum_{l <= n/2} w_l (γ_{n,l} - 1 + l(l-1)/n) b_{n-l} - sum_{n/2 < l <= n} w_l (1 - l(l-1)/n) b_{n-l}`.
///
/// Both sums vanish at `n = 2`, where the recurrence for `b_n` does not
/// apply; see [`correction_a`].
pub fn correction_a_two_sum(n: usize, b: &ScaledSequence) -> Result<Real, AsymptoticsError> {
    need_b(b, n)?;
    let p = b.precision();
    let w = weights(&Real::ln2(p), p);
    Ok(two_sum(n, b.entries(), &w, p))
}

fn two_sum(n: usize, b: &[Real], w: &[Real], p: Precision) -> Real {
    let mut s = Real::zero(p);
    let half = n / 2;
    let mut gamma = Real::one(p);
    for l in 1..=n.min(w.len() - 1) {
        if l <= half {
            let corr = &gamma - Real::one(p)
                + Real::from_u64((l * (l - 1)) as u64, p) / Real::from_u64(n as u64, p);
            s = s + &w[l] * corr * &b[n - l];
            if l < half {
                let (n, l) = (n as u128, l as u128);
                gamma = gamma * frac((n - 2 * l) * (n - 2 * l - 1), (n - l) * (n - l - 1), p);
            }
        } else {
            s = s - &w[l] * smooth_factor(n, l, p) * &b[n - l];
        }
    }
    s
}

/// `a_0..=a_N`: the two-sum for `n >= 3` and `a_2 = b_2`, so that
/// `b_n = a_n + sum_{l=1}^n w_l (1 - l(l-1)/n) b_{n-l}` holds for every `n`.
pub fn correction_a(max: usize, b: &ScaledSequence) -> Result<ScaledSequence, AsymptoticsError> {
    need_b(b, max)?;
    let p = b.precision();
    let w = weights(&Real::ln2(p), p);
    let mut a = vec![Real::zero(p); max + 1];
    for (n, slot) in a.iter_mut().enumerate().skip(2) {
        *slot = if n == 2 {
            b.entries()[2].clone()
        } else {
            two_sum(n, b.entries(), &w, p)
        };
    }
    Ok(ScaledSequence::new(SeqKind::A, 2, p, a))
}

/// `b_n - a_n - sum_{l=1}^n (α^{-l}/l!) (1 - l(l-1)/n) b_{n-l}`, summed over
/// every `l` without truncation.
pub fn an_identity_residual(
    n: usize,
    a: &ScaledSequence,
    b: &ScaledSequence,
) -> Result<Real, AsymptoticsError> {
    need_b(b, n)?;
    if a.max_index() < n {
        return Err(AsymptoticsError::InsufficientRange {
            need: n + 1,
            have: a.entries().len(),
        });
    }
    let p = b.precision();
    let ln2 = Real::ln2(p);
    let mut w = Real::one(p);
    let mut s = Real::zero(p);
    for l in 1..=n {
        w = w * &ln2 / Real::from_u64(l as u64, p);
        s = s + &w * smooth_factor(n, l, p) * &b.entries()[n - l];
    }
    Ok(&b.entries()[n] - &a.entries()[n] - s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::real::rel_diff;
    use crate::exact::{count_binary_upto, count_kary_upto};

    fn p30() -> Precision {
        Precision::default()
    }

    #[test]
    fn first_b_values() {
        let p = p30();
        let b = scaled_b_recurrence(10, p);
        let l = Real::ln2(p);
        assert!(b.get(0).unwrap().is_zero() && b.get(1).unwrap().is_zero());
        assert!(rel_diff(b.get(2).unwrap(), &l.powi(2)) < 1e-29);
        assert!(rel_diff(b.get(3).unwrap(), &l.powi(3)) < 1e-29);
        assert!((b.get(2).unwrap().to_f64() - 0.480453).abs() < 1e-6);
    }

    #[test]
    fn b_routes_agree() {
        let p = p30();
        let r = scaled_b_recurrence(500, p);
        let e = scaled_from_exact(&count_binary_upto(500), p).unwrap();
        for n in 2..=500 {
            let d = rel_diff(r.get(n).unwrap(), e.get(n).unwrap());
            assert!(d <= p.tolerance(), "n = {n}: {d:e}");
        }
    }

    #[test]
    fn h_first_values() {
        let p = p30();
        let h = scaled_h_recurrence(3, 10, p).unwrap();
        let l = Real::ln2(p);
        let half = Real::parse("0.5", p).unwrap();
        assert!(rel_diff(h.get(1).unwrap(), &(&l * &half)).abs() < 1e-29);
        let want = Real::from_u64(3, p) * l.powi(2) / Real::from_u64(8, p);
        assert!(rel_diff(h.get(2).unwrap(), &want) < 1e-29);
        let e = scaled_from_exact(&count_kary_upto(3, 10).unwrap(), p).unwrap();
        assert!(rel_diff(e.get(1).unwrap(), &(&l * &half)) < 1e-29);
        for n in 1..=10 {
            assert!(
                rel_diff(h.get(n).unwrap(), e.get(n).unwrap()) < 1e-28,
                "n = {n}"
            );
        }
    }

    #[test]
    fn h_routes_agree_for_larger_arity() {
        let p = p30();
        for k in [4usize, 13] {
            let h = scaled_h_recurrence(k, 150, p).unwrap();
            let e = scaled_from_exact(&count_kary_upto(k, 150).unwrap(), p).unwrap();
            for n in 1..=150 {
                let d = rel_diff(h.get(n).unwrap(), e.get(n).unwrap());
                assert!(d <= p.tolerance(), "k = {k}, n = {n}: {d:e}");
            }
        }
    }

    #[test]
    fn correction_small_values() {
        let p = p30();
        let b = scaled_b_recurrence(20, p);
        let l = Real::ln2(p);
        assert!(correction_a_two_sum(2, &b).unwrap().is_zero());
        let a = correction_a(20, &b).unwrap();
        assert!(rel_diff(a.get(2).unwrap(), &l.powi(2)) < 1e-29);
        let a4 = -(l.powi(4) / Real::from_u64(12, p));
        assert!(rel_diff(a.get(4).unwrap(), &a4) < 1e-28);
        assert!((a.get(4).unwrap().to_f64() + 0.01924).abs() < 1e-5);
        // b_3 = w_1 b_2 exactly, so the correction vanishes at 3
        assert!(a.get(3).unwrap().to_f64().abs() < 1e-30);
    }

    #[test]
    fn correction_decays_faster_than_square() {
        // measured maximum 3.234e-2 at n = 10
        const BOUND: f64 = 3.3e-2;
        let p = p30();
        let b = scaled_b_recurrence(1000, p);
        let a = correction_a(1000, &b).unwrap();
        for n in 10..=1000 {
            let v = a.get(n).unwrap().to_f64().abs() * (n * n) as f64;
            assert!(v <= BOUND, "n = {n}: {v:e}");
        }
    }

    #[test]
    fn identity_holds() {
        let p = p30();
        let b = scaled_b_recurrence(120, p);
        let a = correction_a(120, &b).unwrap();
        for n in 0..=120 {
            let r = an_identity_residual(n, &a, &b).unwrap();
            let scale = b.get(n).unwrap().to_f64().max(1e-300);
            assert!(
                r.to_f64().abs() <= p.tolerance() * scale.max(1.0) || n < 2,
                "n = {n}: {r:?}"
            );
        }
    }

    #[test]
    fn csv_export() {
        let b = scaled_b_recurrence(3, Precision::new(15).unwrap());
        assert_eq!(
            b.to_csv(),
            "n,value\n0,0\n1,0\n2,4.80453013918201e-1\n3,3.33024651988929e-1\n"
        );
    }

    #[test]
    fn wrong_inputs() {
        let p = p30();
        let b = scaled_b_recurrence(10, p);
        assert!(matches!(
            correction_a(11, &b),
            Err(AsymptoticsError::InsufficientRange { .. })
        ));
        let h = scaled_h_recurrence(3, 10, p).unwrap();
        assert!(matches!(
            correction_a(5, &h),
            Err(AsymptoticsError::WrongTable { .. })
        ));
    }
}
