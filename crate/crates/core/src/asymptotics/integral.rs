//! The integral route to `η`.
//!
//! The generating function `b(z) = sum b_n z^n` solves a first-order linear
//! ODE whose solution is
//!
//! `b(z) = g(z) ∫_0^z a'(t) / ((2 - 2^t) g(t)) dt`,
//! `g(z) = exp(-∫_0^z φ)`, `φ(t) = ln 2 (t ln 2 - 1) 2^t / (2 - 2^t)`.
//!
//! Near `z = 1`, `φ(t) = (ln 2 - 1)/(1 - t) + ψ(t)` with `ψ` smooth, so
//! `g(z) = (1 - z)^{ln 2 - 1} exp(-Ψ(z))` with `Ψ(z) = ∫_0^z ψ`, and
//! `g(z) (1 - z)^{1 - ln 2} → C = exp(-Ψ(1))`. Then
//! `b(z) ~ C I (1 - z)^{ln 2 - 1}` with `I = ∫_0^1 a'(t) / ((2 - 2^t) g(t)) dt`,
//! and transfer gives `b_n ~ η n^{-ln 2}` with `η = C I / Γ(1 - ln 2)`.
//!
//! The integrand of `I` behaves like `(1 - t)^{-ln 2}` at `t = 1`; the
//! substitution `1 - t = u^p`, `p = 1/(1 - ln 2)`, removes the singularity:
//! `I = ∫_0^1 p a'(t) [(1 - t)/(2 - 2^t)] exp(Ψ(t)) du`.
//!
//! The quantity multiplying `a'` inside `I` is read as `1/g`; that reading
//! is what the solution formula above gives, so estimates from this route
//! are flagged as interpreted.
//!
//! Everything here runs in double precision.

use std::f64::consts::{LN_2, PI};

use super::estimate::{AsymptoticEstimate, EstimateKind, Method};
use super::lngamma::ln_gamma;
use super::quadrature::{integrate, QuadError};
use super::real::{Precision, Real};
use super::{AsymptoticsError, ScaledSequence, SeqKind};

const P: f64 = 1.0 / (1.0 - LN_2);

fn psi(t: f64) -> f64 {
    let u = 1.0 - t;
    if u < 1e-6 {
        let c0 = -LN_2 - (LN_2 - 1.0) * LN_2 / 2.0;
        let c1 = (LN_2 - 1.0) * LN_2 * LN_2 / 12.0 + LN_2 * LN_2 / 2.0;
        return c0 + c1 * u;
    }
    let x = u * LN_2;
    let phi = LN_2 * (t * LN_2 - 1.0) * (-x).exp() / -(-x).exp_m1();
    phi - (LN_2 - 1.0) / u
}

/// `Ψ(t) = ∫_0^t ψ`.
fn psi_integral(t: f64) -> Result<f64, QuadError> {
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(integrate(psi, 0.0, t, 1e-15, 1e-15, 60)?.value)
}

/// `g(z)` for `0 <= z < 1`.
pub fn g(z: f64) -> Result<f64, QuadError> {
    Ok(((LN_2 - 1.0) * (-z).ln_1p() - psi_integral(z)?).exp())
}

/// `lim_{z → 1} g(z) (1 - z)^{1 - ln 2}` by quadrature.
pub fn prefactor_numeric() -> Result<f64, QuadError> {
    Ok((-psi_integral(1.0)?).exp())
}

/// `e^{π²/12} α^{1 - 1/α} / 2^{1 - 1/(2α)}` with `α = 1/ln 2`.
pub fn prefactor_closed_form() -> f64 {
    let alpha = 1.0 / LN_2;
    (PI * PI / 12.0).exp() * alpha.powf(1.0 - LN_2) / 2f64.powf(1.0 - LN_2 / 2.0)
}

/// `[(1 - t)/(2 - 2^t)] exp(Ψ(t))` at `t = 1 - v`.
fn kernel(v: f64) -> Result<f64, QuadError> {
    let ratio = if v == 0.0 {
        1.0 / (2.0 * LN_2)
    } else {
        v / (-2.0 * (-v * LN_2).exp_m1())
    };
    Ok(ratio * psi_integral(1.0 - v)?.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralConfig {
    /// Largest acceptable bound on the contribution of the dropped `a_n`.
    pub tail_tol: f64,
    /// Absolute tolerance for the outer quadrature.
    pub quad_tol: f64,
    /// Number of `a_n` terms tried first; doubled until the tail bound fits.
    pub start_terms: usize,
}

impl Default for IntegralConfig {
    fn default() -> Self {
        IntegralConfig {
            tail_tol: 1e-4,
            quad_tol: 1e-10,
            start_terms: 256,
        }
    }
}

/// Fit `|a_n| <= A n^{-q}` over `[n/4, n]`: `q` by least squares on the
/// log-log data, `A` the smallest constant covering every point.
fn envelope(a: &[f64], n: usize) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = (n / 4..=n)
        .filter(|&i| i >= 3 && a[i] != 0.0)
        .map(|i| ((i as f64).ln(), a[i].abs().ln()))
        .collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(u, v), p| {
        (u + (p.0 - mx) * (p.1 - my), v + (p.0 - mx).powi(2))
    });
    let q = -num / den;
    let amp = pts
        .iter()
        .map(|p| (p.1 + q * p.0).exp())
        .fold(0.0, f64::max);
    (amp, q)
}

/// Bound on `C Σ_{n>N} n |a_n| ∫_0^1 t^{n-1} K(t) (1-t)^{-ln 2} dt / Γ(1 - ln 2)`
/// from the envelope, using `B(n, s) <= Γ(s) (n+1)^{1-s} / n`.
fn tail_bound(c: f64, kmax: f64, amp: f64, q: f64, n: usize) -> f64 {
    let nf = n as f64;
    c * kmax * amp * (1.0 + 1.0 / nf).powf(LN_2) * nf.powf(1.0 + LN_2 - q) / (q - 1.0 - LN_2)
}

pub fn estimate_eta_integral(a: &ScaledSequence) -> Result<AsymptoticEstimate, AsymptoticsError> {
    estimate_eta_integral_with(a, &IntegralConfig::default())
}

pub fn estimate_eta_integral_with(
    a: &ScaledSequence,
    cfg: &IntegralConfig,
) -> Result<AsymptoticEstimate, AsymptoticsError> {
    if a.kind() != SeqKind::A {
        return Err(AsymptoticsError::WrongTable {
            expected: "a",
            got: a.kind().tag().into(),
        });
    }
    let total = a.max_index();
    if total < 64 {
        return Err(AsymptoticsError::InsufficientRange {
            need: 65,
            have: a.entries().len(),
        });
    }
    let af = a.to_f64();
    let c = prefactor_numeric()?;
    let mut kmax = kernel(0.0)?;
    for j in 1..=256 {
        kmax = kmax.max(kernel(j as f64 / 256.0)?);
    }
    kmax *= 1.05;

    let mut n = cfg.start_terms.min(total);
    let (amp, q, tail) = loop {
        let (amp, q) = envelope(&af, n);
        if q <= 1.0 + LN_2 {
            return Err(AsymptoticsError::SeriesDivergent(q));
        }
        let tail = tail_bound(c, kmax, amp, q, n);
        if tail <= cfg.tail_tol {
            break (amp, q, tail);
        }
        if n == total {
            return Err(AsymptoticsError::TruncationBudget {
                bound: tail,
                tol: cfg.tail_tol,
                terms: n,
            });
        }
        n = (2 * n).min(total);
    };
    log::debug!("integral route: {n} terms, envelope {amp:.3e} n^-{q:.3}, tail {tail:.2e}");

    let coeffs: Vec<f64> = (1..=n).map(|i| i as f64 * af[i]).collect();
    let a_prime = |t: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
    let mut failure = None;
    let quad = integrate(
        |u| {
            let v = u.powf(P);
            match kernel(v) {
                Ok(k) => P * a_prime(1.0 - v) * k,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        1.0,
        cfg.quad_tol,
        0.0,
        500,
    );
    if let Some(e) = failure {
        return Err(e.into());
    }
    let quad = quad?;
    let p = Precision::default();
    let gamma = ln_gamma(&(Real::one(p) - Real::ln2(p)), p).exp().to_f64();
    let eta = c * quad.value / gamma;
    Ok(AsymptoticEstimate {
        kind: EstimateKind::Eta,
        value: Real::from_f64(eta, a.precision()),
        error: tail + c * quad.error / gamma,
        method: Method::Integral,
        n_used: n,
        arity: 2,
        digits: a.precision().digits(),
        interpreted: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{correction_a, scaled_b_recurrence};

    #[test]
    fn g_at_zero() {
        assert_eq!(g(0.0).unwrap(), 1.0);
        assert!(g(0.5).unwrap() > 1.0);
    }

    #[test]
    fn psi_series_matches_direct_form() {
        let u: f64 = 1e-6;
        let x = u * LN_2;
        let t = 1.0 - u;
        let direct = LN_2 * (t * LN_2 - 1.0) * (-x).exp() / -(-x).exp_m1() - (LN_2 - 1.0) / u;
        assert!((psi(1.0 - 0.999e-6) - direct).abs() < 1e-8);
        let u = 1e-3;
        let c0 = -LN_2 - (LN_2 - 1.0) * LN_2 / 2.0;
        assert!((psi(1.0 - u) - c0).abs() < 1e-3);
    }

    #[test]
    fn prefactor_matches_closed_form() {
        let c = prefactor_numeric().unwrap();
        assert!((c - prefactor_closed_form()).abs() < 1e-12, "{c}");
        assert!((c - 1.619329).abs() < 1e-6);
        // approach through g itself
        for z in [1.0 - 1e-4, 1.0 - 1e-7] {
            let approx = g(z).unwrap() * (1.0 - z).powf(1.0 - LN_2);
            assert!((approx - c).abs() < 10.0 * (1.0 - z), "{z}: {approx}");
        }
    }

    #[test]
    fn envelope_of_power_law() {
        let a: Vec<f64> = (0..=400)
            .map(|i| {
                if i < 3 {
                    0.0
                } else {
                    -0.5 * (i as f64).powf(-2.7)
                }
            })
            .collect();
        let (amp, q) = envelope(&a, 400);
        assert!((q - 2.7).abs() < 1e-9);
        assert!((amp - 0.5).abs() < 1e-9);
    }

    #[test]
    fn eta_from_short_series() {
        let p = Precision::default();
        let b = scaled_b_recurrence(1000, p);
        let a = correction_a(1000, &b).unwrap();
        let cfg = IntegralConfig {
            tail_tol: 1e-3,
            ..IntegralConfig::default()
        };
        let e = estimate_eta_integral_with(&a, &cfg).unwrap();
        assert!(e.interpreted);
        assert!((e.value.to_f64() - 0.6478).abs() < 2e-3, "{e:?}");
        assert!(e.error > 0.0);
    }
}
