//! Point estimates of the asymptotic constants with error bars.

use std::fmt;

use num_traits::Zero;

use super::real::{Precision, Real};
use super::richardson::richardson;
use super::{AsymptoticsError, ScaledSequence, SeqKind};
use crate::exact::CountTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimateKind {
    Alpha,
    Eta,
    EtaK,
    Exponent,
}

impl fmt::Display for EstimateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimateKind::Alpha => "alpha",
            EstimateKind::Eta => "eta",
            EstimateKind::EtaK => "eta_k",
            EstimateKind::Exponent => "exponent",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Ratio,
    Extrapolation,
    Integral,
    SlopeFit,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Ratio => "ratio",
            Method::Extrapolation => "extrapolation",
            Method::Integral => "integral",
            Method::SlopeFit => "slope-fit",
        })
    }
}

#[derive(Debug, Clone)]
pub struct AsymptoticEstimate {
    pub kind: EstimateKind,
    pub value: Real,
    /// Nonnegative error bar.
    pub error: f64,
    pub method: Method,
    /// Largest index used.
    pub n_used: usize,
    pub arity: usize,
    pub digits: u32,
    /// Set when the estimate rests on an interpretation of the integral
    /// representation rather than on the counts alone.
    pub interpreted: bool,
}

impl AsymptoticEstimate {
    /// `kind,value,error,method,N,k,D`.
    pub fn record(&self) -> String {
        format!(
            "{},{},{:.3e},{},{},{},{}",
            self.kind,
            self.value.to_sci(self.digits),
            self.error,
            self.method,
            self.n_used,
            self.arity,
            self.digits
        )
    }

    pub const RECORD_HEADER: &'static str = "kind,value,error,method,N,k,D";
}

fn require(have: usize, need: usize) -> Result<(), AsymptoticsError> {
    if have < need {
        return Err(AsymptoticsError::InsufficientRange { need, have });
    }
    Ok(())
}

/// Growth factor from `T_n / (n T_{n-1})` at the end of the table, with
/// two Richardson steps over `n = N, N/2, N/4` (error orders `1/n`, `1/n²`).
///
/// On a binary table the limit is `1/ln 2`; on an H-table it is `(k-1)/ln 2`.
pub fn estimate_alpha(
    table: &CountTable,
    p: Precision,
) -> Result<AsymptoticEstimate, AsymptoticsError> {
    let n_max = table.max_index();
    require(n_max, 100)?;
    let ratio = |n: usize| -> Result<Real, AsymptoticsError> {
        let (hi, lo) = (&table.entries()[n], &table.entries()[n - 1]);
        if hi.is_zero() || lo.is_zero() {
            return Err(AsymptoticsError::EmptyTable);
        }
        let r = Real::from_biguint(hi, p).ln()
            - Real::from_biguint(lo, p).ln()
            - Real::from_u64(n as u64, p).ln();
        Ok(r.exp())
    };
    let xs = [ratio(n_max)?, ratio(n_max / 2)?, ratio(n_max / 4)?];
    let (value, spread) = richardson(&xs, &[1, 2], p);
    Ok(AsymptoticEstimate {
        kind: EstimateKind::Alpha,
        value,
        error: spread,
        method: Method::Ratio,
        n_used: n_max,
        arity: table.arity(),
        digits: p.digits(),
        interpreted: false,
    })
}

/// `b_n n^{ln 2} / (1 + ln 2/(2n))`.
fn eta_hat(b: &ScaledSequence, n: usize) -> Real {
    let p = b.precision();
    let ln2 = Real::ln2(p);
    let nn = Real::from_u64(n as u64, p);
    let corr = Real::one(p) + &ln2 / (Real::from_u64(2, p) * &nn);
    b.entries()[n].clone() * nn.powf(&ln2) / corr
}

/// `η` from `b_n n^{ln 2} / (1 + ln 2/(2n))` at `n = N` and `N/2`, with one
/// Richardson step for an `n^{-2}` remainder. The error bar is the size of
/// that step.
pub fn estimate_eta_extrapolation(
    b: &ScaledSequence,
    n_max: usize,
) -> Result<AsymptoticEstimate, AsymptoticsError> {
    if b.kind() != SeqKind::B {
        return Err(AsymptoticsError::WrongTable {
            expected: "b",
            got: b.kind().tag().into(),
        });
    }
    require(n_max, 1000)?;
    require(b.max_index(), n_max)?;
    let p = b.precision();
    let xs = [eta_hat(b, n_max), eta_hat(b, n_max / 2)];
    let (value, spread) = richardson(&xs, &[2], p);
    Ok(AsymptoticEstimate {
        kind: EstimateKind::Eta,
        value,
        error: spread,
        method: Method::Extrapolation,
        n_used: n_max,
        arity: 2,
        digits: p.digits(),
        interpreted: false,
    })
}

/// `n² |b_n n^{ln 2} / η - 1 - ln 2/(2n)|`.
pub fn eta_residual(b: &ScaledSequence, eta: &Real, n: usize) -> f64 {
    let p = b.precision();
    let ln2 = Real::ln2(p);
    let nn = Real::from_u64(n as u64, p);
    let r = b.entries()[n].clone() * nn.powf(&ln2) / eta
        - Real::one(p)
        - &ln2 / (Real::from_u64(2, p) * &nn);
    (r.abs() * &nn * &nn).to_f64()
}

/// `(2 - k ln 2)/(2(k-1)) - 1`.
pub fn kary_exponent_target(arity: usize) -> f64 {
    let k = arity as f64;
    (2.0 - k * std::f64::consts::LN_2) / (2.0 * (k - 1.0)) - 1.0
}

fn require_h(h: &ScaledSequence, need: usize) -> Result<(), AsymptoticsError> {
    if h.kind() != SeqKind::H {
        return Err(AsymptoticsError::WrongTable {
            expected: "h",
            got: h.kind().tag().into(),
        });
    }
    require(h.max_index(), need)
}

/// Local slope `ln(h_{2n}/h_n)/ln 2` at `n = N/2, N/4, N/8`, extrapolated
/// with Richardson steps for `1/n` and `1/n²` remainders.
pub fn estimate_kary_exponent(h: &ScaledSequence) -> Result<AsymptoticEstimate, AsymptoticsError> {
    require_h(h, 2000)?;
    let p = h.precision();
    let n_max = h.max_index();
    let ln2 = Real::ln2(p);
    let slope = |n: usize| (h.entries()[2 * n].clone() / &h.entries()[n]).ln() / &ln2;
    let xs = [slope(n_max / 2), slope(n_max / 4), slope(n_max / 8)];
    let (value, spread) = richardson(&xs, &[1, 2], p);
    Ok(AsymptoticEstimate {
        kind: EstimateKind::Exponent,
        value,
        error: spread,
        method: Method::SlopeFit,
        n_used: 2 * (n_max / 2),
        arity: h.arity(),
        digits: p.digits(),
        interpreted: false,
    })
}

/// `η_k = lim h_n n^{-e}` with `e` the closed-form exponent, from
/// `n = N, N/2, N/4` and Richardson steps for `1/n` and `1/n²`.
pub fn estimate_eta_k(h: &ScaledSequence) -> Result<AsymptoticEstimate, AsymptoticsError> {
    require_h(h, 1000)?;
    let p = h.precision();
    let n_max = h.max_index();
    let e = Real::from_f64(kary_exponent_target(h.arity()), p);
    let at = |n: usize| h.entries()[n].clone() * Real::from_u64(n as u64, p).powf(&(-&e));
    let xs = [at(n_max), at(n_max / 2), at(n_max / 4)];
    let (value, spread) = richardson(&xs, &[1, 2], p);
    Ok(AsymptoticEstimate {
        kind: EstimateKind::EtaK,
        value,
        error: spread,
        method: Method::Extrapolation,
        n_used: n_max,
        arity: h.arity(),
        digits: p.digits(),
        interpreted: false,
    })
}
