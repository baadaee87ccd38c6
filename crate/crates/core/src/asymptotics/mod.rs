//! Scaled sequences and numerical estimates of the asymptotic constants.
//!
//! With `α = 1/ln 2`, the binary counts are rescaled to
//! `b_n = B_n (ln 2)^n / (n-1)!` and the k-ary counts to
//! `h_n = H_n (ln 2)^n / ((k-1)^n n!)`. Both decay polynomially, like
//! `n^{-ln 2}` and `n^{(2 - k ln 2)/(2(k-1)) - 1}` respectively.
//!
//! `b_n` is computed either from its own recurrence with nonnegative terms
//! or from an exact count table in the log domain; the two must agree to the
//! working precision.

mod coeffs;
mod estimate;
mod integral;
mod lngamma;
mod quadrature;
mod real;
mod richardson;
mod sequences;

use std::fmt::Write;

use thiserror::Error;

pub use coeffs::{
    delta_coeff, delta_coeff_exact, delta_max_s, delta_one_closed_form, delta_upper_bound,
    gamma_coeff, gamma_coeff_exact, gamma_lower_bound, gamma_lower_bound_shifted,
    gamma_upper_bound, CoeffError,
};
pub use estimate::{
    estimate_alpha, estimate_eta_extrapolation, estimate_eta_k, estimate_kary_exponent,
    eta_residual, kary_exponent_target, AsymptoticEstimate, EstimateKind, Method,
};
pub use integral::{
    estimate_eta_integral, estimate_eta_integral_with, g, prefactor_closed_form, prefactor_numeric,
    IntegralConfig,
};
pub use lngamma::{bernoulli_numbers, ln_gamma, ln_gamma_int, STIRLING_TERMS};
pub use quadrature::{integrate, QuadError, Quadrature};
pub use real::{rel_diff, Precision, PrecisionError, Real};
pub use richardson::richardson;
pub use sequences::{
    an_identity_residual, correction_a, correction_a_two_sum, scaled_b_recurrence,
    scaled_from_exact, scaled_h_recurrence,
};

/// `α = 1/ln 2`, the exponential growth rate of `B_n / n!`.
pub const ALPHA: f64 = std::f64::consts::LOG2_E;

/// `α` at the given precision.
pub fn alpha(p: Precision) -> Real {
    Real::ln2(p).recip()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("need at least {need} terms, have {have}")]
    InsufficientRange { need: usize, have: usize },
    #[error("count table has no usable entries")]
    EmptyTable,
    #[error("expected a {expected} table, got {got}")]
    WrongTable { expected: &'static str, got: String },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("correction series decays too slowly (fitted exponent {0:.3})")]
    SeriesDivergent(f64),
    #[error("series tail bound {bound:.2e} above tolerance {tol:.2e} with all {terms} terms")]
    TruncationBudget { bound: f64, tol: f64, terms: usize },
}

/// Which sequence a [`ScaledSequence`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqKind {
    /// Binary `b_n`.
    B,
    /// k-ary `h_n`.
    H,
    /// Correction `a_n`.
    A,
}

impl SeqKind {
    pub fn tag(self) -> &'static str {
        match self {
            SeqKind::B => "b",
            SeqKind::H => "h",
            SeqKind::A => "a",
        }
    }
}

/// Extended-precision sequence indexed from 0.
#[derive(Debug, Clone)]
pub struct ScaledSequence {
    kind: SeqKind,
    arity: usize,
    precision: Precision,
    entries: Vec<Real>,
}

impl ScaledSequence {
    pub fn new(kind: SeqKind, arity: usize, precision: Precision, entries: Vec<Real>) -> Self {
        ScaledSequence {
            kind,
            arity,
            precision,
            entries,
        }
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn entries(&self) -> &[Real] {
        &self.entries
    }

    pub fn get(&self, n: usize) -> Option<&Real> {
        self.entries.get(n)
    }

    /// Index of the last entry.
    pub fn max_index(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    /// Values as doubles.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(Real::to_f64).collect()
    }

    /// CSV with header `n,value`, values at full working precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (n, v) in self.entries.iter().enumerate() {
            writeln!(out, "{n},{}", v.to_sci(self.precision.digits())).unwrap();
        }
        out
    }
}
