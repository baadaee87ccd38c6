//! Globally adaptive Gauss-Kronrod (7/15) quadrature in double precision.
//!
//! The interval with the largest error estimate is bisected until the total
//! estimate meets the tolerance. No abscissa coincides with an endpoint.
//! The final sum runs over subintervals in left-to-right order.

#![allow(clippy::excessive_precision)]

use std::collections::BinaryHeap;

use thiserror::Error;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: error estimate {estimate:.2e} after {subdivisions} subdivisions")]
    NoConvergence { estimate: f64, subdivisions: usize },
    #[error("integrand is not finite at {0}")]
    NonFinite(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error
            .total_cmp(&other.error)
            .then(other.a.total_cmp(&self.a))
    }
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Result<(f64, f64), QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if !fc.is_finite() {
        return Err(QuadError::NonFinite(c));
    }
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let (x1, x2) = (c - dx, c + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(QuadError::NonFinite(x1));
        }
        if !f2.is_finite() {
            return Err(QuadError::NonFinite(x2));
        }
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok((kron * h, ((kron - gauss) * h).abs()))
}

/// `∫_a^b f` to within `max(abs_tol, rel_tol |value|)`.
pub fn integrate(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<Quadrature, QuadError> {
    let mut heap = BinaryHeap::new();
    let (v, e) = gk15(&mut f, a, b)?;
    heap.push(Piece {
        a,
        b,
        value: v,
        error: e,
    });
    let mut evaluations = 15;
    let mut subdivisions = 0;
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if error <= abs_tol.max(rel_tol * value.abs()) {
            break;
        }
        if subdivisions >= max_subdivisions {
            return Err(QuadError::NoConvergence {
                estimate: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer splits in double precision
            heap.push(worst);
            return Err(QuadError::NoConvergence {
                estimate: error,
                subdivisions,
            });
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (v, e) = gk15(&mut f, lo, hi)?;
            heap.push(Piece {
                a: lo,
                b: hi,
                value: v,
                error: e,
            });
        }
        evaluations += 30;
        subdivisions += 1;
    }
    let mut pieces = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = pieces.iter().map(|p| p.value).sum();
    let error = pieces.iter().map(|p| p.error).sum();
    Ok(Quadrature {
        value,
        error,
        evaluations,
    })
}
