//! CSV data behind the two plots: `b_n` against `1/sqrt(n)` and `1/n`, and
//! `h_n` for `k = 3, 13, 49` against their fitted power laws.

use std::fmt::Write as _;
use std::thread;

use anyhow::{Context, Result};
use wit_core::asymptotics::{
    estimate_eta_k, kary_exponent_target, scaled_b_recurrence, scaled_h_recurrence, Precision,
    Real, ScaledSequence,
};

pub const FIG2_RANGE: (usize, usize) = (25, 1000);
pub const FIG3_RANGE: (usize, usize) = (1, 1000);
pub const FIG3_ARITIES: [usize; 3] = [3, 13, 49];
/// Length of the `h` tables used to fit `η_k`.
pub const FIG3_FIT_N: usize = 4000;

pub fn fig2(p: Precision) -> String {
    let (lo, hi) = FIG2_RANGE;
    let b = scaled_b_recurrence(hi, p);
    let d = p.digits();
    let mut out = String::from("n,b_n,inv_sqrt_n,inv_n\n");
    for n in lo..=hi {
        let nn = Real::from_u64(n as u64, p);
        writeln!(
            out,
            "{n},{},{},{}",
            b.entries()[n].to_sci(d),
            nn.sqrt().recip().to_sci(d),
            nn.recip().to_sci(d)
        )
        .expect("write to string");
    }
    out
}

pub fn fig3(p: Precision) -> Result<String> {
    let tables: Vec<(ScaledSequence, Real)> = thread::scope(|s| {
        let jobs: Vec<_> = FIG3_ARITIES
            .iter()
            .map(|&k| {
                s.spawn(move || -> Result<(ScaledSequence, Real)> {
                    log::info!("building h_n for k = {k} up to {FIG3_FIT_N}");
                    let h = scaled_h_recurrence(k, FIG3_FIT_N, p)?;
                    let eta = estimate_eta_k(&h)?.value;
                    Ok((h, eta))
                })
            })
            .collect();
        jobs.into_iter()
            .map(|j| j.join().expect("table thread panicked"))
            .collect::<Result<Vec<_>>>()
    })
    .context("building h tables")?;
    let d = p.digits();
    let mut out =
        String::from("n,h_n_k3,h_n_k13,h_n_k49,asymptote_k3,asymptote_k13,asymptote_k49\n");
    let (lo, hi) = FIG3_RANGE;
    for n in lo..=hi {
        let nn = Real::from_u64(n as u64, p);
        let h: Vec<String> = tables
            .iter()
            .map(|(h, _)| h.entries()[n].to_sci(d))
            .collect();
        let fit: Vec<String> = FIG3_ARITIES
            .iter()
            .zip(&tables)
            .map(|(&k, (_, eta))| {
                let e = Real::from_f64(kary_exponent_target(k), p);
                (eta * nn.powf(&e)).to_sci(d)
            })
            .collect();
        writeln!(out, "{n},{},{}", h.join(","), fit.join(",")).expect("write to string");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(csv: &str) -> Vec<Vec<f64>> {
        csv.lines()
            .skip(1)
            .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
            .collect()
    }

    #[test]
    fn fig2_shape_and_ordering() {
        let csv = fig2(Precision::new(20).unwrap());
        assert!(csv.starts_with("n,b_n,inv_sqrt_n,inv_n\n25,"));
        let r = rows(&csv);
        assert_eq!(r.len(), 976);
        for row in &r {
            assert!(row[3] < row[1] && row[1] < row[2], "{row:?}");
        }
        let last = r.last().unwrap();
        assert_eq!(last[0], 1000.0);
        assert!((last[2] - 0.0316227766).abs() < 1e-10);
        assert!(
            csv.lines()
                .last()
                .unwrap()
                .ends_with(",3.1622776601683793320e-2,1.0000000000000000000e-3"),
            "{}",
            csv.lines().last().unwrap()
        );
    }

    #[test]
    fn fig3_below_bound() {
        let csv = fig3(Precision::new(20).unwrap()).unwrap();
        let r = rows(&csv);
        assert_eq!(r.len(), 1000);
        for row in &r {
            let bound = row[0].powf(-std::f64::consts::LN_2);
            for h in &row[1..4] {
                assert!(*h >= 0.0 && *h <= bound, "{row:?}");
            }
        }
        // the fitted curves track h_n at the top of the range
        let last = r.last().unwrap();
        for i in 1..4 {
            assert!((last[i] / last[i + 3] - 1.0).abs() < 1e-2, "{last:?}");
        }
    }
}
