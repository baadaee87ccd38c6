//! Extended-precision reals on top of `astro_float::BigFloat`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigUint;
use thiserror::Error;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("working precision must be at least 15 digits, got {0}")]
pub struct PrecisionError(pub u32);

/// Working precision in decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { digits: 30 }
    }
}

impl Precision {
    pub const MIN_DIGITS: u32 = 15;

    pub fn new(digits: u32) -> Result<Self, PrecisionError> {
        if digits < Self::MIN_DIGITS {
            return Err(PrecisionError(digits));
        }
        Ok(Precision { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Mantissa bits: `ceil(D log2 10)` rounded up to whole 64-bit words.
    pub fn bits(self) -> usize {
        let raw = (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize;
        raw.div_ceil(64) * 64
    }

    /// Relative comparison tolerance `10^-(D-10)`.
    pub fn tolerance(self) -> f64 {
        10f64.powi(-(self.digits as i32 - 10))
    }
}

/// A real number carried at a fixed binary precision.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    fn wrap(v: BigFloat, p: usize) -> Real {
        Real { v, p }
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    pub fn zero(p: Precision) -> Real {
        Real::from_u64(0, p)
    }

    pub fn one(p: Precision) -> Real {
        Real::from_u64(1, p)
    }

    pub fn from_u64(x: u64, p: Precision) -> Real {
        Real::wrap(BigFloat::from_u64(x, p.bits()), p.bits())
    }

    pub fn from_i64(x: i64, p: Precision) -> Real {
        Real::wrap(BigFloat::from_i64(x, p.bits()), p.bits())
    }

    /// Exact conversion of a double.
    pub fn from_f64(x: f64, p: Precision) -> Real {
        Real::wrap(BigFloat::from_f64(x, p.bits()), p.bits())
    }

    /// Rounded conversion of a big integer.
    pub fn from_biguint(x: &BigUint, p: Precision) -> Real {
        let bits = p.bits();
        let digits = x.to_u64_digits();
        // keep one extra word below the rounding position
        let keep = bits.div_ceil(64) + 1;
        let skip = digits.len().saturating_sub(keep);
        let radix = BigFloat::from_u64(1, bits + 64);
        let mut radix = radix;
        radix.set_exponent(65);
        let mut acc = BigFloat::from_u64(0, bits);
        for d in digits[skip..].iter().rev() {
            acc = acc
                .mul(&radix, bits, RM)
                .add(&BigFloat::from_u64(*d, bits), bits, RM);
        }
        if skip > 0 {
            if let Some(e) = acc.exponent() {
                acc.set_exponent(e + 64 * skip as i32);
            }
        }
        Real::wrap(acc, bits)
    }

    /// Parse a decimal literal such as `0.647852` or `1.5e-3`.
    pub fn parse(s: &str, p: Precision) -> Option<Real> {
        let v = with_consts(|cc| BigFloat::parse(s, Radix::Dec, p.bits(), RM, cc));
        (!v.is_nan()).then(|| Real::wrap(v, p.bits()))
    }

    pub fn ln2(p: Precision) -> Real {
        Real::wrap(with_consts(|cc| cc.ln_2(p.bits(), RM)), p.bits())
    }

    pub fn pi(p: Precision) -> Real {
        Real::wrap(with_consts(|cc| cc.pi(p.bits(), RM)), p.bits())
    }

    pub fn ln(&self) -> Real {
        Real::wrap(with_consts(|cc| self.v.ln(self.p, RM, cc)), self.p)
    }

    pub fn exp(&self) -> Real {
        Real::wrap(with_consts(|cc| self.v.exp(self.p, RM, cc)), self.p)
    }

    pub fn sqrt(&self) -> Real {
        Real::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn powi(&self, n: usize) -> Real {
        Real::wrap(self.v.powi(n, self.p, RM), self.p)
    }

    /// `self^y` for positive `self`.
    pub fn powf(&self, y: &Real) -> Real {
        (&self.ln() * y).exp()
    }

    pub fn recip(&self) -> Real {
        Real::wrap(self.v.reciprocal(self.p, RM), self.p)
    }

    pub fn abs(&self) -> Real {
        Real::wrap(self.v.abs(), self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    /// Nearest double (truncating the mantissa to 64 bits first).
    pub fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf() {
            return if self.v.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        if self.v.is_zero() {
            return 0.0;
        }
        let (m, _, sign, e, _) = self.v.as_raw_parts().expect("finite value");
        let top = *m.last().expect("nonempty mantissa") as f64 / 2f64.powi(64);
        // split the scaling so neither factor leaves the double range early
        let mag = top * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// `digits` significant decimal digits, scientific notation, rounded
    /// half away from zero: `-6.93147e-1`, `0`.
    pub fn to_sci(&self, digits: u32) -> String {
        if self.v.is_zero() {
            return "0".to_string();
        }
        let raw = with_consts(|cc| self.v.format(Radix::Dec, RM, cc)).expect("formattable");
        round_sci(&raw, digits.max(1) as usize)
    }

    /// Fixed-point rendering with `decimals` digits after the point.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let x = self.to_sci(40.max(decimals as u32 + 20));
        sci_to_fixed(&x, decimals)
    }
}

fn round_sci(raw: &str, digits: usize) -> String {
    let (neg, body) = match raw.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, raw),
    };
    let (mant, exp) = body.split_once('e').unwrap_or((body, "0"));
    let mut exp: i64 = exp.trim_start_matches('+').parse().expect("exponent");
    let mut ds: Vec<u8> = mant
        .bytes()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
        .collect();
    // mantissa is d.ddd, leading digit nonzero
    while ds.len() <= digits {
        ds.push(0);
    }
    let round_up = ds[digits] >= 5;
    ds.truncate(digits);
    if round_up {
        let mut i = digits;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                ds.truncate(digits);
                exp += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push((b'0' + ds[0]) as char);
    if digits > 1 {
        s.push('.');
        s.extend(ds[1..].iter().map(|d| (b'0' + d) as char));
    }
    s.push('e');
    s.push_str(&exp.to_string());
    s
}

fn sci_to_fixed(sci: &str, decimals: usize) -> String {
    let (neg, body) = match sci.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, sci),
    };
    if body == "0" {
        return format!("{:.*}", decimals, 0.0);
    }
    let (mant, exp) = body.split_once('e').expect("scientific form");
    let exp: i64 = exp.parse().expect("exponent");
    let ds: Vec<u8> = mant
        .bytes()
        .filter(u8::is_ascii_digit)
        .map(|b| b - b'0')
        .collect();
    // digit i has weight 10^(exp - i)
    let lo = -(decimals as i64);
    let hi = exp.max(0);
    let digit_at = |w: i64| -> u8 {
        let i = exp - w;
        if i >= 0 && (i as usize) < ds.len() {
            ds[i as usize]
        } else {
            0
        }
    };
    let mut out: Vec<u8> = (lo..=hi).rev().map(digit_at).collect();
    if digit_at(lo - 1) >= 5 {
        let mut i = out.len();
        loop {
            if i == 0 {
                out.insert(0, 1);
                break;
            }
            i -= 1;
            if out[i] == 9 {
                out[i] = 0;
            } else {
                out[i] += 1;
                break;
            }
        }
    }
    let int_len = out.len() - decimals;
    let mut int: String = out[..int_len].iter().map(|d| (b'0' + d) as char).collect();
    let trimmed = int.trim_start_matches('0');
    int = if trimmed.is_empty() {
        "0".into()
    } else {
        trimmed.into()
    };
    let frac: String = out[int_len..].iter().map(|d| (b'0' + d) as char).collect();
    let all_zero = out.iter().all(|&d| d == 0);
    let sign = if neg && !all_zero { "-" } else { "" };
    if decimals == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.p as f64 / std::f64::consts::LOG2_10).floor() as u32;
        f.write_str(&self.to_sci(digits))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.p.max(rhs.p);
                Real::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.neg(), self.p)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.p)
    }
}

impl std::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(mut iter: I) -> Real {
        let first = iter.next().expect("sum of an empty sequence");
        iter.fold(first, |a, b| a + b)
    }
}

/// `|x - y| / |y|`, or `|x|` when `y` is zero.
pub fn rel_diff(x: &Real, y: &Real) -> f64 {
    let d = (x - y).abs();
    if y.is_zero() {
        d.to_f64()
    } else {
        (d / y.abs()).to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p30() -> Precision {
        Precision::default()
    }

    #[test]
    fn precision_bounds() {
        assert!(Precision::new(14).is_err());
        let p = Precision::new(15).unwrap();
        assert_eq!(p.bits(), 64);
        assert_eq!(Precision::default().bits(), 128);
        assert_eq!(Precision::new(40).unwrap().bits(), 192);
        assert!((Precision::default().tolerance() - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn ln2_digits() {
        let l = Real::ln2(p30());
        assert_eq!(l.to_sci(30), "6.93147180559945309417232121458e-1");
        assert_eq!(l.to_f64(), std::f64::consts::LN_2);
    }

    #[test]
    fn arithmetic() {
        let p = p30();
        let a = Real::from_u64(3, p);
        let b = Real::from_u64(4, p);
        assert_eq!((&a * &a + &b * &b).sqrt().to_f64(), 5.0);
        assert_eq!((&a / &b).to_f64(), 0.75);
        assert_eq!((-(&a - &b)).to_f64(), 1.0);
        assert!(a < b);
        assert_eq!(Real::from_i64(-7, p).to_f64(), -7.0);
        assert_eq!(Real::from_f64(1.5e-300, p).to_f64(), 1.5e-300);
    }

    #[test]
    fn big_integers() {
        let p = p30();
        let x = BigUint::from(10u32).pow(200) + BigUint::from(7u32);
        let r = Real::from_biguint(&x, p);
        assert_eq!(r.to_sci(25), "1.000000000000000000000000e200");
        let y = BigUint::from(123456789u64);
        assert_eq!(Real::from_biguint(&y, p).to_f64(), 123456789.0);
        let z = (BigUint::from(1u32) << 300u32) * BigUint::from(3u32);
        let lz = Real::from_biguint(&z, p).ln();
        let want = Real::from_u64(3, p).ln() + Real::ln2(p) * Real::from_u64(300, p);
        assert!(rel_diff(&lz, &want) < 1e-28);
    }

    #[test]
    fn rendering() {
        let p = p30();
        assert_eq!(Real::zero(p).to_sci(5), "0");
        assert_eq!(Real::parse("9.99996", p).unwrap().to_sci(5), "1.0000e1");
        assert_eq!(Real::parse("-0.00123456", p).unwrap().to_sci(3), "-1.23e-3");
        assert_eq!(Real::parse("0.647852", p).unwrap().to_fixed(4), "0.6479");
        assert_eq!(Real::parse("-12.5", p).unwrap().to_fixed(0), "-13");
        assert_eq!(Real::parse("999.96", p).unwrap().to_fixed(1), "1000.0");
        assert_eq!(Real::parse("1e-9", p).unwrap().to_fixed(3), "0.000");
        assert!(Real::parse("abc", p).is_none());
    }

    #[test]
    fn transcendental() {
        let p = p30();
        let e = Real::one(p).exp();
        assert_eq!(e.to_sci(20), "2.7182818284590452354e0");
        let two = Real::from_u64(2, p);
        let half = Real::parse("0.5", p).unwrap();
        assert!(rel_diff(&two.powf(&half), &two.sqrt()) < 1e-29);
        assert!(
            rel_diff(
                &Real::pi(p),
                &Real::parse("3.14159265358979323846264338328", p).unwrap()
            ) < 1e-29
        );
    }
}
