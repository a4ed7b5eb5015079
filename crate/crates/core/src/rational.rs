//! Exact rational helpers.
//!
//! Every support value, score and quota in the crate is a [`Rational`]; the
//! helpers here convert from counts and render values for reports.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// Lifts an integer count into a rational.
pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` in lowest terms. Panics if `den` is zero.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Renders `p/q`, or just `p` for integers.
pub fn to_fraction(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a decimal with exactly `places` digits after the point, rounding
/// half away from zero. No thousands separators.
pub fn to_decimal(r: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (whole, rem) = scaled.numer().div_rem(scaled.denom());
    let doubled: BigInt = rem * 2;
    let rounded = if &doubled >= scaled.denom() {
        whole + 1
    } else {
        whole
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
    }
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Lossy conversion for display-only purposes.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `1 + 1/2 + ... + 1/p`.
pub fn harmonic(p: usize) -> Rational {
    (1..=p).fold(Rational::zero(), |acc, j| acc + ratio(1, j as i64))
}
