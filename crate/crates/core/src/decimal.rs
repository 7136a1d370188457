//! Fixed-point decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::Rational;

/// Digits after the point used by the CLI.
pub const DECIMAL_DIGITS: usize = 12;

/// Renders `x` with exactly `digits` fractional digits, rounding half to even.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = x.numer().abs() * &scale;
    let den = x.denom();
    let (mut q, r) = scaled.div_rem(den);
    let twice = &r * 2;
    if twice > *den || (twice == *den && q.is_odd()) {
        q += 1;
    }
    let negative = x.is_negative() && !q.is_zero();
    let (int, frac) = q.div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac.to_string(), width = digits));
    }
    out
}

/// `p/q` followed by the 12-digit decimal, e.g. `3/8 0.375000000000`.
pub fn exact_and_decimal(x: &Rational) -> String {
    format!("{} {}", x, to_decimal(x, DECIMAL_DIGITS))
}
