//! Arbitrary-precision numerics over MPFR floats.
//!
//! Precision is tracked in bits on every value. Public entry points take a
//! target in decimal digits and internally work at
//! `p + ceil(0.1 p) + 10` digits (see [`working_digits`]).

pub mod complex;
pub mod gamma;
pub mod series;

pub use complex::BigComplex;
pub use gamma::{gamma_rational, GammaProduct};
pub use series::{eval_asymptotic, eval_convergent, TruncationReport};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Real numbers are plain MPFR floats.
pub type BigReal = Float;

/// Precision in bits.
pub type Prec = u32;

pub fn bits_for_digits(digits: u32) -> Prec {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 4
}

/// Guard-digit policy: p + ceil(0.1 p) + 10.
pub fn working_digits(p: u32) -> u32 {
    p + p.div_ceil(10) + 10
}

pub fn working_bits(p: u32) -> Prec {
    bits_for_digits(working_digits(p))
}

pub fn pi(prec: Prec) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn euler_gamma(prec: Prec) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// Riemann zeta at an integer k >= 2.
pub fn zeta(k: u32, prec: Prec) -> Float {
    Float::with_val(prec, Float::zeta_u(k))
}

/// 10^{-e} at the given precision.
pub fn ten_pow_neg(e: u32, prec: Prec) -> Float {
    let t = Float::with_val(prec, 10);
    Float::with_val(prec, t.pow(-(e as i32)))
}

/// Scientific-notation decimal string with `digits` significant digits.
pub fn fmt_real(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    // rug reads the precision as the number of significant digits.
    format!("{:.*e}", digits.max(1), x)
}

/// Approximate base-10 logarithm of |x| (for tolerance bookkeeping).
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log10() + f64::from(e) * std::f64::consts::LOG10_2
}
