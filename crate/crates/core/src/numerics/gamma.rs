//! Gamma function at rational arguments.
//!
//! Γ(q) = exp(lnΓ(q+N)) / (q(q+1)···(q+N-1)) with q+N large enough that the
//! Stirling series reaches the working precision before its terms start to
//! grow. The shift product is formed exactly in Q.

use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::{bits_for_digits, pi, working_bits, Prec};
use crate::error::{Error, Result};
use crate::exact::rational::{bernoulli, fmt_rational};

fn bernoulli_cache(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let lock = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut b = lock.lock().unwrap();
    if b.len() <= n {
        *b = bernoulli(n.max(2 * b.len()).max(64));
    }
    b[..=n].to_vec()
}

/// lnΓ(x) for real x >= 1 by the Stirling series; caller guarantees x is
/// large relative to the precision.
fn ln_gamma_stirling(x: &Float, prec: Prec) -> Result<Float> {
    let half = Float::with_val(prec, 0.5);
    let lnx = Float::with_val(prec, x.ln_ref());
    let mut acc = Float::with_val(prec, x - &half) * &lnx - x;
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    acc += Float::with_val(prec, two_pi.ln_ref()) * &half;
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 8));
    let x2 = Float::with_val(prec, x.square_ref());
    let mut xpow = Float::with_val(prec, x);
    let mut k = 1usize;
    let mut last = Float::with_val(prec, f64::INFINITY);
    loop {
        let b = bernoulli_cache(2 * k);
        let coef = &b[2 * k] / Rational::from((2 * k) * (2 * k - 1));
        let term = Float::with_val(prec, &coef) / &xpow;
        let mag = Float::with_val(prec, term.abs_ref());
        if mag > last {
            return Err(Error::NonConvergence("Stirling series diverged before precision".into()));
        }
        acc += &term;
        if mag < eps {
            return Ok(acc);
        }
        last = mag;
        xpow *= &x2;
        k += 1;
    }
}

/// Γ(q) at `bits` of precision (no guard policy; see [`gamma_rational`]).
pub fn gamma_rational_bits(q: &Rational, bits: Prec) -> Result<Float> {
    if *q.denom() == 1 && *q <= 0 {
        return Err(Error::GammaPole(fmt_rational(q)));
    }
    if *q.denom() == 1 {
        let n = q.numer().to_u32().ok_or_else(|| Error::GammaPole("argument too large".into()))?;
        let f = Integer::from(Integer::factorial(n - 1));
        return Ok(Float::with_val(bits, f));
    }
    // With x >= 0.3·bits the Stirling terms reach 2^-bits after about
    // bits/9 terms, far before the minimal term near k = πx.
    let target = (f64::from(bits) * 0.3).ceil() + 10.0;
    let qf = q.to_f64();
    let n_shift = if qf < target { (target - qf).ceil() as u64 } else { 0 };
    let mut prod = Rational::from(1);
    for j in 0..n_shift {
        prod *= q + Rational::from(j);
    }
    let x = q + Rational::from(n_shift);
    let xf_approx = x.to_f64();
    let extra = (xf_approx * xf_approx.ln()).abs().log2().max(0.0).ceil() as u32 + 16;
    let wp = bits + extra;
    let xf = Float::with_val(wp, &x);
    let lg = ln_gamma_stirling(&xf, wp)?;
    let g = Float::with_val(wp, lg.exp_ref()) / Float::with_val(wp, &prod);
    Ok(Float::with_val(bits, g))
}

/// Γ(q) to `p` decimal digits, computed at the guarded working precision.
pub fn gamma_rational(q: &Rational, p: u32) -> Result<Float> {
    let g = gamma_rational_bits(q, working_bits(p))?;
    Ok(Float::with_val(bits_for_digits(p), g))
}

/// Symbolic constant `factor · Π Γ(q_i)^{e_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaProduct {
    pub factor: Rational,
    pub gammas: Vec<(Rational, i32)>,
}

impl GammaProduct {
    pub fn new(factor: Rational, gammas: Vec<(Rational, i32)>) -> Self {
        GammaProduct { factor, gammas }
    }

    pub fn eval_bits(&self, bits: Prec) -> Result<Float> {
        let mut acc = Float::with_val(bits, &self.factor);
        for (q, e) in &self.gammas {
            let g = gamma_rational_bits(q, bits + 16)?;
            let ge = Float::with_val(bits + 16, g.pow(*e));
            acc *= ge;
        }
        Ok(acc)
    }

    pub fn eval(&self, p: u32) -> Result<Float> {
        let v = self.eval_bits(working_bits(p))?;
        Ok(Float::with_val(bits_for_digits(p), v))
    }
}

impl std::fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", fmt_rational(&self.factor))?;
        for (q, e) in &self.gammas {
            write!(f, "*Gamma({})", fmt_rational(q))?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn integers_and_poles() {
        assert_eq!(gamma_rational(&q(1, 1), 30).unwrap(), 1);
        assert_eq!(gamma_rational(&q(6, 1), 30).unwrap(), 120);
        assert!(gamma_rational(&q(0, 1), 30).is_err());
        assert!(gamma_rational(&q(-3, 1), 30).is_err());
    }

    #[test]
    fn half_is_sqrt_pi() {
        let p = 80;
        let g = gamma_rational(&q(1, 2), p).unwrap();
        let s = Float::with_val(400, pi(400).sqrt_ref());
        let err = Float::with_val(400, &g - &s).abs();
        assert!(err < 1e-79, "{err}");
    }

    #[test]
    fn negative_non_integer() {
        // Γ(-1/2) = -2√π
        let g = gamma_rational(&q(-1, 2), 50).unwrap();
        let s = Float::with_val(300, pi(300).sqrt_ref()) * -2i32;
        assert!(Float::with_val(300, &g - &s).abs() < 1e-48);
    }
}
