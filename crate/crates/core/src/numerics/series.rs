//! Summation of convergent power series and optimal truncation of divergent
//! asymptotic series.

use rug::ops::Pow;
use rug::Float;

use super::{ten_pow_neg, working_digits, BigComplex, BigReal};
use crate::error::{Error, Result};

/// Consecutive small terms required before a convergent sum is accepted.
const SMALL_RUN: usize = 5;
/// Window over which sustained term growth is treated as divergence.
const GROWTH_WINDOW: usize = 4000;

/// Σ c_n z^n with coefficients drawn from `coeff` until it returns `None` or
/// the tail test passes: |term| < 10^{-p-guard}·|partial| for
/// [`SMALL_RUN`] consecutive terms.
pub fn eval_convergent<F>(mut coeff: F, z: &BigComplex, p: u32) -> Result<BigComplex>
where
    F: FnMut(usize) -> Option<BigComplex>,
{
    let prec = z.prec();
    let tol = ten_pow_neg(working_digits(p), prec);
    let mut sum = BigComplex::zero(prec);
    let mut zpow = BigComplex::one(prec);
    let mut run = 0usize;
    let mut best = Float::with_val(prec, f64::INFINITY);
    let mut best_at = 0usize;
    let mut n = 0usize;
    while let Some(c) = coeff(n) {
        let term = c.mul(&zpow);
        sum = sum.add(&term);
        let mag = term.abs();
        let bound = Float::with_val(prec, sum.abs() * &tol);
        if mag.is_zero() || mag < bound {
            run += 1;
            if run >= SMALL_RUN {
                return Ok(sum);
            }
        } else {
            run = 0;
        }
        if !mag.is_zero() && mag < best {
            best = mag;
            best_at = n;
        }
        if n > best_at + GROWTH_WINDOW {
            return Err(Error::NonConvergence(format!(
                "no new minimal term for {GROWTH_WINDOW} terms after index {best_at}"
            )));
        }
        zpow = zpow.mul(z);
        n += 1;
    }
    Ok(sum)
}

#[derive(Clone, Debug)]
pub struct TruncationReport {
    pub n_star: usize,
    pub value: BigComplex,
    /// Magnitude of the first omitted term. A heuristic, not an enclosure.
    pub error_estimate: BigReal,
}

/// Σ_{n<n*} c_n z^{-n} where n* indexes the smallest term magnitude.
///
/// Scanning stops at the end of the stream, at an exactly vanishing term, or
/// once terms exceed the running minimum by 10^{30}.
pub fn eval_asymptotic<F>(mut coeff: F, z: &BigComplex, max_terms: usize) -> Result<TruncationReport>
where
    F: FnMut(usize) -> Option<BigComplex>,
{
    let prec = z.prec();
    let w = z.recip();
    let blowup = Float::with_val(prec, 10).pow(30u32);
    let mut terms: Vec<BigComplex> = Vec::new();
    let mut min = Float::with_val(prec, f64::INFINITY);
    let mut n_star = 0usize;
    let mut wpow = BigComplex::one(prec);
    for n in 0..max_terms {
        let Some(c) = coeff(n) else { break };
        let t = c.mul(&wpow);
        let mag = t.abs();
        terms.push(t);
        if mag < min {
            min = mag.clone();
            n_star = n;
            if mag.is_zero() {
                break;
            }
        } else if mag > Float::with_val(prec, &min * &blowup) {
            break;
        }
        wpow = wpow.mul(&w);
    }
    if n_star == 0 {
        // A stream whose only term is the constant is exact.
        if terms.len() == 1 {
            return Ok(TruncationReport {
                n_star: 1,
                value: terms[0].clone(),
                error_estimate: Float::new(prec),
            });
        }
        return Err(Error::ArgumentTooSmall);
    }
    let mut value = BigComplex::zero(prec);
    for t in &terms[..n_star] {
        value = value.add(t);
    }
    Ok(TruncationReport { n_star, value, error_estimate: min })
}
