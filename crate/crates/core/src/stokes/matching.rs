//! The constant c_N from f_k ∼ g_k, and residual tables for the asymptotics
//! on sample rays.

use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::bases::{formal_basis, holomorphic_eval, FormalSolution};
use crate::error::{Error, Result};
use crate::models::ModelData;
use crate::numerics::{pi, ten_pow_neg, working_bits, working_digits, BigComplex, Prec};

fn prec_for(p: u32) -> Prec {
    working_bits(p) + 32
}

/// Terms needed to reach the optimal truncation point near n ≈ x_c|z|.
fn formal_order(m: &ModelData, zabs: f64) -> usize {
    (m.x_c().to_f64() * zabs * 1.5).ceil() as usize + 40
}

/// Digits for the f-side: f_4 ∼ e^{−x_c z} comes out of O(1) terms, so the
/// φ sums need x_c|z|·log10(e) extra digits.
fn f_digits(m: &ModelData, zabs: f64, p: u32) -> u32 {
    p + (m.x_c().to_f64() * zabs * std::f64::consts::LOG10_E).ceil() as u32 + 5
}

fn formal_at(m: &ModelData, zabs: f64, a: &Rational, prec: Prec) -> Result<Vec<FormalSolution>> {
    formal_basis(m, formal_order(m, zabs), a, prec)
}

/// One ratio g_k/f_k at a sample point.
#[derive(Clone, Debug)]
pub struct CnSample {
    pub z: BigComplex,
    /// 1-based basis index.
    pub k: usize,
    pub ratio: BigComplex,
    /// Relative optimal-truncation error of g_k.
    pub rel_error: Float,
}

#[derive(Clone, Debug)]
pub struct CnMatch {
    pub c_n: Float,
    pub samples: Vec<CnSample>,
    /// Largest |ratio − c_N| over all samples.
    pub spread: Float,
    /// Largest |Im ratio|.
    pub imag: Float,
}

/// c_N as g_k(z)/f_k(z) with f built from c_N = 1, for k = 1 and k = 4,
/// at points on the positive real axis (arg z = 0).
pub fn match_cn(m: &ModelData, z_samples: &[BigComplex], p: u32) -> Result<CnMatch> {
    let prec = prec_for(p);
    let a = m.a_preferred.clone();
    let zero = Float::new(prec);
    let one = BigComplex::one(prec);
    let mut samples = Vec::new();
    for z in z_samples {
        let z = z.with_prec(prec);
        if !z.im.is_zero() || z.re <= 0 {
            return Err(Error::InconsistentMatch("sample points must lie on the positive real axis".into()));
        }
        let zabs = z.re.to_f64();
        let pf = f_digits(m, zabs, p);
        let f = holomorphic_eval(m, &a, &one, &z.with_prec(prec_for(pf)), &zero, pf)?;
        let g = formal_at(m, zabs, &a, prec)?;
        for k in [1usize, 4] {
            let rep = g[k - 1].eval(&z, &zero, usize::MAX)?;
            let rel = Float::with_val(prec, &rep.error_estimate / rep.value.abs());
            samples.push(CnSample { z: z.clone(), k, ratio: rep.value.div(&f[k - 1]), rel_error: rel });
        }
    }
    let c_n = samples[0].ratio.re.clone();
    let mut spread = Float::new(prec);
    let mut imag = Float::new(prec);
    let mut tol = ten_pow_neg(working_digits(p).saturating_sub(p.div_ceil(10) + 15), prec);
    for s in &samples {
        let d = s.ratio.sub(&BigComplex::from_real(c_n.clone())).abs();
        if d > spread {
            spread = d;
        }
        let im = s.ratio.im.clone().abs();
        if im > imag {
            imag = im;
        }
        let bound = Float::with_val(prec, &s.rel_error * 100u32);
        if bound > tol {
            tol = bound;
        }
    }
    let rel_spread = Float::with_val(prec, &spread / c_n.clone().abs());
    if rel_spread > tol {
        return Err(Error::InconsistentMatch(format!(
            "ratios disagree to relative {} (tolerance {})",
            crate::numerics::fmt_real(&rel_spread, 3),
            crate::numerics::fmt_real(&tol, 3)
        )));
    }
    Ok(CnMatch { c_n, samples, spread, imag })
}

/// Default sample points: |z| = 120/x_c and 130/x_c on the positive real axis.
pub fn default_cn_samples(m: &ModelData, prec: Prec) -> Vec<BigComplex> {
    [120u32, 130]
        .iter()
        .map(|&s| BigComplex::from_rational(&(Rational::from(s) / m.x_c()), prec))
        .collect()
}

/// Number of decimals in a printed value such as `-0.00342934921`.
fn printed_decimals(printed: &str) -> usize {
    printed.split_once('.').map_or(0, |(_, f)| f.len())
}

/// Whether `value` reproduces every digit of `printed`, read as either the
/// truncated or the rounded decimal expansion.
pub fn matches_printed(value: &Float, printed: &str) -> Result<bool> {
    let k = printed_decimals(printed) as u32;
    let digits: String = printed.chars().filter(|&c| c != '.').collect();
    let want: Integer = digits.parse().map_err(|_| Error::Parse(format!("not a decimal: {printed}")))?;
    let scale = Integer::from(Integer::u_pow_u(10, k));
    let x = Float::with_val(value.prec(), value * &scale);
    let t = x.to_integer_round(Round::Zero).map(|(i, _)| i);
    let r = x.to_integer_round(Round::Nearest).map(|(i, _)| i);
    Ok([t, r].into_iter().flatten().any(|i| i == want))
}

/// One row of the asymptotic residual table.
#[derive(Clone, Debug)]
pub struct AsymptoticRow {
    /// 1-based basis index.
    pub k: usize,
    /// arg z as a multiple of π.
    pub arg_over_pi: Rational,
    pub relative_residual: Float,
    pub bound: Float,
}

impl AsymptoticRow {
    pub fn passes(&self) -> bool {
        self.relative_residual < self.bound
    }
}

/// Sample arguments (multiples of π) inside the sector of validity of f_k ∼ g_k:
/// Ξ(−π/2, 5π/2) for k = 1, 2, 3 and Ξ(−3π/2, 3π/2) for k = 4.
pub fn sample_args(k: usize) -> Vec<Rational> {
    let half = |n: i64| Rational::from((n, 2));
    if k == 4 {
        vec![half(-1), half(0), half(1), half(2)]
    } else {
        vec![half(0), half(1), half(2)]
    }
}

/// |f_k(z) − g_k(z)|/|g_k(z)| at |z| = zabs on the sample rays, against
/// 100× the relative optimal-truncation error plus 10^{−p+guard}.
pub fn verify_asymptotics(m: &ModelData, c_n: &Float, zabs: &Rational, p: u32) -> Result<Vec<AsymptoticRow>> {
    let prec = prec_for(p);
    let a = m.a_preferred.clone();
    let cn = BigComplex::from_real(Float::with_val(prec, c_n));
    let g = formal_at(m, zabs.to_f64(), &a, prec)?;
    let r = Float::with_val(prec, zabs);
    let floor = ten_pow_neg(p.saturating_sub(10), prec);
    let mut rows = Vec::new();
    for k in 1..=4 {
        for t in sample_args(k) {
            let arg = Float::with_val(prec, pi(prec) * &t);
            let z = BigComplex::from_polar(&r, &arg);
            let pf = f_digits(m, zabs.to_f64(), p);
            let f = holomorphic_eval(m, &a, &cn, &z.with_prec(prec_for(pf)), &arg, pf)?;
            let rep = g[k - 1].eval(&z, &arg, usize::MAX)?;
            let gabs = rep.value.abs();
            let rel = Float::with_val(prec, f[k - 1].sub(&rep.value).abs() / &gabs);
            let bound = Float::with_val(prec, Float::with_val(prec, &rep.error_estimate / &gabs) * 100u32 + &floor);
            rows.push(AsymptoticRow { k, arg_over_pi: t, relative_residual: rel, bound });
        }
    }
    Ok(rows)
}
