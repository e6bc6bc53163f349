//! Frobenius solutions φ_k of the Laplace-transformed operator at z = 0.
//!
//! φ_k = d_k z^{ρ_k} Σ r_n z^n with ρ_k = −k/d, r_0 = 1 and
//! r_n/r_{n−1} = −s³/(C·Π_i(ds + m_i)), s = n + ρ_k. Equivalently
//! φ_k = d_k z^{ρ_k} ₃F₃(1+ρ_k (×3); 1 + (m_i − k)/d (m_i ≠ k); −x_c z).

use rug::ops::Pow;
use rug::{Float, Rational};

use super::series::{ExactLogSeries, LogSeries};
use crate::error::{Error, Result};
use crate::exact::rational::{q, qi};
use crate::models::ModelData;
use crate::numerics::{bits_for_digits, eval_convergent, working_bits, BigComplex, Prec};

/// r_n/r_{n−1}.
pub fn phi_ratio(m: &ModelData, rho: &Rational, n: u64) -> Rational {
    let s = Rational::from(rho + n);
    let s3 = s.clone().pow(3u32);
    let mut den = Rational::from(m.pf_constant);
    for &mi in &m.offsets {
        den *= Rational::from(&s * m.d) + mi;
    }
    -s3 / den
}

/// Normalized series Σ r_n z^{n+ρ_k} (r_0 = 1), exact.
pub fn phi_exact(m: &ModelData, k: u32, order: usize) -> Result<ExactLogSeries> {
    let rho = m.rho(k)?;
    let mut c = Vec::with_capacity(order + 1);
    let mut r = qi(1);
    c.push(r.clone());
    for n in 1..=order as u64 {
        r *= phi_ratio(m, &rho, n);
        c.push(r.clone());
    }
    Ok(ExactLogSeries::new(rho, vec![c]))
}

/// φ_k truncated after z^{order+ρ_k}, with the leading constant d_k.
pub fn phi_series(m: &ModelData, k: u32, order: usize, prec: Prec) -> Result<LogSeries> {
    let e = phi_exact(m, k, order)?;
    let dk = BigComplex::from_real(m.d_const(k)?.eval_bits(prec)?);
    Ok(e.to_numeric(prec).scale(&dk))
}

/// Upper and lower parameters and the argument scale of the ₃F₃ form.
pub fn hypergeometric_params(m: &ModelData, k: u32) -> Result<(Vec<Rational>, Vec<Rational>, Rational)> {
    let rho = m.rho(k)?;
    let upper = vec![Rational::from(&rho + 1); 3];
    let lower = m
        .offsets
        .iter()
        .filter(|&&mi| mi != k)
        .map(|&mi| qi(1) + q(i64::from(mi) - i64::from(k), i64::from(m.d)))
        .collect();
    Ok((upper, lower, -m.x_c()))
}

/// log10 of the largest term |r_n z^n|, from a double-precision scan.
fn peak_term_log10(m: &ModelData, rho: &Rational, zabs: f64) -> f64 {
    let lz = zabs.log10();
    let mut acc = 0.0f64;
    let mut best = 0.0f64;
    let mut n = 1u64;
    loop {
        acc += phi_ratio(m, rho, n).to_f64().abs().log10() + lz;
        best = best.max(acc);
        if acc < best - 40.0 && n > 5 {
            return best;
        }
        n += 1;
    }
}

/// φ_k(z) with z^{ρ} taken on the branch log z = ln|z| + i·arg. The sum is
/// carried at extra precision to absorb cancellation for large |z|.
pub fn phi_eval(m: &ModelData, k: u32, z: &BigComplex, arg: &Float, p: u32) -> Result<BigComplex> {
    let rho = m.rho(k)?;
    let zabs = z.abs().to_f64();
    if !zabs.is_finite() || zabs == 0.0 {
        return Err(Error::NonConvergence(format!("phi_{k} at |z| = {zabs}")));
    }
    let boost = peak_term_log10(m, &rho, zabs).max(0.0).ceil() as u32;
    let prec = working_bits(p) + bits_for_digits(boost);
    let zp = z.with_prec(prec);
    let mut r = Rational::from(1);
    let mut last = 0u64;
    let sum = eval_convergent(
        |n| {
            let n = n as u64;
            while last < n {
                last += 1;
                r *= phi_ratio(m, &rho, last);
            }
            Some(BigComplex::from_rational(&r, prec))
        },
        &zp,
        p + boost,
    )?;
    let lz = zp.log_with_arg(&Float::with_val(prec, arg));
    let pow = lz.mul_rational(&rho).exp();
    let dk = BigComplex::from_real(m.d_const(k)?.eval_bits(prec)?);
    Ok(sum.mul(&pow).mul(&dk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelId;
    use crate::numerics::gamma::gamma_rational_bits;
    use crate::operators::{laplace_pf, pf_operator};

    #[test]
    fn annihilated_to_order_30() {
        for id in ModelId::ALL {
            let m = id.data();
            let lz = laplace_pf(&pf_operator(&m)).unwrap();
            for &k in &m.offsets {
                assert!(phi_exact(&m, k, 30).unwrap().annihilated_by(&lz), "{id} k={k}");
            }
        }
    }

    #[test]
    fn invalid_exponent() {
        let m = ModelId::Y6.data();
        assert!(matches!(phi_exact(&m, 3, 5), Err(Error::InvalidExponent { k: 3, .. })));
        assert!(phi_series(&m, 4, 0, 64).unwrap().order() == 1);
    }

    #[test]
    fn printed_hypergeometric_parameters() {
        let m = ModelId::Y5.data();
        let (u, l, x) = hypergeometric_params(&m, 1).unwrap();
        assert_eq!(u, vec![q(4, 5); 3]);
        assert_eq!(l, vec![q(6, 5), q(7, 5), q(8, 5)]);
        assert_eq!(x, q(-1, 3125));
        let m = ModelId::Y8.data();
        let (u, l, x) = hypergeometric_params(&m, 3).unwrap();
        assert_eq!(u, vec![q(5, 8); 3]);
        assert_eq!(l, vec![q(3, 4), q(5, 4), q(6, 4)]);
        assert_eq!(x, q(-1, 65536));
        let m = ModelId::Y6.data();
        let (_, l, _) = hypergeometric_params(&m, 4).unwrap();
        assert_eq!(l, vec![q(1, 2), q(2, 3), q(7, 6)]);
    }

    #[test]
    fn leading_constant_is_gamma_ratio_of_the_series() {
        // The n = 0 term of the printed Γ-ratio series: Π Γ(b + a ρ) / Γ(d+1 + dρ),
        // numerator factors listed as (a, b, multiplicity). For Y10 the
        // recurrence needs Γ(2+2ρ); Γ(3+2ρ) would give s²(s+1) in the ratio.
        let bits = 256;
        let table: [(ModelId, &[(i64, i64, u32)]); 4] = [
            (ModelId::Y5, &[(1, 1, 3), (1, 2, 1)]),
            (ModelId::Y6, &[(1, 1, 3), (2, 3, 1)]),
            (ModelId::Y8, &[(1, 1, 3), (4, 5, 1)]),
            (ModelId::Y10, &[(1, 1, 2), (2, 2, 1), (5, 6, 1)]),
        ];
        for (id, num) in table {
            let m = id.data();
            let d = i64::from(m.d);
            for &k in &m.offsets {
                let rho = m.rho(k).unwrap();
                let mut want = Float::with_val(bits, 1);
                for &(a, b, e) in num {
                    let g = gamma_rational_bits(&(Rational::from(&rho * a) + b), bits).unwrap();
                    for _ in 0..e {
                        want *= &g;
                    }
                }
                want /= gamma_rational_bits(&(Rational::from(&rho * d) + d + 1), bits).unwrap();
                let got = m.d_const(k).unwrap().eval_bits(bits).unwrap();
                assert!(Float::with_val(bits, &got - &want).abs() < 1e-60, "{id} k={k}");
            }
        }
    }

    #[test]
    fn eval_matches_truncated_series() {
        let m = ModelId::Y5.data();
        let prec = 256;
        let z = BigComplex::from_i64(1000, prec);
        let s = phi_series(&m, 2, 60, prec).unwrap();
        let a = s.eval(&z, &Float::new(prec), 50).unwrap();
        let b = phi_eval(&m, 2, &z, &Float::new(prec), 50).unwrap();
        assert!(a.sub(&b).abs() < 1e-45);
    }
}
