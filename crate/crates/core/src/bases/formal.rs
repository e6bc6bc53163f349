//! Formal solutions g_1..g_4 of the Laplace-transformed operator at z = ∞.
//!
//! Series are stored in w = 1/z, so log w = −log z and a term
//! (log w)^i w^{n+e} stands for (−log z)^i z^{−n−e}.

use rug::{Float, Rational};

use super::deformed::{binom_q, invert_variable, DeformedSeries};
use super::periods::combination_matrix;
use super::series::{ExactLogSeries, LogSeries};
use crate::error::{Error, Result};
use crate::exact::rational::{factorial, harmonic_table, qi};
use crate::models::ModelData;
use crate::numerics::{eval_asymptotic, euler_gamma, pi, zeta, BigComplex, Prec, TruncationReport};
use crate::operators::{laplace_pf, pf_operator, ThetaOperator};

/// prefactor · e^{Λ(z)} · Σ_i Σ_n c[i][n] (log w)^i w^{n+e}, with Λ(z) = c·z.
#[derive(Clone, Debug)]
pub struct FormalSolution {
    pub exp_coeff: Rational,
    pub prefactor: BigComplex,
    pub series: LogSeries,
    /// Rational coefficients, when the series has them.
    pub exact: Option<ExactLogSeries>,
}

impl FormalSolution {
    /// r in z^{−r}.
    pub fn power(&self) -> &Rational {
        &self.series.exponent
    }

    pub fn log_depth(&self) -> usize {
        self.series.log_depth()
    }

    /// Optimally truncated value at z with log z = ln|z| + i·arg.
    pub fn eval(&self, z: &BigComplex, arg: &Float, max_terms: usize) -> Result<TruncationReport> {
        let prec = z.prec();
        let lw = z.log_with_arg(arg).neg();
        let rows = &self.series.coeffs;
        let rep = eval_asymptotic(
            |n| {
                if n >= self.series.order() {
                    return None;
                }
                let mut acc = BigComplex::zero(prec);
                let mut lp = BigComplex::one(prec);
                for row in rows {
                    acc = acc.add(&row[n].mul(&lp));
                    lp = lp.mul(&lw);
                }
                Some(acc)
            },
            z,
            max_terms,
        )?;
        let mut scale = lw.mul_rational(&self.series.exponent).exp().mul(&self.prefactor.with_prec(prec));
        if self.exp_coeff != 0 {
            scale = scale.mul(&z.mul_rational(&self.exp_coeff).exp());
        }
        let err = Float::with_val(prec, &rep.error_estimate * scale.abs());
        Ok(TruncationReport { n_star: rep.n_star, value: rep.value.mul(&scale), error_estimate: err })
    }
}

/// e^{c z} L e^{−c z}, i.e. θ ↦ θ − c z.
pub fn conjugate_exponential(op: &ThetaOperator, c: &Rational) -> ThetaOperator {
    let shifted = ThetaOperator::theta().sub(&ThetaOperator::monomial(c.clone(), 1, 0));
    let mut out = ThetaOperator::zero();
    for (&(a, b), k) in op.terms() {
        out = out.add(&ThetaOperator::monomial(k.clone(), a, 0).mul(&shifted.pow(b)));
    }
    out
}

/// Exponent r and coefficients C_0 = 1, C_1, … of a formal solution
/// e^{−c z} z^{−r} Σ C_i z^{−i} of `op`. The exponent comes from the largest
/// root of the top z-power of the conjugated operator.
pub fn exponential_formal_series(op: &ThetaOperator, c: &Rational, order: usize) -> Result<(Rational, Vec<Rational>)> {
    let conj = conjugate_exponential(op, c);
    let parts = conj.parts();
    let (&top, ptop) = parts.iter().next_back().ok_or_else(|| Error::IndicialMismatch("zero operator".into()))?;
    let s0 = ptop
        .rational_roots()
        .into_iter()
        .map(|r| r.0)
        .max()
        .ok_or_else(|| Error::IndicialMismatch(format!("no rational exponent in {} at z^{top}", ptop.display_in("T"))))?;
    let mut coeffs = vec![qi(1)];
    for mm in 1..order {
        let den = ptop.eval(&Rational::from(&s0 - mm as i64));
        if den == 0 {
            return Err(Error::RecurrenceBreakdown(mm));
        }
        let mut acc = Rational::new();
        for (&a, pa) in parts.range(..top) {
            let back = (top - a) as usize;
            if back > mm {
                continue;
            }
            let j = mm - back;
            acc += Rational::from(&coeffs[j] * &pa.eval(&Rational::from(&s0 - j as i64)));
        }
        coeffs.push(-acc / den);
    }
    Ok((-s0, coeffs))
}

/// The g_4 series: exponential part −x_c·z.
pub fn g4_coefficients(m: &ModelData, order: usize) -> Result<(Rational, Vec<Rational>)> {
    exponential_formal_series(&laplace_pf(&pf_operator(m))?, &m.x_c(), order)
}

/// κ = √r/(x_c·2πi), the normalization of g_4 and of the vanishing period.
pub fn g4_prefactor(m: &ModelData, prec: Prec) -> BigComplex {
    let s = Float::with_val(prec, m.g4_radicand).sqrt();
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    // 1/(2πi) = −i/(2π)
    let mag = Float::with_val(prec, s / &two_pi) / Float::with_val(prec, m.x_c());
    BigComplex::new(Float::new(prec), -mag)
}

/// g_1, g_2, g_3 from ∂_ρ̃^j G(z,ρ) combined exactly as the periods, and g_4.
pub fn formal_basis(m: &ModelData, order: usize, a: &Rational, prec: Prec) -> Result<Vec<FormalSolution>> {
    if order == 0 {
        return Err(Error::NonConvergence("formal basis needs order >= 1".into()));
    }
    let ds = DeformedSeries::laplace(m).derivatives(order, 2, prec);
    let b = combination_matrix(m).specialize(a);
    let mut out = Vec::new();
    for k in 0..3 {
        let terms: Vec<(BigComplex, &LogSeries)> =
            (0..3).filter(|&j| !b[j][k].is_zero()).map(|j| (b[j][k].to_complex(prec), &ds[j])).collect();
        let exact = (k == 0).then(|| DeformedSeries::laplace(m).jets(order, 0).remove(0));
        out.push(FormalSolution {
            exp_coeff: qi(0),
            prefactor: BigComplex::one(prec),
            series: LogSeries::combine(&terms),
            exact,
        });
    }
    let (r, c) = g4_coefficients(m, order)?;
    let ex = ExactLogSeries::new(r, vec![c]);
    out.push(FormalSolution {
        exp_coeff: -m.x_c(),
        prefactor: g4_prefactor(m, prec),
        series: ex.to_numeric(prec),
        exact: Some(ex),
    });
    Ok(out)
}

/// Operator acting on the w-series of g_4: conjugated, then z ↦ 1/z.
pub fn g4_operator(m: &ModelData) -> Result<ThetaOperator> {
    let lz = laplace_pf(&pf_operator(m))?;
    Ok(invert_variable(&conjugate_exponential(&lz, &m.x_c())))
}

/// Γ^{(l)}(1+N)/N! for l = 0..=depth, by the Bell recurrence in the
/// polygammas ψ^{(k)}(1+N).
fn gamma_derivatives(n: usize, depth: usize, harm: &[Vec<Rational>], prec: Prec) -> Vec<Float> {
    let mut psi = Vec::with_capacity(depth);
    for k in 0..depth {
        let v = if k == 0 {
            Float::with_val(prec, -euler_gamma(prec)) + Float::with_val(prec, &harm[0][n])
        } else {
            let kk = k as u32;
            let base = zeta(kk + 1, prec) - Float::with_val(prec, &harm[k][n]);
            let f = Float::with_val(prec, &factorial(k as u64));
            let s = if k % 2 == 1 { 1 } else { -1 };
            Float::with_val(prec, base * f) * s
        };
        psi.push(v);
    }
    let mut y = vec![Float::with_val(prec, 1)];
    for l in 1..=depth {
        let mut acc = Float::new(prec);
        for k in 1..=l {
            let c = binom_q(l - 1, k - 1);
            acc += Float::with_val(prec, &psi[k - 1] * &y[l - k]) * Float::with_val(prec, &c);
        }
        y.push(acc);
    }
    y
}

/// Termwise Laplace transform x^{N} (log x)^i ↦ ∂^i/∂s^i [Γ(1+s) z^{−s−1}]_{s=N}
/// for a series with non-negative integer exponent, followed by the shift
/// e^{−shift·z} for a series centred at x = shift.
pub fn termwise_laplace(s: &LogSeries, shift: &Rational, prec: Prec) -> Result<FormalSolution> {
    let e = &s.exponent;
    if *e.denom() != 1 || *e < 0 {
        return Err(Error::InvalidExponent { model: "termwise Laplace".into(), k: 0 });
    }
    let e0 = e.numer().to_usize().unwrap_or(0);
    let order = s.order();
    let depth = s.coeffs.len().saturating_sub(1);
    let nmax = (order + e0) as u64;
    let harm: Vec<Vec<Rational>> = (1..=depth.max(1) as u32).map(|k| harmonic_table(nmax, k)).collect();
    let mut rows = vec![vec![BigComplex::zero(prec); order]; depth + 1];
    for n in 0..order {
        let big_n = n + e0;
        let y = gamma_derivatives(big_n, depth, &harm, prec);
        let nf = Float::with_val(prec, &factorial(big_n as u64));
        for (i, row) in s.coeffs.iter().enumerate() {
            if row[n].is_zero() {
                continue;
            }
            // (log x)^i ↦ Σ_l C(i,l) Γ^{(l)} (log w)^{i−l}
            for l in 0..=i {
                let c = Float::with_val(prec, &y[l] * &nf) * Float::with_val(prec, &binom_q(i, l));
                rows[i - l][n] = rows[i - l][n].add(&row[n].mul_real(&c));
            }
        }
    }
    Ok(FormalSolution {
        exp_coeff: -shift.clone(),
        prefactor: BigComplex::one(prec),
        series: LogSeries::new(Rational::from(e + 1), rows),
        exact: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;
    use crate::models::ModelId;

    #[test]
    fn printed_g4_coefficients() {
        for id in ModelId::ALL {
            let m = id.data();
            let (r, c) = g4_coefficients(&m, 3).unwrap();
            assert_eq!(r, qi(2), "{id}");
            assert_eq!(c, vec![qi(1), qi(m.g4_printed[0]), qi(m.g4_printed[1])], "{id}");
        }
    }

    #[test]
    fn g4_series_is_annihilated_and_divergent() {
        for id in ModelId::ALL {
            let m = id.data();
            let (r, c) = g4_coefficients(&m, 31).unwrap();
            let s = ExactLogSeries::new(r, vec![c.clone()]);
            assert!(s.annihilated_by(&g4_operator(&m).unwrap()), "{id}");
            // C_{i+1}/(i·C_i) settles near −1/x_c.
            let ratio = |i: usize| (Rational::from(&c[i + 1] / &c[i]) / i as i64).to_f64();
            let target = -1.0 / m.x_c().to_f64();
            assert!((ratio(29) / target - 1.0).abs() < 0.2, "{id}");
            assert!((ratio(29) / target - 1.0).abs() < (ratio(5) / target - 1.0).abs());
        }
    }

    #[test]
    fn leading_term_of_g1() {
        let m = ModelId::Y5.data();
        let g = formal_basis(&m, 4, &q(5, 2), 128).unwrap();
        assert_eq!(g[0].series.coeffs[0][0].re, 1);
        assert_eq!(*g[0].power(), qi(1));
        let ex = g[0].exact.as_ref().unwrap();
        // Γ(1+n)Γ(1+5n)/Γ(1+n)^5 = (5n)!/(n!)^4
        assert_eq!(ex.coeffs[0][1], qi(120));
        assert_eq!(g.iter().map(FormalSolution::log_depth).collect::<Vec<_>>(), vec![0, 1, 2, 0]);
    }

    #[test]
    fn breakdown_is_reported() {
        // Top part (θ+2)(θ+3): exponent −2, then the denominator at m = 1 vanishes.
        let op = crate::operators::normal_order("z (T+2)(T+3) + T").unwrap();
        assert_eq!(conjugate_exponential(&op, &qi(0)), op);
        assert!(matches!(exponential_formal_series(&op, &qi(0), 4), Err(Error::RecurrenceBreakdown(1))));
        let ok = crate::operators::normal_order("z (T+2) + T").unwrap();
        let (r, c) = exponential_formal_series(&ok, &qi(0), 3).unwrap();
        assert_eq!(r, qi(2));
        // C_1·(−1) + C_0·(−2) = 0
        assert_eq!(c[1], qi(-2));
    }

    #[test]
    fn laplace_of_monomials() {
        let prec = 200;
        // x^0 ↦ 1/z
        let one = ExactLogSeries::new(qi(0), vec![vec![qi(1)]]).to_numeric(prec);
        let g = termwise_laplace(&one, &qi(0), prec).unwrap();
        assert_eq!(*g.power(), qi(1));
        assert_eq!(g.series.coeffs[0][0].re, 1);
        // x log x ↦ (ψ(2) − log z)/z², ψ(2) = 1 − γ
        let xl = ExactLogSeries::new(qi(1), vec![vec![qi(0)], vec![qi(1)]]).to_numeric(prec);
        let g = termwise_laplace(&xl, &qi(0), prec).unwrap();
        let want = Float::with_val(prec, 1) - euler_gamma(prec);
        assert!(Float::with_val(prec, &g.series.coeffs[0][0].re - &want).abs() < 1e-50);
        assert_eq!(g.series.coeffs[1][0].re, 1);
    }

    #[test]
    fn laplace_of_periods_gives_formal_basis() {
        let prec = 256;
        for id in ModelId::ALL {
            let m = id.data();
            let a = m.a_preferred.clone();
            let pis = super::super::periods::period_basis(&m, 11, prec).specialize(&a);
            let gs = formal_basis(&m, 11, &a, prec).unwrap();
            for k in 0..3 {
                let t = termwise_laplace(&pis[k], &qi(0), prec).unwrap();
                for (i, row) in gs[k].series.coeffs.iter().enumerate() {
                    for n in 0..11 {
                        let d = t.series.coeffs[i][n].sub(&row[n]).abs();
                        let scale = row[n].abs().max(&Float::with_val(prec, 1)).clone();
                        assert!(Float::with_val(prec, d / scale) < 1e-60, "{id} k={k} i={i} n={n}");
                    }
                }
            }
        }
    }
}
