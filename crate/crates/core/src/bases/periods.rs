//! Symplectic period basis Π_γ1..Π_γ4 near x = 0 and its exact monodromy.

use rug::Rational;

use super::deformed::DeformedSeries;
use super::series::{ExactLogSeries, LogSeries};
use crate::error::Result;
use crate::exact::linalg::inverse_exact;
use crate::exact::matrix::ParamMatrix;
use crate::exact::param::ParamPoly;
use crate::exact::rational::{binomial, q, qi};
use crate::models::ModelData;
use crate::numerics::{BigComplex, Prec};

/// B(a) with Π_k = Σ_j D_j B[j][k] and D_j = ∂_ρ̃^j w|_{ρ=0}:
/// Π_γ1 = D_0, Π_γ2 = D_1, Π_γ3 = (K/2)D_2 + a D_1, Π_γ4 = −(K/6)D_3 − (C/12)D_1.
pub fn combination_matrix(m: &ModelData) -> ParamMatrix {
    let z = ParamPoly::zero;
    let c = |r: Rational| ParamPoly::constant_rat(r);
    ParamMatrix::from_entries(vec![
        vec![c(qi(1)), z(), z(), z()],
        vec![z(), c(qi(1)), ParamPoly::a(), c(q(-m.c_d, 12))],
        vec![z(), z(), c(q(m.k_d, 2)), z()],
        vec![z(), z(), z(), c(q(-m.k_d, 6))],
    ])
}

/// B(a) at a rational value, as a rational matrix.
pub fn combination_at(m: &ModelData, a: &Rational) -> Vec<Vec<Rational>> {
    combination_matrix(m)
        .specialize(a)
        .into_iter()
        .map(|r| r.into_iter().map(|c| c.as_rational().expect("rational entry")).collect())
        .collect()
}

/// U with D(e^{2πi}x) = D(x)·U: D_j ↦ Σ_i C(j,i) D_{j−i}.
pub fn log_shift_matrix(size: usize) -> Vec<Vec<Rational>> {
    (0..size)
        .map(|m| (0..size).map(|j| if m <= j { Rational::from(binomial(j as u64, (j - m) as u64)) } else { qi(0) }).collect())
        .collect()
}

fn rat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let k = b[0].len();
    (0..n)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut s = Rational::new();
                    for (t, bt) in b.iter().enumerate() {
                        s += Rational::from(&a[i][t] * &bt[j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// B(a)^{-1}·U·B(a) at a rational value.
pub fn monodromy_at(m: &ModelData, a: &Rational) -> Result<Vec<Vec<Rational>>> {
    let b = combination_at(m, a);
    let bi = inverse_exact(&b)?;
    Ok(rat_mul(&rat_mul(&bi, &log_shift_matrix(4)), &b))
}

/// The D_j together with the symbolic combination matrix.
#[derive(Clone, Debug)]
pub struct PeriodBasis {
    pub derivatives: Vec<LogSeries>,
    pub combination: ParamMatrix,
}

impl PeriodBasis {
    /// Π_γk at a given value of a.
    pub fn specialize(&self, a: &Rational) -> Vec<LogSeries> {
        let b = self.combination.specialize(a);
        let prec = self.derivatives[0].prec();
        (0..4)
            .map(|k| {
                let terms: Vec<(BigComplex, &LogSeries)> = (0..4)
                    .filter(|&j| !b[j][k].is_zero())
                    .map(|j| (b[j][k].to_complex(prec), &self.derivatives[j]))
                    .collect();
                LogSeries::combine(&terms)
            })
            .collect()
    }
}

pub fn period_basis(m: &ModelData, order: usize, prec: Prec) -> PeriodBasis {
    PeriodBasis { derivatives: DeformedSeries::periods(m).derivatives(order, 3, prec), combination: combination_matrix(m) }
}

/// Rational ρ-jets W_0..W_3; each is annihilated by the Picard-Fuchs operator.
pub fn period_jets(m: &ModelData, order: usize) -> Vec<ExactLogSeries> {
    DeformedSeries::periods(m).jets(order, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;
    use crate::exact::rational::factorial;
    use crate::models::ModelId;

    #[test]
    fn fundamental_period_coefficients() {
        let m = ModelId::Y5.data();
        let b = period_basis(&m, 6, 200);
        let p = b.specialize(&q(5, 2));
        for n in 0..6u64 {
            let want = Rational::from(factorial(5 * n)) / Rational::from(factorial(n)).pow(5u32);
            let got = &p[0].coeffs[0][n as usize];
            assert!(got.sub(&BigComplex::from_rational(&want, 200)).abs() < 1e-40);
        }
        assert_eq!(p[0].coeffs[0][2].re, 113400);
    }

    #[test]
    fn log_depths() {
        for id in ModelId::ALL {
            let m = id.data();
            let p = period_basis(&m, 5, 128).specialize(&m.a_preferred);
            let depths: Vec<usize> = p.iter().map(LogSeries::log_depth).collect();
            assert_eq!(depths, vec![0, 1, 2, 3], "{id}");
        }
    }

    #[test]
    fn top_log_coefficient_of_last_period() {
        // −(K/6)/(2πi)^3 times the leading w coefficient 1
        let prec = 200;
        let m = ModelId::Y5.data();
        let p = period_basis(&m, 3, prec).specialize(&qi(0));
        let c = &p[3].coeffs[3][0];
        let two_pi = crate::numerics::pi(prec) * 2u32;
        let mut want = rug::Float::with_val(prec, two_pi.clone() * &two_pi) * &two_pi;
        want = rug::Float::with_val(prec, -5) / want / 6u32;
        // (2πi)^{-3} = i/(2π)^3
        assert!(c.re.clone().abs() < 1e-50);
        assert!(rug::Float::with_val(prec, &c.im - &want).abs() < 1e-50);
    }

    #[test]
    fn exact_origin_monodromy() {
        let m = ModelId::Y5.data();
        let a = q(7, 2);
        let got = monodromy_at(&m, &a).unwrap();
        let want = ModelId::Y5.data();
        let m0 = crate::exact::matrix::mat_mul(&want.k_rbar, &want.l).unwrap().specialize(&a);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m0[i][j].as_rational().unwrap(), got[i][j]);
            }
        }
    }
}
