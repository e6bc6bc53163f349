//! The combinations ŵ_m of the φ_k and the holomorphic basis f_k, with exact
//! coefficients in Q(ζ_{2d}) where ζ_{2d}² = α = e^{2πi/d}.

use rug::{Float, Rational};

use super::frobenius::{phi_eval, phi_series};
use super::series::LogSeries;
use crate::error::Result;
use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::param::ParamPoly;
use crate::models::ModelData;
use crate::numerics::{BigComplex, Prec};

/// Order of the cyclotomic field holding the ŵ coefficients.
pub fn field_order(m: &ModelData) -> u32 {
    2 * m.d
}

/// W[m][s]: coefficient of φ_{offsets[s]} in ŵ_m, for m = 0..d−1.
///
/// ŵ_m = (1−α) Σ_k Π(1−α^{μk})^p α^{km + (k−1)/2} φ_{d−k}; terms with
/// d − k outside the exponent set carry a vanishing weight.
pub fn hat_w_coefficients(m: &ModelData) -> Vec<Vec<Cyclotomic>> {
    let n = field_order(m);
    let one = Cyclotomic::one(n);
    let zeta = |e: i64| Cyclotomic::zeta_pow(n, e);
    let d = i64::from(m.d);
    (0..d)
        .map(|mm| {
            m.offsets
                .iter()
                .map(|&j| {
                    let k = d - i64::from(j);
                    let mut w = &one - &zeta(2);
                    for &(mu, p) in &m.hat_w_factors {
                        let f = &one - &zeta(2 * i64::from(mu) * k);
                        w = &w * &f.pow(p);
                    }
                    &w * &zeta(2 * k * mm + k - 1)
                })
                .collect()
        })
        .collect()
}

/// Weight of φ_{d−k} before the α-phase, for every k = 1..d−1.
pub fn hat_w_weights(m: &ModelData) -> Vec<(i64, Cyclotomic)> {
    let n = field_order(m);
    let one = Cyclotomic::one(n);
    (1..i64::from(m.d))
        .map(|k| {
            let mut w = &one - &Cyclotomic::zeta_pow(n, 2);
            for &(mu, p) in &m.hat_w_factors {
                w = &w * &(&one - &Cyclotomic::zeta_pow(n, 2 * i64::from(mu) * k)).pow(p);
            }
            (k, w)
        })
        .collect()
}

/// Σ_m ŵ_m, coefficientwise.
pub fn hat_w_sum(m: &ModelData) -> Vec<Cyclotomic> {
    let w = hat_w_coefficients(m);
    let n = field_order(m);
    (0..4).map(|s| w.iter().fold(Cyclotomic::zero(n), |acc, row| &acc + &row[s])).collect()
}

/// F[s][k]: coefficient of φ_{offsets[s]} in f_k / c_N, affine in a.
pub fn holomorphic_coefficients(m: &ModelData) -> Vec<Vec<ParamPoly>> {
    let w = hat_w_coefficients(m);
    let nm = m.n.entries();
    (0..4)
        .map(|s| {
            (0..4)
                .map(|k| {
                    let mut acc = ParamPoly::zero();
                    for (r, &sel) in m.hat_w_selection.iter().enumerate() {
                        acc = acc.add(&nm[r][k].scale(&w[sel as usize][s]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// f_k(z) at given a and c_N, with φ evaluated on the branch `arg`.
pub fn holomorphic_eval(
    m: &ModelData,
    a: &Rational,
    c_n: &BigComplex,
    z: &BigComplex,
    arg: &Float,
    p: u32,
) -> Result<Vec<BigComplex>> {
    let prec = z.prec();
    let phis = m.offsets.iter().map(|&k| phi_eval(m, k, z, arg, p)).collect::<Result<Vec<_>>>()?;
    let f = holomorphic_coefficients(m);
    Ok((0..4)
        .map(|k| {
            let mut acc = BigComplex::zero(prec);
            for (s, ph) in phis.iter().enumerate() {
                let c = f[s][k].specialize(a).to_complex(prec);
                acc = acc.add(&c.mul(ph));
            }
            acc.mul(c_n)
        })
        .collect())
}

/// Σ c_s φ_{offsets[s]}: a sum of series with distinct exponents ρ_k.
#[derive(Clone, Debug)]
pub struct PhiCombination {
    pub terms: Vec<(BigComplex, LogSeries)>,
}

impl PhiCombination {
    fn build(m: &ModelData, coeffs: &[BigComplex], order: usize, prec: Prec) -> Result<Self> {
        let terms = m
            .offsets
            .iter()
            .zip(coeffs)
            .map(|(&k, c)| Ok((c.clone(), phi_series(m, k, order, prec)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PhiCombination { terms })
    }

    /// Value of the truncated sums at z on the branch `arg`.
    pub fn eval(&self, z: &BigComplex, arg: &Float, p: u32) -> Result<BigComplex> {
        let mut acc = BigComplex::zero(z.prec());
        for (c, s) in &self.terms {
            acc = acc.add(&c.mul(&s.eval(z, arg, p)?));
        }
        Ok(acc)
    }
}

/// ŵ_0 .. ŵ_{d−1} with φ truncated at `order`.
pub fn hat_w_basis(m: &ModelData, order: usize, prec: Prec) -> Result<Vec<PhiCombination>> {
    hat_w_coefficients(m)
        .iter()
        .map(|row| {
            let c: Vec<BigComplex> = row.iter().map(|w| w.to_complex(prec)).collect();
            PhiCombination::build(m, &c, order, prec)
        })
        .collect()
}

/// f_1 .. f_4 = c_N·(ŵ selection)·N at a given a.
pub fn holomorphic_basis(m: &ModelData, order: usize, a: &Rational, c_n: &BigComplex, prec: Prec) -> Result<Vec<PhiCombination>> {
    let f = holomorphic_coefficients(m);
    (0..4)
        .map(|k| {
            let c: Vec<BigComplex> = (0..4).map(|s| f[s][k].specialize(a).to_complex(prec).mul(c_n)).collect();
            PhiCombination::build(m, &c, order, prec)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelId;

    #[test]
    fn sum_vanishes_exactly() {
        for id in ModelId::ALL {
            let m = id.data();
            assert!(hat_w_sum(&m).iter().all(Cyclotomic::is_zero), "{id}");
        }
    }

    #[test]
    fn disallowed_exponents_have_zero_weight() {
        for id in ModelId::ALL {
            let m = id.data();
            for (k, w) in hat_w_weights(&m) {
                let j = i64::from(m.d) - k;
                let allowed = m.offsets.contains(&(j as u32));
                assert_eq!(!w.is_zero(), allowed, "{id} k={k}");
            }
        }
    }

    #[test]
    fn leading_quintic_coefficient() {
        // ŵ_0 coefficient of φ_4 (k = 1): (1−α)(1−α)^3 = (1−ζ²)^4.
        let m = ModelId::Y5.data();
        let w = hat_w_coefficients(&m);
        let one = Cyclotomic::one(10);
        let want = (&one - &Cyclotomic::zeta_pow(10, 2)).pow(4);
        assert_eq!(w[0][3], want);
        // Shifting m multiplies by α^k.
        assert_eq!(w[1][3], &want * &Cyclotomic::zeta_pow(10, 2));
    }

    #[test]
    fn identity_selection() {
        // With N = I the f-coefficients are the selected ŵ rows.
        let mut m = ModelId::Y10.data();
        m.n = crate::exact::matrix::ParamMatrix::identity(4);
        let f = holomorphic_coefficients(&m);
        let w = hat_w_coefficients(&m);
        for s in 0..4 {
            for k in 0..4 {
                assert_eq!(f[s][k], ParamPoly::constant(w[m.hat_w_selection[k] as usize][s].clone()));
            }
        }
        assert_eq!(m.hat_w_selection[3], 9);
    }

    #[test]
    fn basis_series_match_direct_evaluation() {
        let m = ModelId::Y6.data();
        let prec = 160;
        let cn = BigComplex::from_rational(&Rational::from((-3, 7)), prec);
        let a = m.a_preferred.clone();
        let z = BigComplex::from_rational(&(Rational::from(3) / m.x_c()), prec);
        let arg = Float::new(prec);
        let direct = holomorphic_eval(&m, &a, &cn, &z, &arg, 40).unwrap();
        let basis = holomorphic_basis(&m, 60, &a, &cn, prec).unwrap();
        for (f, want) in basis.iter().zip(&direct) {
            let got = f.eval(&z, &arg, 40).unwrap();
            assert!(got.sub(want).abs() < Float::with_val(prec, want.abs() * 1e-30));
        }
    }

    #[test]
    fn hat_w_leading_terms() {
        let m = ModelId::Y5.data();
        let prec = 128;
        let w = hat_w_basis(&m, 0, prec).unwrap();
        assert_eq!(w.len(), 5);
        let exact = hat_w_coefficients(&m);
        for (s, (c, series)) in w[0].terms.iter().enumerate() {
            assert_eq!(series.order(), 1);
            assert!(c.sub(&exact[0][s].to_complex(prec)).abs() < 1e-30);
        }
    }
}
