//! Numerical monodromy around the conifold point and the vanishing of Π_γ4
//! there.

use rug::{Float, Integer, Rational};

use super::exact::interpolate_affine;
use super::transport::{cmat_inverse, cmat_mul, propagate, state_matrix, transport, PathPlan, TransferMatrix};
use crate::bases::{conifold_basis, g4_prefactor, period_basis, ConifoldBasis};
use crate::error::{Error, Result};
use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::matrix::ParamMatrix;
use crate::exact::rational::q;
use crate::models::ModelData;
use crate::numerics::{pi, ten_pow_neg, working_bits, working_digits, BigComplex, Prec};
use crate::operators::pf_operator;

/// Number of series terms that resolves p digits at |x|/R = ratio.
pub fn series_order(ratio: f64, p: u32) -> usize {
    (f64::from(working_digits(p)) / -ratio.log10()).ceil() as usize + 40
}

/// Minimum number of chords of the conifold loop.
pub const LOOP_STEPS: usize = 16;

fn prec_for(p: u32) -> Prec {
    working_bits(p) + 32
}

/// Counterclockwise loop of radius x_c/2 around x_c, based at x_c/2.
pub fn conifold_loop_path(m: &ModelData, p: u32) -> PathPlan {
    let prec = prec_for(p);
    let xc = BigComplex::from_rational(&m.x_c(), prec);
    let base = BigComplex::from_rational(&(m.x_c() / 2u32), prec);
    PathPlan::circle(&xc, &base, LOOP_STEPS, q(1, 2))
}

/// Monodromy of Π_γ1..Π_γ4 (at the given a) around x_c, unrounded.
pub fn conifold_loop(m: &ModelData, a: &Rational, p: u32) -> Result<TransferMatrix> {
    let prec = prec_for(p);
    let basis = period_basis(m, series_order(0.5, p), prec).specialize(a);
    transport(&pf_operator(m), &basis, &conifold_loop_path(m, p), p)
}

/// Rounded conifold monodromy with its rounding residual.
#[derive(Clone, Debug)]
pub struct ConifoldMonodromy {
    pub matrix: ParamMatrix,
    /// Largest distance of a transported entry to its rounded value.
    pub residual: Float,
    pub transport_error: Float,
}

/// Entries rounded to the nearest half-integer, and the residual.
pub fn round_half_integers(t: &TransferMatrix) -> (Vec<Vec<Rational>>, Float) {
    let prec = t.error.prec();
    let mut res = Float::new(prec);
    let rows = t
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| {
                    let twice = Float::with_val(prec, &e.re * 2u32).round();
                    let n = twice.to_integer().unwrap_or_default();
                    let v = Rational::from((n, Integer::from(2)));
                    let dre = Float::with_val(prec, &e.re - &v).abs();
                    let dim = e.im.clone().abs();
                    for d in [dre, dim] {
                        if d > res {
                            res = d;
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    (rows, res)
}

/// M_Con from loops at a = 1/2 and a = 3/2, rounded and re-symbolized.
/// Fails when an entry is further than 10^{−p/2} from a half-integer.
pub fn monodromy_conifold(m: &ModelData, p: u32) -> Result<ConifoldMonodromy> {
    let prec = prec_for(p);
    let tol = ten_pow_neg(p / 2, prec);
    let mut samples = Vec::new();
    let mut residual = Float::new(prec);
    let mut terr = Float::new(prec);
    for a in [q(1, 2), q(3, 2)] {
        let t = conifold_loop(m, &a, p)?;
        let (rows, res) = round_half_integers(&t);
        if res > residual {
            residual = res;
        }
        if t.error > terr {
            terr = t.error.clone();
        }
        samples.push((a, rows));
    }
    if residual >= tol {
        return Err(Error::RoundingResidual { residual: crate::numerics::fmt_real(&residual, 6), tolerance: format!("1e-{}", p / 2) });
    }
    // Affine interpolation through the two half-integer samples.
    let (a0, v0) = &samples[0];
    let (a1, v1) = &samples[1];
    let at = |a: &Rational| -> Result<Vec<Vec<Cyclotomic>>> {
        let s = Rational::from(a - a0) / Rational::from(a1 - a0);
        Ok((0..4)
            .map(|i| (0..4).map(|j| Cyclotomic::rational(&v0[i][j] + &s * Rational::from(&v1[i][j] - &v0[i][j]), 1)).collect())
            .collect())
    };
    let matrix = interpolate_affine(4, at)?;
    Ok(ConifoldMonodromy { matrix, residual, transport_error: terr })
}

/// Result of continuing the period basis to the conifold point.
#[derive(Clone, Debug)]
pub struct VanishingReport {
    /// |Π_γk(x_c)| for k = 1..4.
    pub values_at_xc: Vec<Float>,
    /// Π_γ4 = λ·ϖ near x_c.
    pub lambda: BigComplex,
    /// Largest coefficient of Π_γ4 along ψ_0, ψ_2, ψ_log.
    pub off_vanishing: Float,
    /// The expected λ = √r/(x_c·2πi).
    pub lambda_expected: BigComplex,
    pub basis: ConifoldBasis,
}

/// Continues Π_γ1..Π_γ4 from x_c/4 along the real segment to x_c/2 and
/// expands them in the local basis at x_c, with log t on arg t = −π.
pub fn vanishing_check(m: &ModelData, a: &Rational, p: u32) -> Result<VanishingReport> {
    let prec = prec_for(p);
    let xc = m.x_c();
    let start = BigComplex::from_rational(&(xc.clone() / 4u32), prec);
    let mid = BigComplex::from_rational(&(xc.clone() / 2u32), prec);
    let basis = period_basis(m, series_order(0.25, p), prec).specialize(a);
    let s0 = state_matrix(&basis, &start, &Float::new(prec), p)?;
    let path = PathPlan::new(start, vec![mid.clone()], q(1, 2));
    let prop = propagate(&pf_operator(m), &path, p)?;
    let s_pi = cmat_mul(&prop.entries, &s0);

    let cb = conifold_basis(m, series_order(0.5, p))?;
    let local: Vec<_> = cb.solutions.iter().map(|s| s.to_numeric(prec)).collect();
    let t = BigComplex::from_rational(&(-xc.clone() / 2u32), prec);
    let arg = Float::with_val(prec, -pi(prec));
    let s_c = state_matrix(&local, &t, &arg, p)?;
    let conn = cmat_mul(&cmat_inverse(&s_c)?, &s_pi);

    // ψ_0 is the only local solution that is nonzero at t = 0.
    let values_at_xc = (0..4).map(|k| conn[0][k].abs()).collect();
    let vi = cb.vanishing_index;
    let mut off = Float::new(prec);
    for (i, row) in conn.iter().enumerate() {
        if i != vi && row[3].abs() > off {
            off = row[3].abs();
        }
    }
    Ok(VanishingReport {
        values_at_xc,
        lambda: conn[vi][3].clone(),
        off_vanishing: off,
        lambda_expected: g4_prefactor(m, prec),
        basis: cb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::param::ParamPoly;
    use crate::models::ModelId;

    #[test]
    fn quintic_conifold_monodromy() {
        let m = ModelId::Y5.data();
        let r = monodromy_conifold(&m, 30).unwrap();
        assert_eq!(r.matrix, ParamMatrix::elementary(4, 4, 1, ParamPoly::one()));
        assert!(r.residual < 1e-20);
    }

    #[test]
    fn quintic_vanishing_period() {
        let m = ModelId::Y5.data();
        let v = vanishing_check(&m, &q(5, 2), 30).unwrap();
        assert!(v.values_at_xc[3] < 1e-20);
        assert!(v.values_at_xc[0] > 1e-3);
        assert!(v.off_vanishing < 1e-20);
        assert!(v.lambda.sub(&v.lambda_expected).abs() < Float::with_val(64, v.lambda.abs() * 1e-20));
    }
}
