//! Picard-Fuchs operators and their Laplace transform in one variable.
//!
//! After dividing on the left by x, the rules ∂_x → z and θ_x → −θ_z − 1
//! turn an operator in x into one in z. Only a z^0 part divisible by θ and
//! a z^1 part can be transformed without producing negative powers of z.

use std::collections::BTreeMap;

use rug::Rational;

use super::poly::QPoly;
use super::theta::ThetaOperator;
use crate::error::{Error, Result};
use crate::models::ModelData;

/// θ^4 − C·x·Π(dθ + m_i).
pub fn pf_operator(model: &ModelData) -> ThetaOperator {
    let mut parts = BTreeMap::new();
    parts.insert(0, QPoly::x().pow(4));
    parts.insert(1, model.pf_polynomial().neg());
    ThetaOperator::from_parts(&parts)
}

/// Transform without normalization.
pub fn laplace_pf_raw(op: &ThetaOperator) -> Result<ThetaOperator> {
    let m1 = Rational::from(-1);
    let mut out = ThetaOperator::zero();
    for (a, p) in op.parts() {
        match a {
            0 => {
                // x^{-1}·θ·q(θ) = ∂·q(θ) ↦ z·q(−θ−1)
                let (qt, r) = p.div_rem(&QPoly::x());
                if !r.is_zero() {
                    return Err(Error::NegativePower(-1));
                }
                out = out.add(&ThetaOperator::z_times_poly(1, &qt.compose_linear(&m1, &m1)));
            }
            1 => {
                out = out.add(&ThetaOperator::z_times_poly(0, &p.compose_linear(&m1, &m1)));
            }
            _ => return Err(Error::NegativePower(1 - a)),
        }
    }
    Ok(out)
}

/// Laplace transform followed by [`ThetaOperator::normalize`].
pub fn laplace_pf(op: &ThetaOperator) -> Result<ThetaOperator> {
    Ok(laplace_pf_raw(op)?.normalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelId;
    use crate::operators::theta::normal_order;

    #[test]
    fn quintic_transform() {
        let m = ModelId::Y5.data();
        let pf = pf_operator(&m);
        assert_eq!(pf, normal_order("T^4 - 5 z (5T+4)(5T+3)(5T+2)(5T+1)").unwrap());
        let lz = laplace_pf(&pf).unwrap();
        assert_eq!(lz, normal_order("z (T+1)^3 + 5 (5T+1)(5T+2)(5T+3)(5T+4)").unwrap());
        // The raw image carries the opposite overall sign.
        assert_eq!(laplace_pf_raw(&pf).unwrap(), lz.neg());
    }

    #[test]
    fn toy_and_errors() {
        let toy = normal_order("T - z").unwrap();
        assert_eq!(laplace_pf(&toy).unwrap(), normal_order("1 - z").unwrap());
        assert!(matches!(laplace_pf(&normal_order("1 + T").unwrap()), Err(Error::NegativePower(-1))));
        assert!(matches!(laplace_pf(&normal_order("z^2").unwrap()), Err(Error::NegativePower(-1))));
        let r = laplace_pf(&normal_order("z^3 T").unwrap());
        assert!(matches!(r, Err(Error::NegativePower(-2))));
    }
}
