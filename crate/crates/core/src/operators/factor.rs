//! Left factors that are polynomials in θ.
//!
//! g(θ)·Σ z^a q_a(θ) = Σ z^a g(θ+a) q_a(θ), so g(θ) is a left factor of
//! Σ z^a p_a(θ) exactly when g(θ) divides every p_a(θ − a).

use std::collections::BTreeMap;

use rug::Rational;

use super::poly::QPoly;
use super::theta::ThetaOperator;
use crate::error::{Error, Result};

/// op = g(θ)·right, returning `right`.
pub fn left_divide_poly(op: &ThetaOperator, g: &QPoly) -> Result<ThetaOperator> {
    let mut parts = BTreeMap::new();
    for (a, p) in op.parts() {
        let ga = g.shift(&Rational::from(a));
        let q = p
            .exact_div(&ga)
            .ok_or_else(|| Error::NotLeftFactor(format!("{} does not divide the z^{a} part", g.display_in("T"))))?;
        parts.insert(a, q);
    }
    Ok(ThetaOperator::from_parts(&parts))
}

/// Largest monic θ-polynomial left factor: gcd_a p_a(θ − a).
pub fn max_left_poly_factor(op: &ThetaOperator) -> QPoly {
    let mut g = QPoly::zero();
    for (a, p) in op.parts() {
        g = g.gcd(&p.shift(&Rational::from(-a)));
    }
    g
}

/// op = θ ∘ right.
pub fn factor_theta(op: &ThetaOperator) -> Result<(ThetaOperator, ThetaOperator)> {
    if op.is_zero() {
        return Err(Error::NotLeftFactor("zero operator".into()));
    }
    let right = left_divide_poly(op, &QPoly::x())?;
    Ok((ThetaOperator::theta(), right))
}

/// Splits off the full θ-polynomial left factor. The right factor is
/// normalized; the left factor absorbs the scalar.
pub fn factor_left(op: &ThetaOperator) -> Result<(QPoly, ThetaOperator)> {
    let g = max_left_poly_factor(op);
    if g.is_zero() {
        return Err(Error::NotLeftFactor("zero operator".into()));
    }
    let right = left_divide_poly(op, &g)?;
    let normed = right.normalize();
    // right = s·normed for a scalar s; move s into the left factor.
    let (&key, c) = right.terms().iter().next().expect("nonzero");
    let s = Rational::from(c / &normed.coeff(key.0, key.1));
    Ok((g.scale(&s), normed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::theta::normal_order;

    #[test]
    fn theta_factor() {
        let right = normal_order("z (T+1)^3 + 5 (5T+1)(5T+2)(5T+3)(5T+4)").unwrap();
        let op = ThetaOperator::theta().mul(&right);
        let (l, r) = factor_theta(&op).unwrap();
        assert_eq!(l, ThetaOperator::theta());
        assert_eq!(r, right);
        let (l, r) = factor_theta(&ThetaOperator::theta()).unwrap();
        assert_eq!((l, r), (ThetaOperator::theta(), ThetaOperator::one()));
        assert!(matches!(factor_theta(&normal_order("T + 1").unwrap()), Err(Error::NotLeftFactor(_))));
    }

    #[test]
    fn general_left_factor() {
        let right = normal_order("z (T+1)^3 + 9 (6T+1)(6T+2)(6T+4)(6T+5)").unwrap();
        let g = normal_order("3 T (2T+1)").unwrap();
        let (lp, r) = factor_left(&g.mul(&right)).unwrap();
        assert_eq!(r, right);
        assert_eq!(ThetaOperator::z_times_poly(0, &lp), g);
    }
}
