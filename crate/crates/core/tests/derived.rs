//! Derived quantities checked against oracles computed here from first
//! principles: MPFR special functions, hand-rolled matrix powers and
//! closed-form integrals.

use rug::float::Constant;
use rug::{Assign, Float, Rational};
use stokesforge::bases::{termwise_laplace, LogSeries};
use stokesforge::exact::{uncapped_product, Cyclotomic};
use stokesforge::models::ModelId;
use stokesforge::numerics::{ten_pow_neg, working_bits, BigComplex};
use stokesforge::stokes::conifold::conifold_loop;
use stokesforge::stokes::{default_cn_samples, match_cn, monodromy_conifold, monodromy_origin, ray_geometry, stokes_matrices, vanishing_check};

const PREC: u32 = 256;

fn f<T>(v: T) -> Float
where
    Float: Assign<T>,
{
    Float::with_val(PREC, v)
}

fn close(a: &BigComplex, re: &Float, im: &Float) -> bool {
    let tol = Float::with_val(PREC, 1e-60);
    Float::with_val(PREC, &a.re - re).abs() < tol && Float::with_val(PREC, &a.im - im).abs() < tol
}

/// ∫_0^∞ e^{−xz} x^N (log x)^i dx for i = 1, 2, in w = 1/z:
/// N!·(ψ + log w)·w^{N+1} and N!·((ψ + log w)^2 + ψ')·w^{N+1}, ψ = ψ(N+1).
#[test]
fn termwise_laplace_matches_closed_form_integrals() {
    let n = 3u32;
    let fact = f(6);
    let psi = Float::with_val(PREC, f(n + 1).digamma());
    let pi = Float::with_val(PREC, Constant::Pi);
    let trigamma = Float::with_val(PREC, &pi * &pi) / 6u32 - f(1) - f(Rational::from((1, 4))) - f(Rational::from((1, 9)));
    let zero = f(0);
    let c = |v: i64| BigComplex::from_real(f(v));

    let log1 = LogSeries::new(Rational::from(n), vec![vec![c(0)], vec![c(1)]]);
    let t = termwise_laplace(&log1, &Rational::new(), PREC).unwrap();
    assert_eq!(*t.power(), 4);
    assert!(close(&t.series.coeffs[0][0], &Float::with_val(PREC, &fact * &psi), &zero));
    assert!(close(&t.series.coeffs[1][0], &fact, &zero));

    let log2 = LogSeries::new(Rational::from(n), vec![vec![c(0)], vec![c(0)], vec![c(1)]]);
    let t = termwise_laplace(&log2, &Rational::from(2), PREC).unwrap();
    assert_eq!(t.exp_coeff, -2);
    let c0 = Float::with_val(PREC, &psi * &psi) + &trigamma;
    assert!(close(&t.series.coeffs[0][0], &Float::with_val(PREC, &fact * &c0), &zero));
    assert!(close(&t.series.coeffs[1][0], &Float::with_val(PREC, &fact * Float::with_val(PREC, &psi * 2u32)), &zero));
    assert!(close(&t.series.coeffs[2][0], &fact, &zero));
}

fn cmul(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(Cyclotomic::zero(1), |acc, k| &acc + &(&a[i][k] * &b[k][j]))).collect()).collect()
}

fn is_identity(a: &[Vec<Cyclotomic>]) -> bool {
    a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == Cyclotomic::rational(Rational::from(i64::from(i == j)), 1)))
}

/// M_∞ = M_Con·M_0 has exact order d, checked by repeated multiplication at
/// several a.
#[test]
fn monodromy_at_infinity_has_order_d() {
    for id in ModelId::ALL {
        let m = id.data();
        let m_inf = uncapped_product(&[&monodromy_conifold(&m, 30).unwrap().matrix, &monodromy_origin(&m).unwrap()]).unwrap();
        for a in [Rational::from((1, 2)), Rational::from(3), Rational::from((-7, 3))] {
            let base = m_inf.specialize(&a);
            let mut acc = base.clone();
            let mut order = 1;
            while !is_identity(&acc) {
                acc = cmul(&acc, &base);
                order += 1;
                assert!(order <= 24, "{id}: no finite order");
            }
            assert_eq!(order, m.d, "{id} at a = {a}");
        }
    }
}

/// The Stokes matrices are unipotent: (K − I)^4 = 0 at every a.
#[test]
fn stokes_matrices_are_unipotent() {
    for id in ModelId::ALL {
        let (kr, kbar) = stokes_matrices(&id.data()).unwrap();
        for k in [kr, kbar] {
            let mut n = k.specialize(&Rational::from((5, 7)));
            for (i, row) in n.iter_mut().enumerate() {
                row[i] = &row[i] - &Cyclotomic::one(1);
            }
            let n4 = cmul(&cmul(&n, &n), &cmul(&n, &n));
            assert!(n4.iter().flatten().all(Cyclotomic::is_zero), "{id}");
        }
    }
}

/// Stokes rays of the exponents (0, 0, 0, −x_c·z) sit at ±π/2 for every model.
#[test]
fn ray_directions() {
    for id in ModelId::ALL {
        let cfg = ray_geometry(&id.data());
        let dirs = cfg.directions();
        assert_eq!(dirs.len(), 2, "{id}");
        assert_eq!(dirs[0].0, Rational::from((-1, 2)));
        assert_eq!(dirs[1].0, Rational::from((1, 2)));
        assert!(dirs[0].1.iter().all(|&(_, j)| j == 4));
        assert!(dirs[1].1.iter().all(|&(i, _)| i == 4));
        assert!(cfg.xi.0 <= cfg.cut_over_pi);
    }
}

/// c_N is stable under a change of working precision and sample radius.
#[test]
fn matching_constant_is_stable() {
    for id in [ModelId::Y5, ModelId::Y10] {
        let m = id.data();
        let lo = match_cn(&m, &default_cn_samples(&m, working_bits(60) + 32), 60).unwrap();
        let z = BigComplex::from_rational(&(Rational::from(110) / m.x_c()), working_bits(90) + 32);
        let hi = match_cn(&m, &[z], 90).unwrap();
        let d = Float::with_val(PREC, &lo.c_n - &hi.c_n).abs();
        assert!(d < ten_pow_neg(40, PREC), "{id}: {d}");
        assert!(hi.imag < ten_pow_neg(40, hi.imag.prec()));
    }
}

/// Π_γ4 = λ·ϖ near x_c with λ = √r/(2πi·x_c); the oracle uses MPFR's π.
#[test]
fn vanishing_period_normalization() {
    for id in ModelId::ALL {
        let m = id.data();
        let rep = vanishing_check(&m, &m.a_preferred, 40).unwrap();
        let pi = Float::with_val(PREC, Constant::Pi);
        let mag = Float::with_val(PREC, f(m.g4_radicand).sqrt() / (pi * 2u32)) / f(m.x_c());
        let expect_im = Float::with_val(PREC, -mag);
        let got = &rep.lambda;
        let tol = Float::with_val(PREC, Float::with_val(PREC, got.abs()) * 1e-30);
        assert!(Float::with_val(PREC, &got.re).abs() < tol, "{id}: {}", got);
        assert!(Float::with_val(PREC, &got.im - &expect_im).abs() < tol, "{id}: {}", got);
    }
}

/// Transport of the period basis around x_c agrees between p and 2p digits.
#[test]
fn transport_precision_doubling() {
    let p = 24;
    for id in ModelId::ALL {
        let m = id.data();
        let lo = conifold_loop(&m, &m.a_legacy, p).unwrap();
        let hi = conifold_loop(&m, &m.a_legacy, 2 * p).unwrap();
        let dev = lo.max_deviation(&hi);
        assert!(dev < ten_pow_neg(p - 5, dev.prec()), "{id}: {dev}");
    }
}
