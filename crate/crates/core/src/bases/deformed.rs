//! The deformed series w(x,ρ) = Σ Γ(1+d(n+ρ))/Π Γ(1+ω_i(n+ρ)) x^{n+ρ} and
//! its Laplace image G(z,ρ), together with ∂_ρ̃ = (1/2πi)∂_ρ at ρ = 0.
//!
//! For a ratio Π Γ(1 + a_i s)^{e_i} we split
//!
//!   ratio(n + ρ) = ratio(n) · E(ρ) · exp(Σ_k h_k(n) ρ^k),
//!   h_k(n) = Σ_i e_i (−1)^{k−1} a_i^k H^{(k)}_{a_i n} / k,
//!   log E(ρ) = Σ_i e_i (−γ a_i ρ + Σ_{k≥2} (−1)^k ζ(k) (a_i ρ)^k / k),
//!
//! so every ρ-jet of the n-th coefficient is rational up to the n-independent
//! factor E, which is the only place transcendental constants enter.

use rug::ops::Pow;
use rug::{Float, Rational};

use super::series::{ExactLogSeries, LogSeries};
use crate::exact::rational::{binomial, factorial, harmonic_table};
use crate::models::ModelData;
use crate::numerics::{euler_gamma, pi, zeta, BigComplex, Prec};
use crate::operators::ThetaOperator;

/// Π Γ(1 + a s)^e over the listed (a, e).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRatio {
    pub factors: Vec<(u32, i32)>,
}

/// Taylor coefficients of exp(g) from those of g (g_0 ignored), via
/// r f_r = Σ_{k=1}^r k g_k f_{r−k}.
fn exp_series_q(g: &[Rational]) -> Vec<Rational> {
    let mut f = vec![Rational::from(1)];
    for r in 1..g.len() {
        let mut acc = Rational::new();
        for k in 1..=r {
            acc += Rational::from(&g[k] * &f[r - k]) * k as i64;
        }
        f.push(acc / r as i64);
    }
    f
}

fn exp_series_f(g: &[Float], prec: Prec) -> Vec<Float> {
    let mut f = vec![Float::with_val(prec, 1)];
    for r in 1..g.len() {
        let mut acc = Float::new(prec);
        for k in 1..=r {
            acc += Float::with_val(prec, &g[k] * &f[r - k]) * k as u32;
        }
        f.push(acc / r as u32);
    }
    f
}

impl GammaRatio {
    fn build(mut raw: Vec<(u32, i32)>) -> Self {
        raw.sort();
        let mut factors: Vec<(u32, i32)> = Vec::new();
        for (a, e) in raw {
            match factors.last_mut() {
                Some(last) if last.0 == a => last.1 += e,
                _ => factors.push((a, e)),
            }
        }
        factors.retain(|f| f.1 != 0);
        GammaRatio { factors }
    }

    /// Γ(1+ds)/Π Γ(1+ω_i s).
    pub fn periods(m: &ModelData) -> Self {
        let mut raw = vec![(m.d, 1)];
        raw.extend(m.weights.iter().map(|&w| (w, -1)));
        Self::build(raw)
    }

    /// Γ(1+s)·Γ(1+ds)/Π Γ(1+ω_i s).
    pub fn laplace(m: &ModelData) -> Self {
        let mut g = Self::periods(m);
        g.factors.push((1, 1));
        Self::build(g.factors)
    }

    /// Σ e_i a_i.
    pub fn weight_sum(&self) -> i64 {
        self.factors.iter().map(|&(a, e)| i64::from(a) * i64::from(e)).sum()
    }

    /// ratio(n) = Π (a_i n)!^{e_i}.
    pub fn value(&self, n: u64) -> Rational {
        let mut r = Rational::from(1);
        for &(a, e) in &self.factors {
            let f = Rational::from(factorial(u64::from(a) * n));
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    r *= &f;
                } else {
                    r /= &f;
                }
            }
        }
        r
    }

    /// [ρ^r] ratio(n + ρ)/E(ρ) for n < order and r ≤ depth.
    pub fn rational_jets(&self, order: usize, depth: usize) -> Vec<Vec<Rational>> {
        let amax = self.factors.iter().map(|f| f.0).max().unwrap_or(1) as u64;
        let nmax = amax * order.saturating_sub(1) as u64;
        let tables: Vec<Vec<Rational>> = (1..=depth as u32).map(|k| harmonic_table(nmax, k)).collect();
        let mut out = Vec::with_capacity(order);
        let mut value = Rational::from(1);
        for n in 0..order as u64 {
            if n > 0 {
                for &(a, e) in &self.factors {
                    let a = u64::from(a);
                    let mut step = Rational::from(1);
                    for j in a * (n - 1) + 1..=a * n {
                        step *= Rational::from(j);
                    }
                    for _ in 0..e.unsigned_abs() {
                        if e > 0 {
                            value *= &step;
                        } else {
                            value /= &step;
                        }
                    }
                }
            }
            let mut h = vec![Rational::new(); depth + 1];
            for (k, hk) in h.iter_mut().enumerate().skip(1) {
                for &(a, e) in &self.factors {
                    let ak = Rational::from(rug::Integer::from(a).pow(k as u32));
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    let term = ak * &tables[k - 1][(u64::from(a) * n) as usize] * i64::from(e) * sign;
                    *hk += term / k as i64;
                }
            }
            out.push(exp_series_q(&h).into_iter().map(|c| c * &value).collect());
        }
        out
    }

    /// Taylor coefficients of E(ρ) to ρ^depth.
    pub fn constant_jet(&self, depth: usize, prec: Prec) -> Vec<Float> {
        let mut g = vec![Float::new(prec); depth + 1];
        let s1 = self.weight_sum();
        if depth >= 1 {
            g[1] = Float::with_val(prec, -euler_gamma(prec) * s1);
        }
        for (k, gk) in g.iter_mut().enumerate().skip(2) {
            let mut sk = rug::Integer::new();
            for &(a, e) in &self.factors {
                sk += rug::Integer::from(a).pow(k as u32) * e;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            *gk = Float::with_val(prec, zeta(k as u32, prec) * &sk) * sign / k as u32;
        }
        exp_series_f(&g, prec)
    }
}

/// w(x,ρ) (periods side) or G(z,ρ) written in w = 1/z (Laplace side).
#[derive(Clone, Debug)]
pub struct DeformedSeries {
    pub ratio: GammaRatio,
    /// Exponent at ρ = 0: 0 for w(x,ρ), 1 for G in the variable 1/z.
    pub base_exponent: i64,
}

impl DeformedSeries {
    pub fn periods(m: &ModelData) -> Self {
        DeformedSeries { ratio: GammaRatio::periods(m), base_exponent: 0 }
    }

    pub fn laplace(m: &ModelData) -> Self {
        DeformedSeries { ratio: GammaRatio::laplace(m), base_exponent: 1 }
    }

    /// W_r = [ρ^r](ratio-part of the series), r = 0..=depth. The coefficient
    /// of (log x)^i x^{n+e} in W_r is R_n[r−i]/i!.
    pub fn jets(&self, order: usize, depth: usize) -> Vec<ExactLogSeries> {
        let r = self.ratio.rational_jets(order, depth);
        (0..=depth)
            .map(|rr| {
                let rows = (0..=rr)
                    .map(|i| {
                        let fi = Rational::from(factorial(i as u64));
                        r.iter().map(|rn| Rational::from(&rn[rr - i] / &fi)).collect()
                    })
                    .collect();
                ExactLogSeries::new(Rational::from(self.base_exponent), rows)
            })
            .collect()
    }

    /// D_j = ∂_ρ̃^j (series)|_{ρ=0} for j = 0..=depth.
    pub fn derivatives(&self, order: usize, depth: usize, prec: Prec) -> Vec<LogSeries> {
        let jets: Vec<LogSeries> = self.jets(order, depth).iter().map(|s| s.to_numeric(prec)).collect();
        let e = self.ratio.constant_jet(depth, prec);
        let two_pi_i = BigComplex::new(Float::new(prec), Float::with_val(prec, pi(prec) * 2u32));
        let mut out = Vec::new();
        let mut scale = BigComplex::one(prec);
        for j in 0..=depth {
            // j!/(2πi)^j Σ_m E[m] W_{j−m}
            let fj = Rational::from(factorial(j as u64));
            let terms: Vec<(BigComplex, &LogSeries)> = (0..=j)
                .map(|m| (BigComplex::from_real(e[m].clone()).mul_rational(&fj).div(&scale), &jets[j - m]))
                .collect();
            out.push(LogSeries::combine(&terms));
            scale = scale.mul(&two_pi_i);
        }
        out
    }
}

/// z ↦ 1/z on operators: z^a θ^b ↦ w^{−a}(−θ_w)^b.
pub fn invert_variable(op: &ThetaOperator) -> ThetaOperator {
    let mut out = ThetaOperator::zero();
    for (&(a, b), c) in op.terms() {
        let s = if b % 2 == 0 { c.clone() } else { Rational::from(-c) };
        out = out.add(&ThetaOperator::monomial(s, -a, b));
    }
    out
}

/// Binomial helper shared with the termwise Laplace transform.
pub(crate) fn binom_q(n: usize, k: usize) -> Rational {
    Rational::from(binomial(n as u64, k as u64))
}
