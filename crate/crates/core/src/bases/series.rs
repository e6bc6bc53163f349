//! Truncated series Σ_j Σ_n c[j][n] (log x)^j x^{n+ρ}, in exact rational and
//! numeric form.

use rug::{Float, Rational};
use serde::Serialize;

use crate::error::Result;
use crate::numerics::{eval_convergent, fmt_real, BigComplex, Prec};
use crate::operators::ThetaOperator;

/// Coefficient ring shared by the exact and numeric series.
pub trait Coeff: Clone {
    fn zero_like(&self) -> Self;
    fn add_c(&self, o: &Self) -> Self;
    fn mul_q(&self, r: &Rational) -> Self;
    fn is_zero_c(&self) -> bool;
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn add_c(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn mul_q(&self, r: &Rational) -> Self {
        Rational::from(self * r)
    }
    fn is_zero_c(&self) -> bool {
        *self == 0
    }
}

impl Coeff for BigComplex {
    fn zero_like(&self) -> Self {
        BigComplex::zero(self.prec())
    }
    fn add_c(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn mul_q(&self, r: &Rational) -> Self {
        self.mul_rational(r)
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
}

/// θ acting on rows c[j][n] of (log x)^j x^{n+ρ}.
fn theta_rows<T: Coeff>(rows: &[Vec<T>], rho: &Rational) -> Vec<Vec<T>> {
    let depth = rows.len();
    (0..depth)
        .map(|j| {
            (0..rows[j].len())
                .map(|n| {
                    let s = Rational::from(rho + n as i64);
                    let mut v = rows[j][n].mul_q(&s);
                    if j + 1 < depth {
                        v = v.add_c(&rows[j + 1][n].mul_q(&Rational::from(j as i64 + 1)));
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Applies Σ z^a p_a(θ) and returns rows for the exponent ρ + min a. Only the
/// first `len` coefficients are complete.
fn apply_rows<T: Coeff>(rows: &[Vec<T>], rho: &Rational, op: &ThetaOperator) -> (Rational, Vec<Vec<T>>) {
    let len = rows.first().map_or(0, Vec::len);
    let zero = rows.first().and_then(|r| r.first()).map(|c| c.zero_like());
    let Some(zero) = zero else {
        return (rho.clone(), rows.to_vec());
    };
    let amin = op.min_z_power().unwrap_or(0);
    let mut out = vec![vec![zero.clone(); len]; rows.len()];
    let max_b = op.theta_order();
    let mut powers = vec![rows.to_vec()];
    for _ in 0..max_b {
        let next = theta_rows(powers.last().unwrap(), rho);
        powers.push(next);
    }
    for (&(a, b), c) in op.terms() {
        let shift = (a - amin) as usize;
        let src = &powers[b as usize];
        for (j, row) in src.iter().enumerate() {
            for n in 0..len.saturating_sub(shift) {
                out[j][n + shift] = out[j][n + shift].add_c(&row[n].mul_q(c));
            }
        }
    }
    (Rational::from(rho + amin), out)
}

/// Series with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactLogSeries {
    pub exponent: Rational,
    /// coeffs[j][n] multiplies (log x)^j x^{n+ρ}.
    pub coeffs: Vec<Vec<Rational>>,
}

impl ExactLogSeries {
    pub fn new(exponent: Rational, mut coeffs: Vec<Vec<Rational>>) -> Self {
        let len = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        for r in &mut coeffs {
            r.resize(len, Rational::new());
        }
        ExactLogSeries { exponent, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    pub fn log_depth(&self) -> usize {
        self.coeffs.iter().rposition(|r| r.iter().any(|c| *c != 0)).unwrap_or(0)
    }

    pub fn coeff(&self, j: usize, n: usize) -> Rational {
        self.coeffs.get(j).and_then(|r| r.get(n)).cloned().unwrap_or_default()
    }

    pub fn apply(&self, op: &ThetaOperator) -> ExactLogSeries {
        let (e, rows) = apply_rows(&self.coeffs, &self.exponent, op);
        ExactLogSeries::new(e, rows)
    }

    /// True iff `op` kills every complete coefficient.
    pub fn annihilated_by(&self, op: &ThetaOperator) -> bool {
        self.apply(op).coeffs.iter().flatten().all(|c| *c == 0)
    }

    /// Keeps the coefficients of x^{n+e} for n < order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.exponent.clone(), self.coeffs.iter().map(|r| r.iter().take(order).cloned().collect()).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|row| row.iter().map(|c| Rational::from(c * r)).collect()).collect();
        ExactLogSeries { exponent: self.exponent.clone(), coeffs }
    }

    pub fn to_numeric(&self, prec: Prec) -> LogSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|c| BigComplex::from_rational(c, prec)).collect())
            .collect();
        LogSeries::new(self.exponent.clone(), coeffs)
    }
}

/// Series with arbitrary-precision complex coefficients.
#[derive(Clone, Debug)]
pub struct LogSeries {
    pub exponent: Rational,
    /// coeffs[j][n] multiplies (log x)^j x^{n+ρ}.
    pub coeffs: Vec<Vec<BigComplex>>,
}

#[derive(Serialize)]
struct SeriesDoc<'a> {
    model: &'a str,
    basis_name: &'a str,
    exponent: String,
    log_depth: usize,
    order: usize,
    precision_digits: usize,
    coefficients: Vec<Vec<[String; 2]>>,
}

impl LogSeries {
    pub fn new(exponent: Rational, mut coeffs: Vec<Vec<BigComplex>>) -> Self {
        let len = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let prec = coeffs.iter().flatten().next().map_or(64, BigComplex::prec);
        for r in &mut coeffs {
            r.resize(len, BigComplex::zero(prec));
        }
        LogSeries { exponent, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.first().map_or(0, Vec::len)
    }

    pub fn log_depth(&self) -> usize {
        self.coeffs.iter().rposition(|r| r.iter().any(|c| !c.is_zero())).unwrap_or(0)
    }

    pub fn prec(&self) -> Prec {
        self.coeffs.iter().flatten().next().map_or(64, BigComplex::prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.exponent, o.exponent, "exponent mismatch");
        let depth = self.coeffs.len().max(o.coeffs.len());
        let len = self.order().max(o.order());
        let prec = self.prec().max(o.prec());
        let z = BigComplex::zero(prec);
        let get = |s: &Self, j: usize, n: usize| s.coeffs.get(j).and_then(|r| r.get(n)).cloned().unwrap_or(z.clone());
        let coeffs = (0..depth).map(|j| (0..len).map(|n| get(self, j, n).add(&get(o, j, n))).collect()).collect();
        LogSeries::new(self.exponent.clone(), coeffs)
    }

    pub fn scale(&self, c: &BigComplex) -> Self {
        let coeffs = self.coeffs.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect();
        LogSeries::new(self.exponent.clone(), coeffs)
    }

    /// Linear combination Σ c_i s_i of series with a common exponent.
    pub fn combine(terms: &[(BigComplex, &LogSeries)]) -> Self {
        let mut it = terms.iter();
        let (c, s) = it.next().expect("nonempty combination");
        let mut acc = s.scale(c);
        for (c, s) in it {
            acc = acc.add(&s.scale(c));
        }
        acc
    }

    pub fn apply(&self, op: &ThetaOperator) -> LogSeries {
        let (e, rows) = apply_rows(&self.coeffs, &self.exponent, op);
        LogSeries::new(e, rows)
    }

    /// Largest coefficient magnitude after applying `op`.
    pub fn residual(&self, op: &ThetaOperator) -> Float {
        let r = self.apply(op);
        let mut m = Float::new(self.prec());
        for c in r.coeffs.iter().flatten() {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// d/dx, as a series with exponent ρ − 1.
    pub fn derivative(&self) -> LogSeries {
        let th = theta_rows(&self.coeffs, &self.exponent);
        LogSeries::new(Rational::from(&self.exponent - 1), th)
    }

    /// Value at x with log x = ln|x| + i·arg.
    pub fn eval(&self, x: &BigComplex, arg: &Float, p: u32) -> Result<BigComplex> {
        let prec = x.prec();
        let lx = x.log_with_arg(arg);
        let mut total = BigComplex::zero(prec);
        let mut lpow = BigComplex::one(prec);
        for row in &self.coeffs {
            let s = eval_convergent(|n| row.get(n).cloned(), x, p)?;
            total = total.add(&s.mul(&lpow));
            lpow = lpow.mul(&lx);
        }
        if self.exponent != 0 {
            let e = lx.mul_rational(&self.exponent).exp();
            total = total.mul(&e);
        }
        Ok(total)
    }

    /// JSON document with decimal-string coefficients as [re, im] pairs.
    pub fn to_json(&self, model: &str, basis_name: &str, digits: usize) -> String {
        let doc = SeriesDoc {
            model,
            basis_name,
            exponent: crate::exact::rational::fmt_rational(&self.exponent),
            log_depth: self.log_depth(),
            order: self.order(),
            precision_digits: digits,
            coefficients: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|c| [fmt_real(&c.re, digits), fmt_real(&c.im, digits)]).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("series document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{factorial, q, qi};
    use crate::operators::normal_order;

    #[test]
    fn exponential_is_annihilated() {
        // e^x = Σ x^n/n! solves (θ − x)y = 0.
        let c: Vec<Rational> = (0..20).map(|n| Rational::from((1, factorial(n)))).collect();
        let s = ExactLogSeries::new(qi(0), vec![c]);
        assert!(s.annihilated_by(&normal_order("T - z").unwrap()));
        assert!(!s.annihilated_by(&normal_order("T - 2z").unwrap()));
    }

    #[test]
    fn log_solution_of_theta_squared() {
        // θ² kills 1 and log x.
        let s = ExactLogSeries::new(qi(0), vec![vec![qi(3)], vec![qi(-2)]]);
        assert!(s.annihilated_by(&normal_order("T^2").unwrap()));
        assert!(!s.annihilated_by(&normal_order("T").unwrap()));
        assert_eq!(s.log_depth(), 1);
    }

    #[test]
    fn fractional_exponent_eval() {
        let prec = 200;
        // x^{1/2}(1 + x)
        let s = ExactLogSeries::new(q(1, 2), vec![vec![qi(1), qi(1)]]).to_numeric(prec);
        let x = BigComplex::from_i64(4, prec);
        let v = s.eval(&x, &Float::new(prec), 40).unwrap();
        assert!(v.sub(&BigComplex::from_i64(10, prec)).abs() < 1e-50);
        let d = s.derivative();
        // d/dx (x^{1/2} + x^{3/2}) at 4 = 1/4 + 3
        let dv = d.eval(&x, &Float::new(prec), 40).unwrap();
        let want = BigComplex::from_rational(&q(13, 4), prec);
        assert!(dv.sub(&want).abs() < 1e-50);
    }

    #[test]
    fn json_shape() {
        let s = ExactLogSeries::new(qi(0), vec![vec![qi(1), q(1, 3)]]).to_numeric(128);
        let j = s.to_json("Y5", "test", 10);
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["order"], 2);
        assert_eq!(v["coefficients"][0][1][0], "3.333333333e-1");
    }
}
