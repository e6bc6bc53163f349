//! Local Frobenius basis at a regular singular point x0 with integer
//! indicial roots, in t = x − x0, with exact rational coefficients.

use std::collections::BTreeMap;

use rug::Rational;

use super::deformed::binom_q;
use super::series::ExactLogSeries;
use crate::error::{Error, Result};
use crate::exact::linalg::{nullspace, rref};
use crate::exact::rational::qi;
use crate::models::ModelData;
use crate::numerics::{BigComplex, Prec};
use crate::operators::{pf_operator, QPoly, ThetaOperator};

/// The operator in t = x − x0, multiplied on the left by the power of t that
/// makes it polynomial with a nonzero t^0 part.
pub fn recenter(op: &ThetaOperator, x0: &Rational) -> ThetaOperator {
    // θ_x = (x0 + t)∂_t = x0 t^{-1}θ_t + θ_t
    let theta_x = ThetaOperator::monomial(x0.clone(), -1, 1).add(&ThetaOperator::theta());
    let x = ThetaOperator::constant(x0.clone()).add(&ThetaOperator::z_pow(1));
    let mut out = ThetaOperator::zero();
    for (&(a, b), c) in op.terms() {
        let a = u32::try_from(a).expect("polynomial coefficients in x");
        out = out.add(&x.pow(a).mul(&theta_x.pow(b)).scale(c));
    }
    let shift = -out.min_z_power().unwrap_or(0);
    ThetaOperator::z_pow(shift).mul(&out)
}

/// All solutions Σ_i Σ_n c[i][n] (log t)^i t^{n+e} of `op` through t^{order},
/// where e is the smallest indicial root. Requires integer indicial roots
/// and a full set of deg p_0 solutions.
pub fn frobenius_integer(op: &ThetaOperator, order: usize) -> Result<(Vec<(Rational, usize)>, Vec<ExactLogSeries>)> {
    let parts: BTreeMap<i64, QPoly> = op.parts();
    let p0 = parts.get(&0).cloned().ok_or_else(|| Error::IndicialMismatch("no t^0 part".into()))?;
    let rank = p0.degree().unwrap_or(0);
    let roots = p0.rational_roots();
    let count: usize = roots.iter().map(|r| r.1).sum();
    if count != rank || roots.iter().any(|r| *r.0.denom() != 1) {
        return Err(Error::IndicialMismatch(format!("indicial polynomial {} lacks {rank} integer roots", p0.display_in("T"))));
    }
    let e = roots.iter().map(|r| r.0.clone()).min().expect("rank >= 1");
    let top = roots.iter().map(|r| Rational::from(&r.0 - &e)).max().expect("rank >= 1");
    let n0 = top.numer().to_usize().expect("small root gap");
    // dp[a][l] = l-th derivative of p_a
    let dp: BTreeMap<i64, Vec<QPoly>> = parts
        .iter()
        .map(|(&a, p)| {
            let mut v = vec![p.clone()];
            for _ in 1..rank {
                let d = v.last().unwrap().derivative();
                v.push(d);
            }
            (a, v)
        })
        .collect();
    let coeff_of = |a: i64, l: usize, i: usize, n: usize| -> Rational {
        // contribution factor of c_{i+l, n−a} to the (i, n) equation
        let s = Rational::from(&e + (n as i64 - a));
        binom_q(i + l, l) * dp[&a][l].eval(&s)
    };
    let nvar = rank * (n0 + 1);
    let idx = |i: usize, n: usize| i * (n0 + 1) + n;
    let mut rows = Vec::new();
    for i in 0..rank {
        for n in 0..=n0 {
            let mut row = vec![qi(0); nvar];
            for &a in dp.keys() {
                if a < 0 || a as usize > n {
                    continue;
                }
                for l in 0..rank - i {
                    row[idx(i + l, n - a as usize)] += coeff_of(a, l, i, n);
                }
            }
            rows.push(row);
        }
    }
    let kernel = nullspace(&rows, nvar, &qi(1));
    if kernel.len() != rank {
        return Err(Error::IndicialMismatch(format!("{} local solutions instead of {rank}", kernel.len())));
    }
    let mut sols = Vec::new();
    for v in kernel {
        let mut c = vec![vec![qi(0); order + 1]; rank];
        for i in 0..rank {
            for n in 0..=n0.min(order) {
                c[i][n] = v[idx(i, n)].clone();
            }
        }
        for n in n0 + 1..=order {
            let den = dp[&0][0].eval(&Rational::from(&e + n as i64));
            for i in (0..rank).rev() {
                let mut acc = Rational::new();
                for &a in dp.keys() {
                    if a < 0 || a as usize > n {
                        continue;
                    }
                    for l in 0..rank - i {
                        if a == 0 && l == 0 {
                            continue;
                        }
                        acc += coeff_of(a, l, i, n) * &c[i + l][n - a as usize];
                    }
                }
                c[i][n] = -acc / &den;
            }
        }
        sols.push(ExactLogSeries::new(e.clone(), c));
    }
    Ok((roots, sols))
}

/// d/d(log t) on the log-polynomial part; maps solutions to solutions.
fn log_derivative(s: &ExactLogSeries) -> ExactLogSeries {
    let rows: Vec<Vec<Rational>> =
        (1..s.coeffs.len()).map(|i| s.coeffs[i].iter().map(|c| Rational::from(c * i as i64)).collect()).collect();
    let rows = if rows.is_empty() { vec![vec![qi(0); s.order()]] } else { rows };
    ExactLogSeries::new(s.exponent.clone(), rows)
}

fn flatten(s: &ExactLogSeries, depth: usize) -> Vec<Rational> {
    (0..depth).flat_map(|i| (0..s.order()).map(move |n| s.coeff(i, n))).collect()
}

fn lin_comb(coeffs: &[Rational], sols: &[ExactLogSeries]) -> ExactLogSeries {
    let depth = sols.iter().map(|s| s.coeffs.len()).max().unwrap_or(1);
    let order = sols[0].order();
    let mut rows = vec![vec![qi(0); order]; depth];
    for (c, s) in coeffs.iter().zip(sols) {
        for (i, row) in s.coeffs.iter().enumerate() {
            for (n, x) in row.iter().enumerate() {
                rows[i][n] += Rational::from(c * x);
            }
        }
    }
    ExactLogSeries::new(sols[0].exponent.clone(), rows)
}

/// Local basis at the conifold point.
#[derive(Clone, Debug)]
pub struct ConifoldBasis {
    pub center: Rational,
    pub indicial_roots: Vec<(Rational, usize)>,
    /// ψ_0, ϖ, ψ_2, ψ_log: holomorphic solutions in echelon form with the
    /// vanishing solution ϖ in its slot, then the log solution with
    /// d/d(log t) ψ_log = ϖ.
    pub solutions: Vec<ExactLogSeries>,
    /// Index of ϖ in `solutions`.
    pub vanishing_index: usize,
}

impl ConifoldBasis {
    pub fn vanishing(&self) -> &ExactLogSeries {
        &self.solutions[self.vanishing_index]
    }

    pub fn log_solution(&self) -> &ExactLogSeries {
        self.solutions.last().expect("nonempty basis")
    }
}

/// Canonical local basis from an arbitrary one.
pub fn canonical_local_basis(center: Rational, roots: Vec<(Rational, usize)>, sols: Vec<ExactLogSeries>) -> Result<ConifoldBasis> {
    let depth = sols.iter().map(|s| s.coeffs.len()).max().unwrap_or(1);
    let imgs: Vec<ExactLogSeries> = sols.iter().map(log_derivative).collect();
    // Kernel of d/dlog t on the solution space.
    let img_mat: Vec<Vec<Rational>> = {
        let cols: Vec<Vec<Rational>> = imgs.iter().map(|s| flatten(s, depth)).collect();
        (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    };
    let ker = nullspace(&img_mat, sols.len(), &qi(1));
    if ker.len() + 1 != sols.len() {
        return Err(Error::IndicialMismatch(format!("{} log solutions, expected one", sols.len() - ker.len())));
    }
    let mut hol: Vec<Vec<Rational>> = ker.iter().map(|k| flatten(&lin_comb(k, &sols), 1)).collect();
    rref(&mut hol);
    let mut holo: Vec<ExactLogSeries> =
        hol.into_iter().map(|row| ExactLogSeries::new(sols[0].exponent.clone(), vec![row])).collect();
    // A solution outside the kernel and its image ϖ.
    let j = (0..sols.len()).find(|&j| imgs[j].coeffs.iter().flatten().any(|c| *c != 0)).expect("one log solution");
    let varpi_raw = imgs[j].clone();
    let lead = (0..varpi_raw.order()).find(|&n| varpi_raw.coeff(0, n) != 0).expect("nonzero image");
    let norm = Rational::from(varpi_raw.coeff(0, lead).recip_ref());
    let varpi = ExactLogSeries::new(varpi_raw.exponent.clone(), vec![varpi_raw.coeffs[0].clone()]).scale(&norm);
    let vidx = holo
        .iter()
        .position(|h| (0..lead).all(|n| h.coeff(0, n) == 0) && h.coeff(0, lead) != 0)
        .ok_or_else(|| Error::IndicialMismatch("vanishing solution has no echelon slot".into()))?;
    holo[vidx] = varpi;
    let mut log_sol = sols[j].scale(&norm);
    for (h_i, h) in holo.iter().enumerate() {
        if h_i == vidx {
            continue;
        }
        let piv = (0..h.order()).find(|&n| h.coeff(0, n) != 0).expect("nonzero");
        let c = log_sol.coeff(0, piv) / h.coeff(0, piv);
        let neg = lin_comb(&[qi(1), -c], &[log_sol.clone(), h.clone()]);
        log_sol = neg;
    }
    let mut solutions = holo;
    solutions.push(log_sol);
    Ok(ConifoldBasis { center, indicial_roots: roots, solutions, vanishing_index: vidx })
}

/// Frobenius basis of the Picard-Fuchs operator at x_c, through t^{order}.
pub fn conifold_basis(m: &ModelData, order: usize) -> Result<ConifoldBasis> {
    let xc = m.x_c();
    let op = recenter(&pf_operator(m), &xc);
    // The echelon form needs every indicial root inside the window.
    let (roots, sols) = frobenius_integer(&op, order.max(4))?;
    let mut basis = canonical_local_basis(xc, roots, sols)?;
    for s in &mut basis.solutions {
        *s = s.truncate(order + 1);
    }
    Ok(basis)
}

/// κ·ϖ as a numeric series, the expected local form of Π_γ4.
pub fn vanishing_period_series(m: &ModelData, order: usize, prec: Prec) -> Result<super::series::LogSeries> {
    let b = conifold_basis(m, order)?;
    let kappa: BigComplex = super::formal::g4_prefactor(m, prec);
    Ok(b.vanishing().to_numeric(prec).scale(&kappa))
}
