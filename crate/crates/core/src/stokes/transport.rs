//! Analytic continuation by Taylor recentering.
//!
//! The θ-operator is rewritten as Σ_k q_k(x)∂^k. At each center c the local
//! power series of the four unit initial states is generated by the
//! coefficient recurrence and summed at the next point, which gives a 4×4
//! step matrix acting on states (y, y', y'', y''').

use rug::{Float, Rational};

use crate::bases::LogSeries;
use crate::error::{Error, Result};
use crate::exact::rational::{binomial, stirling2_table};
use crate::numerics::{ten_pow_neg, working_bits, working_digits, BigComplex, Prec};
use crate::operators::{QPoly, ThetaOperator};

/// Σ_k q_k(x) ∂^k, q_k with rational coefficients.
#[derive(Clone, Debug)]
pub struct DiffOperator {
    pub q: Vec<QPoly>,
}

impl DiffOperator {
    /// θ^b = Σ_k S(b,k) x^k ∂^k; the result is shifted by a power of x so
    /// that all q_k are polynomials.
    pub fn from_theta(op: &ThetaOperator) -> Self {
        let r = op.theta_order() as usize;
        let s = stirling2_table(r);
        let mut terms: Vec<(i64, usize, Rational)> = Vec::new();
        for (&(a, b), c) in op.terms() {
            for k in 0..=b as usize {
                if s[b as usize][k] != 0 {
                    terms.push((a + k as i64, k, Rational::from(c * &s[b as usize][k])));
                }
            }
        }
        let shift = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
        let mut raw: Vec<Vec<Rational>> = vec![Vec::new(); r + 1];
        for (e, k, c) in terms {
            let e = (e - shift) as usize;
            if raw[k].len() <= e {
                raw[k].resize(e + 1, Rational::new());
            }
            raw[k][e] += c;
        }
        DiffOperator { q: raw.into_iter().map(QPoly::new).collect() }
    }

    pub fn order(&self) -> usize {
        self.q.len() - 1
    }

    /// Finite singular points: the zeros of the leading coefficient.
    /// Only rational zeros are supported.
    pub fn singularities(&self) -> Result<Vec<Rational>> {
        let lead = &self.q[self.order()];
        let mut out: Vec<Rational> = Vec::new();
        let mut count = 0usize;
        let mut p = lead.clone();
        while !p.is_zero() && p.coeff(0) == 0 {
            p = QPoly::new(p.coeffs()[1..].to_vec());
            count += 1;
        }
        if count > 0 {
            out.push(Rational::new());
        }
        for (r, mult) in p.rational_roots() {
            out.push(r);
            count += mult;
        }
        if count != lead.degree().unwrap_or(0) {
            return Err(Error::StepFailure("leading coefficient has irrational zeros".into()));
        }
        Ok(out)
    }

    /// Coefficients of q_k(c + t) in t.
    fn recentered(&self, c: &BigComplex) -> Vec<Vec<BigComplex>> {
        let prec = c.prec();
        self.q
            .iter()
            .map(|p| {
                let n = p.coeffs().len();
                let mut cp = vec![BigComplex::one(prec)];
                for e in 1..n {
                    cp.push(cp[e - 1].mul(c));
                }
                (0..n)
                    .map(|j| {
                        let mut acc = BigComplex::zero(prec);
                        for e in j..n {
                            if p.coeff(e) == 0 {
                                continue;
                            }
                            let w = p.coeff(e) * binomial(e as u64, j as u64);
                            acc = acc.add(&cp[e - j].mul_rational(&w));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

/// Piecewise-linear path with adaptive subdivision.
#[derive(Clone, Debug)]
pub struct PathPlan {
    pub base: BigComplex,
    pub waypoints: Vec<BigComplex>,
    /// Each step stays within this fraction of the distance to the nearest
    /// singularity.
    pub radius_fraction: Rational,
}

impl PathPlan {
    pub fn new(base: BigComplex, waypoints: Vec<BigComplex>, radius_fraction: Rational) -> Self {
        PathPlan { base, waypoints, radius_fraction }
    }

    /// Counterclockwise circle around `center` through `base`, as `steps`
    /// chords; the last waypoint is `base` itself.
    pub fn circle(center: &BigComplex, base: &BigComplex, steps: usize, radius_fraction: Rational) -> Self {
        let prec = base.prec();
        let off = base.sub(center);
        let mut waypoints: Vec<BigComplex> = (1..steps)
            .map(|k| center.add(&off.mul(&BigComplex::root_of_unity(steps as i64, k as i64, prec))))
            .collect();
        waypoints.push(base.clone());
        PathPlan { base: base.clone(), waypoints, radius_fraction }
    }

    pub fn end(&self) -> &BigComplex {
        self.waypoints.last().unwrap_or(&self.base)
    }

    pub fn reversed(&self) -> Self {
        let mut pts: Vec<BigComplex> = std::iter::once(self.base.clone()).chain(self.waypoints.iter().cloned()).collect();
        pts.reverse();
        let base = pts.remove(0);
        PathPlan { base, waypoints: pts, radius_fraction: self.radius_fraction.clone() }
    }

    /// This path followed by `next`, which must start where this one ends.
    pub fn then(&self, next: &PathPlan) -> Self {
        let mut waypoints = self.waypoints.clone();
        waypoints.extend(next.waypoints.iter().cloned());
        PathPlan { base: self.base.clone(), waypoints, radius_fraction: self.radius_fraction.clone() }
    }

    fn is_closed(&self, tol: &Float) -> bool {
        self.end().sub(&self.base).abs() <= *tol
    }
}

/// Continuation data in a fixed basis, with an error estimate.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub entries: Vec<Vec<BigComplex>>,
    pub error: Float,
}

impl TransferMatrix {
    pub fn identity(n: usize, prec: Prec) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigComplex::one(prec) } else { BigComplex::zero(prec) }).collect())
            .collect();
        TransferMatrix { entries, error: Float::new(prec) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let entries = cmat_mul(&self.entries, &o.entries);
        TransferMatrix { entries, error: Float::with_val(self.error.prec(), &self.error + &o.error) }
    }

    /// Largest entrywise |A − B|.
    pub fn max_deviation(&self, o: &Self) -> Float {
        let mut m = Float::new(self.error.prec());
        for (ra, rb) in self.entries.iter().zip(&o.entries) {
            for (a, b) in ra.iter().zip(rb) {
                let d = a.sub(b).abs();
                if d > m {
                    m = d;
                }
            }
        }
        m
    }
}

pub fn cmat_mul(a: &[Vec<BigComplex>], b: &[Vec<BigComplex>]) -> Vec<Vec<BigComplex>> {
    let n = a.len();
    let k = b[0].len();
    let prec = a[0][0].prec();
    (0..n)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut acc = BigComplex::zero(prec);
                    for (t, bt) in b.iter().enumerate() {
                        acc = acc.add(&a[i][t].mul(&bt[j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn cmat_inverse(a: &[Vec<BigComplex>]) -> Result<Vec<Vec<BigComplex>>> {
    let n = a.len();
    let prec = a[0][0].prec();
    let mut m: Vec<Vec<BigComplex>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigComplex::one(prec) } else { BigComplex::zero(prec) }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| m[x][col].abs().partial_cmp(&m[y][col].abs()).expect("finite"))
            .expect("nonempty");
        if m[piv][col].is_zero() {
            return Err(Error::Singular);
        }
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in &mut m[col] {
            *v = v.mul(&inv);
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let t = m[col][c].mul(&f);
                    m[r][c] = m[r][c].sub(&t);
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Step matrix from c to c + h and its truncation estimate.
fn taylor_step(op: &DiffOperator, c: &BigComplex, h: &BigComplex, radius: f64, p: u32) -> Result<(Vec<Vec<BigComplex>>, Float)> {
    let prec = c.prec();
    let r = op.order();
    let qc = op.recentered(c);
    let lead = qc[r][0].clone();
    if lead.is_zero() {
        return Err(Error::StepFailure("center is a singular point".into()));
    }
    let lead_inv = lead.recip();
    let tol = ten_pow_neg(working_digits(p), prec);
    let habs = h.abs().to_f64();
    let ratio = habs / radius;
    let max_terms = (f64::from(working_digits(p)) * std::f64::consts::LN_10 / -ratio.ln()).ceil() as usize * 2 + 64;
    // ys[col][n], with y_col = 1/col! for the unit state e_col.
    let mut ys: Vec<Vec<BigComplex>> = vec![Vec::new(); r];
    let mut fact = Float::with_val(prec, 1);
    for (col, y) in ys.iter_mut().enumerate() {
        for n in 0..r {
            y.push(if n == col { BigComplex::from_real(Float::with_val(prec, 1) / &fact) } else { BigComplex::zero(prec) });
        }
        fact *= (col + 1) as u32;
    }
    let falling = |n: usize, k: usize| -> u64 { (0..k).map(|i| (n - i) as u64).product() };
    let mut hp = vec![BigComplex::one(prec)];
    let mut out = vec![vec![BigComplex::zero(prec); r]; r];
    let mut small_run = 0usize;
    let last_mag;
    let mut n = 0usize;
    loop {
        if n >= r {
            let m = n - r;
            for y in ys.iter_mut() {
                let mut acc = BigComplex::zero(prec);
                for (k, qk) in qc.iter().enumerate() {
                    for (j, qkj) in qk.iter().enumerate() {
                        if (k == r && j == 0) || j > m || qkj.is_zero() {
                            continue;
                        }
                        let idx = m - j + k;
                        if idx < k || y[idx].is_zero() {
                            continue;
                        }
                        acc = acc.add(&y[idx].mul(qkj).mul_real(&Float::with_val(prec, falling(idx, k))));
                    }
                }
                let den = Float::with_val(prec, falling(n, r));
                y.push(acc.neg().mul(&lead_inv).mul_real(&Float::with_val(prec, den.recip())));
            }
        }
        if hp.len() <= n {
            let next = hp[n - 1].mul(h);
            hp.push(next);
        }
        let mut mag = Float::new(prec);
        for (col, y) in ys.iter().enumerate() {
            let term = y[n].mul(&hp[n]);
            let tm = term.abs();
            if tm > mag {
                mag = tm;
            }
            for (i, slot) in out.iter_mut().enumerate().take(n + 1) {
                // i-th derivative: n!/(n−i)! y_n h^{n−i}
                let t = y[n].mul(&hp[n - i]).mul_real(&Float::with_val(prec, falling(n, i)));
                slot[col] = slot[col].add(&t);
            }
        }
        let mag = Float::with_val(prec, &mag * (n as u32 + 1).pow(3));
        if mag < tol {
            small_run += 1;
            if small_run >= 5 && n >= r {
                last_mag = mag;
                break;
            }
        } else {
            small_run = 0;
        }
        n += 1;
        if n > max_terms {
            return Err(Error::StepFailure(format!("Taylor series did not settle after {max_terms} terms")));
        }
    }
    let err = Float::with_val(prec, last_mag / (1.0 - ratio));
    Ok((out, err))
}

fn distance_to(sing: &[Rational], x: &BigComplex) -> f64 {
    sing.iter()
        .map(|s| {
            let dx = x.re.to_f64() - s.to_f64();
            (dx * dx + x.im.to_f64().powi(2)).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

/// State propagator along the path: state(end) = P·state(base).
pub fn propagate(op: &ThetaOperator, path: &PathPlan, p: u32) -> Result<TransferMatrix> {
    let dop = DiffOperator::from_theta(op);
    let sing = dop.singularities()?;
    let prec = working_bits(p) + 32;
    let frac = path.radius_fraction.to_f64();
    if !(0.0 < frac && frac < 1.0) {
        return Err(Error::StepFailure(format!("radius fraction {frac} outside (0, 1)")));
    }
    let mut cur = path.base.with_prec(prec);
    let scale = distance_to(&sing, &cur).max(f64::MIN_POSITIVE);
    if distance_to(&sing, &cur) == 0.0 {
        return Err(Error::StepFailure("base point is singular".into()));
    }
    let mut total = TransferMatrix::identity(dop.order(), prec);
    for target in &path.waypoints {
        let target = target.with_prec(prec);
        if distance_to(&sing, &target) == 0.0 {
            return Err(Error::StepFailure("waypoint coincides with a singularity".into()));
        }
        loop {
            let gap = target.sub(&cur);
            let glen = gap.abs().to_f64();
            if glen == 0.0 {
                break;
            }
            let radius = distance_to(&sing, &cur);
            if radius < scale * 1e-12 {
                return Err(Error::StepFailure("step radius collapsed near a singularity".into()));
            }
            let (next, h) = if glen <= frac * radius {
                (target.clone(), gap)
            } else {
                let s = Float::with_val(prec, frac * radius) / gap.abs();
                let h = gap.mul_real(&s);
                (cur.add(&h), h)
            };
            let (step, err) = taylor_step(&dop, &cur, &h, radius, p)?;
            total = TransferMatrix { entries: step, error: err }.mul(&total);
            cur = next;
        }
    }
    Ok(total)
}

/// Columns: (f, f', f'', f''') of each basis element at x.
pub fn state_matrix(basis: &[LogSeries], x: &BigComplex, arg: &Float, p: u32) -> Result<Vec<Vec<BigComplex>>> {
    let mut cols = Vec::with_capacity(basis.len());
    for s in basis {
        let mut cur = s.clone();
        let mut col = Vec::with_capacity(basis.len());
        for _ in 0..basis.len() {
            col.push(cur.eval(x, arg, p)?);
            cur = cur.derivative();
        }
        cols.push(col);
    }
    let n = basis.len();
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Monodromy of `basis` along a closed path, in the row convention
/// basis(continued) = basis·M. The basis is evaluated at the base point on
/// the principal branch.
pub fn transport(op: &ThetaOperator, basis: &[LogSeries], path: &PathPlan, p: u32) -> Result<TransferMatrix> {
    let prec = working_bits(p) + 32;
    if !path.is_closed(&ten_pow_neg(working_digits(p), prec)) {
        return Err(Error::StepFailure("transport needs a closed path".into()));
    }
    let base = path.base.with_prec(prec);
    let s0 = state_matrix(basis, &base, &base.arg(), p)?;
    let prop = propagate(op, path, p)?;
    let entries = cmat_mul(&cmat_inverse(&s0)?, &cmat_mul(&prop.entries, &s0));
    Ok(TransferMatrix { entries, error: prop.error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    fn cx(re: f64, im: f64, prec: Prec) -> BigComplex {
        BigComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    #[test]
    fn theta_to_derivative_form() {
        // θ^2 = x^2∂^2 + x∂
        let d = DiffOperator::from_theta(&ThetaOperator::theta().pow(2));
        assert_eq!(d.q[2], QPoly::new(vec![q(0, 1), q(0, 1), q(1, 1)]));
        assert_eq!(d.q[1], QPoly::new(vec![q(0, 1), q(1, 1)]));
        // x^{-1}θ shifts up to θ
        let d = DiffOperator::from_theta(&ThetaOperator::monomial(q(1, 1), -1, 1));
        assert_eq!(d.q[1], QPoly::new(vec![q(1, 1)]));
    }

    #[test]
    fn exponential_step() {
        // y' = y from 0 to 1: e.
        let op = ThetaOperator::monomial(q(1, 1), -1, 1).sub(&ThetaOperator::one());
        let prec = 200;
        let path = PathPlan::new(cx(0.0, 0.0, prec), vec![cx(1.0, 0.0, prec)], q(1, 2));
        let t = propagate(&op, &path, 50).unwrap();
        let e = Float::with_val(prec, 1).exp();
        assert!(t.entries[0][0].sub(&BigComplex::from_real(e)).abs() < 1e-50);
    }

    #[test]
    fn log_monodromy_around_origin() {
        // θ^2: basis 1, log x; loop gives log x + 2πi.
        let op = ThetaOperator::theta().pow(2);
        let prec = 256;
        let one = LogSeries::new(q(0, 1), vec![vec![BigComplex::one(prec)]]);
        let log = LogSeries::new(q(0, 1), vec![vec![BigComplex::zero(prec)], vec![BigComplex::one(prec)]]);
        let path = PathPlan::circle(&cx(0.0, 0.0, prec), &cx(1.0, 0.0, prec), 8, q(1, 2));
        let m = transport(&op, &[one, log], &path, 40).unwrap();
        let two_pi = Float::with_val(prec, crate::numerics::pi(prec) * 2u32);
        assert!(m.entries[0][1].sub(&BigComplex::new(Float::new(prec), two_pi)).abs() < 1e-40);
        assert!(m.entries[1][1].sub(&BigComplex::one(prec)).abs() < 1e-40);
    }

    #[test]
    fn singular_waypoint_fails() {
        let op = ThetaOperator::theta().pow(2);
        let prec = 128;
        let path = PathPlan::new(cx(1.0, 0.0, prec), vec![cx(0.0, 0.0, prec)], q(1, 2));
        assert!(matches!(propagate(&op, &path, 20), Err(Error::StepFailure(_))));
    }

    #[test]
    fn complex_inverse() {
        let prec = 128;
        let a = vec![vec![cx(1.0, 1.0, prec), cx(2.0, 0.0, prec)], vec![cx(0.0, 3.0, prec), cx(-1.0, 0.5, prec)]];
        let ai = cmat_inverse(&a).unwrap();
        let id = cmat_mul(&a, &ai);
        assert!(id[0][0].sub(&BigComplex::one(prec)).abs() < 1e-30);
        assert!(id[1][0].abs() < 1e-30);
    }
}
