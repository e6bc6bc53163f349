//! Elements of Q(ζ_m) in the power basis 1, ζ, ..., ζ^{φ(m)-1}, kept fully
//! reduced modulo the m-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exact::linalg::solve_exact;
use crate::exact::rational::fmt_rational;
use crate::numerics::{BigComplex, Prec};

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u32
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Integer>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Integer>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<Integer>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = poly_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Φ_d with d | m, d < m.
    let mut num = vec![Integer::new(); m as usize + 1];
    num[0] = Integer::from(-1);
    num[m as usize] = Integer::from(1);
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = divide_monic(&num, &den);
        }
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(m, p.clone());
    p
}

fn divide_monic(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![Integer::new(); num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i].clone();
        if c != 0 {
            quo[i - dn] = c.clone();
            for (j, dj) in den.iter().enumerate() {
                rem[i - dn + j] -= Integer::from(&c * dj);
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quo
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

/// Reduces a polynomial in ζ_m with integer coefficients (constant term
/// first) to its canonical representative.
pub fn cyclo_reduce(raw: &[Integer], m: u32) -> Cyclotomic {
    let raw: Vec<Rational> = raw.iter().map(Rational::from).collect();
    Cyclotomic::from_raw(raw, m)
}

impl Cyclotomic {
    pub fn from_raw(mut raw: Vec<Rational>, m: u32) -> Self {
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        for i in (deg..raw.len()).rev() {
            let c = std::mem::take(&mut raw[i]);
            if c != 0 {
                for (j, pj) in phi.iter().enumerate().take(deg) {
                    raw[i - deg + j] -= Rational::from(&c * pj);
                }
            }
        }
        raw.resize(deg, Rational::new());
        Cyclotomic { order: m, coeffs: raw }
    }

    pub fn zero(m: u32) -> Self {
        Self::from_raw(Vec::new(), m)
    }

    pub fn one(m: u32) -> Self {
        Self::rational(Rational::from(1), m)
    }

    pub fn rational(r: Rational, m: u32) -> Self {
        Self::from_raw(vec![r], m)
    }

    /// ζ_m^k for any integer k.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![Rational::new(); e + 1];
        raw[e] = Rational::from(1);
        Self::from_raw(raw, m)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| *c == 0) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(ζ_L) for a multiple L of the order.
    pub fn lift(&self, big: u32) -> Self {
        assert!(big.is_multiple_of(self.order), "lift target must be a multiple of the order");
        if big == self.order {
            return self.clone();
        }
        let step = (big / self.order) as usize;
        let mut raw = vec![Rational::new(); step * self.coeffs.len().max(1)];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[j * step] = c.clone();
        }
        Self::from_raw(raw, big)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            (a.clone(), b.clone())
        } else {
            let l = lcm(a.order, b.order);
            (a.lift(l), b.lift(l))
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse, found by solving x·y = 1 as a rational system.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular);
        }
        let n = self.coeffs.len();
        // Column j of the multiplication matrix is self·ζ^j.
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e = Self::zeta_pow(self.order, j as i64);
            cols.push((self * &e).coeffs);
        }
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect();
        let mut rhs = vec![Rational::new(); n];
        rhs[0] = Rational::from(1);
        let x = solve_exact(&a, &rhs)?;
        Ok(Cyclotomic { order: self.order, coeffs: x })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Complex conjugate (ζ -> ζ^{-1}).
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut raw = vec![Rational::new(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[(m - j) % m] += c;
        }
        Self::from_raw(raw, self.order)
    }

    pub fn to_complex(&self, prec: Prec) -> BigComplex {
        let mut acc = BigComplex::zero(prec);
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                let z = BigComplex::root_of_unity(self.order as i64, j as i64, prec);
                acc = acc.add(&z.mul_rational(c));
            }
        }
        acc
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| Rational::from(x + y)).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| Rational::from(x - y)).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| Rational::from(-x)).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let n = a.coeffs.len();
        let mut raw = vec![Rational::new(); 2 * n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if *y != 0 {
                    raw[i + j] += Rational::from(x * y);
                }
            }
        }
        Cyclotomic::from_raw(raw, a.order)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&r));
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let mag = fmt_rational(&Rational::from(c.abs_ref()));
            let sign = if *c < 0 { "-" } else { "+" };
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "zeta{}", self.order)?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    fn zint(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), zint(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(5), zint(&[1, 1, 1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(8), zint(&[1, 0, 0, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(10), zint(&[1, -1, 1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), zint(&[1, 0, -1, 0, 1]));
        for m in 1..40 {
            assert_eq!(cyclotomic_polynomial(m).len() as u32 - 1, euler_phi(m));
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(cyclo_reduce(&zint(&[0, 0, 0, 0, 0, 1]), 5), Cyclotomic::one(5));
        assert!(cyclo_reduce(&zint(&[1, 1, 1, 1, 1]), 5).is_zero());
        assert_eq!(
            cyclo_reduce(&zint(&[0, 0, 0, 0, 1]), 8),
            Cyclotomic::rational(q(-1, 1), 8)
        );
    }

    #[test]
    fn mixed_orders_and_inverse() {
        // ζ_10^2 = ζ_5
        assert_eq!(Cyclotomic::zeta_pow(10, 2), Cyclotomic::zeta_pow(5, 1));
        let x = &Cyclotomic::one(5) - &Cyclotomic::zeta_pow(5, 1);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, Cyclotomic::one(5));
        assert!(Cyclotomic::zero(7).inverse().is_err());
    }

    #[test]
    fn conjugation_and_display() {
        let z = Cyclotomic::zeta_pow(8, 1);
        assert_eq!(&z * &z.conj(), Cyclotomic::one(8));
        assert_eq!(Cyclotomic::rational(q(5, 2), 5).to_string(), "5/2");
        assert_eq!((&Cyclotomic::one(8) - &z).to_string(), "1 - zeta8");
    }
}
