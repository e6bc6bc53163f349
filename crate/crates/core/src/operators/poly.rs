//! Dense univariate polynomials over Q, constant term first.

use std::fmt;

use rug::{Integer, Rational};

use crate::exact::rational::{binomial, fmt_rational};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    c: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| *x == 0) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn constant(r: Rational) -> Self {
        Self::new(vec![r])
    }

    pub fn one() -> Self {
        Self::constant(Rational::from(1))
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::new(vec![Rational::new(), Rational::from(1)])
    }

    /// a·x + b.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|x| Rational::from(-x)).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.c.iter().map(|x| Rational::from(x * r)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::new(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += Rational::from(x * y);
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn product(factors: &[QPoly]) -> Self {
        factors.iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c.iter().enumerate().skip(1).map(|(i, x)| Rational::from(x * i as u32)).collect(),
        )
    }

    /// p(a·x + b).
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Self::linear(a.clone(), b.clone());
        let mut acc = Self::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// p(x + s), via the binomial expansion.
    pub fn shift(&self, s: &Rational) -> Self {
        let n = self.c.len();
        let mut out = vec![Rational::new(); n];
        for (k, ck) in self.c.iter().enumerate() {
            if *ck == 0 {
                continue;
            }
            let mut spow = Rational::from(1);
            for j in (0..=k).rev() {
                let b = binomial(k as u64, j as u64);
                out[j] += Rational::from(ck * &spow) * b;
                spow *= s;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let lead = d.leading();
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![Rational::new(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let f = Rational::from(&rem[i] / &lead);
            if f != 0 {
                for (j, dj) in d.c.iter().enumerate() {
                    rem[i - dd + j] -= Rational::from(&f * dj);
                }
            }
            quo[i - dd] = f;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.leading();
        self.scale(&Rational::from(l.recip_ref()))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots with multiplicity, by the rational-root theorem on the
    /// primitive integer form.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        let mut p = self.clone();
        let mut out = Vec::new();
        if p.is_zero() {
            return out;
        }
        let mut mult0 = 0;
        while p.coeff(0) == 0 && !p.is_zero() {
            p = Self::new(p.c[1..].to_vec());
            mult0 += 1;
        }
        if mult0 > 0 {
            out.push((Rational::new(), mult0));
        }
        let ints = p.primitive_integer();
        let a0 = ints.first().cloned().unwrap_or_default().abs();
        let an = ints.last().cloned().unwrap_or_default().abs();
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        let divisors = |n: &Integer| -> Vec<Integer> {
            let n = n.to_u64().expect("coefficient too large for root search");
            (1..=n).filter(|d| n.is_multiple_of(*d)).map(Integer::from).collect()
        };
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for sign in [1i32, -1] {
                    let r = Rational::from((Integer::from(&num * sign), den.clone()));
                    if out.iter().any(|(x, _)| *x == r) {
                        continue;
                    }
                    let lin = Self::linear(Rational::from(1), Rational::from(-&r));
                    let mut m = 0;
                    while let Some(q) = p.exact_div(&lin) {
                        p = q;
                        m += 1;
                    }
                    if m > 0 {
                        out.push((r, m));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<Integer> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = Integer::from(1);
        for c in &self.c {
            lcm.lcm_mut(c.denom());
        }
        let ints: Vec<Integer> =
            self.c.iter().map(|c| c.numer() * Integer::from(&lcm / c.denom())).collect();
        let mut g = Integer::new();
        for i in &ints {
            g.gcd_mut(i);
        }
        let sign = if self.leading() < 0 { -1 } else { 1 };
        ints.into_iter().map(|i| Integer::from(&i / &g) * sign).collect()
    }

    /// Human-readable form in the variable `var`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = fmt_rational(&Rational::from(c.abs_ref()));
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn arithmetic_and_shift() {
        let p = QPoly::from_ints(&[1, 2, 1]); // (x+1)^2
        assert_eq!(p.shift(&q(-1, 1)), QPoly::from_ints(&[0, 0, 1]));
        assert_eq!(p.compose_linear(&q(-1, 1), &q(-1, 1)), QPoly::from_ints(&[0, 0, 1]));
        let (qq, r) = p.div_rem(&QPoly::from_ints(&[1, 1]));
        assert_eq!(qq, QPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.eval(&q(2, 1)), q(9, 1));
        assert_eq!(p.derivative(), QPoly::from_ints(&[2, 2]));
    }

    #[test]
    fn gcd_and_roots() {
        let a = QPoly::from_ints(&[0, 1]).mul(&QPoly::from_ints(&[1, 2]));
        let b = QPoly::from_ints(&[1, 2]).mul(&QPoly::from_ints(&[3, 1]));
        assert_eq!(a.gcd(&b), QPoly::new(vec![q(1, 2), q(1, 1)]));
        let r = QPoly::from_ints(&[0, 0, 1]).mul(&QPoly::from_ints(&[-1, 1]).pow(2)).mul(&QPoly::from_ints(&[1, 5]));
        assert_eq!(r.rational_roots(), vec![(q(-1, 5), 1), (q(0, 1), 2), (q(1, 1), 2)]);
    }

    #[test]
    fn primitive_form() {
        let p = QPoly::new(vec![q(-1, 2), q(-3, 4)]);
        assert_eq!(p.primitive_integer(), vec![Integer::from(2), Integer::from(3)]);
    }
}
