//! Affine polynomials c0 + c1·a in the half-integer parameter `a`.

use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::rational::{fmt_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoly {
    pub c0: Cyclotomic,
    pub c1: Cyclotomic,
}

impl ParamPoly {
    pub fn new(c0: Cyclotomic, c1: Cyclotomic) -> Self {
        ParamPoly { c0, c1 }
    }

    pub fn zero() -> Self {
        Self::rat(Rational::new(), Rational::new())
    }

    pub fn one() -> Self {
        Self::constant_rat(Rational::from(1))
    }

    /// The parameter itself.
    pub fn a() -> Self {
        Self::rat(Rational::new(), Rational::from(1))
    }

    pub fn rat(c0: Rational, c1: Rational) -> Self {
        ParamPoly { c0: Cyclotomic::rational(c0, 1), c1: Cyclotomic::rational(c1, 1) }
    }

    pub fn constant_rat(c: Rational) -> Self {
        Self::rat(c, Rational::new())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        let z = Cyclotomic::zero(c.order());
        ParamPoly { c0: c, c1: z }
    }

    pub fn degree(&self) -> u32 {
        u32::from(!self.c1.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ParamPoly { c0: &self.c0 + &o.c0, c1: &self.c1 + &o.c1 }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ParamPoly { c0: &self.c0 - &o.c0, c1: &self.c1 - &o.c1 }
    }

    pub fn neg(&self) -> Self {
        ParamPoly { c0: -&self.c0, c1: -&self.c1 }
    }

    /// Product; two a-dependent factors are rejected.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let quad = &self.c1 * &o.c1;
        if !quad.is_zero() {
            return Err(Error::DegreeOverflow);
        }
        Ok(ParamPoly {
            c0: &self.c0 * &o.c0,
            c1: &(&self.c0 * &o.c1) + &(&self.c1 * &o.c0),
        })
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        ParamPoly { c0: &self.c0 * c, c1: &self.c1 * c }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        ParamPoly { c0: self.c0.scale(r), c1: self.c1.scale(r) }
    }

    pub fn specialize(&self, a: &Rational) -> Cyclotomic {
        &self.c0 + &self.c1.scale(a)
    }

    /// Rational coefficients when both parts are rational.
    pub fn as_rational_pair(&self) -> Option<(Rational, Rational)> {
        Some((self.c0.as_rational()?, self.c1.as_rational()?))
    }

    /// Parses `p/q`, `a`, `-a`, `p/q*a`, `p/q + r/s*a`, `p/q - a`.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty entry".into()));
        }
        let mut c0 = Rational::new();
        let mut c1 = Rational::new();
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms {
            let t = t.strip_prefix('+').unwrap_or(&t).to_string();
            if let Some(coef) = t.strip_suffix('a') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let v = match coef {
                    "" => Rational::from(1),
                    "-" => Rational::from(-1),
                    c => parse_rational(c)?,
                };
                c1 += v;
            } else {
                c0 += parse_rational(&t)?;
            }
        }
        Ok(Self::rat(c0, c1))
    }
}

fn fmt_coef(c: &Cyclotomic) -> (bool, String) {
    match c.as_rational() {
        Some(r) => (r < 0, fmt_rational(&Rational::from(r.abs_ref()))),
        None => (false, format!("({c})")),
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n1, m1) = fmt_coef(&self.c1);
        let a_term = if m1 == "1" { "a".to_string() } else { format!("{m1}*a") };
        if self.c1.is_zero() {
            return write!(f, "{}", self.c0);
        }
        if self.c0.is_zero() {
            return write!(f, "{}{}", if n1 { "-" } else { "" }, a_term);
        }
        write!(f, "{} {} {}", self.c0, if n1 { "-" } else { "+" }, a_term)
    }
}

/// Polynomial in `a` of unrestricted degree, used internally to verify
/// identities whose intermediate products leave the affine range.
#[derive(Clone, Debug)]
pub struct APoly {
    pub coeffs: Vec<Cyclotomic>,
}

impl APoly {
    pub fn zero() -> Self {
        APoly { coeffs: Vec::new() }
    }

    pub fn from_param(p: &ParamPoly) -> Self {
        APoly { coeffs: vec![p.c0.clone(), p.c1.clone()] }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Cyclotomic::zero(1);
        let coeffs = (0..n)
            .map(|i| {
                let x = self.coeffs.get(i).unwrap_or(&z);
                let y = o.coeffs.get(i).unwrap_or(&z);
                x + y
            })
            .collect();
        APoly { coeffs }.trimmed()
    }

    pub fn sub(&self, o: &Self) -> Self {
        let neg = APoly { coeffs: o.coeffs.iter().map(|c| -c).collect() };
        self.add(&neg)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = vec![Cyclotomic::zero(1); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(x * y);
            }
        }
        APoly { coeffs }.trimmed()
    }

    pub fn to_param(&self) -> Result<ParamPoly> {
        if self.coeffs.len() > 2 {
            return Err(Error::DegreeOverflow);
        }
        let z = Cyclotomic::zero(1);
        Ok(ParamPoly::new(
            self.coeffs.first().cloned().unwrap_or(z.clone()),
            self.coeffs.get(1).cloned().unwrap_or(z),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn parse_display_roundtrip() {
        for s in ["5/2 + a", "-5/2 + a", "-2 - 2/5*a", "a", "-a", "0", "3/5*a", "7"] {
            let p = ParamPoly::parse(s).unwrap();
            assert_eq!(p.to_string(), s, "roundtrip of {s}");
        }
        assert_eq!(ParamPoly::parse("a-5/2").unwrap(), ParamPoly::rat(q(-5, 2), q(1, 1)));
        assert!(ParamPoly::parse("b").is_err());
    }

    #[test]
    fn degree_cap() {
        let a = ParamPoly::a();
        assert_eq!(a.mul(&a), Err(Error::DegreeOverflow));
        let c = ParamPoly::constant_rat(q(3, 1));
        assert_eq!(a.mul(&c).unwrap(), ParamPoly::rat(q(0, 1), q(3, 1)));
    }
}
