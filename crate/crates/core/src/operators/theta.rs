//! Normal-ordered operators Σ c·z^a·θ^b with θ = z·d/dz.
//!
//! Multiplication uses θ·z^c = z^c·(θ+c), so
//! (z^a θ^b)(z^c θ^e) = z^{a+c}(θ+c)^b θ^e.

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use super::poly::QPoly;
use crate::error::{Error, Result};
use crate::exact::rational::{fmt_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ThetaOperator {
    terms: BTreeMap<(i64, u32), Rational>,
}

impl ThetaOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::from(1), 0, 0)
    }

    pub fn theta() -> Self {
        Self::monomial(Rational::from(1), 0, 1)
    }

    pub fn z_pow(a: i64) -> Self {
        Self::monomial(Rational::from(1), a, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, a: i64, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((a, b), c);
        }
        ThetaOperator { terms }
    }

    /// z^a · p(θ).
    pub fn z_times_poly(a: i64, p: &QPoly) -> Self {
        let mut out = Self::zero();
        for (b, c) in p.coeffs().iter().enumerate() {
            out.add_term(a, b as u32, c.clone());
        }
        out
    }

    /// Σ_a z^a · p_a(θ).
    pub fn from_parts(parts: &BTreeMap<i64, QPoly>) -> Self {
        let mut out = Self::zero();
        for (a, p) in parts {
            out = out.add(&Self::z_times_poly(*a, p));
        }
        out
    }

    /// The θ-polynomial attached to each power of z.
    pub fn parts(&self) -> BTreeMap<i64, QPoly> {
        let mut raw: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let v = raw.entry(*a).or_default();
            if v.len() <= *b as usize {
                v.resize(*b as usize + 1, Rational::new());
            }
            v[*b as usize] = c.clone();
        }
        raw.into_iter().map(|(a, v)| (a, QPoly::new(v))).collect()
    }

    pub fn terms(&self) -> &BTreeMap<(i64, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, a: i64, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_z_power(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_z_power(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn theta_order(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    fn add_term(&mut self, a: i64, b: u32, c: Rational) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((a, b)).or_default();
        *e += c;
        if *e == 0 {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &o.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, Rational::from(c * r));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        let lp = self.parts();
        let rp = o.parts();
        for (a, p) in &lp {
            for (c, q) in &rp {
                let shifted = p.shift(&Rational::from(*c));
                out = out.add(&Self::z_times_poly(a + c, &shifted.mul(q)));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Replace θ by s·θ + t in every coefficient polynomial, keeping z-powers.
    pub fn substitute_theta(&self, s: &Rational, t: &Rational) -> Self {
        let parts = self.parts().into_iter().map(|(a, p)| (a, p.compose_linear(s, t))).collect();
        Self::from_parts(&parts)
    }

    /// z → c·z: multiplies the z^a part by c^a.
    pub fn rescale_z(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for ((a, b), v) in &self.terms {
            let f = pow_rat(c, *a);
            out.add_term(*a, *b, Rational::from(v * &f));
        }
        out
    }

    /// Action on z^n: Σ c·n^b z^{n+a}, returned as exponent-offset → coefficient.
    pub fn apply_to_power(&self, n: &Rational) -> BTreeMap<i64, Rational> {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (a, p) in self.parts() {
            let v = p.eval(n);
            if v != 0 {
                *out.entry(a).or_default() += v;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Integer coefficients with gcd 1, sign fixed so that the top-θ coefficient
    /// of the lowest z-power is positive.
    pub fn normalize(&self) -> Self {
        let Some(lo) = self.min_z_power() else { return Self::zero() };
        let mut lcm = rug::Integer::from(1);
        for c in self.terms.values() {
            lcm.lcm_mut(c.denom());
        }
        let mut g = rug::Integer::new();
        for c in self.terms.values() {
            let n = c.numer() * rug::Integer::from(&lcm / c.denom());
            g.gcd_mut(&n);
        }
        let top = self.parts()[&lo].leading();
        let mut f = Rational::from((lcm, g));
        if top < 0 {
            f = -f;
        }
        self.scale(&f)
    }

    /// Canonical text: every term as `c * z^a * T^b`, sorted by (a, b).
    pub fn canonical(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((a, b), c)| format!("{} * z^{} * T^{}", fmt_rational(c), a, b))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Compact form grouped by powers of z.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (a, p) in self.parts() {
            let zp = match a {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{a}"),
            };
            let body = p.display_in("T");
            let single = p.coeffs().iter().filter(|c| **c != 0).count() == 1;
            let s = match (zp.is_empty(), single) {
                (true, _) => body,
                (false, true) if body == "1" => zp,
                (false, true) => format!("{body}*{zp}"),
                (false, false) => format!("{zp}*({body})"),
            };
            out.push(s);
        }
        out.join(" + ").replace("+ -", "- ")
    }

    /// Parse a raw operator word or the canonical text form.
    pub fn parse(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { t: tokens, i: 0 };
        let op = p.expr()?;
        if p.i != p.t.len() {
            return Err(Error::MalformedWord(format!("unexpected {:?} in {s:?}", p.t[p.i])));
        }
        Ok(op)
    }
}

/// Re-normal-order a raw word.
pub fn normal_order(word: &str) -> Result<ThetaOperator> {
    ThetaOperator::parse(word)
}

fn pow_rat(c: &Rational, a: i64) -> Rational {
    let mut f = Rational::from(1);
    for _ in 0..a.unsigned_abs() {
        f *= c;
    }
    if a < 0 {
        f.recip_mut();
    }
    f
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Z,
    Theta,
    D,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '·' => i += 1,
            '0'..='9' => {
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit: String = chars[st..i].iter().collect();
                out.push(Tok::Num(parse_rational(&lit).map_err(|_| Error::MalformedWord(lit))?));
            }
            'z' => {
                out.push(Tok::Z);
                i += 1;
            }
            'T' | 'θ' => {
                out.push(Tok::Theta);
                i += 1;
            }
            't' if chars[i..].starts_with(&['t', 'h', 'e', 't', 'a']) => {
                out.push(Tok::Theta);
                i += 5;
            }
            'D' | '∂' => {
                out.push(Tok::D);
                i += 1;
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            _ => return Err(Error::MalformedWord(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    t: Vec<Tok>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.t.get(self.i)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.t.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn expr(&mut self) -> Result<ThetaOperator> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ThetaOperator> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Num(_) | Tok::Z | Tok::Theta | Tok::D | Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            true
        } else {
            false
        };
        let mut paren = false;
        if self.peek() == Some(&Tok::LParen) {
            self.i += 1;
            paren = true;
        }
        let neg = if paren && self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            !neg
        } else {
            neg
        };
        let v = match self.bump() {
            Some(Tok::Num(r)) if *r.denom() == 1 => r
                .numer()
                .to_i64()
                .ok_or_else(|| Error::MalformedWord("exponent too large".into()))?,
            other => return Err(Error::MalformedWord(format!("bad exponent {other:?}"))),
        };
        if paren && self.bump() != Some(Tok::RParen) {
            return Err(Error::MalformedWord("unclosed exponent".into()));
        }
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<ThetaOperator> {
        let (base, is_z) = match self.bump() {
            Some(Tok::Minus) => return Ok(self.factor()?.neg()),
            Some(Tok::Plus) => return self.factor(),
            Some(Tok::Num(r)) => (ThetaOperator::constant(r), false),
            Some(Tok::Z) => (ThetaOperator::z_pow(1), true),
            Some(Tok::Theta) => (ThetaOperator::theta(), false),
            Some(Tok::D) => (ThetaOperator::z_pow(-1).mul(&ThetaOperator::theta()), false),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(Error::MalformedWord("unbalanced parenthesis".into()));
                }
                (e, false)
            }
            other => return Err(Error::MalformedWord(format!("unexpected token {other:?}"))),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.i += 1;
            let e = self.exponent()?;
            if is_z {
                return Ok(ThetaOperator::z_pow(e));
            }
            if e < 0 {
                return Err(Error::MalformedWord("negative power of a non-monomial".into()));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn commutation() {
        let a = normal_order("T*z").unwrap();
        assert_eq!(a, normal_order("z*(T+1)").unwrap());
        let b = normal_order("T^2 z").unwrap();
        assert_eq!(b, normal_order("z (T+1)^2").unwrap());
        let c = normal_order("(z D)(z D) z").unwrap();
        assert_eq!(c, b);
        assert_eq!(normal_order("z^-1 z").unwrap(), ThetaOperator::one());
    }

    #[test]
    fn canonical_round_trip() {
        let op = normal_order("T^4 - 5 z (5T+1)(5T+2)(5T+3)(5T+4)").unwrap();
        let text = op.canonical();
        assert!(text.starts_with("1 * z^0 * T^4 + -120 * z^1 * T^0"), "{text}");
        assert_eq!(ThetaOperator::parse(&text).unwrap(), op);
        assert_eq!(ThetaOperator::zero().canonical(), "0");
        assert_eq!(normal_order("1/2 T").unwrap().coeff(0, 1), q(1, 2));
    }

    #[test]
    fn malformed() {
        for w in ["(T", "T^", "T^x", "z ++", "y", "(z+T)^-1"] {
            assert!(matches!(normal_order(w), Err(Error::MalformedWord(_))), "{w}");
        }
    }

    #[test]
    fn action_on_powers() {
        let op = normal_order("T^2 + z T").unwrap();
        let r = op.apply_to_power(&q(3, 1));
        assert_eq!(r[&0], q(9, 1));
        assert_eq!(r[&1], q(3, 1));
    }
}
