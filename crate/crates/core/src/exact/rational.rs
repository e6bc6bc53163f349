//! Helpers around `rug::Rational`, which already keeps values in lowest terms
//! with a positive denominator.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from(n)
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Integer = n.trim().parse().map_err(|_| Error::Parse(s.into()))?;
        let d: Integer = d.trim().parse().map_err(|_| Error::Parse(s.into()))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {s}")));
        }
        Ok(Rational::from((n, d)))
    } else {
        let n: Integer = s.parse().map_err(|_| Error::Parse(s.into()))?;
        Ok(Rational::from(n))
    }
}

pub fn factorial(n: u64) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// Generalized harmonic number H_n^{(k)} = sum_{j=1}^n j^{-k}.
pub fn harmonic(n: u64, k: u32) -> Rational {
    let mut acc = Rational::new();
    for j in 1..=n {
        let p = Integer::from(j).pow(k);
        acc += Rational::from((Integer::from(1), p));
    }
    acc
}

/// Table of H_m^{(k)} for m = 0..=n_max, built incrementally.
pub fn harmonic_table(n_max: u64, k: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut acc = Rational::new();
    out.push(acc.clone());
    for j in 1..=n_max {
        acc += Rational::from((Integer::from(1), Integer::from(j).pow(k)));
        out.push(acc.clone());
    }
    out
}

/// Stirling numbers of the second kind S(n, k) for n <= n_max.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<Integer>> {
    let mut s = vec![vec![Integer::new(); n_max + 1]; n_max + 1];
    s[0][0] = Integer::from(1);
    for n in 1..=n_max {
        for k in 1..=n {
            let v = Integer::from(k) * &s[n - 1][k] + &s[n - 1][k - 1];
            s[n][k] = v;
        }
    }
    s
}

/// Bernoulli numbers B_0..B_n (B_1 = -1/2).
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::new(); n + 1];
    b[0] = Rational::from(1);
    for m in 1..=n {
        let mut acc = Rational::new();
        for k in 0..m {
            acc += Rational::from(binomial(m as u64 + 1, k as u64)) * &b[k];
        }
        b[m] = -acc / Rational::from(m as u64 + 1);
    }
    b
}

pub fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rational) -> bool {
    *r.denom() == 1
}

/// Least integer >= r.
pub fn ceil(r: &Rational) -> Integer {
    r.clone().ceil().numer().clone()
}

pub fn floor(r: &Rational) -> Integer {
    r.clone().floor().numer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "-3", "5/2", "-55322265625/4"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("10/4").unwrap(), q(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn bernoulli_small() {
        let b = bernoulli(8);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
        assert_eq!(b[8], q(-1, 30));
        assert_eq!(b[3], 0);
    }

    #[test]
    fn stirling_second_kind() {
        let s = stirling2_table(5);
        assert_eq!(s[4][2], 7);
        assert_eq!(s[5][3], 25);
        assert_eq!(s[3][3], 1);
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(4, 1), q(25, 12));
        assert_eq!(harmonic_table(4, 2)[3], q(49, 36));
    }
}
