use std::fmt;

use rug::{Float, Rational};

use super::{fmt_real, pi, Prec};

/// Complex number as a pair of MPFR floats. Results of binary operations carry
/// the larger of the operand precisions.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

fn pmax(a: &BigComplex, b: &BigComplex) -> Prec {
    a.prec().max(b.prec())
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: Prec) -> Self {
        BigComplex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: Prec) -> Self {
        Self::from_real(Float::with_val(prec, 1))
    }

    pub fn i(prec: Prec) -> Self {
        BigComplex { re: Float::new(prec), im: Float::with_val(prec, 1) }
    }

    pub fn from_real(re: Float) -> Self {
        let p = re.prec();
        BigComplex { re, im: Float::new(p) }
    }

    pub fn from_rational(r: &Rational, prec: Prec) -> Self {
        Self::from_real(Float::with_val(prec, r))
    }

    pub fn from_i64(v: i64, prec: Prec) -> Self {
        Self::from_real(Float::with_val(prec, v))
    }

    /// r·e^{iθ}.
    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        let p = r.prec().max(theta.prec());
        let (s, c) = theta.clone().sin_cos(Float::new(p));
        BigComplex { re: Float::with_val(p, r * &c), im: Float::with_val(p, r * &s) }
    }

    /// e^{2πik/m}.
    pub fn root_of_unity(m: i64, k: i64, prec: Prec) -> Self {
        let e = k.rem_euclid(m);
        let theta = Float::with_val(prec, pi(prec) * 2u32) * e / m;
        let one = Float::with_val(prec, 1);
        Self::from_polar(&one, &theta)
    }

    pub fn prec(&self) -> Prec {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: Prec) -> Self {
        BigComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = pmax(self, o);
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = pmax(self, o);
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = pmax(self, o);
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        BigComplex { re: ac - bd, im: ad + bc }
    }

    pub fn mul_real(&self, r: &Float) -> Self {
        let p = self.prec().max(r.prec());
        BigComplex { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r) }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r) }
    }

    pub fn div_rational(&self, r: &Rational) -> Self {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re / r), im: Float::with_val(p, &self.im / r) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        BigComplex { re: Float::with_val(p, &self.re / &n), im: -Float::with_val(p, &self.im / &n) }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        Self::from_polar(&r, &self.im)
    }

    /// Principal argument in (-π, π].
    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    /// log z = ln|z| + i·arg with the argument supplied explicitly.
    pub fn log_with_arg(&self, arg: &Float) -> Self {
        let p = self.prec().max(arg.prec());
        let m = Float::with_val(p, self.abs().ln_ref());
        BigComplex { re: m, im: Float::with_val(p, arg) }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one(self.prec());
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn sqrt_real(x: &Float) -> Float {
        Float::with_val(x.prec(), x.sqrt_ref())
    }

    pub fn to_sci(&self, digits: usize) -> (String, String) {
        (fmt_real(&self.re, digits), fmt_real(&self.im, digits))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i) = self.to_sci(20);
        write!(f, "({r}, {i})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_and_log() {
        let p = 200;
        let z = BigComplex::root_of_unity(5, 1, p);
        let z5 = z.powi(5);
        let err = z5.sub(&BigComplex::one(p)).abs();
        assert!(err < 1e-55);
        let arg = z.arg();
        let back = z.log_with_arg(&arg).exp();
        assert!(back.sub(&z).abs() < 1e-55);
    }

    #[test]
    fn division() {
        let p = 128;
        let a = BigComplex::new(Float::with_val(p, 3), Float::with_val(p, 4));
        let q = a.div(&a);
        assert!(q.sub(&BigComplex::one(p)).abs() < 1e-35);
        assert_eq!(a.abs(), 5);
    }
}
