//! Arbitrary-precision complex arithmetic on top of MPFR reals.
//!
//! Only the operations the resummation machinery needs are implemented, all
//! on the principal branch: `arg` returns a value in (-pi, pi], and `sqrt`,
//! `ln` and the power functions follow from it. Values on the negative real
//! axis take arg = +pi.

use rug::float::Special;
use rug::Float;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        BigComplex {
            re,
            im: Float::new(prec),
        }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, 1),
            im: Float::new(prec),
        }
    }

    pub fn i(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|, computed as hypot(re, im).
    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Principal argument in (-pi, pi]; the negative real axis maps to +pi.
    pub fn arg(&self) -> Float {
        let prec = self.prec();
        if self.im.is_zero() {
            if self.re.is_sign_negative() && !self.re.is_zero() {
                return Float::with_val(prec, rug::float::Constant::Pi);
            }
            return Float::new(prec);
        }
        self.im.clone().atan2(&self.re)
    }

    pub fn scale(&self, s: &Float) -> Self {
        BigComplex {
            re: self.re.clone() * s,
            im: self.im.clone() * s,
        }
    }

    pub fn neg_assign(&mut self) {
        self.re = -self.re.clone();
        self.im = -self.im.clone();
    }

    /// Squared modulus.
    pub fn norm_sqr(&self) -> Float {
        self.re.clone().square() + self.im.clone().square()
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        BigComplex {
            re: self.re.clone() / &d,
            im: -(self.im.clone() / &d),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.im.is_zero() && !self.re.is_sign_negative() {
            return BigComplex {
                re: self.re.clone().sqrt(),
                im: Float::new(prec),
            };
        }
        let r = self.abs().sqrt();
        let half_arg = self.arg() / 2u32;
        let (sin, cos) = half_arg.sin_cos(Float::new(prec));
        BigComplex {
            re: r.clone() * cos,
            im: r * sin,
        }
    }

    /// exp(z) = e^re (cos im + i sin im).
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let m = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(prec));
        BigComplex {
            re: m.clone() * cos,
            im: m * sin,
        }
    }

    /// Principal logarithm: ln|z| + i arg(z).
    pub fn ln(&self) -> Self {
        BigComplex {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// sin(z) = sin(re) cosh(im) + i cos(re) sinh(im).
    pub fn sin(&self) -> Self {
        let prec = self.prec();
        let (sin, cos) = self.re.clone().sin_cos(Float::new(prec));
        let (sinh, cosh) = self.im.clone().sinh_cosh(Float::new(prec));
        BigComplex {
            re: sin * cosh,
            im: cos * sinh,
        }
    }

    /// Principal power with a real exponent: exp(p ln z).
    ///
    /// Real positive bases stay exactly real.
    pub fn pow_real(&self, p: &Float) -> Self {
        use rug::ops::Pow;
        let prec = self.prec();
        if self.is_zero() {
            if p.is_zero() {
                return BigComplex::one(prec);
            }
            return BigComplex::zero(prec);
        }
        if self.im.is_zero() && self.re.is_sign_positive() {
            return BigComplex {
                re: self.re.clone().pow(p),
                im: Float::new(prec),
            };
        }
        (self.ln().scale(p)).exp()
    }

    /// Integer power by binary exponentiation (exact branch handling).
    pub fn pow_int(&self, n: i64) -> Self {
        let prec = self.prec();
        if n == 0 {
            return BigComplex::one(prec);
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = BigComplex::one(prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn nan(prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, Special::Nan),
            im: Float::with_val(prec, Special::Nan),
        }
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.re.clone() + &rhs.re,
            im: self.im.clone() + &rhs.im,
        }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.re.clone() - &rhs.re,
            im: self.im.clone() - &rhs.im,
        }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.re.clone() * &rhs.re - self.im.clone() * &rhs.im,
            im: self.re.clone() * &rhs.im + self.im.clone() * &rhs.re,
        }
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let d = rhs.norm_sqr();
        BigComplex {
            re: (self.re.clone() * &rhs.re + self.im.clone() * &rhs.im) / &d,
            im: (self.im.clone() * &rhs.re - self.re.clone() * &rhs.im) / &d,
        }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}
