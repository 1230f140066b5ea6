use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Round;
use rug::{Float, Rational};

use super::RealEnclosure;
use crate::error::{Error, Result};

/// A certified complex enclosure.
///
/// Stored as a rectangle `re + i*im` of two real enclosures; `center()` and
/// `radius()` expose the equivalent midpoint-radius disc.
#[derive(Clone, PartialEq)]
pub struct ComplexBall {
    re: RealEnclosure,
    im: RealEnclosure,
}

impl ComplexBall {
    pub fn new(re: RealEnclosure, im: RealEnclosure) -> Self {
        ComplexBall { re, im }
    }

    pub fn from_real(re: RealEnclosure) -> Self {
        let p = re.prec();
        ComplexBall { re, im: RealEnclosure::zero(p) }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Self::from_real(RealEnclosure::from_rational(q, prec))
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        ComplexBall {
            re: RealEnclosure::from_rational(re, prec),
            im: RealEnclosure::from_rational(im, prec),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_real(RealEnclosure::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(RealEnclosure::one(prec))
    }

    pub fn i(prec: u32) -> Self {
        ComplexBall { re: RealEnclosure::zero(prec), im: RealEnclosure::one(prec) }
    }

    /// Disc with the given center and radius, as its bounding rectangle.
    pub fn from_disc(center_re: &Float, center_im: &Float, radius: &Float, real: bool) -> Self {
        let p = center_re.prec().max(center_im.prec());
        let widen = |c: &Float| {
            RealEnclosure::new(
                Float::with_val_round(p, c - radius, Round::Down).0,
                Float::with_val_round(p, c + radius, Round::Up).0,
            )
        };
        ComplexBall {
            re: widen(center_re),
            im: if real { RealEnclosure::zero(p) } else { widen(center_im) },
        }
    }

    pub fn re(&self) -> &RealEnclosure {
        &self.re
    }

    pub fn im(&self) -> &RealEnclosure {
        &self.im
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexBall { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn center(&self) -> (Float, Float) {
        (self.re.mid(), self.im.mid())
    }

    /// Upper bound on the distance from `center()` to any point of the enclosure.
    pub fn radius(&self) -> Float {
        let p = self.prec();
        let a = self.re.rad();
        let b = self.im.rad();
        let s = Float::with_val_round(p, a.square_ref(), Round::Up).0;
        let t = Float::with_val_round(p, b.square_ref(), Round::Up).0;
        let sum = Float::with_val_round(p, &s + &t, Round::Up).0;
        Float::with_val_round(p, sum.sqrt_ref(), Round::Up).0
    }

    pub fn is_real(&self) -> bool {
        self.im.is_exact() && self.im.lower().is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_rationals(&self, re: &Rational, im: &Rational) -> bool {
        self.re.contains_rational(re) && self.im.contains_rational(im)
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: -&self.im }
    }

    pub fn abs_sq(&self) -> RealEnclosure {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> RealEnclosure {
        if self.im.is_exact() && self.im.lower().is_zero() {
            return self.re.abs();
        }
        self.abs_sq().sqrt()
    }

    pub fn scale(&self, s: &RealEnclosure) -> Self {
        ComplexBall { re: &self.re * s, im: &self.im * s }
    }

    pub fn mul_i(&self) -> Self {
        ComplexBall { re: -&self.im, im: self.re.clone() }
    }

    pub fn sqr(&self) -> Self {
        let re = &self.re.sqr() - &self.im.sqr();
        let im = (&self.re * &self.im).mul_2si(1);
        ComplexBall { re, im }
    }

    pub fn pow_u(&self, n: u32) -> Self {
        let mut acc = ComplexBall::one(self.prec());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        if self.im.is_exact() && self.im.lower().is_zero() {
            return ComplexBall::from_real(r);
        }
        ComplexBall { re: &r * &self.im.cos(), im: &r * &self.im.sin() }
    }

    /// Principal argument in `(-pi, pi]`.
    ///
    /// Fails when the enclosure meets the branch cut ambiguously or contains
    /// zero.
    pub fn arg(&self) -> Result<RealEnclosure> {
        let p = self.prec();
        let x = &self.re;
        let y = &self.im;
        if self.contains_zero() {
            return Err(Error::Precision { bits: p, what: "argument of a ball containing 0".into() });
        }
        if y.is_exact() && y.lower().is_zero() {
            return Ok(if x.is_positive() { RealEnclosure::zero(p) } else { RealEnclosure::pi(p) });
        }
        if x.is_positive() {
            return Ok((y / x).atan());
        }
        let half_pi = RealEnclosure::pi(p).mul_2si(-1);
        if y.is_positive() {
            return Ok(&half_pi - &(x / y).atan());
        }
        if y.is_negative() {
            return Ok(&(-&half_pi) - &(x / y).atan());
        }
        Err(Error::Precision { bits: p, what: "argument on the branch cut".into() })
    }

    /// Principal logarithm `ln|z| + i arg z`.
    pub fn ln(&self) -> Result<Self> {
        let arg = self.arg()?;
        let modulus = if self.is_real() { self.re.abs() } else { self.abs_sq().sqrt() };
        Ok(ComplexBall { re: modulus.ln(), im: arg })
    }

    fn mul_impl(&self, o: &ComplexBall) -> ComplexBall {
        if self.is_real() && o.is_real() {
            return ComplexBall::from_real(&self.re * &o.re);
        }
        ComplexBall {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    fn div_impl(&self, o: &ComplexBall) -> ComplexBall {
        if o.is_real() {
            return ComplexBall { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let den = o.abs_sq();
        let num = self.mul_impl(&o.conj());
        ComplexBall { re: &num.re / &den, im: &num.im / &den }
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + i{:?})", self.re, self.im)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        -&self
    }
}

macro_rules! cbinop {
    ($tr:ident, $m:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $tr<&ComplexBall> for &ComplexBall {
            type Output = ComplexBall;
            fn $m(self, o: &ComplexBall) -> ComplexBall {
                let ($a, $b) = (self, o);
                $body
            }
        }
        impl $tr<ComplexBall> for ComplexBall {
            type Output = ComplexBall;
            fn $m(self, o: ComplexBall) -> ComplexBall {
                let ($a, $b) = (&self, &o);
                $body
            }
        }
        impl $tr<&ComplexBall> for ComplexBall {
            type Output = ComplexBall;
            fn $m(self, o: &ComplexBall) -> ComplexBall {
                let ($a, $b) = (&self, o);
                $body
            }
        }
    };
}

cbinop!(Add, add, |a, b| ComplexBall { re: &a.re + &b.re, im: &a.im + &b.im });
cbinop!(Sub, sub, |a, b| ComplexBall { re: &a.re - &b.re, im: &a.im - &b.im });
cbinop!(Mul, mul, |a, b| a.mul_impl(b));
cbinop!(Div, div, |a, b| a.div_impl(b));
