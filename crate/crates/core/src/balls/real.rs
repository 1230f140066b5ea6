use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round, Special};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// A closed real interval `[lower, upper]` with outward-rounded endpoints.
///
/// Every operation returns an enclosure of the exact result whenever the
/// operands enclose the exact inputs. Endpoints may be infinite (for example
/// `ln` of an interval touching zero).
#[derive(Clone, PartialEq)]
pub struct RealEnclosure {
    lo: Float,
    hi: Float,
}

fn nan_to(x: Float, fallback: Special) -> Float {
    if x.is_nan() {
        Float::with_val(x.prec(), fallback)
    } else {
        x
    }
}

fn round_to(prec: u32, x: &Float, round: Round) -> Float {
    Float::with_val_round(prec, x, round).0
}

impl RealEnclosure {
    /// Builds `[lo, hi]`; panics if the endpoints are out of order or NaN.
    pub fn new(lo: Float, hi: Float) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan(), "NaN endpoint");
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        RealEnclosure { lo, hi }
    }

    pub fn point(x: Float) -> Self {
        RealEnclosure { lo: x.clone(), hi: x }
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_integer(&Integer::from(v), prec)
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        RealEnclosure {
            lo: Float::with_val_round(prec, v, Round::Down).0,
            hi: Float::with_val_round(prec, v, Round::Up).0,
        }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        RealEnclosure {
            lo: Float::with_val_round(prec, q, Round::Down).0,
            hi: Float::with_val_round(prec, q, Round::Up).0,
        }
    }

    /// The whole real line.
    pub fn entire(prec: u32) -> Self {
        RealEnclosure {
            lo: Float::with_val(prec, Special::NegInfinity),
            hi: Float::with_val(prec, Special::Infinity),
        }
    }

    pub fn pi(prec: u32) -> Self {
        RealEnclosure {
            lo: Float::with_val_round(prec, Constant::Pi, Round::Down).0,
            hi: Float::with_val_round(prec, Constant::Pi, Round::Up).0,
        }
    }

    pub fn ln2(prec: u32) -> Self {
        RealEnclosure {
            lo: Float::with_val_round(prec, Constant::Log2, Round::Down).0,
            hi: Float::with_val_round(prec, Constant::Log2, Round::Up).0,
        }
    }

    /// Euler's number `e = exp(1)`.
    pub fn e(prec: u32) -> Self {
        Self::one(prec).exp()
    }

    pub fn lower(&self) -> &Float {
        &self.lo
    }

    pub fn upper(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Re-rounds the endpoints outward to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        RealEnclosure {
            lo: round_to(prec, &self.lo, Round::Down),
            hi: round_to(prec, &self.hi, Round::Up),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Certainly strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    /// Certainly strictly negative.
    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains(&self, x: &Float) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo.partial_cmp(q) != Some(Ordering::Greater)
            && self.hi.partial_cmp(q) != Some(Ordering::Less)
    }

    pub fn contains_enclosure(&self, other: &RealEnclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &RealEnclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Upper bound on `upper - lower`.
    pub fn width(&self) -> Float {
        Float::with_val_round(self.prec(), &self.hi - &self.lo, Round::Up).0
    }

    /// A point inside the interval (rounded midpoint clamped to the endpoints).
    pub fn mid(&self) -> Float {
        let p = self.prec();
        if !self.is_finite() {
            return if self.lo.is_finite() {
                self.lo.clone()
            } else if self.hi.is_finite() {
                self.hi.clone()
            } else {
                Float::new(p)
            };
        }
        let mut m = Float::with_val(p + 1, &self.lo + &self.hi);
        m >>= 1;
        let m = Float::with_val(p, m);
        if m < self.lo {
            self.lo.clone()
        } else if m > self.hi {
            self.hi.clone()
        } else {
            m
        }
    }

    /// Upper bound on the distance from `mid()` to either endpoint.
    pub fn rad(&self) -> Float {
        let m = self.mid();
        let p = self.prec();
        let a = Float::with_val_round(p, &m - &self.lo, Round::Up).0;
        let b = Float::with_val_round(p, &self.hi - &m, Round::Up).0;
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &RealEnclosure) -> Self {
        RealEnclosure {
            lo: if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    /// Intersection, `None` when disjoint.
    pub fn intersect(&self, other: &RealEnclosure) -> Option<Self> {
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        (lo <= hi).then(|| RealEnclosure { lo: lo.clone(), hi: hi.clone() })
    }

    pub fn max(&self, other: &RealEnclosure) -> Self {
        RealEnclosure {
            lo: if self.lo > other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    pub fn min(&self, other: &RealEnclosure) -> Self {
        RealEnclosure {
            lo: if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi < other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    /// The degenerate interval at the upper endpoint.
    pub fn upper_point(&self) -> Self {
        Self::point(self.hi.clone())
    }

    pub fn lower_point(&self) -> Self {
        Self::point(self.lo.clone())
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            let nlo = Float::with_val(self.lo.prec(), -&self.lo);
            RealEnclosure {
                lo: Float::new(self.prec()),
                hi: if nlo > self.hi { nlo } else { self.hi.clone() },
            }
        }
    }

    pub fn sqr(&self) -> Self {
        let p = self.prec();
        let a = self.abs();
        RealEnclosure {
            lo: Float::with_val_round(p, a.lo.square_ref(), Round::Down).0,
            hi: Float::with_val_round(p, a.hi.square_ref(), Round::Up).0,
        }
    }

    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let lo = if self.lo <= 0 {
            Float::new(p)
        } else {
            Float::with_val_round(p, self.lo.sqrt_ref(), Round::Down).0
        };
        let hi = if self.hi <= 0 {
            Float::new(p)
        } else {
            Float::with_val_round(p, self.hi.sqrt_ref(), Round::Up).0
        };
        RealEnclosure { lo, hi }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        RealEnclosure {
            lo: Float::with_val_round(p, self.lo.exp_ref(), Round::Down).0,
            hi: Float::with_val_round(p, self.hi.exp_ref(), Round::Up).0,
        }
    }

    /// Natural logarithm on `[0, inf)`, with `ln 0 = -inf`.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        debug_assert!(self.hi >= 0, "logarithm of a negative interval");
        let lo = if self.lo <= 0 {
            Float::with_val(p, Special::NegInfinity)
        } else {
            Float::with_val_round(p, self.lo.ln_ref(), Round::Down).0
        };
        let hi = if self.hi <= 0 {
            Float::with_val(p, Special::NegInfinity)
        } else {
            Float::with_val_round(p, self.hi.ln_ref(), Round::Up).0
        };
        RealEnclosure { lo, hi }
    }

    pub fn atan(&self) -> Self {
        let p = self.prec();
        RealEnclosure {
            lo: Float::with_val_round(p, self.lo.atan_ref(), Round::Down).0,
            hi: Float::with_val_round(p, self.hi.atan_ref(), Round::Up).0,
        }
    }

    fn lipschitz_eval(&self, f: impl Fn(&Float, Round) -> Float) -> Self {
        let p = self.prec();
        if !self.is_finite() {
            return Self::new(Float::with_val(p, -1), Float::with_val(p, 1));
        }
        let m = self.mid();
        let r = self.rad();
        let lo = Float::with_val_round(p, &f(&m, Round::Down) - &r, Round::Down).0;
        let hi = Float::with_val_round(p, &f(&m, Round::Up) + &r, Round::Up).0;
        let one = Float::with_val(p, 1);
        let mone = Float::with_val(p, -1);
        RealEnclosure {
            lo: if lo < mone { mone } else { lo },
            hi: if hi > one { one } else { hi },
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        self.lipschitz_eval(|x, r| Float::with_val_round(p, x.sin_ref(), r).0)
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        self.lipschitz_eval(|x, r| Float::with_val_round(p, x.cos_ref(), r).0)
    }

    pub fn pow_u(&self, n: u32) -> Self {
        let p = self.prec();
        if n == 0 {
            return Self::one(p);
        }
        let powr = |x: &Float, r: Round| Float::with_val_round(p, x.pow(n), r).0;
        if self.lo >= 0 || n % 2 == 1 {
            RealEnclosure { lo: powr(&self.lo, Round::Down), hi: powr(&self.hi, Round::Up) }
        } else {
            let a = self.abs();
            RealEnclosure { lo: powr(&a.lo, Round::Down), hi: powr(&a.hi, Round::Up) }
        }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_2si(&self, k: i32) -> Self {
        RealEnclosure { lo: self.lo.clone() << k, hi: self.hi.clone() << k }
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec()).div(self)
    }

    /// Decimal endpoints rounded outward, with `digits` significant digits.
    pub fn to_decimal_strings(&self, digits: usize) -> (String, String) {
        let show = |x: &Float, r: Round| if x.is_zero() { "0".to_string() } else { x.to_string_radix_round(10, Some(digits), r) };
        (show(&self.lo, Round::Down), show(&self.hi, Round::Up))
    }

    /// Exact integer value when the interval is a single integer point.
    pub fn to_exact_integer(&self) -> Option<Integer> {
        if self.is_exact() && self.lo.is_integer() {
            self.lo.to_integer()
        } else {
            None
        }
    }

    fn add_impl(&self, o: &RealEnclosure) -> Self {
        let p = self.prec().max(o.prec());
        RealEnclosure {
            lo: nan_to(Float::with_val_round(p, &self.lo + &o.lo, Round::Down).0, Special::NegInfinity),
            hi: nan_to(Float::with_val_round(p, &self.hi + &o.hi, Round::Up).0, Special::Infinity),
        }
    }

    fn sub_impl(&self, o: &RealEnclosure) -> Self {
        let p = self.prec().max(o.prec());
        RealEnclosure {
            lo: nan_to(Float::with_val_round(p, &self.lo - &o.hi, Round::Down).0, Special::NegInfinity),
            hi: nan_to(Float::with_val_round(p, &self.hi - &o.lo, Round::Up).0, Special::Infinity),
        }
    }

    fn mul_impl(&self, o: &RealEnclosure) -> Self {
        let p = self.prec().max(o.prec());
        if (self.is_exact() && self.lo.is_zero()) || (o.is_exact() && o.lo.is_zero()) {
            return Self::zero(p);
        }
        let prod = |a: &Float, b: &Float, r: Round| {
            let v = Float::with_val_round(p, a * b, r).0;
            if v.is_nan() {
                Float::new(p)
            } else {
                v
            }
        };
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = prod(a, b, Round::Down);
            let u = prod(a, b, Round::Up);
            if lo.as_ref().is_none_or(|l| d < *l) {
                lo = Some(d);
            }
            if hi.as_ref().is_none_or(|h| u > *h) {
                hi = Some(u);
            }
        }
        RealEnclosure { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    fn div_impl(&self, o: &RealEnclosure) -> Self {
        let p = self.prec().max(o.prec());
        if o.contains_zero() {
            return Self::entire(p);
        }
        let q = |a: &Float, b: &Float, r: Round| {
            let v = Float::with_val_round(p, a / b, r).0;
            if v.is_nan() {
                Float::new(p)
            } else {
                v
            }
        };
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = q(a, b, Round::Down);
            let u = q(a, b, Round::Up);
            if lo.as_ref().is_none_or(|l| d < *l) {
                lo = Some(d);
            }
            if hi.as_ref().is_none_or(|h| u > *h) {
                hi = Some(u);
            }
        }
        RealEnclosure { lo: lo.unwrap(), hi: hi.unwrap() }
    }
}

impl fmt::Debug for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, u) = self.to_decimal_strings(20);
        write!(f, "[{l}, {u}]")
    }
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let (l, u) = self.to_decimal_strings(digits);
        write!(f, "[{l}, {u}]")
    }
}

impl Neg for &RealEnclosure {
    type Output = RealEnclosure;
    fn neg(self) -> RealEnclosure {
        RealEnclosure {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }
}

impl Neg for RealEnclosure {
    type Output = RealEnclosure;
    fn neg(self) -> RealEnclosure {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&RealEnclosure> for &RealEnclosure {
            type Output = RealEnclosure;
            fn $m(self, o: &RealEnclosure) -> RealEnclosure {
                self.$imp(o)
            }
        }
        impl $tr<RealEnclosure> for RealEnclosure {
            type Output = RealEnclosure;
            fn $m(self, o: RealEnclosure) -> RealEnclosure {
                self.$imp(&o)
            }
        }
        impl $tr<&RealEnclosure> for RealEnclosure {
            type Output = RealEnclosure;
            fn $m(self, o: &RealEnclosure) -> RealEnclosure {
                self.$imp(o)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);
