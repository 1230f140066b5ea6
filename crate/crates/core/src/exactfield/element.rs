use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::field::NumberField;
use super::linalg::{self, Mat, Scalar};
use super::poly::QPoly;
use crate::balls::ComplexBall;
use crate::error::{Error, Result};

/// An element of a number field, stored by its power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn from_coeffs(field: &NumberField, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != field.degree() {
            return Err(Error::Dimension(format!(
                "field element needs {} coefficients, got {}",
                field.degree(),
                coeffs.len()
            )));
        }
        Ok(Self::from_coeffs_unchecked(field, coeffs))
    }

    pub(crate) fn from_coeffs_unchecked(field: &NumberField, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), field.degree());
        FieldElement { field: field.clone(), coeffs }
    }

    /// Parses coefficient strings such as `"3"`, `"-1/2"`.
    pub fn parse(field: &NumberField, coeffs: &[impl AsRef<str>]) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(field, parsed)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|c| *c == 0)
    }

    /// The value as a rational number, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(|c| *c == 0).then(|| self.coeffs[0].clone())
    }

    fn check(&self, o: &FieldElement) -> Result<()> {
        if self.field.same(&o.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn with(&self, coeffs: Vec<Rational>) -> Self {
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn try_add(&self, o: &FieldElement) -> Result<Self> {
        self.check(o)?;
        Ok(self.with(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| Rational::from(a + b)).collect()))
    }

    pub fn try_sub(&self, o: &FieldElement) -> Result<Self> {
        self.check(o)?;
        Ok(self.with(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| Rational::from(a - b)).collect()))
    }

    pub fn try_mul(&self, o: &FieldElement) -> Result<Self> {
        self.check(o)?;
        let d = self.field.degree();
        let mut prod = vec![Rational::new(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if *b != 0 {
                    prod[i + j] += Rational::from(a * b);
                }
            }
        }
        let mut out = vec![Rational::new(); d];
        for (k, c) in prod.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (o, r) in out.iter_mut().zip(self.field.reduction(k)) {
                if *r != 0 {
                    *o += Rational::from(c * r);
                }
            }
        }
        Ok(self.with(out))
    }

    pub fn try_div(&self, o: &FieldElement) -> Result<Self> {
        self.check(o)?;
        self.try_mul(&o.inverse()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm with the
    /// minimal polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(self.with(vec![Rational::from(self.coeffs[0].recip_ref())]));
        }
        let a = QPoly::new(self.coeffs.clone());
        let (g, s, _) = a.xgcd(self.field.minpoly());
        debug_assert_eq!(g, QPoly::one());
        let d = self.field.degree();
        Ok(self.with((0..d).map(|i| s.coeff(i)).collect()))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.with(self.coeffs.iter().map(|c| Rational::from(c * q)).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(self)` for a rational polynomial `p`.
    pub fn eval_rational_poly(&self, p: &QPoly) -> Self {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &self.field.from_rational(c);
        }
        acc
    }

    /// The image of `self` under the field endomorphism sending the
    /// generator to `g`.
    pub fn compose(&self, g: &FieldElement) -> Self {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &self.field.from_rational(c);
        }
        acc
    }

    /// Complex conjugate, as a field element.
    pub fn conj(&self) -> Result<Self> {
        let img = self.field.conjugation_image().ok_or(Error::NotConjugationStable)?;
        if self.field.degree() == 1 {
            return Ok(self.clone());
        }
        Ok(self.compose(&img))
    }

    /// Matrix of multiplication by `self` on the power basis; column `j`
    /// holds the coordinates of `self * theta^j`.
    pub fn mult_matrix(&self) -> Mat<Rational> {
        let d = self.field.degree();
        let mut theta_j = self.field.one();
        let theta = if d == 1 { self.field.one() } else { self.field.generator() };
        let mut cols = Vec::with_capacity(d);
        for _ in 0..d {
            cols.push((self * &theta_j).coeffs);
            theta_j = &theta_j * &theta;
        }
        linalg::transpose(&cols)
    }

    /// Field trace, from the power sums of the generator.
    pub fn trace(&self) -> Rational {
        let mut t = Rational::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                t += Rational::from(c * self.field.power_trace(k));
            }
        }
        t
    }

    /// Field norm, as the resultant of the minimal polynomial and the
    /// coordinate polynomial.
    pub fn norm(&self) -> Rational {
        if self.is_zero() {
            return Rational::new();
        }
        self.field.minpoly().resultant(&QPoly::new(self.coeffs.clone()))
    }

    /// Characteristic polynomial of multiplication by `self`.
    pub fn charpoly(&self) -> QPoly {
        QPoly::new(linalg::charpoly(&self.mult_matrix()))
    }

    /// Monic minimal polynomial over `Q`.
    pub fn minimal_polynomial(&self) -> QPoly {
        self.charpoly().squarefree_part()
    }

    /// Coordinates in the integral basis.
    pub fn omega_coords(&self) -> Vec<Rational> {
        let inv = self.field.basis_inverse();
        let d = self.field.degree();
        (0..d)
            .map(|j| {
                let mut acc = Rational::new();
                for (i, c) in self.coeffs.iter().enumerate() {
                    if *c != 0 {
                        acc += Rational::from(c * &inv[i][j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Whether `self` lies in the order spanned by the integral basis.
    pub fn is_integral(&self) -> bool {
        self.omega_coords().iter().all(|c| *c.denom() == 1)
    }

    /// Least positive integer `t` with `t * self` integral.
    pub fn denominator(&self) -> Integer {
        let mut den = Integer::from(1);
        for c in self.omega_coords() {
            den.lcm_mut(c.denom());
        }
        den
    }

    /// Enclosure of the image under embedding `idx` (see
    /// [`NumberField::embeddings`]).
    pub fn embed(&self, idx: usize, prec: u32) -> Result<ComplexBall> {
        let roots = self.field.embeddings(prec + 16)?;
        let theta = &roots[idx];
        let mut acc = ComplexBall::zero(prec + 16);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * theta) + &ComplexBall::from_rational(c, prec + 16);
        }
        Ok(acc.with_prec(prec))
    }

    pub fn embed_all(&self, prec: u32) -> Result<Vec<ComplexBall>> {
        (0..self.field.degree()).map(|i| self.embed(i, prec)).collect()
    }

    /// Image under the embedding that identifies the field with a subfield
    /// of the complex numbers.
    pub fn embed_primary(&self, prec: u32) -> Result<ComplexBall> {
        self.embed(self.field.primary_embedding(), prec)
    }

    /// Coefficients as `"p/q"` strings (integers without denominator).
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    t.parse::<Rational>().map_err(|_| Error::Parse(format!("not a rational number: {t:?}")))
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.field.same(&o.field) && self.coeffs == o.coeffs
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let s = QPoly::new(self.coeffs.clone()).to_string();
        write!(f, "{}", s.replace('x', "t"))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.coeffs.iter().map(|c| Rational::from(-c)).collect())
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! field_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in different fields; use the
            /// `try_` method for a checked version.
            fn $m(self, o: &FieldElement) -> FieldElement {
                self.$try(o).expect("field elements from different number fields")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
    };
}

field_op!(Add, add, try_add);
field_op!(Sub, sub, try_sub);
field_op!(Mul, mul, try_mul);

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn int_like(&self, v: i64) -> Self {
        self.field.int(v)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Self {
        FieldElement::inverse(self).expect("inverse of zero")
    }
}
