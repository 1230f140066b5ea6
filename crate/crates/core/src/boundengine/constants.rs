use rug::ops::Pow;
use rug::Integer;

use crate::balls::RealEnclosure;
use crate::error::{Error, Result};
use crate::exactfield::linalg::Mat;
use crate::exactfield::{FieldElement, NumberField};
use crate::heights::{gamma_matrix, height_projective, log_binomial, HeightVariant};

/// A constant of the form `integer_factor * prod(real_factors)`, with the
/// exponents of its power factors kept for reporting.
#[derive(Clone, Debug)]
pub struct Constant {
    pub name: &'static str,
    /// Exponent of the leading power of two.
    pub two_exponent: u32,
    /// Exponent of the power of `m`.
    pub m_exponent: u32,
    /// Exponent of the power of the field degree.
    pub degree_exponent: u32,
    /// Product of every exact integer factor.
    pub integer_factor: Integer,
    /// Named real factors, each an upper-directed enclosure.
    pub real_factors: Vec<(&'static str, RealEnclosure)>,
    pub value: RealEnclosure,
}

impl Constant {
    /// The exact value when every real factor is an exact integer.
    pub fn exact(&self) -> Option<Integer> {
        self.value.to_exact_integer()
    }
}

fn assemble(name: &'static str, exps: (u32, u32, u32), integer_factor: Integer, real_factors: Vec<(&'static str, RealEnclosure)>, prec: u32) -> Constant {
    let mut value = RealEnclosure::from_integer(&integer_factor, prec);
    for (_, f) in &real_factors {
        value = &value * f;
    }
    Constant { name, two_exponent: exps.0, m_exponent: exps.1, degree_exponent: exps.2, integer_factor, real_factors, value }
}

/// `2^(32m+24) m^(m^2+8m+13) D^(m+5)`.
pub fn c5(m: usize, degree: usize, prec: u32) -> Constant {
    let m32 = m as u32;
    let exps = (32 * m32 + 24, m32 * m32 + 8 * m32 + 13, m32 + 5);
    let int = Integer::from(Integer::u_pow_u(2, exps.0)) * Integer::from(Integer::u_pow_u(m32, exps.1)) * Integer::from(Integer::u_pow_u(degree as u32, exps.2));
    assemble("c5", exps, int, Vec::new(), prec)
}

/// `max{e, sqrt(n sum |z_ij|^2)}` at the primary embedding.
pub fn z_norm_term(z: &Mat<FieldElement>, prec: u32) -> Result<RealEnclosure> {
    let n = z.first().map_or(0, Vec::len);
    let mut acc = RealEnclosure::zero(prec);
    for x in z.iter().flatten() {
        if !x.is_zero() {
            acc = &acc + &x.embed_primary(prec)?.abs_sq();
        }
    }
    let s = (&acc * &RealEnclosure::from_i64(n as i64, prec)).sqrt();
    Ok(RealEnclosure::e(prec).max(&s))
}

/// `max{1, log |disc|}`.
fn log_disc_term(field: &NumberField, prec: u32) -> RealEnclosure {
    let disc = Integer::from(field.discriminant().abs_ref());
    RealEnclosure::one(prec).max(&RealEnclosure::from_integer(&disc, prec).ln())
}

/// The constant of the general bound for a `d`-dimensional subspace of the
/// Lie algebra spanned by the columns of `z` (an `m^2 x n` matrix).
///
/// Every factor depending on `z` is evaluated as an enclosure and then
/// replaced by its upper end.
pub fn c4(field: &NumberField, m: usize, d: usize, z: &Mat<FieldElement>, prec: u32) -> Result<Constant> {
    let mm = m * m;
    if d == 0 || d >= mm {
        return Err(Error::Dimension(format!("subspace dimension {d} out of range 1..{mm}")));
    }
    let m32 = m as u32;
    let exps = (32 * m32 + 31, mm as u32 + 8 * m32 + 25, m32 + 5);
    let int = Integer::from(Integer::u_pow_u(2, exps.0))
        * Integer::from(Integer::u_pow_u(m32, exps.1))
        * Integer::from(Integer::u_pow_u(field.degree() as u32, exps.2))
        * Integer::from(mm - d).pow(4);
    let zterm = z_norm_term(z, prec)?.upper_point().pow_u(mm as u32 + 2 * m32 + 2);
    let h_gamma = height_projective(&gamma_matrix(z, d)?, HeightVariant::H, prec)?;
    let gamma_term = RealEnclosure::one(prec).max(&h_gamma).upper_point();
    let reals = vec![("max{log|disc|, 1}", log_disc_term(field, prec).upper_point()), ("z-norm power", zterm), ("max{1, h(Gamma)}", gamma_term)];
    Ok(assemble("c4", exps, int, reals, prec))
}

/// `2 max{(m^2-d)/(2D) log((2/pi)|disc|) + (1/2) log C(m^2, m^2-d), 1}`.
pub fn c12(field: &NumberField, m: usize, d: usize, prec: u32) -> Result<RealEnclosure> {
    let mm = m * m;
    if d == 0 || d >= mm {
        return Err(Error::Dimension(format!("subspace dimension {d} out of range 1..{mm}")));
    }
    let codim = RealEnclosure::from_i64((mm - d) as i64, prec);
    let two_d = RealEnclosure::from_i64(2 * field.degree() as i64, prec);
    let disc = RealEnclosure::from_integer(&Integer::from(field.discriminant().abs_ref()), prec);
    let two_over_pi = &RealEnclosure::from_i64(2, prec) / &RealEnclosure::pi(prec);
    let first = &(&codim / &two_d) * &(&two_over_pi * &disc).ln();
    let second = log_binomial(mm as u32, (mm - d) as u32, prec).mul_2si(-1);
    Ok((&first + &second).max(&RealEnclosure::one(prec)).mul_2si(1))
}
