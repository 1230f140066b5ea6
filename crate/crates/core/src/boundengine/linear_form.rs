use rug::Integer;

use crate::balls::{ComplexBall, RealEnclosure};
use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, NumberField};
use crate::heights::hprime_scalar;

/// A linear form `beta_0 + sum beta_i lambda_i` in logarithms
/// `lambda_i` of field elements `alpha_i = exp(lambda_i)`.
#[derive(Clone, Debug)]
pub struct LinearFormInputs {
    pub field: NumberField,
    pub lambdas: Vec<ComplexBall>,
    pub alphas: Vec<FieldElement>,
    /// `beta_0, ..., beta_m`.
    pub betas: Vec<FieldElement>,
}

/// The evaluated lower bound for `log |beta_0 + sum beta_i lambda_i|` and
/// its auxiliary quantities (upper ends).
#[derive(Clone, Debug)]
pub struct LinearFormBound {
    pub a: Vec<RealEnclosure>,
    pub b: RealEnclosure,
    pub c: RealEnclosure,
    /// Enclosure of the right-hand side evaluated at the upper ends above;
    /// its lower end is the certified bound.
    pub rhs: RealEnclosure,
}

/// `-2^(26m) m^(3m) D^(m+2) log(b) (prod a_i) c` with
/// `a_i = max{h'(alpha_i), e|lambda_i|/D, 1/D}`, `c = max{log D, 1}` and
/// `b = max{exp(c), D max a_i, exp(max h'(beta_i)), e}`.
pub fn linear_form_rhs(inp: &LinearFormInputs, prec: u32) -> Result<LinearFormBound> {
    let m = inp.lambdas.len();
    if m == 0 {
        return Err(Error::InvalidArgument("the linear form needs at least one logarithm".into()));
    }
    if inp.alphas.len() != m || inp.betas.len() != m + 1 {
        return Err(Error::Dimension(format!(
            "{m} logarithms with {} algebraic numbers and {} coefficients",
            inp.alphas.len(),
            inp.betas.len()
        )));
    }
    if inp.alphas.iter().chain(&inp.betas).any(|x| !x.field().same(&inp.field)) {
        return Err(Error::MixedFields);
    }
    if inp.alphas.iter().any(FieldElement::is_zero) {
        return Err(Error::InvalidArgument("alpha_i = 0 has no logarithm".into()));
    }
    let d = inp.field.degree();
    let dd = RealEnclosure::from_i64(d as i64, prec);
    let e = RealEnclosure::e(prec);
    let inv_d = dd.recip();
    let mut a = Vec::with_capacity(m);
    for (lam, alpha) in inp.lambdas.iter().zip(&inp.alphas) {
        let h = hprime_scalar(alpha, prec)?;
        let t = &(&e * &lam.abs()) / &dd;
        a.push(h.max(&t).max(&inv_d).upper_point());
    }
    let c = dd.ln().max(&RealEnclosure::one(prec)).upper_point();
    let mut hb = RealEnclosure::zero(prec);
    for beta in &inp.betas {
        hb = hb.max(&hprime_scalar(beta, prec)?);
    }
    let mut a_max = a[0].clone();
    for x in &a[1..] {
        a_max = a_max.max(x);
    }
    let b = c.exp().max(&(&dd * &a_max)).max(&hb.exp()).max(&e).upper_point();
    let m32 = m as u32;
    let int = Integer::from(Integer::u_pow_u(2, 26 * m32)) * Integer::from(Integer::u_pow_u(m32, 3 * m32)) * Integer::from(Integer::u_pow_u(d as u32, m32 + 2));
    let mut rhs = &RealEnclosure::from_integer(&int, prec) * &b.ln();
    for x in &a {
        rhs = &rhs * x;
    }
    rhs = -&(&rhs * &c);
    Ok(LinearFormBound { a, b, c, rhs })
}
