use rug::Rational;

use crate::balls::RealEnclosure;
use crate::error::{Error, Result};
use crate::exactfield::FieldElement;

use super::jordan::KPoint;
use super::matrix::{mat_height, mat_norm, MatrixK};

/// Most candidate conjugators tried by [`b2_witness`].
const MAX_CANDIDATES: usize = 4096;

/// `max{e, h'(v), |v|^m / |det v|}` for a conjugator `v`.
pub fn conjugator_quality(v: &MatrixK, prec: u32) -> Result<RealEnclosure> {
    let m = v.m();
    let h = mat_height(v, prec)?;
    let norm = mat_norm(&v.to_ball(prec)?);
    let det = v.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let det_abs = det.embed_primary(prec)?.abs();
    let ratio = &norm.pow_u(m as u32) / &det_abs;
    Ok(RealEnclosure::e(prec).max(&h).max(&ratio))
}

/// Scales the columns of each Jordan block of `v` by `2^a` for the block's
/// exponent `a`. Such scalings commute with `j_u`, so the result still
/// conjugates `j_u` to `u`.
fn scaled(kp: &KPoint, exps: &[i32]) -> MatrixK {
    let v = kp.conjugator();
    let field = v.field();
    let mut factors: Vec<FieldElement> = Vec::with_capacity(v.m());
    for (b, &a) in kp.jordan().blocks().iter().zip(exps) {
        let q = if a >= 0 { Rational::from(1u64 << a) } else { Rational::from((1, 1u64 << (-a))) };
        factors.extend(std::iter::repeat_n(field.from_rational(&q), b.size));
    }
    let entries = v.entries().iter().map(|row| row.iter().zip(&factors).map(|(x, f)| x * f).collect()).collect();
    MatrixK::new(field, entries).expect("same shape")
}

/// Upper bound for the conjugator-quality infimum over the centralizer
/// coset of `u`.
///
/// Candidates are the stored conjugator with the columns of each Jordan
/// block scaled by `2^a`, `|a| <= budget`. The candidate whose enclosure
/// has the smallest upper end is returned with its value.
pub fn b2_witness(kp: &KPoint, search_budget: u32, prec: u32) -> Result<(MatrixK, RealEnclosure)> {
    let nblocks = kp.jordan().blocks().len();
    let mut budget = search_budget.min(16) as i32;
    // keep the product (2 budget + 1)^blocks bounded
    while budget > 0 && (2 * budget as usize + 1).checked_pow(nblocks as u32).is_none_or(|c| c > MAX_CANDIDATES) {
        budget -= 1;
    }
    let mut best: Option<(MatrixK, RealEnclosure)> = None;
    let mut exps = vec![-budget; nblocks];
    loop {
        let cand = scaled(kp, &exps);
        let val = conjugator_quality(&cand, prec)?;
        if best.as_ref().is_none_or(|(_, b)| val.upper() < b.upper()) {
            best = Some((cand, val));
        }
        let mut i = 0;
        loop {
            if i == nblocks {
                return Ok(best.expect("at least one candidate"));
            }
            exps[i] += 1;
            if exps[i] <= budget {
                break;
            }
            exps[i] = -budget;
            i += 1;
        }
    }
}
