use rug::ops::Pow;
use rug::{Integer, Rational};

use super::element::FieldElement;
use super::field::NumberField;
use super::intmat::{self, IntMat};
use crate::error::{Error, Result};

/// Absolute norm of the fractional ideal generated by `gens` in the order
/// spanned by the field's integral basis.
///
/// The generators are scaled by a common integer `t` into the order, the
/// lattice spanned by all `t g_i omega_j` is put in Hermite normal form, and
/// the index of that lattice is divided by `t^D`.
pub fn ideal_norm(gens: &[FieldElement], field: &NumberField) -> Result<Rational> {
    let nonzero: Vec<&FieldElement> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    if nonzero.iter().any(|g| !g.field().same(field)) {
        return Err(Error::MixedFields);
    }
    let d = field.degree();
    if d == 1 {
        // gcd of numerators over lcm of denominators
        let mut num = Integer::new();
        let mut den = Integer::from(1);
        for g in &nonzero {
            let q = &g.coeffs()[0];
            num.gcd_mut(q.numer());
            den.lcm_mut(q.denom());
        }
        return Ok(Rational::from((num, den)));
    }
    let omegas: Vec<FieldElement> = (0..d).map(|j| field.omega(j)).collect();
    let mut t = Integer::from(1);
    for g in &nonzero {
        t.lcm_mut(&g.denominator());
    }
    let t_el = field.from_rational(&Rational::from(t.clone()));
    let mut basis: IntMat = Vec::new();
    for g in &nonzero {
        let scaled = &t_el * *g;
        for w in &omegas {
            let coords = (&scaled * w).omega_coords();
            let row: Option<Vec<Integer>> =
                coords.iter().map(|c| (*c.denom() == 1).then(|| c.numer().clone())).collect();
            let row = row.ok_or_else(|| Error::IntegralBasisNotRing("ideal generator times basis left the order".into()))?;
            basis.push(row);
            // keep the working set small: re-reduce once it grows
            if basis.len() >= 2 * d {
                basis = intmat::lattice_basis(&basis);
            }
        }
    }
    let basis = intmat::lattice_basis(&basis);
    debug_assert_eq!(basis.len(), d);
    let index = intmat::det(&basis).abs();
    Ok(Rational::from((index, t.pow(d as u32))))
}
