use rug::Rational;

use crate::balls::RealEnclosure;
use crate::error::{Error, Result};
use crate::exactfield::{ideal_norm, isolate_roots, FieldElement, NumberField, QPoly};

/// Which projective height to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeightVariant {
    /// Absolute logarithmic Weil height, max-norm at every place.
    H,
    /// `h([1 : p_0 : ... : p_N])`.
    HPrime,
    /// Euclidean norm at the archimedean places.
    HHat,
}

impl std::str::FromStr for HeightVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" => Ok(HeightVariant::H),
            "hprime" | "h'" => Ok(HeightVariant::HPrime),
            "hhat" => Ok(HeightVariant::HHat),
            other => Err(Error::Parse(format!("unknown height variant {other:?} (expected h, hprime or hhat)"))),
        }
    }
}

/// A point of projective space over a number field.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint {
    field: NumberField,
    coords: Vec<FieldElement>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<FieldElement>) -> Result<Self> {
        let field = coords.first().ok_or(Error::ZeroPoint)?.field().clone();
        if coords.iter().any(|c| !c.field().same(&field)) {
            return Err(Error::MixedFields);
        }
        if coords.iter().all(FieldElement::is_zero) {
            return Err(Error::ZeroPoint);
        }
        Ok(ProjectivePoint { field, coords })
    }

    pub fn from_rationals(field: &NumberField, coords: &[Rational]) -> Result<Self> {
        Self::new(coords.iter().map(|q| field.from_rational(q)).collect())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// `N` for a point of `P^N`.
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn scaled(&self, lambda: &FieldElement) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(ProjectivePoint { field: self.field.clone(), coords: self.coords.iter().map(|c| c * lambda).collect() })
    }
}

fn guard_bits(count: usize) -> u32 {
    16 + usize::BITS - count.leading_zeros()
}

/// Height of the coordinate tuple: the archimedean sum over all embeddings
/// minus the log-norm of the coordinate ideal, divided by the degree.
fn height_of(field: &NumberField, coords: &[&FieldElement], euclid: bool, prec: u32) -> Result<RealEnclosure> {
    let nonzero: Vec<FieldElement> = coords.iter().filter(|c| !c.is_zero()).map(|c| (*c).clone()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroPoint);
    }
    let d = field.degree();
    let work = prec + guard_bits(nonzero.len());
    let norm = ideal_norm(&nonzero, field)?;
    let mut arch = RealEnclosure::zero(work);
    for sigma in 0..d {
        let mut acc: Option<RealEnclosure> = None;
        for c in &nonzero {
            let z = c.embed(sigma, work)?;
            let v = if euclid { z.abs_sq() } else { z.abs() };
            acc = Some(match acc {
                None => v,
                Some(a) if euclid => &a + &v,
                Some(a) => a.max(&v),
            });
        }
        let local = acc.expect("nonempty").ln();
        arch = &arch + &(if euclid { local.mul_2si(-1) } else { local });
    }
    let finite = RealEnclosure::from_rational(&norm, work).ln();
    let total = &(&arch - &finite) / &RealEnclosure::from_i64(d as i64, work);
    Ok(total.with_prec(prec))
}

/// Certified enclosure of `h`, `h'` or `hhat` of a projective point.
pub fn height_projective(p: &ProjectivePoint, variant: HeightVariant, prec: u32) -> Result<RealEnclosure> {
    let one = p.field.one();
    let mut coords: Vec<&FieldElement> = Vec::with_capacity(p.coords.len() + 1);
    if variant == HeightVariant::HPrime {
        coords.push(&one);
    }
    coords.extend(p.coords.iter());
    height_of(&p.field, &coords, variant == HeightVariant::HHat, prec)
}

/// `h'` of a tuple of field elements, `h([1 : x_1 : ... : x_n])`. The empty
/// tuple and the all-zero tuple have height 0.
pub fn hprime(xs: &[FieldElement], prec: u32) -> Result<RealEnclosure> {
    let Some(first) = xs.first() else {
        return Ok(RealEnclosure::zero(prec));
    };
    let one = first.field().one();
    let mut coords: Vec<&FieldElement> = vec![&one];
    coords.extend(xs.iter());
    height_of(first.field(), &coords, false, prec)
}

/// `h'(x) = h([x : 1])` of a single element.
pub fn hprime_scalar(x: &FieldElement, prec: u32) -> Result<RealEnclosure> {
    hprime(std::slice::from_ref(x), prec)
}

/// `h([x : 1])` computed from the minimal polynomial of `x` over the
/// integers: `log(|a_d| prod max(1, |root|)) / deg`.
///
/// Independent of the field's embeddings and ideal arithmetic, so it serves
/// as an oracle for [`height_projective`].
pub fn mahler_height(x: &FieldElement, prec: u32) -> Result<RealEnclosure> {
    if x.is_zero() {
        return Ok(RealEnclosure::zero(prec));
    }
    let minpoly = x.minimal_polynomial();
    let ints = minpoly.primitive_integer();
    let deg = ints.len() - 1;
    let p = QPoly::from_integers(&ints);
    let mut bits = prec + 32;
    let roots = loop {
        match isolate_roots(&p, bits) {
            Ok(r) => break r,
            Err(Error::Precision { .. }) if bits < 8 * prec => bits *= 2,
            Err(e) => return Err(e),
        }
    };
    let one = RealEnclosure::one(bits);
    let mut m = RealEnclosure::from_integer(ints.last().expect("nonzero polynomial"), bits).abs();
    for r in &roots {
        m = &m * &r.ball.abs().max(&one);
    }
    let h = &m.ln() / &RealEnclosure::from_i64(deg as i64, bits);
    Ok(h.with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(k: &NumberField, xs: &[i64]) -> ProjectivePoint {
        ProjectivePoint::new(xs.iter().map(|&x| k.int(x)).collect()).unwrap()
    }

    #[test]
    fn rational_points() {
        let k = NumberField::rationals();
        let p = 128;
        let h = height_projective(&pt(&k, &[1, 2]), HeightVariant::H, p).unwrap();
        assert!(h.overlaps(&RealEnclosure::ln2(p)));
        assert!(h.width() < rug::Float::with_val(p, 1e-35));
        let flat = height_projective(&pt(&k, &[1, 1, 1]), HeightVariant::H, p).unwrap();
        assert!(flat.contains_rational(&Rational::new()));
        // common factors cancel through the finite places
        let scaled = height_projective(&pt(&k, &[6, 4]), HeightVariant::H, p).unwrap();
        let expect = RealEnclosure::from_i64(3, p).ln() - RealEnclosure::zero(p);
        assert!(scaled.overlaps(&expect));
    }

    #[test]
    fn euclidean_variant_of_flat_point() {
        let k = NumberField::rationals();
        let p = 128;
        let hh = height_projective(&pt(&k, &[1, 1]), HeightVariant::HHat, p).unwrap();
        assert!(hh.overlaps(&RealEnclosure::ln2(p).mul_2si(-1)));
    }

    #[test]
    fn golden_ratio_height() {
        let k = NumberField::quadratic(5).unwrap();
        let phi = k.omega(1);
        let p = 128;
        let point = ProjectivePoint::new(vec![phi.clone(), k.one()]).unwrap();
        let h = height_projective(&point, HeightVariant::H, p).unwrap();
        let m = mahler_height(&phi, p).unwrap();
        assert!(h.overlaps(&m));
        assert!((h.to_f64() - 0.240_605_912_529_802_6).abs() < 1e-12);
    }

    #[test]
    fn mahler_of_simple_values() {
        let k = NumberField::gaussian();
        let p = 128;
        assert!(mahler_height(&k.generator(), p).unwrap().contains_rational(&Rational::new()));
        assert!(mahler_height(&k.int(2), p).unwrap().overlaps(&RealEnclosure::ln2(p)));
        let half_i = k.generator().scale(&Rational::from((1, 2)));
        assert!(mahler_height(&half_i, p).unwrap().overlaps(&RealEnclosure::ln2(p)));
    }

    #[test]
    fn hprime_caps_below_by_one() {
        let k = NumberField::rationals();
        let p = 96;
        let h = hprime_scalar(&k.from_rational(&Rational::from((1, 3))), p).unwrap();
        assert!(h.overlaps(&RealEnclosure::from_i64(3, p).ln()));
        assert!(hprime(&[], p).unwrap().contains_rational(&Rational::new()));
    }

    #[test]
    fn zero_point_is_rejected() {
        let k = NumberField::rationals();
        assert_eq!(ProjectivePoint::new(vec![k.zero(), k.zero()]).unwrap_err(), Error::ZeroPoint);
    }
}
